use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::path::PathBuf;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::{knot_group, FundGroupOptions, InvariantCache};
use crate::error::{Error, Result};
use crate::fpgroup::{invariant_in, AbelianGroup, GroupPresentation};
use crate::knots::GridDiagram;

/// A value of `Iⁿ`.
pub type Invariant = BTreeSet<AbelianGroup>;

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub n_start: usize,
    pub n_max: usize,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub cache: Option<PathBuf>,
    pub group: FundGroupOptions,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { n_start: 2, n_max: 7, jobs: 0, cache: None, group: FundGroupOptions::default() }
    }
}

/// One computed pair `(K, n) ↦ Iⁿ_K`, in processing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelResult {
    pub knot: String,
    pub n: usize,
    pub invariant: Invariant,
}

/// Knots still sharing a value of `Iⁿ` when `n` reached the cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnresolvedGroup {
    pub n: usize,
    pub invariant: Invariant,
    pub knots: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    /// Knot name ↦ (classifying index, invariant value at that index).
    pub classified: BTreeMap<String, (usize, Invariant)>,
    /// (index, invariant) ↦ the single knot holding it.
    pub distinguishing: BTreeMap<(usize, Invariant), String>,
    /// Largest classifying index, 0 when nothing was classified.
    pub index: usize,
    pub history: Vec<LevelResult>,
    pub unresolved: Vec<UnresolvedGroup>,
}

impl ClassificationRecord {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    pub fn classifying_index(&self, knot: &str) -> Option<usize> {
        self.classified.get(knot).map(|&(n, _)| n)
    }
}

/// Classifies `knots` by the invariants `I^{n_start}, I^{n_start+1}, …`,
/// stopping at `n_max`. Presentations are computed once per knot and
/// invariants go through the optional disk cache.
pub fn classify(knots: &[(String, GridDiagram)], options: &ClassifyOptions) -> Result<ClassificationRecord> {
    let cache = options.cache.as_ref().map(InvariantCache::new).transpose()?;
    let texts: Vec<String> = knots.iter().map(|(_, d)| d.to_string()).collect();
    let groups: Vec<OnceLock<std::result::Result<GroupPresentation, String>>> =
        knots.iter().map(|_| OnceLock::new()).collect();
    let names: Vec<String> = knots.iter().map(|(name, _)| name.clone()).collect();
    classify_with(&names, options.n_start, options.n_max, options.jobs, |i, n| {
        if let Some(v) = cache.as_ref().and_then(|c| c.lookup(&texts[i], n)) {
            return Ok(v);
        }
        let p = groups[i]
            .get_or_init(|| knot_group(&knots[i].1, &options.group).map(|r| r.simplified).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::Embedding(format!("{}: {e}", knots[i].0)))?;
        let v = invariant_in(p, n);
        if let Some(c) = &cache {
            c.store(&texts[i], n, &v)?;
        }
        Ok(v)
    })
}

/// The classification loop over an arbitrary invariant `f(knot index, n)`.
///
/// Every knot starts at `n_start`. A pair `(K, n)` whose value is new at
/// level `n` is provisionally classified; when another knot produces the
/// same value at the same level, all knots holding it are declassified and
/// requeued at `n + 1`. Pairs are handled in queue order; the values of a
/// whole level are computed in parallel first.
pub fn classify_with<F>(names: &[String], n_start: usize, n_max: usize, jobs: usize, f: F) -> Result<ClassificationRecord>
where
    F: Fn(usize, usize) -> Result<Invariant> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Embedding(format!("thread pool: {e}")))?;
    let mut queue: VecDeque<(usize, usize)> = (0..names.len()).map(|k| (k, n_start)).collect();
    let mut seen: HashSet<(usize, usize)> = queue.iter().copied().collect();
    let mut by_value: HashMap<(usize, Invariant), Vec<usize>> = HashMap::new();
    let mut classified: BTreeMap<usize, (usize, Invariant)> = BTreeMap::new();
    let mut distinguishing: BTreeMap<(usize, Invariant), usize> = BTreeMap::new();
    let mut history = Vec::new();
    let mut over: BTreeMap<(usize, Invariant), Vec<usize>> = BTreeMap::new();
    let mut last: HashMap<usize, (usize, Invariant)> = HashMap::new();

    while let Some(&(_, level)) = queue.front() {
        // the queue only ever receives level + 1 entries, so a level is a prefix
        let batch: Vec<(usize, usize)> = {
            let end = queue.iter().position(|&(_, n)| n != level).unwrap_or(queue.len());
            queue.drain(..end).collect()
        };
        if level > n_max {
            for (k, _) in batch {
                let key = last[&k].clone();
                over.entry(key).or_default().push(k);
            }
            continue;
        }
        let values: Vec<Result<Invariant>> = pool.install(|| batch.par_iter().map(|&(k, n)| f(k, n)).collect());
        for (&(k, n), value) in batch.iter().zip(values) {
            let value = value?;
            history.push((k, n, value.clone()));
            last.insert(k, (n, value.clone()));
            let key = (n, value.clone());
            let holders = by_value.entry(key.clone()).or_default();
            holders.push(k);
            if holders.len() == 1 {
                distinguishing.insert(key, k);
                classified.insert(k, (n, value));
            } else {
                distinguishing.remove(&key);
                for &other in holders.iter() {
                    classified.remove(&other);
                    if seen.insert((other, n + 1)) {
                        queue.push_back((other, n + 1));
                    }
                }
            }
        }
    }

    let unresolved = over
        .into_iter()
        .map(|((n, invariant), mut ks)| {
            ks.sort_by(|a, b| super::natural_cmp(&names[*a], &names[*b]));
            UnresolvedGroup { n, invariant, knots: ks.into_iter().map(|k| names[k].clone()).collect() }
        })
        .collect();
    let index = classified.values().map(|&(n, _)| n).max().unwrap_or(0);
    Ok(ClassificationRecord {
        classified: classified.into_iter().map(|(k, v)| (names[k].clone(), v)).collect(),
        distinguishing: distinguishing.into_iter().map(|(key, k)| (key, names[k].clone())).collect(),
        index,
        history: history
            .into_iter()
            .map(|(k, n, invariant)| LevelResult { knot: names[k].clone(), n, invariant })
            .collect(),
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(tag: u64) -> Invariant {
        [AbelianGroup::from_cyclic(1, &[tag])].into_iter().collect()
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("k{i}")).collect()
    }

    #[test]
    fn separates_at_the_first_distinguishing_level() {
        // k0, k1 agree at level 2 and differ at 3; k2 is distinct from the start
        let f = |k: usize, n: usize| Ok(inv(if k == 2 { 7 } else if n == 2 { 5 } else { 10 + k as u64 }));
        let r = classify_with(&names(3), 2, 7, 1, f).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.classifying_index("k0"), Some(3));
        assert_eq!(r.classifying_index("k1"), Some(3));
        assert_eq!(r.classifying_index("k2"), Some(2));
        assert_eq!(r.index, 3);
        assert_eq!(r.history.len(), 5);
        assert_eq!(r.distinguishing.len(), 3);
    }

    #[test]
    fn late_collision_declassifies_both() {
        // k0 is alone at level 2 until k1 arrives at level 3 with the same value; keys carry the level
        let f = |k: usize, n: usize| Ok(inv(match (k, n) { (0, _) => 2, (1, 2) | (2, 2) => 3, (1, _) => 2, _ => 4 }));
        let r = classify_with(&names(3), 2, 7, 2, f).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.classifying_index("k0"), Some(2));
        assert_eq!(r.classifying_index("k1"), Some(3));
        assert_eq!(r.classifying_index("k2"), Some(3));
    }

    #[test]
    fn cutoff_reports_unresolved_groups() {
        let f = |k: usize, _n: usize| Ok(inv(if k == 0 { 2 } else { 3 }));
        let r = classify_with(&names(3), 2, 4, 4, f).unwrap();
        assert!(!r.is_complete());
        assert_eq!(r.classified.len(), 1);
        assert_eq!(r.unresolved.len(), 1);
        assert_eq!(r.unresolved[0].n, 4);
        assert_eq!(r.unresolved[0].knots, vec!["k1".to_string(), "k2".to_string()]);
    }

    #[test]
    fn independent_of_jobs_and_input_order() {
        let f = |k: usize, n: usize| Ok(inv(((k % 3) as u64 + 2) * if n >= 3 + k % 2 { 100 + k as u64 } else { 1 }));
        let a = classify_with(&names(6), 2, 7, 1, f).unwrap();
        let b = classify_with(&names(6), 2, 7, 8, f).unwrap();
        assert_eq!(a, b);
        let rev: Vec<String> = names(6).into_iter().rev().collect();
        let c = classify_with(&rev, 2, 7, 3, |k, n| f(5 - k, n)).unwrap();
        assert_eq!(a.classified, c.classified);
        assert_eq!(a.distinguishing, c.distinguishing);
        assert_eq!(a.index, c.index);
    }

    #[test]
    fn errors_propagate() {
        let r = classify_with(&names(2), 2, 7, 1, |_, _| Err(Error::EmptyComplex));
        assert!(r.is_err());
    }
}
