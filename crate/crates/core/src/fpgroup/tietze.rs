use std::collections::HashSet;

use super::GroupPresentation;
use crate::word::Word;

/// Default number of simplification passes.
pub const DEFAULT_BUDGET: usize = 1000;

/// Substitutions may not grow the total relator length beyond this multiple
/// of the input length.
const LENGTH_FACTOR: usize = 10;

/// Simplifies a presentation by Tietze transformations until nothing changes
/// or `budget` passes have run.
///
/// Each pass cyclically reduces relators, drops empty and duplicate ones
/// (up to rotation and inversion), eliminates a generator that occurs exactly
/// once in some relator, and shortens relators by substituting subwords of
/// shorter ones.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> GroupPresentation {
    let cap = LENGTH_FACTOR * p.total_length().max(p.generator_count()).max(1);
    let mut cur = p.clone();
    for _ in 0..budget {
        let normalized = normalize(&mut cur);
        let moved = eliminate_one(&mut cur, cap) || shorten(&mut cur);
        if !normalized && !moved {
            break;
        }
    }
    normalize(&mut cur);
    cur
}

fn normalize(p: &mut GroupPresentation) -> bool {
    let before = p.relators.clone();
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(p.relators.len());
    for w in &p.relators {
        let w = w.clone().cyclically_reduced();
        if w.is_empty() {
            continue;
        }
        if seen.insert(w.cyclic_canonical()) {
            out.push(w);
        }
    }
    p.relators = out;
    p.relators != before
}

/// Generator `x` and relator index where `x` occurs exactly once, preferring
/// the shortest such relator.
fn elimination_candidates(p: &GroupPresentation) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for (i, w) in p.relators.iter().enumerate() {
        let mut count = vec![0usize; p.generator_count()];
        for l in w.iter() {
            count[l.id as usize] += 1;
        }
        for (x, &c) in count.iter().enumerate() {
            if c == 1 {
                out.push((i, x as u32));
            }
        }
    }
    out.sort_by_key(|&(i, x)| (p.relators[i].len(), i, x));
    out
}

fn eliminate_one(p: &mut GroupPresentation, cap: usize) -> bool {
    for (i, x) in elimination_candidates(p) {
        let mut r = p.relators[i].clone();
        let at = r.iter().position(|l| l.id == x).expect("candidate occurs");
        r.rotate_left(at);
        // x^ε w = 1  ⇒  x = w^{-ε}
        let eps = r.letters()[0].sign();
        let w: Word = r.iter().skip(1).collect();
        let value = w.signed_power(-eps);
        let relators: Vec<Word> = p
            .relators
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, rel)| rel.substitute_unchecked(x, &value).cyclically_reduced())
            .collect();
        if relators.iter().map(Word::len).sum::<usize>() > cap {
            continue;
        }
        p.relators = relators.into_iter().map(|rel| rel.map_ids(|id| if id > x { id - 1 } else { id })).collect();
        p.generators.remove(x as usize);
        return true;
    }
    false
}

/// Replaces an occurrence of more than half of a cyclic permutation of a
/// relator `s` (or its inverse) inside a longer relator by the inverse of the
/// remaining piece.
fn shorten(p: &mut GroupPresentation) -> bool {
    let mut order: Vec<usize> = (0..p.relators.len()).collect();
    order.sort_by_key(|&i| (p.relators[i].len(), i));
    for &si in &order {
        let s = p.relators[si].clone();
        let n = s.len();
        if n == 0 {
            continue;
        }
        let keep = n / 2 + 1;
        for base in [s.clone(), s.inverse()] {
            for k in 0..n {
                let mut rot = base.clone();
                rot.rotate_left(k);
                let u = &rot.letters()[..keep];
                let v: Word = rot.letters()[keep..].iter().copied().collect();
                let replacement = v.inverse();
                for &li in &order {
                    if li == si {
                        continue;
                    }
                    let l = &p.relators[li];
                    if l.len() < keep {
                        continue;
                    }
                    if let Some(new) = replace_cyclic(l, u, &replacement) {
                        p.relators[li] = new.cyclically_reduced();
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Replaces one cyclic occurrence of `u` in `l`, if any.
fn replace_cyclic(l: &Word, u: &[crate::word::Letter], by: &Word) -> Option<Word> {
    let m = l.len();
    if u.len() > m {
        return None;
    }
    let letters = l.letters();
    for start in 0..m {
        if (0..u.len()).all(|j| letters[(start + j) % m] == u[j]) {
            let mut out: Vec<_> = by.letters().to_vec();
            for j in u.len()..m {
                out.push(letters[(start + j) % m]);
            }
            return Some(Word::from_letters(out));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::abelianization;

    fn p(text: &str) -> GroupPresentation {
        GroupPresentation::parse(text).unwrap()
    }

    #[test]
    fn examples() {
        let q = tietze_simplify(&p("< a | a >"), DEFAULT_BUDGET);
        assert_eq!(q.generator_count(), 0);
        assert_eq!(q.relator_count(), 0);

        let q = tietze_simplify(&p("< a, b | a b a^-1 b^-1, b >"), DEFAULT_BUDGET);
        assert_eq!(q, p("< a | >"));

        let t = p("< x, y | x^2 y^-3 >");
        let q = tietze_simplify(&t, DEFAULT_BUDGET);
        assert_eq!(q.generator_count(), 2);
        assert_eq!(abelianization(&q), abelianization(&t));
    }

    #[test]
    fn duplicates_and_conjugates_are_dropped() {
        let q = tietze_simplify(&p("< x, y | x y x^-1 y^-1, y x y^-1 x^-1, x^-1 x >"), DEFAULT_BUDGET);
        assert_eq!(q.relator_count(), 1);
    }

    #[test]
    fn shortening_uses_a_shorter_relator() {
        // no generator occurs once until x^3 inside the long relator is replaced by y^-2
        let t = p("< x, y | x^3 y^2, x^3 y^3 x^2 y^2 >");
        let q = tietze_simplify(&t, DEFAULT_BUDGET);
        assert_eq!(q.generator_count(), 1);
        assert_eq!(q.total_length(), 5);
        assert_eq!(abelianization(&q), abelianization(&t));
    }
}
