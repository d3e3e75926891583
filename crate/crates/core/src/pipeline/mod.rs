//! End-to-end drivers: presentations of fundamental groups of cubical
//! complexes, and classification of knot families by `Iⁿ`.

mod cache;
mod classify;
mod report;

use serde::Serialize;

use crate::cstructure::CStructure;
use crate::error::{Error, Result};
use crate::fpgroup::{tietze_simplify, GroupPresentation, DEFAULT_BUDGET};
use crate::knots::{embed_complement, GridDiagram};
use crate::morse::CellOrder;
use crate::reduce::{collapsible_subset, shave, ToplexSet};

pub use cache::InvariantCache;
pub use classify::{classify, classify_with, ClassificationRecord, ClassifyOptions, Invariant, LevelResult, UnresolvedGroup};
pub use report::{csv_report, jsonl_report, natural_cmp, summary_table};

/// Bumped whenever a change could alter computed invariants.
pub const PIPELINE_VERSION: &str = "1";

/// Padding used when embedding knot complements.
pub const DEFAULT_PAD: usize = 2;

/// Sizes observed along one run of the pipeline.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionStats {
    pub input_cubes: usize,
    pub shaved_cubes: usize,
    pub collapsible_cubes: usize,
    /// Vertices, edges and faces of the quotient C-structure.
    pub quotient_cells: [usize; 3],
    /// Vertices, edges and faces left after all α-collapses.
    pub critical_cells: [usize; 3],
}

/// A presentation before and after Tietze simplification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundGroupReport {
    pub raw: GroupPresentation,
    pub simplified: GroupPresentation,
    pub order: CellOrder,
    pub stats: ReductionStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FundGroupOptions {
    pub order: CellOrder,
    pub budget: usize,
    /// Retry with the other orderings when more generators than this remain.
    pub max_generators: usize,
    pub retry: bool,
    /// Seed of the shuffled ordering tried during retries.
    pub seed: u64,
}

impl Default for FundGroupOptions {
    fn default() -> Self {
        FundGroupOptions { order: CellOrder::default(), budget: DEFAULT_BUDGET, max_generators: 4, retry: true, seed: 1 }
    }
}

/// Presentation of `π₁(k)`: shave, grow a collapsible subset, pass to the
/// quotient C-structure, collapse along a coreduction field, read off and
/// simplify.
pub fn fund_group(k: &ToplexSet, order: CellOrder) -> Result<GroupPresentation> {
    fund_group_report(k, order, DEFAULT_BUDGET).map(|r| r.simplified)
}

/// [`fund_group`] with the intermediate presentation and sizes.
pub fn fund_group_report(k: &ToplexSet, order: CellOrder, budget: usize) -> Result<FundGroupReport> {
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let components = k.component_count();
    if components != 1 {
        return Err(Error::Disconnected(components));
    }
    let shaved = shave(k, order);
    let a = collapsible_subset(&shaved, order)?;
    let mut c = CStructure::from_quotient(&shaved, &a)?;
    let quotient_cells = [c.vertex_count(), c.edge_count(), c.face_count()];
    c.reduce_with(order)?;
    let raw = c.presentation()?;
    let simplified = tietze_simplify(&raw, budget);
    let stats = ReductionStats {
        input_cubes: k.len(),
        shaved_cubes: shaved.len(),
        collapsible_cubes: a.len(),
        quotient_cells,
        critical_cells: [c.vertex_count(), c.edge_count(), c.face_count()],
    };
    Ok(FundGroupReport { raw, simplified, order, stats })
}

/// Runs with `options.order` and, if the result keeps more than
/// `max_generators` generators, with the remaining orderings; keeps the
/// smallest simplified presentation (generators, then total length).
pub fn fund_group_best(k: &ToplexSet, options: &FundGroupOptions) -> Result<FundGroupReport> {
    let mut best = fund_group_report(k, options.order, options.budget)?;
    if !options.retry || best.simplified.generator_count() <= options.max_generators {
        return Ok(best);
    }
    for order in CellOrder::all(options.seed) {
        if order == options.order {
            continue;
        }
        let r = fund_group_report(k, order, options.budget)?;
        let key = |r: &FundGroupReport| (r.simplified.generator_count(), r.simplified.total_length());
        if key(&r) < key(&best) {
            best = r;
        }
        if best.simplified.generator_count() <= options.max_generators {
            break;
        }
    }
    Ok(best)
}

/// Presentation of the group of the knot drawn by `d`.
pub fn knot_group(d: &GridDiagram, options: &FundGroupOptions) -> Result<FundGroupReport> {
    let e = embed_complement(d, DEFAULT_PAD)?;
    fund_group_best(&e.complement, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{abelianization, AbelianGroup};
    use crate::lattice::CubicalComplex;

    fn block(n: i32) -> ToplexSet {
        let mut v = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    v.push([x, y, z]);
                }
            }
        }
        CubicalComplex::from_cubes(v)
    }

    #[test]
    fn collapsible_block_is_trivial() {
        let p = fund_group(&block(2), CellOrder::default()).unwrap();
        assert_eq!(p, GroupPresentation::default());
    }

    #[test]
    fn ring_has_infinite_cyclic_group() {
        let mut v = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                if (x, y) != (1, 1) {
                    v.push([x, y, 0]);
                }
            }
        }
        let ring = CubicalComplex::from_cubes(v);
        for order in CellOrder::all(5) {
            let r = fund_group_report(&ring, order, DEFAULT_BUDGET).unwrap();
            assert_eq!(abelianization(&r.raw), AbelianGroup::free(1));
            assert_eq!(r.simplified.generator_count(), 1);
            assert_eq!(r.simplified.relator_count(), 0);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(fund_group(&CubicalComplex::default(), CellOrder::default()), Err(Error::EmptyComplex)));
        let two = CubicalComplex::from_cubes([[0, 0, 0], [3, 0, 0]]);
        assert!(matches!(fund_group(&two, CellOrder::default()), Err(Error::Disconnected(2))));
    }
}
