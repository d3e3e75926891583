//! Shared inputs for the benchmarks.

use knotgroup::knots::{embed_complement, standard_table};
use knotgroup::pipeline::{knot_group, FundGroupOptions, DEFAULT_PAD};
use knotgroup::{CubicalComplex, GridDiagram, GroupPresentation};

pub fn knot(name: &str) -> GridDiagram {
    standard_table().into_iter().find(|(n, _)| n == name).map(|(_, d)| d).expect("tabulated knot")
}

pub fn complement(name: &str) -> CubicalComplex {
    embed_complement(&knot(name), DEFAULT_PAD).expect("embeds").complement
}

/// Simplified presentation of a tabulated knot's group.
pub fn presentation(name: &str) -> GroupPresentation {
    knot_group(&knot(name), &FundGroupOptions::default()).expect("pipeline runs").simplified
}

/// Every tabulated knot with at most `c` crossings.
pub fn family(c: usize) -> Vec<(String, GridDiagram)> {
    standard_table()
        .into_iter()
        .filter(|(name, _)| name.split('_').next().and_then(|p| p.parse::<usize>().ok()).is_some_and(|n| n <= c))
        .collect()
}
