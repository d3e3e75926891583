//! Toplex-level reductions driven by the redundancy oracle: shaving and
//! collapsible-subset growth.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::lattice::{collapse_sequence, contact_complex, local_coords, CubicalComplex, KhalimskyCell, RedundancyOracle, Voxel};
use crate::morse::CellOrder;

/// A pure complex given by its 3-cubes.
pub type ToplexSet = CubicalComplex;

fn ordered_cubes(k: &ToplexSet, order: CellOrder) -> Vec<Voxel> {
    let mut cubes: Vec<Voxel> = k.cubes().collect();
    order.arrange(&mut cubes);
    cubes
}

/// Removes redundant toplexes until none is left.
///
/// The outer scan follows `order`; after each removal the neighbours are
/// queued and re-tested in FIFO order.
pub fn shave(k: &ToplexSet, order: CellOrder) -> ToplexSet {
    shave_with(k, order, RedundancyOracle::global())
}

pub fn shave_with(k: &ToplexSet, order: CellOrder, oracle: &RedundancyOracle) -> ToplexSet {
    let mut out = k.clone();
    let mut queue = VecDeque::new();
    for sigma in ordered_cubes(k, order) {
        if !out.contains_cube(sigma) || !oracle.is_redundant(out.voxel_mask(sigma)) {
            continue;
        }
        out.remove(sigma);
        queue.extend(out.neighbors(sigma));
        while let Some(tau) = queue.pop_front() {
            if out.contains_cube(tau) && oracle.is_redundant(out.voxel_mask(tau)) {
                out.remove(tau);
                queue.extend(out.neighbors(tau));
            }
        }
    }
    out
}

/// Grows a collapsible subcomplex from the first cube in `order`, absorbing a
/// queued neighbour whenever it is redundant against the cubes absorbed so far.
pub fn collapsible_subset(k: &ToplexSet, order: CellOrder) -> Result<ToplexSet> {
    collapsible_subset_traced(k, order, RedundancyOracle::global()).map(|(c, _)| c)
}

/// Like [`collapsible_subset`], also returning the cubes in insertion order.
pub fn collapsible_subset_traced(
    k: &ToplexSet,
    order: CellOrder,
    oracle: &RedundancyOracle,
) -> Result<(ToplexSet, Vec<Voxel>)> {
    let seed = *ordered_cubes(k, order).first().ok_or(Error::EmptyComplex)?;
    let mut c = k.empty_like();
    let mut inserted = vec![seed];
    c.insert(seed);
    let mut queue: VecDeque<Voxel> = k.neighbors(seed).filter(|v| !c.contains_cube(*v)).collect();
    while let Some(sigma) = queue.pop_front() {
        if c.contains_cube(sigma) || !oracle.is_redundant(c.voxel_mask(sigma)) {
            continue;
        }
        c.insert(sigma);
        inserted.push(sigma);
        queue.extend(k.neighbors(sigma).filter(|v| !c.contains_cube(*v)));
    }
    Ok((c, inserted))
}

/// Elementary collapses `(free face, coface)` taking the complex built by
/// inserting `cubes` in order down to a single vertex, or `None` if some
/// insertion was not redundant.
///
/// Cubes are peeled off in reverse insertion order; each one collapses onto its
/// contact complex with the earlier cubes, and the first cube onto its minimal
/// corner.
pub fn collapse_witness(cubes: &[Voxel]) -> Option<Vec<(KhalimskyCell, KhalimskyCell)>> {
    let mut current = CubicalComplex::from_cubes(cubes.iter().copied());
    let mut out = Vec::new();
    for (i, &v) in cubes.iter().enumerate().rev() {
        current.remove(v);
        let target = if i == 0 { 1 } else { contact_complex(current.voxel_mask(v)) };
        let seq = collapse_sequence(target)?;
        let base = KhalimskyCell::cube(v).coords.map(|c| c - 1);
        let to_global = |l| {
            let o = local_coords(l);
            KhalimskyCell::new(base[0] + o[0], base[1] + o[1], base[2] + o[2])
        };
        out.extend(seq.into_iter().map(|(t, s)| (to_global(t), to_global(s))));
    }
    Some(out)
}
