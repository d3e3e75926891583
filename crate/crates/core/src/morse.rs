//! Discrete vector fields by the coreduction method.
//!
//! Everything here works over a [`ComplexView`]: cells are dense indices
//! `0..cell_count()`, and the view supplies dimensions, boundaries with
//! multiplicity, and coboundaries.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{CubicalComplex, KhalimskyCell};

/// Read-only access to a finite cell complex.
pub trait ComplexView {
    fn cell_count(&self) -> usize;

    fn dimension(&self, cell: usize) -> usize;

    /// Facets of `cell` with the number of times each occurs in its boundary.
    fn boundary(&self, cell: usize) -> Vec<(usize, u32)>;

    /// Cells having `cell` as a facet, each listed once.
    fn coboundary(&self, cell: usize) -> Vec<usize>;

    /// `facet` occurs exactly once in the boundary of `cell`, one dimension down.
    fn regular_facet(&self, facet: usize, cell: usize) -> bool {
        self.dimension(facet) + 1 == self.dimension(cell)
            && self.boundary(cell).iter().any(|&(f, m)| f == facet && m == 1)
    }

    fn label(&self, cell: usize) -> String {
        cell.to_string()
    }
}

/// Initial order in which cells are offered when a new critical cell is needed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CellOrder {
    #[default]
    Lexicographic,
    ReverseLexicographic,
    Random { seed: u64 },
}

impl CellOrder {
    /// All three policy families, with the given seed for the shuffled one.
    pub fn all(seed: u64) -> [CellOrder; 3] {
        [CellOrder::Lexicographic, CellOrder::ReverseLexicographic, CellOrder::Random { seed }]
    }

    /// Arranges `items` (given in lexicographic order) according to the policy.
    pub fn arrange<T>(&self, items: &mut [T]) {
        match *self {
            CellOrder::Lexicographic => {}
            CellOrder::ReverseLexicographic => items.reverse(),
            CellOrder::Random { seed } => items.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        }
    }

    pub fn name(&self) -> String {
        match self {
            CellOrder::Lexicographic => "lex".into(),
            CellOrder::ReverseLexicographic => "revlex".into(),
            CellOrder::Random { seed } => format!("random:{seed}"),
        }
    }
}

/// An injective partial map from cells to cells plus the set of critical cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteVectorField {
    vectors: Vec<(usize, usize)>,
    critical: Vec<usize>,
    partner: Vec<Option<usize>>,
}

impl DiscreteVectorField {
    /// Assembles a field from explicit vectors `(τ, σ)` and critical cells,
    /// checking that they partition `0..cell_count`.
    pub fn from_parts(cell_count: usize, vectors: Vec<(usize, usize)>, critical: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; cell_count];
        let mut mark = |c: usize| -> Result<()> {
            if c >= cell_count || std::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidPair(format!("cell {c} is used twice or out of range")));
            }
            Ok(())
        };
        for &(t, s) in &vectors {
            mark(t)?;
            mark(s)?;
        }
        for &c in &critical {
            mark(c)?;
        }
        if let Some(c) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPair(format!("cell {c} is neither paired nor critical")));
        }
        let mut partner = vec![None; cell_count];
        for &(t, s) in &vectors {
            partner[t] = Some(s);
            partner[s] = Some(t);
        }
        Ok(DiscreteVectorField { vectors, critical, partner })
    }

    /// Vectors `(τ, V(τ))` in discovery order.
    pub fn vectors(&self) -> &[(usize, usize)] {
        &self.vectors
    }

    pub fn critical(&self) -> &[usize] {
        &self.critical
    }

    pub fn cell_count(&self) -> usize {
        self.partner.len()
    }

    pub fn is_critical(&self, cell: usize) -> bool {
        self.partner[cell].is_none()
    }

    /// The cell paired with `cell`, in either direction.
    pub fn partner(&self, cell: usize) -> Option<usize> {
        self.partner[cell]
    }

    /// Number of critical cells per dimension.
    pub fn critical_counts(&self, view: &impl ComplexView) -> [usize; 4] {
        let mut out = [0; 4];
        for &c in &self.critical {
            out[view.dimension(c).min(3)] += 1;
        }
        out
    }

    /// Domain, image and critical set partition the cells, and every vector is
    /// a reduction pair.
    pub fn is_valid_on(&self, view: &impl ComplexView) -> bool {
        if self.partner.len() != view.cell_count() {
            return false;
        }
        let parts = Self::from_parts(view.cell_count(), self.vectors.clone(), self.critical.clone());
        parts.is_ok() && self.vectors.iter().all(|&(t, s)| view.regular_facet(t, s))
    }

    /// Debug dump: `VEC dim τ σ` and `CRIT dim σ` lines.
    pub fn dump(&self, view: &impl ComplexView) -> String {
        let mut s = String::new();
        for &(t, c) in &self.vectors {
            writeln!(s, "VEC {} {} {}", view.dimension(t), view.label(t), view.label(c)).unwrap();
        }
        for &c in &self.critical {
            writeln!(s, "CRIT {} {}", view.dimension(c), view.label(c)).unwrap();
        }
        s
    }
}

/// Builds an acyclic discrete vector field with the coreduction method.
///
/// A FIFO queue of candidate cells is maintained; a dequeued cell whose only
/// remaining boundary cell is a regular facet forms a vector with it, a cell
/// with no remaining boundary propagates to its coboundary, and when the queue
/// runs dry the next remaining cell of minimal dimension (in `order`) becomes
/// critical.
pub fn coreduction_dvf(view: &impl ComplexView, order: CellOrder) -> DiscreteVectorField {
    let n = view.cell_count();
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); 4];
    for c in 0..n {
        let d = view.dimension(c);
        if by_dim.len() <= d {
            by_dim.resize(d + 1, Vec::new());
        }
        by_dim[d].push(c);
    }
    for cells in &mut by_dim {
        order.arrange(cells);
    }
    let mut remaining: Vec<usize> = by_dim.iter().map(Vec::len).collect();
    let mut cursor = vec![0usize; by_dim.len()];
    let mut left = n;

    let mut in_k = vec![true; n];
    let mut in_l = vec![false; n];
    let mut queue = VecDeque::new();
    let mut vectors = Vec::new();
    let mut critical = Vec::new();

    let enqueue_cofaces = |cell: usize, in_k: &[bool], in_l: &mut [bool], queue: &mut VecDeque<usize>| {
        for u in view.coboundary(cell) {
            if in_k[u] && !in_l[u] {
                in_l[u] = true;
                queue.push_back(u);
            }
        }
    };

    while left > 0 {
        match queue.pop_front() {
            None => {
                let d = remaining.iter().position(|&r| r > 0).expect("cells remain");
                let r = loop {
                    let c = by_dim[d][cursor[d]];
                    cursor[d] += 1;
                    if in_k[c] {
                        break c;
                    }
                };
                in_k[r] = false;
                remaining[d] -= 1;
                left -= 1;
                critical.push(r);
                enqueue_cofaces(r, &in_k, &mut in_l, &mut queue);
            }
            Some(sigma) => {
                in_l[sigma] = false;
                if !in_k[sigma] {
                    continue;
                }
                let live: Vec<(usize, u32)> = view.boundary(sigma).into_iter().filter(|&(t, _)| in_k[t]).collect();
                match live.as_slice() {
                    [] => enqueue_cofaces(sigma, &in_k, &mut in_l, &mut queue),
                    &[(tau, 1)] if view.dimension(tau) + 1 == view.dimension(sigma) => {
                        in_k[tau] = false;
                        in_k[sigma] = false;
                        remaining[view.dimension(tau)] -= 1;
                        remaining[view.dimension(sigma)] -= 1;
                        left -= 2;
                        vectors.push((tau, sigma));
                        enqueue_cofaces(tau, &in_k, &mut in_l, &mut queue);
                    }
                    _ => {}
                }
            }
        }
    }
    DiscreteVectorField::from_parts(n, vectors, critical).expect("coreduction produces a partition")
}

/// Detects directed cycles in the modified facet digraph `G_V`.
///
/// Edges run from every cell to each of its facets, except that the edge of a
/// vector `(τ, σ)` is reversed to run `τ → σ`.
pub fn verify_acyclic(view: &impl ComplexView, dvf: &DiscreteVectorField) -> bool {
    let n = view.cell_count();
    let mut upper = vec![None; n];
    for &(t, s) in dvf.vectors() {
        upper[t] = Some(s);
    }
    let successors = |x: usize| -> Vec<usize> {
        let mut out: Vec<usize> = view
            .boundary(x)
            .into_iter()
            .map(|(t, _)| t)
            .filter(|&t| upper[t] != Some(x))
            .collect();
        if let Some(s) = upper[x] {
            out.push(s);
        }
        out
    };
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, successors(root))];
        state[root] = 1;
        while let Some((node, succ)) = stack.last_mut() {
            match succ.pop() {
                Some(next) => match state[next] {
                    0 => {
                        state[next] = 1;
                        let s = successors(next);
                        stack.push((next, s));
                    }
                    1 => return false,
                    _ => {}
                },
                None => {
                    state[*node] = 2;
                    stack.pop();
                }
            }
        }
    }
    true
}

/// `Σ (-1)^dim` over the critical cells equals the Euler characteristic.
pub fn critical_euler_check(view: &impl ComplexView, dvf: &DiscreteVectorField) -> bool {
    let sign = |c: usize| if view.dimension(c).is_multiple_of(2) { 1i64 } else { -1 };
    let crit: i64 = dvf.critical().iter().map(|&c| sign(c)).sum();
    let all: i64 = (0..view.cell_count()).map(sign).sum();
    crit == all
}

/// Indexed view of the closure of a [`CubicalComplex`].
pub struct CubicalView {
    cells: Vec<KhalimskyCell>,
    lo: [i32; 3],
    extent: [usize; 3],
    index: Vec<u32>,
}

impl CubicalView {
    pub fn new(complex: &CubicalComplex) -> Self {
        let cells = complex.cells();
        let Some((lo, hi)) = complex.bounds() else {
            return CubicalView { cells, lo: [0; 3], extent: [0; 3], index: Vec::new() };
        };
        let lo = lo.map(|c| 2 * c);
        let extent: [usize; 3] = std::array::from_fn(|k| (2 * hi[k] + 2 - lo[k] + 1) as usize);
        let mut index = vec![u32::MAX; extent.iter().product()];
        let mut view = CubicalView { cells: Vec::new(), lo, extent, index: Vec::new() };
        for (i, c) in cells.iter().enumerate() {
            let slot = view.slot(*c).expect("cell within bounds");
            index[slot] = i as u32;
        }
        view.cells = cells;
        view.index = index;
        view
    }

    fn slot(&self, c: KhalimskyCell) -> Option<usize> {
        let mut idx = 0;
        for k in 0..3 {
            let d = c.coords[k] - self.lo[k];
            if d < 0 || d as usize >= self.extent[k] {
                return None;
            }
            idx = idx * self.extent[k] + d as usize;
        }
        Some(idx)
    }

    pub fn index_of(&self, c: KhalimskyCell) -> Option<usize> {
        let slot = self.slot(c)?;
        let i = *self.index.get(slot)?;
        (i != u32::MAX).then_some(i as usize)
    }

    pub fn cell(&self, i: usize) -> KhalimskyCell {
        self.cells[i]
    }

    pub fn cells(&self) -> &[KhalimskyCell] {
        &self.cells
    }
}

impl ComplexView for CubicalView {
    fn cell_count(&self) -> usize {
        self.cells.len()
    }

    fn dimension(&self, cell: usize) -> usize {
        self.cells[cell].dimension()
    }

    fn boundary(&self, cell: usize) -> Vec<(usize, u32)> {
        self.cells[cell]
            .boundary()
            .into_iter()
            .filter_map(|f| self.index_of(f).map(|i| (i, 1)))
            .collect()
    }

    fn coboundary(&self, cell: usize) -> Vec<usize> {
        self.cells[cell].cofaces().into_iter().filter_map(|c| self.index_of(c)).collect()
    }

    fn regular_facet(&self, facet: usize, cell: usize) -> bool {
        self.cells[cell].boundary().contains(&self.cells[facet])
    }

    fn label(&self, cell: usize) -> String {
        self.cells[cell].to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A small abstract complex given by explicit facet lists.
    struct Explicit {
        dims: Vec<usize>,
        facets: Vec<Vec<usize>>,
    }

    impl ComplexView for Explicit {
        fn cell_count(&self) -> usize {
            self.dims.len()
        }
        fn dimension(&self, c: usize) -> usize {
            self.dims[c]
        }
        fn boundary(&self, c: usize) -> Vec<(usize, u32)> {
            let mut out: Vec<(usize, u32)> = Vec::new();
            for &f in &self.facets[c] {
                match out.iter_mut().find(|(g, _)| *g == f) {
                    Some(e) => e.1 += 1,
                    None => out.push((f, 1)),
                }
            }
            out
        }
        fn coboundary(&self, c: usize) -> Vec<usize> {
            (0..self.dims.len()).filter(|&s| self.facets[s].contains(&c)).collect()
        }
    }

    fn square_boundary() -> Explicit {
        // vertices 0..4, edges 4..8 forming a 4-cycle
        Explicit {
            dims: vec![0, 0, 0, 0, 1, 1, 1, 1],
            facets: vec![vec![], vec![], vec![], vec![], vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        }
    }

    #[test]
    fn single_vertex() {
        let v = Explicit { dims: vec![0], facets: vec![vec![]] };
        let f = coreduction_dvf(&v, CellOrder::default());
        assert!(f.vectors().is_empty());
        assert_eq!(f.critical(), &[0]);
        assert!(critical_euler_check(&v, &f));
    }

    #[test]
    fn segment_trace() {
        let seg = Explicit { dims: vec![0, 0, 1], facets: vec![vec![], vec![], vec![0, 1]] };
        let f = coreduction_dvf(&seg, CellOrder::Lexicographic);
        assert_eq!(f.vectors(), &[(1, 2)]);
        assert_eq!(f.critical(), &[0]);
        let g = coreduction_dvf(&seg, CellOrder::ReverseLexicographic);
        assert_eq!(g.vectors(), &[(0, 2)]);
        assert_eq!(g.critical(), &[1]);
    }

    #[test]
    fn square_boundary_trace() {
        let sq = square_boundary();
        let f = coreduction_dvf(&sq, CellOrder::Lexicographic);
        // vertex 0 critical; edges 4 and 7 pair with 1 and 3; edge 5 then pairs with 2
        assert_eq!(f.vectors(), &[(1, 4), (3, 7), (2, 5)]);
        assert_eq!(f.critical(), &[0, 6]);
        assert!(verify_acyclic(&sq, &f));
        assert!(critical_euler_check(&sq, &f));
        assert!(f.is_valid_on(&sq));
    }

    #[test]
    fn hand_built_cycle_is_detected() {
        // two squares A, B sharing edges e, f: the pairs (e, A), (f, B) form
        // the cycle A → f → B → e → A
        let c = Explicit {
            dims: vec![0, 0, 1, 1, 2, 2],
            facets: vec![vec![], vec![], vec![0, 1], vec![0, 1], vec![2, 3], vec![2, 3]],
        };
        let bad = DiscreteVectorField::from_parts(6, vec![(2, 4), (3, 5)], vec![0, 1]).unwrap();
        assert!(!verify_acyclic(&c, &bad));
        let empty = DiscreteVectorField::from_parts(6, vec![], (0..6).collect()).unwrap();
        assert!(verify_acyclic(&c, &empty));
    }

    #[test]
    fn loop_edge_never_pairs() {
        let c = Explicit { dims: vec![0, 1], facets: vec![vec![], vec![0, 0]] };
        let f = coreduction_dvf(&c, CellOrder::default());
        assert!(f.vectors().is_empty());
        assert_eq!(f.critical(), &[0, 1]);
    }

    #[test]
    fn solid_cube() {
        let k = CubicalComplex::from_cubes([[0, 0, 0]]);
        let view = CubicalView::new(&k);
        for order in CellOrder::all(7) {
            let f = coreduction_dvf(&view, order);
            assert!(verify_acyclic(&view, &f));
            assert!(critical_euler_check(&view, &f));
            assert_eq!(f.critical().len(), 1);
            assert_eq!(view.dimension(f.critical()[0]), 0);
        }
    }

    #[test]
    fn dump_format() {
        let seg = Explicit { dims: vec![0, 0, 1], facets: vec![vec![], vec![], vec![0, 1]] };
        let f = coreduction_dvf(&seg, CellOrder::Lexicographic);
        assert_eq!(f.dump(&seg), "VEC 0 1 2\nCRIT 0 0\n");
    }

    #[test]
    fn partition_violations_rejected() {
        assert!(DiscreteVectorField::from_parts(3, vec![(0, 1)], vec![1, 2]).is_err());
        assert!(DiscreteVectorField::from_parts(3, vec![(0, 1)], vec![]).is_err());
    }
}
