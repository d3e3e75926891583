//! Combinatorial 2-complexes (C-structures): vertices, directed edges and
//! 2-cells bounded by closed edge paths.
//!
//! A C-structure is built from a cubical complex modulo a collapsible
//! subcomplex, reduced by α-collapses along a discrete vector field, and read
//! off as a group presentation once a single vertex is left.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fpgroup::GroupPresentation;
use crate::lattice::KhalimskyCell;
use crate::morse::{coreduction_dvf, CellOrder, ComplexView, CubicalView, DiscreteVectorField};
use crate::reduce::ToplexSet;
use crate::word::{Letter, Word};

/// Which two consecutive dimensions a reduction pair lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    VertexEdge,
    EdgeFace,
}

/// A reduction pair `(α₀, α₁)` given by C-structure ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReductionPairC {
    pub kind: PairKind,
    pub lower: u32,
    pub upper: u32,
}

impl ReductionPairC {
    pub fn vertex_edge(vertex: u32, edge: u32) -> Self {
        ReductionPairC { kind: PairKind::VertexEdge, lower: vertex, upper: edge }
    }

    pub fn edge_face(edge: u32, face: u32) -> Self {
        ReductionPairC { kind: PairKind::EdgeFace, lower: edge, upper: face }
    }
}

/// A 2-dimensional combinatorial complex with stable integer ids per dimension.
///
/// Removed cells leave holes in the id space; ids are never reused.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CStructure {
    vertices: Vec<bool>,
    edges: Vec<Option<(u32, u32)>>,
    faces: Vec<Option<Word>>,
    /// Faces that contained an edge at some point; may hold stale entries.
    edge_faces: Vec<Vec<u32>>,
    /// Edges that touched a vertex at some point; may hold stale entries.
    vertex_edges: Vec<Vec<u32>>,
    labels: Option<Labels>,
}

/// Lattice cells the ids came from, when built from a cubical complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Labels {
    vertices: Vec<Option<KhalimskyCell>>,
    edges: Vec<KhalimskyCell>,
    faces: Vec<KhalimskyCell>,
}

impl CStructure {
    /// Vertices `0..vertex_count`, edges `i ↦ (source, target)`, faces with
    /// their boundary words. Fails unless every word is a closed edge path.
    pub fn from_parts(vertex_count: usize, edges: Vec<(u32, u32)>, faces: Vec<Word>) -> Result<Self> {
        for (i, &(s, t)) in edges.iter().enumerate() {
            if s as usize >= vertex_count || t as usize >= vertex_count {
                return Err(Error::InvalidPair(format!("edge {i} has an endpoint outside the vertex set")));
            }
        }
        let mut c = CStructure {
            vertices: vec![true; vertex_count],
            edges: edges.into_iter().map(Some).collect(),
            faces: faces.into_iter().map(Some).collect(),
            ..Default::default()
        };
        c.rebuild_incidence();
        if let Some(f) = c.face_ids().find(|&f| !c.is_closed_path(c.face(f).unwrap())) {
            return Err(Error::InvalidPair(format!("word of face {f} is not a closed path")));
        }
        Ok(c)
    }

    fn rebuild_incidence(&mut self) {
        self.vertex_edges = vec![Vec::new(); self.vertices.len()];
        self.edge_faces = vec![Vec::new(); self.edges.len()];
        for (e, ends) in self.edges.iter().enumerate() {
            if let Some((s, t)) = *ends {
                self.vertex_edges[s as usize].push(e as u32);
                if t != s {
                    self.vertex_edges[t as usize].push(e as u32);
                }
            }
        }
        for (f, w) in self.faces.iter().enumerate() {
            if let Some(w) = w {
                for l in w.iter() {
                    let list = &mut self.edge_faces[l.id as usize];
                    if list.last() != Some(&(f as u32)) {
                        list.push(f as u32);
                    }
                }
            }
        }
    }

    /// The C-structure of `k / a`: cells of `k` outside the closure of `a`,
    /// plus one base vertex (id 0) standing for the collapsed `a`.
    ///
    /// Edges point toward increasing coordinate. A square spanning axes
    /// `p < q` around centre `c` has word `(c−e_q)⁺ (c+e_p)⁺ (c+e_q)⁻ (c−e_p)⁻`,
    /// with letters inside the closure of `a` left out.
    pub fn from_quotient(k: &ToplexSet, a: &ToplexSet) -> Result<Self> {
        if !a.is_subset_of(k) {
            return Err(Error::NotSubcomplex);
        }
        if !is_collapsible(a) {
            return Err(Error::NotCollapsible);
        }
        let kv = CubicalView::new(k);
        let av = CubicalView::new(a);
        let in_a = |c: KhalimskyCell| av.index_of(c).is_some();

        let mut labels = Labels { vertices: vec![None], ..Default::default() };
        let mut vertex_id: BTreeMap<KhalimskyCell, u32> = BTreeMap::new();
        let mut edge_id: BTreeMap<KhalimskyCell, u32> = BTreeMap::new();
        for &cell in kv.cells() {
            if in_a(cell) {
                continue;
            }
            match cell.dimension() {
                0 => {
                    vertex_id.insert(cell, labels.vertices.len() as u32);
                    labels.vertices.push(Some(cell));
                }
                1 => {
                    edge_id.insert(cell, labels.edges.len() as u32);
                    labels.edges.push(cell);
                }
                2 => labels.faces.push(cell),
                _ => {}
            }
        }
        let vertex_of = |v: KhalimskyCell| vertex_id.get(&v).copied().unwrap_or(0);
        let edges = labels
            .edges
            .iter()
            .map(|e| {
                let [lo, hi] = [e.boundary()[0], e.boundary()[1]];
                (vertex_of(lo), vertex_of(hi))
            })
            .collect();
        let faces = labels
            .faces
            .iter()
            .map(|&f| {
                let odd: Vec<usize> = (0..3).filter(|&i| f.coords[i] % 2 != 0).collect();
                let (p, q) = (odd[0], odd[1]);
                let shift = |axis: usize, by: i32| {
                    let mut c = f.coords;
                    c[axis] += by;
                    KhalimskyCell { coords: c }
                };
                [(shift(q, -1), false), (shift(p, 1), false), (shift(q, 1), true), (shift(p, -1), true)]
                    .into_iter()
                    .filter_map(|(e, inverse)| edge_id.get(&e).map(|&id| Letter { id, inverse }))
                    .collect()
            })
            .collect();
        let mut c = CStructure::from_parts(labels.vertices.len(), edges, faces)?;
        c.labels = Some(labels);
        Ok(c)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().filter(|&&v| v).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().count()
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().flatten().count()
    }

    /// `|C₀| − |C₁| + |C₂|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertices.iter().enumerate().filter(|(_, &v)| v).map(|(i, _)| i as u32)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.edges.iter().enumerate().filter(|(_, e)| e.is_some()).map(|(i, _)| i as u32)
    }

    pub fn face_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.faces.iter().enumerate().filter(|(_, f)| f.is_some()).map(|(i, _)| i as u32)
    }

    pub fn has_vertex(&self, v: u32) -> bool {
        self.vertices.get(v as usize).copied().unwrap_or(false)
    }

    /// `(source, target)` of a live edge.
    pub fn edge(&self, e: u32) -> Option<(u32, u32)> {
        self.edges.get(e as usize).copied().flatten()
    }

    pub fn face(&self, f: u32) -> Option<&Word> {
        self.faces.get(f as usize).and_then(Option::as_ref)
    }

    /// The lattice cell an edge id was created from, if any.
    pub fn edge_label(&self, e: u32) -> Option<KhalimskyCell> {
        self.labels.as_ref().and_then(|l| l.edges.get(e as usize).copied())
    }

    pub fn face_label(&self, f: u32) -> Option<KhalimskyCell> {
        self.labels.as_ref().and_then(|l| l.faces.get(f as usize).copied())
    }

    /// The base vertex has no label; other vertices map to their lattice cell.
    pub fn vertex_label(&self, v: u32) -> Option<KhalimskyCell> {
        self.labels.as_ref().and_then(|l| l.vertices.get(v as usize).copied().flatten())
    }

    fn ends(&self, l: Letter) -> (u32, u32) {
        let (s, t) = self.edge(l.id).expect("live edge");
        if l.inverse {
            (t, s)
        } else {
            (s, t)
        }
    }

    /// Consecutive letters share endpoints and the path returns to its start.
    pub fn is_closed_path(&self, w: &Word) -> bool {
        if w.iter().any(|l| self.edge(l.id).is_none()) {
            return false;
        }
        let Some(first) = w.iter().next() else {
            return true;
        };
        let start = self.ends(first).0;
        let mut at = start;
        for l in w.iter() {
            let (s, t) = self.ends(l);
            if s != at {
                return false;
            }
            at = t;
        }
        at == start
    }

    /// All structural invariants: live endpoints and closed face words.
    pub fn is_valid(&self) -> bool {
        self.edges.iter().flatten().all(|&(s, t)| self.has_vertex(s) && self.has_vertex(t))
            && self.faces.iter().flatten().all(|w| self.is_closed_path(w))
    }

    /// Checks the regularity conditions of `pair`.
    pub fn check_pair(&self, pair: ReductionPairC) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidPair(format!("{pair:?}: {msg}")));
        match pair.kind {
            PairKind::VertexEdge => {
                let Some((s, t)) = self.edge(pair.upper) else {
                    return bad("edge is not live");
                };
                if !self.has_vertex(pair.lower) {
                    return bad("vertex is not live");
                }
                if s == t {
                    return bad("loop edges have no regular vertex");
                }
                if pair.lower != s && pair.lower != t {
                    return bad("vertex is not an endpoint");
                }
            }
            PairKind::EdgeFace => {
                let Some(w) = self.face(pair.upper) else {
                    return bad("face is not live");
                };
                if self.edge(pair.lower).is_none() {
                    return bad("edge is not live");
                }
                if w.occurrences(pair.lower) != 1 {
                    return bad("edge does not occur exactly once in the face word");
                }
            }
        }
        Ok(())
    }

    /// The α-collapse along `pair`, returned as a new structure.
    ///
    /// Vertex–edge: endpoints equal to α₀ move to the other end of α₁, and the
    /// contracted edge α₁ drops out of every face word. Edge–face: the word of α₁
    /// is rotated to start at α₀, `α₀* = (rest)^{−ε₁}` is substituted for α₀ in
    /// every remaining face. Words are not reduced.
    pub fn alpha_collapse(&self, pair: ReductionPairC) -> Result<CStructure> {
        let mut c = self.clone();
        c.collapse(pair, false)?;
        Ok(c)
    }

    /// In-place α-collapse; with `reduce`, touched face words are cyclically
    /// freely reduced afterwards.
    pub fn collapse(&mut self, pair: ReductionPairC, reduce: bool) -> Result<()> {
        self.check_pair(pair)?;
        match pair.kind {
            PairKind::VertexEdge => {
                let (s, t) = self.edge(pair.upper).expect("checked");
                let other = if s == pair.lower { t } else { s };
                self.edges[pair.upper as usize] = None;
                self.vertices[pair.lower as usize] = false;
                for e in std::mem::take(&mut self.vertex_edges[pair.lower as usize]) {
                    if let Some((s, t)) = self.edges[e as usize].as_mut() {
                        let mut moved = false;
                        for end in [s, t] {
                            if *end == pair.lower {
                                *end = other;
                                moved = true;
                            }
                        }
                        if moved {
                            self.vertex_edges[other as usize].push(e);
                        }
                    }
                }
                for f in std::mem::take(&mut self.edge_faces[pair.upper as usize]) {
                    if let Some(w) = self.faces[f as usize].as_mut() {
                        w.delete(pair.upper);
                        if reduce {
                            w.cyclic_reduce();
                        }
                    }
                }
            }
            PairKind::EdgeFace => {
                let mut w = self.faces[pair.upper as usize].take().expect("checked");
                let at = w.iter().position(|l| l.id == pair.lower).expect("checked");
                w.rotate_left(at);
                let eps = w.letters()[0].sign();
                let rest: Word = w.iter().skip(1).collect();
                let star = rest.signed_power(-eps);
                self.edges[pair.lower as usize] = None;
                for f in std::mem::take(&mut self.edge_faces[pair.lower as usize]) {
                    let Some(word) = self.faces[f as usize].as_mut() else {
                        continue;
                    };
                    if !word.contains(pair.lower) {
                        continue;
                    }
                    let mut next = word.substitute_unchecked(pair.lower, &star);
                    if reduce {
                        next.cyclic_reduce();
                    }
                    for l in next.iter() {
                        let list = &mut self.edge_faces[l.id as usize];
                        if list.last() != Some(&f) {
                            list.push(f);
                        }
                    }
                    *word = next;
                }
            }
        }
        Ok(())
    }

    /// Collapses every vector of `dvf`, a field on [`CStructure::view`] of
    /// the current state, in discovery order, reducing face words after each
    /// step.
    pub fn collapse_field(&mut self, dvf: &DiscreteVectorField) -> Result<()> {
        let pairs = {
            let view = self.view();
            dvf.vectors().iter().map(|&(t, s)| view.pair(t, s)).collect::<Result<Vec<_>>>()?
        };
        for pair in pairs {
            self.collapse(pair, true)?;
        }
        Ok(())
    }

    /// Coreduction field on this structure followed by all its collapses.
    pub fn reduce_with(&mut self, order: CellOrder) -> Result<()> {
        let dvf = coreduction_dvf(&self.view(), order);
        self.collapse_field(&dvf)
    }

    /// Generators are the live edges in id order, relators the face words in
    /// id order. Requires exactly one vertex.
    pub fn presentation(&self) -> Result<GroupPresentation> {
        let n = self.vertex_count();
        if n != 1 {
            return Err(Error::VertexCount(n));
        }
        let ids: Vec<u32> = self.edge_ids().collect();
        let mut rank = vec![u32::MAX; self.edges.len()];
        for (i, &e) in ids.iter().enumerate() {
            rank[e as usize] = i as u32;
        }
        let relators = self.faces.iter().flatten().map(|w| w.map_ids(|e| rank[e as usize])).collect();
        let generators = ids.iter().map(|e| format!("e{e}")).collect();
        Ok(GroupPresentation::new(generators, relators))
    }

    /// Dense cell indexing for the Morse layer: vertices, then edges, then
    /// faces, each in id order.
    pub fn view(&self) -> CStructureView<'_> {
        CStructureView::new(self)
    }

    /// Integer boundary matrices `(∂₁, ∂₂)` over the live cells in id order:
    /// `∂₁` is vertices × edges, `∂₂` is edges × faces (exponent sums).
    pub fn boundary_matrices(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let vs: Vec<u32> = self.vertex_ids().collect();
        let es: Vec<u32> = self.edge_ids().collect();
        let fs: Vec<u32> = self.face_ids().collect();
        let vpos = |v: u32| vs.binary_search(&v).expect("live vertex");
        let mut d1 = vec![vec![0i64; es.len()]; vs.len()];
        for (j, &e) in es.iter().enumerate() {
            let (s, t) = self.edge(e).unwrap();
            d1[vpos(t)][j] += 1;
            d1[vpos(s)][j] -= 1;
        }
        let mut d2 = vec![vec![0i64; fs.len()]; es.len()];
        for (j, &f) in fs.iter().enumerate() {
            for (i, &e) in es.iter().enumerate() {
                d2[i][j] = self.face(f).unwrap().exponent_sum(e);
            }
        }
        (d1, d2)
    }
}

/// A collapsibility certificate: coreduction leaves a single critical cell.
fn is_collapsible(a: &ToplexSet) -> bool {
    if a.is_empty() {
        return false;
    }
    let view = CubicalView::new(a);
    coreduction_dvf(&view, CellOrder::default()).critical().len() == 1
}

/// [`ComplexView`] over a [`CStructure`] snapshot.
pub struct CStructureView<'a> {
    c: &'a CStructure,
    /// `(dimension, id)` per dense index.
    cells: Vec<(usize, u32)>,
    vindex: Vec<usize>,
    eindex: Vec<usize>,
    edges_at: Vec<Vec<usize>>,
    faces_at: Vec<Vec<usize>>,
}

impl<'a> CStructureView<'a> {
    fn new(c: &'a CStructure) -> Self {
        let vs: Vec<u32> = c.vertex_ids().collect();
        let es: Vec<u32> = c.edge_ids().collect();
        let fs: Vec<u32> = c.face_ids().collect();
        let (e0, f0) = (vs.len(), vs.len() + es.len());
        let mut vindex = vec![usize::MAX; c.vertices.len()];
        for (i, &v) in vs.iter().enumerate() {
            vindex[v as usize] = i;
        }
        let mut eindex = vec![usize::MAX; c.edges.len()];
        for (i, &e) in es.iter().enumerate() {
            eindex[e as usize] = e0 + i;
        }
        let mut edges_at = vec![Vec::new(); vs.len()];
        for (i, &e) in es.iter().enumerate() {
            let (s, t) = c.edge(e).unwrap();
            edges_at[vindex[s as usize]].push(e0 + i);
            if t != s {
                edges_at[vindex[t as usize]].push(e0 + i);
            }
        }
        let mut faces_at = vec![Vec::new(); es.len()];
        for (i, &f) in fs.iter().enumerate() {
            let mut touched: Vec<usize> = c.face(f).unwrap().iter().map(|l| eindex[l.id as usize]).collect();
            touched.sort_unstable();
            touched.dedup();
            for e in touched {
                faces_at[e - e0].push(f0 + i);
            }
        }
        let cells = vs
            .iter()
            .map(|&v| (0, v))
            .chain(es.iter().map(|&e| (1, e)))
            .chain(fs.iter().map(|&f| (2, f)))
            .collect();
        CStructureView { c, cells, vindex, eindex, edges_at, faces_at }
    }

    /// `(dimension, id)` of a dense index.
    pub fn cell(&self, i: usize) -> (usize, u32) {
        self.cells[i]
    }

    /// The C-structure pair behind a vector `(τ, σ)` of a field on this view.
    pub fn pair(&self, tau: usize, sigma: usize) -> Result<ReductionPairC> {
        match (self.cells[tau], self.cells[sigma]) {
            ((0, v), (1, e)) => Ok(ReductionPairC::vertex_edge(v, e)),
            ((1, e), (2, f)) => Ok(ReductionPairC::edge_face(e, f)),
            (a, b) => Err(Error::InvalidPair(format!("cells {a:?} and {b:?} do not form a pair"))),
        }
    }
}

impl ComplexView for CStructureView<'_> {
    fn cell_count(&self) -> usize {
        self.cells.len()
    }

    fn dimension(&self, cell: usize) -> usize {
        self.cells[cell].0
    }

    fn boundary(&self, cell: usize) -> Vec<(usize, u32)> {
        match self.cells[cell] {
            (0, _) => Vec::new(),
            (1, e) => {
                let (s, t) = self.c.edge(e).unwrap();
                if s == t {
                    vec![(self.vindex[s as usize], 2)]
                } else {
                    vec![(self.vindex[s as usize], 1), (self.vindex[t as usize], 1)]
                }
            }
            (_, f) => {
                let mut out: Vec<(usize, u32)> = Vec::new();
                for l in self.c.face(f).unwrap().iter() {
                    let i = self.eindex[l.id as usize];
                    match out.iter_mut().find(|(j, _)| *j == i) {
                        Some(entry) => entry.1 += 1,
                        None => out.push((i, 1)),
                    }
                }
                out
            }
        }
    }

    fn coboundary(&self, cell: usize) -> Vec<usize> {
        match self.cells[cell].0 {
            0 => self.edges_at[cell].clone(),
            1 => self.faces_at[cell - self.vindex_len()].clone(),
            _ => Vec::new(),
        }
    }

    fn label(&self, cell: usize) -> String {
        let (d, id) = self.cells[cell];
        let name = ["v", "e", "f"][d];
        format!("{name}{id}")
    }
}

impl CStructureView<'_> {
    fn vindex_len(&self) -> usize {
        self.edges_at.len()
    }
}
