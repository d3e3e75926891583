use std::collections::VecDeque;
use std::fmt::Write as _;

use bitvec::prelude::*;

use super::cell::KhalimskyCell;
use crate::error::{Error, Result};

/// Integer position of a unit 3-cube (its minimal corner).
pub type Voxel = [i32; 3];

/// The 26 offsets of `{-1,0,1}³ \ {0}` in lexicographic order; bit `i` of a
/// [`NeighborMask`] refers to `NEIGHBOR_OFFSETS[i]`.
pub const NEIGHBOR_OFFSETS: [[i32; 3]; 26] = {
    let mut out = [[0; 3]; 26];
    let mut i = 0;
    let mut k = 0;
    while k < 27 {
        if k != 13 {
            out[i] = [k / 9 - 1, (k / 3) % 3 - 1, k % 3 - 1];
            i += 1;
        }
        k += 1;
    }
    out
};

/// Presence bits of the 26 neighbour cubes of a 3-cube.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeighborMask(pub u32);

impl NeighborMask {
    pub const EMPTY: NeighborMask = NeighborMask(0);
    pub const FULL: NeighborMask = NeighborMask((1 << 26) - 1);

    pub fn index_of(offset: [i32; 3]) -> Option<usize> {
        if offset.iter().any(|c| !(-1..=1).contains(c)) || offset == [0, 0, 0] {
            return None;
        }
        let k = ((offset[0] + 1) * 9 + (offset[1] + 1) * 3 + (offset[2] + 1)) as usize;
        Some(if k > 13 { k - 1 } else { k })
    }

    pub fn from_offsets<'a>(offsets: impl IntoIterator<Item = &'a [i32; 3]>) -> Self {
        let mut m = 0;
        for o in offsets {
            m |= 1 << Self::index_of(*o).expect("offset out of range");
        }
        NeighborMask(m)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// A pure cubical complex: a bitmap of unit 3-cubes over a bounding box.
///
/// The box keeps one empty voxel of padding around the cubes it was built for,
/// so neighbour lookups never leave the bitmap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalComplex {
    origin: Voxel,
    dims: [usize; 3],
    bits: BitVec,
    count: usize,
}

impl Default for CubicalComplex {
    fn default() -> Self {
        CubicalComplex { origin: [0; 3], dims: [0; 3], bits: BitVec::new(), count: 0 }
    }
}

impl CubicalComplex {
    /// An empty complex able to hold cubes in `lo..=hi` (per axis).
    pub fn with_bounds(lo: Voxel, hi: Voxel) -> Self {
        let origin = lo.map(|c| c - 1);
        let dims: [usize; 3] = std::array::from_fn(|k| (hi[k] - lo[k] + 3).max(0) as usize);
        let len = dims.iter().product();
        CubicalComplex { origin, dims, bits: bitvec![0; len], count: 0 }
    }

    pub fn from_cubes(cubes: impl IntoIterator<Item = Voxel>) -> Self {
        let cubes: Vec<Voxel> = cubes.into_iter().collect();
        if cubes.is_empty() {
            return Self::default();
        }
        let mut lo = cubes[0];
        let mut hi = cubes[0];
        for v in &cubes {
            for k in 0..3 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        let mut out = Self::with_bounds(lo, hi);
        for v in cubes {
            out.insert(v);
        }
        out
    }

    /// An empty complex over the same box.
    pub fn empty_like(&self) -> Self {
        CubicalComplex { origin: self.origin, dims: self.dims, bits: bitvec![0; self.bits.len()], count: 0 }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Inclusive bounds of voxels that may be stored (excluding the padding).
    pub fn capacity_bounds(&self) -> (Voxel, Voxel) {
        let lo = self.origin.map(|c| c + 1);
        let hi: Voxel = std::array::from_fn(|k| self.origin[k] + self.dims[k] as i32 - 2);
        (lo, hi)
    }

    /// Tight inclusive bounds of the stored cubes.
    pub fn bounds(&self) -> Option<(Voxel, Voxel)> {
        let mut it = self.cubes();
        let first = it.next()?;
        let (mut lo, mut hi) = (first, first);
        for v in it {
            for k in 0..3 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        Some((lo, hi))
    }

    #[inline]
    fn index(&self, v: Voxel) -> Option<usize> {
        let mut idx = 0usize;
        for k in 0..3 {
            let c = v[k] - self.origin[k];
            if c < 0 || c as usize >= self.dims[k] {
                return None;
            }
            idx = idx * self.dims[k] + c as usize;
        }
        Some(idx)
    }

    fn voxel_at(&self, mut idx: usize) -> Voxel {
        let z = idx % self.dims[2];
        idx /= self.dims[2];
        let y = idx % self.dims[1];
        let x = idx / self.dims[1];
        [self.origin[0] + x as i32, self.origin[1] + y as i32, self.origin[2] + z as i32]
    }

    fn in_interior(&self, v: Voxel) -> bool {
        (0..3).all(|k| {
            let c = v[k] - self.origin[k];
            c >= 1 && (c as usize) + 1 < self.dims[k]
        })
    }

    #[inline]
    pub fn contains_cube(&self, v: Voxel) -> bool {
        self.index(v).is_some_and(|i| self.bits[i])
    }

    /// Adds a cube; returns `false` if it was already present.
    ///
    /// Panics if `v` lies outside [`Self::capacity_bounds`].
    pub fn insert(&mut self, v: Voxel) -> bool {
        assert!(self.in_interior(v), "voxel {v:?} outside the complex box");
        let i = self.index(v).unwrap();
        if self.bits[i] {
            return false;
        }
        self.bits.set(i, true);
        self.count += 1;
        true
    }

    pub fn remove(&mut self, v: Voxel) -> bool {
        match self.index(v) {
            Some(i) if self.bits[i] => {
                self.bits.set(i, false);
                self.count -= 1;
                true
            }
            _ => false,
        }
    }

    /// Cubes in lexicographic `(x, y, z)` order.
    pub fn cubes(&self) -> impl Iterator<Item = Voxel> + '_ {
        self.bits.iter_ones().map(|i| self.voxel_at(i))
    }

    pub fn is_subset_of(&self, other: &CubicalComplex) -> bool {
        self.cubes().all(|v| other.contains_cube(v))
    }

    /// Whether the cell lies in the closure of some stored cube.
    pub fn contains_cell(&self, cell: KhalimskyCell) -> bool {
        cell.incident_cubes().into_iter().any(|v| self.contains_cube(v))
    }

    /// All cells of the closure, in lexicographic order of Khalimsky coordinates.
    pub fn cells(&self) -> Vec<KhalimskyCell> {
        let Some((lo, hi)) = self.bounds() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for x in 2 * lo[0]..=2 * hi[0] + 2 {
            for y in 2 * lo[1]..=2 * hi[1] + 2 {
                for z in 2 * lo[2]..=2 * hi[2] + 2 {
                    let c = KhalimskyCell::new(x, y, z);
                    if self.contains_cell(c) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// Cells of the complex having `cell` as a facet.
    pub fn coboundary(&self, cell: KhalimskyCell) -> Result<Vec<KhalimskyCell>> {
        if !self.contains_cell(cell) {
            return Err(Error::CellNotInComplex(cell));
        }
        Ok(cell.cofaces().into_iter().filter(|c| self.contains_cell(*c)).collect())
    }

    /// Neighbour mask of a 3-cube (the cube itself need not be present).
    pub fn neighbor_mask(&self, topcell: KhalimskyCell) -> Result<NeighborMask> {
        let v = topcell.voxel().ok_or(Error::NotTopCell(topcell.dimension()))?;
        Ok(self.voxel_mask(v))
    }

    #[inline]
    pub fn voxel_mask(&self, v: Voxel) -> NeighborMask {
        let mut m = 0u32;
        for (i, o) in NEIGHBOR_OFFSETS.iter().enumerate() {
            if self.contains_cube([v[0] + o[0], v[1] + o[1], v[2] + o[2]]) {
                m |= 1 << i;
            }
        }
        NeighborMask(m)
    }

    /// Present neighbour cubes of `v` (vertex-adjacent), in offset order.
    pub fn neighbors(&self, v: Voxel) -> impl Iterator<Item = Voxel> + '_ {
        NEIGHBOR_OFFSETS
            .iter()
            .map(move |o| [v[0] + o[0], v[1] + o[1], v[2] + o[2]])
            .filter(|w| self.contains_cube(*w))
    }

    pub fn euler_characteristic(&self) -> i64 {
        super::cell::euler_characteristic_of(self.cells())
    }

    /// Connected components of the underlying space (cubes sharing at least a
    /// vertex are connected).
    pub fn component_count(&self) -> usize {
        self.components_with(&NEIGHBOR_OFFSETS)
    }

    /// Components under face adjacency.
    pub fn face_component_count(&self) -> usize {
        const FACE: [[i32; 3]; 6] = [[-1, 0, 0], [1, 0, 0], [0, -1, 0], [0, 1, 0], [0, 0, -1], [0, 0, 1]];
        self.components_with(&FACE)
    }

    fn components_with(&self, offsets: &[[i32; 3]]) -> usize {
        let mut seen = bitvec![0; self.bits.len()];
        let mut comps = 0;
        let mut queue = VecDeque::new();
        for start in self.bits.iter_ones() {
            if seen[start] {
                continue;
            }
            comps += 1;
            seen.set(start, true);
            queue.push_back(start);
            while let Some(i) = queue.pop_front() {
                let v = self.voxel_at(i);
                for o in offsets {
                    let w = [v[0] + o[0], v[1] + o[1], v[2] + o[2]];
                    if let Some(j) = self.index(w) {
                        if self.bits[j] && !seen[j] {
                            seen.set(j, true);
                            queue.push_back(j);
                        }
                    }
                }
            }
        }
        comps
    }

    /// Text dump: one `x y z` voxel triple per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# {} cubes", self.count).unwrap();
        for [x, y, z] in self.cubes() {
            writeln!(s, "{x} {y} {z}").unwrap();
        }
        s
    }

    /// Parses the [`Self::to_text`] format; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut cubes = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::parse(lineno + 1, format!("expected `x y z`, got `{line}`")));
            }
            let mut v = [0i32; 3];
            for (k, p) in parts.iter().enumerate() {
                v[k] = p.parse().map_err(|e| Error::parse(lineno + 1, format!("`{p}`: {e}")))?;
            }
            cubes.push(v);
        }
        Ok(Self::from_cubes(cubes))
    }
}
