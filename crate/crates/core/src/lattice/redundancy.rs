//! Redundancy of a toplex against the contact complex cut out by its
//! neighbours.
//!
//! The closed unit cube has 27 cells. A local cell is an index
//! `9a + 3b + c` with `a, b, c ∈ {0, 1, 2}` (1 = spans the interval), so a
//! subcomplex of the closed cube is a 27-bit set. The toplex is redundant iff
//! the closed cube collapses onto its contact complex; that is decided by an
//! exhaustive search over elementary free-face collapses.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use parking_lot::RwLock;

use super::complex::{NeighborMask, NEIGHBOR_OFFSETS};
use super::table::LookupTable;

/// Index of a cell of the closed unit cube, `0..27`.
pub type LocalCell = u8;

/// All 27 cells of the closed cube.
pub const FULL_CUBE: u32 = (1 << 27) - 1;

struct Tables {
    cofaces: [Vec<LocalCell>; 27],
    contact: [u32; 26],
    even: u32,
}

fn digits(i: usize) -> [usize; 3] {
    [i / 9, (i / 3) % 3, i % 3]
}

fn undigits(d: [usize; 3]) -> usize {
    d[0] * 9 + d[1] * 3 + d[2]
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let cofaces = std::array::from_fn(|i| {
            let d = digits(i);
            let mut out = Vec::new();
            for k in 0..3 {
                if d[k] != 1 {
                    let mut e = d;
                    e[k] = 1;
                    out.push(undigits(e) as LocalCell);
                }
            }
            out
        });
        let contact = std::array::from_fn(|n| {
            let o = NEIGHBOR_OFFSETS[n];
            let mut m = 0u32;
            for i in 0..27 {
                let d = digits(i);
                let inside = (0..3).all(|k| match o[k] {
                    -1 => d[k] == 0,
                    1 => d[k] == 2,
                    _ => true,
                });
                if inside {
                    m |= 1 << i;
                }
            }
            m
        });
        let mut even = 0;
        for i in 0..27 {
            if digits(i).iter().filter(|&&x| x == 1).count() % 2 == 0 {
                even |= 1 << i;
            }
        }
        Tables { cofaces, contact, even }
    })
}

/// Dimension of a local cell.
pub fn local_dimension(cell: LocalCell) -> usize {
    digits(cell as usize).iter().filter(|&&x| x == 1).count()
}

/// Local Khalimsky offsets `(0..=2)³` of a local cell.
pub fn local_coords(cell: LocalCell) -> [i32; 3] {
    digits(cell as usize).map(|x| x as i32)
}

fn euler(set: u32) -> i32 {
    let even = tables().even;
    (set & even).count_ones() as i32 - (set & !even & FULL_CUBE).count_ones() as i32
}

/// The contact complex of the masked neighbours, as a 27-bit cell set.
pub fn contact_complex(mask: NeighborMask) -> u32 {
    let t = tables();
    let mut bits = mask.0 & NeighborMask::FULL.0;
    let mut out = 0;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        out |= t.contact[i];
        bits &= bits - 1;
    }
    out
}

/// Searches for a sequence of elementary collapses taking the closed cube onto
/// the subcomplex `target` (a 27-bit set closed under faces).
///
/// Returns the removed `(free face, coface)` pairs in order, or `None` when no
/// sequence exists. The search backtracks over every free-face choice, so a
/// `None` is definitive.
pub fn collapse_sequence(target: u32) -> Option<Vec<(LocalCell, LocalCell)>> {
    let target = target & FULL_CUBE;
    if euler(target) != 1 {
        return None;
    }
    let mut dead = HashSet::new();
    let mut path = Vec::new();
    search(FULL_CUBE, target, &mut dead, &mut path).then_some(path)
}

fn search(state: u32, target: u32, dead: &mut HashSet<u32>, path: &mut Vec<(LocalCell, LocalCell)>) -> bool {
    if state == target {
        return true;
    }
    let t = tables();
    let mut free = state & !target;
    while free != 0 {
        let tau = free.trailing_zeros() as usize;
        free &= free - 1;
        let mut only = None;
        let mut n = 0;
        for &s in &t.cofaces[tau] {
            if state >> s & 1 == 1 {
                n += 1;
                only = Some(s);
            }
        }
        if n != 1 {
            continue;
        }
        let sigma = only.unwrap();
        let next = state & !(1 << tau) & !(1 << sigma);
        if dead.contains(&next) {
            continue;
        }
        path.push((tau as LocalCell, sigma));
        if search(next, target, dead, path) {
            return true;
        }
        path.pop();
        dead.insert(next);
    }
    dead.insert(state);
    false
}

/// Un-memoised redundancy test.
pub fn search_redundant(mask: NeighborMask) -> bool {
    collapse_sequence(contact_complex(mask)).is_some()
}

/// Memoised redundancy oracle, safe to share between threads.
#[derive(Default)]
pub struct RedundancyOracle {
    by_mask: RwLock<HashMap<u32, bool>>,
    by_contact: RwLock<HashMap<u32, bool>>,
    table: Option<LookupTable>,
}

impl RedundancyOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Oracle answering from a fully materialised table.
    pub fn with_table(table: LookupTable) -> Self {
        RedundancyOracle { table: Some(table), ..Self::default() }
    }

    /// Process-wide shared oracle.
    pub fn global() -> &'static RedundancyOracle {
        static G: OnceLock<RedundancyOracle> = OnceLock::new();
        G.get_or_init(RedundancyOracle::new)
    }

    pub fn is_redundant(&self, mask: NeighborMask) -> bool {
        if let Some(t) = &self.table {
            return t.get(mask);
        }
        if let Some(&r) = self.by_mask.read().get(&mask.0) {
            return r;
        }
        let r = self.by_contact_complex(contact_complex(mask));
        self.by_mask.write().insert(mask.0, r);
        r
    }

    /// Redundancy keyed directly by a contact complex.
    pub fn by_contact_complex(&self, contact: u32) -> bool {
        if let Some(&r) = self.by_contact.read().get(&contact) {
            return r;
        }
        let r = collapse_sequence(contact).is_some();
        self.by_contact.write().insert(contact, r);
        r
    }

    pub fn cached_masks(&self) -> usize {
        self.by_mask.read().len()
    }
}

/// Redundancy test through the shared oracle.
pub fn is_redundant(mask: NeighborMask) -> bool {
    RedundancyOracle::global().is_redundant(mask)
}

/// A signed permutation of the axes: `out[k] = signs[k] · in[perm[k]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeSymmetry {
    pub perm: [usize; 3],
    pub signs: [i32; 3],
}

impl CubeSymmetry {
    pub fn apply(&self, o: [i32; 3]) -> [i32; 3] {
        std::array::from_fn(|k| self.signs[k] * o[self.perm[k]])
    }

    pub fn apply_mask(&self, mask: NeighborMask) -> NeighborMask {
        let mut out = 0;
        for (i, o) in NEIGHBOR_OFFSETS.iter().enumerate() {
            if mask.contains(i) {
                out |= 1 << NeighborMask::index_of(self.apply(*o)).unwrap();
            }
        }
        NeighborMask(out)
    }
}

/// The 48 symmetries of the cube.
pub fn cube_symmetries() -> Vec<CubeSymmetry> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for perm in PERMS {
        for s in 0..8 {
            let signs = std::array::from_fn(|k| if s >> k & 1 == 1 { -1 } else { 1 });
            out.push(CubeSymmetry { perm, signs });
        }
    }
    out
}
