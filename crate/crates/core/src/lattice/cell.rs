use std::fmt;

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

/// A cell of the cubical tessellation of R³ in Khalimsky coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KhalimskyCell {
    pub coords: [i32; 3],
}

impl KhalimskyCell {
    pub const fn new(x: i32, y: i32, z: i32) -> Self {
        KhalimskyCell { coords: [x, y, z] }
    }

    /// The 3-cube with minimal corner at the voxel `v`.
    pub const fn cube(v: [i32; 3]) -> Self {
        KhalimskyCell { coords: [2 * v[0] + 1, 2 * v[1] + 1, 2 * v[2] + 1] }
    }

    /// Number of odd coordinates.
    pub fn dimension(&self) -> usize {
        self.coords.iter().filter(|c| c.rem_euclid(2) == 1).count()
    }

    pub fn is_cube(&self) -> bool {
        self.dimension() == 3
    }

    /// Minimal corner of a 3-cube.
    pub fn voxel(&self) -> Option<[i32; 3]> {
        self.is_cube().then(|| self.coords.map(|c| (c - 1).div_euclid(2)))
    }

    /// The `2·dim` facets, ordered by axis and then low before high.
    pub fn boundary(&self) -> ArrayVec<KhalimskyCell, 6> {
        let mut out = ArrayVec::new();
        for axis in 0..3 {
            if self.coords[axis].rem_euclid(2) == 1 {
                for delta in [-1, 1] {
                    let mut c = self.coords;
                    c[axis] += delta;
                    out.push(KhalimskyCell { coords: c });
                }
            }
        }
        out
    }

    /// Cells of the full tessellation having `self` as a facet.
    pub fn cofaces(&self) -> ArrayVec<KhalimskyCell, 6> {
        let mut out = ArrayVec::new();
        for axis in 0..3 {
            if self.coords[axis].rem_euclid(2) == 0 {
                for delta in [-1, 1] {
                    let mut c = self.coords;
                    c[axis] += delta;
                    out.push(KhalimskyCell { coords: c });
                }
            }
        }
        out
    }

    /// The up to eight 3-cubes whose closure contains this cell.
    pub fn incident_cubes(&self) -> ArrayVec<[i32; 3], 8> {
        let choices: [ArrayVec<i32, 2>; 3] = std::array::from_fn(|axis| {
            let c = self.coords[axis];
            let mut v = ArrayVec::new();
            if c.rem_euclid(2) == 1 {
                v.push((c - 1).div_euclid(2));
            } else {
                v.push(c.div_euclid(2) - 1);
                v.push(c.div_euclid(2));
            }
            v
        });
        let mut out = ArrayVec::new();
        for &x in &choices[0] {
            for &y in &choices[1] {
                for &z in &choices[2] {
                    out.push([x, y, z]);
                }
            }
        }
        out
    }
}

impl fmt::Display for KhalimskyCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.coords;
        write!(f, "({x},{y},{z})")
    }
}

/// Alternating count `Σ (-1)^dim` over an arbitrary cell collection.
pub fn euler_characteristic_of(cells: impl IntoIterator<Item = KhalimskyCell>) -> i64 {
    cells
        .into_iter()
        .map(|c| if c.dimension() % 2 == 0 { 1 } else { -1 })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dimension_examples() {
        assert_eq!(KhalimskyCell::new(0, 0, 0).dimension(), 0);
        assert_eq!(KhalimskyCell::new(1, 0, 2).dimension(), 1);
        assert_eq!(KhalimskyCell::new(1, 1, 1).dimension(), 3);
        assert_eq!(KhalimskyCell::new(-1, 0, 0).dimension(), 1);
    }

    #[test]
    fn boundary_examples() {
        assert!(KhalimskyCell::new(0, 0, 0).boundary().is_empty());
        assert_eq!(
            KhalimskyCell::new(1, 0, 0).boundary().as_slice(),
            &[KhalimskyCell::new(0, 0, 0), KhalimskyCell::new(2, 0, 0)]
        );
        assert_eq!(
            KhalimskyCell::new(1, 1, 0).boundary().as_slice(),
            &[
                KhalimskyCell::new(0, 1, 0),
                KhalimskyCell::new(2, 1, 0),
                KhalimskyCell::new(1, 0, 0),
                KhalimskyCell::new(1, 2, 0),
            ]
        );
    }

    #[test]
    fn shell_and_cube_euler() {
        let cube = KhalimskyCell::cube([0, 0, 0]);
        let mut closure = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    closure.push(KhalimskyCell::new(x, y, z));
                }
            }
        }
        assert_eq!(euler_characteristic_of(closure.iter().copied()), 1);
        let shell = closure.into_iter().filter(|c| *c != cube);
        assert_eq!(euler_characteristic_of(shell), 2);
        assert_eq!(euler_characteristic_of(std::iter::empty()), 0);
    }

    fn arb_cell() -> impl Strategy<Value = KhalimskyCell> {
        (-6i32..6, -6i32..6, -6i32..6).prop_map(|(x, y, z)| KhalimskyCell::new(x, y, z))
    }

    proptest! {
        #[test]
        fn boundary_and_coboundary_are_dual(c in arb_cell()) {
            let b = c.boundary();
            prop_assert_eq!(b.len(), 2 * c.dimension());
            for f in &b {
                prop_assert_eq!(f.dimension() + 1, c.dimension());
                prop_assert!(f.cofaces().contains(&c));
            }
            for up in c.cofaces() {
                prop_assert!(up.boundary().contains(&c));
            }
        }

        #[test]
        fn codimension_two_faces_reached_twice(c in arb_cell()) {
            let mut counts = std::collections::HashMap::new();
            for f in c.boundary() {
                for g in f.boundary() {
                    *counts.entry(g).or_insert(0) += 1;
                }
            }
            prop_assert!(counts.values().all(|&n| n == 2));
        }

        #[test]
        fn incident_cubes_contain_cell(c in arb_cell()) {
            let cubes = c.incident_cubes();
            prop_assert_eq!(cubes.len(), 1 << (3 - c.dimension()));
            for v in cubes {
                let cube = KhalimskyCell::cube(v);
                for axis in 0..3 {
                    prop_assert!((cube.coords[axis] - c.coords[axis]).abs() <= 1);
                }
            }
        }
    }
}
