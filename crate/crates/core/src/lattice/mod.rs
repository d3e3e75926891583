//! Cubical complexes over the Z³ grid.
//!
//! Cells use Khalimsky coordinates: an odd coordinate spans a unit interval
//! and an even coordinate is a point, so the 3-cube `[x,x+1]×[y,y+1]×[z,z+1]`
//! is the cell `(2x+1, 2y+1, 2z+1)`. Complexes are pure and stored as a bitmap
//! of 3-cubes; lower cells are implied by closure.

mod cell;
mod complex;
mod redundancy;
mod table;

pub use cell::{euler_characteristic_of, KhalimskyCell};
pub use complex::{CubicalComplex, NeighborMask, Voxel, NEIGHBOR_OFFSETS};
pub use redundancy::{
    collapse_sequence, contact_complex, cube_symmetries, is_redundant, local_coords, local_dimension, search_redundant, CubeSymmetry,
    LocalCell, RedundancyOracle, FULL_CUBE,
};
pub use table::{LookupTable, TABLE_HEADER};
