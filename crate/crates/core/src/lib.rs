//! Finite presentations of fundamental groups of cubical complexes.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice`]: cells of the cubical tessellation of Z³, bitmapped complexes,
//!   neighbour masks and the redundancy oracle.
//! - [`morse`]: discrete vector fields built by coreductions over any
//!   [`morse::ComplexView`].
//! - [`reduce`]: shaving and collapsible-subset growth on sets of 3-cubes.
//! - [`cstructure`]: combinatorial 2-complexes, α-collapses and presentation
//!   extraction.
//! - [`fpgroup`]: Tietze simplification, Smith normal form, low-index
//!   subgroups, Reidemeister–Schreier rewriting and the `Iⁿ` invariant.
//! - [`knots`]: grid diagrams and their cubical complements.
//! - [`pipeline`]: the end-to-end `fund_group` and `classify` drivers.

pub mod cstructure;
pub mod error;
pub mod fpgroup;
pub mod knots;
pub mod lattice;
pub mod morse;
pub mod pipeline;
pub mod reduce;
pub mod word;


pub use cstructure::{CStructure, PairKind, ReductionPairC};
pub use error::{Error, GridError, Result};
pub use fpgroup::{AbelianGroup, CosetTable, GroupPresentation};
pub use knots::{GridDiagram, KnotEmbedding};
pub use lattice::{CubicalComplex, KhalimskyCell, NeighborMask};
pub use morse::{CellOrder, ComplexView, DiscreteVectorField};
pub use pipeline::{fund_group, ClassificationRecord, ClassifyOptions, FundGroupOptions, FundGroupReport};
pub use reduce::ToplexSet;
pub use word::{Letter, Word};
