//! Intersection norms of curve collections on surfaces, computed from
//! combinatorial maps: homology, Eulerian co-orientations, dual unit balls,
//! smoothing moves, torus realization and the genus-2 one-faced census.

pub mod census;
pub mod coorientation;
pub mod diagram;
pub mod format;
pub mod homology;
pub mod lp;
pub mod map;
pub mod moves;
pub mod polytope;
pub mod snf;
pub mod torus;

pub use census::word::ArcWord;
pub use census::{census, verify_main_theorem, Census, CensusClass, CensusError, TheoremReport};
pub use coorientation::{enumerate_eulerian, eulco_classes, CoOrientation, VertexType};
pub use format::{FormatError, MapDocument};
pub use homology::{
    homology_basis, intersection_form, Cochain, DualWalk, HomologyBasis, HomologyError,
};
pub use map::{CombinatorialMap, Diagnostic, HalfEdge, MapError, RawMap};
pub use moves::{reduce, smooth, MoveError, Parity, Reconnection};
pub use polytope::{convex_hull, LatticePolytope, NormOracle, PolytopeError};
pub use torus::{realize, torus_norm, TorusCollection, TorusCurve, TorusError};
