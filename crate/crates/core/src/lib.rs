//! Free-group, symplectic and Johnson-homomorphism machinery for generating
//! sets of Torelli groups of surfaces.

pub mod catalog;
pub mod commutator;
pub mod genset;
pub mod handle_graph;
pub mod homology;
pub mod johnson;
pub mod stallings;
pub mod verify;
pub mod word;

pub use catalog::{build_catalog, Catalog, CurveDescriptor, IntersectionTable, SurfaceModel, TwistRecord};
pub use commutator::{rewrite, Factorization, KSubgroup, OrderedBasisContext, TomaszewskiElement};
pub use homology::{HomologyClass, IntegerMatrix};
pub use stallings::SubgroupGraph;
pub use word::{Alphabet, FreeAutomorphism, Word};
