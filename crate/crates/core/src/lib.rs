//! Tree-metric toric degenerations of the Grassmannian Gr(2,n) and the
//! geometry of Euclidean polygon linkages.
//!
//! The algebraic half of the crate is exact: triangulations of a convex
//! n-gon, their dual trivalent trees, path-length weights on Plücker
//! coordinates, noncrossing chord multigraphs (Kempe graphs) as a monomial
//! basis, straightening of bracket products, and the graded semigroups that
//! describe the degenerate toric fiber.
//!
//! The geometric half is numerical: the Hopf map from spin-framed edges to
//! vectors in R³, closed polygons and their diagonals, bending flows,
//! Kamiyama–Yoshida congruence of polygons with collapsed diagonals, and
//! frame extension/restriction between edge framings and framings of a
//! decomposed triangle forest.
//!
//! Each half cross-validates the other: leading terms of straightened
//! products match the semigroup product, and frame-level torus actions match
//! polygon-level bending.

pub mod frames;
pub mod kempe;
pub mod pluecker;
pub mod polygon;
pub mod sampling;
pub mod tree;
pub mod verify;

pub use frames::{ForestFraming, SpinFrame, Su2};
pub use kempe::{EdgeWeighting, KempeGraph};
pub use pluecker::{BracketCombination, PlueckerMonomial, TripodExponents};
pub use polygon::{FramedPolygon, Polygon, StratumSignature};
pub use tree::{DecomposedForest, TrivalentTree, Triangulation};
