//! Exact rational toolkit for two-variable integer programming: a
//! cutting-plane solver driven by split disjunctions, integer hull
//! construction, and split/Chvatal closure computation in the plane.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`); nothing in the
//! solving path touches floating point.

pub mod closure;
pub mod geom;
pub mod hull;
pub mod instance;
pub mod lattice;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod poly;
pub mod solver;
pub mod svg;
pub mod tilt;

pub use geom::{HalfPlane, Int, IntVec, Line, Point, Rat};
pub use poly::{canonicalize, LpOutcome, Polyhedron, Shape, TranslatedCone};
