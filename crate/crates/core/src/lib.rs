//! Exact biclique coverings of complete graphs, clique partitions of a graph
//! and its complement, fractional clique packings, the extension-method
//! search for low packing values, and the bound recursions built on them.

pub mod biclique;
pub mod bounds;
pub mod designs;
pub mod error;
pub mod graph;
pub mod lp;
pub mod packing;
pub mod partition;
pub mod ratio;
pub mod search;

pub use error::{Error, Result};
pub use graph::{CanonicalForm, Graph};

/// Exact rational scalar used for every certified value.
pub type Rational = num_rational::BigRational;
/// Dense simplex over exact rationals.
pub type ExactSimplex = lp::Simplex<Rational>;
/// Dense simplex over `f64`.
pub type FloatSimplex = lp::Simplex<f64>;
/// Dense simplex over `f32`.
pub type Float32Simplex = lp::Simplex<f32>;
