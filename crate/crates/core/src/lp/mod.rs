//! Dense simplex over any [`LpScalar`], plus exact certification of a
//! proposed optimal basis for packing LPs.

mod certify;
mod scalar;
mod simplex;

pub(crate) use certify::certify_basis;
pub use scalar::LpScalar;
pub use simplex::{LinearProgram, PivotRule, Simplex, SimplexError, SimplexSolution};
