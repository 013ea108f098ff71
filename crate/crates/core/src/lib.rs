//! Exact-arithmetic engine for rank-2 moduli problems on algebraic surfaces:
//! wall-and-chamber structure of the ample cone, Gieseker / Mumford-Takemoto
//! stability of extension-presented sheaves, wall-crossing classification and
//! Uhlenbeck stratum bookkeeping.
//!
//! All arithmetic is exact: integer lattice classes use arbitrary-precision
//! integers and polarizations use arbitrary-precision rationals. There is no
//! floating point anywhere; every criterion in this crate is a sign test or
//! an integer comparison.
//!
//! Every value in this crate is immutable after construction and every
//! operation is a pure function, so everything is safe to share freely across
//! threads.

pub mod error;
pub mod lattice;
pub mod presets;
pub mod riemann_roch;
pub mod sheaves;
pub mod stability;
pub mod uhlenbeck;
pub mod wallcross;
pub mod walls;

pub use error::{Error, Result};

/// Arbitrary-precision integer used for all lattice data.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used for polarizations and exact geometry.
pub type Rat = num_rational::BigRational;

/// Shorthand for building an [`Int`] from a machine integer.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Shorthand for building a [`Rat`] from a machine integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}
