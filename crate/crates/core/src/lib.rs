//! Numerical toolkit for GL(2) × GL(2) exponential twists: Hecke eigenvalue
//! tables, the delta method, Voronoi summation, stationary phase, twist-sum
//! harnesses and exponent-pair optimization.

pub mod arith;
pub mod csv;
pub mod deltamethod;
pub mod error;
pub mod exppair;
pub mod forms;
mod ntt;
pub mod phase;
pub mod quad;
pub mod reduce;
pub mod suite;
pub mod twist;
pub mod voronoi;

pub use arith::Rational;
pub use error::{Error, Result};
pub use forms::FourierTable;
pub use quad::{make_window, PhaseSpec, SmoothWindow};
pub use twist::TwistSpec;
