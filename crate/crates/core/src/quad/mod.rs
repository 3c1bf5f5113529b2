//! Windows, special functions and oscillatory quadrature.

pub mod bessel;
pub mod gamma;
pub mod fourier;
pub mod gauss;
pub mod integrate;
pub mod mellin;
pub mod phase_spec;
pub mod window;

pub use bessel::bessel_j;
pub use gamma::{complex_gamma, ln_gamma};
pub use integrate::{
    integrate_resolved, oscillatory_integral, oscillatory_integral_complex, QuadOptions, HARNESS_TOL, UNIT_TOL,
};
pub use mellin::mellin_transform;
pub use phase_spec::{PhaseKind, PhaseSpec};
pub use window::{make_window, smooth_step, SmoothWindow};
pub use fourier::FourierSampler;
