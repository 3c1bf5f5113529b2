//! Mellin transforms of windows.

use num_complex::Complex64;

use crate::error::Result;
use crate::quad::integrate::{oscillatory_integral, QuadOptions};
use crate::quad::window::SmoothWindow;

/// `W̃(s) = ∫_0^∞ W(x) x^{s-1} dx`, computed as an oscillatory integral with
/// phase `Im(s)·log x`.
pub fn mellin_transform(w: &SmoothWindow, s: Complex64, tol: f64) -> Result<Complex64> {
    let (a, b) = w.support();
    assert!(a > 0.0, "Mellin transform needs support inside (0, ∞)");
    let opts = QuadOptions::with_tol(tol).breakpoints(&w.breakpoints());
    oscillatory_integral(
        |x| w.eval(x) * x.powf(s.re - 1.0),
        |x| s.im * x.ln(),
        |x| s.im / x,
        (a, b),
        &opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::window::make_window;

    #[test]
    fn unit_point_is_the_integral() {
        let w = make_window(0.5, 1.0, 40.0).unwrap();
        let v = mellin_transform(&w, Complex64::new(1.0, 0.0), 1e-12).unwrap();
        assert!((v.re - w.integral()).abs() < 1e-12);
        // 1/2 + O(transition width)
        assert!((v.re - 0.5).abs() <= 1.0 / 40.0);
    }
}
