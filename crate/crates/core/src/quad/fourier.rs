//! Fourier transforms `f̂(ξ) = ∫ f(x) e(-xξ) dx` of a fixed compactly
//! supported function at many frequencies.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::quad::gauss::gauss_legendre;
use crate::reduce::ComplexNeumaier;

/// The function sampled once on Gauss nodes of panels fine enough for every
/// frequency up to `xi_max`; each transform is then a weighted sum.
#[derive(Debug, Clone)]
pub struct FourierSampler {
    nodes: Vec<f64>,
    /// quadrature weight times function value
    weighted: Vec<f64>,
    xi_max: f64,
}

impl FourierSampler {
    /// `breakpoints` must include the support ends.
    pub fn new<F: Fn(f64) -> f64>(f: F, breakpoints: &[f64], xi_max: f64) -> Self {
        let rule = gauss_legendre(16);
        let mut pts = breakpoints.to_vec();
        pts.sort_by(|a, b| a.total_cmp(b));
        pts.dedup();
        let span = pts.last().unwrap() - pts[0];
        let h_max = (0.5 / xi_max.max(1e-300)).min(span / 32.0);
        let mut nodes = Vec::new();
        let mut weighted = Vec::new();
        for seg in pts.windows(2) {
            let (s, e) = (seg[0], seg[1]);
            let count = ((e - s) / h_max).ceil().max(1.0) as usize;
            let h = (e - s) / count as f64;
            for k in 0..count {
                let c = s + (k as f64 + 0.5) * h;
                for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                    let y = c + 0.5 * h * x;
                    let v = f(y);
                    if v != 0.0 {
                        nodes.push(y);
                        weighted.push(0.5 * h * w * v);
                    }
                }
            }
        }
        FourierSampler { nodes, weighted, xi_max }
    }

    pub fn xi_max(&self) -> f64 {
        self.xi_max
    }

    /// `f̂(ξ)`; accurate for `|ξ| <= xi_max`.
    pub fn transform(&self, xi: f64) -> Complex64 {
        debug_assert!(xi.abs() <= self.xi_max * (1.0 + 1e-12));
        let mut acc = ComplexNeumaier::default();
        for (x, w) in self.nodes.iter().zip(&self.weighted) {
            let (s, c) = (-2.0 * PI * x * xi).sin_cos();
            acc.add(Complex64::new(w * c, w * s));
        }
        acc.value()
    }
}
