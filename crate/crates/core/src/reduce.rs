//! Deterministic compensated reductions.
//!
//! Every parallel sum in the crate goes through this module. Indices are cut
//! into fixed-size blocks, each block is summed left to right with Neumaier
//! compensation, and block results are combined by a pairwise tree whose shape
//! depends only on the number of blocks. The result is therefore bit-identical
//! for any rayon thread count.

use num_complex::Complex64;
use rayon::prelude::*;

/// Block length for the leaf sums.
pub const BLOCK: usize = 4096;

/// Neumaier (improved Kahan) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated accumulator for complex values (componentwise Neumaier).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexNeumaier {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexNeumaier {
    #[inline]
    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Sequential compensated sum in iteration order.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = Neumaier::default();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Pairwise tree sum of already-reduced partials. The tree shape depends only
/// on `parts.len()`.
pub fn pairwise<T>(parts: &[T]) -> T
where
    T: Copy + Default + std::ops::Add<Output = T>,
{
    match parts.len() {
        0 => T::default(),
        1 => parts[0],
        n => {
            let mid = n / 2;
            pairwise(&parts[..mid]) + pairwise(&parts[mid..])
        }
    }
}

/// Deterministic parallel sum of `f(i)` for `i` in `range`.
pub fn sum_real<F>(range: std::ops::Range<usize>, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let start = range.start;
    let len = range.end.saturating_sub(start);
    let nblocks = len.div_ceil(BLOCK);
    let partials: Vec<f64> = (0..nblocks)
        .into_par_iter()
        .map(|b| {
            let lo = start + b * BLOCK;
            let hi = (lo + BLOCK).min(start + len);
            let mut acc = Neumaier::default();
            for i in lo..hi {
                acc.add(f(i));
            }
            acc.value()
        })
        .collect();
    pairwise(&partials)
}

/// Deterministic parallel sum of complex `f(i)` for `i` in `range`.
pub fn sum_complex<F>(range: std::ops::Range<usize>, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let start = range.start;
    let len = range.end.saturating_sub(start);
    let nblocks = len.div_ceil(BLOCK);
    let partials: Vec<Complex64> = (0..nblocks)
        .into_par_iter()
        .map(|b| {
            let lo = start + b * BLOCK;
            let hi = (lo + BLOCK).min(start + len);
            let mut acc = ComplexNeumaier::default();
            for i in lo..hi {
                acc.add(f(i));
            }
            acc.value()
        })
        .collect();
    pairwise(&partials)
}

/// Deterministic sum of a slice of complex partials (blocked, then pairwise).
pub fn sum_complex_slice(values: &[Complex64]) -> Complex64 {
    sum_complex(0..values.len(), |i| values[i])
}
