//! Hecke eigenforms of level one: exact q-expansions, normalized eigenvalue
//! tables, Rankin–Selberg partial sums and the degree-five convolution
//! `1 ⊞ (f × g)`.
//!
//! The six weights with a one-dimensional cusp space are generated as
//! `Δ · E_{w-12}`, where `Δ = q ∏(1 - q^n)^24` and `E_4, E_6, E_8 = E_4^2,
//! E_10 = E_4 E_6, E_14 = E_4^2 E_6` are the level-one Eisenstein series.
//! Products are formed exactly modulo several NTT primes and lifted by CRT,
//! so the integer coefficients are exact before normalization.

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{gcd, primes_up_to};
use crate::error::{Error, Result};
use crate::ntt::{mul_truncated, ntt_primes, Crt, Prime, Transformed};
use crate::reduce::Neumaier;

/// Weights whose level-one cusp space is spanned by a single eigenform.
pub const SUPPORTED_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

/// Largest table the transform sizes support (`2N - 1 <= 2^24`).
pub const MAX_TABLE_LEN: usize = 8_000_000;

/// `(k, c)` with `E_k = 1 + c Σ σ_{k-1}(n) q^n` for the Eisenstein factor of
/// each weight; `None` for `Δ` itself.
fn eisenstein_factor(weight: u32) -> Result<Option<(u32, i64)>> {
    Ok(match weight {
        12 => None,
        16 => Some((4, 240)),
        18 => Some((6, -504)),
        20 => Some((8, 480)),
        22 => Some((10, -264)),
        26 => Some((14, -24)),
        w => return Err(Error::UnsupportedWeight(w)),
    })
}

/// Normalized Hecke eigenvalues `λ(1..=N)` of the level-one eigenform of a
/// given weight, `λ(n) = a(n) / n^{(w-1)/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierTable {
    weight: u32,
    values: Vec<f64>,
}

impl FourierTable {
    /// Wraps precomputed eigenvalues (`values[0] = λ(1)`).
    pub fn from_values(weight: u32, values: Vec<f64>) -> Result<Self> {
        eisenstein_factor(weight)?;
        Ok(FourierTable { weight, values })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Number of stored coefficients `N`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `λ(n)` for `1 <= n <= N`.
    #[inline]
    pub fn lambda(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    /// Fallible lookup.
    pub fn get(&self, n: usize) -> Result<f64> {
        if n == 0 || n > self.values.len() {
            return Err(Error::RangeExceeded {
                requested: n as u64,
                available: self.values.len() as u64,
            });
        }
        Ok(self.values[n - 1])
    }

    /// Eigenvalues as a slice, `[λ(1), λ(2), ...]`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Fails with `RangeExceeded` unless `λ(n)` is stored.
    pub fn require(&self, n: usize) -> Result<()> {
        self.get(n.max(1)).map(|_| ())
    }

    /// Prefix of length `n`.
    pub fn truncated(&self, n: usize) -> Result<FourierTable> {
        self.require(n)?;
        Ok(FourierTable { weight: self.weight, values: self.values[..n].to_vec() })
    }
}

/// Per-prime residues of `a(1..=n)` for each weight that needs this prime
/// (plain residues, not Montgomery form); `None` for weights whose
/// coefficients are already determined by fewer primes. `Δ` is expanded once
/// and shared.
fn residues_mod(pr: &Prime, weights: &[(u32, bool)], n: usize) -> Vec<Option<Vec<u32>>> {
    // ∏(1 - q^n)^3 = Σ (-1)^k (2k + 1) q^{k(k+1)/2}; sparse, so square directly
    let mut terms = Vec::new();
    let mut k = 0usize;
    while k * (k + 1) / 2 < n {
        let v = if k % 2 == 0 { 2 * k as i64 + 1 } else { -(2 * k as i64 + 1) };
        terms.push((k * (k + 1) / 2, pr.from_i64(v)));
        k += 1;
    }
    let mut s2 = vec![0u32; n];
    for (i, &(ei, ci)) in terms.iter().enumerate() {
        for &(ej, cj) in &terms[i..] {
            if ei + ej >= n {
                break;
            }
            let prod = pr.mul(ci, cj);
            let prod = if ei == ej { prod } else { pr.add(prod, prod) };
            s2[ei + ej] = pr.add(s2[ei + ej], prod);
        }
    }
    let s4 = mul_truncated(pr, &s2, &s2, n);
    drop(s2);
    let delta = mul_truncated(pr, &s4, &s4, n);
    drop(s4);
    let needs_product = weights.iter().filter(|(w, used)| *used && *w != 12).count();
    let delta_hat = (needs_product > 0).then(|| Transformed::new(pr, &delta, n));
    weights
        .iter()
        .map(|&(w, used)| {
            if !used {
                return None;
            }
            let series = match eisenstein_factor(w).expect("weight validated") {
                Some((k, c)) => {
                    let hat = delta_hat.as_ref().expect("transform prepared");
                    hat.mul(pr, &eisenstein_mod(pr, k, c, n))
                }
                None => delta.clone(),
            };
            Some(series.iter().map(|&x| pr.from_mont(x)).collect())
        })
        .collect()
}

/// `1 + c Σ σ_{k-1}(m) q^m` modulo `pr`, Montgomery residues, `n` terms.
fn eisenstein_mod(pr: &Prime, k: u32, c: i64, n: usize) -> Vec<u32> {
    let mut sigma = vec![0u32; n];
    for d in 1..n {
        let dk = pr.pow(pr.to_mont(d as u32), (k - 1) as u64);
        let mut m = d;
        while m < n {
            sigma[m] = pr.add(sigma[m], dk);
            m += d;
        }
    }
    let cm = pr.from_i64(c);
    sigma[0] = pr.to_mont(1);
    for s in sigma.iter_mut().skip(1) {
        *s = pr.mul(*s, cm);
    }
    sigma
}

/// Primes needed to lift `|a(m)| <= d(m) m^{(w-1)/2} <= 2 m^{w/2}` for `m <= n`.
fn primes_for(weight: u32, n: usize) -> Result<&'static [Prime]> {
    if n > MAX_TABLE_LEN {
        return Err(Error::RangeExceeded { requested: n as u64, available: MAX_TABLE_LEN as u64 });
    }
    let bits = 1.0 + weight as f64 / 2.0 * (n.max(2) as f64).log2() + 4.0;
    let size_log = (2 * n).next_power_of_two().trailing_zeros();
    let all = ntt_primes();
    let mut cap = -2.0;
    for (i, p) in all.iter().enumerate() {
        assert!(p.two_adicity >= size_log);
        cap += (p.p as f64).log2();
        if cap > bits {
            return Ok(&all[..=i]);
        }
    }
    Err(Error::RangeExceeded { requested: n as u64, available: MAX_TABLE_LEN as u64 })
}

/// Residues of `a(1..=n)` for each weight, indexed `[weight][prime][n - 1]`,
/// together with the primes each weight uses.
#[allow(clippy::type_complexity)]
fn all_residues(
    weights: &[u32],
    n: usize,
) -> Result<Vec<(&'static [Prime], Vec<Vec<u32>>)>> {
    for &w in weights {
        eisenstein_factor(w)?;
    }
    if n == 0 {
        return Err(Error::InvalidArgument("table length must be positive".into()));
    }
    let prime_sets: Vec<&'static [Prime]> =
        weights.iter().map(|&w| primes_for(w, n)).collect::<Result<_>>()?;
    let count = prime_sets.iter().map(|s| s.len()).max().unwrap_or(0);
    let all = &ntt_primes()[..count];
    let per_prime: Vec<Vec<Option<Vec<u32>>>> = all
        .par_iter()
        .enumerate()
        .map(|(i, pr)| {
            let used: Vec<(u32, bool)> =
                weights.iter().zip(&prime_sets).map(|(&w, s)| (w, i < s.len())).collect();
            residues_mod(pr, &used, n)
        })
        .collect();
    let mut by_weight: Vec<Vec<Vec<u32>>> = (0..weights.len()).map(|_| Vec::new()).collect();
    for prime_rows in per_prime {
        for (slot, row) in by_weight.iter_mut().zip(prime_rows) {
            if let Some(row) = row {
                slot.push(row);
            }
        }
    }
    Ok(prime_sets.into_iter().zip(by_weight).collect())
}

/// Exact integer coefficients `a(1..=n)` of the normalized eigenform.
pub fn exact_coefficients(weight: u32, n: usize) -> Result<Vec<BigInt>> {
    let (primes, res) = all_residues(&[weight], n)?.pop().expect("one weight");
    let crt = Crt::new(primes);
    Ok((0..n)
        .map(|i| {
            let r: Vec<u32> = res.iter().map(|v| v[i]).collect();
            crt.to_bigint(&r)
        })
        .collect())
}

/// Builds the eigenvalue table `λ(1..=n)` for `weight`.
pub fn build_eigenform(weight: u32, n: usize) -> Result<FourierTable> {
    Ok(build_eigenforms(&[weight], n)?.pop().expect("one weight"))
}

/// Builds tables of a common length for several weights, sharing the
/// expansion of `Δ`.
pub fn build_eigenforms(weights: &[u32], n: usize) -> Result<Vec<FourierTable>> {
    let res = all_residues(weights, n)?;
    Ok(weights
        .iter()
        .zip(res)
        .map(|(&weight, (primes, res))| {
            let crt = Crt::new(primes);
            let half = (weight - 1) / 2; // (w - 1)/2 = half + 1/2
            let values: Vec<f64> = (0..n)
                .into_par_iter()
                .with_min_len(4096)
                .map(|i| {
                    let r: Vec<u32> = res.iter().map(|v| v[i]).collect();
                    let a = crt.to_f64(&r);
                    let m = (i + 1) as f64;
                    a / m.powi(half as i32) / m.sqrt()
                })
                .collect();
            FourierTable { weight, values }
        })
        .collect())
}

/// Outcome of [`verify_hecke`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HeckeReport {
    /// `max |λ(mn) - λ(m)λ(n)| / max(1, |λ(mn)|)` over coprime `m, n >= 2`.
    pub multiplicativity: f64,
    /// `max |λ(p)λ(p^k) - λ(p^{k+1}) - λ(p^{k-1})| / max(1, |λ(p^{k+1})|)`.
    pub hecke_relation: f64,
    /// `max(|λ(n)| - τ(n), 0)`.
    pub deligne_excess: f64,
    /// Number of relations checked.
    pub checks: u64,
}

impl HeckeReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.multiplicativity <= tol && self.hecke_relation <= tol && self.deligne_excess <= tol
    }
}

/// Exhaustively checks multiplicativity, the prime-power Hecke relation and
/// Deligne's bound over every index the table holds.
pub fn verify_hecke(table: &FourierTable) -> HeckeReport {
    let n = table.len();
    let lam = |k: usize| table.values[k - 1];
    let mut report = HeckeReport::default();
    if n < 2 {
        return report;
    }

    // coprime pairs 2 <= m < k, m k <= n; parallel over m, max is order-free
    let m_top = (2..=n).take_while(|&m| m * (m + 1) <= n).last().unwrap_or(1);
    let (mult, count) = (2..=m_top)
        .into_par_iter()
        .map(|m| {
            let lm = lam(m);
            let mut worst = 0.0f64;
            let mut cnt = 0u64;
            for k in (m + 1)..=(n / m) {
                if gcd(m as i64, k as i64) != 1 {
                    continue;
                }
                let prod = lam(m * k);
                let d = (prod - lm * lam(k)).abs() / prod.abs().max(1.0);
                worst = worst.max(d);
                cnt += 1;
            }
            (worst, cnt)
        })
        .reduce(|| (0.0, 0), |a, b| (a.0.max(b.0), a.1 + b.1));
    report.multiplicativity = mult;
    report.checks += count;

    for p in primes_up_to(n / 2) {
        let p = p as usize;
        let mut pk = p; // p^k
        let mut pkm1 = 1usize; // p^{k-1}
        while pk.checked_mul(p).is_some_and(|v| v <= n) {
            let next = pk * p;
            let lhs = lam(p) * lam(pk);
            let rhs = lam(next) + lam(pkm1);
            let d = (lhs - rhs).abs() / lam(next).abs().max(1.0);
            report.hecke_relation = report.hecke_relation.max(d);
            report.checks += 1;
            pkm1 = pk;
            pk = next;
        }
    }

    let mut tau = vec![0u32; n + 1];
    for d in 1..=n {
        let mut m = d;
        while m <= n {
            tau[m] += 1;
            m += d;
        }
    }
    for k in 1..=n {
        report.deligne_excess = report.deligne_excess.max(lam(k).abs() - tau[k] as f64);
        report.checks += 1;
    }
    report.deligne_excess = report.deligne_excess.max(0.0);
    report
}

/// `Σ_{n <= x} |λ(n)|^2`.
pub fn rankin_selberg_partial(table: &FourierTable, x: f64) -> Result<f64> {
    if x < 1.0 {
        return Ok(0.0);
    }
    let top = x.floor() as usize;
    table.require(top)?;
    let mut acc = Neumaier::default();
    for &v in &table.values[..top] {
        acc.add(v * v);
    }
    Ok(acc.value())
}

/// `λ_{1⊞(f×g)}(n) = Σ_{l m^2 r = n} λ_f(r) λ_g(r)` for `1 <= n <= len`
/// (`out[0]` is the value at `n = 1`).
pub fn convolve_gl5(f: &FourierTable, g: &FourierTable, len: usize) -> Result<Vec<f64>> {
    f.require(len)?;
    g.require(len)?;
    if f.weight == g.weight {
        log::warn!(
            "convolve_gl5 called with two forms of weight {}; the asymptotic assumes f ⊥ g",
            f.weight
        );
    }
    // stage one: twisted by squares, d(n) = Σ_{m^2 r = n} λ_fλ_g(r)
    let mut d = vec![0.0f64; len + 1];
    let mut m = 1usize;
    while m * m <= len {
        let sq = m * m;
        for r in 1..=(len / sq) {
            d[sq * r] += f.values[r - 1] * g.values[r - 1];
        }
        m += 1;
    }
    // stage two: convolution with 1, Σ_{l k = n} d(k)
    let mut out = vec![0.0f64; len + 1];
    for k in 1..=len {
        let dk = d[k];
        if dk == 0.0 {
            continue;
        }
        let mut nn = k;
        while nn <= len {
            out[nn] += dk;
            nn += k;
        }
    }
    out.remove(0);
    Ok(out)
}

const CACHE_MAGIC: &str = "# oscsum-coeffs v1";

fn cache_header(weight: u32, n: usize) -> String {
    format!("{CACHE_MAGIC} weight={weight} N={n} normalization=arithmetic")
}

/// Writes the coefficient cache format: one header line, then `n,λ(n)` rows
/// with 17 significant digits.
pub fn write_table<W: Write>(table: &FourierTable, mut out: W) -> Result<()> {
    writeln!(out, "{}", cache_header(table.weight, table.len()))?;
    for (i, v) in table.values.iter().enumerate() {
        writeln!(out, "{},{}", i + 1, crate::csv::fmt_f64(*v))?;
    }
    out.flush()?;
    Ok(())
}

/// Parses the cache header into `(weight, N)`.
fn parse_header(line: &str) -> Result<(u32, usize)> {
    let bad = || Error::Parse(format!("bad coefficient cache header: {line:?}"));
    let rest = line.strip_prefix(CACHE_MAGIC).ok_or_else(bad)?;
    let mut weight = None;
    let mut n = None;
    let mut norm_ok = false;
    for tok in rest.split_whitespace() {
        match tok.split_once('=') {
            Some(("weight", v)) => weight = v.parse().ok(),
            Some(("N", v)) => n = v.parse().ok(),
            Some(("normalization", "arithmetic")) => norm_ok = true,
            _ => return Err(bad()),
        }
    }
    match (weight, n, norm_ok) {
        (Some(w), Some(n), true) => Ok((w, n)),
        _ => Err(bad()),
    }
}

pub fn read_table<R: BufRead>(input: R) -> Result<FourierTable> {
    let mut lines = input.lines();
    // a leading `# config:` line, as written by the command-line tool, is skipped
    let mut header = lines.next().ok_or_else(|| Error::Parse("empty cache file".into()))??;
    if header.starts_with("# config:") {
        header = lines.next().ok_or_else(|| Error::Parse("empty cache file".into()))??;
    }
    let (weight, n) = parse_header(header.trim_end())?;
    let mut values = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let line = line?;
        let (idx, val) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad cache row {line:?}")))?;
        let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad index {idx:?}")))?;
        if idx != i + 1 {
            return Err(Error::Parse(format!("cache row {} has index {idx}", i + 1)));
        }
        values.push(val.parse().map_err(|_| Error::Parse(format!("bad value {val:?}")))?);
    }
    if values.len() != n {
        return Err(Error::Parse(format!("cache declares N={n} but holds {}", values.len())));
    }
    FourierTable::from_values(weight, values)
}

pub fn cache_path(dir: &Path, weight: u32, n: usize) -> PathBuf {
    dir.join(format!("coeffs-w{weight}-N{n}.csv"))
}

/// Loads `(weight, n)` from `dir`, regenerating and rewriting the file when it
/// is missing or its header does not match.
pub fn load_or_build(dir: &Path, weight: u32, n: usize) -> Result<FourierTable> {
    let path = cache_path(dir, weight, n);
    if let Ok(file) = std::fs::File::open(&path) {
        match read_table(std::io::BufReader::new(file)) {
            Ok(t) if t.weight == weight && t.len() == n => return Ok(t),
            Ok(_) | Err(_) => log::info!("regenerating stale coefficient cache {}", path.display()),
        }
    }
    let table = build_eigenform(weight, n)?;
    std::fs::create_dir_all(dir)?;
    let tmp = path.with_extension("csv.tmp");
    write_table(&table, std::io::BufWriter::new(std::fs::File::create(&tmp)?))?;
    std::fs::rename(&tmp, &path)?;
    Ok(table)
}

/// `q ∏_{n<=len}(1 - q^n)^24` by literal polynomial multiplication, indexed
/// by the power of `q`. Independent of the modular generator; meant for
/// small `len`.
pub fn delta_by_products(len: usize) -> Vec<i128> {
    let mut s = vec![0i128; len + 1];
    s[0] = 1;
    for n in 1..=len {
        for _ in 0..24 {
            for i in (n..=len).rev() {
                s[i] -= s[i - n];
            }
        }
    }
    // shift by q
    let mut out = vec![0i128; len + 1];
    out[1..=len].copy_from_slice(&s[..len]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eisenstein_exact(k: u32, c: i128, len: usize) -> Vec<i128> {
        let mut e = vec![0i128; len + 1];
        e[0] = 1;
        for (m, em) in e.iter_mut().enumerate().skip(1) {
            let s: i128 = (1..=m).filter(|d| m % d == 0).map(|d| (d as i128).pow(k - 1)).sum();
            *em = c * s;
        }
        e
    }

    fn mul_exact(a: &[i128], b: &[i128]) -> Vec<i128> {
        let len = a.len();
        let mut out = vec![0i128; len];
        for i in 0..len {
            for j in 0..len - i {
                out[i + j] += a[i] * b[j];
            }
        }
        out
    }

    #[test]
    fn delta_small_coefficients() {
        let oracle = delta_by_products(10);
        assert_eq!(oracle[2], -24);
        assert_eq!(oracle[3], 252);
        assert_eq!(oracle[5], 4830);
        let exact = exact_coefficients(12, 10).unwrap();
        for n in 1..=10 {
            assert_eq!(exact[n - 1], BigInt::from(oracle[n]), "n={n}");
        }
        let t = build_eigenform(12, 10).unwrap();
        assert_eq!(t.lambda(1), 1.0);
        assert!((t.lambda(2) - (-24.0 / 2f64.powf(5.5))).abs() < 1e-15);
    }

    #[test]
    fn weight_16_from_delta_times_e4() {
        let len = 40;
        let delta = delta_by_products(len);
        let e4 = eisenstein_exact(4, 240, len);
        let prod = mul_exact(&delta, &e4);
        assert_eq!(prod[2], 216);
        let exact = exact_coefficients(16, len).unwrap();
        for n in 1..=len {
            assert_eq!(exact[n - 1], BigInt::from(prod[n]), "n={n}");
        }
    }

    #[test]
    fn products_of_e4_e6_agree_with_single_eisenstein_factor() {
        // the generator uses E8, E10, E14 in place of E4^2, E4 E6, E4^2 E6
        let len = 60;
        let delta = delta_by_products(len);
        let e4 = eisenstein_exact(4, 240, len + 1);
        let e6 = eisenstein_exact(6, -504, len + 1);
        let e4 = &e4[..=len];
        let e6 = &e6[..=len];
        let cases: [(u32, Vec<i128>); 4] = [
            (18, mul_exact(&delta, e6)),
            (20, mul_exact(&mul_exact(&delta, e4), e4)),
            (22, mul_exact(&mul_exact(&delta, e4), e6)),
            (26, mul_exact(&mul_exact(&mul_exact(&delta, e4), e4), e6)),
        ];
        for (w, series) in cases {
            let exact = exact_coefficients(w, len).unwrap();
            for n in 1..=len {
                assert_eq!(exact[n - 1], BigInt::from(series[n]), "weight {w} n={n}");
            }
        }
    }

    #[test]
    fn unsupported_weight_is_rejected() {
        assert_eq!(build_eigenform(24, 10), Err(Error::UnsupportedWeight(24)));
        assert_eq!(build_eigenform(14, 10), Err(Error::UnsupportedWeight(14)));
    }

    #[test]
    fn hecke_checks_pass_and_detect_faults() {
        let t = build_eigenform(12, 10_000).unwrap();
        let r = verify_hecke(&t);
        assert!(r.passes(1e-10), "{r:?}");
        assert!(r.checks > 10_000);

        let mut bad = t.clone();
        bad.values_mut()[5] += 1e-3; // λ(6)
        let r = verify_hecke(&bad);
        // the fault enters as 1e-3 · |λ(k)| for partners k of 6
        assert!(r.multiplicativity > 5e-4 && r.multiplicativity < 5e-3, "{r:?}");

        let tiny = build_eigenform(12, 1).unwrap();
        let r = verify_hecke(&tiny);
        assert_eq!(r, HeckeReport::default());
    }

    #[test]
    fn rankin_selberg_small_values() {
        let t = build_eigenform(12, 100).unwrap();
        assert_eq!(rankin_selberg_partial(&t, 1.0).unwrap(), 1.0);
        let expect = 1.0 + (24.0 / 2f64.powf(5.5)).powi(2);
        assert!((rankin_selberg_partial(&t, 2.5).unwrap() - expect).abs() < 1e-14);
        assert!(matches!(
            rankin_selberg_partial(&t, 101.0),
            Err(Error::RangeExceeded { .. })
        ));
    }

    #[test]
    fn gl5_small_indices() {
        let f = build_eigenform(12, 200).unwrap();
        let g = build_eigenform(16, 200).unwrap();
        let c = convolve_gl5(&f, &g, 200).unwrap();
        let fg = |n: usize| f.lambda(n) * g.lambda(n);
        assert!((c[0] - 1.0).abs() < 1e-15);
        // l m^2 r = 4: (4,1,1), (1,2,1), (2,1,2), (1,1,4)
        assert!((c[3] - (fg(4) + fg(2) + 2.0)).abs() < 1e-13);
        for p in [2usize, 3, 5, 7, 97, 199] {
            assert!((c[p - 1] - (fg(p) + 1.0)).abs() < 1e-13, "p={p}");
        }
    }

    #[test]
    fn gl5_matches_formal_dirichlet_product() {
        // coefficients of ζ(s) ζ(2s) Σ λ_fλ_g(n) n^{-s}, built as two formal products
        let n = 10_000;
        let f = build_eigenform(12, n).unwrap();
        let g = build_eigenform(18, n).unwrap();
        let fast = convolve_gl5(&f, &g, n).unwrap();
        let zeta2: Vec<f64> = (1..=n)
            .map(|k| {
                let r = (k as f64).sqrt().round() as usize;
                if r * r == k { 1.0 } else { 0.0 }
            })
            .collect();
        let fg: Vec<f64> = (1..=n).map(|k| f.lambda(k) * g.lambda(k)).collect();
        let dirichlet = |a: &[f64], b: &[f64]| {
            let mut out = vec![0.0; n];
            for i in 1..=n {
                for j in 1..=(n / i) {
                    out[i * j - 1] += a[i - 1] * b[j - 1];
                }
            }
            out
        };
        let ones = vec![1.0; n];
        let oracle = dirichlet(&ones, &dirichlet(&zeta2, &fg));
        for k in 0..n {
            assert!((fast[k] - oracle[k]).abs() < 1e-9 * (1.0 + oracle[k].abs()), "n={}", k + 1);
        }
    }

    #[test]
    fn cache_roundtrip_is_bit_exact() {
        let t = build_eigenform(16, 500).unwrap();
        let mut buf = Vec::new();
        write_table(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# oscsum-coeffs v1 weight=16 N=500 normalization=arithmetic\n"));
        let back = read_table(std::io::Cursor::new(buf)).unwrap();
        for (a, b) in t.values().iter().zip(back.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn cache_regenerates_on_header_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), 12, 50);
        std::fs::write(&path, "# oscsum-coeffs v0 weight=12 N=50\n1,1\n").unwrap();
        let t = load_or_build(dir.path(), 12, 50).unwrap();
        assert_eq!(t.len(), 50);
        let again = load_or_build(dir.path(), 12, 50).unwrap();
        assert_eq!(t, again);
    }
}
