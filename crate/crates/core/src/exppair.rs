//! Exact exponent-pair calculus: the A and B processes over the trivial pair
//! and Bourgain's pair, optimization of affine-ratio objectives, and the
//! balancing of the two error exponents in the degree-five partial sums.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{parse_rational, rat, rational_to_string, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Seed {
    /// `(0, 1)`.
    Trivial,
    /// `(13/84, 55/84)`, with the `ε` dropped.
    Bourgain,
}

impl Seed {
    pub fn pair(self) -> ExponentPair {
        let (p, q) = match self {
            Seed::Trivial => (rat(0, 1), rat(1, 1)),
            Seed::Bourgain => (rat(13, 84), rat(55, 84)),
        };
        ExponentPair { p, q, seed: self, word: Vec::new() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Process {
    A,
    B,
}

/// `(p, q)` with `0 ≤ p ≤ 1/2 ≤ q ≤ 1`, and the word of processes (applied
/// left to right) that produced it from its seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentPair {
    pub p: Rational,
    pub q: Rational,
    pub seed: Seed,
    pub word: Vec<Process>,
}

impl ExponentPair {
    /// A pair with empty derivation, checked against the admissible box.
    pub fn new(p: Rational, q: Rational, seed: Seed) -> Result<Self> {
        let pair = ExponentPair { p, q, seed, word: Vec::new() };
        if !pair.is_admissible() {
            return Err(Error::InvalidArgument(format!("({}, {}) is outside 0 <= p <= 1/2 <= q <= 1", pair.p, pair.q)));
        }
        Ok(pair)
    }

    pub fn is_admissible(&self) -> bool {
        let half = rat(1, 2);
        self.p >= Rational::zero() && self.p <= half && half <= self.q && self.q <= Rational::one()
    }

    /// Derivation such as `A∘B(trivial)`, innermost process rightmost.
    pub fn derivation(&self) -> String {
        let seed = match self.seed {
            Seed::Trivial => "trivial",
            Seed::Bourgain => "bourgain",
        };
        if self.word.is_empty() {
            return seed.to_string();
        }
        let word: Vec<&str> = self
            .word
            .iter()
            .rev()
            .map(|p| match p {
                Process::A => "A",
                Process::B => "B",
            })
            .collect();
        format!("{}({seed})", word.join("∘"))
    }

    fn key(&self) -> (Rational, Rational) {
        (self.p.clone(), self.q.clone())
    }

    fn with(&self, p: Rational, q: Rational, step: Process) -> Self {
        let mut word = self.word.clone();
        word.push(step);
        ExponentPair { p, q, seed: self.seed, word }
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rational_to_string(&self.p), rational_to_string(&self.q))
    }
}

/// `A(k, h) = (k/(2k+2), (k+h+1)/(2k+2))`.
pub fn a_process(pair: &ExponentPair) -> ExponentPair {
    let one = Rational::one();
    let two = rat(2, 1);
    let den = &two * &pair.p + &two;
    let p = &pair.p / &den;
    let q = (&pair.p + &pair.q + one) / den;
    pair.with(p, q, Process::A)
}

/// `B(k, l) = (l − 1/2, k + 1/2)`; an involution.
pub fn b_process(pair: &ExponentPair) -> ExponentPair {
    let half = rat(1, 2);
    pair.with(&pair.q - &half, &pair.p + &half, Process::B)
}

/// All pairs reachable from `seeds` by words in `{A, B}` of length at most
/// `depth`, deduplicated by value and sorted by `(p, q)`. Each value keeps
/// its shortest derivation (A tried before B, seeds in the given order).
pub fn generate(depth: usize, seeds: &[Seed]) -> Result<Vec<ExponentPair>> {
    if depth > 12 {
        return Err(Error::InvalidArgument(format!("depth {depth} exceeds 12")));
    }
    let mut seen: BTreeMap<(Rational, Rational), ExponentPair> = BTreeMap::new();
    let mut frontier: Vec<ExponentPair> = Vec::new();
    for s in seeds {
        let pair = s.pair();
        if !seen.contains_key(&pair.key()) {
            seen.insert(pair.key(), pair.clone());
            frontier.push(pair);
        }
    }
    for _ in 0..depth {
        let mut next = Vec::new();
        for pair in &frontier {
            for image in [a_process(pair), b_process(pair)] {
                if !seen.contains_key(&image.key()) {
                    seen.insert(image.key(), image.clone());
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_values().collect())
}

/// `c + c_p·p + c_q·q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub c: Rational,
    pub cp: Rational,
    pub cq: Rational,
}

impl Affine {
    pub fn eval(&self, p: &Rational, q: &Rational) -> Rational {
        &self.c + &self.cp * p + &self.cq * q
    }

    fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(&s);
        if s.is_empty() {
            return Err(Error::Parse("empty linear form".into()));
        }
        let mut out = Affine { c: Rational::zero(), cp: Rational::zero(), cq: Rational::zero() };
        let mut term = String::new();
        let flush = |term: &str, out: &mut Affine| -> Result<()> {
            if term.is_empty() {
                return Ok(());
            }
            let (coef, slot) = match term.chars().last() {
                Some('p') => (&term[..term.len() - 1], 1),
                Some('q') => (&term[..term.len() - 1], 2),
                _ => (term, 0),
            };
            let coef = match coef {
                "" | "+" => Rational::one(),
                "-" => -Rational::one(),
                c => parse_rational(c.trim_start_matches('+').trim_end_matches('*'))?,
            };
            match slot {
                1 => out.cp += coef,
                2 => out.cq += coef,
                _ => out.c += coef,
            }
            Ok(())
        };
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !term.is_empty() {
                flush(&term, &mut out)?;
                term.clear();
            }
            term.push(ch);
        }
        flush(&term, &mut out)?;
        Ok(out)
    }
}

/// `(num)/(den)` with affine numerator and denominator in `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective {
    pub num: Affine,
    pub den: Affine,
}

impl Objective {
    /// Parses `"38+33p-28q/58+48p-43q"`; parentheses around either side
    /// are optional and a missing `/` means denominator 1.
    pub fn parse(s: &str) -> Result<Self> {
        let (num, den) = match split_top_level(s) {
            Some((n, d)) => (Affine::parse(n)?, Affine::parse(d)?),
            None => (Affine::parse(s)?, Affine { c: Rational::one(), cp: Rational::zero(), cq: Rational::zero() }),
        };
        Ok(Objective { num, den })
    }

    /// The objective minimized when choosing a pair for the degree-five sums.
    pub fn degree_five() -> Self {
        Objective::parse("38+33p-28q/58+48p-43q").expect("valid objective")
    }

    pub fn eval(&self, p: &Rational, q: &Rational) -> Result<Rational> {
        let den = self.den.eval(p, q);
        if den.is_zero() {
            return Err(Error::DenominatorVanishes { p: rational_to_string(p), q: rational_to_string(q) });
        }
        Ok(self.num.eval(p, q) / den)
    }
}

/// The first `/` outside parentheses. Fractional coefficients therefore
/// need parentheses around their side.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, b) in s.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub pair: ExponentPair,
    pub value: Rational,
}

/// Exact minimum of the objective over `pairs`; ties go to the
/// lexicographically smallest `(p, q)`. Every denominator is checked first.
pub fn optimize(objective: &Objective, pairs: &[ExponentPair]) -> Result<Optimum> {
    let mut values = Vec::with_capacity(pairs.len());
    for pair in pairs {
        values.push(objective.eval(&pair.p, &pair.q)?);
    }
    let mut best: Option<(usize, &Rational)> = None;
    for (i, v) in values.iter().enumerate() {
        best = match best {
            None => Some((i, v)),
            Some((j, w)) => {
                if v < w || (v == w && pairs[i].key() < pairs[j].key()) {
                    Some((i, v))
                } else {
                    Some((j, w))
                }
            }
        };
    }
    let (i, v) = best.ok_or_else(|| Error::InvalidArgument("no pairs to optimize over".into()))?;
    Ok(Optimum { pair: pairs[i].clone(), value: v.clone() })
}

/// Root of `a·δ + b = c − δ`, i.e. `(c − b)/(a + 1)`.
pub fn solve_balance(a: &Rational, b: &Rational, c: &Rational) -> Rational {
    (c - b) / (a + Rational::one())
}

/// `δ` balancing `X^{(109/69)δ + 91/138}` against `X^{2/3 − δ}`.
pub fn balance_delta() -> Rational {
    solve_balance(&rat(109, 69), &rat(91, 138), &rat(2, 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_and_parenthesized_forms() {
        let a = Objective::parse("38+33p-28q/58+48p-43q").unwrap();
        let b = Objective::parse("(38 + 33p - 28q)/(58 + 48p - 43q)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.num.cq, rat(-28, 1));
        assert_eq!(a.den.c, rat(58, 1));
        let c = Objective::parse("(1/2p - q)/(3)").unwrap();
        assert_eq!(c.num.cp, rat(1, 2));
        assert_eq!(c.num.cq, rat(-1, 1));
        assert_eq!(c.den.c, rat(3, 1));
        assert!(Objective::parse("38+x").is_err());
    }

    #[test]
    fn derivation_reads_outermost_first() {
        let p = a_process(&b_process(&Seed::Trivial.pair()));
        assert_eq!(p.derivation(), "A∘B(trivial)");
        assert_eq!(p.to_string(), "(1/6, 2/3)");
    }
}
