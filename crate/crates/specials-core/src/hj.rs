//! Hirzebruch–Jung (descending) continued fractions and their i-series.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A reduced non-negative rational `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Ratio {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Ratio { num: num / g, den: den / g }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HjData {
    #[serde(skip)]
    pub r: u64,
    #[serde(skip)]
    pub a: u64,
    pub alphas: Vec<u64>,
    pub iseries: Vec<u64>,
}

impl HjData {
    /// N, the length of the expansion.
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// i_t for 0 ≤ t ≤ N+1.
    pub fn i(&self, t: usize) -> u64 {
        self.iseries[t]
    }
}

/// Expands `r/a = α₁ − 1/(α₂ − …)` with every `α ≥ 2`.
pub fn hj_expand(r: u64, a: u64) -> Result<HjData> {
    if a == 0 || a >= r {
        return Err(Error::Domain(format!("need 0 < a < r, got {r}/{a}")));
    }
    if gcd(r, a) != 1 {
        return Err(Error::Domain(format!("{r} and {a} are not coprime")));
    }
    let mut alphas = Vec::new();
    let (mut x, mut y) = (r, a);
    while y > 0 {
        let alpha = x.div_ceil(y);
        alphas.push(alpha);
        (x, y) = (y, alpha * y - x);
    }
    let mut iseries = vec![r, a];
    for t in 2..=alphas.len() + 1 {
        iseries.push(alphas[t - 2] * iseries[t - 1] - iseries[t - 2]);
    }
    Ok(HjData { r, a, alphas, iseries })
}

/// Evaluates a descending continued fraction back to a reduced rational.
pub fn hj_evaluate(alphas: &[u64]) -> Result<Ratio> {
    if alphas.is_empty() || alphas.iter().any(|&x| x < 2) {
        return Err(Error::Domain("continued fraction needs nonempty entries ≥ 2".into()));
    }
    // Fold from the tail: value = α − 1/value_tail, kept as (p, q) with p > q ≥ 1.
    let (mut p, mut q) = (*alphas.last().unwrap(), 1u64);
    for &alpha in alphas.iter().rev().skip(1) {
        (p, q) = (alpha * p - q, p);
    }
    Ok(Ratio::new(p, q))
}

/// Parses `r/a`.
pub fn parse_fraction(s: &str) -> Result<(u64, u64)> {
    let (r, a) = s
        .split_once('/')
        .ok_or_else(|| Error::Syntax(format!("expected r/a, got `{s}`")))?;
    let parse = |t: &str| {
        t.parse::<u64>()
            .map_err(|_| Error::Syntax(format!("not a positive integer: `{t}`")))
    };
    Ok((parse(r)?, parse(a)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_of_23_18() {
        let hj = hj_expand(23, 18).unwrap();
        assert_eq!(hj.alphas, vec![2, 2, 2, 3, 3]);
        assert_eq!(hj.iseries, vec![23, 18, 13, 8, 3, 1, 0]);
        assert_eq!(hj.i(4), 3);
    }

    #[test]
    fn expansion_of_17_10() {
        let hj = hj_expand(17, 10).unwrap();
        assert_eq!(hj.alphas, vec![2, 4, 2, 2]);
        assert_eq!(hj.iseries, vec![17, 10, 3, 2, 1, 0]);
    }

    #[test]
    fn gorenstein_expansion_is_all_twos() {
        for r in 2..30 {
            let hj = hj_expand(r, r - 1).unwrap();
            assert_eq!(hj.alphas, vec![2; (r - 1) as usize]);
            assert_eq!(hj.iseries, (0..=r).rev().collect::<Vec<_>>());
        }
    }

    #[test]
    fn evaluate_small_cases() {
        assert_eq!(hj_evaluate(&[3, 2]).unwrap(), Ratio::new(5, 2));
        assert_eq!(hj_evaluate(&[7]).unwrap(), Ratio::new(7, 1));
        assert_eq!(hj_evaluate(&[2, 2, 2, 3, 3]).unwrap(), Ratio::new(23, 18));
        assert!(hj_evaluate(&[]).is_err());
        assert!(hj_evaluate(&[2, 1]).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(hj_expand(4, 2).is_err());
        assert!(hj_expand(5, 5).is_err());
        assert!(hj_expand(5, 0).is_err());
    }

    #[test]
    fn fraction_syntax() {
        assert_eq!(parse_fraction("23/18").unwrap(), (23, 18));
        assert!(parse_fraction("23").is_err());
        assert!(parse_fraction("a/3").is_err());
    }
}
