//! Discrete parameters of the small finite subgroups of GL(2,C).

use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hj::{gcd, hj_expand};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    D,
    T,
    O,
    I,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::A, Family::D, Family::T, Family::O, Family::I];

    /// k in m = k(b−2) + δ.
    pub fn modulus(self) -> Option<u64> {
        match self {
            Family::T => Some(6),
            Family::O => Some(12),
            Family::I => Some(30),
            _ => None,
        }
    }

    /// Admissible residues δ of m.
    pub fn residues(self) -> &'static [u64] {
        match self {
            Family::T => &[1, 3, 5],
            Family::O => &[1, 5, 7, 11],
            Family::I => &[1, 7, 11, 13, 17, 19, 23, 29],
            _ => &[],
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "A" => Ok(Family::A),
            "D" => Ok(Family::D),
            "T" => Ok(Family::T),
            "O" => Ok(Family::O),
            "I" => Ok(Family::I),
            _ => Err(Error::Syntax(format!("unknown family `{s}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupParams {
    A { r: u64, a: u64 },
    D { n: u64, q: u64 },
    T { m: u64 },
    O { m: u64 },
    I { m: u64 },
}

impl GroupParams {
    pub fn family(&self) -> Family {
        match self {
            GroupParams::A { .. } => Family::A,
            GroupParams::D { .. } => Family::D,
            GroupParams::T { .. } => Family::T,
            GroupParams::O { .. } => Family::O,
            GroupParams::I { .. } => Family::I,
        }
    }

    /// The parameter m for T/O/I.
    pub fn m(&self) -> Option<u64> {
        match *self {
            GroupParams::T { m } | GroupParams::O { m } | GroupParams::I { m } => Some(m),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Validation(format!("{self}: {msg}")));
        match *self {
            GroupParams::A { r, a } => {
                if !(1 < a && a < r) {
                    return fail("need 1 < a < r".into());
                }
                if gcd(r, a) != 1 {
                    return fail(format!("gcd(r, a) = {} ≠ 1", gcd(r, a)));
                }
            }
            GroupParams::D { n, q } => {
                if !(1 < q && q < n) {
                    return fail("need 1 < q < n".into());
                }
                if gcd(n, q) != 1 {
                    return fail(format!("gcd(n, q) = {} ≠ 1", gcd(n, q)));
                }
            }
            GroupParams::T { m } | GroupParams::O { m } | GroupParams::I { m } => {
                let fam = self.family();
                let k = fam.modulus().unwrap();
                if m == 0 || !fam.residues().contains(&(m % k)) {
                    return fail(format!("m mod {k} = {} is not one of {:?}", m % k, fam.residues()));
                }
            }
        }
        Ok(())
    }

    /// |G|.
    pub fn order(&self) -> u64 {
        match *self {
            GroupParams::A { r, .. } => r,
            GroupParams::D { n, q } => 4 * q * (n - q),
            GroupParams::T { m } => 24 * m,
            GroupParams::O { m } => 48 * m,
            GroupParams::I { m } => 120 * m,
        }
    }

    /// Number of indecomposable CM modules (vertices of the AR quiver).
    pub fn vertex_count(&self) -> u64 {
        match *self {
            GroupParams::A { r, .. } => r,
            GroupParams::D { n, q } => (n - q) * (q + 3),
            GroupParams::T { m } => 7 * m,
            GroupParams::O { m } => 8 * m,
            GroupParams::I { m } => 9 * m,
        }
    }

    /// Contained in SL(2,C), i.e. the quotient is a rational double point.
    pub fn is_gorenstein(&self) -> bool {
        match *self {
            GroupParams::A { r, a } => a == r - 1,
            GroupParams::D { n, q } => q == n - 1,
            GroupParams::T { m } | GroupParams::O { m } | GroupParams::I { m } => m == 1,
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupParams::A { r, a } => write!(f, "A:{r},{a}"),
            GroupParams::D { n, q } => write!(f, "D:{n},{q}"),
            GroupParams::T { m } => write!(f, "T:{m}"),
            GroupParams::O { m } => write!(f, "O:{m}"),
            GroupParams::I { m } => write!(f, "I:{m}"),
        }
    }
}

impl Serialize for GroupParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for GroupParams {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupParams> {
        parse_group(s)
    }
}

fn parse_uint(s: &str, whole: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Syntax(format!("bad integer `{s}` in `{whole}`")));
    }
    s.parse()
        .map_err(|_| Error::Syntax(format!("integer out of range in `{whole}`")))
}

/// Parses and validates `A:r,a`, `D:n,q`, `T:m`, `O:m` or `I:m`.
pub fn parse_group(spec: &str) -> Result<GroupParams> {
    let (fam, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Syntax(format!("expected <family>:<params>, got `{spec}`")))?;
    let fam: Family = fam.parse()?;
    let g = match fam {
        Family::A | Family::D => {
            let (x, y) = rest
                .split_once(',')
                .ok_or_else(|| Error::Syntax(format!("expected two parameters in `{spec}`")))?;
            let (x, y) = (parse_uint(x, spec)?, parse_uint(y, spec)?);
            if fam == Family::A {
                GroupParams::A { r: x, a: y }
            } else {
                GroupParams::D { n: x, q: y }
            }
        }
        _ => {
            let m = parse_uint(rest, spec)?;
            match fam {
                Family::T => GroupParams::T { m },
                Family::O => GroupParams::O { m },
                _ => GroupParams::I { m },
            }
        }
    };
    g.validate()?;
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FamilyData {
    Cyclic,
    Dihedral { nu: usize, nq_even: bool },
    Star { b: u64, delta: u64 },
}

/// Subfamily data: (b, δ) for T/O/I, (ν, parity of n−q) for D.
pub fn family_data(g: &GroupParams) -> FamilyData {
    match *g {
        GroupParams::A { .. } => FamilyData::Cyclic,
        GroupParams::D { n, q } => FamilyData::Dihedral {
            nu: nu_from_hj(&hj_expand(n, q).expect("validated").alphas),
            nq_even: (n - q) % 2 == 0,
        },
        GroupParams::T { m } | GroupParams::O { m } | GroupParams::I { m } => {
            let k = g.family().modulus().unwrap();
            let delta = m % k;
            FamilyData::Star { b: (m - delta) / k + 2, delta }
        }
    }
}

/// ν from the expansion of n/q: the leading run of 2's, where a 2 in the final
/// position never counts.
pub fn nu_from_hj(alphas: &[u64]) -> usize {
    let lead = alphas.iter().take_while(|&&x| x == 2).count();
    lead.min(alphas.len().saturating_sub(1))
}

/// Every valid group of a family with its main parameter (r, n or m) at most `max`.
pub fn enumerate_family(fam: Family, max: u64) -> Vec<GroupParams> {
    let mut out = Vec::new();
    match fam {
        Family::A | Family::D => {
            for x in 3..=max {
                for y in 2..x {
                    let g = if fam == Family::A {
                        GroupParams::A { r: x, a: y }
                    } else {
                        GroupParams::D { n: x, q: y }
                    };
                    if g.validate().is_ok() {
                        out.push(g);
                    }
                }
            }
        }
        _ => {
            for m in 1..=max {
                let g = match fam {
                    Family::T => GroupParams::T { m },
                    Family::O => GroupParams::O { m },
                    _ => GroupParams::I { m },
                };
                if g.validate().is_ok() {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Sweep bounds used by the cross-validation suite.
pub const SWEEP_BOUNDS: [(Family, u64); 5] = [
    (Family::A, 40),
    (Family::D, 30),
    (Family::T, 117),
    (Family::O, 119),
    (Family::I, 119),
];

pub fn sweep_groups() -> Vec<GroupParams> {
    SWEEP_BOUNDS
        .iter()
        .flat_map(|&(f, max)| enumerate_family(f, max))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_group("A:17,10").unwrap(), GroupParams::A { r: 17, a: 10 });
        assert_eq!(parse_group("D:5,2").unwrap(), GroupParams::D { n: 5, q: 2 });
        assert!(matches!(parse_group("T:4"), Err(Error::Validation(_))));
        assert!(matches!(parse_group("A:4,2"), Err(Error::Validation(_))));
        assert!(parse_group("I:29").is_ok());
        assert!(parse_group("D:14,9").is_ok());
        assert!(parse_group("A:5,4").is_ok());
    }

    #[test]
    fn syntax_errors() {
        for bad in ["", "A", "A:5", "A:5,", "X:3", "T: 3", "T:3 ", "D:5;2", "O:-1", "T:+1"] {
            assert!(matches!(parse_group(bad), Err(Error::Syntax(_))), "{bad}");
        }
    }

    #[test]
    fn family_data_examples() {
        let d = |n, q| family_data(&GroupParams::D { n, q });
        assert_eq!(d(23, 18), FamilyData::Dihedral { nu: 3, nq_even: false });
        assert_eq!(d(5, 2), FamilyData::Dihedral { nu: 0, nq_even: false });
        assert_eq!(
            family_data(&GroupParams::T { m: 7 }),
            FamilyData::Star { b: 3, delta: 1 }
        );
        assert_eq!(
            family_data(&GroupParams::I { m: 29 }),
            FamilyData::Star { b: 2, delta: 29 }
        );
    }

    #[test]
    fn nu_edge_condition() {
        assert_eq!(nu_from_hj(&[2, 2, 2]), 2);
        assert_eq!(nu_from_hj(&[2, 2, 3]), 2);
        assert_eq!(nu_from_hj(&[3, 2]), 0);
        assert_eq!(nu_from_hj(&[2]), 0);
    }

    #[test]
    fn sweep_sizes() {
        assert_eq!(enumerate_family(Family::T, 117).len(), 59);
        assert_eq!(enumerate_family(Family::O, 119).len(), 40);
        assert_eq!(enumerate_family(Family::I, 119).len(), 32);
    }
}
