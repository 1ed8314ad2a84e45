//! The closed-form answer: specials named by position, per family and residue.

use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fixtures::{Fixture, FixtureKind, SpecialsPayload};
use crate::group::{family_data, FamilyData, GroupParams};
use crate::hj::hj_expand;
use crate::quiver::TranslationQuiver;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    /// References as written in the tables (names or `node@h`).
    pub labels: Vec<String>,
    pub vertices: BTreeSet<usize>,
}

/// Positions (node, h) relative to R for T with b ≥ 3.
fn t_positions(delta: u64) -> &'static [(usize, i64)] {
    match delta {
        1 => &[(4, 4), (4, 8), (0, 6), (0, 12), (6, 4), (6, 8)],
        3 => &[(4, 4), (0, 6), (0, 12), (6, 4), (6, 8)],
        _ => &[(4, 4), (0, 6), (0, 12), (6, 4)],
    }
}

fn o_names(delta: u64) -> &'static [&'static str] {
    match delta {
        1 => &["D1", "D2", "D3", "E1", "E2", "F", "N"],
        5 => &["D1", "D2", "D3", "E1", "F", "N"],
        7 => &["D1", "E1", "E2", "F", "N"],
        _ => &["D1", "E1", "F", "N"],
    }
}

fn i_names(delta: u64) -> &'static [&'static str] {
    match delta {
        1 => &["A1", "A2", "A3", "A4", "B1", "B2", "C", "M"],
        7 => &["A1", "A3", "B1", "B2", "C", "M"],
        11 => &["A1", "A2", "A3", "A4", "B1", "C", "M"],
        13 => &["A1", "A2", "B1", "B2", "C", "M"],
        17 => &["A1", "A3", "B1", "C", "M"],
        19 => &["A1", "B1", "B2", "C", "M"],
        23 => &["A1", "A2", "B1", "C", "M"],
        _ => &["A1", "B1", "C", "M"],
    }
}

const SPECIALS_FIXTURES: &str = include_str!("../fixtures/specials.json");

/// b = 2 special sets, read from the fixture corpus compiled into the crate.
fn b2_table() -> &'static [(GroupParams, Vec<String>)] {
    static TABLE: OnceLock<Vec<(GroupParams, Vec<String>)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let all: Vec<Fixture> = serde_json::from_str(SPECIALS_FIXTURES).expect("embedded fixtures parse");
        all.into_iter()
            .filter(|f| f.kind == FixtureKind::SpecialsSet)
            .filter_map(|f| {
                let g: GroupParams = f.group.as_deref()?.parse().ok()?;
                g.m()?;
                let p: SpecialsPayload = serde_json::from_value(f.payload).ok()?;
                Some((g, p.specials))
            })
            .collect()
    })
}

fn labels_for(g: &GroupParams, q: &TranslationQuiver) -> Result<Vec<String>> {
    let mut labels = vec!["R".to_string()];
    let position = |node: usize, h: i64| -> String {
        let l = q.layout.as_ref().expect("diagram quiver");
        format!("{}@{}", l.diagram.labels[node], h)
    };
    match *g {
        GroupParams::A { r, a } => {
            let hj = hj_expand(r, a)?;
            labels.extend(hj.iseries[1..=hj.len()].iter().map(|i| format!("S{i}")));
        }
        GroupParams::D { n, q: qq } => {
            let hj = hj_expand(n, qq)?;
            let big_n = hj.len();
            labels.push("W+".into());
            labels.push("W-".into());
            if n > 2 * qq {
                labels.extend((1..=big_n).map(|p| format!("W{}", hj.i(p))));
            } else {
                let FamilyData::Dihedral { nu, .. } = family_data(g) else { unreachable!() };
                labels.extend((nu + 1..=big_n).map(|p| format!("W{}", hj.i(p))));
                let base = hj.i(nu + 1);
                labels.extend((0..nu as u64).map(|s| format!("V{}", base + s * (n - qq))));
            }
        }
        GroupParams::T { .. } | GroupParams::O { .. } | GroupParams::I { .. } => {
            let FamilyData::Star { b, delta } = family_data(g) else { unreachable!() };
            if g.is_gorenstein() {
                return Ok((0..q.len()).map(|v| q.position_label(v)).collect());
            }
            if b == 2 {
                let (_, set) = b2_table()
                    .iter()
                    .find(|(h, _)| h == g)
                    .ok_or_else(|| Error::Fixture(format!("no b = 2 specials fixture for {g}")))?;
                return Ok(set.clone());
            }
            match g {
                GroupParams::T { .. } => {
                    labels.extend(t_positions(delta).iter().map(|&(x, h)| position(x, h)));
                }
                GroupParams::O { .. } => labels.extend(o_names(delta).iter().map(|s| s.to_string())),
                _ => labels.extend(i_names(delta).iter().map(|s| s.to_string())),
            }
        }
    }
    Ok(labels)
}

/// The specials predicted by the closed-form tables, resolved on `q`.
pub fn specials_closed_form(g: &GroupParams, q: &TranslationQuiver) -> Result<ClosedForm> {
    let labels = labels_for(g, q)?;
    let vertices = labels.iter().map(|l| q.resolve(l)).collect::<Result<_>>()?;
    Ok(ClosedForm { labels, vertices })
}
