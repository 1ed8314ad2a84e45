//! Specials by counting, checked against the closed forms and the resolution.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::closed_form::specials_closed_form;
use crate::error::{Error, Result};
use crate::group::{family_data, FamilyData, GroupParams};
use crate::iso::dual_candidates;
use crate::ladder::{ext1_profile, syzygy, CountVector};
use crate::par::{self, Strategy};
use crate::quiver::{build_ar_quiver, TranslationQuiver};
use crate::resolution::{dual_graph, fundamental_cycle, zf_closed_form_d, ResolutionGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn ok() -> Check {
        Check { pass: true, detail: None }
    }

    fn fail(detail: String) -> Check {
        Check { pass: false, detail: Some(detail) }
    }

    fn from(pass: bool, detail: impl FnOnce() -> String) -> Check {
        if pass {
            Check::ok()
        } else {
            Check::fail(detail())
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Checks {
    pub oracle_equivalence: Check,
    pub wunram: Check,
    pub omega_duality: Check,
    /// D only: ν from the expansion agrees with the 2's in Z_f, and the closed
    /// form for Z_f agrees with Laufer's algorithm.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_consistency: Option<Check>,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        self.oracle_equivalence.pass
            && self.wunram.pass
            && self.omega_duality.pass
            && self.nu_consistency.as_ref().is_none_or(|c| c.pass)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub group: GroupParams,
    pub vertex_count: usize,
    pub specials_by_counting: Vec<usize>,
    pub specials_closed_form: Vec<usize>,
    pub closed_form_labels: Vec<String>,
    /// Position label of every special found by counting.
    pub special_positions: BTreeMap<usize, String>,
    pub ranks: BTreeMap<usize, u32>,
    pub dual_graph: ResolutionGraph,
    pub zf: Vec<u64>,
    pub dual_candidates: usize,
    pub checks: Checks,
    pub pass: bool,
}

/// {R} ∪ {v : Ext¹(v, R) = 0}.
pub fn specials_by_counting(q: &TranslationQuiver) -> Result<Vec<usize>> {
    let p = ext1_profile(q)?;
    Ok((0..q.len()).filter(|&v| v == q.r || p[v] == 0).collect())
}

/// Ω(v) for every vertex.
pub fn all_syzygies(q: &TranslationQuiver, strategy: Strategy) -> Result<Vec<CountVector>> {
    par::map_range(strategy, q.len(), |v| syzygy(q, v)).into_iter().collect()
}

/// Vertices violating: v special ⇔ Ω(v)* = {v}, for v ≠ R.
pub fn omega_duality_violations(
    q: &TranslationQuiver,
    specials: &[usize],
    syz: &[CountVector],
    dual: &[usize],
) -> Vec<usize> {
    (0..q.len())
        .filter(|&v| v != q.r)
        .filter(|&v| {
            let image = syz[v].map(dual).without(q.r);
            let returns = image == CountVector::unit(v);
            specials.contains(&v) != returns
        })
        .collect()
}

/// The anti-automorphisms satisfying the duality biconditional, and the total
/// number of candidates. The constraints alone leave a choice whenever the
/// quiver has symmetries fixing R; the biconditional selects among them.
pub fn select_dual(
    q: &TranslationQuiver,
    specials: &[usize],
    syz: &[CountVector],
) -> (Vec<Vec<usize>>, usize) {
    let cands = dual_candidates(q);
    let total = cands.len();
    let good = cands
        .into_iter()
        .filter(|d| omega_duality_violations(q, specials, syz, d).is_empty())
        .collect();
    (good, total)
}

/// The duality on `q`, chosen as above; an error if no candidate qualifies.
pub fn resolve_dual(q: &TranslationQuiver, strategy: Strategy) -> Result<Vec<usize>> {
    let specials = specials_by_counting(q)?;
    let syz = all_syzygies(q, strategy)?;
    let (good, total) = select_dual(q, &specials, &syz);
    match good.into_iter().next() {
        Some(d) => Ok(d),
        None if total > 1 => Err(Error::AmbiguousDual { count: total }),
        None => Err(Error::Internal("no duality satisfies Ω-duality".into())),
    }
}

pub fn wunram_check(
    q: &TranslationQuiver,
    specials: &[usize],
    graph: &ResolutionGraph,
    zf: &[u64],
) -> Check {
    let mut ranks: Vec<u64> = specials.iter().filter(|&&v| v != q.r).map(|&v| q.rank(v) as u64).collect();
    let mut coeffs = zf.to_vec();
    ranks.sort_unstable();
    coeffs.sort_unstable();
    Check::from(ranks.len() == graph.len() && ranks == coeffs, || {
        format!(
            "{} non-free specials with ranks {ranks:?}; {} curves with Z_f {coeffs:?}",
            ranks.len(),
            graph.len()
        )
    })
}

fn nu_check(g: &GroupParams, zf: &[u64]) -> Option<Check> {
    let GroupParams::D { n, q } = *g else { return None };
    let FamilyData::Dihedral { nu, .. } = family_data(g) else { unreachable!() };
    let twos = zf.iter().filter(|&&c| c == 2).count();
    let closed = zf_closed_form_d(n, q).ok()?;
    Some(Check::from(nu == twos && closed == zf, || {
        format!("ν = {nu} from the expansion, {twos} twos in Laufer's Z_f {zf:?}, closed form {closed:?}")
    }))
}

pub fn classify(g: &GroupParams) -> Result<ClassificationReport> {
    classify_with(g, Strategy::default())
}

pub fn classify_with(g: &GroupParams, strategy: Strategy) -> Result<ClassificationReport> {
    let q = build_ar_quiver(g)?;
    let counting = specials_by_counting(&q)?;
    let closed = specials_closed_form(g, &q)?;
    let closed_vs: Vec<usize> = closed.vertices.iter().copied().collect();
    let graph = dual_graph(g);
    let zf = fundamental_cycle(&graph)?;

    let oracle = Check::from(counting == closed_vs, || {
        format!("counting {counting:?} vs closed form {closed_vs:?} ({:?})", closed.labels)
    });
    let wunram = wunram_check(&q, &counting, &graph, &zf);
    let syz = all_syzygies(&q, strategy)?;
    let (good, total) = select_dual(&q, &counting, &syz);
    let omega = match good.len() {
        0 => Check::fail(format!("none of the {total} candidate dualities satisfies the biconditional")),
        _ => Check::ok(),
    };
    let checks = Checks { oracle_equivalence: oracle, wunram, omega_duality: omega, nu_consistency: nu_check(g, &zf) };
    let pass = checks.all_pass();
    Ok(ClassificationReport {
        group: *g,
        vertex_count: q.len(),
        special_positions: counting.iter().map(|&v| (v, q.position_label(v))).collect(),
        ranks: counting.iter().map(|&v| (v, q.rank(v))).collect(),
        specials_by_counting: counting,
        specials_closed_form: closed_vs,
        closed_form_labels: closed.labels,
        dual_graph: graph,
        zf,
        dual_candidates: total,
        checks,
        pass,
    })
}

/// Classifies many groups; groups run in parallel, each sequentially inside.
pub fn batch(groups: &[GroupParams], strategy: Strategy) -> Vec<Result<ClassificationReport>> {
    par::map(strategy, groups, |g| classify_with(g, Strategy::Sequential))
}
