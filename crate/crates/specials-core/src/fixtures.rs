//! Golden data transcribed from the worked examples, and its replay.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use crate::classify::{resolve_dual, specials_by_counting};
use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::iso::are_isomorphic;
use crate::ladder::{
    ext1_profile, free_cover_rank, free_expansion, run_ladder, syzygy_of, CountVector, Mode, Side,
};
use crate::par::Strategy;
use crate::quiver::{build_ar_quiver, TranslationQuiver, Vertex};
use crate::resolution::{dual_graph, fundamental_cycle, is_minimal_cycle, intersection_matrix, pairings};
use crate::resolution::{ResolutionGraph, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureKind {
    Quiver,
    Ext1Table,
    SyzygyTrace,
    FreeExpansionWindow,
    SpecialsSet,
    Zf,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub group: Option<String>,
    pub kind: FixtureKind,
    pub locus: String,
    pub payload: Value,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverPayload {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, u32)>,
    pub tau: BTreeMap<String, String>,
    #[serde(rename = "R")]
    pub r: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Position {
    pub node: String,
    pub h: i64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Ext1Cell {
    pub node: String,
    pub h: i64,
    pub value: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ext1Payload {
    pub cells: Vec<Ext1Cell>,
    pub specials: Vec<Position>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TraceCell {
    pub node: String,
    pub h: i64,
    pub step: usize,
    pub value: i64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct NegativeCell {
    pub index: usize,
    pub node: String,
    pub h: i64,
    pub mult: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyzygyPayload {
    pub start: Vec<String>,
    pub cells: Vec<TraceCell>,
    /// When non-empty, these are all the non-zero negatives of the trace.
    pub negatives: Vec<NegativeCell>,
    pub syzygy_is_dual: bool,
    pub cover_rank: u64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Erratum {
    pub row: usize,
    pub c: i64,
    pub printed: String,
    pub value: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowPayload {
    pub start: String,
    /// Per picture row: the diagram node drawn at even and at odd heights.
    pub rows: Vec<[Option<String>; 2]>,
    pub h_offset: i64,
    pub period: i64,
    /// Whether columns are measured from the start of the t-th segment.
    pub relative: bool,
    pub t: Vec<i64>,
    pub errata: Vec<Erratum>,
    pub table: Vec<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecialsPayload {
    pub specials: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZfPayload {
    pub self_ints: Option<Vec<i64>>,
    pub edges: Option<Vec<[usize; 2]>>,
    pub zf: Option<Vec<u64>>,
    #[serde(default)]
    pub all_ones: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub id: String,
    pub kind: FixtureKind,
    pub pass: bool,
    pub diffs: Vec<String>,
}

pub fn fixtures_dir() -> PathBuf {
    std::env::var_os("SPECIALS_FIXTURES_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

/// Every fixture in every `*.json` file of `dir` (a file holds one fixture or an array).
pub fn load_dir(dir: &Path) -> Result<Vec<Fixture>> {
    let rd = std::fs::read_dir(dir).map_err(|e| Error::Fixture(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        out.extend(load_file(&p)?);
    }
    Ok(out)
}

pub fn load_file(path: &Path) -> Result<Vec<Fixture>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
    parse_fixtures(&text).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))
}

pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
    let items = match v {
        Value::Array(items) => items,
        one => vec![one],
    };
    items
        .into_iter()
        .map(|i| serde_json::from_value(i).map_err(|e| Error::Fixture(e.to_string())))
        .collect()
}

fn payload<T: for<'de> Deserialize<'de>>(f: &Fixture) -> Result<T> {
    serde_json::from_value(f.payload.clone())
        .map_err(|e| Error::Fixture(format!("{}: payload does not match {:?} schema: {e}", f.id, f.kind)))
}

fn group_of(f: &Fixture) -> Result<GroupParams> {
    f.group
        .as_deref()
        .ok_or_else(|| Error::Fixture(format!("{}: missing group", f.id)))?
        .parse()
}

/// Recomputes a fixture's payload and compares exactly. Schema problems are errors;
/// mismatches are reported in the outcome.
pub fn verify(f: &Fixture) -> Result<Outcome> {
    let diffs = match f.kind {
        FixtureKind::Quiver => verify_quiver(f)?,
        FixtureKind::Ext1Table => verify_ext1(f)?,
        FixtureKind::SyzygyTrace => verify_syzygy(f)?,
        FixtureKind::FreeExpansionWindow => verify_window(f)?,
        FixtureKind::SpecialsSet => verify_specials(f)?,
        FixtureKind::Zf => verify_zf(f)?,
    };
    Ok(Outcome { id: f.id.clone(), kind: f.kind, pass: diffs.is_empty(), diffs })
}

/// A quiver given by labels, with all ranks 1 (pictures do not show ranks).
pub fn quiver_from_payload(p: &QuiverPayload) -> Result<TranslationQuiver> {
    let idx: BTreeMap<&str, usize> = p.vertices.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let get = |s: &str| {
        idx.get(s)
            .copied()
            .ok_or_else(|| Error::Fixture(format!("unknown vertex label `{s}`")))
    };
    let n = p.vertices.len();
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for (a, b, m) in &p.arrows {
        let (x, y) = (get(a)?, get(b)?);
        out[x].push((y, *m));
        inc[y].push((x, *m));
    }
    for l in out.iter_mut().chain(inc.iter_mut()) {
        l.sort_unstable();
    }
    let mut tau = vec![usize::MAX; n];
    for (a, b) in &p.tau {
        tau[get(a)?] = get(b)?;
    }
    let mut tau_inv = vec![usize::MAX; n];
    for (x, &t) in tau.iter().enumerate() {
        if t == usize::MAX || tau_inv[t] != usize::MAX {
            return Err(Error::Fixture(format!("τ is not a bijection at `{}`", p.vertices[x])));
        }
        tau_inv[t] = x;
    }
    let r = get(&p.r)?;
    let vertices = (0..n).map(|id| Vertex { id, node: 0, column: 0, rank: 1 }).collect();
    Ok(TranslationQuiver {
        group: None,
        vertices,
        out,
        inc,
        omega: tau[r],
        tau,
        tau_inv,
        r,
        layout: None,
        names: BTreeMap::new(),
    })
}

fn verify_quiver(f: &Fixture) -> Result<Vec<String>> {
    let p: QuiverPayload = payload(f)?;
    let picture = quiver_from_payload(&p)?;
    let mut ours = build_ar_quiver(&group_of(f)?)?;
    for v in ours.vertices.iter_mut() {
        v.rank = 1;
    }
    let mut diffs = Vec::new();
    if picture.len() != ours.len() {
        diffs.push(format!("{} vertices in the picture, {} computed", picture.len(), ours.len()));
    }
    if picture.arrow_count() != ours.arrow_count() {
        diffs.push(format!("{} arrows in the picture, {} computed", picture.arrow_count(), ours.arrow_count()));
    }
    if diffs.is_empty() && !are_isomorphic(&picture, &ours) {
        diffs.push("no isomorphism with R pinned".into());
    }
    Ok(diffs)
}

fn verify_ext1(f: &Fixture) -> Result<Vec<String>> {
    let p: Ext1Payload = payload(f)?;
    let q = build_ar_quiver(&group_of(f)?)?;
    let prof = ext1_profile(&q)?;
    let mut diffs = Vec::new();
    for c in &p.cells {
        let v = q.resolve(&format!("{}@{}", c.node, c.h))?;
        if prof[v] != c.value {
            diffs.push(format!("{}@{}: expected {}, computed {}", c.node, c.h, c.value, prof[v]));
        }
    }
    let want: BTreeSet<usize> = p
        .specials
        .iter()
        .map(|s| q.resolve(&format!("{}@{}", s.node, s.h)))
        .collect::<Result<_>>()?;
    let got: BTreeSet<usize> = specials_by_counting(&q)?.into_iter().collect();
    if want != got {
        diffs.push(format!("specials: expected {want:?}, computed {got:?}"));
    }
    Ok(diffs)
}

fn verify_syzygy(f: &Fixture) -> Result<Vec<String>> {
    let p: SyzygyPayload = payload(f)?;
    let q = build_ar_quiver(&group_of(f)?)?;
    let starts: Vec<usize> = p.start.iter().map(|s| q.resolve(s)).collect::<Result<_>>()?;
    let start = CountVector::from_multiset(&starts);
    let trace = run_ladder(&q, &start, Mode::KillR, Side::Right, crate::ladder::default_cap(&q))?;
    let mut diffs = Vec::new();
    for c in &p.cells {
        let v = q.resolve(&format!("{}@{}", c.node, c.h))?;
        let got = trace.ys.get(c.step).map_or(0, |y| y.get(v));
        if got != c.value {
            diffs.push(format!("Y'_{} at {}@{}: expected {}, computed {got}", c.step, c.node, c.h, c.value));
        }
    }
    if !p.negatives.is_empty() {
        let mut want: BTreeMap<usize, CountVector> = BTreeMap::new();
        for c in &p.negatives {
            let v = q.resolve(&format!("{}@{}", c.node, c.h))?;
            let e = want.entry(c.index).or_default();
            *e = e.add(&CountVector::from_entries([(v, c.mult)]));
        }
        let got: BTreeMap<usize, CountVector> = trace
            .negatives
            .iter()
            .enumerate()
            .filter(|(_, u)| !u.is_zero())
            .map(|(i, u)| (i, u.clone()))
            .collect();
        if want != got {
            diffs.push(format!("non-zero negatives: expected {want:?}, computed {got:?}"));
        }
    }
    if p.syzygy_is_dual {
        let dual = resolve_dual(&q, Strategy::default())?;
        let omega = syzygy_of(&q, &start)?;
        let duals = CountVector::from_multiset(&starts.iter().map(|&v| dual[v]).collect::<Vec<_>>());
        if omega != duals {
            diffs.push(format!("syzygy {omega:?}, duals of the start {duals:?}"));
        }
    }
    let rank = free_cover_rank(&q, &start)?;
    if rank != p.cover_rank {
        diffs.push(format!("free cover rank: expected {}, computed {rank}", p.cover_rank));
    }
    Ok(diffs)
}

/// Evaluates `k`, `t-k`, `at-k` or `at+k` at t.
pub fn eval_expr(s: &str, t: i64) -> Result<i64> {
    let bad = || Error::Fixture(format!("bad table entry `{s}`"));
    if let Ok(k) = s.parse::<i64>() {
        return Ok(k);
    }
    let (coef, rest) = s.split_once('t').ok_or_else(bad)?;
    let a: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
    let b: i64 = if rest.is_empty() {
        0
    } else {
        let rest = rest.strip_prefix('+').unwrap_or(rest);
        rest.parse().map_err(|_| bad())?
    };
    Ok(a * t + b)
}

fn verify_window(f: &Fixture) -> Result<Vec<String>> {
    let p: WindowPayload = payload(f)?;
    let q = build_ar_quiver(&group_of(f)?)?;
    if p.start != "tau-R" {
        return Err(Error::Fixture(format!("{}: unsupported start `{}`", f.id, p.start)));
    }
    let layout = q.layout.as_ref().ok_or_else(|| Error::Fixture("window needs a layout".into()))?;
    let node = |s: &str| {
        layout
            .diagram
            .labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| Error::Fixture(format!("unknown node `{s}`")))
    };
    let mut cells = Vec::new();
    let mut max_h = 0;
    for &t in &p.t {
        for (r, row) in p.table.iter().enumerate() {
            for (c, expr) in row {
                let c: i64 = c.parse().map_err(|_| Error::Fixture(format!("bad column `{c}`")))?;
                let expr = p
                    .errata
                    .iter()
                    .find(|e| e.row == r && e.c == c && &e.printed == expr)
                    .map_or(expr.as_str(), |e| e.value.as_str());
                let h = p.h_offset + c + if p.relative { p.period * (t - 2) } else { 0 };
                let slot = h.rem_euclid(2) as usize;
                let name = p.rows[r][slot]
                    .as_deref()
                    .ok_or_else(|| Error::Fixture(format!("row {r} has no node at parity {slot}")))?;
                cells.push((t, r, c, node(name)?, h, eval_expr(expr, t)?));
                max_h = max_h.max(h);
            }
        }
    }
    let start = q.tau_inv[q.r];
    let steps = (max_h - layout.height_of(&q.vertices[start])).max(0) as usize;
    let fe = free_expansion(&q, start, steps)?;
    let mut diffs = Vec::new();
    for (t, r, c, x, h, want) in cells {
        let got = fe.value(&q, h, x);
        if got != Some(want) {
            diffs.push(format!("t={t} row {r} column {c}: expected {want}, computed {got:?}"));
        }
    }
    Ok(diffs)
}

fn verify_specials(f: &Fixture) -> Result<Vec<String>> {
    let p: SpecialsPayload = payload(f)?;
    let q = build_ar_quiver(&group_of(f)?)?;
    let want: BTreeSet<usize> = p.specials.iter().map(|s| q.resolve(s)).collect::<Result<_>>()?;
    let got: BTreeSet<usize> = specials_by_counting(&q)?.into_iter().collect();
    Ok(if want == got {
        Vec::new()
    } else {
        let show = |s: &BTreeSet<usize>| s.iter().map(|&v| q.position_label(v)).collect::<Vec<_>>();
        vec![format!("expected {:?}, computed {:?}", show(&want), show(&got))]
    })
}

fn verify_zf(f: &Fixture) -> Result<Vec<String>> {
    let p: ZfPayload = payload(f)?;
    let graph = match (&f.group, &p.self_ints) {
        (Some(g), None) => dual_graph(&g.parse()?),
        (None, Some(si)) => ResolutionGraph::from_self_ints(si, p.edges.clone().unwrap_or_default(), Shape::Star),
        _ => return Err(Error::Fixture(format!("{}: need exactly one of group and self_ints", f.id))),
    };
    let zf = fundamental_cycle(&graph)?;
    let m = intersection_matrix(&graph);
    let mut diffs = Vec::new();
    if pairings(&m, &zf).iter().any(|&x| x > 0) || !is_minimal_cycle(&m, &zf) {
        diffs.push(format!("{zf:?} is not the minimal anti-nef cycle"));
    }
    let want = match (&p.zf, p.all_ones) {
        (Some(z), false) => z.clone(),
        (None, true) => vec![1; graph.len()],
        _ => return Err(Error::Fixture(format!("{}: need exactly one of zf and all_ones", f.id))),
    };
    if want != zf {
        diffs.push(format!("expected {want:?}, computed {zf:?}"));
    }
    Ok(diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        assert_eq!(eval_expr("2t-4", 3).unwrap(), 2);
        assert_eq!(eval_expr("t-1", 5).unwrap(), 4);
        assert_eq!(eval_expr("7", 0).unwrap(), 7);
        assert_eq!(eval_expr("3t+2", 1).unwrap(), 5);
        assert!(eval_expr("x", 1).is_err());
    }

    #[test]
    fn single_or_array() {
        let one = r#"{"id":"x","group":"A:5,2","kind":"specials_set","locus":"","payload":{"specials":["R"]}}"#;
        assert_eq!(parse_fixtures(one).unwrap().len(), 1);
        assert_eq!(parse_fixtures(&format!("[{one},{one}]")).unwrap().len(), 2);
        assert!(parse_fixtures(r#"{"id":"x"}"#).is_err());
    }
}
