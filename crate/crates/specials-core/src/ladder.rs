//! The ladder recursion w_n = θ^∓Y_{n−1} − τ^∓Y_{n−2}, Y_n = (w_n)₊, on K₀ classes.
//!
//! The negative part of w_n is recorded as U_{n−1}: w_n splits as Y_n − U_{n−1},
//! so the syzygy of the start is ⊕ U_n.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quiver::TranslationQuiver;

/// Sparse integer vector over the vertices, sorted by vertex id, no zero entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CountVector(Vec<(usize, i64)>);

impl CountVector {
    pub fn zero() -> Self {
        CountVector(Vec::new())
    }

    pub fn unit(v: usize) -> Self {
        CountVector(vec![(v, 1)])
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut v: Vec<(usize, i64)> = entries.into_iter().collect();
        v.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(v.len());
        for (k, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|e| e.1 != 0);
        CountVector(out)
    }

    pub fn from_multiset(vs: &[usize]) -> Self {
        Self::from_entries(vs.iter().map(|&v| (v, 1)))
    }

    pub fn get(&self, v: usize) -> i64 {
        self.0
            .binary_search_by_key(&v, |e| e.0)
            .map_or(0, |i| self.0[i].1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.iter().map(|e| e.0).collect()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|e| e.1).sum()
    }

    pub fn without(mut self, v: usize) -> Self {
        self.0.retain(|e| e.0 != v);
        self
    }

    /// (positive part, negative part).
    pub fn split(self) -> (CountVector, CountVector) {
        let (pos, neg): (Vec<_>, Vec<_>) = self.0.into_iter().partition(|e| e.1 > 0);
        (CountVector(pos), CountVector(neg.into_iter().map(|(k, c)| (k, -c)).collect()))
    }

    pub fn add(&self, other: &CountVector) -> CountVector {
        Self::from_entries(self.0.iter().chain(&other.0).copied())
    }

    pub fn to_dense(&self, len: usize) -> Vec<i64> {
        let mut d = vec![0; len];
        for &(k, c) in &self.0 {
            d[k] = c;
        }
        d
    }

    /// Apply a vertex map to a vector of multiplicities.
    pub fn map(&self, f: &[usize]) -> CountVector {
        Self::from_entries(self.0.iter().map(|&(k, c)| (f[k], c)))
    }

    pub fn to_map(&self) -> BTreeMap<usize, i64> {
        self.0.iter().copied().collect()
    }
}

impl Serialize for CountVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|&(k, c)| (k, c)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Full,
    KillR,
    KillOmega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// θ⁻ and τ⁻: maps out of the start.
    Left,
    /// θ and τ: maps into the start.
    Right,
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderTrace {
    pub mode: Mode,
    pub side: Side,
    /// Y_0, Y_1, …
    pub ys: Vec<CountVector>,
    /// U_0, U_1, …, one shorter than `ys`.
    pub negatives: Vec<CountVector>,
}

impl LadderTrace {
    pub fn steps(&self) -> usize {
        self.ys.len() - 1
    }

    /// Σ_n Y_n.
    pub fn accumulated(&self) -> CountVector {
        CountVector::from_entries(self.ys.iter().flat_map(|y| y.0.iter().copied()))
    }

    /// Σ_n U_n.
    pub fn negatives_total(&self) -> CountVector {
        CountVector::from_entries(self.negatives.iter().flat_map(|u| u.0.iter().copied()))
    }
}

/// θ⁻v (left) or θv (right).
pub fn theta_step(q: &TranslationQuiver, v: &CountVector, side: Side) -> CountVector {
    let adj = match side {
        Side::Left => &q.out,
        Side::Right => &q.inc,
    };
    CountVector::from_entries(
        v.0.iter()
            .flat_map(|&(x, c)| adj[x].iter().map(move |&(y, m)| (y, c * m as i64))),
    )
}

/// τ⁻v (left) or τv (right), as classes: (τ⁻v)(x) = v(τx).
pub fn tau_step(q: &TranslationQuiver, v: &CountVector, side: Side) -> CountVector {
    let shift = match side {
        Side::Left => &q.tau_inv,
        Side::Right => &q.tau,
    };
    v.map(shift)
}

pub fn default_cap(q: &TranslationQuiver) -> usize {
    16 * q.len()
}

/// Runs the ladder from `start`. Killed modes stop once two consecutive Y vanish
/// (so the trailing negatives are captured); full mode runs exactly `cap` steps.
pub fn run_ladder(
    q: &TranslationQuiver,
    start: &CountVector,
    mode: Mode,
    side: Side,
    cap: usize,
) -> Result<LadderTrace> {
    let killed = match mode {
        Mode::Full => None,
        Mode::KillR => Some(q.r),
        Mode::KillOmega => Some(q.omega),
    };
    let kill = |v: CountVector| match killed {
        Some(k) => v.without(k),
        None => v,
    };
    let y0 = kill(start.clone());
    let mut ys = vec![y0];
    let mut negatives = Vec::new();
    let mut prev = CountVector::zero();
    for n in 1..=cap {
        let cur = &ys[n - 1];
        if killed.is_some() && cur.is_zero() && prev.is_zero() {
            // Two consecutive zeros: nothing further can appear.
            return Ok(LadderTrace { mode, side, ys, negatives });
        }
        let w = theta_step(q, cur, side).add(&neg(&tau_step(q, &prev, side)));
        let (y, u) = kill(w).split();
        prev = cur.clone();
        ys.push(y);
        negatives.push(u);
    }
    if killed.is_some() {
        // One more check: the cap may coincide with termination.
        let n = ys.len();
        if n >= 2 && ys[n - 1].is_zero() && ys[n - 2].is_zero() {
            return Ok(LadderTrace { mode, side, ys, negatives });
        }
        return Err(Error::CapExceeded { cap });
    }
    Ok(LadderTrace { mode, side, ys, negatives })
}

fn neg(v: &CountVector) -> CountVector {
    CountVector(v.0.iter().map(|&(k, c)| (k, -c)).collect())
}

/// dim Hom(X, Y) in the given category. In the full category this is a
/// truncation: the sum runs over the first 16·|vertices| radical layers.
pub fn hom_dim(q: &TranslationQuiver, x: usize, y: usize, mode: Mode) -> Result<u64> {
    let t = run_ladder(q, &CountVector::unit(x), mode, Side::Left, default_cap(q))?;
    Ok(t.ys.iter().map(|v| v.get(y)).sum::<i64>() as u64)
}

/// dim Ext¹(X, R) = dim of stable Hom(τ⁻R, X) for every vertex X; zero at R.
pub fn ext1_profile(q: &TranslationQuiver) -> Result<Vec<u64>> {
    let t = run_ladder(q, &CountVector::unit(q.tau_inv[q.r]), Mode::KillR, Side::Left, default_cap(q))?;
    let mut p: Vec<u64> = t.accumulated().to_dense(q.len()).into_iter().map(|c| c as u64).collect();
    p[q.r] = 0;
    Ok(p)
}

/// Ω of a sum of vertices, as a multiset.
pub fn syzygy_of(q: &TranslationQuiver, start: &CountVector) -> Result<CountVector> {
    Ok(run_ladder(q, start, Mode::KillR, Side::Right, default_cap(q))?.negatives_total())
}

pub fn syzygy(q: &TranslationQuiver, x: usize) -> Result<CountVector> {
    syzygy_of(q, &CountVector::unit(x))
}

pub fn cosyzygy(q: &TranslationQuiver, x: usize) -> Result<CountVector> {
    Ok(run_ladder(q, &CountVector::unit(x), Mode::KillOmega, Side::Left, default_cap(q))?.negatives_total())
}

/// Σ rank(X) + Σ rank(ΩX): the rank of the minimal free cover of X.
pub fn free_cover_rank(q: &TranslationQuiver, start: &CountVector) -> Result<u64> {
    let omega = syzygy_of(q, start)?;
    let rank = |v: &CountVector| -> i64 {
        v.entries().iter().map(|&(k, c)| c * q.rank(k) as i64).sum()
    };
    Ok((rank(&start.clone().without(q.r)) + rank(&omega)) as u64)
}

/// The unkilled ladder from a vertex, read on the cover: Y_n sits at height h(start) + n.
#[derive(Debug, Clone)]
pub struct FreeExpansion {
    pub start: usize,
    pub start_height: i64,
    pub ys: Vec<CountVector>,
}

pub fn free_expansion(q: &TranslationQuiver, start: usize, steps: usize) -> Result<FreeExpansion> {
    let t = run_ladder(q, &CountVector::unit(start), Mode::Full, Side::Left, steps)?;
    let start_height = match &q.layout {
        Some(l) => l.height_of(&q.vertices[start]),
        None => 0,
    };
    Ok(FreeExpansion { start, start_height, ys: t.ys })
}

impl FreeExpansion {
    /// Multiplicity at cover position (h, node), or None outside the computed range.
    pub fn value(&self, q: &TranslationQuiver, h: i64, node: usize) -> Option<i64> {
        let n = h - self.start_height;
        if n < 0 || n as usize >= self.ys.len() {
            return None;
        }
        let v = q.layout.as_ref()?.vertex_at(h, node)?;
        Some(self.ys[n as usize].get(v))
    }
}
