//! Backtracking search for (anti-)isomorphisms of translation quivers with R pinned.

use crate::error::{Error, Result};
use crate::quiver::TranslationQuiver;

const UNSET: usize = usize::MAX;

struct Search<'a> {
    p: &'a TranslationQuiver,
    q: &'a TranslationQuiver,
    anti: bool,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Image of the arrow x→y must exist with the same multiplicity.
    fn image_mult(&self, fx: usize, fy: usize) -> u32 {
        if self.anti {
            self.q.mult(fy, fx)
        } else {
            self.q.mult(fx, fy)
        }
    }

    fn consistent(&self, f: &[usize], x: usize) -> bool {
        let fx = f[x];
        if self.p.rank(x) != self.q.rank(fx) {
            return false;
        }
        let out_ok = self.p.out[x]
            .iter()
            .all(|&(y, m)| f[y] == UNSET || self.image_mult(fx, f[y]) == m);
        let in_ok = self.p.inc[x]
            .iter()
            .all(|&(y, m)| f[y] == UNSET || self.image_mult(f[y], fx) == m);
        out_ok && in_ok
    }

    /// Assigns x ↦ z and forces the whole τ-orbit; returns the assigned vertices,
    /// or None (with the assignment rolled back) on conflict.
    fn assign(&self, f: &mut [usize], used: &mut [bool], x: usize, z: usize) -> Option<Vec<usize>> {
        let mut done = Vec::new();
        let (mut a, mut b) = (x, z);
        loop {
            if f[a] != UNSET {
                if f[a] == b {
                    break;
                }
                self.undo(f, used, &done);
                return None;
            }
            if used[b] {
                self.undo(f, used, &done);
                return None;
            }
            f[a] = b;
            used[b] = true;
            done.push(a);
            a = self.p.tau[a];
            b = if self.anti { self.q.tau_inv[b] } else { self.q.tau[b] };
        }
        if done.iter().all(|&v| self.consistent(f, v)) {
            Some(done)
        } else {
            self.undo(f, used, &done);
            None
        }
    }

    fn undo(&self, f: &mut [usize], used: &mut [bool], done: &[usize]) {
        for &v in done {
            used[f[v]] = false;
            f[v] = UNSET;
        }
    }

    fn recurse(&mut self, f: &mut [usize], used: &mut [bool]) {
        if self.found.len() >= self.limit {
            return;
        }
        // Branch on an unassigned neighbour of an assigned vertex.
        let mut pick = None;
        'outer: for x in 0..self.p.len() {
            if f[x] == UNSET {
                continue;
            }
            for &(y, _) in &self.p.out[x] {
                if f[y] == UNSET {
                    pick = Some((x, y, true));
                    break 'outer;
                }
            }
            for &(y, _) in &self.p.inc[x] {
                if f[y] == UNSET {
                    pick = Some((x, y, false));
                    break 'outer;
                }
            }
        }
        let Some((x, y, forward)) = pick else {
            if f.iter().all(|&v| v != UNSET) {
                self.found.push(f.to_vec());
            }
            return;
        };
        // For x→y the image of y is a successor of f(x) (predecessor if anti).
        let fx = f[x];
        let succ = forward != self.anti;
        let cands: Vec<usize> = if succ {
            self.q.out[fx].iter().map(|&(z, _)| z).collect()
        } else {
            self.q.inc[fx].iter().map(|&(z, _)| z).collect()
        };
        for z in cands {
            if used[z] {
                continue;
            }
            if let Some(done) = self.assign(f, used, y, z) {
                self.recurse(f, used);
                self.undo(f, used, &done);
            }
        }
    }
}

fn search(p: &TranslationQuiver, q: &TranslationQuiver, anti: bool, limit: usize) -> Vec<Vec<usize>> {
    if p.len() != q.len() || p.arrow_count() != q.arrow_count() {
        return Vec::new();
    }
    let mut s = Search { p, q, anti, limit, found: Vec::new() };
    let mut f = vec![UNSET; p.len()];
    let mut used = vec![false; q.len()];
    if let Some(done) = s.assign(&mut f, &mut used, p.r, q.r) {
        s.recurse(&mut f, &mut used);
        s.undo(&mut f, &mut used, &done);
    }
    s.found
}

/// Isomorphisms P → Q commuting with τ, sending R to R (at most `limit`).
pub fn isomorphisms(p: &TranslationQuiver, q: &TranslationQuiver, limit: usize) -> Vec<Vec<usize>> {
    search(p, q, false, limit)
}

pub fn are_isomorphic(p: &TranslationQuiver, q: &TranslationQuiver) -> bool {
    !isomorphisms(p, q, 1).is_empty()
}

/// Every arrow-reversing bijection with R ↦ R and τ(x*) = (τ⁻x)*.
pub fn dual_candidates(q: &TranslationQuiver) -> Vec<Vec<usize>> {
    search(q, q, true, usize::MAX)
}

/// The duality, if the constraints pin it down uniquely.
pub fn compute_dual(q: &TranslationQuiver) -> Result<Vec<usize>> {
    let mut c = dual_candidates(q);
    match c.len() {
        0 => Err(Error::Internal("no arrow-reversing bijection fixes R".into())),
        1 => Ok(c.pop().unwrap()),
        count => Err(Error::AmbiguousDual { count }),
    }
}

/// Whether `d` reverses every arrow with multiplicity, fixes R and intertwines τ with τ⁻.
pub fn is_anti_automorphism(q: &TranslationQuiver, d: &[usize]) -> bool {
    if d.len() != q.len() || d[q.r] != q.r {
        return false;
    }
    let mut seen = vec![false; q.len()];
    for &y in d {
        if y >= q.len() || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    (0..q.len()).all(|x| {
        q.tau[d[x]] == d[q.tau_inv[x]]
            && q.rank(d[x]) == q.rank(x)
            && q.out[x].iter().all(|&(y, m)| q.mult(d[y], d[x]) == m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupParams;
    use crate::quiver::build_ar_quiver;

    #[test]
    fn cyclic_dual_is_negation() {
        let q = build_ar_quiver(&GroupParams::A { r: 17, a: 10 }).unwrap();
        let d = compute_dual(&q).unwrap();
        for (j, &dj) in d.iter().enumerate() {
            assert_eq!(dj, (17 - j) % 17);
        }
    }

    #[test]
    fn candidates_are_anti_automorphisms() {
        for g in [GroupParams::D { n: 5, q: 2 }, GroupParams::T { m: 5 }, GroupParams::A { r: 5, a: 4 }] {
            let q = build_ar_quiver(&g).unwrap();
            let c = dual_candidates(&q);
            assert!(!c.is_empty());
            assert!(c.iter().all(|d| is_anti_automorphism(&q, d)));
        }
    }

    #[test]
    fn ambiguity_is_reported() {
        let q = build_ar_quiver(&GroupParams::D { n: 5, q: 2 }).unwrap();
        assert_eq!(compute_dual(&q), Err(Error::AmbiguousDual { count: 6 }));
    }

    #[test]
    fn self_isomorphic() {
        let q = build_ar_quiver(&GroupParams::O { m: 5 }).unwrap();
        assert!(are_isomorphic(&q, &q));
        let other = build_ar_quiver(&GroupParams::T { m: 5 }).unwrap();
        assert!(!are_isomorphic(&q, &other));
    }
}
