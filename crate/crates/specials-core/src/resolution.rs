//! Dual graphs of minimal resolutions and their fundamental cycles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{family_data, FamilyData, GroupParams};
use crate::hj::hj_expand;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Chain,
    Fork,
    Star,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Curve {
    pub id: usize,
    pub self_int: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionGraph {
    pub curves: Vec<Curve>,
    pub edges: Vec<[usize; 2]>,
    pub shape: Shape,
}

impl ResolutionGraph {
    pub fn from_self_ints(self_ints: &[i64], edges: Vec<[usize; 2]>, shape: Shape) -> Self {
        let curves = self_ints
            .iter()
            .enumerate()
            .map(|(id, &self_int)| Curve { id, self_int })
            .collect();
        ResolutionGraph { curves, edges, shape }
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn is_tree(&self) -> bool {
        let n = self.len();
        if self.edges.len() + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &[u, v] in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    pub fn to_dot(&self, zf: Option<&[u64]>) -> String {
        let mut s = String::from("graph dual {\n  node [shape=circle];\n");
        for c in &self.curves {
            let label = match zf {
                Some(z) => format!("{}\\n[{}]", c.self_int, z[c.id]),
                None => c.self_int.to_string(),
            };
            s.push_str(&format!("  e{} [label=\"{label}\"];\n", c.id));
        }
        for &[u, v] in &self.edges {
            s.push_str(&format!("  e{u} -- e{v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

fn chain_edges(offset: usize, len: usize) -> Vec<[usize; 2]> {
    (1..len).map(|i| [offset + i - 1, offset + i]).collect()
}

/// Arms of the star-shaped graphs: (left arm read towards the centre, right arm
/// read away from it). The centre is a −b curve and the branch is a single −2.
fn star_arms(g: &GroupParams, delta: u64) -> (&'static [i64], &'static [i64]) {
    match (g, delta) {
        (GroupParams::T { .. }, 1) => (&[2, 2], &[2, 2]),
        (GroupParams::T { .. }, 3) => (&[3], &[2, 2]),
        (GroupParams::T { .. }, 5) => (&[3], &[3]),
        (GroupParams::O { .. }, 1) => (&[2, 2], &[2, 2, 2]),
        (GroupParams::O { .. }, 5) => (&[3], &[2, 2, 2]),
        (GroupParams::O { .. }, 7) => (&[4], &[2, 2]),
        (GroupParams::O { .. }, 11) => (&[3], &[4]),
        (GroupParams::I { .. }, 1) => (&[2, 2], &[2, 2, 2, 2]),
        (GroupParams::I { .. }, 7) => (&[2, 2], &[2, 3]),
        (GroupParams::I { .. }, 11) => (&[3], &[2, 2, 2, 2]),
        (GroupParams::I { .. }, 13) => (&[2, 2], &[3, 2]),
        (GroupParams::I { .. }, 17) => (&[3], &[2, 3]),
        (GroupParams::I { .. }, 19) => (&[5], &[2, 2]),
        (GroupParams::I { .. }, 23) => (&[3], &[3, 2]),
        (GroupParams::I { .. }, 29) => (&[3], &[5]),
        _ => unreachable!("validated residue"),
    }
}

/// Dual graph of the minimal resolution of C²/G.
///
/// Curve order: chains α₁..α_N; for D the two branch curves first; for the
/// star shapes the chain left-to-right and the branch curve last.
pub fn dual_graph(g: &GroupParams) -> ResolutionGraph {
    match *g {
        GroupParams::A { r, a } => {
            let hj = hj_expand(r, a).expect("validated");
            let si: Vec<i64> = hj.alphas.iter().map(|&x| -(x as i64)).collect();
            ResolutionGraph::from_self_ints(&si, chain_edges(0, si.len()), Shape::Chain)
        }
        GroupParams::D { n, q } => {
            let hj = hj_expand(n, q).expect("validated");
            let mut si = vec![-2, -2];
            si.extend(hj.alphas.iter().map(|&x| -(x as i64)));
            let mut edges = vec![[0, 2], [1, 2]];
            edges.extend(chain_edges(2, hj.len()));
            ResolutionGraph::from_self_ints(&si, edges, Shape::Fork)
        }
        GroupParams::T { .. } | GroupParams::O { .. } | GroupParams::I { .. } => {
            let FamilyData::Star { b, delta } = family_data(g) else { unreachable!() };
            let (left, right) = star_arms(g, delta);
            let mut si: Vec<i64> = left.iter().map(|x| -x).collect();
            let centre = si.len();
            si.push(-(b as i64));
            si.extend(right.iter().map(|x| -x));
            let branch = si.len();
            si.push(-2);
            let mut edges = chain_edges(0, branch);
            edges.push([centre, branch]);
            ResolutionGraph::from_self_ints(&si, edges, Shape::Star)
        }
    }
}

pub fn intersection_matrix(graph: &ResolutionGraph) -> Vec<Vec<i64>> {
    let n = graph.len();
    let mut m = vec![vec![0i64; n]; n];
    for c in &graph.curves {
        m[c.id][c.id] = c.self_int;
    }
    for &[u, v] in &graph.edges {
        m[u][v] = 1;
        m[v][u] = 1;
    }
    m
}

/// Leading principal minors by fraction-free elimination.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = 1i128;
    for k in 0..n {
        minors.push(a[k][k]);
        if a[k][k] == 0 {
            // Later minors are not needed once definiteness fails.
            minors.extend(std::iter::repeat_n(0, n - k - 1));
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    minors
}

pub fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    leading_minors(m)
        .iter()
        .enumerate()
        .all(|(k, &d)| if k % 2 == 0 { d < 0 } else { d > 0 })
}

/// Z·E_i for every curve.
pub fn pairings(m: &[Vec<i64>], z: &[u64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(z).map(|(&a, &c)| a * c as i64).sum())
        .collect()
}

/// Laufer's algorithm seeded with the reduced cycle ΣE_i.
pub fn fundamental_cycle(graph: &ResolutionGraph) -> Result<Vec<u64>> {
    let m = intersection_matrix(graph);
    let mut z = vec![1u64; graph.len()];
    let cap = graph.curves.iter().map(|c| (-c.self_int) as usize).sum::<usize>() * graph.len() * 16;
    for _ in 0..=cap {
        let p = pairings(&m, &z);
        match p.iter().position(|&x| x > 0) {
            None => return Ok(z),
            Some(i) => z[i] += 1,
        }
    }
    Err(Error::Internal(format!("Laufer iteration exceeded {cap} steps")))
}

/// Z_f for D(n,q) read off the expansion of n/q: branches 1, then ν twos, then ones.
pub fn zf_closed_form_d(n: u64, q: u64) -> Result<Vec<u64>> {
    let g = GroupParams::D { n, q };
    g.validate()?;
    let FamilyData::Dihedral { nu, .. } = family_data(&g) else { unreachable!() };
    let len = hj_expand(n, q)?.len();
    let mut z = vec![1, 1];
    z.extend((0..len).map(|i| if i < nu { 2 } else { 1 }));
    Ok(z)
}

/// Exhaustive minimality check: no single coefficient can be lowered.
pub fn is_minimal_cycle(m: &[Vec<i64>], z: &[u64]) -> bool {
    (0..z.len()).all(|i| {
        if z[i] <= 1 {
            return true;
        }
        let mut w = z.to_vec();
        w[i] -= 1;
        pairings(m, &w).iter().any(|&x| x > 0)
    })
}
