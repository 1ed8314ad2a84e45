//! Finite AR quivers as quotients of ZQ̃ by a power of τ composed with a twist.
//!
//! A vertex of ZQ̃ is a pair (t, x) of a column and a diagram node. Positions are
//! also addressed by their height `h`: the number of arrows on a path from R,
//! so that every arrow raises h by one and τ lowers it by two.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::diagram::{d_tilde, e6_tilde, e7_tilde, e8_tilde, Diagram, E6_ROTATION};
use crate::error::{Error, Result};
use crate::group::{family_data, FamilyData, GroupParams};
use crate::hj::hj_expand;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub id: usize,
    pub node: usize,
    pub column: usize,
    pub rank: u32,
}

/// Orientation of Q̃ used for knitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Every edge runs from the even to the odd colour class (R's node even).
    #[default]
    Bipartite,
    /// Every edge points away from the node with the largest mark.
    Radial,
}

/// Which nodes the D-type gluing swaps when n−q is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DTwist {
    /// Both pairs of leaves: the gluing is tensoring by a non-trivial
    /// one-dimensional character, which fixes no rank-one vertex.
    #[default]
    BothForks,
    /// Only the two leaves at R's fork.
    RootForkOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuildOptions {
    pub orientation: Orientation,
    pub d_twist: DTwist,
}

/// Cover data for quivers built from a diagram (every family except A).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub diagram: Diagram,
    pub period: usize,
    /// (t + period, x) is glued to (t, sigma[x]).
    pub sigma: Vec<usize>,
    /// h(t, x) = 2t + height[x].
    pub height: Vec<i64>,
}

impl Layout {
    fn normalize(&self, mut t: i64, mut x: usize) -> (usize, usize) {
        let p = self.period as i64;
        while t >= p {
            t -= p;
            x = self.sigma[x];
        }
        while t < 0 {
            t += p;
            x = self.sigma.iter().position(|&y| y == x).unwrap();
        }
        (t as usize, x)
    }

    fn id(&self, t: i64, x: usize) -> usize {
        let (c, y) = self.normalize(t, x);
        c * self.diagram.len() + y
    }

    /// The vertex at height h on node x, if the parity matches.
    pub fn vertex_at(&self, h: i64, node: usize) -> Option<usize> {
        if node >= self.diagram.len() {
            return None;
        }
        let d = h - self.height[node];
        if d.rem_euclid(2) != 0 {
            return None;
        }
        Some(self.id(d.div_euclid(2), node))
    }

    /// Height of the representative in column `column`.
    pub fn height_of(&self, v: &Vertex) -> i64 {
        2 * v.column as i64 + self.height[v.node]
    }
}

#[derive(Debug, Clone)]
pub struct TranslationQuiver {
    pub group: Option<GroupParams>,
    pub vertices: Vec<Vertex>,
    /// Outgoing arrows with multiplicity, sorted by target.
    pub out: Vec<Vec<(usize, u32)>>,
    /// Incoming arrows with multiplicity, sorted by source.
    pub inc: Vec<Vec<(usize, u32)>>,
    pub tau: Vec<usize>,
    pub tau_inv: Vec<usize>,
    pub r: usize,
    pub omega: usize,
    pub layout: Option<Layout>,
    pub names: BTreeMap<String, usize>,
}

impl TranslationQuiver {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn rank(&self, v: usize) -> u32 {
        self.vertices[v].rank
    }

    pub fn mult(&self, from: usize, to: usize) -> u32 {
        self.out[from]
            .iter()
            .find(|&&(y, _)| y == to)
            .map_or(0, |&(_, m)| m)
    }

    pub fn arrow_count(&self) -> u32 {
        self.out.iter().flatten().map(|&(_, m)| m).sum()
    }

    fn from_arrows(
        group: Option<GroupParams>,
        vertices: Vec<Vertex>,
        arrows: impl IntoIterator<Item = (usize, usize)>,
        tau_inv: Vec<usize>,
        r: usize,
        layout: Option<Layout>,
    ) -> Self {
        let n = vertices.len();
        let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for a in arrows {
            *counts.entry(a).or_default() += 1;
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (&(x, y), &m) in &counts {
            out[x].push((y, m));
            inc[y].push((x, m));
        }
        for list in inc.iter_mut() {
            list.sort_unstable();
        }
        let mut tau = vec![0; n];
        for (v, &w) in tau_inv.iter().enumerate() {
            tau[w] = v;
        }
        let omega = tau[r];
        TranslationQuiver { group, vertices, out, inc, tau, tau_inv, r, omega, layout, names: BTreeMap::new() }
    }

    /// Mesh relation θ(x) = θ⁻(τx) at every vertex.
    pub fn mesh_violations(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.inc[x] != self.out[self.tau[x]])
            .collect()
    }

    /// Arrows X→Y and Y→τ⁻X agree in multiplicity.
    pub fn translation_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for x in 0..self.len() {
            for &(y, m) in &self.out[x] {
                if self.mult(y, self.tau_inv[x]) != m {
                    bad.push((x, y));
                }
            }
        }
        bad
    }

    pub fn sum_rank_squares(&self) -> u64 {
        self.vertices.iter().map(|v| (v.rank as u64).pow(2)).sum()
    }

    /// The vertex at height h on diagram node `node` (not available for type A).
    pub fn at(&self, h: i64, node: usize) -> Result<usize> {
        let layout = self
            .layout
            .as_ref()
            .ok_or_else(|| Error::Domain("positions need a diagram layout".into()))?;
        layout
            .vertex_at(h, node)
            .ok_or_else(|| Error::Domain(format!("no vertex at height {h} on node {node}")))
    }

    pub fn name(&self, name: &str) -> Result<usize> {
        self.names.get(name).copied().ok_or_else(|| Error::UndefinedName {
            name: name.into(),
            group: self.group.map_or("this quiver".into(), |g| g.to_string()),
        })
    }

    /// Reverse lookup: first name attached to a vertex.
    pub fn name_of(&self, v: usize) -> Option<&str> {
        self.names
            .iter()
            .find(|&(k, &w)| w == v && k != "omega")
            .map(|(k, _)| k.as_str())
    }

    /// `label@h` for quivers with a layout, `S<j>` for the cyclic model.
    pub fn position_label(&self, v: usize) -> String {
        match &self.layout {
            Some(l) => {
                let vx = &self.vertices[v];
                format!("{}@{}", l.diagram.labels[vx.node], l.height_of(vx))
            }
            None => format!("S{v}"),
        }
    }

    /// Resolves a vertex reference: a numeric id, a name (`R`, `omega`, `W+`,
    /// `V3`, `A1`, `S10`, …) or a cover position `node@h` where node is a
    /// diagram label or index.
    pub fn resolve(&self, s: &str) -> Result<usize> {
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            let id: usize = s.parse().map_err(|_| Error::Syntax(format!("bad vertex id `{s}`")))?;
            if id >= self.len() {
                return Err(Error::Domain(format!("vertex {id} out of range (0..{})", self.len())));
            }
            return Ok(id);
        }
        if let Some((node, h)) = s.split_once('@') {
            let layout = self
                .layout
                .as_ref()
                .ok_or_else(|| Error::Domain(format!("`{s}`: positions need a diagram layout")))?;
            let node = match layout.diagram.labels.iter().position(|l| l == node) {
                Some(x) => x,
                None => node
                    .parse::<usize>()
                    .ok()
                    .filter(|&x| x < layout.diagram.len())
                    .ok_or_else(|| Error::Syntax(format!("unknown diagram node `{node}`")))?,
            };
            let h: i64 = h.parse().map_err(|_| Error::Syntax(format!("bad height in `{s}`")))?;
            return self.at(h, node);
        }
        self.name(s)
    }

    pub fn to_json(&self, dual: Option<&[usize]>) -> QuiverJson {
        let mut arrows = Vec::new();
        for (x, list) in self.out.iter().enumerate() {
            for &(y, mult) in list {
                arrows.push(ArrowJson { from: x, to: y, mult });
            }
        }
        QuiverJson {
            vertices: self.vertices.clone(),
            arrows,
            tau: self.tau.iter().copied().enumerate().collect(),
            r: self.r,
            omega: self.omega,
            dual: dual.map(|d| d.iter().copied().enumerate().collect()).unwrap_or_default(),
            named: self.names.clone(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ar {\n  rankdir=LR;\n  node [shape=plaintext];\n");
        for v in &self.vertices {
            let label = match self.name_of(v.id) {
                Some(n) => n.to_string(),
                None => match &self.layout {
                    Some(l) => format!("{}@{}", l.diagram.labels[v.node], l.height_of(v)),
                    None => format!("{}", v.id),
                },
            };
            s.push_str(&format!("  v{} [label=\"{label}\"];\n", v.id));
        }
        for (x, list) in self.out.iter().enumerate() {
            for &(y, m) in list {
                for _ in 0..m {
                    s.push_str(&format!("  v{x} -> v{y};\n"));
                }
            }
        }
        for v in 0..self.len() {
            s.push_str(&format!("  v{} -> v{} [style=dotted, constraint=false];\n", self.tau_inv[v], v));
        }
        s.push_str("}\n");
        s
    }

    /// Text picture: one line per diagram row, one character cell per half-step,
    /// covering one full period from R. `cell` renders each vertex.
    pub fn ascii_with(&self, cell: impl Fn(usize) -> String) -> String {
        let Some(layout) = &self.layout else {
            // Cyclic model: one row, vertices in order.
            return (0..self.len()).map(&cell).collect::<Vec<_>>().join(" ") + "\n";
        };
        let width = 2 * layout.period as i64;
        let cells: Vec<Vec<String>> = layout
            .diagram
            .rows
            .iter()
            .map(|row| {
                (0..=width)
                    .map(|h| match row[(h - layout.height[row_node(row)]).rem_euclid(2) as usize] {
                        Some(x) if (h - layout.height[x]).rem_euclid(2) == 0 => {
                            cell(layout.vertex_at(h, x).unwrap())
                        }
                        _ => String::new(),
                    })
                    .collect()
            })
            .collect();
        let w = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1).max(1);
        let mut s = String::new();
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
            s.push_str(line.join(" ").trim_end());
            s.push('\n');
        }
        s
    }

    pub fn ascii(&self) -> String {
        self.ascii_with(|v| {
            if v == self.r {
                "R".into()
            } else {
                self.vertices[v].rank.to_string()
            }
        })
    }
}

fn row_node(row: &[Option<usize>; 2]) -> usize {
    row[0].or(row[1]).unwrap()
}

#[derive(Debug, Clone, Serialize)]
pub struct ArrowJson {
    pub from: usize,
    pub to: usize,
    pub mult: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuiverJson {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<ArrowJson>,
    pub tau: BTreeMap<usize, usize>,
    #[serde(rename = "R")]
    pub r: usize,
    pub omega: usize,
    pub dual: BTreeMap<usize, usize>,
    pub named: BTreeMap<String, usize>,
}

/// Cyclic model for 1/r(1,a): arrows j→j+1, j→j+a and τ⁻j = j+1+a.
pub fn cyclic_quiver(r: u64, a: u64) -> TranslationQuiver {
    let r = r as usize;
    let a = a as usize;
    let vertices = (0..r).map(|j| Vertex { id: j, node: 0, column: j, rank: 1 }).collect();
    let arrows = (0..r).flat_map(|j| [(j, (j + 1) % r), (j, (j + a) % r)]);
    let tau_inv = (0..r).map(|j| (j + 1 + a) % r).collect();
    let mut q = TranslationQuiver::from_arrows(None, vertices, arrows, tau_inv, 0, None);
    for j in 0..r {
        q.names.insert(format!("S{j}"), j);
    }
    q
}

fn heights(d: &Diagram, orientation: Orientation) -> (Vec<(usize, usize)>, Vec<i64>) {
    let n = d.len();
    let oriented: Vec<(usize, usize)> = match orientation {
        Orientation::Bipartite => {
            let p = d.parity();
            d.edges.iter().map(|&(u, v)| if p[u] == 0 { (u, v) } else { (v, u) }).collect()
        }
        Orientation::Radial => {
            let dist = d.distances_from(d.centre());
            d.edges.iter().map(|&(u, v)| if dist[u] < dist[v] { (u, v) } else { (v, u) }).collect()
        }
    };
    let mut h = vec![i64::MIN; n];
    h[0] = 0;
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in &oriented {
            if h[u] != i64::MIN && h[v] == i64::MIN {
                h[v] = h[u] + 1;
                changed = true;
            }
            if h[v] != i64::MIN && h[u] == i64::MIN {
                h[u] = h[v] - 1;
                changed = true;
            }
        }
    }
    (oriented, h)
}

/// Knits ZQ̃ over the given orientation and glues (t + period, x) to (t, σx).
pub fn knit_quotient(
    group: Option<GroupParams>,
    diagram: Diagram,
    period: usize,
    sigma: Vec<usize>,
    orientation: Orientation,
) -> Result<TranslationQuiver> {
    if period == 0 || !diagram.is_automorphism(&sigma) {
        return Err(Error::Internal("gluing data is not a diagram automorphism".into()));
    }
    let (oriented, height) = heights(&diagram, orientation);
    if oriented.iter().any(|&(u, v)| !oriented.contains(&(sigma[u], sigma[v]))) {
        return Err(Error::Internal("twist does not preserve the orientation".into()));
    }
    let nn = diagram.len();
    let layout = Layout { diagram, period, sigma, height };
    let mut vertices = Vec::with_capacity(period * nn);
    for t in 0..period {
        for x in 0..nn {
            vertices.push(Vertex { id: t * nn + x, node: x, column: t, rank: layout.diagram.marks[x] });
        }
    }
    let mut arrows = Vec::new();
    for t in 0..period as i64 {
        for &(u, v) in &oriented {
            arrows.push((layout.id(t, u), layout.id(t, v)));
            arrows.push((layout.id(t, v), layout.id(t + 1, u)));
        }
    }
    let tau_inv = (0..period * nn)
        .map(|id| layout.id((id / nn) as i64 + 1, id % nn))
        .collect();
    let q = TranslationQuiver::from_arrows(group, vertices, arrows, tau_inv, 0, Some(layout));
    if q.tau_inv.iter().enumerate().any(|(v, &w)| q.tau[w] != v) {
        return Err(Error::Internal("τ is not a bijection".into()));
    }
    Ok(q)
}

pub fn build_ar_quiver(g: &GroupParams) -> Result<TranslationQuiver> {
    build_ar_quiver_with(g, BuildOptions::default())
}

pub fn build_ar_quiver_with(g: &GroupParams, opts: BuildOptions) -> Result<TranslationQuiver> {
    g.validate()?;
    let mut q = match *g {
        GroupParams::A { r, a } => {
            let mut q = cyclic_quiver(r, a);
            q.group = Some(*g);
            q
        }
        GroupParams::D { n, q } => {
            let qq = q as usize;
            let diagram = d_tilde(qq);
            let mut sigma: Vec<usize> = (0..diagram.len()).collect();
            if (n - q) % 2 == 0 {
                sigma.swap(0, 1);
                if opts.d_twist == DTwist::BothForks {
                    sigma.swap(qq + 1, qq + 2);
                }
            }
            knit_quotient(Some(*g), diagram, (n - q) as usize, sigma, opts.orientation)?
        }
        GroupParams::T { m } => {
            let sigma = if m % 6 == 3 { E6_ROTATION.to_vec() } else { (0..7).collect() };
            knit_quotient(Some(*g), e6_tilde(), m as usize, sigma, opts.orientation)?
        }
        GroupParams::O { m } => {
            knit_quotient(Some(*g), e7_tilde(), m as usize, (0..8).collect(), opts.orientation)?
        }
        GroupParams::I { m } => {
            knit_quotient(Some(*g), e8_tilde(), m as usize, (0..9).collect(), opts.orientation)?
        }
    };
    name_vertices(&mut q, g)?;
    Ok(q)
}

/// Positions (node, height) of the named vertices in type O.
pub const O_NAMES: [(&str, usize, i64); 7] = [
    ("D1", 6, 6),
    ("D2", 0, 12),
    ("D3", 6, 18),
    ("E1", 0, 8),
    ("E2", 0, 16),
    ("F", 6, 12),
    ("N", 0, 24),
];

/// Positions (node, height) of the named vertices in type I.
pub const I_NAMES: [(&str, usize, i64); 8] = [
    ("A1", 0, 12),
    ("A2", 0, 24),
    ("A3", 0, 36),
    ("A4", 0, 48),
    ("B1", 0, 20),
    ("B2", 0, 40),
    ("C", 0, 30),
    ("M", 0, 60),
];

fn name_vertices(q: &mut TranslationQuiver, g: &GroupParams) -> Result<()> {
    q.names.insert("R".into(), q.r);
    q.names.insert("omega".into(), q.omega);
    match *g {
        GroupParams::A { .. } => {}
        GroupParams::D { n, q: qq } => {
            let (nq, qq) = ((n - qq) as i64, qq as usize);
            for t in 1..qq {
                let v = q.at(t as i64, t + 1)?;
                q.names.insert(format!("V{t}"), v);
            }
            let wp = q.at(qq as i64, qq + 1)?;
            let wm = q.at(qq as i64, qq + 2)?;
            q.names.insert("W+".into(), wp);
            q.names.insert("W-".into(), wm);
            for t in 1..=nq {
                let v = q.at(2 * t, (t % 2) as usize)?;
                q.names.insert(format!("W{t}"), v);
            }
        }
        GroupParams::T { .. } => {}
        GroupParams::O { .. } | GroupParams::I { .. } => {
            if let FamilyData::Star { b, .. } = family_data(g) {
                if b >= 3 {
                    let table: &[(&str, usize, i64)] =
                        if matches!(g, GroupParams::O { .. }) { &O_NAMES } else { &I_NAMES };
                    for &(name, node, h) in table {
                        let v = q.at(h, node)?;
                        q.names.insert(name.into(), v);
                    }
                }
            }
        }
    }
    Ok(())
}

/// i-series of the expansion attached to a cyclic or dihedral group.
pub fn iseries(g: &GroupParams) -> Option<Vec<u64>> {
    match *g {
        GroupParams::A { r, a } => Some(hj_expand(r, a).ok()?.iseries),
        GroupParams::D { n, q } => Some(hj_expand(n, q).ok()?.iseries),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_counts() {
        for (g, n) in [
            (GroupParams::D { n: 5, q: 2 }, 15),
            (GroupParams::T { m: 3 }, 21),
            (GroupParams::A { r: 17, a: 10 }, 17),
            (GroupParams::O { m: 5 }, 40),
            (GroupParams::I { m: 7 }, 63),
        ] {
            let q = build_ar_quiver(&g).unwrap();
            assert_eq!(q.len(), n);
            assert!(q.mesh_violations().is_empty());
            assert!(q.translation_violations().is_empty());
            assert_eq!(q.sum_rank_squares(), g.order());
        }
    }

    #[test]
    fn cyclic_successors() {
        let q = build_ar_quiver(&GroupParams::A { r: 17, a: 10 }).unwrap();
        for j in 0..17 {
            let succ: Vec<usize> = q.out[j].iter().map(|&(y, _)| y).collect();
            let mut expect = vec![(j + 1) % 17, (j + 10) % 17];
            expect.sort();
            assert_eq!(succ, expect);
        }
    }

    #[test]
    fn gorenstein_omega_is_r() {
        for g in [GroupParams::A { r: 6, a: 5 }, GroupParams::T { m: 1 }, GroupParams::O { m: 1 }, GroupParams::I { m: 1 }] {
            let q = build_ar_quiver(&g).unwrap();
            assert_eq!(q.omega, q.r, "{g}");
        }
    }

    #[test]
    fn d_names_are_distinct_in_the_twisted_case() {
        let q = build_ar_quiver(&GroupParams::D { n: 9, q: 5 }).unwrap();
        let ws: Vec<usize> = (1..=4).map(|t| q.name(&format!("W{t}")).unwrap()).collect();
        let mut dedup = ws.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 4);
        assert!(!ws.contains(&q.r));
    }

    #[test]
    fn t3_gluing_sends_arm_c_to_r() {
        let q = build_ar_quiver(&GroupParams::T { m: 3 }).unwrap();
        assert_eq!(q.at(6, 6).unwrap(), q.r);
        assert_eq!(q.at(6, 0).unwrap(), q.at(0, 4).unwrap());
    }
}
