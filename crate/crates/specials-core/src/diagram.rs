//! Extended Dynkin diagrams underlying the AR quivers, with a fixed node numbering.
//!
//! Node 0 is always the extending node carrying R. Numbering:
//!
//! * D̃_{q+2}: 0 = e, 1 = e' (the other leaf at R's fork), 2..=q = chain c₁..c_{q−1},
//!   q+1 / q+2 = the two leaves at the far fork.
//! * Ẽ₆: 0 = leaf of arm B (R), 1 = middle of arm B, 2 = centre, 3/4 = middle/leaf
//!   of arm A, 5/6 = middle/leaf of arm C.
//! * Ẽ₇: the long arm 0..=6 (centre 3) and the short arm 7.
//! * Ẽ₈: the long arm 0..=7 (centre 5) and the short arm 8.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagram {
    pub name: String,
    pub labels: Vec<String>,
    pub marks: Vec<u32>,
    pub edges: Vec<(usize, usize)>,
    /// Layout for text rendering: per row, the node drawn at even and at odd
    /// half-steps from R.
    #[serde(skip)]
    pub rows: Vec<[Option<usize>; 2]>,
}

impl Diagram {
    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }

    pub fn neighbours(&self, x: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(u, v)| {
                if u == x {
                    Some(v)
                } else if v == x {
                    Some(u)
                } else {
                    None
                }
            })
            .collect()
    }

    /// 2·mark(v) = Σ marks of neighbours, at every node.
    pub fn satisfies_mark_equation(&self) -> bool {
        (0..self.len()).all(|v| {
            2 * self.marks[v] == self.neighbours(v).iter().map(|&u| self.marks[u]).sum::<u32>()
        })
    }

    /// Bipartite colouring with the extending node even.
    pub fn parity(&self) -> Vec<u8> {
        let dist = self.distances_from(0);
        dist.iter().map(|&d| (d % 2) as u8).collect()
    }

    pub fn distances_from(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for y in self.neighbours(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Whether `perm` is a graph automorphism.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let mut seen = vec![false; self.len()];
        for &p in perm {
            if p >= self.len() || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        self.edges.iter().all(|&(u, v)| {
            self.edges
                .iter()
                .any(|&(a, b)| (a, b) == (perm[u], perm[v]) || (b, a) == (perm[u], perm[v]))
        }) && (0..self.len()).all(|x| self.marks[perm[x]] == self.marks[x])
    }

    /// Node with the largest mark; ties broken by id.
    pub fn centre(&self) -> usize {
        (0..self.len()).max_by_key(|&x| (self.marks[x], usize::MAX - x)).unwrap()
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// D̃_{q+2} for q ≥ 2.
pub fn d_tilde(q: usize) -> Diagram {
    assert!(q >= 2);
    let n = q + 3;
    let (wp, wm) = (q + 1, q + 2);
    let mut marks = vec![2; n];
    for leaf in [0, 1, wp, wm] {
        marks[leaf] = 1;
    }
    let mut edges = vec![(0, 2), (1, 2)];
    for k in 2..q {
        edges.push((k, k + 1));
    }
    edges.push((q, wp));
    edges.push((q, wm));
    let mut names = vec!["e".to_string(), "e'".to_string()];
    names.extend((1..q).map(|k| format!("c{k}")));
    names.push("w+".into());
    names.push("w-".into());
    let mut rows: Vec<[Option<usize>; 2]> = Vec::new();
    if q == 2 {
        rows.extend([[Some(0), None], [Some(1), None], [None, Some(2)], [Some(wp), None], [Some(wm), None]]);
    } else {
        rows.push([Some(0), None]);
        rows.push([Some(1), Some(2)]);
        for k in 2..q - 1 {
            let mut row = [None, None];
            row[k % 2] = Some(k + 1);
            rows.push(row);
        }
        let mut last = [None, None];
        last[(q - 1) % 2] = Some(q);
        last[q % 2] = Some(wp);
        rows.push(last);
        let mut tail = [None, None];
        tail[q % 2] = Some(wm);
        rows.push(tail);
    }
    Diagram { name: format!("D~{}", q + 2), labels: names, marks, edges, rows }
}

pub fn e6_tilde() -> Diagram {
    Diagram {
        name: "E~6".into(),
        labels: labels(&["b1", "b2", "c", "a2", "a1", "c2", "c1"]),
        marks: vec![1, 2, 3, 2, 1, 2, 1],
        edges: vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)],
        rows: vec![
            [Some(4), None],
            [None, Some(3)],
            [Some(2), Some(1)],
            [Some(0), Some(5)],
            [Some(6), None],
        ],
    }
}

pub fn e7_tilde() -> Diagram {
    Diagram {
        name: "E~7".into(),
        labels: labels(&["x1", "x2", "x3", "c", "y3", "y2", "y1", "z"]),
        marks: vec![1, 2, 3, 4, 3, 2, 1, 2],
        edges: vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)],
        rows: vec![
            [Some(6), None],
            [None, Some(5)],
            [Some(4), None],
            [Some(7), Some(3)],
            [Some(2), None],
            [None, Some(1)],
            [Some(0), None],
        ],
    }
}

pub fn e8_tilde() -> Diagram {
    Diagram {
        name: "E~8".into(),
        labels: labels(&["x1", "x2", "x3", "x4", "x5", "c", "y2", "y1", "z"]),
        marks: vec![1, 2, 3, 4, 5, 6, 4, 2, 3],
        edges: vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)],
        rows: vec![
            [None, Some(7)],
            [Some(6), None],
            [Some(8), Some(5)],
            [Some(4), None],
            [None, Some(3)],
            [Some(2), None],
            [None, Some(1)],
            [Some(0), None],
        ],
    }
}

/// Order-3 rotation of the arms of Ẽ₆ used to glue T(m), m ≡ 3 (mod 6):
/// arm C ↦ B ↦ A ↦ C.
pub const E6_ROTATION: [usize; 7] = [4, 3, 2, 5, 6, 1, 0];
