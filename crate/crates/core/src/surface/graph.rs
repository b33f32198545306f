//! Dual graphs of negative curves: circles for (-2)-curves, bullets for
//! (-1)-curves, edge multiplicity equal to the intersection number.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeColor {
    Circle,
    Bullet,
}

/// Node ids are indices into `nodes`. Edges are stored as `(i, j, mult)` with
/// `i < j`, sorted, one entry per pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct DualGraph {
    nodes: Vec<NodeColor>,
    edges: Vec<(usize, usize, u32)>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    nodes: Vec<NodeColor>,
    edges: Vec<(usize, usize, u32)>,
}

impl TryFrom<RawGraph> for DualGraph {
    type Error = crate::Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        DualGraph::new(raw.nodes, raw.edges)
    }
}

impl From<DualGraph> for RawGraph {
    fn from(g: DualGraph) -> Self {
        RawGraph {
            nodes: g.nodes,
            edges: g.edges,
        }
    }
}

impl DualGraph {
    pub fn new(nodes: Vec<NodeColor>, edges: Vec<(usize, usize, u32)>) -> Result<Self> {
        let mut canon = BTreeMap::new();
        for (a, b, m) in edges {
            if a == b {
                return invalid(format!("self-loop at node {a}"));
            }
            if a >= nodes.len() || b >= nodes.len() {
                return invalid(format!("edge ({a}, {b}) out of range"));
            }
            if m == 0 {
                return invalid(format!("edge ({a}, {b}) has multiplicity 0"));
            }
            if canon.insert((a.min(b), a.max(b)), m).is_some() {
                return invalid(format!("edge ({a}, {b}) listed twice"));
            }
        }
        Ok(DualGraph {
            nodes,
            edges: canon.into_iter().map(|((a, b), m)| (a, b, m)).collect(),
        })
    }

    pub fn nodes(&self) -> &[NodeColor] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    pub fn count(&self, color: NodeColor) -> usize {
        self.nodes.iter().filter(|&&c| c == color).count()
    }

    fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.nodes.len();
        let mut m = vec![vec![0; n]; n];
        for &(a, b, w) in &self.edges {
            m[a][b] = w;
            m[b][a] = w;
        }
        m
    }

    /// Colour refinement until the partition is stable. Labels are dense
    /// class ids, comparable only within one call.
    fn refine(&self, adj: &[Vec<u32>]) -> Vec<usize> {
        let n = self.nodes.len();
        let mut labels: Vec<usize> = self.nodes.iter().map(|&c| c as usize).collect();
        let mut classes = usize::MAX;
        loop {
            let sigs: Vec<(usize, Vec<(u32, usize)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(u32, usize)> = (0..n)
                        .filter(|&u| adj[v][u] > 0)
                        .map(|u| (adj[v][u], labels[u]))
                        .collect();
                    nb.sort_unstable();
                    (labels[v], nb)
                })
                .collect();
            let mut uniq = sigs.clone();
            uniq.sort();
            uniq.dedup();
            labels = sigs
                .iter()
                .map(|s| uniq.binary_search(s).unwrap())
                .collect();
            if uniq.len() == classes {
                return labels;
            }
            classes = uniq.len();
        }
    }

    /// Isomorphism-invariant fingerprint (equal for isomorphic graphs, not a
    /// complete invariant): hashed colour refinement, three rounds.
    pub fn certificate(&self) -> String {
        use std::hash::{DefaultHasher, Hash, Hasher};
        let adj = self.adjacency();
        let n = self.nodes.len();
        let mut sig: Vec<u64> = self.nodes.iter().map(|&c| c as u64).collect();
        let mut parts = Vec::new();
        for _ in 0..3 {
            sig = (0..n)
                .map(|v| {
                    let mut nb: Vec<(u32, u64)> = (0..n)
                        .filter(|&u| adj[v][u] > 0)
                        .map(|u| (adj[v][u], sig[u]))
                        .collect();
                    nb.sort_unstable();
                    let mut h = DefaultHasher::new();
                    (sig[v], nb).hash(&mut h);
                    h.finish()
                })
                .collect();
            let mut sorted = sig.clone();
            sorted.sort_unstable();
            let mut h = DefaultHasher::new();
            sorted.hash(&mut h);
            parts.push(format!("{:016x}", h.finish()));
        }
        format!(
            "{}c{}b{}e:{}",
            self.count(NodeColor::Circle),
            self.count(NodeColor::Bullet),
            self.edges.len(),
            parts.join(":")
        )
    }

    /// Colour- and multiplicity-preserving isomorphism test by backtracking.
    pub fn is_isomorphic(&self, other: &DualGraph) -> bool {
        let n = self.nodes.len();
        if n != other.nodes.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut m1: Vec<u32> = self.edges.iter().map(|e| e.2).collect();
        let mut m2: Vec<u32> = other.edges.iter().map(|e| e.2).collect();
        m1.sort_unstable();
        m2.sort_unstable();
        if m1 != m2 {
            return false;
        }
        let (a1, a2) = (self.adjacency(), other.adjacency());
        // refine both graphs jointly so labels are comparable
        let joint = DualGraph {
            nodes: self.nodes.iter().chain(&other.nodes).copied().collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(a, b, w)| (a + n, b + n, w)))
                .collect(),
        };
        let labels = joint.refine(&joint.adjacency());
        let (l1, l2) = labels.split_at(n);
        let mut s1 = l1.to_vec();
        let mut s2 = l2.to_vec();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return false;
        }
        // most constrained nodes first
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| {
            let class = l1.iter().filter(|l| **l == l1[v]).count();
            (
                class,
                std::cmp::Reverse(a1[v].iter().filter(|&&w| w > 0).count()),
            )
        });
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        #[allow(clippy::too_many_arguments)]
        fn search(
            k: usize,
            order: &[usize],
            l1: &[usize],
            l2: &[usize],
            a1: &[Vec<u32>],
            a2: &[Vec<u32>],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            let Some(&v) = order.get(k) else { return true };
            for w in 0..l2.len() {
                if used[w] || l1[v] != l2[w] {
                    continue;
                }
                let consistent = order[..k].iter().all(|&u| a1[v][u] == a2[w][map[u]]);
                if !consistent {
                    continue;
                }
                map[v] = w;
                used[w] = true;
                if search(k + 1, order, l1, l2, a1, a2, map, used) {
                    return true;
                }
                used[w] = false;
            }
            map[v] = usize::MAX;
            false
        }
        search(0, &order, l1, l2, &a1, &a2, &mut map, &mut used)
    }

    /// Graphviz rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{name}\" {{");
        for (i, c) in self.nodes.iter().enumerate() {
            let shape = match c {
                NodeColor::Circle => "circle",
                NodeColor::Bullet => "point",
            };
            let label = match c {
                NodeColor::Circle => format!("R{i}"),
                NodeColor::Bullet => String::new(),
            };
            let _ = writeln!(s, "  n{i} [shape={shape}, label=\"{label}\"];");
        }
        for &(a, b, m) in &self.edges {
            if m == 1 {
                let _ = writeln!(s, "  n{a} -- n{b};");
            } else {
                let _ = writeln!(s, "  n{a} -- n{b} [label=\"{m}\"];");
            }
        }
        s.push_str("}\n");
        s
    }

    /// Canonical JSON form used by the catalog graph files.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph serializes")
    }
}

/// Free-function form of [`DualGraph::is_isomorphic`].
pub fn graphs_isomorphic(g1: &DualGraph, g2: &DualGraph) -> bool {
    g1.is_isomorphic(g2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use NodeColor::{Bullet, Circle};

    fn path_cbb() -> DualGraph {
        DualGraph::new(vec![Circle, Bullet, Bullet], vec![(0, 1, 1), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn isomorphism_examples() {
        let g = path_cbb();
        assert!(graphs_isomorphic(&g, &g));
        let rev = DualGraph::new(vec![Bullet, Bullet, Circle], vec![(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(graphs_isomorphic(&g, &rev));
        let tri = DualGraph::new(
            vec![Circle, Bullet, Bullet],
            vec![(0, 1, 1), (1, 2, 1), (0, 2, 1)],
        )
        .unwrap();
        assert!(!graphs_isomorphic(&g, &tri));
        // circle in the middle is a different graph
        let mid = DualGraph::new(vec![Bullet, Circle, Bullet], vec![(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(!graphs_isomorphic(&g, &mid));
        let double =
            DualGraph::new(vec![Circle, Bullet, Bullet], vec![(0, 1, 2), (1, 2, 1)]).unwrap();
        assert!(!graphs_isomorphic(&g, &double));
    }

    #[test]
    fn validation() {
        assert!(DualGraph::new(vec![Circle], vec![(0, 0, 1)]).is_err());
        assert!(DualGraph::new(vec![Circle], vec![(0, 1, 1)]).is_err());
        assert!(DualGraph::new(vec![Circle, Bullet], vec![(0, 1, 0)]).is_err());
        assert!(DualGraph::new(vec![Circle, Bullet], vec![(0, 1, 1), (1, 0, 1)]).is_err());
    }

    #[test]
    fn hexagon_vs_two_triangles() {
        let hex = DualGraph::new(
            vec![Bullet; 6],
            (0..6).map(|i| (i, (i + 1) % 6, 1)).collect(),
        )
        .unwrap();
        let tris = DualGraph::new(
            vec![Bullet; 6],
            vec![
                (0, 1, 1),
                (1, 2, 1),
                (0, 2, 1),
                (3, 4, 1),
                (4, 5, 1),
                (3, 5, 1),
            ],
        )
        .unwrap();
        assert!(!graphs_isomorphic(&hex, &tris));
        assert_eq!(hex.certificate(), hex.certificate());
    }

    #[test]
    fn json_and_dot() {
        let g = DualGraph::new(vec![Circle, Bullet], vec![(1, 0, 2)]).unwrap();
        let j = g.to_json();
        assert_eq!(
            j,
            serde_json::json!({"nodes": ["circle", "bullet"], "edges": [[0, 1, 2]]})
        );
        let back: DualGraph = serde_json::from_value(j).unwrap();
        assert_eq!(back, g);
        let dot = g.to_dot("x");
        assert!(dot.contains("shape=circle"));
        assert!(dot.contains("shape=point"));
        assert!(dot.contains("label=\"2\""));
    }

    fn random_graph() -> impl Strategy<Value = DualGraph> {
        (2usize..10).prop_flat_map(|n| {
            (
                proptest::collection::vec(prop_oneof![Just(Circle), Just(Bullet)], n),
                proptest::collection::vec((0..n, 0..n, 1u32..3), 0..2 * n),
            )
                .prop_map(|(nodes, raw)| {
                    let mut seen = std::collections::BTreeSet::new();
                    let edges = raw
                        .into_iter()
                        .filter(|&(a, b, _)| a != b && seen.insert((a.min(b), a.max(b))))
                        .collect();
                    DualGraph::new(nodes, edges).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn relabeling_preserves_isomorphism(g in random_graph(), seed in any::<u64>()) {
            let n = g.nodes().len();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let mut nodes = vec![Circle; n];
            for (i, &p) in perm.iter().enumerate() {
                nodes[p] = g.nodes()[i];
            }
            let edges = g.edges().iter().map(|&(a, b, m)| (perm[a], perm[b], m)).collect();
            let h = DualGraph::new(nodes, edges).unwrap();
            prop_assert!(graphs_isomorphic(&g, &h));
            prop_assert_eq!(g.certificate(), h.certificate());
        }

        #[test]
        fn adding_an_edge_breaks_isomorphism(g in random_graph()) {
            let n = g.nodes().len();
            let free = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .find(|&(a, b)| !g.edges().iter().any(|e| e.0 == a && e.1 == b));
            if let Some((a, b)) = free {
                let mut edges = g.edges().to_vec();
                edges.push((a, b, 1));
                let h = DualGraph::new(g.nodes().to_vec(), edges).unwrap();
                prop_assert!(!graphs_isomorphic(&g, &h));
            }
        }
    }
}
