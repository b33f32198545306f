//! Search for root configurations with a prescribed dual graph.

use std::collections::VecDeque;

use super::{graphs_isomorphic, DualGraph, NodeColor, SurfaceConfig};
use crate::lattice::{DivisorClass, PicLattice};
use crate::rootsys::enumerate_roots;

struct Search<'a> {
    lat: &'a PicLattice,
    roots: &'a [DivisorClass],
    pairing: Vec<Vec<i64>>,
    order: Vec<usize>,
    circle_adj: Vec<Vec<bool>>,
    fix_first: bool,
    visit: &'a mut dyn FnMut(SurfaceConfig) -> bool,
}

impl Search<'_> {
    /// Place circle `order[k]`; returns `true` once `visit` asks to stop.
    fn run(&mut self, k: usize, chosen: &mut Vec<usize>) -> bool {
        if k == self.order.len() {
            let mut by_node = vec![0; k];
            for (pos, &v) in self.order.iter().enumerate() {
                by_node[v] = chosen[pos];
            }
            let classes = by_node.iter().map(|&i| self.roots[i].clone()).collect();
            return match SurfaceConfig::new(self.lat.clone(), classes) {
                Ok(cfg) => (self.visit)(cfg),
                Err(_) => false,
            };
        }
        let v = self.order[k];
        let range: Vec<usize> = if k == 0 && self.fix_first {
            vec![self
                .roots
                .iter()
                .position(|r| r.is_lex_positive())
                .expect("roots exist")]
        } else {
            (0..self.roots.len()).collect()
        };
        for c in range {
            if chosen.contains(&c) {
                continue;
            }
            let fits = self.order[..k]
                .iter()
                .zip(chosen.iter())
                .all(|(&u, &cu)| self.pairing[c][cu] == i64::from(self.circle_adj[v][u]));
            if !fits {
                continue;
            }
            chosen.push(c);
            if self.run(k + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Visit every configuration whose intersection graph is the circle part of
/// `target`, with roots listed in the order of the circle nodes. For lattices
/// whose Weyl group is transitive on roots the first circle is pinned to one
/// root, which still meets every orbit. Stops early when `visit` returns true.
fn for_each_embedding(
    lat: &PicLattice,
    target: &DualGraph,
    visit: &mut dyn FnMut(SurfaceConfig) -> bool,
) {
    let roots = enumerate_roots(lat).roots().to_vec();
    let circles: Vec<usize> = (0..target.nodes().len())
        .filter(|&i| target.nodes()[i] == NodeColor::Circle)
        .collect();
    let m = circles.len();
    if m == 0 {
        visit(SurfaceConfig::smooth(lat.clone()));
        return;
    }
    if roots.is_empty() {
        return;
    }
    let idx = |node: usize| circles.iter().position(|&c| c == node);
    let mut circle_adj = vec![vec![false; m]; m];
    for &(a, b, _) in target.edges() {
        if let (Some(i), Some(j)) = (idx(a), idx(b)) {
            circle_adj[i][j] = true;
            circle_adj[j][i] = true;
        }
    }
    // breadth-first inside each component so every new circle is pinned by
    // an already placed neighbour
    let mut order = Vec::new();
    let mut seen = vec![false; m];
    for s in 0..m {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for w in 0..m {
                if circle_adj[v][w] && !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let pairing = roots
        .iter()
        .map(|a| {
            roots
                .iter()
                .map(|b| lat.pair(a, b).expect("same lattice"))
                .collect()
        })
        .collect();
    // W(E_n) is transitive on roots for n >= 4 (A4, D5, E6, E7, E8)
    let fix_first = lat.is_blowup() && lat.rank() >= 5;
    let mut search = Search {
        lat,
        roots: &roots,
        pairing,
        order,
        circle_adj,
        fix_first,
        visit,
    };
    search.run(0, &mut Vec::new());
}

/// A configuration on `lat` whose dual graph is isomorphic to `target`, with
/// the simple roots ordered like the circle nodes of `target`.
pub fn realize_graph(lat: &PicLattice, target: &DualGraph) -> Option<SurfaceConfig> {
    let bullets = target.count(NodeColor::Bullet);
    let mut found = None;
    for_each_embedding(lat, target, &mut |cfg| {
        if cfg.num_lines() == bullets && graphs_isomorphic(&cfg.dual_graph(), target) {
            found = Some(cfg);
            return true;
        }
        false
    });
    found
}

/// Every dual graph, up to isomorphism, of configurations whose root part is
/// the circle part of `target`.
pub fn realizable_graphs(lat: &PicLattice, target: &DualGraph) -> Vec<DualGraph> {
    let mut graphs: Vec<DualGraph> = Vec::new();
    for_each_embedding(lat, target, &mut |cfg| {
        let g = cfg.dual_graph();
        if !graphs.iter().any(|h| graphs_isomorphic(h, &g)) {
            graphs.push(g);
        }
        false
    });
    graphs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{blowup_of_p2, hirzebruch};
    use NodeColor::{Bullet, Circle};

    #[test]
    fn degree_six_a1_graphs() {
        let lat = blowup_of_p2(3).unwrap();
        let three = DualGraph::new(
            vec![Circle, Bullet, Bullet, Bullet],
            vec![(0, 1, 1), (0, 2, 1), (0, 3, 1)],
        )
        .unwrap();
        let cfg = realize_graph(&lat, &three).unwrap();
        assert_eq!(cfg.num_lines(), 3);
        let target = DualGraph::new(vec![Circle], vec![]).unwrap();
        let mut counts: Vec<usize> = realizable_graphs(&lat, &target)
            .iter()
            .map(|g| g.count(Bullet))
            .collect();
        counts.sort();
        assert_eq!(counts, vec![3, 4]);
    }

    #[test]
    fn impossible_graph() {
        let lat = blowup_of_p2(2).unwrap();
        let tri = DualGraph::new(
            vec![Circle, Bullet, Bullet],
            vec![(0, 1, 1), (1, 2, 1), (0, 2, 1)],
        )
        .unwrap();
        assert!(realize_graph(&lat, &tri).is_none());
        let cone = DualGraph::new(vec![Circle], vec![]).unwrap();
        assert!(realize_graph(&hirzebruch(2).unwrap(), &cone).is_some());
        assert!(realize_graph(&blowup_of_p2(1).unwrap(), &cone).is_none());
    }
}
