use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::CouplingGraph;
use crate::error::{Error, Result};

/// A rooted tree in the coupling graph spanning a set of terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerTree {
    pub root: usize,
    /// child → parent for every non-root tree vertex.
    pub parent: BTreeMap<usize, usize>,
    pub terminals: BTreeSet<usize>,
    /// `(parent, child)` edges, deepest first; siblings by ascending child.
    pub bottom_up: Vec<(usize, usize)>,
}

impl SteinerTree {
    pub fn vertices(&self) -> BTreeSet<usize> {
        let mut v: BTreeSet<usize> = self.parent.keys().copied().collect();
        v.insert(self.root);
        v
    }

    /// Tree vertices that are not terminals.
    pub fn steiner_nodes(&self) -> BTreeSet<usize> {
        self.vertices()
            .difference(&self.terminals)
            .copied()
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        self.parent.len()
    }
}

impl CouplingGraph {
    /// Approximate Steiner tree in the subgraph induced by `alive`.
    ///
    /// Starting from `root`, the terminal closest to the current tree (ties to
    /// the lower index) is attached along a shortest alive path until every
    /// terminal is covered. `root` is always treated as a terminal.
    pub fn steiner_tree(
        &self,
        alive: &[bool],
        terminals: &BTreeSet<usize>,
        root: usize,
    ) -> Result<SteinerTree> {
        let n = self.num_qubits();
        assert_eq!(alive.len(), n, "alive mask has the wrong length");
        for &t in terminals.iter().chain(std::iter::once(&root)) {
            if t >= n || !alive[t] {
                return Err(Error::NotAlive(t));
            }
        }
        let mut terminals = terminals.clone();
        terminals.insert(root);

        let mut in_tree = vec![false; n];
        in_tree[root] = true;
        let mut parent = BTreeMap::new();
        let mut pending: BTreeSet<usize> =
            terminals.iter().copied().filter(|&t| t != root).collect();

        let mut dist = vec![u32::MAX; n];
        let mut pred = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        while !pending.is_empty() {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            queue.clear();
            for v in (0..n).filter(|&v| in_tree[v]) {
                dist[v] = 0;
                queue.push_back(v);
            }
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if alive[w] && dist[w] == u32::MAX {
                        dist[w] = dist[v] + 1;
                        pred[w] = v;
                        queue.push_back(w);
                    }
                }
            }
            let next = pending
                .iter()
                .copied()
                .min_by_key(|&t| (dist[t], t))
                .expect("pending is non-empty");
            if dist[next] == u32::MAX {
                return Err(Error::Disconnected);
            }
            let mut v = next;
            while !in_tree[v] {
                in_tree[v] = true;
                parent.insert(v, pred[v]);
                pending.remove(&v);
                v = pred[v];
            }
        }

        let depth = |mut v: usize| {
            let mut d = 0usize;
            while let Some(&p) = parent.get(&v) {
                v = p;
                d += 1;
            }
            d
        };
        let mut bottom_up: Vec<(usize, usize)> = parent.iter().map(|(&c, &p)| (p, c)).collect();
        bottom_up.sort_by_key(|&(_, c)| (std::cmp::Reverse(depth(c)), c));

        Ok(SteinerTree {
            root,
            parent,
            terminals,
            bottom_up,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn line_uses_middle_as_steiner_node() {
        let g = CouplingGraph::line(3).unwrap();
        let t = g.steiner_tree(&[true; 3], &set(&[0, 2]), 0).unwrap();
        assert_eq!(t.vertices(), set(&[0, 1, 2]));
        assert_eq!(t.steiner_nodes(), set(&[1]));
        assert_eq!(t.bottom_up, vec![(1, 2), (0, 1)]);
    }

    #[test]
    fn root_only() {
        let g = CouplingGraph::load("quito").unwrap();
        let t = g.steiner_tree(&[true; 5], &set(&[3]), 3).unwrap();
        assert_eq!(t.vertices(), set(&[3]));
        assert!(t.bottom_up.is_empty());
    }

    #[test]
    fn quito_path() {
        let g = CouplingGraph::load("quito").unwrap();
        let t = g.steiner_tree(&[true; 5], &set(&[0, 4]), 0).unwrap();
        assert_eq!(t.steiner_nodes(), set(&[1, 3]));
        assert_eq!(t.bottom_up, vec![(3, 4), (1, 3), (0, 1)]);
    }

    #[test]
    fn respects_alive_mask() {
        // 4-cycle 0-1-2-3-0 with 1 removed: 0 reaches 2 through 3
        let g = CouplingGraph::new("ring", 4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let t = g
            .steiner_tree(&[true, false, true, true], &set(&[0, 2]), 0)
            .unwrap();
        assert_eq!(t.steiner_nodes(), set(&[3]));
        assert_eq!(
            g.steiner_tree(&[true, false, true, true], &set(&[1]), 0),
            Err(Error::NotAlive(1))
        );
    }

    #[test]
    fn sibling_order_is_ascending() {
        let star = CouplingGraph::new("star", 4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = star.steiner_tree(&[true; 4], &set(&[1, 2, 3]), 1).unwrap();
        assert_eq!(t.bottom_up, vec![(0, 2), (0, 3), (1, 0)]);
    }

    fn arb_instance() -> impl Strategy<Value = (CouplingGraph, BTreeSet<usize>, usize)> {
        super::super::graph::tests::arb_connected_graph(12).prop_flat_map(|g| {
            let n = g.num_qubits();
            (
                Just(g),
                proptest::collection::btree_set(0..n, 1..=n),
                any::<proptest::sample::Index>(),
            )
                .prop_map(|(g, terms, idx)| {
                    let root = *terms.iter().nth(idx.index(terms.len())).unwrap();
                    (g, terms, root)
                })
        })
    }

    proptest! {
        #[test]
        fn tree_is_valid((g, terms, root) in arb_instance()) {
            let n = g.num_qubits();
            let t = g.steiner_tree(&vec![true; n], &terms, root).unwrap();
            let verts = t.vertices();
            prop_assert!(terms.is_subset(&verts));
            for (&c, &p) in &t.parent {
                prop_assert!(g.has_edge(c, p));
            }
            prop_assert_eq!(t.bottom_up.len(), t.parent.len());
            // every child edge precedes the edge to its own parent
            let pos: BTreeMap<usize, usize> =
                t.bottom_up.iter().enumerate().map(|(i, &(_, c))| (c, i)).collect();
            for (i, &(p, _)) in t.bottom_up.iter().enumerate() {
                if p != t.root {
                    prop_assert!(pos[&p] > i);
                }
            }
            // leaves are terminals
            for v in &verts {
                let is_leaf = !t.parent.values().any(|p| p == v);
                if is_leaf {
                    prop_assert!(t.terminals.contains(v));
                }
            }
        }

        #[test]
        fn two_terminal_tree_is_a_shortest_path((g, _, _) in arb_instance(), a in 0usize..12, b in 0usize..12) {
            let n = g.num_qubits();
            prop_assume!(a < n && b < n);
            let t = g.steiner_tree(&vec![true; n], &set(&[a, b]), a).unwrap();
            prop_assert_eq!(t.num_edges() as u32, g.dist(a, b));
        }
    }
}
