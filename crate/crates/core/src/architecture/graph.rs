use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::builtin;
use crate::error::{Error, Result};

const UNREACHABLE: u32 = u32::MAX;

/// On-disk coupling map: `{"name": ..., "num_qubits": n, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub name: String,
    pub num_qubits: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Undirected, connected device graph with all-pairs hop distances.
#[derive(Debug, Clone)]
pub struct CouplingGraph {
    name: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    dist: Vec<u32>,
}

impl CouplingGraph {
    pub fn new(
        name: impl Into<String>,
        num_qubits: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let name = name.into();
        if num_qubits == 0 {
            return Err(Error::InvalidGraph(format!("{name}: no vertices")));
        }
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); num_qubits];
        for &(u, v) in edges {
            if u >= num_qubits || v >= num_qubits {
                return Err(Error::InvalidGraph(format!(
                    "{name}: edge ({u}, {v}) leaves the {num_qubits}-vertex range"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("{name}: self-loop on {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidGraph(format!(
                    "{name}: duplicate edge ({}, {})",
                    key.0, key.1
                )));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        adjacency.iter_mut().for_each(|a| a.sort_unstable());
        let edges: Vec<_> = seen.into_iter().collect();
        let dist = floyd_warshall(num_qubits, &edges)?;
        Ok(Self {
            name,
            n: num_qubits,
            edges,
            adjacency,
            dist,
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::new(format!("complete-{n}"), n, &edges)
    }

    pub fn line(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(format!("line-{n}"), n, &edges)
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let edges: Vec<_> = spec.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(spec.name.clone(), spec.num_qubits, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GraphSpec = serde_json::from_str(text)
            .map_err(|e| Error::InvalidGraph(format!("malformed coupling map: {e}")))?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            name: self.name.clone(),
            num_qubits: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    /// Resolves a builtin name (`quito`, `complete-5`, `line-3`, ...) or,
    /// failing that, reads a JSON coupling map from the given path.
    pub fn load(source: &str) -> Result<Self> {
        if let Some(g) = builtin::lookup(source)? {
            return Ok(g);
        }
        let path = Path::new(source);
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            return Self::from_json(&text);
        }
        Err(Error::UnknownArchitecture(source.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.dist(u, v) == 1
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// Vertices of `alive` whose removal leaves the induced subgraph on
    /// `alive` connected. A lone vertex counts as non-cutting.
    pub fn non_cutting(&self, alive: &[bool]) -> Result<Vec<usize>> {
        assert_eq!(alive.len(), self.n, "alive mask has the wrong length");
        let Some(root) = alive.iter().position(|&a| a) else {
            return Err(Error::EmptyVertexSet);
        };
        let cut = self.articulation_points(alive, root)?;
        Ok((0..self.n).filter(|&v| alive[v] && !cut[v]).collect())
    }

    /// Tarjan's low-link articulation points on the induced subgraph, with an
    /// explicit stack.
    fn articulation_points(&self, alive: &[bool], root: usize) -> Result<Vec<bool>> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cut = vec![false; n];
        let mut timer = 0;
        let mut root_children = 0;
        // (vertex, parent, next neighbour position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
            if let Some(&w) = self.adjacency[v].get(*pos) {
                *pos += 1;
                if !alive[w] || w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        cut[parent] = true;
                    }
                }
            }
        }
        if (0..n).any(|v| alive[v] && disc[v] == usize::MAX) {
            return Err(Error::Disconnected);
        }
        cut[root] = root_children > 1;
        Ok(cut)
    }
}

/// All-pairs hop distances, row-major `n × n`.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Result<Vec<u32>> {
    let mut d = vec![UNREACHABLE; n * n];
    for v in 0..n {
        d[v * n + v] = 0;
    }
    for &(u, v) in edges {
        d[u * n + v] = 1;
        d[v * n + u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik == UNREACHABLE {
                continue;
            }
            for j in 0..n {
                let dkj = d[k * n + j];
                if dkj != UNREACHABLE && dik + dkj < d[i * n + j] {
                    d[i * n + j] = dik + dkj;
                }
            }
        }
    }
    if d.contains(&UNREACHABLE) {
        return Err(Error::Disconnected);
    }
    Ok(d)
}
