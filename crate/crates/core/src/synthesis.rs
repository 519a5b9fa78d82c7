//! Architecture-aware Clifford tableau synthesis.
//!
//! The input tableau is inverted, then reduced to the identity one pivot
//! qubit at a time by appending gates. Each pivot has its destabilizer row
//! turned into `X_p` and its stabilizer row into `Z_p`; CX cascades follow
//! Steiner trees over the vertices still alive, so every CX lands on a device
//! edge. Removing a non-cutting vertex after each round keeps the remaining
//! device connected. The collected gates implement the original tableau.
//!
//! With [`Placement::Lazy`] logical qubits start unplaced and are bound to
//! physical vertices as the pivots and Steiner trees first need them;
//! single-qubit gates on unplaced qubits are held back until the binding.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::architecture::CouplingGraph;
use crate::circuit::{Circuit, Gate, GateCounts};
use crate::error::{Error, Result};
use crate::tableau::CliffordTableau;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    /// Logical qubit `i` lives on vertex `i`.
    Identity,
    /// Bind logical qubits to vertices on first use.
    #[default]
    Lazy,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PivotRule {
    /// Minimise the estimated Steiner cost of the pivot's two rows.
    #[default]
    Heuristic,
    /// Lowest-index eligible qubit.
    FixedOrder,
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Placement::Identity => "identity",
            Placement::Lazy => "lazy",
        })
    }
}

impl FromStr for Placement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Placement::Identity),
            "lazy" => Ok(Placement::Lazy),
            other => Err(Error::Precondition(format!("unknown placement `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisConfig {
    pub placement: Placement,
    pub pivot_rule: PivotRule,
    /// Reserved; synthesis is deterministic.
    pub seed: Option<u64>,
}

impl SynthesisConfig {
    pub fn with_placement(placement: Placement) -> Self {
        Self {
            placement,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisResult {
    /// Gates on physical qubits; every CX is a coupling-graph edge.
    pub circuit: Circuit,
    /// `mapping[logical] = physical`.
    pub mapping: Vec<usize>,
    pub counts: GateCounts,
}

/// Partial bijection between logical qubits and physical vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitMapping {
    to_physical: Vec<Option<usize>>,
    to_logical: Vec<Option<usize>>,
}

impl QubitMapping {
    pub fn empty(n: usize) -> Self {
        Self {
            to_physical: vec![None; n],
            to_logical: vec![None; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            to_physical: (0..n).map(Some).collect(),
            to_logical: (0..n).map(Some).collect(),
        }
    }

    pub fn physical(&self, logical: usize) -> Option<usize> {
        self.to_physical[logical]
    }

    pub fn logical(&self, physical: usize) -> Option<usize> {
        self.to_logical[physical]
    }

    pub fn bind(&mut self, logical: usize, physical: usize) -> Result<()> {
        if self.to_physical[logical].is_some() || self.to_logical[physical].is_some() {
            return Err(Error::Precondition(format!(
                "cannot bind logical {logical} to physical {physical}: already placed"
            )));
        }
        self.to_physical[logical] = Some(physical);
        self.to_logical[physical] = Some(logical);
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.to_physical.iter().all(Option::is_some)
    }

    /// The full `logical → physical` table. Errors if any qubit is unplaced.
    pub fn to_vec(&self) -> Result<Vec<usize>> {
        self.to_physical
            .iter()
            .enumerate()
            .map(|(l, p)| p.ok_or(Error::Unmapped(l)))
            .collect()
    }
}

/// Distance estimates used to score pivot candidates for one elimination round.
struct CostModel {
    /// For each vertex, the distance to the nearest free alive vertex.
    nearest_free: Vec<Option<u32>>,
}

impl CostModel {
    fn new(graph: &CouplingGraph, alive: &[bool], mapping: &QubitMapping) -> Self {
        let n = graph.num_qubits();
        let free: Vec<usize> = (0..n)
            .filter(|&v| alive[v] && mapping.logical(v).is_none())
            .collect();
        let nearest_free = (0..n)
            .map(|v| free.iter().map(|&f| graph.dist(v, f)).min())
            .collect();
        Self { nearest_free }
    }

    fn distance(
        &self,
        graph: &CouplingGraph,
        mapping: &QubitMapping,
        placement: Placement,
        r: usize,
        i: usize,
    ) -> Result<u32> {
        if r == i {
            return Ok(0);
        }
        match (mapping.physical(r), mapping.physical(i)) {
            (Some(a), Some(b)) => Ok(graph.dist(a, b)),
            _ if placement == Placement::Identity => {
                let missing = if mapping.physical(r).is_none() { r } else { i };
                Err(Error::Unmapped(missing))
            }
            (Some(a), None) | (None, Some(a)) => self.nearest_free[a].ok_or(Error::Unmapped(i)),
            (None, None) => Ok(1),
        }
    }
}

fn touches(t: &CliffordTableau, row: usize, q: usize) -> bool {
    t.x(row, q) || t.z(row, q)
}

/// Estimated Steiner cost of eliminating `pivot`: every qubit that the
/// pivot's destabilizer or stabilizer row acts on non-trivially contributes
/// its distance to the pivot, once per row.
///
/// Under [`Placement::Lazy`], distances involving unplaced qubits are
/// optimistic: the nearest free vertex, or 1 when both ends are unplaced.
pub fn pivot_cost(
    t: &CliffordTableau,
    pivot: usize,
    graph: &CouplingGraph,
    alive: &[bool],
    mapping: &QubitMapping,
    placement: Placement,
) -> Result<u64> {
    let model = CostModel::new(graph, alive, mapping);
    cost_with(&model, t, pivot, graph, mapping, placement)
}

fn cost_with(
    model: &CostModel,
    t: &CliffordTableau,
    pivot: usize,
    graph: &CouplingGraph,
    mapping: &QubitMapping,
    placement: Placement,
) -> Result<u64> {
    let n = t.num_qubits();
    let mut cost = 0u64;
    for i in 0..n {
        let weight = u64::from(touches(t, pivot, i)) + u64::from(touches(t, n + pivot, i));
        if weight > 0 {
            cost += weight * u64::from(model.distance(graph, mapping, placement, pivot, i)?);
        }
    }
    Ok(cost)
}

/// Working state of one synthesis run.
struct Synthesizer<'g> {
    tableau: CliffordTableau,
    graph: &'g CouplingGraph,
    cfg: SynthesisConfig,
    /// Physical vertices still in play.
    alive: Vec<bool>,
    /// Logical qubits not yet eliminated.
    remaining: Vec<bool>,
    mapping: QubitMapping,
    /// Single-qubit gates waiting for their logical qubit to be placed.
    pending: Vec<Vec<Gate>>,
    circuit: Circuit,
}

impl<'g> Synthesizer<'g> {
    fn new(tableau: CliffordTableau, graph: &'g CouplingGraph, cfg: SynthesisConfig) -> Self {
        let n = tableau.num_qubits();
        let mapping = match cfg.placement {
            Placement::Identity => QubitMapping::identity(n),
            Placement::Lazy => QubitMapping::empty(n),
        };
        Self {
            tableau,
            graph,
            cfg,
            alive: vec![true; n],
            remaining: vec![true; n],
            mapping,
            pending: vec![Vec::new(); n],
            circuit: Circuit::new(n),
        }
    }

    fn n(&self) -> usize {
        self.tableau.num_qubits()
    }

    /// Applies a logical gate to the tableau and records it on the physical
    /// register, or holds it back if its qubit is not yet placed.
    fn emit(&mut self, gate: Gate) -> Result<()> {
        self.tableau.append_gate(gate)?;
        match gate {
            Gate::H(q) | Gate::S(q) => match self.mapping.physical(q) {
                Some(p) => self.circuit.push(gate.map_qubits(|_| p)),
                None => {
                    self.pending[q].push(gate);
                    Ok(())
                }
            },
            Gate::Cx { control, target } => {
                let c = self
                    .mapping
                    .physical(control)
                    .ok_or(Error::Unmapped(control))?;
                let t = self
                    .mapping
                    .physical(target)
                    .ok_or(Error::Unmapped(target))?;
                debug_assert!(
                    self.graph.has_edge(c, t),
                    "cx({c}, {t}) off the coupling graph"
                );
                self.circuit.push(Gate::cx(c, t))
            }
        }
    }

    fn bind(&mut self, logical: usize, physical: usize) -> Result<()> {
        self.mapping.bind(logical, physical)?;
        for g in std::mem::take(&mut self.pending[logical]) {
            self.circuit.push(g.map_qubits(|_| physical))?;
        }
        Ok(())
    }

    fn free_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&v| self.alive[v] && self.mapping.logical(v).is_none())
    }

    /// Logical qubits the pivot's two rows act on, pivot excluded.
    fn interacting(&self, p: usize) -> Vec<usize> {
        let n = self.n();
        (0..n)
            .filter(|&i| {
                i != p && (touches(&self.tableau, p, i) || touches(&self.tableau, n + p, i))
            })
            .collect()
    }

    /// Free vertex from `candidates` with the least summed distance to the
    /// placed qubits in `anchors`; ties to the lowest vertex.
    fn closest_free(
        &self,
        candidates: impl Iterator<Item = usize>,
        anchors: &[usize],
    ) -> Option<usize> {
        let placed: Vec<usize> = anchors
            .iter()
            .filter_map(|&q| self.mapping.physical(q))
            .collect();
        candidates.min_by_key(|&v| {
            let total: u64 = placed
                .iter()
                .map(|&a| u64::from(self.graph.dist(v, a)))
                .sum();
            (total, v)
        })
    }

    // Step 1.
    fn pick_pivot(&mut self) -> Result<usize> {
        let n = self.n();
        let non_cutting = self.graph.non_cutting(&self.alive)?;
        let free_non_cutting: Vec<usize> = non_cutting
            .iter()
            .copied()
            .filter(|&v| self.mapping.logical(v).is_none())
            .collect();
        let candidates: Vec<usize> = (0..n)
            .filter(|&q| self.remaining[q])
            .filter(|&q| match self.mapping.physical(q) {
                Some(v) => non_cutting.binary_search(&v).is_ok(),
                None => !free_non_cutting.is_empty(),
            })
            .collect();
        let pivot = match self.cfg.pivot_rule {
            PivotRule::FixedOrder => candidates.first().copied(),
            PivotRule::Heuristic => {
                let model = CostModel::new(self.graph, &self.alive, &self.mapping);
                let mut best: Option<(u64, usize)> = None;
                for &q in &candidates {
                    let c = cost_with(
                        &model,
                        &self.tableau,
                        q,
                        self.graph,
                        &self.mapping,
                        self.cfg.placement,
                    )?;
                    if best.is_none_or(|b| (c, q) < b) {
                        best = Some((c, q));
                    }
                }
                best.map(|(_, q)| q)
            }
        }
        .ok_or_else(|| Error::Precondition("no eligible pivot".into()))?;

        if self.mapping.physical(pivot).is_none() {
            let anchors = self.interacting(pivot);
            let v = self
                .closest_free(free_non_cutting.into_iter(), &anchors)
                .expect("candidate filter guarantees a free non-cutting vertex");
            self.bind(pivot, v)?;
        }
        Ok(pivot)
    }

    // Step 2.
    fn sanitize_destab(&mut self, p: usize) -> Result<()> {
        for i in 0..self.n() {
            if self.tableau.z(p, i) {
                let g = if self.tableau.x(p, i) {
                    Gate::S(i)
                } else {
                    Gate::H(i)
                };
                self.emit(g)?;
            }
        }
        Ok(())
    }

    // Step 4.
    fn sanitize_stab(&mut self, p: usize) -> Result<()> {
        let n = self.n();
        let row = n + p;
        if !(self.tableau.x(p, p) && (0..n).all(|i| (i == p) == self.tableau.x(p, i)))
            || (0..n).any(|i| self.tableau.z(p, i))
        {
            return Err(Error::Precondition(format!(
                "destabilizer row {p} is not X on the pivot"
            )));
        }
        if self.tableau.x(row, p) {
            self.emit(Gate::H(p))?;
            self.emit(Gate::S(p))?;
            self.emit(Gate::H(p))?;
        }
        for i in 0..n {
            match (self.tableau.x(row, i), self.tableau.z(row, i)) {
                (true, false) => self.emit(Gate::H(i))?,
                (true, true) => {
                    self.emit(Gate::S(i))?;
                    self.emit(Gate::H(i))?;
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Places every unplaced terminal next to the already placed ones, builds
    /// the Steiner tree rooted at the pivot's vertex and places a spare logical
    /// qubit on every unoccupied Steiner node.
    fn prepare_tree(
        &mut self,
        p: usize,
        terminals: &[usize],
    ) -> Result<crate::architecture::SteinerTree> {
        let mut anchors: Vec<usize> = terminals
            .iter()
            .copied()
            .chain(std::iter::once(p))
            .filter(|&q| self.mapping.physical(q).is_some())
            .collect();
        for &q in terminals {
            if self.mapping.physical(q).is_none() {
                let free: Vec<usize> = self.free_vertices().collect();
                let v = self
                    .closest_free(free.into_iter(), &anchors)
                    .ok_or(Error::Unmapped(q))?;
                self.bind(q, v)?;
                anchors.push(q);
            }
        }
        let root = self.mapping.physical(p).ok_or(Error::Unmapped(p))?;
        let physical_terms: BTreeSet<usize> = terminals
            .iter()
            .map(|&q| self.mapping.physical(q).ok_or(Error::Unmapped(q)))
            .collect::<Result<_>>()?;
        let tree = self
            .graph
            .steiner_tree(&self.alive, &physical_terms, root)?;
        for v in tree.vertices() {
            if self.mapping.logical(v).is_none() {
                let spare = (0..self.n())
                    .find(|&q| self.remaining[q] && self.mapping.physical(q).is_none())
                    .ok_or(Error::Unmapped(v))?;
                self.bind(spare, v)?;
            }
        }
        Ok(tree)
    }

    fn logical_at(&self, v: usize) -> usize {
        self.mapping.logical(v).expect("tree vertices are placed")
    }

    // Step 3.
    fn remove_interactions_destab(&mut self, p: usize) -> Result<()> {
        let n = self.n();
        if (0..n).any(|i| self.tableau.z(p, i)) {
            return Err(Error::Precondition(format!(
                "destabilizer row {p} still has a Z component"
            )));
        }
        let terminals: Vec<usize> = (0..n).filter(|&i| self.tableau.x(p, i)).collect();
        let tree = self.prepare_tree(p, &terminals)?;
        for &(parent, child) in &tree.bottom_up {
            let (lp, lc) = (self.logical_at(parent), self.logical_at(child));
            if !self.tableau.x(p, lp) {
                self.emit(Gate::cx(lc, lp))?;
            }
        }
        for &(parent, child) in &tree.bottom_up {
            let (lp, lc) = (self.logical_at(parent), self.logical_at(child));
            self.emit(Gate::cx(lp, lc))?;
        }
        debug_assert!((0..n).all(|i| self.tableau.x(p, i) == (i == p)));
        Ok(())
    }

    // Step 5.
    fn remove_interactions_stab(&mut self, p: usize) -> Result<()> {
        let n = self.n();
        let row = n + p;
        if (0..n).any(|i| self.tableau.x(row, i)) || !self.tableau.z(row, p) {
            return Err(Error::Precondition(format!(
                "stabilizer row {p} is not Z/I with Z on the pivot"
            )));
        }
        let terminals: Vec<usize> = (0..n).filter(|&i| self.tableau.z(row, i)).collect();
        let tree = self.prepare_tree(p, &terminals)?;
        for &(parent, child) in &tree.bottom_up {
            let (lp, lc) = (self.logical_at(parent), self.logical_at(child));
            if !self.tableau.z(row, lp) {
                self.emit(Gate::cx(lp, lc))?;
            }
        }
        for &(parent, child) in &tree.bottom_up {
            let (lp, lc) = (self.logical_at(parent), self.logical_at(child));
            self.emit(Gate::cx(lc, lp))?;
        }
        debug_assert!((0..n).all(|i| self.tableau.z(row, i) == (i == p)));
        Ok(())
    }

    // Step 7.
    fn sanitize_signs(&mut self) -> Result<()> {
        if !self.tableau.is_identity_table() {
            return Err(Error::NotIdentity);
        }
        let n = self.n();
        for i in 0..n {
            // Z = S·S flips the sign of X_i and leaves Z_i alone.
            if self.tableau.sign(i) {
                self.emit(Gate::S(i))?;
                self.emit(Gate::S(i))?;
            }
        }
        for i in 0..n {
            // X = H·S·S·H flips the sign of Z_i.
            if self.tableau.sign(n + i) {
                for g in [Gate::H(i), Gate::S(i), Gate::S(i), Gate::H(i)] {
                    self.emit(g)?;
                }
            }
        }
        Ok(())
    }

    fn eliminate(&mut self, p: usize) -> Result<()> {
        self.sanitize_destab(p)?;
        self.remove_interactions_destab(p)?;
        self.sanitize_stab(p)?;
        self.remove_interactions_stab(p)?;
        debug_assert!(pivot_is_isolated(&self.tableau, p));
        let v = self.mapping.physical(p).ok_or(Error::Unmapped(p))?;
        self.alive[v] = false;
        self.remaining[p] = false;
        Ok(())
    }

    fn run(mut self) -> Result<SynthesisResult> {
        for _ in 0..self.n() {
            let p = self.pick_pivot()?;
            self.eliminate(p)?;
        }
        debug_assert!(self.remaining.iter().all(|r| !r));
        self.sanitize_signs()?;
        debug_assert!(self.tableau.is_identity());
        let mapping = self.mapping.to_vec()?;
        let counts = self.circuit.count_gates();
        Ok(SynthesisResult {
            circuit: self.circuit,
            mapping,
            counts,
        })
    }
}

/// Rows `p`, `n + p` and columns `p`, `n + p` each hold only their diagonal 1.
fn pivot_is_isolated(t: &CliffordTableau, p: usize) -> bool {
    let n = t.num_qubits();
    let table = t.table();
    let single = |row: usize| {
        let mut ones = table.row_ones(row);
        ones.next() == Some(row) && ones.next().is_none()
    };
    single(p)
        && single(n + p)
        && (0..2 * n).all(|r| (r == p) == table.get(r, p) && (r == n + p) == table.get(r, n + p))
}

/// Synthesizes a circuit implementing `tableau` whose CX gates all lie on
/// edges of `graph`. The circuit acts on physical qubits; `mapping` in the
/// result gives each logical qubit's vertex.
pub fn synthesize(
    tableau: &CliffordTableau,
    graph: &CouplingGraph,
    cfg: SynthesisConfig,
) -> Result<SynthesisResult> {
    if tableau.num_qubits() != graph.num_qubits() {
        return Err(Error::SizeMismatch {
            left: tableau.num_qubits(),
            right: graph.num_qubits(),
        });
    }
    let inverse = tableau.inverse()?;
    Synthesizer::new(inverse, graph, cfg).run()
}

/// Runs one reduction step on `t` in place under the identity placement and
/// returns the gates it appended.
fn run_step(
    t: &mut CliffordTableau,
    graph: &CouplingGraph,
    alive: &[bool],
    step: impl FnOnce(&mut Synthesizer<'_>) -> Result<()>,
) -> Result<Vec<Gate>> {
    if t.num_qubits() != graph.num_qubits() {
        return Err(Error::SizeMismatch {
            left: t.num_qubits(),
            right: graph.num_qubits(),
        });
    }
    let cfg = SynthesisConfig::with_placement(Placement::Identity);
    let mut s = Synthesizer::new(t.clone(), graph, cfg);
    s.alive = alive.to_vec();
    s.remaining = alive.to_vec();
    step(&mut s)?;
    *t = s.tableau;
    Ok(s.circuit.gates().to_vec())
}

/// Pivot choice among the qubits on non-cutting vertices of the alive
/// subgraph (identity placement), lowest index on ties.
pub fn pick_pivot(
    t: &CliffordTableau,
    graph: &CouplingGraph,
    alive: &[bool],
    rule: PivotRule,
) -> Result<usize> {
    let mut t = t.clone();
    let mut pivot = None;
    run_step(&mut t, graph, alive, |s| {
        s.cfg.pivot_rule = rule;
        pivot = Some(s.pick_pivot()?);
        Ok(())
    })?;
    Ok(pivot.expect("set by step"))
}

pub fn sanitize_destab(t: &mut CliffordTableau, p: usize) -> Result<Vec<Gate>> {
    let graph = CouplingGraph::complete(t.num_qubits())?;
    let alive = vec![true; t.num_qubits()];
    run_step(t, &graph, &alive, |s| s.sanitize_destab(p))
}

pub fn sanitize_stab(t: &mut CliffordTableau, p: usize) -> Result<Vec<Gate>> {
    let graph = CouplingGraph::complete(t.num_qubits())?;
    let alive = vec![true; t.num_qubits()];
    run_step(t, &graph, &alive, |s| s.sanitize_stab(p))
}

pub fn remove_interactions_destab(
    t: &mut CliffordTableau,
    p: usize,
    graph: &CouplingGraph,
    alive: &[bool],
) -> Result<Vec<Gate>> {
    run_step(t, graph, alive, |s| s.remove_interactions_destab(p))
}

pub fn remove_interactions_stab(
    t: &mut CliffordTableau,
    p: usize,
    graph: &CouplingGraph,
    alive: &[bool],
) -> Result<Vec<Gate>> {
    run_step(t, graph, alive, |s| s.remove_interactions_stab(p))
}

pub fn sanitize_signs(t: &mut CliffordTableau) -> Result<Vec<Gate>> {
    let graph = CouplingGraph::complete(t.num_qubits())?;
    let alive = vec![true; t.num_qubits()];
    run_step(t, &graph, &alive, |s| s.sanitize_signs())
}
