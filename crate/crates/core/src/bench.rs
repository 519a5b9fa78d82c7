//! Random-circuit experiment sweeps and the routing-portion metric.
//!
//! Every trial has its own ChaCha8 stream seeded from
//! `(rng_seed, input_gates, trial)`, so results do not depend on how trials are
//! scheduled across threads. Rows are sorted by `(input_gates, trial)`.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::architecture::CouplingGraph;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::synthesis::{synthesize, Placement, SynthesisConfig, SynthesisResult};
use crate::tableau::CliffordTableau;
use crate::verify::{check_connectivity, check_roundtrip};

pub const DEFAULT_TRIALS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub arch: String,
    pub gate_counts: Vec<usize>,
    pub circuits_per_point: usize,
    pub rng_seed: u64,
    pub placement: Placement,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.gate_counts.is_empty() {
            return Err(Error::InvalidExperiment("no gate counts".into()));
        }
        if self.gate_counts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidExperiment(
                "gate counts must be strictly ascending".into(),
            ));
        }
        if self.circuits_per_point == 0 {
            return Err(Error::InvalidExperiment(
                "circuits_per_point must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub arch: String,
    pub input_gates: usize,
    pub trial: usize,
    pub h: usize,
    pub s: usize,
    pub cx: usize,
    #[serde(rename = "cx_fc")]
    pub cx_fully_connected: usize,
    pub wall_time_ms: f64,
}

/// Per-gate-count medians plus the ratios of the fully connected CX median
/// against the `n²/log₂n` and `n²` bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub arch: String,
    pub num_qubits: usize,
    pub input_gates: usize,
    pub trials: usize,
    pub median_h: f64,
    pub median_s: f64,
    pub median_cx: f64,
    pub median_cx_fc: f64,
    pub routing_portion: Option<f64>,
    pub bound_n2_log2n: f64,
    pub bound_n2: f64,
    pub ratio_n2_log2n: f64,
    pub ratio_n2: f64,
    /// Left empty; external baselines are not run.
    pub baseline_cx: Option<f64>,
}

/// Uniform gate kind from {H, S, CX}; uniform qubit, or uniform ordered pair
/// of distinct qubits for CX.
pub fn random_clifford_circuit<R: Rng + ?Sized>(
    n: usize,
    gates: usize,
    rng: &mut R,
) -> Result<Circuit> {
    if gates > 0 && n < 2 {
        return Err(Error::Precondition(format!(
            "random circuits need at least 2 qubits, got {n}"
        )));
    }
    let mut c = Circuit::new(n);
    for _ in 0..gates {
        let g = match rng.gen_range(0..3) {
            0 => Gate::H(rng.gen_range(0..n)),
            1 => Gate::S(rng.gen_range(0..n)),
            _ => {
                let control = rng.gen_range(0..n);
                let mut target = rng.gen_range(0..n - 1);
                if target >= control {
                    target += 1;
                }
                Gate::cx(control, target)
            }
        };
        c.push(g)?;
    }
    Ok(c)
}

/// `(cx_routed − cx_fully_connected) / cx_routed`.
pub fn routing_portion(cx_routed: usize, cx_fully_connected: usize) -> Result<f64> {
    if cx_routed == 0 {
        return Err(Error::ZeroRoutedCx);
    }
    Ok((cx_routed as f64 - cx_fully_connected as f64) / cx_routed as f64)
}

/// Routing portion of the pooled CX totals over the rows with at least
/// `min_gates` input gates.
pub fn aggregate_routing_portion(rows: &[ExperimentRow], min_gates: usize) -> Result<f64> {
    let (routed, fc) = rows
        .iter()
        .filter(|r| r.input_gates >= min_gates)
        .fold((0, 0), |(a, b), r| (a + r.cx, b + r.cx_fully_connected));
    routing_portion(routed, fc)
}

/// Seed of one trial's random stream.
pub fn trial_seed(rng_seed: u64, input_gates: usize, trial: usize) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(mix(mix(rng_seed) ^ input_gates as u64) ^ trial as u64)
}

/// Parses `start:stop:step` (inclusive), a single count, or a comma list.
pub fn parse_gate_counts(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidExperiment(format!("bad gate range `{text}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let parts: Vec<&str> = text.split(':').collect();
    let counts = match parts.as_slice() {
        [single] => single.split(',').map(num).collect::<Result<Vec<_>>>()?,
        [a, b] | [a, b, _] => {
            let (start, stop) = (num(a)?, num(b)?);
            let step = if parts.len() == 3 { num(parts[2])? } else { 1 };
            if step == 0 || start > stop {
                return Err(bad());
            }
            (start..=stop).step_by(step).collect()
        }
        _ => return Err(bad()),
    };
    Ok(counts)
}

/// Ten gate counts up to twice the convergence threshold, in steps of a fifth
/// of it.
pub fn sweep_gate_counts(threshold: usize) -> Vec<usize> {
    let step = (threshold / 5).max(1);
    (1..=10).map(|k| k * step).collect()
}

fn verify_trial(
    tableau: &CliffordTableau,
    result: &SynthesisResult,
    graph: &CouplingGraph,
    input_gates: usize,
    trial: usize,
    seed: u64,
) -> Result<()> {
    let fail = |reason: String| Error::Verification {
        arch: graph.name().to_string(),
        gates: input_gates,
        trial,
        seed,
        reason,
    };
    let violations = check_connectivity(&result.circuit, graph);
    if !violations.is_empty() {
        return Err(fail(format!(
            "{} off-graph cx, first {:?}",
            violations.len(),
            violations[0]
        )));
    }
    if !check_roundtrip(tableau, result)? {
        return Err(fail("round trip mismatch".into()));
    }
    Ok(())
}

/// Generates, synthesizes and verifies one trial on `graph` and on the
/// complete graph of the same size.
pub fn run_trial(
    graph: &CouplingGraph,
    complete: &CouplingGraph,
    placement: Placement,
    input_gates: usize,
    trial: usize,
    rng_seed: u64,
) -> Result<ExperimentRow> {
    let seed = trial_seed(rng_seed, input_gates, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let circuit = random_clifford_circuit(graph.num_qubits(), input_gates, &mut rng)?;
    let tableau = CliffordTableau::from_circuit(&circuit)?;
    let cfg = SynthesisConfig::with_placement(placement);

    let start = Instant::now();
    let routed = synthesize(&tableau, graph, cfg)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    verify_trial(&tableau, &routed, graph, input_gates, trial, seed)?;

    let full = synthesize(&tableau, complete, cfg)?;
    verify_trial(&tableau, &full, complete, input_gates, trial, seed)?;

    Ok(ExperimentRow {
        arch: graph.name().to_string(),
        input_gates,
        trial,
        h: routed.counts.h,
        s: routed.counts.s,
        cx: routed.counts.cx,
        cx_fully_connected: full.counts.cx,
        wall_time_ms,
    })
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ExperimentRow>> {
    spec.validate()?;
    let graph = CouplingGraph::load(&spec.arch)?;
    run_experiment_on(spec, &graph)
}

pub fn run_experiment_on(
    spec: &ExperimentSpec,
    graph: &CouplingGraph,
) -> Result<Vec<ExperimentRow>> {
    spec.validate()?;
    let complete = CouplingGraph::complete(graph.num_qubits())?;
    let jobs: Vec<(usize, usize)> = spec
        .gate_counts
        .iter()
        .flat_map(|&g| (0..spec.circuits_per_point).map(move |t| (g, t)))
        .collect();
    let mut rows = jobs
        .into_par_iter()
        .map(|(g, t)| run_trial(graph, &complete, spec.placement, g, t, spec.rng_seed))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.input_gates, r.trial));
    Ok(rows)
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    })
}

/// `n² / log₂ n`.
pub fn bound_n2_log2n(n: usize) -> f64 {
    let n = n as f64;
    n * n / n.log2()
}

pub fn bound_n2(n: usize) -> f64 {
    (n * n) as f64
}

pub fn summarize(rows: &[ExperimentRow], num_qubits: usize) -> Vec<SummaryRow> {
    let mut counts: Vec<usize> = rows.iter().map(|r| r.input_gates).collect();
    counts.sort_unstable();
    counts.dedup();
    counts
        .into_iter()
        .map(|g| {
            let bucket: Vec<&ExperimentRow> = rows.iter().filter(|r| r.input_gates == g).collect();
            let med = |f: fn(&ExperimentRow) -> usize| {
                median(&bucket.iter().map(|r| f(r) as f64).collect::<Vec<_>>()).unwrap_or(0.0)
            };
            let median_cx_fc = med(|r| r.cx_fully_connected);
            let (routed, fc) = bucket
                .iter()
                .fold((0, 0), |(a, b), r| (a + r.cx, b + r.cx_fully_connected));
            SummaryRow {
                arch: bucket[0].arch.clone(),
                num_qubits,
                input_gates: g,
                trials: bucket.len(),
                median_h: med(|r| r.h),
                median_s: med(|r| r.s),
                median_cx: med(|r| r.cx),
                median_cx_fc,
                routing_portion: routing_portion(routed, fc).ok(),
                bound_n2_log2n: bound_n2_log2n(num_qubits),
                bound_n2: bound_n2(num_qubits),
                ratio_n2_log2n: median_cx_fc / bound_n2_log2n(num_qubits),
                ratio_n2: median_cx_fc / bound_n2(num_qubits),
                baseline_cx: None,
            }
        })
        .collect()
}

/// Relative difference of the median routed CX counts of the two largest
/// gate-count buckets.
pub fn top_bucket_drift(summary: &[SummaryRow]) -> Option<f64> {
    match summary {
        [.., a, b] if a.median_cx.max(b.median_cx) > 0.0 => {
            Some((a.median_cx - b.median_cx).abs() / a.median_cx.max(b.median_cx))
        }
        _ => None,
    }
}

pub fn write_rows<W: Write>(writer: W, rows: &[ExperimentRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    if rows.is_empty() {
        w.write_record([
            "arch",
            "input_gates",
            "trial",
            "h",
            "s",
            "cx",
            "cx_fc",
            "wall_time_ms",
        ])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows<R: std::io::Read>(reader: R) -> Result<Vec<ExperimentRow>> {
    csv::Reader::from_reader(reader)
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

pub fn write_summary<W: Write>(writer: W, summary: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in summary {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
