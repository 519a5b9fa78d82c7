use clifford_synth::architecture::benchmark_architectures;
use clifford_synth::bench::{self, ExperimentSpec};
use clifford_synth::{CouplingGraph, Placement};

#[test]
fn cx_medians_plateau_past_the_threshold() {
    for (arch, threshold) in benchmark_architectures().into_iter().take(3) {
        let spec = ExperimentSpec {
            arch: arch.into(),
            gate_counts: vec![threshold, 2 * threshold],
            circuits_per_point: 40,
            rng_seed: 7,
            placement: Placement::Lazy,
        };
        let rows = bench::run_experiment(&spec).unwrap();
        let n = CouplingGraph::load(arch).unwrap().num_qubits();
        let summary = bench::summarize(&rows, n);
        let drift = bench::top_bucket_drift(&summary).unwrap();
        assert!(
            drift < 0.15,
            "{arch}: top buckets differ by {:.1}%",
            drift * 100.0
        );
    }
}

#[test]
fn routing_portion_is_positive_on_sparse_devices() {
    let spec = ExperimentSpec {
        arch: "line-6".into(),
        gate_counts: vec![120],
        circuits_per_point: 20,
        rng_seed: 8,
        placement: Placement::Lazy,
    };
    let rows = bench::run_experiment(&spec).unwrap();
    assert!(bench::aggregate_routing_portion(&rows, 0).unwrap() > 0.0);
}
