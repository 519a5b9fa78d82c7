use super::CouplingGraph;
use crate::error::{Error, Result};

const QUITO: &str = include_str!("../../data/quito.json");
const NAIROBI: &str = include_str!("../../data/nairobi.json");
const GUADALUPE: &str = include_str!("../../data/guadalupe.json");
const MUMBAI: &str = include_str!("../../data/mumbai.json");
const ITHACA: &str = include_str!("../../data/ithaca.json");
const BRISBANE: &str = include_str!("../../data/brisbane.json");

const BUNDLED: [(&str, &str); 6] = [
    ("quito", QUITO),
    ("nairobi", NAIROBI),
    ("guadalupe", GUADALUPE),
    ("mumbai", MUMBAI),
    ("ithaca", ITHACA),
    ("brisbane", BRISBANE),
];

/// Device graphs of the benchmark suite with the input size (in gates) from
/// which synthesized cx counts have plateaued.
pub fn benchmark_architectures() -> [(&'static str, usize); 6] {
    [
        ("quito", 75),
        ("nairobi", 110),
        ("guadalupe", 250),
        ("mumbai", 500),
        ("ithaca", 1250),
        ("brisbane", 3000),
    ]
}

pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = BUNDLED.iter().map(|(n, _)| n.to_string()).collect();
    names.push("complete-N".into());
    names.push("line-N".into());
    names
}

/// `Ok(None)` when `name` is not a builtin.
pub(crate) fn lookup(name: &str) -> Result<Option<CouplingGraph>> {
    let key = name
        .trim()
        .to_ascii_lowercase()
        .trim_start_matches("ibmq_")
        .trim_start_matches("ibm_")
        .to_string();
    if let Some((_, json)) = BUNDLED.iter().find(|(n, _)| *n == key) {
        return CouplingGraph::from_json(json).map(Some);
    }
    let sized = |prefix: &str| -> Option<Result<usize>> {
        key.strip_prefix(prefix).map(|rest| {
            rest.parse::<usize>()
                .map_err(|_| Error::UnknownArchitecture(name.to_string()))
        })
    };
    if let Some(n) = sized("complete-") {
        return CouplingGraph::complete(n?).map(Some);
    }
    if let Some(n) = sized("line-") {
        return CouplingGraph::line(n?).map(Some);
    }
    Ok(None)
}
