//! Circuits over {H, S, CX} and their text formats.
//!
//! The native gate-list format is line oriented:
//!
//! ```text
//! qubits 3
//! # comment
//! h 0
//! s 2
//! cx 0 1
//! ```
//!
//! QASM 2.0 is export-only.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Cx { control: usize, target: usize },
}

impl Gate {
    pub fn cx(control: usize, target: usize) -> Self {
        Gate::Cx { control, target }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cx { .. })
    }

    /// Checks qubit bounds against an `n`-qubit register.
    pub fn validate(&self, n: usize) -> Result<()> {
        let in_range = |q: usize| {
            if q < n {
                Ok(())
            } else {
                Err(Error::QubitOutOfRange { qubit: q, n })
            }
        };
        match *self {
            Gate::H(q) | Gate::S(q) => in_range(q),
            Gate::Cx { control, target } => {
                in_range(control)?;
                in_range(target)?;
                if control == target {
                    Err(Error::ControlIsTarget(control))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Same gate with every qubit index passed through `f`.
    pub fn map_qubits(&self, mut f: impl FnMut(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Cx { control, target } => Gate::Cx {
                control: f(control),
                target: f(target),
            },
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "h {q}"),
            Gate::S(q) => write!(f, "s {q}"),
            Gate::Cx { control, target } => write!(f, "cx {control} {target}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub h: usize,
    pub s: usize,
    pub cx: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.h + self.s + self.cx
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(n)?;
        }
        Ok(Self { n, gates })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn count_gates(&self) -> GateCounts {
        let mut c = GateCounts::default();
        for g in &self.gates {
            match g {
                Gate::H(_) => c.h += 1,
                Gate::S(_) => c.s += 1,
                Gate::Cx { .. } => c.cx += 1,
            }
        }
        c
    }

    /// The circuit followed by its inverse. S is undone with S·S·S.
    pub fn append_inverse(&self) -> Circuit {
        let mut gates = self.gates.clone();
        for g in self.gates.iter().rev() {
            match *g {
                Gate::S(q) => gates.extend([Gate::S(q); 3]),
                other => gates.push(other),
            }
        }
        Circuit { n: self.n, gates }
    }

    /// Relabels qubit `q` as `mapping[q]`. `mapping` must be a permutation of `0..n`.
    pub fn relabel(&self, mapping: &[usize]) -> Result<Circuit> {
        if mapping.len() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: mapping.len(),
            });
        }
        let gates = self
            .gates
            .iter()
            .map(|g| g.map_qubits(|q| mapping[q]))
            .collect();
        Circuit::from_gates(self.n, gates)
    }

    pub fn to_gatelist(&self) -> String {
        let mut out = format!("qubits {}\n", self.n);
        for g in &self.gates {
            let _ = writeln!(out, "{g}");
        }
        out
    }

    pub fn parse_gatelist(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let mut parts = line.split_whitespace();
            let op = parts.next().unwrap_or_default().to_ascii_lowercase();
            let args = parts
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|e| err(format!("bad index `{p}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let Some(c) = circuit.as_mut() else {
                if op != "qubits" || args.len() != 1 {
                    return Err(err("expected `qubits <n>` header".into()));
                }
                circuit = Some(Circuit::new(args[0]));
                continue;
            };
            let gate = match (op.as_str(), args.as_slice()) {
                ("h", [q]) => Gate::H(*q),
                ("s", [q]) => Gate::S(*q),
                ("cx" | "cnot", [a, b]) => Gate::cx(*a, *b),
                ("qubits", _) => return Err(err("duplicate `qubits` header".into())),
                _ => return Err(err(format!("unrecognised gate line `{line}`"))),
            };
            c.push(gate).map_err(|e| err(e.to_string()))?;
        }
        circuit.ok_or(Error::Parse {
            line: 0,
            message: "missing `qubits <n>` header".into(),
        })
    }

    pub fn to_qasm(&self) -> String {
        let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        let _ = writeln!(out, "qreg q[{}];", self.n);
        for g in &self.gates {
            let _ = match g {
                Gate::H(q) => writeln!(out, "h q[{q}];"),
                Gate::S(q) => writeln!(out, "s q[{q}];"),
                Gate::Cx { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
            };
        }
        out
    }
}
