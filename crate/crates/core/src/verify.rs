//! Independent correctness checks for synthesized circuits.
//!
//! Besides the tableau-level round trip, this module carries a small dense
//! simulator. It shares no code with the tableau update rules, so agreement
//! between the two is a meaningful test of both.

use num_complex::Complex64;

use crate::architecture::CouplingGraph;
use crate::bitmatrix::{BitMatrix, BitVector};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::synthesis::SynthesisResult;
use crate::tableau::CliffordTableau;

pub const MAX_ORACLE_QUBITS: usize = 10;

/// A CX that does not sit on a coupling-graph edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub control: usize,
    pub target: usize,
}

pub fn check_connectivity(circuit: &Circuit, graph: &CouplingGraph) -> Vec<Violation> {
    circuit
        .gates()
        .iter()
        .enumerate()
        .filter_map(|(index, g)| match *g {
            Gate::Cx { control, target } if !graph.has_edge(control, target) => Some(Violation {
                index,
                control,
                target,
            }),
            _ => None,
        })
        .collect()
}

/// Rewrites a physical-qubit circuit onto logical qubits, given the
/// logical → physical placement.
pub fn to_logical(circuit: &Circuit, mapping: &[usize]) -> Result<Circuit> {
    let n = circuit.num_qubits();
    if mapping.len() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: mapping.len(),
        });
    }
    let mut inverse = vec![usize::MAX; n];
    for (logical, &physical) in mapping.iter().enumerate() {
        if physical >= n || inverse[physical] != usize::MAX {
            return Err(Error::Precondition(format!(
                "mapping is not a permutation of 0..{n}"
            )));
        }
        inverse[physical] = logical;
    }
    circuit.relabel(&inverse)
}

/// `true` iff the synthesized circuit, read back through its placement,
/// implements `original` exactly (signs included).
pub fn check_roundtrip(original: &CliffordTableau, result: &SynthesisResult) -> Result<bool> {
    check_circuit_implements(original, &result.circuit, &result.mapping)
}

pub fn check_circuit_implements(
    original: &CliffordTableau,
    circuit: &Circuit,
    mapping: &[usize],
) -> Result<bool> {
    if original.num_qubits() != circuit.num_qubits() {
        return Err(Error::SizeMismatch {
            left: original.num_qubits(),
            right: circuit.num_qubits(),
        });
    }
    let logical = to_logical(circuit, mapping)?;
    Ok(&CliffordTableau::from_circuit(&logical)? == original)
}

fn check_oracle_size(n: usize) -> Result<()> {
    if n > MAX_ORACLE_QUBITS {
        Err(Error::TooManyQubits {
            n,
            max: MAX_ORACLE_QUBITS,
        })
    } else {
        Ok(())
    }
}

fn apply_gate(state: &mut [Complex64], gate: Gate) {
    match gate {
        Gate::H(q) => {
            let bit = 1usize << q;
            let norm = std::f64::consts::FRAC_1_SQRT_2;
            for i in 0..state.len() {
                if i & bit == 0 {
                    let (a, b) = (state[i], state[i | bit]);
                    state[i] = (a + b) * norm;
                    state[i | bit] = (a - b) * norm;
                }
            }
        }
        Gate::S(q) => {
            let bit = 1usize << q;
            for (i, amp) in state.iter_mut().enumerate() {
                if i & bit != 0 {
                    *amp *= Complex64::i();
                }
            }
        }
        Gate::Cx { control, target } => {
            let (cb, tb) = (1usize << control, 1usize << target);
            for i in 0..state.len() {
                if i & cb != 0 && i & tb == 0 {
                    state.swap(i, i | tb);
                }
            }
        }
    }
}

/// Amplitudes of `circuit` applied to |0…0⟩. Qubit `q` is bit `q` of the
/// basis index.
pub fn statevector(circuit: &Circuit) -> Result<Vec<Complex64>> {
    let n = circuit.num_qubits();
    check_oracle_size(n)?;
    let mut state = vec![Complex64::new(0.0, 0.0); 1 << n];
    state[0] = Complex64::new(1.0, 0.0);
    for &g in circuit.gates() {
        apply_gate(&mut state, g);
    }
    Ok(state)
}

/// The circuit unitary as a list of columns: `columns[j] = U |j⟩`.
pub fn unitary(circuit: &Circuit) -> Result<Vec<Vec<Complex64>>> {
    let n = circuit.num_qubits();
    check_oracle_size(n)?;
    let dim = 1usize << n;
    Ok((0..dim)
        .map(|j| {
            let mut col = vec![Complex64::new(0.0, 0.0); dim];
            col[j] = Complex64::new(1.0, 0.0);
            for &g in circuit.gates() {
                apply_gate(&mut col, g);
            }
            col
        })
        .collect())
}

/// Applies the Pauli string `i^phase ⊗ P(x_q, z_q)` (with `P(1,1) = Y`) to a state.
fn apply_pauli(x: usize, z: usize, phase: u8, state: &[Complex64]) -> Vec<Complex64> {
    let y_count = (x & z).count_ones() as u8;
    let global = Complex64::i().powu(u32::from((phase + y_count) % 4));
    let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
    for (b, &amp) in state.iter().enumerate() {
        let sign = if (z & b).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        out[b ^ x] = amp * global * sign;
    }
    out
}

/// `U P U† |j⟩` for a basis Pauli `P`.
fn conjugated_column(u: &[Vec<Complex64>], x: usize, z: usize, j: usize) -> Vec<Complex64> {
    let dim = u.len();
    // U† |j⟩ is the conjugated j-th row of U.
    let udag_j: Vec<Complex64> = (0..dim).map(|k| u[k][j].conj()).collect();
    let p = apply_pauli(x, z, 0, &udag_j);
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (k, &c) in p.iter().enumerate() {
        if c.norm_sqr() > 0.0 {
            for (o, &v) in out.iter_mut().zip(&u[k]) {
                *o += c * v;
            }
        }
    }
    out
}

/// Reads a Hermitian Pauli `±P` off its action on |0⟩ and on each |2^q⟩.
fn decode_pauli(
    u: &[Vec<Complex64>],
    n: usize,
    x_in: usize,
    z_in: usize,
) -> Result<(usize, usize, bool)> {
    const TOL: f64 = 1e-9;
    let col0 = conjugated_column(u, x_in, z_in, 0);
    let (x, a0) = col0
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
        .map(|(k, &a)| (k, a))
        .expect("non-empty state");
    if (a0.norm() - 1.0).abs() > TOL {
        return Err(Error::Precondition(
            "conjugated operator is not a Pauli".into(),
        ));
    }
    let mut z = 0usize;
    for q in 0..n {
        let col = conjugated_column(u, x_in, z_in, 1 << q);
        let aq = col[x ^ (1 << q)];
        let ratio = aq / a0;
        if (ratio + 1.0).norm() < TOL {
            z |= 1 << q;
        } else if (ratio - 1.0).norm() > TOL {
            return Err(Error::Precondition(
                "conjugated operator is not a Pauli".into(),
            ));
        }
    }
    // column 0 amplitude = sign · i^{|x ∧ z|}
    let y_phase = Complex64::i().powu((x & z).count_ones() % 4);
    let sign = a0 / y_phase;
    let negative = if (sign - 1.0).norm() < TOL {
        false
    } else if (sign + 1.0).norm() < TOL {
        true
    } else {
        return Err(Error::Precondition(
            "conjugated operator is not Hermitian".into(),
        ));
    };
    Ok((x, z, negative))
}

/// Builds the tableau of `circuit` by conjugating each `X_q` and `Z_q` with
/// the dense unitary and decoding the resulting Pauli.
pub fn oracle_tableau(circuit: &Circuit) -> Result<CliffordTableau> {
    let n = circuit.num_qubits();
    let u = unitary(circuit)?;
    let mut table = BitMatrix::zeros(2 * n, 2 * n);
    let mut signs = BitVector::zeros(2 * n);
    for row in 0..2 * n {
        let (x_in, z_in) = if row < n {
            (1 << row, 0)
        } else {
            (0, 1 << (row - n))
        };
        let (x, z, neg) = decode_pauli(&u, n, x_in, z_in)?;
        for q in 0..n {
            table.set(row, q, x >> q & 1 == 1);
            table.set(row, n + q, z >> q & 1 == 1);
        }
        signs.set(row, neg);
    }
    CliffordTableau::from_parts(table, signs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, gates: &[Gate]) -> Circuit {
        Circuit::from_gates(n, gates.to_vec()).unwrap()
    }

    #[test]
    fn connectivity_examples() {
        let line = CouplingGraph::line(3).unwrap();
        assert_eq!(
            check_connectivity(&c(3, &[Gate::cx(0, 2)]), &line),
            vec![Violation {
                index: 0,
                control: 0,
                target: 2
            }]
        );
        assert!(check_connectivity(&c(3, &[Gate::cx(0, 1), Gate::cx(1, 2)]), &line).is_empty());
        assert!(check_connectivity(&c(3, &[Gate::H(0), Gate::cx(2, 1)]), &line).is_empty());
    }

    #[test]
    fn roundtrip_examples() {
        let id = CliffordTableau::identity(2).unwrap();
        assert!(check_circuit_implements(&id, &Circuit::new(2), &[0, 1]).unwrap());
        assert!(!check_circuit_implements(&id, &c(2, &[Gate::H(0)]), &[0, 1]).unwrap());
        assert!(check_circuit_implements(&id, &Circuit::new(3), &[0, 1, 2]).is_err());
        assert!(check_circuit_implements(&id, &Circuit::new(2), &[0, 0]).is_err());

        // physical circuit cx(1, 0) under logical→physical [1, 0] is logical cx(0, 1)
        let target = CliffordTableau::from_circuit(&c(2, &[Gate::cx(0, 1)])).unwrap();
        assert!(check_circuit_implements(&target, &c(2, &[Gate::cx(1, 0)]), &[1, 0]).unwrap());
        assert!(!check_circuit_implements(&target, &c(2, &[Gate::cx(1, 0)]), &[0, 1]).unwrap());
    }

    #[test]
    fn statevector_examples() {
        let v = statevector(&Circuit::new(1)).unwrap();
        assert_eq!(v, vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let h = statevector(&c(1, &[Gate::H(0)])).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for a in h {
            assert!((a - Complex64::new(r, 0.0)).norm() < 1e-15);
        }
        assert_eq!(
            statevector(&Circuit::new(11)),
            Err(Error::TooManyQubits { n: 11, max: 10 })
        );
    }

    #[test]
    fn oracle_on_known_gates() {
        let h = oracle_tableau(&c(1, &[Gate::H(0)])).unwrap();
        assert_eq!(h.to_text(), "n=1\n01 +\n10 +\n");
        let s = oracle_tableau(&c(1, &[Gate::S(0)])).unwrap();
        assert_eq!(s.to_text(), "n=1\n11 +\n01 +\n");
        // conjugation by Z = S·S flips the sign of X only
        let z = oracle_tableau(&c(1, &[Gate::S(0), Gate::S(0)])).unwrap();
        assert_eq!(z.to_text(), "n=1\n10 -\n01 +\n");
        let bell = oracle_tableau(&c(2, &[Gate::H(0), Gate::cx(0, 1)])).unwrap();
        assert_eq!(bell.to_text(), "n=2\n0010 +\n0100 +\n1100 +\n0011 +\n");
    }
}
