//! Clifford tableaus.
//!
//! Row `i < n` is the image of `X_i` under conjugation by the represented
//! Clifford (a destabilizer), row `n + i` the image of `Z_i` (a stabilizer).
//! Columns `0..n` hold the X-part of each row and columns `n..2n` the Z-part;
//! a set bit in both halves at qubit `j` means `Y_j`. One sign bit per row.
//!
//! The storage puts X bits first. An encoding that lists Z bits first (with
//! the X bits in the upper half) is the same data with the two column halves
//! exchanged.

use std::fmt::Write as _;

use crate::bitmatrix::{BitMatrix, BitVector};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::PauliRow;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    n: usize,
    table: BitMatrix,
    signs: BitVector,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyRegister);
        }
        Ok(Self {
            n,
            table: BitMatrix::identity(2 * n),
            signs: BitVector::zeros(2 * n),
        })
    }

    /// Assembles a tableau from raw parts. Only shapes are checked.
    pub fn from_parts(table: BitMatrix, signs: BitVector) -> Result<Self> {
        let rows = table.rows();
        if rows == 0 || !rows.is_multiple_of(2) || table.cols() != rows || signs.len() != rows {
            return Err(Error::Precondition(format!(
                "tableau parts have shape {}x{} with {} signs",
                rows,
                table.cols(),
                signs.len()
            )));
        }
        Ok(Self {
            n: rows / 2,
            table,
            signs,
        })
    }

    pub fn from_circuit(circuit: &Circuit) -> Result<Self> {
        let mut t = Self::identity(circuit.num_qubits())?;
        for &g in circuit.gates() {
            t.append_gate(g)?;
        }
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &BitMatrix {
        &self.table
    }

    pub fn signs(&self) -> &BitVector {
        &self.signs
    }

    #[inline]
    pub fn x(&self, row: usize, qubit: usize) -> bool {
        self.table.get(row, qubit)
    }

    #[inline]
    pub fn z(&self, row: usize, qubit: usize) -> bool {
        self.table.get(row, self.n + qubit)
    }

    #[inline]
    pub fn sign(&self, row: usize) -> bool {
        self.signs.get(row)
    }

    /// Flips one entry of the binary table. Intended for tests and tools
    /// that construct tableaus by hand.
    pub fn flip_bit(&mut self, row: usize, col: usize) {
        self.table.flip(row, col);
    }

    pub fn flip_sign(&mut self, row: usize) {
        self.signs.flip(row);
    }

    /// Row `row` as a Pauli string with its sign folded into the phase.
    pub fn pauli_row(&self, row: usize) -> PauliRow {
        let mut p = PauliRow::identity(self.n);
        for c in self.table.row_ones(row) {
            if c < self.n {
                p.x.set(c, true);
            } else {
                p.z.set(c - self.n, true);
            }
        }
        p.phase = if self.sign(row) { 2 } else { 0 };
        p
    }

    fn set_pauli_row(&mut self, row: usize, p: &PauliRow) -> Result<()> {
        if !p.phase.is_multiple_of(2) {
            return Err(Error::NotSymplectic);
        }
        for q in 0..self.n {
            self.table.set(row, q, p.x.get(q));
            self.table.set(row, self.n + q, p.z.get(q));
        }
        self.signs.set(row, p.phase == 2);
        Ok(())
    }

    /// `true` when the table is the identity matrix, ignoring signs.
    pub fn is_identity_table(&self) -> bool {
        (0..2 * self.n).all(|r| {
            let mut ones = self.table.row_ones(r);
            ones.next() == Some(r) && ones.next().is_none()
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_identity_table() && self.signs.not_any()
    }

    /// Conjugates every row by `gate`: the represented Clifford followed by `gate`.
    pub fn append_gate(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        let n = self.n;
        match gate {
            Gate::H(q) => {
                for r in 0..2 * n {
                    let (x, z) = (self.table.get(r, q), self.table.get(r, n + q));
                    if x && z {
                        self.signs.flip(r);
                    }
                    if x != z {
                        self.table.flip(r, q);
                        self.table.flip(r, n + q);
                    }
                }
            }
            Gate::S(q) => {
                for r in 0..2 * n {
                    let (x, z) = (self.table.get(r, q), self.table.get(r, n + q));
                    if x {
                        if z {
                            self.signs.flip(r);
                        }
                        self.table.flip(r, n + q);
                    }
                }
            }
            Gate::Cx { control, target } => {
                let (c, t) = (control, target);
                for r in 0..2 * n {
                    let xc = self.table.get(r, c);
                    let zt = self.table.get(r, n + t);
                    if xc && zt {
                        let xt = self.table.get(r, t);
                        let zc = self.table.get(r, n + c);
                        if xt == zc {
                            self.signs.flip(r);
                        }
                    }
                    if xc {
                        self.table.flip(r, t);
                    }
                    if zt {
                        self.table.flip(r, n + c);
                    }
                }
            }
        }
        Ok(())
    }

    /// `gate` followed by the represented Clifford.
    pub fn prepend_gate(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        let n = self.n;
        match gate {
            Gate::H(q) => {
                self.table.swap_rows(q, n + q)?;
                let (a, b) = (self.signs.get(q), self.signs.get(n + q));
                self.signs.set(q, b);
                self.signs.set(n + q, a);
            }
            Gate::S(q) => {
                // S X S† = Y = i X Z
                let mut row = self.pauli_row(q);
                row.mul_assign_right(&self.pauli_row(n + q));
                row.phase = (row.phase + 1) % 4;
                self.set_pauli_row(q, &row)?;
            }
            Gate::Cx { control, target } => {
                // X_c ↦ X_c X_t and Z_t ↦ Z_c Z_t
                let mut row = self.pauli_row(control);
                row.mul_assign_right(&self.pauli_row(target));
                self.set_pauli_row(control, &row)?;
                let mut row = self.pauli_row(n + control);
                row.mul_assign_right(&self.pauli_row(n + target));
                self.set_pauli_row(n + target, &row)?;
            }
        }
        Ok(())
    }

    /// The image of an arbitrary Pauli string under this tableau.
    pub fn conjugate(&self, pauli: &PauliRow) -> Result<PauliRow> {
        if pauli.len() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: pauli.len(),
            });
        }
        let mut acc = PauliRow::identity(self.n);
        acc.phase = pauli.phase;
        for q in 0..self.n {
            match (pauli.x.get(q), pauli.z.get(q)) {
                (false, false) => {}
                (true, false) => acc.mul_assign_right(&self.pauli_row(q)),
                (false, true) => acc.mul_assign_right(&self.pauli_row(self.n + q)),
                (true, true) => {
                    // Y = i X Z
                    acc.phase = (acc.phase + 1) % 4;
                    acc.mul_assign_right(&self.pauli_row(q));
                    acc.mul_assign_right(&self.pauli_row(self.n + q));
                }
            }
        }
        Ok(acc)
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &CliffordTableau) -> Result<CliffordTableau> {
        if self.n != then.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: then.n,
            });
        }
        let mut out = CliffordTableau::identity(self.n)?;
        for r in 0..2 * self.n {
            let image = then.conjugate(&self.pauli_row(r))?;
            out.set_pauli_row(r, &image)?;
        }
        Ok(out)
    }

    /// The inverse Clifford, via the symplectic adjoint.
    pub fn inverse(&self) -> Result<CliffordTableau> {
        if !self.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        let n = self.n;
        // [[A, B], [C, D]]⁻¹ = [[Dᵀ, Bᵀ], [Cᵀ, Aᵀ]] for symplectic tableaus.
        let mut table = BitMatrix::zeros(2 * n, 2 * n);
        for r in 0..2 * n {
            for c in self.table.row_ones(r) {
                let (rb, ri) = (r / n, r % n);
                let (cb, ci) = (c / n, c % n);
                let (tb_r, tb_c) = match (rb, cb) {
                    (0, 0) => (1, 1),
                    (1, 1) => (0, 0),
                    (0, 1) => (0, 1),
                    _ => (1, 0),
                };
                table.set(tb_r * n + ci, tb_c * n + ri, true);
            }
        }
        let mut inv = CliffordTableau {
            n,
            table,
            signs: BitVector::zeros(2 * n),
        };
        // Each sign of `inv` enters only its own row of `inv ∘ self`, so the
        // residual signs of the unsigned product are the correction.
        let residual = inv.compose(self)?;
        inv.signs = residual.signs;
        Ok(inv)
    }

    /// Checks the pairwise commutation structure of all rows: destabilizer `i`
    /// anticommutes with stabilizer `i` and every other pair commutes.
    pub fn is_symplectic(&self) -> bool {
        let rows: Vec<PauliRow> = (0..2 * self.n).map(|r| self.pauli_row(r)).collect();
        for a in 0..rows.len() {
            for b in a..rows.len() {
                let expect = b == a + self.n && a < self.n;
                if rows[a].anticommutes(&rows[b]) != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Text form: `n=<n>`, then one line per row with `2n` table bits, a
    /// space and `+` or `-`. Destabilizers come first.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for r in 0..2 * self.n {
            for c in 0..2 * self.n {
                out.push(if self.table.get(r, c) { '1' } else { '0' });
            }
            let _ = writeln!(out, " {}", if self.sign(r) { '-' } else { '+' });
        }
        out
    }

    /// Parses [`to_text`](Self::to_text). The sign may also be written as `0`/`1`
    /// and the separating space is optional.
    pub fn parse_text(text: &str) -> Result<CliffordTableau> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "empty tableau file".into(),
        })?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or(Error::Parse {
                line: hline,
                message: format!("expected `n=<int>` header, got `{header}`"),
            })?;
        let mut t = CliffordTableau::identity(n).map_err(|e| Error::Parse {
            line: hline,
            message: e.to_string(),
        })?;
        t.table = BitMatrix::zeros(2 * n, 2 * n);
        for r in 0..2 * n {
            let (line_no, line) = lines.next().ok_or(Error::Parse {
                line: 0,
                message: format!("expected {} rows, found {r}", 2 * n),
            })?;
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let chars: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
            if chars.len() != 2 * n + 1 {
                return Err(err(format!(
                    "row has {} symbols, expected {}",
                    chars.len(),
                    2 * n + 1
                )));
            }
            for (c, &ch) in chars[..2 * n].iter().enumerate() {
                match ch {
                    '0' => {}
                    '1' => t.table.set(r, c, true),
                    other => return Err(err(format!("unexpected `{other}` in row"))),
                }
            }
            match chars[2 * n] {
                '+' | '0' => {}
                '-' | '1' => t.signs.set(r, true),
                other => return Err(err(format!("unexpected sign `{other}`"))),
            }
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                message: "trailing content after tableau rows".into(),
            });
        }
        Ok(t)
    }
}
