use crate::bitmatrix::BitVector;

/// A Pauli string `i^phase · ⊗_j P(x_j, z_j)` with `P(1, 1) = Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliRow {
    pub x: BitVector,
    pub z: BitVector,
    /// Exponent of `i`, modulo 4.
    pub phase: u8,
}

impl PauliRow {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// `self ← self · rhs`, tracking the phase picked up from non-commuting factors.
    pub fn mul_assign_right(&mut self, rhs: &PauliRow) {
        debug_assert_eq!(self.len(), rhs.len());
        let mut acc: i64 = 0;
        let n = self.len();
        let words = n.div_ceil(64);
        for w in 0..words {
            let (ax, az) = (word(&self.x, w), word(&self.z, w));
            let (bx, bz) = (word(&rhs.x, w), word(&rhs.z, w));
            let plus = (ax & az & bz & !bx) | (ax & !az & bz & bx) | (!ax & az & bx & !bz);
            let minus = (ax & az & bx & !bz) | (ax & !az & bz & !bx) | (!ax & az & bx & bz);
            acc += plus.count_ones() as i64 - minus.count_ones() as i64;
        }
        for j in rhs.x.iter_ones() {
            self.x.flip(j);
        }
        for j in rhs.z.iter_ones() {
            self.z.flip(j);
        }
        self.phase = (self.phase as i64 + rhs.phase as i64 + acc).rem_euclid(4) as u8;
    }

    /// Symplectic inner product: `true` when the two strings anticommute.
    pub fn anticommutes(&self, other: &PauliRow) -> bool {
        let words = self.len().div_ceil(64);
        let mut parity = 0u32;
        for w in 0..words {
            let v = (word(&self.x, w) & word(&other.z, w)) ^ (word(&self.z, w) & word(&other.x, w));
            parity ^= v.count_ones() & 1;
        }
        parity == 1
    }
}

fn word(v: &BitVector, w: usize) -> u64 {
    v.as_words()[w]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(x: bool, z: bool) -> PauliRow {
        PauliRow {
            x: BitVector::from_bits([x]),
            z: BitVector::from_bits([z]),
            phase: 0,
        }
    }

    #[test]
    fn single_qubit_products() {
        let (i, x, y, z) = (
            single(false, false),
            single(true, false),
            single(true, true),
            single(false, true),
        );
        let prod = |a: &PauliRow, b: &PauliRow| {
            let mut r = a.clone();
            r.mul_assign_right(b);
            r
        };
        // XY = iZ, YZ = iX, ZX = iY and the reversed orders pick up -i.
        assert_eq!(
            prod(&x, &y),
            PauliRow {
                phase: 1,
                ..z.clone()
            }
        );
        assert_eq!(
            prod(&y, &z),
            PauliRow {
                phase: 1,
                ..x.clone()
            }
        );
        assert_eq!(
            prod(&z, &x),
            PauliRow {
                phase: 1,
                ..y.clone()
            }
        );
        assert_eq!(
            prod(&y, &x),
            PauliRow {
                phase: 3,
                ..z.clone()
            }
        );
        assert_eq!(
            prod(&x, &z),
            PauliRow {
                phase: 3,
                ..y.clone()
            }
        );
        for p in [&i, &x, &y, &z] {
            assert_eq!(prod(p, p), i);
        }
        assert!(x.anticommutes(&z) && !x.anticommutes(&x) && !i.anticommutes(&y));
    }
}
