//! Bit-packed GF(2) vectors and matrices.
//!
//! Rows are stored as contiguous runs of `u64` words so that adding one row
//! to another costs `cols / 64` word operations. Column operations touch one
//! bit per row.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn split(index: usize) -> (usize, u64) {
    (index / WORD, 1u64 << (index % WORD))
}

fn check(index: usize, len: usize) -> Result<()> {
    if index < len {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, len })
    }
}

/// Fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Panics if `i >= len`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let (w, m) = split(i);
        self.words[w] & m != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let (w, m) = split(i);
        if value {
            self.words[w] |= m;
        } else {
            self.words[w] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let (w, m) = split(i);
        self.words[w] ^= m;
    }

    pub fn try_get(&self, i: usize) -> Result<bool> {
        check(i, self.len)?;
        Ok(self.get(i))
    }

    /// Packed storage, least significant bit first. Bits past `len` are zero.
    pub fn as_words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn not_any(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        ones(&self.words)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            }
        })
    })
}

/// Dense row-major GF(2) matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. All rows must have equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b != 0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn offset(&self, row: usize) -> usize {
        row * self.stride
    }

    /// Panics on out-of-range indices.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(
            row < self.rows && col < self.cols,
            "({row}, {col}) out of range"
        );
        let (w, m) = split(col);
        self.data[self.offset(row) + w] & m != 0
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(
            row < self.rows && col < self.cols,
            "({row}, {col}) out of range"
        );
        let (w, m) = split(col);
        let o = self.offset(row) + w;
        if value {
            self.data[o] |= m;
        } else {
            self.data[o] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, row: usize, col: usize) {
        assert!(
            row < self.rows && col < self.cols,
            "({row}, {col}) out of range"
        );
        let (w, m) = split(col);
        let o = self.offset(row) + w;
        self.data[o] ^= m;
    }

    /// The packed words of one row. Bits past `cols` are always zero.
    pub fn row_words(&self, row: usize) -> &[u64] {
        let o = self.offset(row);
        &self.data[o..o + self.stride]
    }

    pub fn row_ones(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.row_words(row))
    }

    pub fn row(&self, row: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(row).to_vec(),
        }
    }

    pub fn row_is_zero(&self, row: usize) -> bool {
        self.row_words(row).iter().all(|&w| w == 0)
    }

    /// `dst ^= src`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) -> Result<()> {
        check(src, self.rows)?;
        check(dst, self.rows)?;
        if src == dst {
            return Err(Error::SameIndex(src));
        }
        let (s, d) = (self.offset(src), self.offset(dst));
        for k in 0..self.stride {
            let w = self.data[s + k];
            self.data[d + k] ^= w;
        }
        Ok(())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) -> Result<()> {
        check(a, self.rows)?;
        check(b, self.rows)?;
        if a != b {
            for k in 0..self.stride {
                self.data.swap(a * self.stride + k, b * self.stride + k);
            }
        }
        Ok(())
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) -> Result<()> {
        check(a, self.cols)?;
        check(b, self.cols)?;
        if a == b {
            return Ok(());
        }
        let (wa, ma) = split(a);
        let (wb, mb) = split(b);
        for r in 0..self.rows {
            let o = self.offset(r);
            let va = self.data[o + wa] & ma != 0;
            let vb = self.data[o + wb] & mb != 0;
            if va != vb {
                self.data[o + wa] ^= ma;
                self.data[o + wb] ^= mb;
            }
        }
        Ok(())
    }

    /// Column `dst ^=` column `src`.
    pub fn xor_col_into(&mut self, src: usize, dst: usize) -> Result<()> {
        check(src, self.cols)?;
        check(dst, self.cols)?;
        if src == dst {
            return Err(Error::SameIndex(src));
        }
        let (ws, ms) = split(src);
        let (wd, md) = split(dst);
        for r in 0..self.rows {
            let o = self.offset(r);
            if self.data[o + ws] & ms != 0 {
                self.data[o + wd] ^= md;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[u8]]) -> BitMatrix {
        BitMatrix::from_rows(rows)
    }

    #[test]
    fn xor_row_examples() {
        let mut a = m(&[&[1, 0], &[1, 1]]);
        a.xor_row_into(0, 1).unwrap();
        assert_eq!(a, m(&[&[1, 0], &[0, 1]]));

        let mut b = m(&[&[0, 0], &[1, 1]]);
        b.xor_row_into(0, 1).unwrap();
        assert_eq!(b, m(&[&[0, 0], &[1, 1]]));

        let mut c = m(&[&[1, 1, 1], &[1, 0, 1]]);
        c.xor_row_into(1, 0).unwrap();
        assert_eq!(c, m(&[&[0, 1, 0], &[1, 0, 1]]));
    }

    #[test]
    fn xor_row_errors() {
        let mut a = BitMatrix::identity(2);
        assert_eq!(a.xor_row_into(1, 1), Err(Error::SameIndex(1)));
        assert!(matches!(
            a.xor_row_into(0, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert_eq!(a, BitMatrix::identity(2));
    }

    #[test]
    fn swap_columns_examples() {
        let mut a = BitMatrix::identity(2);
        a.swap_columns(0, 1).unwrap();
        assert_eq!(a, m(&[&[0, 1], &[1, 0]]));

        let mut b = m(&[&[1, 1], &[0, 0]]);
        b.swap_columns(0, 1).unwrap();
        assert_eq!(b, m(&[&[1, 1], &[0, 0]]));

        let mut c = BitMatrix::identity(3);
        c.swap_columns(0, 2).unwrap();
        assert_eq!(c, m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));

        let mut d = BitMatrix::identity(3);
        d.swap_columns(1, 1).unwrap();
        assert_eq!(d, BitMatrix::identity(3));
        assert!(d.swap_columns(0, 3).is_err());
    }

    #[test]
    fn xor_col_examples() {
        let mut a = m(&[&[1, 0], &[1, 0]]);
        a.xor_col_into(0, 1).unwrap();
        assert_eq!(a, m(&[&[1, 1], &[1, 1]]));

        let mut b = m(&[&[0, 1], &[0, 0]]);
        b.xor_col_into(0, 1).unwrap();
        assert_eq!(b, m(&[&[0, 1], &[0, 0]]));

        let mut c = BitMatrix::identity(2);
        c.xor_col_into(0, 1).unwrap();
        assert_eq!(c, m(&[&[1, 1], &[0, 1]]));

        assert_eq!(c.xor_col_into(0, 0), Err(Error::SameIndex(0)));
        assert!(c.xor_col_into(2, 0).is_err());
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let mut a = BitMatrix::zeros(2, 200);
        a.set(0, 3, true);
        a.set(0, 130, true);
        a.set(1, 199, true);
        a.xor_row_into(0, 1).unwrap();
        assert_eq!(a.row_ones(1).collect::<Vec<_>>(), vec![3, 130, 199]);
        a.swap_columns(3, 199).unwrap();
        assert_eq!(a.row_ones(0).collect::<Vec<_>>(), vec![130, 199]);
        a.xor_col_into(130, 64).unwrap();
        assert!(a.get(0, 64) && a.get(1, 64));
    }

    fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
        (1usize..6, 1usize..80).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::bool::ANY, r * c).prop_map(move |bits| {
                let mut m = BitMatrix::zeros(r, c);
                for (k, b) in bits.into_iter().enumerate() {
                    m.set(k / c, k % c, b);
                }
                m
            })
        })
    }

    /// A matrix with at least two rows and two columns, plus two distinct row
    /// indices and two distinct column indices.
    fn arb_with_indices() -> impl Strategy<Value = (BitMatrix, (usize, usize), (usize, usize))> {
        arb_matrix()
            .prop_filter("needs two rows and columns", |m| {
                m.rows() > 1 && m.cols() > 1
            })
            .prop_flat_map(|m| {
                let (r, c) = (m.rows(), m.cols());
                let distinct = |k: usize| (0..k, 1..k).prop_map(move |(a, d)| (a, (a + d) % k));
                (Just(m), distinct(r), distinct(c))
            })
    }

    proptest! {
        #[test]
        fn row_xor_is_involution((m, (s, d), _) in arb_with_indices()) {
            let mut t = m.clone();
            t.xor_row_into(s, d).unwrap();
            t.xor_row_into(s, d).unwrap();
            prop_assert_eq!(t, m);
        }

        #[test]
        fn column_swap_is_involution((m, _, (a, b)) in arb_with_indices()) {
            let mut t = m.clone();
            t.swap_columns(a, b).unwrap();
            t.swap_columns(a, b).unwrap();
            prop_assert_eq!(t, m);
        }

        #[test]
        fn row_and_column_ops_commute((m, (rs, rd), (cs, cd)) in arb_with_indices()) {
            let mut a = m.clone();
            a.xor_row_into(rs, rd).unwrap();
            a.xor_col_into(cs, cd).unwrap();
            let mut b = m.clone();
            b.xor_col_into(cs, cd).unwrap();
            b.xor_row_into(rs, rd).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
