//! Dense, bit-packed linear algebra over GF(2).
//!
//! Rows are stored as consecutive runs of 64-bit words, little-endian within a
//! word: column `j` of a row lives in bit `j % 64` of word `j / 64`. Bits past
//! the last column are always zero, which lets equality, hashing and weight
//! computations work directly on the words.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Word = u64;
pub const WORD_BITS: usize = Word::BITS as usize;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Iterator over the set positions of a packed word slice.
pub struct Ones<'a> {
    words: &'a [Word],
    index: usize,
    current: Word,
}

impl<'a> Ones<'a> {
    fn new(words: &'a [Word]) -> Self {
        Ones {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<Word>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from 0/1 entries; any nonzero byte counts as one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: Vec<Word>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        BitVector { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones::new(&self.words)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<Word>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
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

    /// Builds a matrix from rows of 0/1 entries.
    ///
    /// All rows must have length `cols`.
    pub fn from_rows<R: AsRef<[u8]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    pub fn from_vectors(cols: usize, rows: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, v) in rows.iter().enumerate() {
            if v.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: v.len(),
                });
            }
            m.row_words_mut(i).copy_from_slice(v.words());
        }
        Ok(m)
    }

    /// A single-row matrix holding `v`.
    pub fn from_row(v: &BitVector) -> Self {
        let mut m = Self::zeros(1, v.len());
        m.row_words_mut(0).copy_from_slice(v.words());
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "({i},{j}) outside {}x{}", self.rows, self.cols);
        self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "({i},{j}) outside {}x{}", self.rows, self.cols);
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let mask = 1 << (j % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        let v = self.get(i, j);
        self.set(i, j, !v);
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[Word] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn row_words_mut(&mut self, i: usize) -> &mut [Word] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn row_vectors(&self) -> Vec<BitVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn row_ones(&self, i: usize) -> Ones<'_> {
        Ones::new(self.row_words(i))
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= x;
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(i * self.stride + w, j * self.stride + w);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            let a = self.get(r, i);
            let b = self.get(r, j);
            self.set(r, i, b);
            self.set(r, j, a);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows) && self.rows == self.cols
    }

    /// Square, ones on the diagonal, zeros strictly above it.
    pub fn is_lower_unit_triangular(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| self.row_ones(i).all(|j| j <= i) && self.get(i, i))
    }

    /// Square, ones on the diagonal, zeros strictly below it.
    pub fn is_upper_unit_triangular(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| self.row_ones(i).all(|j| j >= i) && self.get(i, i))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let s = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.data[i * s..(i + 1) * s];
            for k in Ones::new(&self.data[i * self.stride..(i + 1) * self.stride]) {
                for (d, x) in dst.iter_mut().zip(other.row_words(k)) {
                    *d ^= x;
                }
            }
        }
        Ok(out)
    }

    /// `self · vᵀ`, returned as a vector of length `rows`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                & 1;
            if parity == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `v · self`, i.e. the GF(2) combination of rows selected by `v`.
    pub fn vec_mul(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.cols);
        for i in v.ones() {
            for (d, x) in out.words.iter_mut().zip(self.row_words(i)) {
                *d ^= x;
            }
        }
        Ok(out)
    }

    /// Kronecker product with lexicographic row and column linearization:
    /// entry `((i, k), (j, l))` sits at `(i * b.rows + k, j * b.cols + l)`.
    pub fn kron(&self, b: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * b.rows, self.cols * b.cols);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                for k in 0..b.rows {
                    let r = i * b.rows + k;
                    for l in b.row_ones(k) {
                        out.set(r, j * b.cols + l, true);
                    }
                }
            }
        }
        out
    }

    /// Kronecker product of a sequence; the empty product is the 1x1 identity.
    pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a BitMatrix>) -> BitMatrix {
        factors
            .into_iter()
            .fold(BitMatrix::identity(1), |acc, f| acc.kron(f))
    }

    /// Stacks matrices vertically. All blocks must share a column count.
    pub fn vstack(cols: usize, blocks: &[BitMatrix]) -> Result<BitMatrix> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = BitMatrix::zeros(rows, cols);
        let mut r = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch {
                    op: "vstack",
                    left_rows: rows,
                    left_cols: cols,
                    right_rows: b.rows,
                    right_cols: b.cols,
                });
            }
            out.data[r * out.stride..(r + b.rows) * out.stride].copy_from_slice(&b.data);
            r += b.rows;
        }
        Ok(out)
    }

    /// Block-diagonal matrix.
    pub fn block_diag(blocks: &[BitMatrix]) -> BitMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = BitMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in b.row_ones(i) {
                    out.set(r0 + i, c0 + j, true);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select_rows(&self, indices: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(indices.len(), self.cols);
        for (dst, &src) in indices.iter().enumerate() {
            out.row_words_mut(dst).copy_from_slice(self.row_words(src));
        }
        out
    }

    /// The matrix with its all-zero rows removed.
    pub fn nonzero_rows(&self) -> BitMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| !self.row_is_zero(i)).collect();
        self.select_rows(&keep)
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::new(self)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of the right kernel `{v : self · vᵀ = 0}`, one vector per row.
    ///
    /// Built from the reduced echelon form: one basis vector per free column,
    /// in increasing column order.
    pub fn kernel_basis(&self) -> BitMatrix {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = BitMatrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (r, &p) in ech.pivots.iter().enumerate() {
                if ech.reduced.get(r, f) {
                    out.set(k, p, true);
                }
            }
        }
        out
    }

    pub fn row_space_contains(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self.echelon().contains(v))
    }

    /// True when every row of `other` lies in the row space of `self`.
    pub fn row_space_includes(&self, other: &BitMatrix) -> Result<bool> {
        if other.cols != self.cols {
            return Err(Error::DimensionMismatch {
                op: "row_space_includes",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let ech = self.echelon();
        Ok((0..other.rows).all(|i| ech.contains(&other.row(i))))
    }

    pub fn same_row_space(&self, other: &BitMatrix) -> Result<bool> {
        Ok(self.row_space_includes(other)? && other.row_space_includes(self)?)
    }

    pub fn invert(&self) -> Result<BitMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = BitMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col)).ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            for r in 0..n {
                if r != col && a.get(r, col) {
                    a.xor_row(col, r);
                    inv.xor_row(col, r);
                }
            }
        }
        Ok(inv)
    }

    /// Text form: a `rows cols` header followed by one `0`/`1` line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {rows} rows, found {i}")))?
                .trim();
            if line.len() != cols {
                return Err(Error::Parse(format!("row {i} has {} entries, expected {cols}", line.len())));
            }
            for (j, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
                }
            }
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing rows".into()));
        }
        Ok(m)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of a matrix: `rank` independent rows, each with a
/// leading one at its pivot column and zeros at every other pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    reduced: BitMatrix,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &BitMatrix) -> Echelon {
        let mut a = m.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| a.get(i, col)) else {
                continue;
            };
            a.swap_rows(r, p);
            for i in 0..a.rows {
                if i != r && a.get(i, col) {
                    a.xor_row(r, i);
                }
            }
            pivots.push(col);
            r += 1;
        }
        let keep: Vec<usize> = (0..r).collect();
        Echelon {
            reduced: a.select_rows(&keep),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.reduced
    }

    /// Reduces `v` modulo the row space. The map is linear, and the result is
    /// zero exactly when `v` lies in the row space.
    pub fn reduce(&self, v: &mut BitVector) {
        for (r, &p) in self.pivots.iter().enumerate() {
            if v.get(p) {
                for (d, x) in v.words.iter_mut().zip(self.reduced.row_words(r)) {
                    *d ^= x;
                }
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }
}
