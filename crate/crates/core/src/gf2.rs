//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors and matrix rows are stored as little-endian `u64` words: bit `i`
//! lives in word `i / 64` at position `i % 64`. Padding bits past the logical
//! length are always zero, so word-level equality and popcounts are exact.

use std::fmt;

use rayon::prelude::*;

use crate::error::{argument, Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Gf2Vector {
            len,
            words: vec![!0; words_for(len)],
        };
        v.clear_padding();
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from raw words, clearing any bits past `len`.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Gf2Vector { len, words };
        v.clear_padding();
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    fn clear_padding(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &Gf2Vector) -> Gf2Vector {
        assert_eq!(self.len, other.len, "length mismatch");
        Gf2Vector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        dot_words(&self.words, &other.words)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `true` when every set bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Indices of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn fill_random<R: rand::Rng + ?Sized>(&mut self, rng: &mut R) {
        for w in &mut self.words {
            *w = rng.gen();
        }
        self.clear_padding();
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

#[inline]
fn dot_words(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones())
        & 1
        == 1
}

/// Row-major dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Rows below this many words of pending work are eliminated sequentially.
const PAR_THRESHOLD_WORDS: usize = 1 << 16;

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Gf2Matrix {
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

    pub fn from_rows(cols: usize, rows: &[Gf2Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return argument(format!("row {i} has length {}, expected {cols}", r.len()));
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    pub fn random<R: rand::Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            let mut v = Gf2Vector::zeros(cols);
            v.fill_random(rng);
            m.row_words_mut(i).copy_from_slice(v.words());
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
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        self.data[r * self.stride + c / WORD] >> (c % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        let bit = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> Gf2Vector {
        Gf2Vector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * s);
        head[lo * s..(lo + 1) * s].swap_with_slice(&mut tail[..s]);
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s = self.stride;
        let (src_w, dst_w) = if src < dst {
            let (head, tail) = self.data.split_at_mut(dst * s);
            (&head[src * s..(src + 1) * s], &mut tail[..s])
        } else {
            let (head, tail) = self.data.split_at_mut(src * s);
            (&tail[..s], &mut head[dst * s..(dst + 1) * s])
        };
        for (d, x) in dst_w.iter_mut().zip(src_w) {
            *d ^= x;
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            let row = self.row_words(r);
            for (wi, &w) in row.iter().enumerate() {
                let mut rest = w;
                while rest != 0 {
                    let c = wi * WORD + rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    t.data[c * t.stride + r / WORD] |= 1u64 << (r % WORD);
                }
            }
        }
        t
    }

    pub fn matvec(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        if x.len() != self.cols {
            return argument(format!(
                "vector length {} does not match {} columns",
                x.len(),
                self.cols
            ));
        }
        let mut out = Gf2Vector::zeros(self.rows);
        for r in 0..self.rows {
            if dot_words(self.row_words(r), x.words()) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Rank over GF(2). Works on a private copy.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.forward_eliminate(self.cols).len()
    }

    /// Reduces rows to echelon form over the first `pivot_cols` columns,
    /// taking as pivot the first row with a one in the leftmost unresolved
    /// column. Returns the pivot column of each leading row.
    fn forward_eliminate(&mut self, pivot_cols: usize) -> Vec<usize> {
        let s = self.stride;
        let rows = self.rows;
        let mut pivots = Vec::new();
        for col in 0..pivot_cols {
            let rank = pivots.len();
            if rank == rows {
                break;
            }
            let w = col / WORD;
            let bit = 1u64 << (col % WORD);
            let Some(p) = (rank..rows).find(|&r| self.data[r * s + w] & bit != 0) else {
                continue;
            };
            self.swap_rows(p, rank);
            // Rows at or below `rank` are zero left of `col`, so only words
            // from `w` onwards change.
            let (top, bottom) = self.data.split_at_mut((rank + 1) * s);
            let pivot = &top[rank * s + w..rank * s + s];
            let eliminate = |row: &mut [u64]| {
                if row[w] & bit != 0 {
                    for (a, b) in row[w..].iter_mut().zip(pivot) {
                        *a ^= b;
                    }
                }
            };
            if bottom.len() * (s - w) / s.max(1) > PAR_THRESHOLD_WORDS {
                bottom.par_chunks_exact_mut(s).for_each(eliminate);
            } else {
                bottom.chunks_exact_mut(s).for_each(eliminate);
            }
            pivots.push(col);
        }
        pivots
    }

    /// Solves `self · x = b`. Free variables are set to zero; the result is
    /// checked against `b` before it is returned.
    pub fn solve(&self, b: &Gf2Vector) -> Result<Gf2Vector> {
        if b.len() != self.rows {
            return argument(format!(
                "right-hand side length {} does not match {} rows",
                b.len(),
                self.rows
            ));
        }
        let cols = self.cols;
        let mut aug = Gf2Matrix::zeros(self.rows, cols + 1);
        for r in 0..self.rows {
            let dst = aug.row_words_mut(r);
            dst[..self.stride].copy_from_slice(self.row_words(r));
            if b.get(r) {
                dst[cols / WORD] |= 1u64 << (cols % WORD);
            }
        }
        let pivots = aug.forward_eliminate(cols);
        // A zero row with a one in the augmented column is a contradiction;
        // such rows sit below the last pivot row.
        if (pivots.len()..aug.rows).any(|r| aug.get(r, cols)) {
            return Err(Error::Inconsistent);
        }
        let mut x = Gf2Vector::zeros(cols);
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let row = aug.row_words(r);
            let mut acc = aug.get(r, cols);
            // bits right of the pivot, excluding the augmented column
            for (wi, (&rw, &xw)) in row.iter().zip(x.words()).enumerate().skip(pc / WORD) {
                let mut m = rw & xw;
                if wi == pc / WORD {
                    m &= !((1u64 << (pc % WORD)) | ((1u64 << (pc % WORD)) - 1));
                }
                acc ^= m.count_ones() & 1 == 1;
            }
            if acc {
                x.set(pc, true);
            }
        }
        if self.matvec(&x)? != *b {
            return Err(Error::Internal("solve produced x with a·x != b".into()));
        }
        Ok(x)
    }

    /// One line per row of `0`/`1` characters.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(if self.get(r, c) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let cols = lines.first().map_or(0, |l| l.trim().len());
        let mut m = Gf2Matrix::zeros(lines.len(), cols);
        for (r, line) in lines.iter().enumerate() {
            let line = line.trim();
            if line.len() != cols {
                return Err(Error::Parse(format!(
                    "row {r} has {} entries, expected {cols}",
                    line.len()
                )));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, true),
                    other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
                }
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_text())
    }
}
