//! Dense GF(2) matrices with rows packed into 64-bit words.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::{Error, Result};

/// Row-major bit matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Rows below this many words are eliminated serially.
const PARALLEL_WORKLOAD: usize = 1 << 14;

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &b) in row.iter().enumerate() {
                m.set(r, c, b);
            }
        }
        m
    }

    /// Matrix whose column `j` has ones at the row indices `columns[j]`.
    pub fn from_sparse_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for &r in col {
                m.flip(r as usize, c);
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

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let w = &mut self.bits[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.bits[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let (dst, src) = (r * out.words, k * other.words);
                    for w in 0..out.words {
                        out.bits[dst + w] ^= other.bits[src + w];
                    }
                }
            }
        }
        out
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            words: self.words,
            bits,
        }
    }

    /// Rank by Gaussian elimination on packed rows.
    pub fn rank(&self) -> usize {
        let words = self.words;
        let mut bits = self.bits.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (w, mask) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..self.rows).find(|&r| bits[r * words + w] & mask != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..words {
                    bits.swap(p * words + k, rank * words + k);
                }
            }
            let (head, tail) = bits.split_at_mut((rank + 1) * words);
            let pivot = &head[rank * words + w..(rank + 1) * words];
            let eliminate = |row: &mut [u64]| {
                if row[w] & mask != 0 {
                    for (x, y) in row[w..].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            };
            if tail.len() * (words - w) >= PARALLEL_WORKLOAD {
                tail.par_chunks_mut(words).for_each(eliminate);
            } else {
                tail.chunks_mut(words).for_each(eliminate);
            }
            rank += 1;
        }
        rank
    }

    /// Canonical text: `GF2 <rows> <cols>`, then one hex line per row; the
    /// first digit holds columns 0..4 with column 0 as its high bit. Rows
    /// of a matrix with no columns are written as `-`.
    pub fn to_text(&self) -> String {
        let mut out = format!("GF2 {} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            if self.cols == 0 {
                out.push('-');
            }
            for chunk in 0..self.cols.div_ceil(4) {
                let mut digit = 0u32;
                for k in 0..4 {
                    let c = chunk * 4 + k;
                    if c < self.cols && self.get(r, c) {
                        digit |= 8 >> k;
                    }
                }
                write!(out, "{digit:x}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::Format { line, msg: msg.to_string() };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| bad(1, "empty matrix file"))?;
        let f: Vec<&str> = header.split_whitespace().collect();
        if f.len() != 3 || f[0] != "GF2" {
            return Err(bad(ln, "expected `GF2 <rows> <cols>`"));
        }
        let rows: usize = f[1].parse().map_err(|_| bad(ln, "bad row count"))?;
        let cols: usize = f[2].parse().map_err(|_| bad(ln, "bad column count"))?;
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            let (ln, l) = lines.next().ok_or_else(|| bad(ln, "missing rows"))?;
            if cols == 0 {
                if l != "-" {
                    return Err(bad(ln, "rows of a matrix without columns are `-`"));
                }
                continue;
            }
            if l.len() != cols.div_ceil(4) {
                return Err(bad(ln, "row has the wrong number of hex digits"));
            }
            for (chunk, ch) in l.chars().enumerate() {
                let digit = ch.to_digit(16).ok_or_else(|| bad(ln, "non-hex digit"))?;
                for k in 0..4 {
                    if digit & (8 >> k) != 0 {
                        let c = chunk * 4 + k;
                        if c >= cols {
                            return Err(bad(ln, "padding bits must be zero"));
                        }
                        m.set(r, c, true);
                    }
                }
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(bad(ln, "trailing content"));
        }
        Ok(m)
    }
}

/// Rank over GF(2).
pub fn rank_gf2(m: &Gf2Matrix) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ranks() {
        assert_eq!(rank_gf2(&Gf2Matrix::zeros(5, 5)), 0);
        assert_eq!(rank_gf2(&Gf2Matrix::identity(4)), 4);
        let m = Gf2Matrix::from_rows(&[vec![true, true, false], vec![false, true, true], vec![true, false, true]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn wide_rank_crosses_word_boundaries() {
        let mut m = Gf2Matrix::zeros(3, 200);
        m.set(0, 3, true);
        m.set(0, 130, true);
        m.set(1, 130, true);
        m.set(2, 3, true);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn text_round_trip() {
        let mut m = Gf2Matrix::zeros(2, 6);
        m.set(0, 0, true);
        m.set(1, 5, true);
        let t = m.to_text();
        assert_eq!(t, "GF2 2 6\n80\n04\n");
        assert_eq!(Gf2Matrix::from_text(&t).unwrap(), m);
        let z = Gf2Matrix::zeros(1, 0);
        assert_eq!(Gf2Matrix::from_text(&z.to_text()).unwrap(), z);
        assert!(Gf2Matrix::from_text("GF2 1 2\n1\n").is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = Gf2Matrix::from_rows(&[vec![true, true], vec![false, true]]);
        assert_eq!(a.mul(&a), Gf2Matrix::identity(2));
        assert_eq!(a.stack(&a).rows(), 4);
        assert_eq!(a.transpose().transpose(), a);
    }
}
