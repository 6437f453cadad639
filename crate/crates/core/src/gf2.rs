//! Dense linear algebra over GF(2).
//!
//! Vectors are packed 64 coordinates per word, coordinate `j` at bit
//! `j % 64` of word `j / 64`. Matrices are row-major lists of such vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::rng::Stream;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

/// Binary vector of fixed length. Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (j, &b) in bits.iter().enumerate() {
            if b {
                v.set(j, true);
            }
        }
        v
    }

    /// Builds a vector from its first `len` bits packed in `words`; higher bits are cleared.
    pub fn from_words(len: usize, words: &[u64]) -> Self {
        let mut w = words[..words_for(len)].to_vec();
        if !len.is_multiple_of(64) {
            if let Some(last) = w.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
        BitVector { len, words: w }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, j: usize) -> bool {
        assert!(j < self.len, "index {j} out of range for length {}", self.len);
        (self.words[j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, j: usize, value: bool) {
        assert!(j < self.len, "index {j} out of range for length {}", self.len);
        let mask = 1u64 << (j % 64);
        if value {
            self.words[j / 64] |= mask;
        } else {
            self.words[j / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, j: usize) {
        assert!(j < self.len);
        self.words[j / 64] ^= 1u64 << (j % 64);
    }

    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Coordinates `positions[0], positions[1], ...` gathered into a new vector.
    pub fn select(&self, positions: &[usize]) -> BitVector {
        let mut out = BitVector::zeros(positions.len());
        for (t, &p) in positions.iter().enumerate() {
            if self.get(p) {
                out.set(t, true);
            }
        }
        out
    }

    /// Low 64 coordinates as a word. Only meaningful when `len <= 64`.
    #[inline]
    pub fn as_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for j in 0..self.len {
            f.write_str(if self.get(j) { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

/// Dense binary matrix, stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: BitMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].set(i, true);
        }
        m
    }

    /// All rows must share the length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::shape(
                "from_rows",
                format!("row {bad} has length {} but cols = {cols}", rows[bad].len()),
            ));
        }
        Ok(BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Convenience constructor from 0/1 literals; panics on ragged input.
    pub fn from_u8_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                BitVector::from_bits(&r.iter().map(|&b| b != 0).collect::<Vec<_>>())
            })
            .collect();
        BitMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for j in row.ones() {
                t.data[j].set(i, true);
            }
        }
        t
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        BitMatrix {
            rows: self.rows,
            cols: cols.len(),
            data: self.data.iter().map(|r| r.select(cols)).collect(),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        BitMatrix {
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.rows {
            return Err(Error::shape(
                "vector-matrix product",
                format!("vector length {} vs {} rows", v.len(), self.rows),
            ));
        }
        let mut out = BitVector::zeros(self.cols);
        for i in v.ones() {
            out.xor_assign(&self.data[i]);
        }
        Ok(out)
    }

    pub fn mat_mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::shape(
                "mat_mul",
                format!(
                    "{}x{} times {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let data = self
            .data
            .iter()
            .map(|r| other.left_mul_vec(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.data[i].get(c)) else {
                continue;
            };
            m.data.swap(r, p);
            let pivot_row = m.data[r].clone();
            for i in 0..self.rows {
                if i != r && m.data[i].get(c) {
                    m.data[i].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivot_cols: pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space: every returned row `h` has `G · hᵀ = 0`.
    pub fn nullspace_basis(&self) -> BitMatrix {
        let Rref {
            reduced,
            pivot_cols,
            rank,
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivot_cols {
            is_pivot[p] = true;
        }
        let data = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut h = BitVector::zeros(self.cols);
                h.set(f, true);
                for (r, &p) in pivot_cols.iter().enumerate().take(rank) {
                    if reduced.data[r].get(f) {
                        h.set(p, true);
                    }
                }
                h
            })
            .collect::<Vec<_>>();
        BitMatrix {
            rows: data.len(),
            cols: self.cols,
            data,
        }
    }

    /// Row-reduces so that columns `positions` carry the identity, in order.
    ///
    /// Requires `positions.len() == rows`; fails when that column submatrix is
    /// singular.
    pub fn systematic_on(&self, positions: &[usize]) -> Result<BitMatrix> {
        if positions.len() != self.rows {
            return Err(Error::shape(
                "systematic_on",
                format!("{} positions for {} rows", positions.len(), self.rows),
            ));
        }
        let mut m = self.clone();
        for (r, &c) in positions.iter().enumerate() {
            let Some(p) = (r..self.rows).find(|&i| m.data[i].get(c)) else {
                return Err(Error::Integrity(format!(
                    "columns {positions:?} do not form an information set"
                )));
            };
            m.data.swap(r, p);
            let pivot_row = m.data[r].clone();
            for i in 0..self.rows {
                if i != r && m.data[i].get(c) {
                    m.data[i].xor_assign(&pivot_row);
                }
            }
        }
        Ok(m)
    }

    /// Text form: `rows cols` header, then one line of `0`/`1` per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for row in &self.data {
            for j in 0..self.cols {
                s.push(if row.get(j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<BitMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("bad matrix header {header:?}: {e}")))?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!(
                "matrix header must be `rows cols`, got {header:?}"
            )));
        };
        let mut data = Vec::with_capacity(rows);
        for (i, line) in lines.enumerate() {
            let line = line.trim();
            if line.len() != cols {
                return Err(Error::Parse(format!(
                    "matrix row {i} has {} characters, expected {cols}",
                    line.len()
                )));
            }
            let mut v = BitVector::zeros(cols);
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => v.set(j, true),
                    other => {
                        return Err(Error::Parse(format!(
                            "matrix row {i} contains {other:?}"
                        )))
                    }
                }
            }
            data.push(v);
        }
        if data.len() != rows {
            return Err(Error::Parse(format!(
                "matrix header announces {rows} rows, found {}",
                data.len()
            )));
        }
        Ok(BitMatrix { rows, cols, data })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Bijection on `0..n`; `map[j]` is the image of position `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &m in &map {
            if m >= n || seen[m] {
                return Err(Error::Domain(format!("{map:?} is not a permutation")));
            }
            seen[m] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// Fisher–Yates shuffle driven by [`Stream::new(seed)`](crate::rng::Stream).
    ///
    /// For `i = n-1` down to `1`, position `i` is swapped with a uniform index
    /// in `0..=i`.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        let mut rng = Stream::new(seed);
        for i in (1..n).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            map.swap(i, j);
        }
        Permutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(j, &m)| j == m)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (j, &m) in self.map.iter().enumerate() {
            inv[m] = j;
        }
        Permutation { map: inv }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        Permutation {
            map: self.map.iter().map(|&m| next.map[m]).collect(),
        }
    }

    /// Moves coordinate `j` of `v` to position `map[j]`.
    pub fn apply(&self, v: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(v.len());
        for j in v.ones() {
            out.set(self.map[j], true);
        }
        out
    }

    /// Matrix `P` with `v · P == self.apply(v)`.
    pub fn matrix(&self) -> BitMatrix {
        let n = self.map.len();
        let mut m = BitMatrix::zeros(n, n);
        for (j, &t) in self.map.iter().enumerate() {
            m.set(j, t, true);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> BitMatrix {
        let mut rng = Stream::new(seed);
        let data = (0..rows)
            .map(|_| {
                let words: Vec<u64> = (0..words_for(cols)).map(|_| rng.next_u64()).collect();
                BitVector::from_words(cols, &words)
            })
            .collect();
        BitMatrix::from_rows(cols, data).unwrap()
    }

    /// Textbook elimination on a `Vec<Vec<u8>>`, kept independent of the packed path.
    fn naive_rank(m: &BitMatrix) -> usize {
        let mut a: Vec<Vec<u8>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j) as u8).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            if let Some(p) = (rank..a.len()).find(|&i| a[i][c] == 1) {
                a.swap(rank, p);
                for i in 0..a.len() {
                    if i != rank && a[i][c] == 1 {
                        let pivot = a[rank].clone();
                        for (x, y) in a[i].iter_mut().zip(&pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn naive_mul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut s = false;
                for t in 0..a.cols() {
                    s ^= a.get(i, t) & b.get(t, j);
                }
                out.set(i, j, s);
            }
        }
        out
    }

    #[test]
    fn rref_identity() {
        let r = BitMatrix::identity(3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
        assert_eq!(r.reduced, BitMatrix::identity(3));
    }

    #[test]
    fn rref_dependent_rows() {
        let m = BitMatrix::from_u8_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(m.rref().rank, 2);
    }

    #[test]
    fn rref_empty() {
        assert_eq!(BitMatrix::zeros(0, 5).rref().rank, 0);
        assert_eq!(BitMatrix::zeros(3, 0).rref().rank, 0);
    }

    #[test]
    fn rref_matches_naive_elimination() {
        for seed in 0..20 {
            let m = random_matrix(20, 32, seed);
            assert_eq!(m.rank(), naive_rank(&m), "seed {seed}");
        }
        // deliberately rank-deficient
        let m = random_matrix(10, 40, 99);
        let stacked = BitMatrix::from_rows(
            40,
            m.row_vectors()
                .iter()
                .cloned()
                .chain(m.row_vectors().iter().cloned())
                .collect(),
        )
        .unwrap();
        assert_eq!(stacked.rank(), naive_rank(&stacked));
    }

    #[test]
    fn nullspace_single_parity() {
        let g = BitMatrix::from_u8_rows(&[&[1, 1, 0], &[0, 1, 1]]);
        let h = g.nullspace_basis();
        assert_eq!(h, BitMatrix::from_u8_rows(&[&[1, 1, 1]]));
        assert_eq!(BitMatrix::identity(5).nullspace_basis().rows(), 0);
    }

    #[test]
    fn nullspace_is_orthogonal_complement() {
        for seed in 0..10 {
            let g = random_matrix(9, 16, 100 + seed);
            let h = g.nullspace_basis();
            for gr in g.row_vectors() {
                for hr in h.row_vectors() {
                    assert!(!gr.dot(hr));
                }
            }
            assert_eq!(g.rank() + h.rank(), 16);
            assert_eq!(h.rows(), h.rank());
        }
    }

    #[test]
    fn mat_mul_examples() {
        let a = random_matrix(5, 7, 3);
        assert_eq!(a.mat_mul(&BitMatrix::identity(7)).unwrap(), a);
        let rep = BitMatrix::from_u8_rows(&[&[1, 1, 1]]);
        let spc = BitMatrix::from_u8_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        assert_eq!(
            rep.mat_mul(&spc).unwrap(),
            BitMatrix::from_u8_rows(&[&[1, 1, 1, 1]])
        );
        assert!(matches!(
            spc.mat_mul(&rep),
            Err(Error::Shape { op: "mat_mul", .. })
        ));
    }

    #[test]
    fn mat_mul_associative_and_matches_naive() {
        for seed in 0..8 {
            let a = random_matrix(13, 64, seed);
            let b = random_matrix(64, 40, seed + 50);
            let c = random_matrix(40, 64, seed + 90);
            let ab = a.mat_mul(&b).unwrap();
            assert_eq!(ab, naive_mul(&a, &b));
            assert_eq!(
                ab.mat_mul(&c).unwrap(),
                a.mat_mul(&b.mat_mul(&c).unwrap()).unwrap()
            );
        }
        let a = random_matrix(64, 64, 7);
        let b = random_matrix(64, 64, 8);
        assert_eq!(a.mat_mul(&b).unwrap(), naive_mul(&a, &b));
    }

    #[test]
    fn permutation_matrices() {
        assert_eq!(Permutation::identity(4).matrix(), BitMatrix::identity(4));
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(
            swap.matrix(),
            BitMatrix::from_u8_rows(&[&[0, 1], &[1, 0]])
        );
        let p = Permutation::random(20, 5);
        let prod = p.matrix().mat_mul(&p.inverse().matrix()).unwrap();
        assert_eq!(prod, BitMatrix::identity(20));
        assert_eq!(
            p.matrix().mat_mul(&p.matrix().transpose()).unwrap(),
            BitMatrix::identity(20)
        );
        assert!(p.then(&p.inverse()).is_identity());
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn permutation_matrix_reorders_vectors() {
        let p = Permutation::random(10, 11);
        let v = BitVector::from_bits(&[true, false, true, true, false, false, false, true, false, true]);
        let via_matrix = p.matrix().left_mul_vec(&v).unwrap();
        assert_eq!(via_matrix, p.apply(&v));
    }

    #[test]
    fn random_permutation_deterministic() {
        assert_eq!(Permutation::random(48, 9), Permutation::random(48, 9));
        assert_ne!(Permutation::random(48, 9), Permutation::random(48, 10));
        assert!(Permutation::random(1, 123).is_identity());
    }

    #[test]
    fn random_permutation_first_position_uniform() {
        let n = 48usize;
        let seeds = 10_000u64;
        let mut counts = vec![0u64; n];
        for seed in 1..=seeds {
            let p = Permutation::random(n, seed);
            Permutation::new(p.map().to_vec()).expect("bijection");
            counts[p.map()[0]] += 1;
        }
        let expected = seeds as f64 / n as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // chi-square with 47 degrees of freedom: mean 47, sd sqrt(94)
        let dof = (n - 1) as f64;
        assert!(chi2 < dof + 4.0 * (2.0 * dof).sqrt(), "chi2 = {chi2}");
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let m = random_matrix(4, 9, 1);
        assert_eq!(BitMatrix::from_text(&m.to_text()).unwrap(), m);
        assert!(BitMatrix::from_text("2 3\n101\n").is_err());
        assert!(BitMatrix::from_text("1 3\n1a1\n").is_err());
        assert!(BitMatrix::from_text("1 3\n10\n").is_err());
    }

    #[test]
    fn systematic_on_places_identity() {
        let g = BitMatrix::from_u8_rows(&[&[1, 0, 1, 0], &[1, 1, 1, 1]]);
        let s = g.systematic_on(&[2, 3]).unwrap();
        assert_eq!(s, BitMatrix::from_u8_rows(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]));
        assert!(g.systematic_on(&[0, 2]).is_err());
    }

    proptest! {
        #[test]
        fn rref_idempotent(rows in 1usize..12, cols in 1usize..70, seed in any::<u64>()) {
            let m = random_matrix(rows, cols, seed);
            let once = m.rref().reduced;
            prop_assert_eq!(once.rref().reduced, once.clone());
        }

        #[test]
        fn rank_nullity(rows in 1usize..12, cols in 1usize..70, seed in any::<u64>()) {
            let g = random_matrix(rows, cols, seed);
            let h = g.nullspace_basis();
            prop_assert_eq!(g.rank() + h.rows(), cols);
            let prod = g.mat_mul(&h.transpose()).unwrap();
            prop_assert!(prod.row_vectors().iter().all(|r| r.is_zero()));
        }
    }
}
