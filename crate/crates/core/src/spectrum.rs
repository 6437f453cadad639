//! Exact weight enumerators.
//!
//! Codewords are visited exhaustively in Gray-code order, so consecutive
//! words differ by one generator row. Whichever of the code and its dual is
//! smaller gets enumerated; the other side follows from the MacWilliams
//! identities, evaluated with exact Krawtchouk sums. Every division in those
//! transforms must come out exact, and a remainder is reported as an
//! integrity failure rather than rounded away.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::exact::{pow2, Binomials};
use crate::gf2::{BitMatrix, BitVector};

/// Largest enumeration allowed, as a power of two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub log2: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { log2: 32 }
    }
}

impl Budget {
    pub fn new(log2: u32) -> Self {
        Budget { log2 }
    }

    fn check(&self, dim: usize) -> Result<()> {
        if dim as u64 > self.log2 as u64 {
            Err(Error::BudgetExceeded {
                required_log2: dim as u32,
                budget_log2: self.log2,
            })
        } else {
            Ok(())
        }
    }
}

/// `counts[w]` codewords of Hamming weight `w`, for `w = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpectrum {
    counts: Vec<BigInt>,
}

impl WeightSpectrum {
    pub fn new(counts: Vec<BigInt>) -> Self {
        assert!(!counts.is_empty(), "spectrum needs at least weight 0");
        WeightSpectrum { counts }
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn get(&self, w: usize) -> &BigInt {
        &self.counts[w]
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// Smallest positive weight that occurs, if any.
    pub fn min_distance(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| !self.counts[w].is_zero())
    }

    /// `log2` of the total count when it is a power of two.
    pub fn dimension(&self) -> Option<usize> {
        let total = self.total();
        let bits = total.bits();
        (bits > 0 && total == pow2(bits as usize - 1)).then(|| bits as usize - 1)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.counts.iter().map(crate::exact::big_to_f64).collect()
    }
}

/// Input-redundancy enumerator: `get(i, p)` codewords with weight `i` on the
/// systematic positions and `p` on the parity positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSpectrum {
    k: usize,
    r: usize,
    table: Vec<BigInt>,
}

impl SplitSpectrum {
    pub fn zeros(k: usize, r: usize) -> Self {
        SplitSpectrum {
            k,
            r,
            table: vec![BigInt::zero(); (k + 1) * (r + 1)],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, p: usize) -> &BigInt {
        &self.table[i * (self.r + 1) + p]
    }

    pub fn set(&mut self, i: usize, p: usize, v: BigInt) {
        self.table[i * (self.r + 1) + p] = v;
    }

    pub fn total(&self) -> BigInt {
        self.table.iter().sum()
    }

    /// Weight enumerator, collecting `i + p`.
    pub fn wef(&self) -> WeightSpectrum {
        let mut counts = vec![BigInt::zero(); self.k + self.r + 1];
        for i in 0..=self.k {
            for p in 0..=self.r {
                counts[i + p] += self.get(i, p);
            }
        }
        WeightSpectrum::new(counts)
    }

    /// Nonzero entries as `(i, p, count)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (idx / (self.r + 1), idx % (self.r + 1), c))
    }
}

/// Input-output enumerator: `get(i, w)` codewords with information weight
/// `i` and total weight `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IoSpectrum {
    k: usize,
    n: usize,
    table: Vec<BigInt>,
}

impl IoSpectrum {
    pub fn zeros(k: usize, n: usize) -> Self {
        IoSpectrum {
            k,
            n,
            table: vec![BigInt::zero(); (k + 1) * (n + 1)],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, w: usize) -> &BigInt {
        &self.table[i * (self.n + 1) + w]
    }

    pub fn set(&mut self, i: usize, w: usize, v: BigInt) {
        self.table[i * (self.n + 1) + w] = v;
    }

    pub fn total(&self) -> BigInt {
        self.table.iter().sum()
    }

    /// Marginal over input weight, i.e. the weight enumerator.
    pub fn wef(&self) -> WeightSpectrum {
        let mut counts = vec![BigInt::zero(); self.n + 1];
        for i in 0..=self.k {
            for (w, c) in counts.iter_mut().enumerate() {
                *c += self.get(i, w);
            }
        }
        WeightSpectrum::new(counts)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (idx / (self.n + 1), idx % (self.n + 1), c))
    }
}

/// Krawtchouk values `K_j(i; n) = Σ_l (-1)^l C(i,l) C(n-i, j-l)` for all `0 <= i, j <= n`.
#[derive(Clone, Debug)]
pub struct Krawtchouk {
    n: usize,
    table: Vec<BigInt>,
}

impl Krawtchouk {
    pub fn new(n: usize) -> Self {
        let b = Binomials::new(n);
        let mut table = vec![BigInt::zero(); (n + 1) * (n + 1)];
        for j in 0..=n {
            for i in 0..=n {
                let mut acc = BigInt::zero();
                for l in 0..=j.min(i) {
                    let term = b.get_ref(i, l) * b.get(n - i, (j - l) as i64);
                    if l % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                table[j * (n + 1) + i] = acc;
            }
        }
        Krawtchouk { n, table }
    }

    pub fn get(&self, j: usize, i: usize) -> &BigInt {
        &self.table[j * (self.n + 1) + i]
    }
}

fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Integrity(format!(
            "{what}: {num} is not divisible by {den}"
        )));
    }
    if q.is_negative() {
        return Err(Error::Integrity(format!("{what}: negative multiplicity {q}")));
    }
    Ok(q)
}

/// Weight enumerator of a code from the enumerator of its dual.
pub fn macwilliams_wef(dual_wef: &WeightSpectrum, dual_size: &BigInt) -> Result<WeightSpectrum> {
    if &dual_wef.total() != dual_size {
        return Err(Error::Integrity(format!(
            "dual enumerator sums to {} but the dual has {} words",
            dual_wef.total(),
            dual_size
        )));
    }
    let n = dual_wef.n();
    let kr = Krawtchouk::new(n);
    let counts = (0..=n)
        .map(|j| {
            let s: BigInt = (0..=n)
                .filter(|&i| !dual_wef.counts[i].is_zero())
                .map(|i| &dual_wef.counts[i] * kr.get(j, i))
                .sum();
            exact_div(&s, dual_size, "MacWilliams transform")
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightSpectrum::new(counts))
}

/// Input-redundancy enumerator of a code from the split enumerator of its
/// dual, tallied over the same (systematic, parity) partition.
///
/// Equivalent to substituting `(x+X, x-X, y+Y, y-Y)` into the dual's
/// enumerator; evaluated as two separable Krawtchouk passes.
pub fn macwilliams_split(dual_split: &SplitSpectrum, dual_size: &BigInt) -> Result<SplitSpectrum> {
    if &dual_split.total() != dual_size {
        return Err(Error::Integrity(format!(
            "dual split enumerator sums to {} but the dual has {} words",
            dual_split.total(),
            dual_size
        )));
    }
    let (k, r) = (dual_split.k, dual_split.r);
    let kk = Krawtchouk::new(k);
    let kr = Krawtchouk::new(r);
    // pass over the systematic index
    let mut half = vec![BigInt::zero(); (k + 1) * (r + 1)];
    for (i2, p2, c) in dual_split.entries() {
        for i in 0..=k {
            let v = kk.get(i, i2);
            if !v.is_zero() {
                half[i * (r + 1) + p2] += c * v;
            }
        }
    }
    let mut out = SplitSpectrum::zeros(k, r);
    for i in 0..=k {
        for p in 0..=r {
            let s: BigInt = (0..=r)
                .filter(|&p2| !half[i * (r + 1) + p2].is_zero())
                .map(|p2| &half[i * (r + 1) + p2] * kr.get(p, p2))
                .sum();
            out.set(i, p, exact_div(&s, dual_size, "split MacWilliams transform")?);
        }
    }
    Ok(out)
}

/// `A^IO_{i, i+p} = A^IR_{i, p}`.
pub fn split_to_iowef(s: &SplitSpectrum) -> IoSpectrum {
    let mut io = IoSpectrum::zeros(s.k, s.k + s.r);
    for (i, p, c) in s.entries() {
        io.set(i, i + p, c.clone());
    }
    io
}

// ---------------------------------------------------------------------------
// Gray-code enumeration

/// Rows of the low-order table block.
const TABLE_BITS: usize = 8;
/// At most this many high message bits select independent sub-cubes.
const MAX_SPLIT_BITS: usize = 10;

/// Tallies `index(c)` over every word `c` of the row space of `rows`
/// (single-word codes, `n <= 64`).
fn sweep_u64<F>(rows: &[u64], bins: usize, index: F) -> Vec<u64>
where
    F: Fn(u64) -> usize + Sync,
{
    let dim = rows.len();
    if dim < TABLE_BITS + 4 {
        let mut hist = vec![0u64; bins];
        let mut c = 0u64;
        hist[index(c)] += 1;
        for t in 1u64..(1u64 << dim) {
            c ^= rows[t.trailing_zeros() as usize];
            hist[index(c)] += 1;
        }
        return hist;
    }

    // all XOR combinations of the first TABLE_BITS rows
    let mut table = vec![0u64; 1 << TABLE_BITS];
    for j in 1..table.len() {
        let b = j.trailing_zeros() as usize;
        table[j] = table[j & (j - 1)] ^ rows[b];
    }
    let split = (dim - TABLE_BITS).min(MAX_SPLIT_BITS);
    let mid = dim - TABLE_BITS - split;
    let mid_rows = &rows[TABLE_BITS..TABLE_BITS + mid];
    let high_rows = &rows[TABLE_BITS + mid..];

    (0u64..(1u64 << split))
        .into_par_iter()
        .map(|cube| {
            let mut base = 0u64;
            for (b, &row) in high_rows.iter().enumerate() {
                if (cube >> b) & 1 == 1 {
                    base ^= row;
                }
            }
            let mut h = [vec![0u64; bins], vec![0u64; bins], vec![0u64; bins], vec![0u64; bins]];
            let mut block = |m: u64| {
                for q in table.chunks_exact(4) {
                    h[0][index(m ^ q[0])] += 1;
                    h[1][index(m ^ q[1])] += 1;
                    h[2][index(m ^ q[2])] += 1;
                    h[3][index(m ^ q[3])] += 1;
                }
            };
            let mut m = base;
            block(m);
            for t in 1u64..(1u64 << mid) {
                m ^= mid_rows[t.trailing_zeros() as usize];
                block(m);
            }
            let [mut a, b, c, d] = h;
            for i in 0..bins {
                a[i] += b[i] + c[i] + d[i];
            }
            a
        })
        .reduce(
            || vec![0u64; bins],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Same tally for codes longer than one word.
fn sweep_words<F>(rows: &[BitVector], words: usize, bins: usize, index: F) -> Vec<u64>
where
    F: Fn(&[u64]) -> usize + Sync,
{
    let dim = rows.len();
    let split = dim.min(MAX_SPLIT_BITS);
    let low = dim - split;
    (0u64..(1u64 << split))
        .into_par_iter()
        .map(|cube| {
            let mut hist = vec![0u64; bins];
            let mut c = vec![0u64; words];
            for b in 0..split {
                if (cube >> b) & 1 == 1 {
                    for (x, y) in c.iter_mut().zip(rows[low + b].words()) {
                        *x ^= y;
                    }
                }
            }
            hist[index(&c)] += 1;
            for t in 1u64..(1u64 << low) {
                let row = rows[t.trailing_zeros() as usize].words();
                for (x, y) in c.iter_mut().zip(row) {
                    *x ^= y;
                }
                hist[index(&c)] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; bins],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

fn to_big(hist: Vec<u64>) -> Vec<BigInt> {
    hist.into_iter().map(BigInt::from).collect()
}

/// Weight enumerator of the row space of `g` by exhaustive enumeration.
/// `g` must have full row rank.
pub fn enumerate_wef(g: &BitMatrix, budget: Budget) -> Result<WeightSpectrum> {
    budget.check(g.rows())?;
    let n = g.cols();
    let hist = if n <= 64 {
        let rows: Vec<u64> = g.row_vectors().iter().map(BitVector::as_u64).collect();
        sweep_u64(&rows, n + 1, |c| c.count_ones() as usize)
    } else {
        let words = n.div_ceil(64);
        sweep_words(g.row_vectors(), words, n + 1, |c| {
            c.iter().map(|w| w.count_ones() as usize).sum()
        })
    };
    Ok(WeightSpectrum::new(to_big(hist)))
}

/// Split enumerator of the row space of `g` over the partition given by
/// `info_mask` (systematic coordinates set).
pub fn enumerate_split_masked(
    g: &BitMatrix,
    info_mask: &BitVector,
    budget: Budget,
) -> Result<SplitSpectrum> {
    budget.check(g.rows())?;
    let n = g.cols();
    if info_mask.len() != n {
        return Err(Error::shape(
            "enumerate_split",
            format!("mask length {} for length-{n} code", info_mask.len()),
        ));
    }
    let k = info_mask.weight() as usize;
    let r = n - k;
    let stride = r + 1;
    let bins = (k + 1) * stride;
    let hist = if n <= 64 {
        let rows: Vec<u64> = g.row_vectors().iter().map(BitVector::as_u64).collect();
        let info = info_mask.as_u64();
        let parity = !info & if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        sweep_u64(&rows, bins, move |c| {
            (c & info).count_ones() as usize * stride + (c & parity).count_ones() as usize
        })
    } else {
        let mask = info_mask.words().to_vec();
        sweep_words(g.row_vectors(), mask.len(), bins, move |c| {
            let (mut wi, mut wp) = (0usize, 0usize);
            for (x, m) in c.iter().zip(&mask) {
                wi += (x & m).count_ones() as usize;
                wp += (x & !m).count_ones() as usize;
            }
            wi * stride + wp
        })
    };
    Ok(SplitSpectrum {
        k,
        r,
        table: to_big(hist),
    })
}

/// Split enumerator of `code` over its own systematic positions.
pub fn enumerate_split(code: &LinearCode, budget: Budget) -> Result<SplitSpectrum> {
    enumerate_split_masked(code.generator(), &code.info_mask(), budget)
}

/// Which side of the code an enumeration ran on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Code,
    Dual,
}

/// Picks the smaller of code and dual (the code on a tie).
pub fn choose_side(code: &LinearCode, budget: Budget) -> Result<Side> {
    let (k, r) = (code.k(), code.n() - code.k());
    let side = if k <= r { Side::Code } else { Side::Dual };
    budget.check(k.min(r))?;
    Ok(side)
}

/// Weight enumerator and input-output enumerator of `code`.
pub fn code_spectra(code: &LinearCode, budget: Budget) -> Result<(WeightSpectrum, IoSpectrum)> {
    let split = match choose_side(code, budget)? {
        Side::Code => enumerate_split(code, budget)?,
        Side::Dual => {
            let dual = code.dual();
            let dual_split = enumerate_split_masked(dual.generator(), &code.info_mask(), budget)?;
            macwilliams_split(&dual_split, &pow2(dual.k()))?
        }
    };
    check_total(&split.total(), code.k())?;
    let io = split_to_iowef(&split);
    Ok((io.wef(), io))
}

/// Weight enumerator alone; cheaper than [`code_spectra`] when the dual side is used.
pub fn code_wef(code: &LinearCode, budget: Budget) -> Result<WeightSpectrum> {
    let wef = match choose_side(code, budget)? {
        Side::Code => enumerate_wef(code.generator(), budget)?,
        Side::Dual => {
            let dual = code.dual();
            let dual_wef = enumerate_wef(dual.generator(), budget)?;
            macwilliams_wef(&dual_wef, &pow2(dual.k()))?
        }
    };
    check_total(&wef.total(), code.k())?;
    Ok(wef)
}

fn check_total(total: &BigInt, k: usize) -> Result<()> {
    if *total != pow2(k) {
        return Err(Error::Integrity(format!(
            "enumerator sums to {total}, expected 2^{k}"
        )));
    }
    Ok(())
}

/// Minimum distance from a complete sweep; `None` for the zero-dimensional code.
pub fn min_distance(code: &LinearCode, budget: Budget) -> Result<Option<usize>> {
    Ok(code_wef(code, budget)?.min_distance())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;
    use num_traits::One;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn spc3() -> LinearCode {
        LinearCode::from_generator(&BitMatrix::from_u8_rows(&[&[1, 1, 0], &[0, 1, 1]])).unwrap()
    }

    fn random_code(n: usize, k: usize, seed: u64) -> LinearCode {
        let mut rng = Stream::new(seed);
        loop {
            let rows = (0..k)
                .map(|_| BitVector::from_words(n, &[rng.next_u64()]))
                .collect();
            let g = BitMatrix::from_rows(n, rows).unwrap();
            if g.rank() == k {
                return LinearCode::from_generator(&g).unwrap();
            }
        }
    }

    /// Re-encodes every message independently; no Gray code, no tables.
    fn naive_split(code: &LinearCode) -> SplitSpectrum {
        let mask = code.info_mask();
        let mut s = SplitSpectrum::zeros(code.k(), code.n() - code.k());
        for m in 0..(1u64 << code.k()) {
            let c = code.encode(&BitVector::from_words(code.k(), &[m])).unwrap();
            let (mut wi, mut wp) = (0, 0);
            for j in c.ones() {
                if mask.get(j) {
                    wi += 1;
                } else {
                    wp += 1;
                }
            }
            let cur = s.get(wi, wp).clone();
            s.set(wi, wp, cur + 1);
        }
        s
    }

    #[test]
    fn spc_split_enumeration() {
        let s = enumerate_split(&spc3(), Budget::default()).unwrap();
        let entries: Vec<_> = s.entries().map(|(i, p, c)| (i, p, c.clone())).collect();
        assert_eq!(
            entries,
            vec![
                (0, 0, BigInt::from(1)),
                (1, 1, BigInt::from(2)),
                (2, 0, BigInt::from(1))
            ]
        );
    }

    #[test]
    fn repetition_wef() {
        let rep = LinearCode::from_generator(&BitMatrix::from_u8_rows(&[&[1, 1]])).unwrap();
        assert_eq!(
            enumerate_wef(rep.generator(), Budget::default()).unwrap().counts(),
            &big(&[1, 0, 1])[..]
        );
        assert_eq!(min_distance(&rep, Budget::default()).unwrap(), Some(2));
    }

    #[test]
    fn enumeration_matches_naive_oracle() {
        // (20,10) and (24,14) go through the table-driven sweep
        for (n, k, seed) in [(20, 10, 1), (20, 10, 2), (24, 14, 3), (30, 16, 4), (7, 3, 5)] {
            let code = random_code(n, k, seed);
            let fast = enumerate_split(&code, Budget::default()).unwrap();
            assert_eq!(fast, naive_split(&code), "({n},{k}) seed {seed}");
        }
    }

    #[test]
    fn multiword_sweep_matches_single_word() {
        // pad a length-40 code to length 130 with zero columns
        let code = random_code(40, 15, 9);
        let padded = BitMatrix::from_rows(
            130,
            code.generator()
                .row_vectors()
                .iter()
                .map(|r| {
                    let mut v = BitVector::zeros(130);
                    for j in r.ones() {
                        v.set(j * 3, true);
                    }
                    v
                })
                .collect(),
        )
        .unwrap();
        let a = enumerate_wef(code.generator(), Budget::default()).unwrap();
        let b = enumerate_wef(&padded, Budget::default()).unwrap();
        assert_eq!(&b.counts()[..41], a.counts());
        assert!(b.counts()[41..].iter().all(Zero::is_zero));
    }

    #[test]
    fn budget_refusal() {
        let code = random_code(40, 20, 1);
        let err = enumerate_wef(code.generator(), Budget::new(16)).unwrap_err();
        assert!(matches!(
            err,
            Error::BudgetExceeded {
                required_log2: 20,
                budget_log2: 16
            }
        ));
        assert!(err.to_string().contains("2^20"));
        // both sides 20 > 16
        assert!(code_wef(&code, Budget::new(16)).is_err());
    }

    #[test]
    fn macwilliams_scalar_examples() {
        let rep3 = WeightSpectrum::new(big(&[1, 0, 0, 1]));
        let spc = macwilliams_wef(&rep3, &BigInt::from(2)).unwrap();
        assert_eq!(spc.counts(), &big(&[1, 0, 3, 0])[..]);
        let rep2 = WeightSpectrum::new(big(&[1, 0, 1]));
        assert_eq!(macwilliams_wef(&rep2, &BigInt::from(2)).unwrap(), rep2);
    }

    #[test]
    fn macwilliams_detects_corruption() {
        // sums correctly but is no code's enumerator: 5/3 appears at weight 1
        let bad = WeightSpectrum::new(big(&[1, 2, 0, 0]));
        assert!(matches!(
            macwilliams_wef(&bad, &BigInt::from(3)),
            Err(Error::Integrity(_))
        ));
        assert!(matches!(
            macwilliams_wef(&bad, &BigInt::from(4)),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn macwilliams_split_examples() {
        // dual of SPC(3,2) = {000, 111}, split as (2 systematic, 1 parity)
        let mut dual = SplitSpectrum::zeros(2, 1);
        dual.set(0, 0, BigInt::one());
        dual.set(2, 1, BigInt::one());
        let s = macwilliams_split(&dual, &BigInt::from(2)).unwrap();
        assert_eq!(s, enumerate_split(&spc3(), Budget::default()).unwrap());

        // the dual of the full space is {0}
        let mut zero = SplitSpectrum::zeros(3, 0);
        zero.set(0, 0, BigInt::one());
        let full = macwilliams_split(&zero, &BigInt::one()).unwrap();
        for i in 0..=3 {
            assert_eq!(full.get(i, 0), &Binomials::new(3).get(3, i as i64));
        }
    }

    #[test]
    fn dual_and_direct_paths_agree() {
        for (n, k, seed) in [(18, 11, 21), (16, 9, 22), (20, 13, 23), (12, 2, 24)] {
            let code = random_code(n, k, seed);
            let dual = code.dual();
            let direct = enumerate_split(&code, Budget::default()).unwrap();
            let dual_split =
                enumerate_split_masked(dual.generator(), &code.info_mask(), Budget::default())
                    .unwrap();
            let via_dual = macwilliams_split(&dual_split, &pow2(dual.k())).unwrap();
            assert_eq!(direct, via_dual);
            let dual_wef = enumerate_wef(dual.generator(), Budget::default()).unwrap();
            assert_eq!(
                macwilliams_wef(&dual_wef, &pow2(dual.k())).unwrap(),
                direct.wef()
            );
        }
    }

    #[test]
    fn iowef_examples() {
        let s = enumerate_split(&spc3(), Budget::default()).unwrap();
        let io = split_to_iowef(&s);
        let entries: Vec<_> = io.entries().map(|(i, w, c)| (i, w, c.clone())).collect();
        assert_eq!(
            entries,
            vec![
                (0, 0, BigInt::from(1)),
                (1, 2, BigInt::from(2)),
                (2, 2, BigInt::from(1))
            ]
        );
        let id = LinearCode::from_generator(&BitMatrix::identity(6)).unwrap();
        let (_, io) = code_spectra(&id, Budget::default()).unwrap();
        let b = Binomials::new(6);
        for i in 0..=6 {
            assert_eq!(io.get(i, i), &b.get(6, i as i64));
        }
    }

    #[test]
    fn weight_one_inputs_count_generator_rows() {
        let code = random_code(22, 12, 77);
        let (_, io) = code_spectra(&code, Budget::default()).unwrap();
        for w in 0..=22 {
            let rows = code
                .generator()
                .row_vectors()
                .iter()
                .filter(|r| r.weight() as usize == w)
                .count();
            assert_eq!(io.get(1, w), &BigInt::from(rows));
        }
    }

    #[test]
    fn krawtchouk_orthogonality() {
        // Σ_i C(n,i) K_j(i) K_l(i) = 2^n C(n,j) δ_jl
        let n = 10;
        let k = Krawtchouk::new(n);
        let b = Binomials::new(n);
        for j in 0..=n {
            for l in 0..=n {
                let s: BigInt = (0..=n)
                    .map(|i| b.get(n, i as i64) * k.get(j, i) * k.get(l, i))
                    .sum();
                let expect = if j == l {
                    pow2(n) * b.get(n, j as i64)
                } else {
                    BigInt::zero()
                };
                assert_eq!(s, expect);
            }
        }
    }
}
