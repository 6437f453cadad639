use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Binary linear code held as a systematic generator matrix.
///
/// Column `info_positions[i]` of the generator is the `i`-th unit vector, so
/// an encoded message can be read back verbatim from those coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: BitMatrix,
    info_positions: Vec<usize>,
}

impl LinearCode {
    /// Wraps a generator already in systematic form on `info_positions`.
    pub fn new(generator: BitMatrix, info_positions: Vec<usize>) -> Result<Self> {
        if info_positions.len() != generator.rows() {
            return Err(Error::shape(
                "LinearCode::new",
                format!(
                    "{} systematic positions for {} generator rows",
                    info_positions.len(),
                    generator.rows()
                ),
            ));
        }
        for (i, &p) in info_positions.iter().enumerate() {
            if p >= generator.cols() {
                return Err(Error::Domain(format!("systematic position {p} out of range")));
            }
            for r in 0..generator.rows() {
                if generator.get(r, p) != (r == i) {
                    return Err(Error::Integrity(format!(
                        "generator is not systematic on column {p}"
                    )));
                }
            }
        }
        Ok(LinearCode {
            generator,
            info_positions,
        })
    }

    /// Any full-rank generator; brought to reduced echelon form.
    pub fn from_generator(g: &BitMatrix) -> Result<Self> {
        let r = g.rref();
        if r.rank < g.rows() {
            return Err(Error::Domain(format!(
                "generator has {} rows but rank {}",
                g.rows(),
                r.rank
            )));
        }
        Ok(LinearCode {
            generator: r.reduced,
            info_positions: r.pivot_cols,
        })
    }

    /// Re-expresses the row space of `g` as systematic on `positions`.
    pub fn systematic_on(g: &BitMatrix, positions: &[usize]) -> Result<Self> {
        let generator = g.systematic_on(positions)?;
        Ok(LinearCode {
            generator,
            info_positions: positions.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    /// Complement of the systematic positions, ascending.
    pub fn parity_positions(&self) -> Vec<usize> {
        let mut is_info = vec![false; self.n()];
        for &p in &self.info_positions {
            is_info[p] = true;
        }
        (0..self.n()).filter(|&j| !is_info[j]).collect()
    }

    /// Indicator of the systematic coordinates.
    pub fn info_mask(&self) -> BitVector {
        let mut m = BitVector::zeros(self.n());
        for &p in &self.info_positions {
            m.set(p, true);
        }
        m
    }

    pub fn encode(&self, message: &BitVector) -> Result<BitVector> {
        self.generator.left_mul_vec(message)
    }

    pub fn dual(&self) -> LinearCode {
        let h = self.generator.nullspace_basis();
        LinearCode::from_generator(&h).expect("null-space basis has full rank")
    }

    /// Whether `word` satisfies every parity check of the code.
    pub fn contains(&self, word: &BitVector) -> bool {
        let info = word.select(&self.info_positions);
        self.encode(&info).map(|c| &c == word).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spc_and_dual() {
        let spc = LinearCode::from_generator(&BitMatrix::from_u8_rows(&[&[1, 1, 0], &[0, 1, 1]]))
            .unwrap();
        assert_eq!(spc.k(), 2);
        assert_eq!(spc.info_positions(), &[0, 1]);
        let dual = spc.dual();
        assert_eq!(dual.generator(), &BitMatrix::from_u8_rows(&[&[1, 1, 1]]));
        assert!(spc.contains(&BitVector::from_bits(&[true, false, true])));
        assert!(!spc.contains(&BitVector::from_bits(&[true, false, false])));
    }

    #[test]
    fn rejects_rank_deficient_or_non_systematic() {
        let g = BitMatrix::from_u8_rows(&[&[1, 1], &[1, 1]]);
        assert!(LinearCode::from_generator(&g).is_err());
        let g = BitMatrix::from_u8_rows(&[&[1, 1, 0]]);
        assert!(LinearCode::new(g.clone(), vec![1]).is_ok());
        assert!(LinearCode::new(BitMatrix::from_u8_rows(&[&[1, 1], &[0, 1]]), vec![0, 1]).is_err());
    }

    #[test]
    fn systematic_positions_read_back_message() {
        let g = BitMatrix::from_u8_rows(&[&[1, 0, 1, 1, 0], &[0, 1, 1, 0, 1], &[1, 1, 0, 0, 0]]);
        let code = LinearCode::systematic_on(&g, &[4, 2, 0]).unwrap();
        for m in 0..8u64 {
            let u = BitVector::from_words(3, &[m]);
            let c = code.encode(&u).unwrap();
            assert_eq!(c.select(code.info_positions()), u);
        }
    }
}
