//! Dense matrices over the truncated local ring Z/p^K.
//!
//! Z/p^K is a chain ring, so every matrix is equivalent to a diagonal of
//! p-powers; [`LocalMatrix::local_snf`] recovers those exponents by
//! elimination on a pivot of minimal p-valuation. That single routine
//! powers all the brute-force module computations in the oracle.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A rows x cols matrix with entries reduced into `[0, p^K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMatrix {
    rows: usize,
    cols: usize,
    p: u64,
    precision: u32,
    modulus: BigUint,
    entries: Vec<BigUint>,
}

impl LocalMatrix {
    pub fn zeros(p: u64, precision: u32, rows: usize, cols: usize) -> Self {
        assert!(p >= 2, "modulus base must be at least 2");
        assert!(precision >= 1, "precision must be at least 1");
        LocalMatrix {
            rows,
            cols,
            p,
            precision,
            modulus: BigUint::from(p).pow(precision),
            entries: vec![BigUint::zero(); rows * cols],
        }
    }

    pub fn identity(p: u64, precision: u32, n: usize) -> Self {
        Self::scalar(p, precision, n, &BigUint::one())
    }

    /// n x n diagonal matrix with a constant diagonal entry.
    pub fn scalar(p: u64, precision: u32, n: usize, value: &BigUint) -> Self {
        let mut m = Self::zeros(p, precision, n, n);
        for i in 0..n {
            m.set(i, i, value.clone());
        }
        m
    }

    /// Builds from unreduced u64 rows; panics on ragged input.
    pub fn from_rows(p: u64, precision: u32, rows: &[Vec<u64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(p, precision, rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (c, &value) in row.iter().enumerate() {
                m.set(r, c, BigUint::from(value));
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

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn get(&self, r: usize, c: usize) -> &BigUint {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigUint) {
        self.entries[r * self.cols + c] = value % &self.modulus;
    }

    pub fn mul(&self, other: &LocalMatrix) -> LocalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut out = Self::zeros(self.p, self.precision, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigUint::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.entries[r * other.cols + c] = acc % &self.modulus;
            }
        }
        out
    }

    pub fn pow(&self, exp: u64) -> LocalMatrix {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut result = Self::identity(self.p, self.precision, self.rows);
        let mut base = self.clone();
        let mut exp = exp;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &LocalMatrix) -> LocalMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut out = Self::zeros(self.p, self.precision, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Block-diagonal assembly; an empty block list yields the 0x0 matrix.
    pub fn block_diag(p: u64, precision: u32, blocks: &[LocalMatrix]) -> LocalMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(p, precision, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for block in blocks {
            assert_eq!(block.modulus, out.modulus, "modulus mismatch");
            for r in 0..block.rows {
                for c in 0..block.cols {
                    out.set(r0 + r, c0 + c, block.get(r, c).clone());
                }
            }
            r0 += block.rows;
            c0 += block.cols;
        }
        out
    }

    /// p-valuation of an entry value, capped at K; zero reports K.
    pub fn valuation_of(&self, x: &BigUint) -> u32 {
        if x.is_zero() {
            return self.precision;
        }
        let p = BigUint::from(self.p);
        let mut t = x.clone();
        let mut v = 0;
        while v < self.precision && (&t % &p).is_zero() {
            t /= &p;
            v += 1;
        }
        v
    }

    /// True when every entry is divisible by p.
    pub fn divisible_by_p(&self) -> bool {
        let p = BigUint::from(self.p);
        self.entries.iter().all(|x| (x % &p).is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Diagonalizes by unimodular row/column operations and returns the
    /// ascending multiset of diagonal p-valuations. Entries indistinguishable
    /// from zero report valuation K.
    ///
    /// Pivoting rule: the entry of minimal valuation in the remaining
    /// submatrix, ties broken topmost then leftmost.
    pub fn local_snf(&self) -> Vec<u32> {
        let (rows, cols) = (self.rows, self.cols);
        let k = self.precision;
        let n = rows.min(cols);
        let mut m = self.entries.clone();
        let mut vals = Vec::with_capacity(n);
        let idx = |r: usize, c: usize| r * cols + c;

        for t in 0..n {
            let mut best = k;
            let mut pos = None;
            for r in t..rows {
                for c in t..cols {
                    let v = self.valuation_of(&m[idx(r, c)]);
                    if v < best {
                        best = v;
                        pos = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = pos else {
                vals.resize(n, k);
                break;
            };
            if pr != t {
                for c in 0..cols {
                    m.swap(idx(t, c), idx(pr, c));
                }
            }
            if pc != t {
                for r in 0..rows {
                    m.swap(idx(r, t), idx(r, pc));
                }
            }

            let p_pow = BigUint::from(self.p).pow(best);
            let unit = &m[idx(t, t)] / &p_pow;
            let inv = unit
                .modinv(&self.modulus)
                .expect("pivot unit part is invertible");
            for c in t..cols {
                m[idx(t, c)] = (&m[idx(t, c)] * &inv) % &self.modulus;
            }

            // Row operations clear the pivot column; every remaining entry
            // has valuation >= best, so the factor division is exact.
            for r in 0..rows {
                if r == t || m[idx(r, t)].is_zero() {
                    continue;
                }
                let factor = &m[idx(r, t)] / &p_pow;
                for c in t..cols {
                    let sub = (&factor * &m[idx(t, c)]) % &self.modulus;
                    let cur = &m[idx(r, c)];
                    m[idx(r, c)] = if *cur >= sub {
                        cur - &sub
                    } else {
                        cur + &self.modulus - &sub
                    };
                }
            }
            // The pivot column is now zero off-pivot, so the column
            // operations that clear the pivot row touch row t only.
            for c in t + 1..cols {
                m[idx(t, c)] = BigUint::zero();
            }
            vals.push(best);
        }
        vals.sort_unstable();
        vals
    }
}

/// log_p of the order of the column span inside (Z/p^K)^ring_rank.
pub fn span_logorder(ring_rank: usize, generators: &LocalMatrix) -> u64 {
    assert_eq!(
        generators.rows(),
        ring_rank,
        "generator rows must match the ambient rank"
    );
    let k = generators.precision() as u64;
    generators
        .local_snf()
        .iter()
        .map(|&a| k - a as u64)
        .sum()
}
