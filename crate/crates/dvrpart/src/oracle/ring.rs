//! Explicit Eisenstein quotient rings over truncated p-adic coefficients,
//! and the brute-force module computations performed in them.
//!
//! A ring is presented on the Z/p^K-basis `y^i x^j` (i < d, j < e), where
//! y generates the unramified part (a Galois ring) and x is a root of an
//! Eisenstein polynomial. Every oracle answer is recovered from matrices
//! via [`LocalMatrix::local_snf`] — the closed partition formulas are
//! never consulted here.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::arith::{ceil_div, ensure_prime};
use crate::error::{Error, Result};
use crate::oracle::matrix::{span_logorder, LocalMatrix};
use crate::oracle::poly;
use crate::partition::Partition;

/// Dense ed x ed matrices stay comfortable up to this rank.
pub const MAX_RING_RANK: usize = 64;

/// An element of the coefficient Galois ring GR(p^K, d), stored as the
/// ascending y-coordinates.
type GrElem = Vec<BigUint>;

/// How to choose the Eisenstein polynomial in [`build_ring`].
#[derive(Debug, Clone)]
pub enum RingMode {
    /// The p^m-th cyclotomic polynomial shifted by one; requires d = 1 and
    /// e = (p-1)p^(m-1).
    Cyclotomic { m: u32 },
    /// X^e - p over the degree-d unramified base.
    PowerMinusP,
    /// A caller-supplied monic integer polynomial of degree e (d = 1).
    Explicit { coeffs: Vec<BigInt> },
}

/// A validated presentation of a totally-ramified-over-unramified extension
/// of Z/p^K, with the multiplication-by-uniformizer matrix.
#[derive(Debug, Clone)]
pub struct EisensteinRing {
    p: u64,
    precision: u32,
    d: usize,
    e: usize,
    modulus: BigUint,
    /// Monic lift of the irreducible base polynomial (ascending, length d+1).
    base_poly: Vec<BigUint>,
    /// The e non-leading coefficients of the monic Eisenstein polynomial,
    /// as base-ring elements (ascending).
    eisenstein_lower: Vec<GrElem>,
    pi_matrix: LocalMatrix,
}

impl EisensteinRing {
    pub fn cyclotomic(p: u64, precision: u32, m: u32) -> Result<Self> {
        let e = crate::arith::cyclotomic_ramification(p, m)?;
        build_ring(p, precision, 1, e, RingMode::Cyclotomic { m })
    }

    pub fn power_minus_p(p: u64, precision: u32, d: u64, e: u64) -> Result<Self> {
        build_ring(p, precision, d, e, RingMode::PowerMinusP)
    }

    pub fn explicit(p: u64, precision: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        let e = coeffs.len().saturating_sub(1) as u64;
        build_ring(p, precision, 1, e, RingMode::Explicit { coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue_degree(&self) -> u64 {
        self.d as u64
    }

    pub fn ramification(&self) -> u64 {
        self.e as u64
    }

    /// Rank ed of the ring as a free Z/p^K-module.
    pub fn rank(&self) -> usize {
        self.d * self.e
    }

    pub fn base_poly(&self) -> &[BigUint] {
        &self.base_poly
    }

    pub fn pi_matrix(&self) -> &LocalMatrix {
        &self.pi_matrix
    }

    /// The uniformizer action on a free module of the given number of ring
    /// summands: a block diagonal of pi matrices.
    pub fn module_action(&self, summands: usize) -> LocalMatrix {
        let blocks = vec![self.pi_matrix.clone(); summands];
        LocalMatrix::block_diag(self.p, self.precision, &blocks)
    }

    /// A short human-readable descriptor, e.g. `p3m1` or `p5d2e3`.
    pub fn descriptor(&self) -> String {
        format!("p{}d{}e{}", self.p, self.d, self.e)
    }

    fn required_precision(&self, lambda: &Partition, extra: u64) -> Result<u32> {
        let need = ceil_div(lambda.largest_part(), self.e as u64) + extra + 1;
        u32::try_from(need).map_err(|_| Error::Overflow("required precision".into()))
    }

    fn ensure_precision(&self, lambda: &Partition, extra: u64) -> Result<()> {
        if lambda.is_empty() {
            return Ok(());
        }
        let required = self.required_precision(lambda, extra)?;
        if self.precision < required {
            return Err(Error::Precision {
                required,
                actual: self.precision,
            });
        }
        Ok(())
    }
}

/// Builds and validates a ring presentation. Checks, in order: primality,
/// K >= 2, the rank budget, the Eisenstein criterion, f(pi) = 0, and
/// nilpotency of pi mod p of index exactly e.
pub fn build_ring(p: u64, precision: u32, d: u64, e: u64, mode: RingMode) -> Result<EisensteinRing> {
    ensure_prime(p)?;
    if precision < 2 {
        return Err(Error::Precision {
            required: 2,
            actual: precision,
        });
    }
    if d < 1 || e < 1 {
        return Err(Error::Domain("d and e must be >= 1".into()));
    }
    let d = d as usize;
    let e = e as usize;
    let rank = d
        .checked_mul(e)
        .filter(|&r| r <= MAX_RING_RANK)
        .ok_or(Error::DimensionOverflow {
            rank: d.saturating_mul(e),
            limit: MAX_RING_RANK,
        })?;

    let modulus = BigUint::from(p).pow(precision);
    let lower = eisenstein_lower_coeffs(p, d, e, &modulus, &mode)?;
    check_eisenstein_over_base(&lower, p, &mode)?;

    let base_poly: Vec<BigUint> = poly::find_irreducible(p, d)?
        .into_iter()
        .map(BigUint::from)
        .collect();

    let pi_matrix = build_pi_matrix(p, precision, d, e, &lower, &base_poly, &modulus);

    let ring = EisensteinRing {
        p,
        precision,
        d,
        e,
        modulus,
        base_poly,
        eisenstein_lower: lower,
        pi_matrix,
    };
    validate_pi(&ring)?;
    debug_assert_eq!(ring.rank(), rank);
    Ok(ring)
}

fn eisenstein_lower_coeffs(
    p: u64,
    d: usize,
    e: usize,
    modulus: &BigUint,
    mode: &RingMode,
) -> Result<Vec<GrElem>> {
    let gr_const = |v: BigUint| -> GrElem {
        let mut elem = vec![BigUint::zero(); d];
        elem[0] = v % modulus;
        elem
    };
    match mode {
        RingMode::Cyclotomic { m } => {
            if d != 1 {
                return Err(Error::Domain("cyclotomic rings have residue degree 1".into()));
            }
            let expected = crate::arith::cyclotomic_ramification(p, *m)? as usize;
            if e != expected {
                return Err(Error::Domain(format!(
                    "cyclotomic level m={m} forces e={expected}, got e={e}"
                )));
            }
            let coeffs = poly::cyclotomic_eisenstein(p, *m)?;
            Ok(coeffs[..e].iter().map(|c| gr_const(c.clone())).collect())
        }
        RingMode::PowerMinusP => {
            let mut lower = vec![gr_const(BigUint::zero()); e];
            lower[0] = gr_const(modulus - BigUint::from(p));
            Ok(lower)
        }
        RingMode::Explicit { coeffs } => {
            if d != 1 {
                return Err(Error::Domain("explicit polynomials require d = 1".into()));
            }
            if coeffs.len() != e + 1 {
                return Err(Error::Domain(format!(
                    "explicit polynomial must have degree {e}"
                )));
            }
            if coeffs.last() != Some(&BigInt::one()) {
                return Err(Error::Domain("explicit polynomial must be monic".into()));
            }
            Ok(coeffs[..e]
                .iter()
                .map(|c| {
                    let modulus_int = BigInt::from(modulus.clone());
                    let mut reduced = c % &modulus_int;
                    if reduced.is_negative() {
                        reduced += &modulus_int;
                    }
                    gr_const(reduced.to_biguint().expect("non-negative after reduction"))
                })
                .collect())
        }
    }
}

/// The Eisenstein criterion over the base ring: every lower coefficient in
/// p·GR, and the constant term outside p^2·GR.
fn check_eisenstein_over_base(lower: &[GrElem], p: u64, mode: &RingMode) -> Result<()> {
    let p_big = BigUint::from(p);
    let p_sq = &p_big * &p_big;
    let all_in_p = lower
        .iter()
        .all(|elem| elem.iter().all(|c| (c % &p_big).is_zero()));
    let constant_exact = lower[0].iter().any(|c| !(c % &p_sq).is_zero());
    if all_in_p && constant_exact {
        return Ok(());
    }
    let what = match mode {
        RingMode::Explicit { .. } => "supplied polynomial",
        RingMode::Cyclotomic { .. } => "cyclotomic polynomial",
        RingMode::PowerMinusP => "power polynomial",
    };
    Err(Error::NotEisenstein(format!(
        "{what}: lower coefficients must lie in (p) with constant term exactly divisible by p"
    )))
}

fn gr_mul(a: &GrElem, b: &GrElem, base_poly: &[BigUint], modulus: &BigUint) -> GrElem {
    let d = a.len();
    let mut prod = vec![BigUint::zero(); 2 * d - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            prod[i + j] += ai * bj;
        }
    }
    for c in prod.iter_mut() {
        *c %= modulus;
    }
    // reduce modulo the monic base polynomial
    for t in (d..2 * d - 1).rev() {
        if prod[t].is_zero() {
            continue;
        }
        let lead = std::mem::replace(&mut prod[t], BigUint::zero());
        for (k, bk) in base_poly.iter().enumerate().take(d) {
            let sub = (&lead * bk) % modulus;
            let pos = t - d + k;
            prod[pos] = if prod[pos] >= sub {
                &prod[pos] - &sub
            } else {
                &prod[pos] + modulus - &sub
            };
        }
    }
    prod.truncate(d);
    prod
}

fn gr_neg(a: &GrElem, modulus: &BigUint) -> GrElem {
    a.iter()
        .map(|c| {
            if c.is_zero() {
                BigUint::zero()
            } else {
                modulus - c
            }
        })
        .collect()
}

fn build_pi_matrix(
    p: u64,
    precision: u32,
    d: usize,
    e: usize,
    lower: &[GrElem],
    base_poly: &[BigUint],
    modulus: &BigUint,
) -> LocalMatrix {
    let rank = d * e;
    let mut m = LocalMatrix::zeros(p, precision, rank, rank);
    // column j*d + i carries the basis element y^i x^j
    for j in 0..e - 1 {
        for i in 0..d {
            m.set((j + 1) * d + i, j * d + i, BigUint::one());
        }
    }
    for i in 0..d {
        let mut y_i = vec![BigUint::zero(); d];
        y_i[i] = BigUint::one();
        for (t, a_t) in lower.iter().enumerate() {
            if a_t.iter().all(Zero::is_zero) {
                continue;
            }
            let neg = gr_neg(a_t, modulus);
            let image = gr_mul(&neg, &y_i, base_poly, modulus);
            for (k, coord) in image.into_iter().enumerate() {
                if !coord.is_zero() {
                    m.set(t * d + k, (e - 1) * d + i, coord);
                }
            }
        }
    }
    m
}

/// Multiplication by a base-ring element on the whole basis.
fn mul_by_base_elem(ring: &EisensteinRing, a: &GrElem) -> LocalMatrix {
    let (d, e) = (ring.d, ring.e);
    let mut m = LocalMatrix::zeros(ring.p, ring.precision, d * e, d * e);
    for i in 0..d {
        let mut y_i = vec![BigUint::zero(); d];
        y_i[i] = BigUint::one();
        let image = gr_mul(a, &y_i, &ring.base_poly, &ring.modulus);
        for j in 0..e {
            for (k, coord) in image.iter().enumerate() {
                if !coord.is_zero() {
                    m.set(j * d + k, j * d + i, coord.clone());
                }
            }
        }
    }
    m
}

/// Confirms f(pi) = 0 over Z/p^K and that pi mod p is nilpotent of index
/// exactly e.
fn validate_pi(ring: &EisensteinRing) -> Result<()> {
    let rank = ring.rank();
    let e = ring.e as u64;
    let mut value = ring.pi_matrix.pow(e);
    for (t, a_t) in ring.eisenstein_lower.iter().enumerate() {
        if a_t.iter().all(Zero::is_zero) {
            continue;
        }
        let term = mul_by_base_elem(ring, a_t).mul(&ring.pi_matrix.pow(t as u64));
        let mut sum = LocalMatrix::zeros(ring.p, ring.precision, rank, rank);
        for r in 0..rank {
            for c in 0..rank {
                sum.set(r, c, value.get(r, c) + term.get(r, c));
            }
        }
        value = sum;
    }
    if !value.is_zero() {
        return Err(Error::Domain(
            "ring validation failed: f(pi) != 0 over Z/p^K".into(),
        ));
    }
    if !ring.pi_matrix.pow(e).divisible_by_p() {
        return Err(Error::Domain(
            "ring validation failed: pi^e not divisible by p".into(),
        ));
    }
    if e > 1 && ring.pi_matrix.pow(e - 1).divisible_by_p() {
        return Err(Error::Domain(
            "ring validation failed: pi nilpotent below index e".into(),
        ));
    }
    Ok(())
}

/// One guard digit above the largest exponent the module can produce.
pub fn default_precision(lambda: &Partition, e: u64) -> Result<u32> {
    if lambda.is_empty() {
        return Err(Error::Domain(
            "default precision needs a non-empty partition".into(),
        ));
    }
    if e < 1 {
        return Err(Error::Domain("ramification index e must be >= 1".into()));
    }
    u32::try_from(ceil_div(lambda.largest_part(), e) + 1)
        .map_err(|_| Error::Overflow("default precision".into()))
}

/// Relation matrix presenting the module with partition `lambda`: a block
/// diagonal of pi^(n_i). The module is the cokernel on (Z/p^K)^(ed*len).
pub fn module_relations(ring: &EisensteinRing, lambda: &Partition) -> Result<LocalMatrix> {
    ring.ensure_precision(lambda, 0)?;
    let blocks: Vec<LocalMatrix> = lambda
        .parts()
        .iter()
        .map(|&n| ring.pi_matrix.pow(n))
        .collect();
    Ok(LocalMatrix::block_diag(ring.p, ring.precision, &blocks))
}

/// Abelian invariants of the module, recovered purely from elimination:
/// the non-zero diagonal valuations of the relation matrix.
pub fn abelian_invariants_oracle(ring: &EisensteinRing, lambda: &Partition) -> Result<Partition> {
    let relations = module_relations(ring, lambda)?;
    let mut exponents: Vec<u64> = Vec::new();
    for v in relations.local_snf() {
        assert!(
            v < ring.precision,
            "valuation hit the precision ceiling despite the guard digit"
        );
        if v > 0 {
            exponents.push(v as u64);
        }
    }
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Partition::from_parts(exponents).expect("positive exponents"))
}

/// log_p of |A·P^j| for j = 0..=j_max, computed as span orders relative to
/// the relation span. Successive differences are the lower-central ranks.
pub fn lcs_logorders(ring: &EisensteinRing, lambda: &Partition, j_max: u64) -> Result<Vec<u64>> {
    let relations = module_relations(ring, lambda)?;
    let rank = relations.rows();
    let rel_log = span_logorder(rank, &relations);
    let action = ring.module_action(lambda.len());
    let mut power = LocalMatrix::identity(ring.p, ring.precision, rank);
    let mut out = Vec::with_capacity(j_max as usize + 1);
    for j in 0..=j_max {
        if j > 0 {
            power = power.mul(&action);
        }
        let span = span_logorder(rank, &power.hstack(&relations));
        out.push(span - rel_log);
    }
    Ok(out)
}

/// Span equality test for p^n·A = A·P^(ne), by mutual containment: a side
/// is contained in the other iff adjoining its generators does not grow
/// the other side's span.
pub fn power_subgroup_check(ring: &EisensteinRing, lambda: &Partition, n: u64) -> Result<bool> {
    if n < 1 {
        return Err(Error::Domain("power index n must be >= 1".into()));
    }
    ring.ensure_precision(lambda, n)?;
    let relations = module_relations(ring, lambda)?;
    let rank = relations.rows();
    let p_power = BigUint::from(ring.p).pow(u32::try_from(n).map_err(|_| {
        Error::Overflow("power index".into())
    })?);
    let scalar_side = LocalMatrix::scalar(ring.p, ring.precision, rank, &p_power).hstack(&relations);
    let pi_side = ring
        .module_action(lambda.len())
        .pow(n * ring.e as u64)
        .hstack(&relations);
    let log_scalar = span_logorder(rank, &scalar_side);
    let log_pi = span_logorder(rank, &pi_side);
    let log_joint = span_logorder(rank, &scalar_side.hstack(&pi_side));
    Ok(log_scalar == log_joint && log_pi == log_joint)
}
