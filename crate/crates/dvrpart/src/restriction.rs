//! The partition-level restriction-of-scalars map.
//!
//! For an extension of discrete valuation rings with ramification index `e`
//! and residue degree `d`, a torsion module with partition `lambda` over the
//! big ring decomposes over the small ring as a direct sum of
//! `(o/p^i)^(f_coeff(lambda,e,i) * d)`. This module computes that
//! decomposition, its single-part shortcut, and the cyclotomic special case
//! that turns a splitting automorphism into explicit abelian p-group
//! invariants.

use std::collections::BTreeMap;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::arith::{self, ceil_div};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Ramification index and residue degree of a DVR extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RestrictionParams {
    e: u64,
    d: u64,
}

impl RestrictionParams {
    pub fn new(e: u64, d: u64) -> Result<Self> {
        if e < 1 {
            return Err(Error::Domain("ramification index e must be >= 1".into()));
        }
        if d < 1 {
            return Err(Error::Domain("residue degree d must be >= 1".into()));
        }
        Ok(RestrictionParams { e, d })
    }

    pub fn ramification(&self) -> u64 {
        self.e
    }

    pub fn residue_degree(&self) -> u64 {
        self.d
    }
}

/// The restricted module as a sparse multiplicity map: exponent `i` maps to
/// the number of summands `o/p^i`. Only non-zero multiplicities are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InducedDecomposition {
    multiplicities: BTreeMap<u64, u64>,
}

impl InducedDecomposition {
    fn insert(&mut self, exponent: u64, multiplicity: u64) {
        if multiplicity > 0 {
            *self.multiplicities.entry(exponent).or_insert(0) += multiplicity;
        }
    }

    /// Multiplicity of the summand `o/p^i` (zero if absent).
    pub fn multiplicity(&self, exponent: u64) -> u64 {
        self.multiplicities.get(&exponent).copied().unwrap_or(0)
    }

    /// Pairs `(exponent, multiplicity)` with ascending exponents.
    pub fn summands(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.multiplicities.iter().map(|(&i, &a)| (i, a))
    }

    /// Total number of cyclic summands (the minimal generator count).
    pub fn summand_count(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    /// Module length over the small ring: the sum of `i * multiplicity(i)`.
    pub fn length(&self) -> u64 {
        self.multiplicities.iter().map(|(&i, &a)| i * a).sum()
    }

    /// The largest exponent present, if any.
    pub fn max_exponent(&self) -> Option<u64> {
        self.multiplicities.keys().next_back().copied()
    }

    /// Expands to an explicit descending partition. Beware huge
    /// multiplicities; the sparse form is the cheap one.
    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::new();
        for (&exponent, &mult) in self.multiplicities.iter().rev() {
            parts.extend(std::iter::repeat_n(exponent, mult as usize));
        }
        Partition::from_sorted_unchecked(parts)
    }

    /// Pointwise sum of two decompositions (direct sums restrict summand-wise).
    pub fn merged(&self, other: &InducedDecomposition) -> InducedDecomposition {
        let mut out = self.clone();
        for (i, a) in other.summands() {
            out.insert(i, a);
        }
        out
    }
}

impl Serialize for InducedDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Summands<'a>(&'a BTreeMap<u64, u64>);
        impl Serialize for Summands<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (&exponent, &multiplicity) in self.0 {
                    #[derive(Serialize)]
                    struct Summand {
                        exponent: u64,
                        multiplicity: u64,
                    }
                    seq.serialize_element(&Summand {
                        exponent,
                        multiplicity,
                    })?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("InducedDecomposition", 1)?;
        st.serialize_field("summands", &Summands(&self.multiplicities))?;
        st.end()
    }
}

/// Restriction of scalars at partition level: multiplicity of `o/p^i` is
/// `f_coeff(lambda, e, i) * d`.
pub fn restrict(lambda: &Partition, params: RestrictionParams) -> InducedDecomposition {
    let mut out = InducedDecomposition::default();
    if lambda.is_empty() {
        return out;
    }
    let top = ceil_div(lambda.largest_part(), params.e);
    for i in 1..=top {
        let coeff = lambda
            .f_coeff(params.e, i)
            .expect("params validated at construction");
        out.insert(i, coeff * params.d);
    }
    out
}

/// Single-part shortcut: with `n = le + r`, `0 < r <= e`, the module
/// `O/P^n` restricts to `(o/p^(l+1))^(rd) + (o/p^l)^((e-r)d)`.
pub fn restrict_single(n: u64, params: RestrictionParams) -> Result<InducedDecomposition> {
    if n < 1 {
        return Err(Error::Domain("part n must be >= 1".into()));
    }
    let e = params.e;
    let l = (n - 1) / e;
    let r = n - l * e;
    let mut out = InducedDecomposition::default();
    out.insert(l + 1, r * params.d);
    if l >= 1 {
        out.insert(l, (e - r) * params.d);
    }
    Ok(out)
}

/// The abelian p-group underlying a module over the p^m-th cyclotomic
/// integer ring: restriction with `e = (p-1)p^(m-1)`, `d = 1`.
pub fn abelian_group_of(lambda: &Partition, p: u64, m: u32) -> Result<InducedDecomposition> {
    let e = arith::cyclotomic_ramification(p, m)?;
    Ok(restrict(lambda, RestrictionParams::new(e, 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[u64]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    fn params(e: u64, d: u64) -> RestrictionParams {
        RestrictionParams::new(e, d).unwrap()
    }

    fn decomp(pairs: &[(u64, u64)]) -> InducedDecomposition {
        let mut out = InducedDecomposition::default();
        for &(i, a) in pairs {
            out.insert(i, a);
        }
        out
    }

    #[test]
    fn params_validation() {
        assert!(RestrictionParams::new(0, 1).is_err());
        assert!(RestrictionParams::new(1, 0).is_err());
        assert!(RestrictionParams::new(1, 1).is_ok());
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(
            restrict(&part(&[5, 3, 2, 1]), params(2, 1)),
            decomp(&[(1, 4), (2, 2), (3, 1)])
        );
        assert_eq!(
            restrict(&part(&[5, 3]), params(2, 1)),
            decomp(&[(1, 1), (2, 2), (3, 1)])
        );
        assert_eq!(restrict(&Partition::empty(), params(3, 2)), decomp(&[]));
    }

    #[test]
    fn restrict_is_identity_for_unramified_trivial_residue() {
        for lambda in [part(&[5, 3, 2, 1]), part(&[7, 7, 1]), part(&[1])] {
            assert_eq!(
                restrict(&lambda, params(1, 1)).to_partition(),
                lambda.clone()
            );
        }
    }

    #[test]
    fn restrict_single_examples() {
        assert_eq!(
            restrict_single(7, params(3, 2)).unwrap(),
            decomp(&[(3, 2), (2, 4)])
        );
        assert_eq!(restrict_single(4, params(2, 1)).unwrap(), decomp(&[(2, 2)]));
        assert_eq!(restrict_single(2, params(3, 1)).unwrap(), decomp(&[(1, 2)]));
        assert!(restrict_single(0, params(3, 1)).is_err());
    }

    #[test]
    fn restrict_single_agrees_with_restrict() {
        for n in 1..=40 {
            for e in 1..=6 {
                for d in 1..=3 {
                    let p = params(e, d);
                    assert_eq!(
                        restrict_single(n, p).unwrap(),
                        restrict(&part(&[n]), p),
                        "n={n}, e={e}, d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn abelian_group_examples() {
        assert_eq!(
            abelian_group_of(&part(&[5]), 3, 1).unwrap(),
            decomp(&[(3, 1), (2, 1)])
        );
        assert_eq!(
            abelian_group_of(&part(&[7]), 3, 2).unwrap(),
            decomp(&[(2, 1), (1, 5)])
        );
        // n = p-1 lands inside the first band
        for p in [3u64, 5, 7] {
            assert_eq!(
                abelian_group_of(&part(&[p - 1]), p, 1).unwrap(),
                decomp(&[(1, p - 1)])
            );
        }
        assert!(abelian_group_of(&part(&[2]), 6, 1).is_err());
    }

    #[test]
    fn length_matches_scaled_size() {
        for lambda in [part(&[5, 3, 2, 1]), part(&[9, 9]), Partition::empty()] {
            for e in 1..=6 {
                for d in 1..=3 {
                    let dec = restrict(&lambda, params(e, d));
                    assert_eq!(dec.length(), d * lambda.size());
                }
            }
        }
    }

    #[test]
    fn largest_induced_exponent() {
        for lambda in [part(&[5, 3, 2, 1]), part(&[12]), part(&[6, 6, 6])] {
            for e in 1..=6 {
                let dec = restrict(&lambda, params(e, 1));
                assert_eq!(
                    dec.max_exponent().unwrap(),
                    lambda.largest_part().div_ceil(e)
                );
            }
        }
    }

    #[test]
    fn json_shape() {
        let dec = restrict(&part(&[5, 3, 2, 1]), params(2, 1));
        let json = serde_json::to_value(&dec).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "summands": [
                    {"exponent": 1, "multiplicity": 4},
                    {"exponent": 2, "multiplicity": 2},
                    {"exponent": 3, "multiplicity": 1},
                ]
            })
        );
    }
}
