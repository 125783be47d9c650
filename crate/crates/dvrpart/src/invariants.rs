//! Group-theoretic invariants of an extension `H` of an abelian p-group by
//! a cyclic p-group acting through a splitting automorphism.
//!
//! Every reported quantity is a function of the module partition `lambda`
//! together with `p` and the cyclotomic level `m`; no group objects are
//! built here. The quotient-ring oracle provides the independent check.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{ceil_div, cyclotomic_ramification};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Invariants of the extension determined by `(lambda, p, m)`.
///
/// `h2_rank` is reported from the classification of equivalence classes of
/// extensions; the oracle does not verify it independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    /// Nilpotency class of `H`: the largest part of `lambda`.
    pub nilpotency_class: u64,
    /// The abelian kernel has exponent `p^exponent_exp`.
    pub exponent_exp: u64,
    /// Ranks of the lower-central factors `gamma_j / gamma_{j+1}` for
    /// `j = 2 ..= nilpotency_class`.
    pub lcs_ranks: Vec<u64>,
    /// Rank of `A / gamma_2(H)`: the number of parts of `lambda`.
    pub top_rank: u64,
    /// Minimal generator count of the abelian kernel.
    pub min_generators: u64,
    /// For each `n`, the index `j` with `A^(p^n) = gamma_j(H)`.
    pub power_to_gamma: BTreeMap<u64, u64>,
    /// Rank of the fixed subgroup under the acting automorphism.
    pub fixed_rank: u64,
    /// Rank of the group of extension classes; stated, not oracle-checked.
    pub h2_rank: u64,
}

/// Rank of `gamma_j(H) / gamma_{j+1}(H)`: the number of parts `>= j`.
pub fn lcs_rank(lambda: &Partition, j: u64) -> Result<u64> {
    if j < 1 {
        return Err(Error::Domain("series index j must be >= 1".into()));
    }
    Ok(lambda.parts().iter().filter(|&&p| p >= j).count() as u64)
}

/// Computes the full invariant report for a non-empty `lambda`.
pub fn extension_report(lambda: &Partition, p: u64, m: u32) -> Result<ExtensionReport> {
    if lambda.is_empty() {
        return Err(Error::TrivialModule);
    }
    let e = cyclotomic_ramification(p, m)?;
    let n1 = lambda.largest_part();
    let conj = lambda.conjugate();
    let conj = conj.parts();
    let exponent_exp = ceil_div(n1, e);
    let min_generators = conj.iter().take(e as usize).sum();
    let power_to_gamma = (1..=exponent_exp).map(|n| (n, n * e + 1)).collect();
    Ok(ExtensionReport {
        nilpotency_class: n1,
        exponent_exp,
        lcs_ranks: conj[1..].to_vec(),
        top_rank: conj[0],
        min_generators,
        power_to_gamma,
        fixed_rank: lambda.len() as u64,
        h2_rank: lambda.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restriction::abelian_group_of;

    fn part(parts: &[u64]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    #[test]
    fn report_single_part() {
        let report = extension_report(&part(&[5]), 3, 1).unwrap();
        assert_eq!(report.nilpotency_class, 5);
        assert_eq!(report.exponent_exp, 3);
        assert_eq!(report.top_rank, 1);
        assert_eq!(report.lcs_ranks, vec![1, 1, 1, 1]);
        assert_eq!(report.min_generators, 2);
        assert_eq!(report.fixed_rank, 1);
        assert_eq!(report.h2_rank, 1);
        assert_eq!(
            report.power_to_gamma,
            BTreeMap::from([(1, 3), (2, 5), (3, 7)])
        );
    }

    #[test]
    fn report_two_parts() {
        let report = extension_report(&part(&[5, 3]), 3, 1).unwrap();
        assert_eq!(report.nilpotency_class, 5);
        assert_eq!(report.exponent_exp, 3);
        assert_eq!(report.top_rank, 2);
        assert_eq!(report.lcs_ranks, vec![2, 2, 1, 1]);
        assert_eq!(report.min_generators, 4);
        assert_eq!(report.fixed_rank, 2);
    }

    #[test]
    fn report_central_case() {
        for p in [2u64, 3, 5] {
            let report = extension_report(&part(&[1]), p, 1).unwrap();
            assert_eq!(report.nilpotency_class, 1);
            assert_eq!(report.exponent_exp, 1);
            assert_eq!(report.top_rank, 1);
            assert!(report.lcs_ranks.is_empty());
            assert_eq!(report.min_generators, 1);
        }
    }

    #[test]
    fn empty_partition_rejected() {
        assert!(matches!(
            extension_report(&Partition::empty(), 3, 1),
            Err(Error::TrivialModule)
        ));
    }

    #[test]
    fn lcs_rank_examples() {
        let lambda = part(&[5, 3, 2, 1]);
        assert_eq!(lcs_rank(&lambda, 2).unwrap(), 3);
        assert_eq!(lcs_rank(&lambda, 6).unwrap(), 0);
        assert_eq!(lcs_rank(&part(&[3, 3, 3]), 3).unwrap(), 3);
        assert!(lcs_rank(&lambda, 0).is_err());
    }

    #[test]
    fn ranks_sum_to_size() {
        for lambda in [part(&[5, 3, 2, 1]), part(&[7]), part(&[4, 4, 4, 2])] {
            let report = extension_report(&lambda, 3, 1).unwrap();
            let total: u64 = report.top_rank + report.lcs_ranks.iter().sum::<u64>();
            assert_eq!(total, lambda.size());
            assert!(report
                .lcs_ranks
                .windows(2)
                .all(|w| w[0] >= w[1]));
            assert!(report.top_rank >= report.lcs_ranks.first().copied().unwrap_or(0));
        }
    }

    #[test]
    fn generator_count_matches_summand_count() {
        // both routes compute d(A), over every partition of size <= 15
        for n in 1..=15u64 {
            for lambda in crate::enumerate::partitions_of(n) {
                for p in [2u64, 3, 5, 7] {
                    for m in [1u32, 2] {
                        let report = extension_report(&lambda, p, m).unwrap();
                        let group = abelian_group_of(&lambda, p, m).unwrap();
                        assert_eq!(
                            report.min_generators,
                            group.summand_count(),
                            "lambda=({lambda}) p={p} m={m}"
                        );
                        assert_eq!(report.exponent_exp, group.max_exponent().unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn json_field_names() {
        let report = extension_report(&part(&[5]), 3, 1).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        let obj = json.as_object().unwrap();
        for field in [
            "nilpotency_class",
            "exponent_exp",
            "lcs_ranks",
            "top_rank",
            "min_generators",
            "power_to_gamma",
            "fixed_rank",
            "h2_rank",
        ] {
            assert!(obj.contains_key(field), "missing {field}");
        }
        assert_eq!(obj["power_to_gamma"]["1"], 3);
    }
}
