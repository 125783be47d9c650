//! Property tests for the structural invariants that hold across modules.

use num_bigint::BigUint;
use proptest::prelude::*;

use dvrpart::enumerate::{f_e_count, partition_count};
use dvrpart::oracle::{module_relations, span_logorder, EisensteinRing, LocalMatrix};
use dvrpart::restriction::{restrict, RestrictionParams};
use dvrpart::{Partition, PartitionStyle};

fn arb_partition(max_part: u64, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u64..=max_part, 0..=max_len)
        .prop_map(|parts| Partition::from_parts(parts).unwrap())
}

proptest! {
    #[test]
    fn bands_partition_the_parts(lambda in arb_partition(30, 8), e in 1u64..=6) {
        let top = lambda.largest_part().div_ceil(e);
        let mut collected: Vec<u64> = Vec::new();
        for l in 1..=top.max(1) {
            collected.extend_from_slice(lambda.sub_partition(e, l).unwrap().parts());
        }
        collected.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(collected.as_slice(), lambda.parts());
    }

    #[test]
    fn weight_identity_and_bounds(
        lambda in arb_partition(30, 8),
        e in 1u64..=6,
        l in 1u64..=15,
    ) {
        let band = lambda.sub_partition(e, l).unwrap();
        let w = lambda.weight(e, l).unwrap();
        prop_assert_eq!(w, band.size() - band.len() as u64 * (l - 1) * e);
        prop_assert!(w <= band.len() as u64 * e);
    }

    #[test]
    fn telescoped_coefficients_recover_the_size(
        lambda in arb_partition(20, 6),
        e in 1u64..=6,
    ) {
        let top = lambda.largest_part().div_ceil(e);
        let total: u64 = (1..=top).map(|i| i * lambda.f_coeff(e, i).unwrap()).sum();
        prop_assert_eq!(total, lambda.size());
    }

    #[test]
    fn conjugate_is_an_involution(lambda in arb_partition(20, 8)) {
        let conj = lambda.conjugate();
        prop_assert_eq!(conj.size(), lambda.size());
        prop_assert_eq!(conj.conjugate(), lambda);
    }

    #[test]
    fn exponent_format_round_trips(lambda in arb_partition(40, 10)) {
        let exponent = lambda.format(PartitionStyle::Exponent);
        prop_assert_eq!(Partition::parse(&exponent).unwrap(), lambda.clone());
        let list = lambda.format(PartitionStyle::List);
        prop_assert_eq!(Partition::parse(&list).unwrap(), lambda);
    }

    #[test]
    fn restriction_is_additive(
        a in arb_partition(12, 5),
        b in arb_partition(12, 5),
        e in 1u64..=6,
        d in 1u64..=3,
    ) {
        let params = RestrictionParams::new(e, d).unwrap();
        let mut joined = a.parts().to_vec();
        joined.extend_from_slice(b.parts());
        let union = Partition::from_parts(joined).unwrap();
        prop_assert_eq!(
            restrict(&union, params),
            restrict(&a, params).merged(&restrict(&b, params))
        );
    }

    #[test]
    fn restriction_preserves_scaled_length(
        lambda in arb_partition(20, 6),
        e in 1u64..=6,
        d in 1u64..=3,
    ) {
        let params = RestrictionParams::new(e, d).unwrap();
        prop_assert_eq!(restrict(&lambda, params).length(), d * lambda.size());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counts_stay_within_partition_count(e in 1u64..=6, n in 1u64..=12) {
        let count = f_e_count(e, n, false).unwrap().count;
        prop_assert!(count >= 1);
        prop_assert!(BigUint::from(count) <= partition_count(n));
    }

    #[test]
    fn module_order_is_the_scaled_size(
        lambda in arb_partition(4, 2),
        ring_choice in 0usize..3,
    ) {
        let precision = (lambda.largest_part() + 2).max(2) as u32;
        let ring = match ring_choice {
            0 => EisensteinRing::cyclotomic(3, precision, 1).unwrap(),
            1 => EisensteinRing::power_minus_p(3, precision, 2, 2).unwrap(),
            _ => EisensteinRing::power_minus_p(5, precision, 1, 3).unwrap(),
        };
        let relations = module_relations(&ring, &lambda).unwrap();
        let rank = relations.rows();
        let module_log = rank as u64 * precision as u64 - span_logorder(rank, &relations);
        prop_assert_eq!(module_log, ring.residue_degree() * lambda.size());
    }
}

// ---------------------------------------------------------------------------
// elimination invariance under unimodular changes of basis

#[derive(Debug, Clone)]
enum ElementaryOp {
    Swap(usize, usize),
    Add { from: usize, to: usize, factor: u64 },
    ScaleUnit { row: usize, unit: u64 },
}

fn arb_ops(p: u64) -> impl Strategy<Value = Vec<ElementaryOp>> {
    let op = (0..3usize, 0..8usize, 0..8usize, 0u64..20, 1u64..p).prop_map(
        move |(kind, a, b, factor, unit_residue)| match kind {
            0 => ElementaryOp::Swap(a, b),
            1 => ElementaryOp::Add {
                from: a,
                to: b,
                factor,
            },
            _ => ElementaryOp::ScaleUnit {
                row: a,
                // any residue in 1..p stays a unit after lifting
                unit: unit_residue + p * factor,
            },
        },
    );
    prop::collection::vec(op, 0..10)
}

fn unimodular(p: u64, precision: u32, dim: usize, ops: &[ElementaryOp]) -> LocalMatrix {
    let mut m = LocalMatrix::identity(p, precision, dim);
    for op in ops {
        match *op {
            ElementaryOp::Swap(a, b) if a % dim != b % dim => {
                let (a, b) = (a % dim, b % dim);
                for c in 0..dim {
                    let va = m.get(a, c).clone();
                    let vb = m.get(b, c).clone();
                    m.set(a, c, vb);
                    m.set(b, c, va);
                }
            }
            ElementaryOp::Swap(..) => {}
            ElementaryOp::Add { from, to, factor } if from % dim != to % dim => {
                let (from, to) = (from % dim, to % dim);
                for c in 0..dim {
                    let value = m.get(to, c) + m.get(from, c) * BigUint::from(factor);
                    m.set(to, c, value);
                }
            }
            ElementaryOp::Add { .. } => {}
            ElementaryOp::ScaleUnit { row, unit } => {
                let row = row % dim;
                for c in 0..dim {
                    let value = m.get(row, c) * BigUint::from(unit);
                    m.set(row, c, value);
                }
            }
        }
    }
    m
}

fn snf_case() -> impl Strategy<
    Value = (
        u64,
        u32,
        usize,
        usize,
        Vec<u64>,
        Vec<ElementaryOp>,
        Vec<ElementaryOp>,
    ),
> {
    prop::sample::select(vec![(2u64, 4u32), (3, 3), (5, 2)]).prop_flat_map(|(p, precision)| {
        (
            Just(p),
            Just(precision),
            1usize..=4,
            1usize..=4,
            prop::collection::vec(0u64..10_000, 16),
            arb_ops(p),
            arb_ops(p),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_is_a_module_invariant(
        (p, precision, rows, cols, seed_entries, left_ops, right_ops) in snf_case(),
    ) {
        let mut matrix = LocalMatrix::zeros(p, precision, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                matrix.set(r, c, BigUint::from(seed_entries[r * 4 + c]));
            }
        }
        let left = unimodular(p, precision, rows, &left_ops);
        let right = unimodular(p, precision, cols, &right_ops);
        let transformed = left.mul(&matrix).mul(&right);
        prop_assert_eq!(transformed.local_snf(), matrix.local_snf());
    }
}
