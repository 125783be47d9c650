//! Brute-force verification layer: explicit quotient rings, dense local
//! linear algebra, and module invariants recovered without the closed
//! partition formulas.

pub mod matrix;
pub mod poly;
pub mod ring;

pub use matrix::{span_logorder, LocalMatrix};
pub use poly::{check_eisenstein, cyclotomic_eisenstein, find_irreducible};
pub use ring::{
    abelian_invariants_oracle, build_ring, default_precision, lcs_logorders, module_relations,
    power_subgroup_check, EisensteinRing, RingMode, MAX_RING_RANK,
};
