//! Restriction of scalars for torsion modules over extensions of discrete
//! valuation rings, at partition level.
//!
//! Given an extension with ramification index `e` and residue degree `d`,
//! the module classified by a partition over the big ring decomposes over
//! the small ring into cyclic summands whose multiplicities come from a
//! banded weight calculus on the partition ([`restriction::restrict`]).
//! On top of that sit the group-theoretic invariants of the associated
//! cyclic-by-abelian p-group extensions ([`invariants`]), an enumeration
//! facility counting distinct restricted partitions ([`enumerate`]), and a
//! brute-force verifier that rebuilds everything from explicit Eisenstein
//! quotient rings and elimination over Z/p^K ([`oracle`]).
//!
//! ```
//! use dvrpart::partition::Partition;
//! use dvrpart::restriction::{restrict, RestrictionParams};
//!
//! let lambda = Partition::parse("5,3,2,1").unwrap();
//! let params = RestrictionParams::new(2, 1).unwrap();
//! let induced = restrict(&lambda, params);
//! assert_eq!(induced.to_partition().to_string(), "3,2,2,1,1,1,1");
//! ```

pub mod arith;
pub mod enumerate;
pub mod error;
pub mod invariants;
pub mod oracle;
pub mod partition;
pub mod restriction;

pub use error::{Error, Result};
pub use partition::{Partition, PartitionStyle};
pub use restriction::{InducedDecomposition, RestrictionParams};
