//! Partition enumeration and the image-counting facility: how many distinct
//! partitions of n arise as restrictions, tabulated against p(n).

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::restriction::{restrict, RestrictionParams};

/// Streams the partitions of `n` with parts bounded by `max_part`, in
/// descending lexicographic order.
struct BoundedPartitions {
    current: Option<Vec<u64>>,
}

impl BoundedPartitions {
    fn new(n: u64, max_part: u64) -> Self {
        let current = if n == 0 {
            Some(Vec::new())
        } else if max_part == 0 {
            None
        } else {
            // greedy head gives the lexicographically largest partition
            let mut parts = vec![max_part; (n / max_part) as usize];
            if !n.is_multiple_of(max_part) {
                parts.push(n % max_part);
            }
            Some(parts)
        };
        BoundedPartitions { current }
    }
}

impl Iterator for BoundedPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.take()?;
        self.current = successor(&parts);
        Some(Partition::from_sorted_unchecked(parts))
    }
}

/// The next partition in descending lexicographic order: decrement the
/// rightmost part above 1 and refill the freed total greedily with the
/// decremented value.
fn successor(parts: &[u64]) -> Option<Vec<u64>> {
    let pivot = parts.iter().rposition(|&p| p > 1)?;
    let total: u64 = parts[pivot..].iter().sum();
    let fill = parts[pivot] - 1;
    let mut next = parts[..pivot].to_vec();
    next.extend(std::iter::repeat_n(fill, (total / fill) as usize));
    if !total.is_multiple_of(fill) {
        next.push(total % fill);
    }
    Some(next)
}

/// All partitions of `n` in descending lexicographic order; `n = 0` yields
/// the empty partition once.
pub fn partitions_of(n: u64) -> impl Iterator<Item = Partition> {
    BoundedPartitions::new(n, n)
}

/// Memoized partition counting via the pentagonal-number recurrence.
#[derive(Debug, Default)]
pub struct PartitionCounter {
    table: Vec<BigUint>,
}

impl PartitionCounter {
    pub fn new() -> Self {
        PartitionCounter {
            table: vec![BigUint::one()],
        }
    }

    pub fn count(&mut self, n: u64) -> BigUint {
        let n = n as usize;
        while self.table.len() <= n {
            let i = self.table.len();
            let mut sum = BigInt::zero();
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                sum += sign * BigInt::from(self.table[i - g1].clone());
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    sum += sign * BigInt::from(self.table[i - g2].clone());
                }
                k += 1;
            }
            self.table
                .push(sum.to_biguint().expect("p(n) is non-negative"));
        }
        self.table[n].clone()
    }
}

/// p(n), the number of partitions of n.
pub fn partition_count(n: u64) -> BigUint {
    PartitionCounter::new().count(n)
}

/// Result of an image count: the number of distinct restricted partitions,
/// and optionally the images themselves in descending lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageCount {
    pub count: u64,
    pub images: Option<Vec<Partition>>,
}

/// Number of distinct partitions arising as restrictions (with d = 1) of
/// partitions of n, deduplicated by canonical form.
pub fn f_e_count(e: u64, n: u64, collect: bool) -> Result<ImageCount> {
    f_e_count_jobs(e, n, collect, 1)
}

/// As [`f_e_count`], sharding the enumeration by largest part across the
/// given number of workers. The merged result is independent of `jobs`.
pub fn f_e_count_jobs(e: u64, n: u64, collect: bool, jobs: usize) -> Result<ImageCount> {
    if e < 1 || n < 1 {
        return Err(Error::Domain("e and n must be >= 1".into()));
    }
    let params = RestrictionParams::new(e, 1)?;
    let shard_images = |largest: u64| -> BTreeSet<Partition> {
        let mut set = BTreeSet::new();
        for tail in BoundedPartitions::new(n - largest, largest) {
            let mut parts = Vec::with_capacity(tail.len() + 1);
            parts.push(largest);
            parts.extend_from_slice(tail.parts());
            let lambda = Partition::from_sorted_unchecked(parts);
            let image = restrict(&lambda, params).to_partition();
            debug_assert_eq!(image.size(), n, "images preserve the size");
            set.insert(image);
        }
        set
    };

    let merged: BTreeSet<Partition> = if jobs <= 1 {
        let mut set = BTreeSet::new();
        for lambda in partitions_of(n) {
            let image = restrict(&lambda, params).to_partition();
            debug_assert_eq!(image.size(), n, "images preserve the size");
            set.insert(image);
        }
        set
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        let shards: Vec<BTreeSet<Partition>> =
            pool.install(|| (1..=n).into_par_iter().map(shard_images).collect());
        let mut set = BTreeSet::new();
        for shard in shards {
            set.extend(shard);
        }
        set
    };

    let count = merged.len() as u64;
    let images = collect.then(|| merged.into_iter().rev().collect());
    Ok(ImageCount { count, images })
}

/// Closed-form value of f_e(n) where one is known: 1 on n <= e, and
/// n - e + 1 on e < n <= 2e.
pub fn closed_form_expected(e: u64, n: u64) -> Option<u64> {
    if e < 1 || n < 1 {
        return None;
    }
    if n <= e {
        Some(1)
    } else if n <= 2 * e {
        Some(n - e + 1)
    } else {
        None
    }
}

/// One table row: n, p(n), f_e(n) and their ratio to six decimal places.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRow {
    pub n: u64,
    pub p_n: BigUint,
    pub f_e_n: BigUint,
    pub ratio: String,
}

impl Serialize for SequenceRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SequenceRow", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("p_n", &self.p_n.to_string())?;
        st.serialize_field("f_e_n", &self.f_e_n.to_string())?;
        st.serialize_field("ratio", &self.ratio)?;
        st.end()
    }
}

/// num/den rendered to six decimal places, rounding half to even.
pub(crate) fn ratio_decimal(num: &BigUint, den: &BigUint) -> String {
    debug_assert!(!den.is_zero());
    let scaled = num * BigUint::from(1_000_000u64);
    let (mut q, r) = scaled.div_rem(den);
    let twice = &r * 2u64;
    if twice > *den || (twice == *den && q.is_odd()) {
        q += 1u64;
    }
    let million = BigUint::from(1_000_000u64);
    let (int_part, frac_part) = q.div_rem(&million);
    format!("{int_part}.{frac_part:06}")
}

/// Resumable table cache keyed by (e, n). Purely an optimization: the table
/// is identical with the cache deleted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableCache {
    entries: BTreeMap<(u64, u64), BigUint>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    entries: Vec<CacheEntry>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    e: u64,
    n: u64,
    f_e_n: String,
}

impl TableCache {
    pub fn get(&self, e: u64, n: u64) -> Option<&BigUint> {
        self.entries.get(&(e, n))
    }

    pub fn insert(&mut self, e: u64, n: u64, value: BigUint) {
        self.entries.insert((e, n), value);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CacheFile = serde_json::from_str(text)
            .map_err(|err| Error::Domain(format!("malformed cache file: {err}")))?;
        let mut cache = TableCache::default();
        for entry in file.entries {
            let value = entry
                .f_e_n
                .parse::<BigUint>()
                .map_err(|_| Error::Domain(format!("malformed cache value {:?}", entry.f_e_n)))?;
            cache.insert(entry.e, entry.n, value);
        }
        Ok(cache)
    }

    pub fn to_json(&self) -> String {
        let file = CacheFile {
            entries: self
                .entries
                .iter()
                .map(|(&(e, n), value)| CacheEntry {
                    e,
                    n,
                    f_e_n: value.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("cache serializes")
    }
}

/// Rows for n = 1..=n_max. A cache, if supplied, is consulted for f_e(n)
/// and extended with every freshly computed value.
pub fn f_e_table(
    e: u64,
    n_max: u64,
    jobs: usize,
    mut cache: Option<&mut TableCache>,
) -> Result<Vec<SequenceRow>> {
    if e < 1 || n_max < 1 {
        return Err(Error::Domain("e and n_max must be >= 1".into()));
    }
    let mut counter = PartitionCounter::new();
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let p_n = counter.count(n);
        let f_e_n = match cache.as_ref().and_then(|c| c.get(e, n)) {
            Some(hit) => hit.clone(),
            None => {
                let fresh = BigUint::from(f_e_count_jobs(e, n, false, jobs)?.count);
                if let Some(c) = cache.as_deref_mut() {
                    c.insert(e, n, fresh.clone());
                }
                fresh
            }
        };
        let ratio = ratio_decimal(&f_e_n, &p_n);
        rows.push(SequenceRow { n, p_n, f_e_n, ratio });
    }
    Ok(rows)
}

/// CSV rendering of a table, header `n,p_n,f_e_n,ratio`.
pub fn table_csv(rows: &[SequenceRow]) -> String {
    let mut out = String::from("n,p_n,f_e_n,ratio\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.n, row.p_n, row.f_e_n, row.ratio
        ));
    }
    out
}

/// One comparison row of the divisibility probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub n: u64,
    pub f_e: BigUint,
    pub f_e_prime: BigUint,
    /// f_e(n) - f_e'(n), kept signed on purpose: nothing is asserted.
    pub diff: BigInt,
    /// f_e'(n) / f_e(n) to six decimal places.
    pub ratio: String,
}

impl Serialize for ProbeRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ProbeRow", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("f_e", &self.f_e.to_string())?;
        st.serialize_field("f_e_prime", &self.f_e_prime.to_string())?;
        st.serialize_field("diff", &self.diff.to_string())?;
        st.serialize_field("ratio", &self.ratio)?;
        st.end()
    }
}

/// Side-by-side columns of f_e and f_e' for e dividing e'. Reports raw
/// data only; no relationship is asserted.
pub fn divisibility_probe(e: u64, e_prime: u64, n_max: u64, jobs: usize) -> Result<Vec<ProbeRow>> {
    if e < 1 || e_prime < 1 || n_max < 1 {
        return Err(Error::Domain("e, e_prime and n_max must be >= 1".into()));
    }
    if !e_prime.is_multiple_of(e) {
        return Err(Error::Domain(format!(
            "e = {e} must divide e_prime = {e_prime}"
        )));
    }
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let f_e = BigUint::from(f_e_count_jobs(e, n, false, jobs)?.count);
        let f_e_prime = BigUint::from(f_e_count_jobs(e_prime, n, false, jobs)?.count);
        let diff = BigInt::from(f_e.clone()) - BigInt::from(f_e_prime.clone());
        let ratio = ratio_decimal(&f_e_prime, &f_e);
        rows.push(ProbeRow {
            n,
            f_e,
            f_e_prime,
            diff,
            ratio,
        });
    }
    Ok(rows)
}

/// CSV rendering of a probe, header `n,f_e,f_e_prime,diff,ratio`.
pub fn probe_csv(rows: &[ProbeRow]) -> String {
    let mut out = String::from("n,f_e,f_e_prime,diff,ratio\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n, row.f_e, row.f_e_prime, row.diff, row.ratio
        ));
    }
    out
}
