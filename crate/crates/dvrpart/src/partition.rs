//! Integer partitions and the banded weight calculus that drives the
//! restriction-of-scalars map.
//!
//! A partition here is always a non-increasing sequence of positive parts.
//! For a ramification index `e`, the parts split into bands
//! `((l-1)e, le]`; the band contents, their weights, and the derived
//! coefficients `f_coeff` are what everything else in the crate consumes.

use std::fmt;

use crate::error::{Error, Result};

/// A partition: non-increasing positive parts. The empty partition is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

/// Output styles for [`Partition::format`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionStyle {
    /// Descending comma list, e.g. `5,3,2,1`.
    List,
    /// Ascending `i^a` groups separated by spaces, exponent omitted when 1,
    /// e.g. `1^4 2^2`.
    Exponent,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts in any order; rejects zero parts.
    pub fn from_parts(mut parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Builds from parts already sorted non-increasingly.
    ///
    /// Used by the enumeration core, where ordering is known by construction.
    pub(crate) fn from_sorted_unchecked(parts: Vec<u64>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    /// Parses partition text: either a comma list of positive integers
    /// (any order) or exponent notation like `1^4 2^2 5`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        if text.contains(',') {
            for token in text.split(',') {
                parts.push(parse_part(token.trim(), token)?);
            }
        } else {
            for token in text.split_whitespace() {
                match token.split_once('^') {
                    Some((base, exp)) => {
                        let part = parse_part(base, token)?;
                        let count = parse_exponent(exp, token)?;
                        parts.extend(std::iter::repeat_n(part, count));
                    }
                    None => parts.push(parse_part(token, token)?),
                }
            }
        }
        Partition::from_parts(parts)
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Length `l(lambda)`: the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Size `|lambda|`: the sum of the parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// The largest part, or 0 for the empty partition.
    pub fn largest_part(&self) -> u64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Renders the partition in the requested style.
    pub fn format(&self, style: PartitionStyle) -> String {
        match style {
            PartitionStyle::List => self
                .parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(","),
            PartitionStyle::Exponent => {
                let mut groups: Vec<String> = Vec::new();
                // Parts are descending; walk in reverse for ascending groups.
                let mut idx = self.parts.len();
                while idx > 0 {
                    let value = self.parts[idx - 1];
                    let mut count = 0usize;
                    while idx > 0 && self.parts[idx - 1] == value {
                        idx -= 1;
                        count += 1;
                    }
                    if count == 1 {
                        groups.push(value.to_string());
                    } else {
                        groups.push(format!("{value}^{count}"));
                    }
                }
                groups.join(" ")
            }
        }
    }

    /// Conjugate partition: entry `j` counts the parts that are `>= j`.
    pub fn conjugate(&self) -> Partition {
        let n1 = self.largest_part() as usize;
        let mut counts = vec![0u64; n1];
        for &part in &self.parts {
            for slot in counts.iter_mut().take(part as usize) {
                *slot += 1;
            }
        }
        Partition { parts: counts }
    }

    /// The sub-partition of parts lying in the band `((l-1)e, le]`,
    /// preserving multiplicity and order.
    pub fn sub_partition(&self, e: u64, l: u64) -> Result<Partition> {
        check_band_params(e, l)?;
        let lo = (l - 1) * e;
        let hi = l * e;
        let parts = self
            .parts
            .iter()
            .copied()
            .filter(|&p| p > lo && p <= hi)
            .collect();
        Ok(Partition { parts })
    }

    /// Band weight: the sum of `part - (l-1)e` over the band `((l-1)e, le]`.
    pub fn weight(&self, e: u64, l: u64) -> Result<u64> {
        check_band_params(e, l)?;
        let lo = (l - 1) * e;
        Ok(self
            .parts
            .iter()
            .filter(|&&p| p > lo && p <= l * e)
            .map(|&p| p - lo)
            .sum())
    }

    /// The coefficient `f_{e,i}`: the number of summands of exponent `i`
    /// (before scaling by the residue degree) in the restricted module.
    ///
    /// Computed as `len(band(i+1))*e - weight(i+1) + weight(i)`; a second
    /// route through band lengths and sizes is cross-checked in debug builds.
    pub fn f_coeff(&self, e: u64, i: u64) -> Result<u64> {
        check_band_params(e, i)?;
        let upper = self.sub_partition(e, i + 1)?;
        let w_upper = self.weight(e, i + 1)?;
        let w_here = self.weight(e, i)?;
        let len_upper = upper.len() as u64;
        // weight <= len * e on any band, so this cannot underflow.
        let value = (len_upper * e - w_upper) + w_here;
        debug_assert_eq!(value, self.f_coeff_alt(e, i), "band-identity cross-check");
        Ok(value)
    }

    /// Alternative route to `f_coeff` using only band lengths and sizes.
    fn f_coeff_alt(&self, e: u64, i: u64) -> u64 {
        let here = self.sub_partition(e, i).expect("params already checked");
        let upper = self.sub_partition(e, i + 1).expect("params already checked");
        let value = (upper.len() as i128) * ((i + 1) * e) as i128
            - (here.len() as i128) * ((i - 1) * e) as i128
            - upper.size() as i128
            + here.size() as i128;
        u64::try_from(value).expect("f_coeff is non-negative")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(PartitionStyle::List))
    }
}

fn check_band_params(e: u64, l: u64) -> Result<()> {
    if e < 1 {
        return Err(Error::Domain("ramification index e must be >= 1".into()));
    }
    if l < 1 {
        return Err(Error::Domain("band index must be >= 1".into()));
    }
    Ok(())
}

fn parse_part(text: &str, token: &str) -> Result<u64> {
    match text.parse::<u64>() {
        Ok(0) => Err(parse_err(token, "parts must be positive")),
        Ok(p) => Ok(p),
        Err(_) => Err(parse_err(token, "expected a positive integer")),
    }
}

fn parse_exponent(text: &str, token: &str) -> Result<usize> {
    match text.parse::<usize>() {
        Ok(0) => Err(parse_err(token, "exponents must be positive")),
        Ok(a) => Ok(a),
        Err(_) => Err(parse_err(token, "expected a positive exponent")),
    }
}

fn parse_err(token: &str, reason: &str) -> Error {
    Error::PartitionParse {
        token: token.to_string(),
        reason: reason.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[u64]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    #[test]
    fn parse_comma_list() {
        assert_eq!(Partition::parse("5,3,2,1").unwrap(), part(&[5, 3, 2, 1]));
        // permissive ordering
        assert_eq!(Partition::parse("1,5,2,3").unwrap(), part(&[5, 3, 2, 1]));
    }

    #[test]
    fn parse_exponent_notation() {
        assert_eq!(
            Partition::parse("1^4 2^2").unwrap(),
            part(&[2, 2, 1, 1, 1, 1])
        );
        assert_eq!(Partition::parse("1^4 2^2 5").unwrap(), part(&[5, 2, 2, 1, 1, 1, 1]));
        assert_eq!(Partition::parse("7").unwrap(), part(&[7]));
    }

    #[test]
    fn parse_empty() {
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert_eq!(Partition::parse("   ").unwrap(), Partition::empty());
    }

    #[test]
    fn parse_errors_name_the_token() {
        for (text, bad) in [
            ("0", "0"),
            ("3,0,1", "0"),
            ("2^0", "2^0"),
            ("x", "x"),
            ("3,-1", "-1"),
            ("2^x", "2^x"),
        ] {
            match Partition::parse(text) {
                Err(Error::PartitionParse { token, .. }) => {
                    assert!(token.contains(bad), "token {token:?} for input {text:?}")
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn format_styles() {
        let lambda = part(&[2, 2, 1, 1, 1, 1]);
        assert_eq!(lambda.format(PartitionStyle::Exponent), "1^4 2^2");
        assert_eq!(part(&[5, 3, 2, 1]).format(PartitionStyle::List), "5,3,2,1");
        assert_eq!(Partition::empty().format(PartitionStyle::List), "");
        assert_eq!(Partition::empty().format(PartitionStyle::Exponent), "");
        assert_eq!(part(&[5, 3]).format(PartitionStyle::Exponent), "3 5");
    }

    #[test]
    fn exponent_round_trip() {
        for parts in [vec![5, 3, 2, 1], vec![2, 2, 1, 1, 1, 1], vec![], vec![4, 4, 4]] {
            let lambda = Partition::from_parts(parts).unwrap();
            let text = lambda.format(PartitionStyle::Exponent);
            assert_eq!(Partition::parse(&text).unwrap(), lambda);
        }
    }

    /// Direct-count oracle for the conjugate.
    fn conjugate_by_counting(lambda: &Partition) -> Vec<u64> {
        (1..=lambda.largest_part())
            .map(|j| lambda.parts().iter().filter(|&&p| p >= j).count() as u64)
            .collect()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part(&[5, 3, 2, 1]).conjugate(), part(&[4, 3, 2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(part(&[3, 3, 3]).conjugate(), part(&[3, 3, 3]));
        for lambda in [part(&[5, 3, 2, 1]), part(&[6, 6, 1]), part(&[9])] {
            assert_eq!(lambda.conjugate().parts(), conjugate_by_counting(&lambda));
        }
    }

    #[test]
    fn sub_partition_bands() {
        let lambda = part(&[5, 3, 2, 1]);
        assert_eq!(lambda.sub_partition(2, 1).unwrap(), part(&[2, 1]));
        assert_eq!(lambda.sub_partition(2, 2).unwrap(), part(&[3]));
        assert_eq!(lambda.sub_partition(2, 4).unwrap(), Partition::empty());
        assert!(lambda.sub_partition(0, 1).is_err());
        assert!(lambda.sub_partition(2, 0).is_err());
    }

    #[test]
    fn weight_examples() {
        let lambda = part(&[5, 3, 2, 1]);
        assert_eq!(lambda.weight(2, 1).unwrap(), 3);
        assert_eq!(lambda.weight(2, 3).unwrap(), 1);
        assert_eq!(Partition::empty().weight(4, 7).unwrap(), 0);
    }

    #[test]
    fn f_coeff_examples() {
        let lambda = part(&[5, 3, 2, 1]);
        assert_eq!(lambda.f_coeff(2, 1).unwrap(), 4);
        assert_eq!(lambda.f_coeff(2, 3).unwrap(), 1);
        assert_eq!(part(&[4]).f_coeff(2, 1).unwrap(), 0);
        // bands above the largest part are empty
        assert_eq!(lambda.f_coeff(2, 40).unwrap(), 0);
    }

    #[test]
    fn weight_identity_on_grid() {
        // weight == |band| - len(band)*(l-1)*e on a dense grid
        let lambdas = [
            part(&[30, 17, 5, 5, 2]),
            part(&[12, 12, 12]),
            part(&[7, 1, 1, 1, 1]),
            Partition::empty(),
        ];
        for lambda in &lambdas {
            for e in 1..=6 {
                for l in 1..=15 {
                    let band = lambda.sub_partition(e, l).unwrap();
                    let w = lambda.weight(e, l).unwrap();
                    assert_eq!(w, band.size() - band.len() as u64 * (l - 1) * e);
                    assert!(w <= band.len() as u64 * e);
                }
            }
        }
    }
}
