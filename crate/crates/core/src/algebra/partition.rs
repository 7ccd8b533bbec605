use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// Integer partition; parts are positive and weakly decreasing.
///
/// Ordered by weight first, then lexicographically *descending* on the parts,
/// so that `(2) < (1,1)` and `(3) < (2,1) < (1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with 1-based index, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// Compact label: `21` for (2,1), `10,1` once a part has two digits.
    pub fn label(&self) -> String {
        if self.0.iter().all(|&p| p < 10) {
            self.0.iter().map(|p| p.to_string()).collect()
        } else {
            self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Partitions of exactly `n`, lexicographically descending.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight at most `d`, by weight, then lexicographically
/// descending.
pub fn enumerate_partitions(d: u32) -> Vec<Partition> {
    (0..=d).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_enumeration() {
        assert_eq!(enumerate_partitions(2), vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1])]);
    }

    // Independent count of weakly decreasing tuples.
    fn brute_count(n: u32) -> usize {
        fn count(rest: u32, max: u32) -> usize {
            if rest == 0 {
                return 1;
            }
            let mut total = 0;
            let mut part = 1;
            while part <= max && part <= rest {
                total += count(rest - part, part);
                part += 1;
            }
            total
        }
        count(n, n)
    }

    #[test]
    fn enumeration_counts() {
        let oracle8: usize = (0..=8).map(brute_count).sum();
        let oracle14: usize = (0..=14).map(brute_count).sum();
        assert_eq!(oracle8, 67);
        assert_eq!(oracle14, 508);
        assert_eq!(enumerate_partitions(8).len(), oracle8);
        assert_eq!(enumerate_partitions(14).len(), oracle14);
    }

    #[test]
    fn ordering_matches_enumeration() {
        let all = enumerate_partitions(7);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_parts(vec![1, 0, 3]), p(&[3, 1]));
    }

    #[test]
    fn conjugate_and_label() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[]).conjugate(), p(&[]));
        assert_eq!(p(&[2, 1, 1]).label(), "211");
        assert_eq!(p(&[10, 1]).label(), "10,1");
    }
}
