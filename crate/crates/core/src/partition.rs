//! Integer partitions and compositions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, stripping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(m)`.
    pub fn row(m: usize) -> Self {
        if m == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![m] }
        }
    }

    /// The one-column partition `1^m`.
    pub fn column(m: usize) -> Self {
        Partition { parts: vec![1; m] }
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `i` (1-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Young-diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (1..=width).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect() }
    }

    /// Dominance order `self ⊵ other` for partitions of the same size.
    pub fn dominates(&self, other: &Partition) -> bool {
        let mut a = 0;
        let mut b = 0;
        for i in 0..self.len().max(other.len()) {
            a += self.part(i + 1);
            b += other.part(i + 1);
            if a < b {
                return false;
            }
        }
        true
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions contained in `self` (including `∅` and `self`).
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn rec(bound: &[usize], i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: cur.clone() });
            if i == bound.len() {
                return;
            }
            for p in 1..=bound[i].min(max) {
                cur.push(p);
                rec(bound, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.parts, 0, usize::MAX, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Adds one box in row `i` (1-based) if the result is a partition.
    pub fn add_box(&self, i: usize) -> Option<Partition> {
        if i == 0 || i > self.len() + 1 {
            return None;
        }
        let cur = self.part(i);
        if i > 1 && self.part(i - 1) <= cur {
            return None;
        }
        let mut parts = self.parts.clone();
        if i > parts.len() {
            parts.push(1);
        } else {
            parts[i - 1] += 1;
        }
        Some(Partition { parts })
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() || t == "∅" || t == "0" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<usize>().map_err(|e| Error::Parse(format!("partition part {x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A finite sequence of integers. Parts may be zero or negative; negative
/// parts arise from the sign-alternating sums over `λ_π`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<i64>,
}

impl Composition {
    pub fn new(parts: Vec<i64>) -> Self {
        Composition { parts }
    }

    pub fn from_usizes(parts: &[usize]) -> Self {
        Composition { parts: parts.iter().map(|&p| p as i64).collect() }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn has_negative_part(&self) -> bool {
        self.parts.iter().any(|&p| p < 0)
    }

    /// The multiset `I(α)` of partial sums `α₁, α₁+α₂, …, α₁+⋯+α_k`.
    pub fn partial_sums(&self) -> Vec<i64> {
        self.parts
            .iter()
            .scan(0i64, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// Sorted nonzero parts, or `None` when a part is negative.
    pub fn sorted_partition(&self) -> Option<Partition> {
        if self.has_negative_part() {
            return None;
        }
        Some(Partition::from_unsorted(self.parts.iter().map(|&p| p as usize).collect()))
    }

    /// All compositions of `m` into positive parts (`2^{m-1}` of them for `m > 0`).
    pub fn all_positive(m: usize) -> Vec<Composition> {
        fn rec(rem: usize, cur: &mut Vec<i64>, out: &mut Vec<Composition>) {
            if rem == 0 {
                out.push(Composition { parts: cur.clone() });
                return;
            }
            for p in 1..=rem {
                cur.push(p as i64);
                rec(rem - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() {
            return Ok(Composition::default());
        }
        let parts = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<i64>().map_err(|e| Error::Parse(format!("composition part {x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Composition { parts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn box_333_has_20_subpartitions() {
        let b: Partition = "3,3,3".parse().unwrap();
        assert_eq!(b.subpartitions().len(), 20);
    }

    #[test]
    fn rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap().parts(), &[2, 1]);
    }

    #[test]
    fn conjugate_and_dominance() {
        let l = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(l.conjugate().parts(), &[2, 1, 1]);
        assert!(Partition::row(4).dominates(&l));
        assert!(!l.dominates(&Partition::row(4)));
    }

    #[test]
    fn partial_sums_keep_repeats() {
        let a = Composition::new(vec![2, 0, 1]);
        assert_eq!(a.partial_sums(), vec![2, 2, 3]);
        assert_eq!(Composition::all_positive(4).len(), 8);
    }
}
