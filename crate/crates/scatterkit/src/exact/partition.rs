//! Integer partitions and multiset arrangements.

use std::fmt;

/// Weakly decreasing positive parts; the empty partition is allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts; panics on a zero part.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// i copies of part w; i = 0 gives the empty partition.
    pub fn rectangular(w: u32, i: u32) -> Self {
        assert!(w > 0 || i == 0);
        Self(vec![w; i as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// (part, multiplicity) pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// From a weight vector: the multiset of nonzero entries.
    pub fn from_weights(weights: &[u32]) -> Self {
        Self::new(weights.iter().copied().filter(|&w| w > 0).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let strs: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join("+"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// All partitions of n in reverse-lexicographic order: (n) first, (1,...,1) last.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        let top = max_part.min(remaining);
        for p in (1..=top).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// Distinct arrangements of a multiset, in lexicographic order.
pub fn multiset_permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // Standard next-permutation sweep.
    loop {
        let n = sorted.len();
        let Some(i) = (0..n - 1).rev().find(|&i| sorted[i] < sorted[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| sorted[j] > sorted[i]).unwrap();
        sorted.swap(i, j);
        sorted[i + 1..].reverse();
        out.push(sorted.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_four_in_order() {
        let got: Vec<Vec<u32>> = partitions_of(4).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(
            got,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_of(0).len(), 1);
        assert!(partitions_of(0)[0].is_empty());
        assert_eq!(partitions_of(6).len(), 11);
        assert_eq!(partitions_of(10).len(), 42);
    }

    #[test]
    fn multiplicities_and_display() {
        let p = Partition::new(vec![1, 2, 2, 5]);
        assert_eq!(p.parts(), &[5, 2, 2, 1]);
        assert_eq!(p.multiplicities(), vec![(5, 1), (2, 2), (1, 1)]);
        assert_eq!(p.to_string(), "5+2+2+1");
        assert_eq!(Partition::empty().to_string(), "0");
    }

    #[test]
    fn multiset_permutations_distinct() {
        let got = multiset_permutations(&[2, 1, 1]);
        assert_eq!(got, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
        assert_eq!(multiset_permutations(&[3, 3, 3]).len(), 1);
        assert_eq!(multiset_permutations(&[1, 2, 3]).len(), 6);
    }

    #[test]
    fn from_weights_drops_zeros() {
        assert_eq!(Partition::from_weights(&[0, 2, 0, 1, 2]).parts(), &[2, 2, 1]);
    }
}
