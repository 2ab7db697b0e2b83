//! Partition combinatorics: Frobenius coordinates, conjugation,
//! n-periodicity, and the admissibility test for reduced hierarchies.

use std::fmt;

use crate::error::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "parts must be weakly decreasing, got {parts:?}"
            )));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        Ok(Partition { parts })
    }

    /// Builds from a list that may carry trailing zeros.
    pub fn from_padded(mut parts: Vec<u32>) -> Result<Partition> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::new(parts)
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part at 1-based index; 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::new();
        let mut col = 1;
        loop {
            let height = self.parts.iter().take_while(|&&p| p >= col).count() as u32;
            if height == 0 {
                break;
            }
            parts.push(height);
            col += 1;
        }
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Length of the main diagonal of the Young diagram.
    pub fn frobenius_rank(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p as usize > i)
            .count()
    }

    pub fn to_frobenius(&self) -> FrobeniusCoords {
        let conj = self.conjugate();
        let k = self.frobenius_rank();
        let a: Vec<u32> = (1..=k).map(|i| self.part(i) - i as u32).collect();
        let b: Vec<u32> = (1..=k).map(|j| conj.part(j) - j as u32).collect();
        FrobeniusCoords { a, b }
    }

    /// The hook partition (i+1, 1^j).
    pub fn hook(i: u32, j: u32) -> Partition {
        let mut parts = vec![i + 1];
        parts.extend(std::iter::repeat(1).take(j as usize));
        Partition { parts }
    }

    /// Whether the shifted index set {λ_i − i} ∪ {−ℓ−1, −ℓ−2, ...} maps into
    /// itself under subtraction of n. Only the finite part needs checking:
    /// anything that lands at or below −ℓ−1 is in the infinite tail.
    pub fn is_n_periodic(&self, n: u32) -> bool {
        assert!(n >= 2, "periodicity is defined for n >= 2");
        let ell = self.parts.len() as i64;
        let finite: Vec<i64> = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i64 - (i as i64 + 1))
            .collect();
        for &v in &finite {
            let w = v - n as i64;
            if w <= -ell - 1 {
                continue;
            }
            if !finite.contains(&w) {
                return false;
            }
        }
        true
    }

    /// All partitions of weight at most `max_weight`, including the empty one.
    pub fn enumerate_up_to(max_weight: u32) -> Vec<Partition> {
        let mut out = vec![Partition::empty()];
        for w in 1..=max_weight {
            enumerate_of_weight(w, w, &mut Vec::new(), &mut out);
        }
        out
    }
}

fn enumerate_of_weight(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        prefix.push(p);
        enumerate_of_weight(remaining - p, p, prefix, out);
        prefix.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Frobenius coordinates (a₁,…,a_k | b₁,…,b_k): arm and leg lengths along
/// the main diagonal, both strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrobeniusCoords {
    a: Vec<u32>,
    b: Vec<u32>,
}

impl FrobeniusCoords {
    pub fn new(a: Vec<u32>, b: Vec<u32>) -> Result<FrobeniusCoords> {
        if a.len() != b.len() {
            return Err(Error::invalid("arm and leg lists must have equal length"));
        }
        if a.windows(2).any(|w| w[0] <= w[1]) || b.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::invalid(
                "Frobenius coordinates must be strictly decreasing",
            ));
        }
        Ok(FrobeniusCoords { a, b })
    }

    pub fn arms(&self) -> &[u32] {
        &self.a
    }

    pub fn legs(&self) -> &[u32] {
        &self.b
    }

    /// Diagonal length k.
    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.a == self.b
    }

    pub fn weight(&self) -> u64 {
        self.a.iter().map(|&x| x as u64).sum::<u64>()
            + self.b.iter().map(|&x| x as u64).sum::<u64>()
            + self.a.len() as u64
    }

    pub fn to_partition(&self) -> Partition {
        let k = self.a.len();
        let mut parts: Vec<u32> = (0..k).map(|i| self.a[i] + i as u32 + 1).collect();
        let mut row = k as u32 + 1;
        loop {
            let len = (0..k)
                .filter(|&j| self.b[j] + j as u32 + 1 >= row)
                .count() as u32;
            if len == 0 {
                break;
            }
            parts.push(len);
            row += 1;
        }
        Partition { parts }
    }
}

impl fmt::Display for FrobeniusCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[u32]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({}|{})", list(&self.a), list(&self.b))
    }
}

/// The two admissibility conditions for the arm set A of a self-conjugate
/// partition with respect to reduction modulo n: every a − n is again in A
/// or negative, and no a_i + a_j + 1 (including i = j) is a multiple of n.
pub fn check_reduced_admissible(f: &FrobeniusCoords, n: u32) -> bool {
    assert!(n >= 2);
    let a = f.arms();
    for &x in a {
        if x >= n && !a.contains(&(x - n)) {
            return false;
        }
    }
    for &x in a {
        for &y in a {
            if (x as u64 + y as u64 + 1) % n as u64 == 0 {
                return false;
            }
        }
    }
    true
}

/// The two 3-periodic self-conjugate families for a given m:
/// arms (3m, 3m−3, …, 3, 0) and arms (3m+2, 3m−1, …, 5, 2).
pub fn enumerate_3periodic(m: u32) -> [FrobeniusCoords; 2] {
    let first: Vec<u32> = (0..=m).map(|i| 3 * (m - i)).collect();
    let second: Vec<u32> = (0..=m).map(|i| 3 * (m - i) + 2).collect();
    [
        FrobeniusCoords::new(first.clone(), first).unwrap(),
        FrobeniusCoords::new(second.clone(), second).unwrap(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn constructor_validates() {
        assert!(Partition::new(vec![2, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::from_padded(vec![2, 1, 0, 0]).is_ok());
        assert!(FrobeniusCoords::new(vec![1, 1], vec![1, 0]).is_err());
        assert!(FrobeniusCoords::new(vec![1], vec![1, 0]).is_err());
    }

    #[test]
    fn frobenius_round_trip() {
        let cases = [
            (vec![2, 2], (vec![1, 0], vec![1, 0])),
            (vec![3, 1, 1], (vec![2], vec![2])),
            (vec![], (vec![], vec![])),
            (vec![4, 3, 1], (vec![3, 1], vec![2, 0])),
        ];
        for (parts, (a, b)) in cases {
            let lam = Partition::from_padded(parts).unwrap();
            let f = lam.to_frobenius();
            assert_eq!(f.arms(), a.as_slice());
            assert_eq!(f.legs(), b.as_slice());
            assert_eq!(f.to_partition(), lam);
        }
    }

    #[test]
    fn frobenius_round_trip_exhaustive() {
        for lam in Partition::enumerate_up_to(12) {
            let f = lam.to_frobenius();
            assert_eq!(f.to_partition(), lam, "round trip failed for {lam}");
            assert_eq!(f.weight(), lam.weight());
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(p(&[3]).conjugate(), p(&[1, 1, 1]));
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
        for lam in Partition::enumerate_up_to(10) {
            assert_eq!(lam.conjugate().conjugate(), lam);
            let f = lam.to_frobenius();
            let fc = lam.conjugate().to_frobenius();
            assert_eq!(f.arms(), fc.legs());
            assert_eq!(f.legs(), fc.arms());
            assert_eq!(
                lam.is_self_conjugate(),
                f.arms() == f.legs(),
                "self-conjugacy mismatch for {lam}"
            );
        }
    }

    #[test]
    fn hooks() {
        assert_eq!(Partition::hook(2, 2), p(&[3, 1, 1]));
        assert_eq!(Partition::hook(0, 0), p(&[1]));
        for i in 0..=5 {
            for j in 0..=5 {
                let f = Partition::hook(i, j).to_frobenius();
                assert_eq!(f.arms(), &[i]);
                assert_eq!(f.legs(), &[j]);
            }
        }
    }

    #[test]
    fn periodicity_examples() {
        assert!(p(&[3, 1, 1]).is_n_periodic(3));
        assert!(!p(&[2, 2]).is_n_periodic(3));
        assert!(Partition::empty().is_n_periodic(2));
        assert!(Partition::empty().is_n_periodic(7));
    }

    #[test]
    fn admissibility_examples() {
        let f = |a: &[u32]| FrobeniusCoords::new(a.to_vec(), a.to_vec()).unwrap();
        assert!(check_reduced_admissible(&f(&[2]), 3));
        assert!(!check_reduced_admissible(&f(&[1, 0]), 2));
        assert!(check_reduced_admissible(&f(&[3, 0]), 3));
    }

    #[test]
    fn admissibility_matches_periodicity_for_self_conjugate() {
        for lam in Partition::enumerate_up_to(12) {
            if !lam.is_self_conjugate() {
                continue;
            }
            for n in [2u32, 3, 4] {
                let f = lam.to_frobenius();
                assert_eq!(
                    lam.is_n_periodic(n),
                    check_reduced_admissible(&f, n),
                    "mismatch for {lam} n={n}"
                );
            }
        }
    }

    #[test]
    fn three_periodic_families() {
        let [f1, f2] = enumerate_3periodic(0);
        assert_eq!(f1.arms(), &[0]);
        assert_eq!(f2.arms(), &[2]);
        let [g1, g2] = enumerate_3periodic(1);
        assert_eq!(g1.arms(), &[3, 0]);
        assert_eq!(g2.arms(), &[5, 2]);
        for m in 0..=3 {
            for f in enumerate_3periodic(m) {
                assert!(f.is_self_conjugate());
                assert!(f.to_partition().is_n_periodic(3), "family member {f}");
                assert!(check_reduced_admissible(&f, 3));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        // Partition numbers p(0..8) cumulative: 1,2,4,7,12,19,30,45,67.
        assert_eq!(Partition::enumerate_up_to(8).len(), 67);
    }
}
