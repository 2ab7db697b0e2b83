//! Exact determinants and Pfaffians over ring-valued matrix entries.

use crate::error::{Error, Result};
use crate::poly::{FxHashMap, Poly};

/// The ring operations the determinant and Pfaffian routines need.
pub trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Ring for Poly {
    fn zero() -> Poly {
        Poly::zero()
    }
    fn one() -> Poly {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Poly) -> Poly {
        Poly::add(self, other)
    }
    fn neg(&self) -> Poly {
        Poly::neg(self)
    }
    fn mul(&self, other: &Poly) -> Poly {
        Poly::mul(self, other)
    }
}

/// Determinant by Laplace expansion memoized on column subsets, skipping
/// zero entries. The matrices here are small but their entries are large
/// polynomials, so sharing minors across expansion paths is what matters.
pub fn det<T: Ring>(m: &[Vec<T>]) -> Result<T> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::invalid("determinant needs a square matrix"));
    }
    if n > 63 {
        return Err(Error::invalid("determinant dimension limit is 63"));
    }
    if n == 0 {
        return Ok(T::one());
    }
    let full = (1u64 << n) - 1;
    let mut memo: FxHashMap<u64, T> = FxHashMap::default();
    Ok(det_minor(m, full, &mut memo))
}

fn det_minor<T: Ring>(m: &[Vec<T>], cols: u64, memo: &mut FxHashMap<u64, T>) -> T {
    if cols == 0 {
        return T::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let row = m.len() - cols.count_ones() as usize;
    let mut acc = T::zero();
    let mut negative = false;
    let mut rest = cols;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if !m[row][c].is_zero() {
            let sub = det_minor(m, cols & !(1u64 << c), memo);
            let term = m[row][c].mul(&sub);
            acc = acc.add(&if negative { term.neg() } else { term });
        }
        negative = !negative;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Pfaffian of an antisymmetric even-dimensional matrix, by expansion along
/// the first remaining row with minors memoized on index subsets.
pub fn pfaffian<T: Ring>(m: &[Vec<T>]) -> Result<T> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::invalid("Pfaffian needs a square matrix"));
    }
    if n % 2 != 0 {
        return Err(Error::invalid("Pfaffian needs even dimension"));
    }
    if n > 63 {
        return Err(Error::invalid("Pfaffian dimension limit is 63"));
    }
    for i in 0..n {
        if !m[i][i].is_zero() {
            return Err(Error::invalid(format!("Pfaffian needs zero diagonal, entry ({i},{i}) is not")));
        }
        for j in i + 1..n {
            if !m[i][j].add(&m[j][i]).is_zero() {
                return Err(Error::invalid(format!(
                    "Pfaffian needs an antisymmetric matrix, entries ({i},{j}) and ({j},{i}) do not cancel"
                )));
            }
        }
    }
    if n == 0 {
        return Ok(T::one());
    }
    let full = (1u64 << n) - 1;
    let mut memo: FxHashMap<u64, T> = FxHashMap::default();
    Ok(pf_minor(m, full, &mut memo))
}

fn pf_minor<T: Ring>(m: &[Vec<T>], idx: u64, memo: &mut FxHashMap<u64, T>) -> T {
    if idx == 0 {
        return T::one();
    }
    if let Some(v) = memo.get(&idx) {
        return v.clone();
    }
    let i = idx.trailing_zeros() as usize;
    let mut acc = T::zero();
    let mut negative = false;
    let mut remaining = idx & !(1u64 << i);
    while remaining != 0 {
        let j = remaining.trailing_zeros() as usize;
        remaining &= remaining - 1;
        if !m[i][j].is_zero() {
            let sub = pf_minor(m, idx & !(1u64 << i) & !(1u64 << j), memo);
            let term = m[i][j].mul(&sub);
            acc = acc.add(&if negative { term.neg() } else { term });
        }
        negative = !negative;
    }
    memo.insert(idx, acc.clone());
    acc
}
