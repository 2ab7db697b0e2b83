//! Laurent polynomials in an auxiliary variable z with polynomial
//! coefficients, Miwa shifts t_i -> t_i ± z^{∓i}/i, and the residue pairing
//! against an elementary-Schur prefactor series.

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::Ring;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::schur::{schur_sequence, SchurArgs};
use crate::vars::{Bank, VarRef};

/// A finite sum of z^k with polynomial coefficients; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Poly>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn from_poly(p: Poly) -> LaurentPoly {
        LaurentPoly::term(0, p)
    }

    pub fn term(zpow: i64, p: Poly) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        if !p.is_zero() {
            coeffs.insert(zpow, p);
        }
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, zpow: i64) -> Option<&Poly> {
        self.coeffs.get(&zpow)
    }

    pub fn coeff(&self, zpow: i64) -> Poly {
        self.coeffs.get(&zpow).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn min_pow(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_pow(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Poly)> {
        self.coeffs.iter().map(|(&k, p)| (k, p))
    }

    fn insert_add(&mut self, zpow: i64, p: &Poly) {
        if p.is_zero() {
            return;
        }
        match self.coeffs.entry(zpow) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(p);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, p) in other.iter() {
            out.insert_add(k, p);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, p)| (k, p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, p)| (k, p.scale(c))).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ka, pa) in self.iter() {
            for (kb, pb) in other.iter() {
                out.insert_add(ka + kb, &pa.mul(pb));
            }
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> LaurentPoly {
        if p.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, q)| (k, q.mul(p))).collect(),
        }
    }

    /// Shifts every exponent of z by `delta`.
    pub fn shift_zpow(&self, delta: i64) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, p)| (k + delta, p.clone())).collect(),
        }
    }
}

impl Ring for LaurentPoly {
    fn zero() -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one() -> LaurentPoly {
        LaurentPoly::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, other)
    }
    fn neg(&self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
    fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, other)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, p) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p})")?;
            match k {
                0 => {}
                1 => write!(f, " z")?,
                _ => write!(f, " z^{k}")?,
            }
        }
        Ok(())
    }
}

fn binomial(n: u32, k: u32) -> Rat {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    debug_assert!(acc <= i64::MAX as u128, "binomial overflow");
    Rat::from(acc as i64)
}

/// Substitutes t_i -> t_i + sign * zsign^i * z^{-i} / i for every variable of
/// the given bank, expanding binomially. Other banks pass through.
pub fn miwa_shift(p: &Poly, bank: Bank, sign: i32, zsign: i32) -> LaurentPoly {
    assert!(sign == 1 || sign == -1);
    assert!(zsign == 1 || zsign == -1);
    let delta = |i: u32| -> Rat {
        let mut num = sign as i64;
        if zsign == -1 && i % 2 == 1 {
            num = -num;
        }
        Rat::new(num, i as i64)
    };
    let mut out = LaurentPoly::zero();
    for (mono, coeff) in p.terms() {
        let mut fixed: Vec<(VarRef, u32)> = Vec::new();
        let mut moving: Vec<(u32, u32)> = Vec::new();
        for (v, e) in mono.iter() {
            if v.bank == bank {
                moving.push((v.index, e));
            } else {
                fixed.push((v, e));
            }
        }
        // Each state is (z power, extra bank-variable factors, coefficient).
        let mut states: Vec<(i64, Vec<(VarRef, u32)>, Rat)> =
            vec![(0, Vec::new(), coeff.clone())];
        for (i, e) in moving {
            let d = delta(i);
            let mut next = Vec::with_capacity(states.len() * (e as usize + 1));
            for (zp, pairs, c) in &states {
                let mut dk = Rat::ONE;
                for k in 0..=e {
                    let c2 = &(c * &binomial(e, k)) * &dk;
                    let mut pairs2 = pairs.clone();
                    if e - k > 0 {
                        pairs2.push((VarRef::new(bank, i), e - k));
                    }
                    next.push((zp - (i as i64) * (k as i64), pairs2, c2));
                    if k < e {
                        dk = &dk * &d;
                    }
                }
            }
            states = next;
        }
        for (zp, pairs, c) in states {
            let mut all = fixed.clone();
            all.extend(pairs);
            let m = crate::monomial::Monomial::from_pairs(all);
            out.insert_add(zp, &Poly::term(m, c));
        }
    }
    out
}

/// The residue pairing: sum_j s_j(args) * [z^{-1-offset-j}] a, the z^{-1-offset}
/// coefficient of the product of `a` with the series sum_j s_j(args) z^j. The
/// sum is finite because `a` has a lowest z power.
pub fn laurent_mul_residue(a: &LaurentPoly, args: &crate::schur::ArgSpec, offset: i64) -> Poly {
    laurent_mul_residue_args(a, &args.resolve(), offset)
}

pub(crate) fn laurent_mul_residue_args(a: &LaurentPoly, args: &SchurArgs, offset: i64) -> Poly {
    let Some(min_pow) = a.min_pow() else {
        return Poly::zero();
    };
    let jmax = -1 - offset - min_pow;
    if jmax < 0 {
        return Poly::zero();
    }
    let seq = schur_sequence(args, jmax as usize);
    let mut acc = Poly::zero();
    for (j, s) in seq.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        if let Some(c) = a.get(-1 - offset - j as i64) {
            acc = acc.add(&s.mul(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: u32) -> Poly {
        Poly::var(VarRef::t(i))
    }

    fn tp(i: u32) -> Poly {
        Poly::var(VarRef::tp(i))
    }

    #[test]
    fn miwa_shift_square() {
        let p = t(1).pow(2);
        let got = miwa_shift(&p, Bank::T, -1, 1);
        let mut expect = LaurentPoly::from_poly(t(1).pow(2));
        expect = expect.add(&LaurentPoly::term(-1, t(1).scale(&Rat::from(-2))));
        expect = expect.add(&LaurentPoly::term(-2, Poly::one()));
        assert_eq!(got, expect);
    }

    #[test]
    fn miwa_shift_even_index_and_zsign() {
        // With sign=-1, zsign=-1: t1 -> t1 + z^{-1}, t2 -> t2 - z^{-2}/2.
        let got = miwa_shift(&t(1).mul(&t(2)), Bank::T, -1, -1);
        let mut expect = LaurentPoly::from_poly(t(1).mul(&t(2)));
        expect = expect.add(&LaurentPoly::term(-1, t(2)));
        expect = expect.add(&LaurentPoly::term(-2, t(1).scale(&Rat::new(-1, 2))));
        expect = expect.add(&LaurentPoly::term(-3, Poly::constant(Rat::new(-1, 2))));
        assert_eq!(got, expect);
    }

    #[test]
    fn miwa_shift_leaves_other_bank() {
        let got = miwa_shift(&t(1).mul(&tp(1)), Bank::T, -1, 1);
        let mut expect = LaurentPoly::from_poly(t(1).mul(&tp(1)));
        expect = expect.add(&LaurentPoly::term(-1, tp(1).neg()));
        assert_eq!(got, expect);
    }

    #[test]
    fn miwa_shift_constant_and_zero() {
        assert_eq!(
            miwa_shift(&Poly::one(), Bank::T, 1, 1),
            LaurentPoly::from_poly(Poly::one())
        );
        assert!(miwa_shift(&Poly::zero(), Bank::T, 1, 1).is_zero());
    }

    #[test]
    fn laurent_arithmetic() {
        let a = LaurentPoly::term(-1, Poly::one()).add(&LaurentPoly::from_poly(t(1)));
        let b = LaurentPoly::term(1, Poly::one()).add(&LaurentPoly::from_poly(t(1).neg()));
        let prod = a.mul(&b);
        // (z^{-1} + t1)(z - t1) = 1 - t1 z^{-1} + t1 z - t1^2
        let mut expect = LaurentPoly::from_poly(Poly::one().sub(&t(1).pow(2)));
        expect = expect.add(&LaurentPoly::term(-1, t(1).neg()));
        expect = expect.add(&LaurentPoly::term(1, t(1)));
        assert_eq!(prod, expect);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.shift_zpow(2).min_pow(), Some(1));
    }

    #[test]
    fn residue_pairing_golden() {
        // a = t1 z^{-2}, prefactor args x_i = t_i - t'_i, offset 0:
        // only j=1 contributes: s_1 * t1 = (t1 - t'1) t1.
        let a = LaurentPoly::term(-2, t(1));
        let args = crate::schur::ArgSpec::explicit(vec![t(1).sub(&tp(1))]);
        let got = laurent_mul_residue(&a, &args, 0);
        assert_eq!(got, t(1).pow(2).sub(&t(1).mul(&tp(1))));
    }

    #[test]
    fn residue_pairing_offset_and_empty() {
        let a = LaurentPoly::term(-2, t(1));
        let args = crate::schur::ArgSpec::explicit(vec![t(1)]);
        // offset 1: only j=0 contributes via z^{-2}: s_0 * t1.
        assert_eq!(laurent_mul_residue(&a, &args, 1), t(1));
        // offset 2: needs z^{-3} and below: nothing.
        assert!(laurent_mul_residue(&a, &args, 2).is_zero());
        assert!(laurent_mul_residue(&LaurentPoly::zero(), &args, 0).is_zero());
    }

    #[test]
    fn miwa_shift_matches_series_identity() {
        // s_j(t - [z^{-1}]) = s_j(t) - s_{j-1}(t) z^{-1}, because the
        // generating series picks up exactly the factor (1 - w/z).
        let s2 = t(2).add(&t(1).pow(2).scale(&Rat::new(1, 2)));
        let s3 = t(3).add(&t(1).mul(&t(2))).add(&t(1).pow(3).scale(&Rat::new(1, 6)));
        let shifted = miwa_shift(&s3, Bank::T, -1, 1);
        assert_eq!(shifted.coeff(0), s3);
        assert_eq!(shifted.coeff(-1), s2.neg());
        assert_eq!(shifted.get(-2), None);
        assert_eq!(shifted.get(-3), None);
        assert_eq!(shifted.max_pow(), Some(0));
    }
}
