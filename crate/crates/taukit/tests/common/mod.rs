//! Helpers shared by the integration suites: plain Schur construction,
//! seeded constant shapes, and brute-force oracles kept independent of the
//! library's own evaluation routes.

#![allow(dead_code)]

use taukit::laurent::LaurentPoly;
use taukit::partitions::{FrobeniusCoords, Partition};
use taukit::schur::ArgSpec;
use taukit::seeds::gen_constants;
use taukit::tau::ConstMatrix;
use taukit::vars::VarRef;
use taukit::{Monomial, Poly, Rat, SeedSpec};

pub fn parts(p: &[u32]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

pub fn schur(p: &[u32]) -> Poly {
    taukit::schur::schur_jt(&parts(p), &ArgSpec::t())
}

pub fn seeded(seed: u64, heights: &[usize], bound: u32) -> ConstMatrix {
    if heights.iter().all(|&h| h == 0) {
        return ConstMatrix::zero();
    }
    gen_constants(&SeedSpec {
        seed,
        heights: heights.iter().map(|&h| h as u32).collect(),
        bound,
    })
    .unwrap()
}

/// Column heights read by the Jacobi-Trudi determinant: column j (1-based)
/// shifts rows up to index lambda_j + l - j.
pub fn jt_heights(lambda: &Partition) -> Vec<usize> {
    let ell = lambda.len();
    (1..=ell)
        .map(|j| (lambda.part(j) as usize + ell) - j)
        .collect()
}

/// Column heights read by the Giambelli determinant: row constants up to
/// a_i + b_1 + 1, column constants up to b_j.
pub fn giambelli_heights(f: &FrobeniusCoords) -> (Vec<usize>, Vec<usize>) {
    let b1 = f.legs().first().copied().unwrap_or(0) as usize;
    let c = f.arms().iter().map(|&a| a as usize + b1 + 1).collect();
    let d = f.legs().iter().map(|&b| b as usize).collect();
    (c, d)
}

/// Column heights read by the symmetric hook determinant: column j up to
/// a_j + a_1 + 1.
pub fn ckp_heights(a: &[u32]) -> Vec<usize> {
    let a1 = a.first().copied().unwrap_or(0) as usize;
    a.iter().map(|&aj| aj as usize + a1 + 1).collect()
}

fn mul_series(a: &[Poly], b: &[Poly], len: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); len];
    for (i, pa) in a.iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (j, pb) in b.iter().enumerate() {
            if i + j >= len || pb.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&pa.mul(pb));
        }
    }
    out
}

/// Coefficients of exp(t1 z + t2 z^2 + ... + t_n z^n) through z^n, computed
/// by raw series exponentiation: sum over k of S^k / k! with S the argument
/// series, each power built by convolution. Shares nothing with the
/// library's generating-function recurrences.
pub fn truncated_exp_series(n: usize) -> Vec<Poly> {
    let len = n + 1;
    let mut arg = vec![Poly::zero(); len];
    for i in 1..=n {
        arg[i] = Poly::from_terms(vec![(
            Monomial::from_pairs([(VarRef::t(i as u32), 1)]),
            Rat::ONE,
        )]);
    }
    let mut acc = vec![Poly::zero(); len];
    acc[0] = Poly::one();
    let mut power = acc.clone();
    for k in 1..=n {
        power = mul_series(&power, &arg, len);
        let inv_k = Rat::new(1, k as i64);
        for (slot, p) in acc.iter_mut().zip(&power) {
            *slot = slot.add(&p.scale(&inv_k));
        }
        power = power.iter().map(|p| p.scale(&inv_k)).collect();
    }
    acc
}

/// Residue by full multiplication: expand the prefactor series far enough,
/// take the complete Laurent product, and read one coefficient.
pub fn brute_force_residue(a: &LaurentPoly, args: &ArgSpec, offset: i64) -> Poly {
    let Some(min_pow) = a.min_pow() else {
        return Poly::zero();
    };
    let jmax = -1 - offset - min_pow;
    let mut series = LaurentPoly::zero();
    for j in 0..=jmax.max(0) {
        series = series.add(&LaurentPoly::term(
            j,
            taukit::schur::elementary_schur(j, args),
        ));
    }
    a.mul(&series).coeff(-1 - offset)
}

/// A deterministic small Laurent polynomial: six powers of z from -4 to 1,
/// each carrying a seeded combination of fixed monomials.
pub fn seeded_laurent(seed: u64) -> LaurentPoly {
    let basis: Vec<Monomial> = vec![
        Monomial::one(),
        Monomial::from_pairs([(VarRef::t(1), 1)]),
        Monomial::from_pairs([(VarRef::t(2), 1)]),
        Monomial::from_pairs([(VarRef::t(1), 2)]),
        Monomial::from_pairs([(VarRef::t(3), 1)]),
        Monomial::from_pairs([(VarRef::t(1), 1), (VarRef::t(2), 1)]),
    ];
    let m = seeded(seed, &[6, 6, 6, 6, 6, 6], 7);
    let mut out = LaurentPoly::zero();
    for (col, column) in m.cols().iter().enumerate() {
        let poly = Poly::from_terms(
            column
                .iter()
                .zip(&basis)
                .map(|(c, mono)| (mono.clone(), c.clone()))
                .collect(),
        );
        out = out.add(&LaurentPoly::term(col as i64 - 4, poly));
    }
    out
}

/// Substitutes a polynomial for one variable, exactly.
pub fn substitute(p: &Poly, var: VarRef, value: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (mono, coeff) in p.terms() {
        let mut exp = 0;
        let rest: Vec<(VarRef, u32)> = mono
            .iter()
            .filter(|&(v, e)| {
                if v == var {
                    exp = e;
                    false
                } else {
                    true
                }
            })
            .collect();
        let base = Poly::from_terms(vec![(Monomial::from_pairs(rest), coeff.clone())]);
        out = out.add(&if exp == 0 { base } else { base.mul(&value.pow(exp)) });
    }
    out
}
