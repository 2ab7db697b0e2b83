//! Wave functions of the constructed tau functions, stripped of the
//! exponential prefactor, by two routes: the Miwa-shift quotient and the
//! determinant formulas that build the numerator directly from the shape
//! data. The two routes agree up to one nonzero rational scalar, and
//! `cross_check_wave` tests that agreement exactly.

use crate::error::{Error, Result};
use crate::laurent::{miwa_shift, LaurentPoly};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::schur::{chi_args, schur_sequence, SchurArgs};
use crate::tau::{ConstMatrix, Constants, Family, TauLabel, TauPoly};
use crate::vars::Bank;
use crate::{linalg, FrobeniusCoords, Partition};

/// A wave function with the unit factor exp(sum t_n z^n) factored out:
/// numerator / denominator, where the numerator is a Laurent polynomial in
/// z^{-1} and the denominator is the tau function itself. The z^0
/// coefficient of the numerator equals the denominator (the symbol is
/// monic), so letting z -> infinity recovers 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveSymbol {
    pub numerator: LaurentPoly,
    pub denominator: Poly,
    pub stripped: bool,
}

impl WaveSymbol {
    fn new(numerator: LaurentPoly, denominator: Poly) -> WaveSymbol {
        WaveSymbol {
            numerator,
            denominator,
            stripped: true,
        }
    }

    /// Monicity: the z^0 coefficient of the numerator is the denominator.
    pub fn is_monic(&self) -> bool {
        self.numerator.coeff(0) == self.denominator
    }
}

/// Which determinant route built a wave numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveRoute {
    Jt,
    Giambelli,
}

/// Outcome of comparing a determinant-route numerator against the
/// Miwa-shift route: `scalar` is the factor with det = scalar * shift when
/// the routes agree, and `difference` is the witness det - scalar * shift
/// (with scalar 1 when no scalar fits) otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveCheck {
    pub route: WaveRoute,
    pub passed: bool,
    pub scalar: Option<Rat>,
    pub difference: LaurentPoly,
}

/// The wave symbol from the Miwa-shift route: tau(t - [z^{-1}]) / tau(t).
pub fn p_symbol(tau: &Poly) -> Result<WaveSymbol> {
    if tau.is_zero() {
        return Err(Error::invalid("tau must be nonzero"));
    }
    Ok(WaveSymbol::new(
        miwa_shift(tau, Bank::T, -1, 1),
        tau.clone(),
    ))
}

fn shifted_args(c: &ConstMatrix, col: usize) -> SchurArgs {
    let shifts = c
        .cols()
        .get(col)
        .map(|col| col.iter().map(|r| Poly::constant(r.clone())).collect())
        .unwrap_or_default();
    SchurArgs::shifted(Bank::T, shifts)
}

/// The wave numerator as the (l+1) x (l+1) determinant whose first row is
/// the stripped powers z^0, z^{-1}, ..., z^{-l} and whose row for part i
/// holds s_{lambda_i - i + j - 1}(t + c_i) across columns j. Expanding
/// along the first row, the z^0 cofactor is the tau determinant itself, so
/// the symbol is monic.
pub fn wave_jt_det(lambda: &Partition, c: &ConstMatrix) -> Result<WaveSymbol> {
    let tau = crate::tau::tau_kp_jt(lambda, c)?;
    let ell = lambda.len();
    if ell == 0 {
        return Ok(WaveSymbol::new(LaurentPoly::from_poly(Poly::one()), tau.poly));
    }
    // rows[r][j] = s_{lambda_r - r + j - 1}(t + c_r) for columns j = 1..l+1.
    let rows: Vec<Vec<Poly>> = (1..=ell)
        .map(|r| {
            let args = shifted_args(c, r - 1);
            let top = lambda.part(r) as i64 - r as i64 + ell as i64;
            let seq = schur_sequence(&args, top.max(0) as usize);
            (1..=ell + 1)
                .map(|j| {
                    let idx = lambda.part(r) as i64 - r as i64 + j as i64 - 1;
                    if idx < 0 {
                        Poly::zero()
                    } else {
                        seq[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    let mut numerator = LaurentPoly::zero();
    for jx in 0..=ell {
        let minor: Vec<Vec<Poly>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != jx)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let mut cof = linalg::det(&minor).expect("square by construction");
        if jx % 2 == 1 {
            cof = cof.neg();
        }
        numerator = numerator.add(&LaurentPoly::term(-(jx as i64), cof));
    }
    Ok(WaveSymbol::new(numerator, tau.poly))
}

/// The wave numerator as the (k+1) x (k+1) determinant with corner 1, first
/// row chi(0, b_j) at [z^{-1}] and t + d_j, first column s_{a_i}(t + c_i),
/// and the tau function's chi matrix as the body. Evaluating one argument
/// set at [z^{-1}] turns s_k into z^{-k}, so the first-row entries are
/// (-1)^{b_j} sum_n z^{-n-1} s_{b_j - n}(-(t + d_j)).
pub fn wave_giambelli_det(
    f: &FrobeniusCoords,
    c: &ConstMatrix,
    d: &ConstMatrix,
) -> Result<WaveSymbol> {
    let tau = crate::tau::tau_kp_giambelli(f, c, d)?;
    let k = f.rank();
    if k == 0 {
        return Ok(WaveSymbol::new(LaurentPoly::from_poly(Poly::one()), tau.poly));
    }
    let c_args: Vec<SchurArgs> = (0..k).map(|i| shifted_args(c, i)).collect();
    let d_args: Vec<SchurArgs> = (0..k).map(|j| shifted_args(d, j)).collect();
    let first_col: Vec<Poly> = (0..k)
        .map(|i| {
            let a = f.arms()[i] as usize;
            schur_sequence(&c_args[i], a)[a].clone()
        })
        .collect();
    let body: Vec<Vec<Poly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| chi_args(f.arms()[i], f.legs()[j], &c_args[i], &d_args[j]))
                .collect()
        })
        .collect();
    let first_row: Vec<LaurentPoly> = (0..k)
        .map(|j| {
            let b = f.legs()[j] as usize;
            let neg = schur_sequence(&d_args[j].negated(), b);
            let mut entry = LaurentPoly::zero();
            for n in 0..=b {
                let mut p = neg[b - n].clone();
                if b % 2 == 1 {
                    p = p.neg();
                }
                entry = entry.add(&LaurentPoly::term(-(n as i64) - 1, p));
            }
            entry
        })
        .collect();
    // Cofactor expansion along the first row of the bordered matrix; the
    // corner 1 contributes the tau determinant at z^0.
    let mut numerator = LaurentPoly::from_poly(tau.poly.clone());
    for j in 0..k {
        let minor: Vec<Vec<Poly>> = (0..k)
            .map(|i| {
                let mut row = Vec::with_capacity(k);
                row.push(first_col[i].clone());
                for jj in 0..k {
                    if jj != j {
                        row.push(body[i][jj].clone());
                    }
                }
                row
            })
            .collect();
        let mut cof = linalg::det(&minor).expect("square by construction");
        if j % 2 == 0 {
            cof = cof.neg();
        }
        numerator = numerator.add(&first_row[j].mul_poly(&cof));
    }
    Ok(WaveSymbol::new(numerator, tau.poly))
}

/// The ratio r with candidate = r * reference, if one exists.
fn laurent_ratio(reference: &LaurentPoly, candidate: &LaurentPoly) -> Option<Rat> {
    let Some(kmin) = reference.min_pow() else {
        return candidate.is_zero().then_some(Rat::ONE);
    };
    let r = reference.coeff(kmin).proportionality(&candidate.coeff(kmin))?;
    (*candidate == reference.scale(&r)).then_some(r)
}

/// Rebuilds the determinant-route numerator from the tau function's shape
/// data and compares it exactly against the Miwa-shift route.
pub fn cross_check_wave(tau: &TauPoly, route: WaveRoute) -> Result<WaveCheck> {
    let det = match (route, &tau.label, &tau.constants) {
        (WaveRoute::Jt, TauLabel::Parts(lambda), Constants::Matrix(c)) => {
            if tau.family != Family::KpJt {
                return Err(Error::invalid("tau was not built by the Jacobi-Trudi route"));
            }
            wave_jt_det(lambda, c)?
        }
        (WaveRoute::Giambelli, TauLabel::Frobenius(f), Constants::Pair(c, d)) => {
            if tau.family != Family::KpGiambelli {
                return Err(Error::invalid("tau was not built by the Giambelli route"));
            }
            wave_giambelli_det(f, c, d)?
        }
        _ => {
            return Err(Error::invalid(
                "route does not match the constructor that built this tau",
            ))
        }
    };
    let expected = miwa_shift(&tau.poly, Bank::T, -1, 1);
    match laurent_ratio(&expected, &det.numerator) {
        Some(r) if !r.is_zero() => Ok(WaveCheck {
            route,
            passed: true,
            scalar: Some(r),
            difference: LaurentPoly::zero(),
        }),
        _ => Ok(WaveCheck {
            route,
            passed: false,
            scalar: None,
            difference: det.numerator.sub(&expected),
        }),
    }
}
