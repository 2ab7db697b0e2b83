//! Verifiers for the bilinear identities and differential constraints that
//! characterize the tau functions built by this crate.
//!
//! Every check is exact. The bilinear residues are decided by the factored
//! row pairing of the `zerotest` module; when a check fails, the residual
//! polynomial is recomputed from the defining formal-residue formula and
//! attached to the report as a witness.

use crate::error::{Error, Result};
use crate::laurent::{laurent_mul_residue_args, miwa_shift};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::schur::{schur_sequence, SchurArgs};
use crate::vars::{Bank, VarRef};
use crate::zerotest::{pairing_vanishes, RowFamily};

/// Which identity a report speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// The plain bilinear residue identity satisfied by every tau function
    /// on the principal orbit.
    Kp,
    /// The conjugation-symmetric bilinear residue identity.
    Ckp,
    /// Invariance under the involution negating even-indexed times.
    IotaC,
    /// The n-reduced residue identity at shift p*n.
    Reduced { n: u32, p: u32 },
    /// The even-time Schur operator constraint, for one sign choice.
    SchurConstraint { positive: bool },
    /// Vanishing of the derivative with respect to one time variable.
    TimeIndep { index: u32 },
    /// The Kaup-Kupershmidt equation on u = 3 d^2 log tau at odd times.
    KaupKupershmidt,
    /// The KdV equation on u = 2 d^2 log tau at odd times.
    Kdv,
}

/// Sizes and truncation bounds recorded alongside a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckStats {
    pub tau_terms: usize,
    pub residual_terms: usize,
    /// Truncation bound of the finite sum behind the check: the largest
    /// prefactor index for residue identities, the largest operator index
    /// for the Schur constraint, zero where no truncation is involved.
    pub depth: i64,
}

/// Outcome of one identity check; `passed` holds exactly when `residual`
/// is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub identity: Identity,
    pub passed: bool,
    pub residual: Poly,
    pub stats: CheckStats,
}

impl CheckReport {
    fn new(identity: Identity, residual: Poly, tau: &Poly, depth: i64) -> CheckReport {
        CheckReport {
            identity,
            passed: residual.is_zero(),
            stats: CheckStats {
                tau_terms: tau.terms().len(),
                residual_terms: residual.terms().len(),
                depth,
            },
            residual,
        }
    }
}

fn ensure_plain_tau(tau: &Poly) -> Result<()> {
    if tau.is_zero() {
        return Err(Error::invalid("tau must be nonzero"));
    }
    if tau.uses_bank(Bank::TPrime) {
        return Err(Error::invalid(
            "tau must live in the t bank only; primed variables are reserved for the residue computation",
        ));
    }
    Ok(())
}

/// Truncation bound of the prefactor sum for a residue check at this offset.
fn residue_depth(tau: &Poly, offset: i64) -> i64 {
    (2 * tau.wdeg() as i64 - 1 - offset).max(0)
}

/// Prefactor arguments x_i = t_i - t'_i, enough of them for the given tau.
fn plain_prefactor_args(tau: &Poly) -> SchurArgs {
    let n = 2 * tau.wdeg();
    SchurArgs::Explicit(
        (1..=n as u32)
            .map(|i| Poly::var(VarRef::t(i)).sub(&Poly::var(VarRef::tp(i))))
            .collect(),
    )
}

/// Prefactor arguments x_i = t_i + (-1)^i t'_i.
fn symmetric_prefactor_args(tau: &Poly) -> SchurArgs {
    let n = 2 * tau.wdeg();
    SchurArgs::Explicit(
        (1..=n as u32)
            .map(|i| {
                let tp = Poly::var(VarRef::tp(i));
                let t = Poly::var(VarRef::t(i));
                if i % 2 == 0 {
                    t.add(&tp)
                } else {
                    t.sub(&tp)
                }
            })
            .collect(),
    )
}

/// The plain bilinear residue, straight from its defining formula:
/// Res_z tau(t - [z^{-1}]) tau(t' + [z^{-1}]) exp(sum (t_i - t'_i) z^i).
fn plain_residual_direct(tau: &Poly) -> Poly {
    let taup = tau.relabel_bank(Bank::T, Bank::TPrime);
    let a = miwa_shift(tau, Bank::T, -1, 1).mul(&miwa_shift(&taup, Bank::TPrime, 1, 1));
    laurent_mul_residue_args(&a, &plain_prefactor_args(tau), 0)
}

/// The conjugation-symmetric residue at shift `offset`:
/// Res_z z^offset tau(t - [z^{-1}]) tau(t' - [(-z)^{-1}]) exp(sum (t_i + (-1)^i t'_i) z^i).
fn symmetric_residual_direct(tau: &Poly, offset: i64) -> Poly {
    let taup = tau.relabel_bank(Bank::T, Bank::TPrime);
    let a = miwa_shift(tau, Bank::T, -1, 1).mul(&miwa_shift(&taup, Bank::TPrime, -1, -1));
    laurent_mul_residue_args(&a, &symmetric_prefactor_args(tau), offset)
}

/// Checks the plain bilinear residue identity.
pub fn verify_kp(tau: &Poly) -> Result<CheckReport> {
    ensure_plain_tau(tau)?;
    let x = RowFamily::primary(tau);
    let y = RowFamily::kp_dual(tau);
    let residual = if pairing_vanishes(&x, &y, 0, false, false) {
        Poly::zero()
    } else {
        let witness = plain_residual_direct(tau);
        if witness.is_zero() {
            return Err(Error::internal("pairing verdict contradicts the residue"));
        }
        witness
    };
    Ok(CheckReport::new(
        Identity::Kp,
        residual,
        tau,
        residue_depth(tau, 0),
    ))
}

/// Checks conjugation invariance and then the symmetric bilinear residue
/// identity. A conjugation defect short-circuits: the report carries the
/// defect tau - iota_c(tau) as its residual, and the bilinear part is not
/// run (so symbolic constants in the primed bank are fine up to that point).
pub fn verify_ckp(tau: &Poly) -> Result<CheckReport> {
    if tau.is_zero() {
        return Err(Error::invalid("tau must be nonzero"));
    }
    let defect = tau.sub(&tau.iota_c(Bank::T));
    if !defect.is_zero() {
        return Ok(CheckReport::new(Identity::IotaC, defect, tau, 0));
    }
    ensure_plain_tau(tau)?;
    let fam = RowFamily::primary(tau);
    let residual = if pairing_vanishes(&fam, &fam, 0, true, true) {
        Poly::zero()
    } else {
        let witness = symmetric_residual_direct(tau, 0);
        if witness.is_zero() {
            return Err(Error::internal("pairing verdict contradicts the residue"));
        }
        witness
    };
    Ok(CheckReport::new(
        Identity::Ckp,
        residual,
        tau,
        residue_depth(tau, 0),
    ))
}

/// Checks the n-reduced residue identities for p = 0, ..., p_max; the p = 0
/// report coincides with the bilinear part of `verify_ckp`.
pub fn verify_reduced(tau: &Poly, n: u32, p_max: u32) -> Result<Vec<CheckReport>> {
    if n < 2 {
        return Err(Error::invalid("reduction order must be at least 2"));
    }
    ensure_plain_tau(tau)?;
    let fam = RowFamily::primary(tau);
    let mut reports = Vec::with_capacity(p_max as usize + 1);
    for p in 0..=p_max {
        let offset = p as i64 * n as i64;
        let residual = if pairing_vanishes(&fam, &fam, offset, true, true) {
            Poly::zero()
        } else {
            let witness = symmetric_residual_direct(tau, offset);
            if witness.is_zero() {
                return Err(Error::internal("pairing verdict contradicts the residue"));
            }
            witness
        };
        reports.push(CheckReport::new(
            Identity::Reduced { n, p },
            residual,
            tau,
            residue_depth(tau, offset),
        ));
    }
    Ok(reports)
}

/// Checks d tau / d t_{pn} = 0 for every multiple pn up to the weighted
/// degree of tau. An n-reduced polynomial tau function passes all of them.
pub fn verify_time_independence(tau: &Poly, n: u32) -> Result<Vec<CheckReport>> {
    if n < 2 {
        return Err(Error::invalid("reduction order must be at least 2"));
    }
    let d = tau.wdeg() as u32;
    let mut reports = Vec::new();
    let mut index = n;
    while index <= d {
        let residual = tau.partial_derivative(VarRef::t(index));
        reports.push(CheckReport::new(
            Identity::TimeIndep { index },
            residual,
            tau,
            0,
        ));
        index += n;
    }
    Ok(reports)
}

/// Applies the operator s_{k}(op_sign * d~_e) to tau, where the j-th slot of
/// d~_e is (1/j) d/dt_{2j}. The operator polynomial is expanded over a
/// stand-in variable tuple and each of its monomials is replayed as a
/// product of scaled derivatives.
fn apply_even_schur_operator(tau: &Poly, k: usize, op_sign: i64) -> Poly {
    let expansion = schur_sequence(&SchurArgs::plain(Bank::T), k)
        .pop()
        .expect("sequence is nonempty");
    let mut acc = Poly::zero();
    for (mon, coeff) in expansion.terms() {
        let mut term = tau.clone();
        let mut factor = coeff.clone();
        for (v, e) in mon.iter() {
            factor = &factor * &Rat::new(op_sign, v.index as i64).pow(e as i32);
            for _ in 0..e {
                if term.is_zero() {
                    break;
                }
                term = term.partial_derivative(VarRef::t(2 * v.index));
            }
        }
        if !term.is_zero() {
            acc = acc.add(&term.scale(&factor));
        }
    }
    acc
}

/// Checks the even-time Schur operator constraint
/// sum_{k >= 0} s_k(sign * 2 t_e) s_{k+1}(-sign * d~_e) tau = 0
/// for both signs; the returned pair is (sign +, sign -). The k-sum is
/// finite: the operator s_{k+1} lowers the weighted degree by 2(k+1).
pub fn verify_schur_constraint(tau: &Poly) -> (CheckReport, CheckReport) {
    let kmax = (tau.wdeg() / 2) as usize;
    let mut reports = Vec::with_capacity(2);
    for positive in [true, false] {
        let sign = if positive { 1 } else { -1 };
        let factors = schur_sequence(
            &SchurArgs::EvenScaled {
                bank: Bank::T,
                scale: Rat::from(2 * sign),
            },
            kmax,
        );
        let mut residual = Poly::zero();
        for (k, factor) in factors.iter().enumerate() {
            let applied = apply_even_schur_operator(tau, k + 1, -sign);
            if !applied.is_zero() {
                residual = residual.add(&factor.mul(&applied));
            }
        }
        reports.push(CheckReport::new(
            Identity::SchurConstraint { positive },
            residual,
            tau,
            kmax as i64,
        ));
    }
    let minus = reports.pop().expect("two reports");
    let plus = reports.pop().expect("two reports");
    (plus, minus)
}
