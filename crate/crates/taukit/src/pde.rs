//! Scalar PDE checks for the reduced hierarchies: u = factor * d^2 log tau
//! restricted to odd times, the Kaup-Kupershmidt equation for the
//! 3-reduction, and the KdV equation for the 2-reduction. All comparisons
//! clear denominators and test polynomial numerators exactly.

use crate::bilinear::{CheckReport, CheckStats, Identity};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::tau::{Family, TauPoly};
use crate::vars::VarRef;

/// A polynomial with every even-indexed time set to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddRestriction {
    poly: Poly,
}

impl OddRestriction {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }
}

/// Sets every even-indexed variable to zero.
pub fn restrict_odd(tau: &Poly) -> OddRestriction {
    OddRestriction {
        poly: tau.restrict_zero(|v| v.index % 2 == 0),
    }
}

/// u = factor * d^2 log tau / dt1^2 = factor * (tau tau_11 - tau_1^2) / tau^2.
pub fn u_from_tau(tau_o: &OddRestriction, factor: &Rat) -> Result<RatFunc> {
    let tau = &tau_o.poly;
    if tau.is_zero() {
        return Err(Error::invalid("tau restricts to zero on odd times"));
    }
    let x = VarRef::t(1);
    let tau1 = tau.partial_derivative(x);
    let num = tau
        .mul(&tau1.partial_derivative(x))
        .sub(&tau1.mul(&tau1))
        .scale(factor);
    RatFunc::new(num, tau.mul(tau))
}

/// num / tau^exp with the base tau implicit; keeps the denominator a single
/// power so repeated derivatives stay small, unlike the generic quotient
/// rule whose denominator squares each time.
#[derive(Clone)]
struct PowerQuotient {
    num: Poly,
    exp: u32,
}

impl PowerQuotient {
    fn derivative(&self, tau: &Poly, v: VarRef) -> PowerQuotient {
        let num = self
            .num
            .partial_derivative(v)
            .mul(tau)
            .sub(&self.num.mul(&tau.partial_derivative(v)).scale(&Rat::from(self.exp as i64)));
        PowerQuotient {
            num,
            exp: self.exp + 1,
        }
    }

    fn mul(&self, other: &PowerQuotient) -> PowerQuotient {
        PowerQuotient {
            num: self.num.mul(&other.num),
            exp: self.exp + other.exp,
        }
    }

    fn scaled_sum(terms: &[(i64, &PowerQuotient)]) -> PowerQuotient {
        let exp = terms.iter().map(|(_, q)| q.exp).max().unwrap_or(0);
        let mut num = Poly::zero();
        for (c, q) in terms {
            debug_assert!(q.exp == exp, "mixed exponents need lifting");
            num = num.add(&q.num.scale(&Rat::from(*c)));
        }
        PowerQuotient { num, exp }
    }

    /// self - other as a single numerator over tau^max(exp).
    fn sub_cleared(&self, other: &PowerQuotient, tau: &Poly) -> Poly {
        let exp = self.exp.max(other.exp);
        let lift = |q: &PowerQuotient| {
            let mut p = q.num.clone();
            for _ in q.exp..exp {
                p = p.mul(tau);
            }
            p
        };
        lift(self).sub(&lift(other))
    }
}

fn gate_family(tau: &TauPoly) -> Result<()> {
    if tau.family == Family::Bkp {
        return Err(Error::invalid(
            "BKP tau functions already live on odd times with their own hierarchy; no log-derivative check applies",
        ));
    }
    Ok(())
}

fn report(identity: Identity, residual: Poly, tau_o: &Poly) -> CheckReport {
    CheckReport {
        identity,
        passed: residual.is_zero(),
        stats: CheckStats {
            tau_terms: tau_o.terms().len(),
            residual_terms: residual.terms().len(),
            depth: 0,
        },
        residual,
    }
}

/// Checks the Kaup-Kupershmidt equation
/// du/dt5 = -(1/18)(10 u^2 u_x + 25 u_x u_xx + 10 u u_xxx + 2 u_xxxxx)
/// on u = 3 d^2 log tau at odd times, by clearing tau powers and comparing
/// numerators; the residual reported is that numerator difference.
pub fn verify_kk(tau: &TauPoly) -> Result<CheckReport> {
    gate_family(tau)?;
    let tau_o = restrict_odd(&tau.poly);
    let t = &tau_o.poly;
    if t.is_zero() {
        return Err(Error::invalid("tau restricts to zero on odd times"));
    }
    let x = VarRef::t(1);
    let tau1 = t.partial_derivative(x);
    let u = PowerQuotient {
        num: t
            .mul(&tau1.partial_derivative(x))
            .sub(&tau1.mul(&tau1))
            .scale(&Rat::from(3)),
        exp: 2,
    };
    let ux = u.derivative(t, x);
    let uxx = ux.derivative(t, x);
    let uxxx = uxx.derivative(t, x);
    let ux5 = uxxx.derivative(t, x).derivative(t, x);
    let lhs = u.derivative(t, VarRef::t(5));
    let rhs_raw = PowerQuotient::scaled_sum(&[
        (10, &u.mul(&u).mul(&ux)),
        (25, &ux.mul(&uxx)),
        (10, &u.mul(&uxxx)),
        (2, &ux5),
    ]);
    let rhs = PowerQuotient {
        num: rhs_raw.num.scale(&Rat::new(-1, 18)),
        exp: rhs_raw.exp,
    };
    let residual = lhs.sub_cleared(&rhs, t);
    Ok(report(Identity::KaupKupershmidt, residual, t))
}

/// Checks the KdV equation du/dt3 = (1/4)(u_xxx + 6 u u_x) on
/// u = 2 d^2 log tau at odd times, with the same numerator-clearing scheme
/// as the Kaup-Kupershmidt check.
pub fn verify_kdv(tau: &TauPoly) -> Result<CheckReport> {
    gate_family(tau)?;
    let tau_o = restrict_odd(&tau.poly);
    let t = &tau_o.poly;
    if t.is_zero() {
        return Err(Error::invalid("tau restricts to zero on odd times"));
    }
    let x = VarRef::t(1);
    let tau1 = t.partial_derivative(x);
    let u = PowerQuotient {
        num: t
            .mul(&tau1.partial_derivative(x))
            .sub(&tau1.mul(&tau1))
            .scale(&Rat::from(2)),
        exp: 2,
    };
    let ux = u.derivative(t, x);
    let uxxx = ux.derivative(t, x).derivative(t, x);
    let six_uux = u.mul(&ux);
    let rhs_raw = PowerQuotient::scaled_sum(&[(1, &uxxx), (6, &six_uux)]);
    let rhs = PowerQuotient {
        num: rhs_raw.num.scale(&Rat::new(1, 4)),
        exp: rhs_raw.exp,
    };
    let lhs = u.derivative(t, VarRef::t(3));
    let residual = lhs.sub_cleared(&rhs, t);
    Ok(report(Identity::Kdv, residual, t))
}
