//! Deterministic LaTeX rendering of polynomials.
//!
//! Terms appear in canonical order, joined by ` + ` or ` - `. Coefficient
//! magnitudes of one are dropped in front of variables, fractions render as
//! `\frac{p}{q}`, variables as `t_{i}` (second bank `t'_{i}`), and powers as
//! `^{e}`.

use std::fmt::Write;

use crate::poly::Poly;
use crate::rat::Rat;
use crate::vars::Bank;

fn push_magnitude(out: &mut String, r: &Rat) {
    let r = r.abs();
    if r.is_integer() {
        write!(out, "{}", r.numer_big()).unwrap();
    } else {
        write!(out, "\\frac{{{}}}{{{}}}", r.numer_big(), r.denom_big()).unwrap();
    }
}

pub fn export_latex(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (mono, coeff)) in p.terms().iter().enumerate() {
        if i == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if coeff.is_negative() { " - " } else { " + " });
        }
        let magnitude = coeff.abs();
        if !magnitude.is_one() || mono.is_one() {
            push_magnitude(&mut out, coeff);
        }
        for (var, exp) in mono.iter() {
            let name = match var.bank {
                Bank::T => "t",
                Bank::TPrime => "t'",
            };
            write!(&mut out, "{}_{{{}}}", name, var.index).unwrap();
            if exp > 1 {
                write!(&mut out, "^{{{exp}}}").unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    
    use crate::tau::{tau_ckp, ConstMatrix};
    use crate::vars::VarRef;
    use crate::Monomial;

    fn schur(parts: &[u32]) -> Poly {
        let lambda = Partition::new(parts.to_vec()).unwrap();
        crate::schur::schur_jt(&lambda, &crate::schur::ArgSpec::bank(Bank::T))
    }

    #[test]
    fn renders_the_frozen_examples() {
        assert_eq!(export_latex(&schur(&[1])), "t_{1}");
        assert_eq!(
            export_latex(&schur(&[1, 1])),
            "\\frac{1}{2}t_{1}^{2} - t_{2}"
        );
        let tau = tau_ckp(&[1, 0], &ConstMatrix::zero()).unwrap();
        assert_eq!(
            export_latex(&tau.poly),
            "\\frac{1}{12}t_{1}^{4} + t_{2}^{2} - t_{1}t_{3}"
        );
    }

    #[test]
    fn renders_edge_shapes() {
        assert_eq!(export_latex(&Poly::zero()), "0");
        assert_eq!(export_latex(&Poly::constant(Rat::new(-3, 7))), "-\\frac{3}{7}");
        assert_eq!(export_latex(&Poly::constant(Rat::new(4, 1))), "4");

        let p = Poly::from_terms(vec![
            (
                Monomial::from_pairs([(VarRef::t(2), 3), (VarRef::tp(1), 1)]),
                Rat::new(-5, 1),
            ),
            (Monomial::one(), Rat::new(1, 2)),
        ]);
        assert_eq!(export_latex(&p), "-5t_{2}^{3}t'_{1} + \\frac{1}{2}");

        let neg_lead = schur(&[1]).neg();
        assert_eq!(export_latex(&neg_lead), "-t_{1}");
    }
}
