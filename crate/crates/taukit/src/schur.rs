//! Elementary Schur polynomials with decorated arguments, Jacobi-Trudi and
//! Giambelli determinants, and the two-argument kernels chi and chibar that
//! the tau-function matrices are built from.

use crate::error::{Error, Result};
use crate::linalg;
use crate::partitions::Partition;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::vars::{Bank, VarRef};

/// Argument decoration for an elementary Schur polynomial: a variable bank
/// with optional sign, per-index shifts, and even-index scaling, or a fully
/// explicit argument list. Constructed through the builder methods, so the
/// bank/explicit alternatives stay mutually exclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgSpec {
    bank: Option<Bank>,
    sign: i32,
    shift: Vec<Rat>,
    scale: Rat,
    explicit_args: Option<Vec<Poly>>,
}

impl ArgSpec {
    /// Arguments x_i = t_i drawn from a bank.
    pub fn bank(bank: Bank) -> ArgSpec {
        ArgSpec {
            bank: Some(bank),
            sign: 1,
            shift: Vec::new(),
            scale: Rat::ONE,
            explicit_args: None,
        }
    }

    /// The plain arguments (t1, t2, ...).
    pub fn t() -> ArgSpec {
        ArgSpec::bank(Bank::T)
    }

    /// The plain arguments (t'1, t'2, ...).
    pub fn t_prime() -> ArgSpec {
        ArgSpec::bank(Bank::TPrime)
    }

    /// Fully explicit arguments; indices past the end resolve to zero.
    pub fn explicit(args: Vec<Poly>) -> ArgSpec {
        ArgSpec {
            bank: None,
            sign: 1,
            shift: Vec::new(),
            scale: Rat::ONE,
            explicit_args: Some(args),
        }
    }

    /// Flips the sign of every argument.
    pub fn negated(mut self) -> ArgSpec {
        self.sign = -self.sign;
        self
    }

    /// Adds rational shifts: x_i = t_i + shift[i-1] (zero past the end).
    /// Only meaningful for bank arguments.
    pub fn with_shift(mut self, shift: Vec<Rat>) -> ArgSpec {
        assert!(self.bank.is_some(), "shift applies to bank arguments");
        self.shift = shift;
        self
    }

    /// Selects the even-index slice scaled by a factor: x_i = scale * t_{2i}.
    /// Only meaningful for bank arguments; replaces any shift.
    pub fn even_scaled(mut self, scale: Rat) -> ArgSpec {
        assert!(self.bank.is_some(), "scaling applies to bank arguments");
        assert!(self.shift.is_empty(), "shift and even scaling are exclusive");
        self.scale = scale;
        self
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }

    pub fn shift(&self) -> &[Rat] {
        &self.shift
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn bank_ref(&self) -> Option<Bank> {
        self.bank
    }

    pub fn explicit_ref(&self) -> Option<&[Poly]> {
        self.explicit_args.as_deref()
    }

    pub(crate) fn resolve(&self) -> SchurArgs {
        let negate = self.sign < 0;
        match (&self.bank, &self.explicit_args) {
            (Some(bank), None) => {
                if self.scale != Rat::ONE {
                    let scale = if negate { -&self.scale } else { self.scale.clone() };
                    SchurArgs::EvenScaled { bank: *bank, scale }
                } else {
                    SchurArgs::Shifted {
                        bank: *bank,
                        negate,
                        shifts: self.shift.iter().map(|r| Poly::constant(r.clone())).collect(),
                        odd_only: false,
                    }
                }
            }
            (None, Some(args)) => {
                let args = if negate {
                    args.iter().map(Poly::neg).collect()
                } else {
                    args.clone()
                };
                SchurArgs::Explicit(args)
            }
            _ => unreachable!("builder keeps bank and explicit args exclusive"),
        }
    }
}

/// Resolved argument tuples. `Shifted` covers t+c with optional overall
/// negation and, for odd-time hierarchies, zeroing of the even base
/// variables while keeping their shifts. `EvenScaled` is the slice
/// (scale*t2, scale*t4, ...). `Explicit` lists the arguments outright.
#[derive(Debug, Clone)]
pub(crate) enum SchurArgs {
    Shifted {
        bank: Bank,
        negate: bool,
        shifts: Vec<Poly>,
        odd_only: bool,
    },
    EvenScaled {
        bank: Bank,
        scale: Rat,
    },
    Explicit(Vec<Poly>),
}

impl SchurArgs {
    pub(crate) fn plain(bank: Bank) -> SchurArgs {
        SchurArgs::Shifted {
            bank,
            negate: false,
            shifts: Vec::new(),
            odd_only: false,
        }
    }

    pub(crate) fn shifted(bank: Bank, shifts: Vec<Poly>) -> SchurArgs {
        SchurArgs::Shifted {
            bank,
            negate: false,
            shifts,
            odd_only: false,
        }
    }

    pub(crate) fn shifted_odd(bank: Bank, shifts: Vec<Poly>) -> SchurArgs {
        SchurArgs::Shifted {
            bank,
            negate: false,
            shifts,
            odd_only: true,
        }
    }

    /// The i-th argument (1-based) as a polynomial.
    pub(crate) fn arg(&self, i: u32) -> Poly {
        match self {
            SchurArgs::Shifted {
                bank,
                negate,
                shifts,
                odd_only,
            } => {
                let mut x = if *odd_only && i % 2 == 0 {
                    Poly::zero()
                } else {
                    Poly::var(VarRef::new(*bank, i))
                };
                if let Some(s) = shifts.get(i as usize - 1) {
                    x = x.add(s);
                }
                if *negate {
                    x.neg()
                } else {
                    x
                }
            }
            SchurArgs::EvenScaled { bank, scale } => {
                Poly::var(VarRef::new(*bank, 2 * i)).scale(scale)
            }
            SchurArgs::Explicit(args) => {
                args.get(i as usize - 1).cloned().unwrap_or_else(Poly::zero)
            }
        }
    }

    pub(crate) fn negated(&self) -> SchurArgs {
        match self {
            SchurArgs::Shifted {
                bank,
                negate,
                shifts,
                odd_only,
            } => SchurArgs::Shifted {
                bank: *bank,
                negate: !negate,
                shifts: shifts.clone(),
                odd_only: *odd_only,
            },
            SchurArgs::EvenScaled { bank, scale } => SchurArgs::EvenScaled {
                bank: *bank,
                scale: -scale,
            },
            SchurArgs::Explicit(args) => SchurArgs::Explicit(args.iter().map(Poly::neg).collect()),
        }
    }
}

/// s_0..s_maxj for one argument tuple, via j*s_j = sum_{i=1..j} i*x_i*s_{j-i}.
pub(crate) fn schur_sequence(args: &SchurArgs, maxj: usize) -> Vec<Poly> {
    let xs: Vec<Poly> = (1..=maxj).map(|i| args.arg(i as u32)).collect();
    let mut seq = Vec::with_capacity(maxj + 1);
    seq.push(Poly::one());
    for j in 1..=maxj {
        let mut acc = Poly::zero();
        for i in 1..=j {
            if xs[i - 1].is_zero() {
                continue;
            }
            acc = acc.add(&xs[i - 1].scale(&Rat::from(i as i64)).mul(&seq[j - i]));
        }
        seq.push(acc.scale(&Rat::new(1, j as i64)));
    }
    seq
}

pub(crate) fn elementary_schur_args(j: i64, args: &SchurArgs) -> Poly {
    if j < 0 {
        return Poly::zero();
    }
    schur_sequence(args, j as usize).pop().expect("sequence is nonempty")
}

/// The elementary Schur polynomial s_j; zero for negative j.
pub fn elementary_schur(j: i64, args: &ArgSpec) -> Poly {
    elementary_schur_args(j, &args.resolve())
}

pub(crate) fn schur_jt_args(lambda: &Partition, args: &SchurArgs) -> Poly {
    let ell = lambda.len();
    if ell == 0 {
        return Poly::one();
    }
    let max_index = lambda.part(1) as usize + ell - 1;
    let seq = schur_sequence(args, max_index);
    let entry = |i: usize, j: usize| -> Poly {
        let idx = lambda.part(i) as i64 + j as i64 - i as i64;
        if idx < 0 {
            Poly::zero()
        } else {
            seq[idx as usize].clone()
        }
    };
    let m: Vec<Vec<Poly>> = (1..=ell)
        .map(|i| (1..=ell).map(|j| entry(i, j)).collect())
        .collect();
    linalg::det(&m).expect("square by construction")
}

/// The Schur polynomial s_lambda as the determinant det(s_{lambda_i+j-i}).
pub fn schur_jt(lambda: &Partition, args: &ArgSpec) -> Poly {
    schur_jt_args(lambda, &args.resolve())
}

pub(crate) fn chi_args(a: u32, b: u32, first: &SchurArgs, second: &SchurArgs) -> Poly {
    let first_seq = schur_sequence(first, (a + b + 1) as usize);
    let second_seq = schur_sequence(&second.negated(), b as usize);
    let mut acc = Poly::zero();
    for n in 0..=b {
        acc = acc.add(&first_seq[(n + a + 1) as usize].mul(&second_seq[(b - n) as usize]));
    }
    if b % 2 == 1 {
        acc = acc.neg();
    }
    acc
}

/// The hook kernel: chi(a,b)(x;y) = (-1)^b sum_{n=0..b} s_{n+a+1}(x) s_{b-n}(-y).
pub fn chi(a: u32, b: u32, first: &ArgSpec, second: &ArgSpec) -> Poly {
    chi_args(a, b, &first.resolve(), &second.resolve())
}

pub(crate) fn chibar_args(m: u32, n: u32, first: &SchurArgs, second: &SchurArgs) -> Poly {
    let first_seq = schur_sequence(first, (m + n) as usize);
    let second_seq = schur_sequence(&second.negated(), n as usize);
    let mut acc = first_seq[m as usize]
        .mul(&second_seq[n as usize])
        .scale(&Rat::new(1, 2));
    for k in 1..=n {
        acc = acc.add(&first_seq[(m + k) as usize].mul(&second_seq[(n - k) as usize]));
    }
    if n % 2 == 1 {
        acc = acc.neg();
    }
    acc
}

/// The neutral-hierarchy kernel:
/// chibar(M,N)(x;y) = (-1)^N (s_M(x)s_N(-y)/2 + sum_{k=1..N} s_{M+k}(x)s_{N-k}(-y)).
pub fn chibar(m: u32, n: u32, first: &ArgSpec, second: &ArgSpec) -> Poly {
    chibar_args(m, n, &first.resolve(), &second.resolve())
}

/// The Giambelli determinant det(chi(a_i, b_j)) over Frobenius coordinates,
/// with every entry sharing one argument spec for each slot.
pub fn schur_giambelli(lambda: &Partition, args: &ArgSpec) -> Result<Poly> {
    let f = lambda.to_frobenius();
    let resolved = args.resolve();
    let k = f.rank();
    let m: Vec<Vec<Poly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| chi_args(f.arms()[i], f.legs()[j], &resolved, &resolved))
                .collect()
        })
        .collect();
    linalg::det(&m).map_err(|e| Error::internal(format!("Giambelli determinant: {e}")))
}
