//! Tau-function constructors: Jacobi-Trudi and Giambelli determinants with
//! shifted constants for KP, constraint-resolved determinants for CKP and
//! its n-reduced variants, and Pfaffians for BKP.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg;
use crate::partitions::{check_reduced_admissible, FrobeniusCoords, Partition};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::schur::{chi_args, chibar_args, elementary_schur_args, schur_sequence, SchurArgs};
use crate::vars::{Bank, VarRef};

/// Which constructor produced a tau function. Verifiers use this to decide
/// which checks apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    KpJt,
    KpGiambelli,
    Ckp,
    CkpReduced(u32),
    Bkp,
}

impl Family {
    pub fn reduction(&self) -> Option<u32> {
        match self {
            Family::CkpReduced(n) => Some(*n),
            _ => None,
        }
    }
}

/// The shape parameter a tau function was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TauLabel {
    Parts(Partition),
    Frobenius(FrobeniusCoords),
}

/// Columns of rational constants; column j holds c_{1,j}, c_{2,j}, ...
/// Shape bounds depend on the constructor and are validated there: entries
/// a constructor would never read are rejected rather than ignored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstMatrix {
    cols: Vec<Vec<Rat>>,
}

impl ConstMatrix {
    pub fn new(cols: Vec<Vec<Rat>>) -> ConstMatrix {
        ConstMatrix { cols }
    }

    /// No columns: every constant is zero.
    pub fn zero() -> ConstMatrix {
        ConstMatrix::default()
    }

    pub fn cols(&self) -> &[Vec<Rat>] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(Rat::is_zero))
    }
}

/// The constants a tau function was built from, in the arrangement its
/// constructor uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constants {
    /// One matrix: Jacobi-Trudi columns, CKP columns, or BKP columns.
    Matrix(ConstMatrix),
    /// Giambelli row constants c and column constants d.
    Pair(ConstMatrix, ConstMatrix),
    /// Reduced CKP: one vector per congruence class of the arm values mod n.
    Classes(BTreeMap<u32, Vec<Rat>>),
}

/// A constructed tau function together with its provenance.
#[derive(Debug, Clone)]
pub struct TauPoly {
    pub family: Family,
    pub label: TauLabel,
    pub constants: Constants,
    pub poly: Poly,
}

fn rat_col_to_poly(col: &[Rat]) -> Vec<Poly> {
    col.iter().map(|r| Poly::constant(r.clone())).collect()
}

fn poly_cols(c: &ConstMatrix) -> Vec<Vec<Poly>> {
    c.cols().iter().map(|col| rat_col_to_poly(col)).collect()
}

fn cols_to_rat(cols: &[Vec<Poly>]) -> Result<ConstMatrix> {
    let mut out = Vec::with_capacity(cols.len());
    for col in cols {
        let mut rcol = Vec::with_capacity(col.len());
        for p in col {
            if p.num_terms() > 1 || p.terms().iter().any(|(m, _)| !m.is_one()) {
                return Err(Error::internal("non-constant entry in constant matrix"));
            }
            rcol.push(p.constant_term());
        }
        out.push(rcol);
    }
    Ok(ConstMatrix::new(out))
}

/// Sign flip on even-indexed entries (1-based), the action of the CKP
/// conjugation on a vector of constants.
fn iota_col(col: &[Poly]) -> Vec<Poly> {
    col.iter()
        .enumerate()
        .map(|(i, p)| if (i + 1) % 2 == 0 { p.neg() } else { p.clone() })
        .collect()
}

fn col_entry(cols: &[Vec<Poly>], col: usize, row1: usize) -> Poly {
    cols.get(col)
        .and_then(|c| c.get(row1 - 1))
        .cloned()
        .unwrap_or_else(Poly::zero)
}

fn set_col_entry(cols: &mut [Vec<Poly>], col: usize, row1: usize, value: Poly) {
    let c = &mut cols[col];
    if c.len() < row1 {
        c.resize(row1, Poly::zero());
    }
    c[row1 - 1] = value;
}

/// Symbolic constant columns: entry (i,j) becomes a fresh t'-variable,
/// numbered column-major (column 1 first, rows ascending).
pub fn symbolic_columns(heights: &[usize]) -> Vec<Vec<Poly>> {
    let mut next = 1u32;
    heights
        .iter()
        .map(|&h| {
            (0..h)
                .map(|_| {
                    let v = Poly::var(VarRef::tp(next));
                    next += 1;
                    v
                })
                .collect()
        })
        .collect()
}

fn validate_strictly_decreasing(a: &[u32]) -> Result<()> {
    if a.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::invalid(format!(
            "arm list must be strictly decreasing, got {a:?}"
        )));
    }
    Ok(())
}

fn check_column_bounds(c: &ConstMatrix, bounds: &[usize], what: &str) -> Result<()> {
    if c.cols().len() > bounds.len() {
        return Err(Error::invalid(format!(
            "{what}: {} constant columns supplied, at most {} allowed",
            c.cols().len(),
            bounds.len()
        )));
    }
    for (j, col) in c.cols().iter().enumerate() {
        if col.len() > bounds[j] {
            return Err(Error::invalid(format!(
                "{what}: column {} has {} entries, at most {} are ever read",
                j + 1,
                col.len(),
                bounds[j]
            )));
        }
    }
    Ok(())
}

fn jt_poly(lambda: &Partition, cols: &[Vec<Poly>]) -> Poly {
    let ell = lambda.len();
    if ell == 0 {
        return Poly::one();
    }
    let mut matrix = vec![vec![Poly::zero(); ell]; ell];
    for j in 1..=ell {
        let max_index = lambda.part(j) as i64 + ell as i64 - j as i64;
        let args = SchurArgs::shifted(Bank::T, col_entry_vec(cols, j - 1));
        let seq = schur_sequence(&args, max_index.max(0) as usize);
        for i in 1..=ell {
            let idx = lambda.part(j) as i64 + i as i64 - j as i64;
            if idx >= 0 {
                matrix[i - 1][j - 1] = seq[idx as usize].clone();
            }
        }
    }
    linalg::det(&matrix).expect("square by construction")
}

fn col_entry_vec(cols: &[Vec<Poly>], col: usize) -> Vec<Poly> {
    cols.get(col).cloned().unwrap_or_default()
}

/// Jacobi-Trudi tau function: det(s_{λ_j+i-j}(t + c_j)).
pub fn tau_kp_jt(lambda: &Partition, c: &ConstMatrix) -> Result<TauPoly> {
    let ell = lambda.len();
    let bounds: Vec<usize> = (1..=ell)
        .map(|j| (lambda.part(j) as i64 + ell as i64 - j as i64) as usize)
        .collect();
    check_column_bounds(c, &bounds, "Jacobi-Trudi constants")?;
    let poly = jt_poly(lambda, &poly_cols(c));
    Ok(TauPoly {
        family: Family::KpJt,
        label: TauLabel::Parts(lambda.clone()),
        constants: Constants::Matrix(c.clone()),
        poly,
    })
}

fn giambelli_poly(f: &FrobeniusCoords, c_cols: &[Vec<Poly>], d_cols: &[Vec<Poly>]) -> Poly {
    let k = f.rank();
    if k == 0 {
        return Poly::one();
    }
    let row_args: Vec<SchurArgs> = (0..k)
        .map(|i| SchurArgs::shifted(Bank::T, col_entry_vec(c_cols, i)))
        .collect();
    let col_args: Vec<SchurArgs> = (0..k)
        .map(|j| SchurArgs::shifted(Bank::T, col_entry_vec(d_cols, j)))
        .collect();
    let matrix: Vec<Vec<Poly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| chi_args(f.arms()[i], f.legs()[j], &row_args[i], &col_args[j]))
                .collect()
        })
        .collect();
    linalg::det(&matrix).expect("square by construction")
}

/// Giambelli tau function: det(chi(a_i, b_j)(t + c_i; t + d_j)).
pub fn tau_kp_giambelli(f: &FrobeniusCoords, c: &ConstMatrix, d: &ConstMatrix) -> Result<TauPoly> {
    let k = f.rank();
    let b1 = f.legs().first().copied().unwrap_or(0);
    let c_bounds: Vec<usize> = (0..k).map(|i| (f.arms()[i] + b1 + 1) as usize).collect();
    let d_bounds: Vec<usize> = (0..k).map(|j| f.legs()[j] as usize).collect();
    check_column_bounds(c, &c_bounds, "Giambelli row constants")?;
    check_column_bounds(d, &d_bounds, "Giambelli column constants")?;
    let poly = giambelli_poly(f, &poly_cols(c), &poly_cols(d));
    Ok(TauPoly {
        family: Family::KpGiambelli,
        label: TauLabel::Frobenius(f.clone()),
        constants: Constants::Pair(c.clone(), d.clone()),
        poly,
    })
}

/// One constrained-slot assignment of the CKP constant matrix: the entry in
/// row a_i+a_j+1 of column j forced by columns i and j.
fn ckp_constraint_value(a: &[u32], cols: &[Vec<Poly>], i: usize, j: usize) -> Poly {
    let n_row = (a[i] + a[j] + 1) as usize;
    let mut xs = Vec::with_capacity(n_row);
    for m in 1..n_row {
        let ci = col_entry(cols, i, m);
        let cj = col_entry(cols, j, m);
        xs.push(if m % 2 == 0 { ci.add(&cj) } else { ci.sub(&cj) });
    }
    xs.push(col_entry(cols, i, n_row));
    let s = elementary_schur_args(n_row as i64, &SchurArgs::Explicit(xs));
    if (n_row - 1) % 2 == 1 {
        s.neg()
    } else {
        s
    }
}

fn resolve_ckp_cols(a: &[u32], cols: &mut Vec<Vec<Poly>>) -> Result<()> {
    let k = a.len();
    if cols.len() < k {
        cols.resize(k, Vec::new());
    }
    for j in 1..k {
        // Ascending constrained row index means descending i, because the
        // arm values decrease.
        for i in (0..j).rev() {
            let n_row = (a[i] + a[j] + 1) as usize;
            let value = ckp_constraint_value(a, cols, i, j);
            set_col_entry(cols, j, n_row, value);
        }
    }
    for j in 1..k {
        for i in 0..j {
            let n_row = (a[i] + a[j] + 1) as usize;
            if col_entry(cols, j, n_row) != ckp_constraint_value(a, cols, i, j) {
                return Err(Error::internal(format!(
                    "constraint resolution order failed for pair ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Overwrites every constrained slot of the CKP constant matrix (row
/// a_i+a_j+1 of column j, for each i < j) with the value forced by the
/// free entries, processing columns left to right and constrained rows in
/// ascending order.
pub fn resolve_ckp_constraints(a: &[u32], c: &ConstMatrix) -> Result<ConstMatrix> {
    validate_strictly_decreasing(a)?;
    check_ckp_shape(a, c)?;
    let mut cols = poly_cols(c);
    resolve_ckp_cols(a, &mut cols)?;
    cols_to_rat(&cols)
}

fn check_ckp_shape(a: &[u32], c: &ConstMatrix) -> Result<()> {
    let k = a.len();
    let a1 = a.first().copied().unwrap_or(0);
    let bounds: Vec<usize> = (0..k).map(|j| (a[j] + a1 + 1) as usize).collect();
    check_column_bounds(c, &bounds, "CKP constants")
}

fn ckp_det(a: &[u32], cols: &[Vec<Poly>]) -> Poly {
    let k = a.len();
    if k == 0 {
        return Poly::one();
    }
    let row_args: Vec<SchurArgs> = (0..k)
        .map(|i| SchurArgs::shifted(Bank::T, col_entry_vec(cols, i)))
        .collect();
    let col_args: Vec<SchurArgs> = (0..k)
        .map(|j| SchurArgs::shifted(Bank::T, iota_col(&col_entry_vec(cols, j))))
        .collect();
    let matrix: Vec<Vec<Poly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| chi_args(a[i], a[j], &row_args[i], &col_args[j]))
                .collect()
        })
        .collect();
    linalg::det(&matrix).expect("square by construction")
}

/// CKP tau function: det(chi(a_i, a_j)(t + c_i; t + ι(c_j))) with ι the
/// even-entry sign flip, after resolving the constrained entries of c.
pub fn tau_ckp(a: &[u32], c: &ConstMatrix) -> Result<TauPoly> {
    validate_strictly_decreasing(a)?;
    check_ckp_shape(a, c)?;
    let mut cols = poly_cols(c);
    resolve_ckp_cols(a, &mut cols)?;
    let poly = ckp_det(a, &cols);
    let f = FrobeniusCoords::new(a.to_vec(), a.to_vec())?;
    Ok(TauPoly {
        family: Family::Ckp,
        label: TauLabel::Frobenius(f),
        constants: Constants::Matrix(cols_to_rat(&cols)?),
        poly,
    })
}

/// CKP tau function with symbolic constants: entry (i,j) of the constant
/// matrix is the t'-variable numbered column-major over the full column
/// heights a_j + a_1 + 1. Returns the tau polynomial and the constant
/// columns actually used (resolved or not).
pub fn tau_ckp_symbolic(a: &[u32], resolve: bool) -> Result<(Poly, Vec<Vec<Poly>>)> {
    validate_strictly_decreasing(a)?;
    let a1 = a.first().copied().unwrap_or(0);
    let heights: Vec<usize> = a.iter().map(|&aj| (aj + a1 + 1) as usize).collect();
    let mut cols = symbolic_columns(&heights);
    if resolve {
        resolve_ckp_cols(a, &mut cols)?;
    }
    Ok((ckp_det(a, &cols), cols))
}

/// The alternative CKP matrix: entries on and above the diagonal as in
/// tau_ckp, entries below the diagonal the conjugation of the mirrored
/// entry above. Conjugating the matrix then transposes it, so its
/// determinant is conjugation-invariant for arbitrary constants, and it
/// equals the tau_ckp determinant up to a sign that is reported, not
/// assumed.
pub fn tau_ckp_tmatrix(a: &[u32], c: &ConstMatrix) -> Result<TauPoly> {
    validate_strictly_decreasing(a)?;
    check_ckp_shape(a, c)?;
    let mut cols = poly_cols(c);
    resolve_ckp_cols(a, &mut cols)?;
    let k = a.len();
    let plain_args: Vec<SchurArgs> = (0..k)
        .map(|i| SchurArgs::shifted(Bank::T, col_entry_vec(&cols, i)))
        .collect();
    let iota_args: Vec<SchurArgs> = (0..k)
        .map(|j| SchurArgs::shifted(Bank::T, iota_col(&col_entry_vec(&cols, j))))
        .collect();
    let mut matrix = vec![vec![Poly::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            matrix[i][j] = chi_args(a[i], a[j], &plain_args[i], &iota_args[j]);
        }
    }
    for i in 0..k {
        for j in 0..i {
            matrix[i][j] = matrix[j][i].iota_c(Bank::T);
        }
    }
    let poly = if k == 0 {
        Poly::one()
    } else {
        linalg::det(&matrix).expect("square by construction")
    };
    let f = FrobeniusCoords::new(a.to_vec(), a.to_vec())?;
    Ok(TauPoly {
        family: Family::Ckp,
        label: TauLabel::Frobenius(f),
        constants: Constants::Matrix(cols_to_rat(&cols)?),
        poly,
    })
}

fn admissibility_failure(a: &[u32], n: u32) -> Option<String> {
    for &x in a {
        if x >= n && !a.contains(&(x - n)) {
            return Some(format!(
                "arm {x} minus {n} is nonnegative but not an arm itself"
            ));
        }
    }
    for &x in a {
        for &y in a {
            if (x as u64 + y as u64 + 1) % n as u64 == 0 {
                return Some(format!("{x} + {y} + 1 is a multiple of {n}"));
            }
        }
    }
    None
}

/// Arm values together with their downward n-translates, each tagged with
/// its congruence class, kept as long as some pairing can still reach a
/// constraint index x + y + 1 >= 1. One constants vector serves a whole
/// congruence class, so the columns it feeds include every translate of an
/// arm, and the isotropy conditions pair arms with translates as well as
/// with each other.
fn translate_closure(a: &[u32], n: u32) -> Vec<(i64, u32)> {
    let floor = -(a.first().copied().unwrap_or(0) as i64);
    let mut out: Vec<(i64, u32)> = Vec::new();
    for &arm in a {
        let mut x = arm as i64;
        while x >= floor {
            if !out.iter().any(|&(v, _)| v == x) {
                out.push((x, arm % n));
            }
            x -= n as i64;
        }
    }
    out.sort_unstable_by(|p, q| q.0.cmp(&p.0));
    out
}

/// Constraint left-hand side for a pair of (possibly translated) arm values
/// summing to m - 1: the elementary Schur polynomial of index m whose
/// arguments mix the two class vectors, entry r being c_{r,x} + (-1)^r c_{r,y}.
fn reduced_constraint_residual(
    classes: &BTreeMap<u32, Vec<Rat>>,
    class_x: u32,
    class_y: u32,
    m: usize,
) -> Rat {
    let empty = Vec::new();
    let cx = classes.get(&class_x).unwrap_or(&empty);
    let cy = classes.get(&class_y).unwrap_or(&empty);
    let entry = |c: &[Rat], r: usize| c.get(r - 1).cloned().unwrap_or(Rat::ZERO);
    let xs: Vec<Poly> = (1..=m)
        .map(|r| {
            let vx = entry(cx, r);
            let vy = entry(cy, r);
            Poly::constant(if r % 2 == 0 { &vx + &vy } else { &vx - &vy })
        })
        .collect();
    elementary_schur_args(m as i64, &SchurArgs::Explicit(xs)).constant_term()
}

/// Resolves or checks the constant constraints of the n-reduced CKP family.
/// The constrained indices x + y + 1 run over pairs x > y from the arm set
/// extended by its downward n-translates, since those columns reuse the same
/// class vector. With a single congruence class the even-indexed entries
/// c_{2k} are assigned in ascending k for exactly the reachable k, and the
/// constraints at odd index hold automatically by parity. With several
/// classes nothing is assigned: every pair constraint is evaluated and
/// violations are reported.
pub fn solve_reduced_constraints(
    n: u32,
    a: &[u32],
    class_constants: &BTreeMap<u32, Vec<Rat>>,
) -> Result<BTreeMap<u32, Vec<Rat>>> {
    validate_strictly_decreasing(a)?;
    let mut classes = class_constants.clone();
    let closure = translate_closure(a, n);
    let present: std::collections::BTreeSet<u32> = a.iter().map(|&x| x % n).collect();
    if present.len() == 1 {
        let class = *present.iter().next().expect("nonempty");
        let col = classes.entry(class).or_default();
        let mut ks: Vec<usize> = Vec::new();
        for (p, &(x, _)) in closure.iter().enumerate() {
            for &(y, _) in &closure[p + 1..] {
                let m = x + y + 1;
                if m >= 2 && m % 2 == 0 && !ks.contains(&(m as usize / 2)) {
                    ks.push(m as usize / 2);
                }
            }
        }
        ks.sort_unstable();
        for k in ks {
            // c_{2k} = -s_k(2c_2, 2c_4, ..., 2c_{2k-2}, 0) / 2
            let mut xs: Vec<Poly> = (1..k)
                .map(|m| {
                    let v = col.get(2 * m - 1).cloned().unwrap_or(Rat::ZERO);
                    Poly::constant(&v + &v)
                })
                .collect();
            xs.push(Poly::zero());
            let s = elementary_schur_args(k as i64, &SchurArgs::Explicit(xs)).constant_term();
            let value = Rat::new(-1, 2) * &s;
            if col.len() < 2 * k {
                col.resize(2 * k, Rat::ZERO);
            }
            col[2 * k - 1] = value;
        }
    }
    let mut violations = Vec::new();
    for (p, &(x, class_x)) in closure.iter().enumerate() {
        for &(y, class_y) in &closure[p + 1..] {
            let m = x + y + 1;
            if m < 1 {
                continue;
            }
            let r = reduced_constraint_residual(&classes, class_x, class_y, m as usize);
            if !r.is_zero() {
                violations.push(format!("pair ({x}, {y}): residual {r}"));
            }
        }
    }
    if !violations.is_empty() {
        if present.len() == 1 {
            return Err(Error::internal(format!(
                "single-class constraint assignment left violations: {}",
                violations.join("; ")
            )));
        }
        return Err(Error::ConstraintViolated(violations.join("; ")));
    }
    Ok(classes)
}

/// n-reduced CKP tau function: the CKP determinant with one constant vector
/// per congruence class of the arms mod n, constraints resolved or checked
/// first. The Frobenius coordinates must be self-conjugate and admissible
/// for the reduction. A class with no supplied vector gets zero constants.
pub fn tau_ckp_reduced(
    n: u32,
    f: &FrobeniusCoords,
    class_constants: &BTreeMap<u32, Vec<Rat>>,
) -> Result<TauPoly> {
    if n < 2 {
        return Err(Error::invalid("reduction order must be at least 2"));
    }
    if !f.is_self_conjugate() {
        return Err(Error::invalid(
            "reduced CKP needs self-conjugate Frobenius coordinates",
        ));
    }
    let a = f.arms();
    if let Some(why) = admissibility_failure(a, n) {
        return Err(Error::invalid(format!(
            "coordinates {f} are not admissible for {n}-reduction: {why}"
        )));
    }
    debug_assert!(check_reduced_admissible(f, n));
    let present: std::collections::BTreeSet<u32> = a.iter().map(|&x| x % n).collect();
    let supplied: std::collections::BTreeSet<u32> = class_constants.keys().copied().collect();
    if !supplied.is_subset(&present) {
        return Err(Error::invalid(format!(
            "constants supplied for congruence class(es) {:?} not present among the arms",
            supplied.difference(&present).collect::<Vec<_>>()
        )));
    }
    let a1 = a.first().copied().unwrap_or(0);
    for (&class, col) in class_constants {
        let m = a.iter().filter(|&&x| x % n == class).max().copied().unwrap_or(0);
        let bound = (m + a1 + 1) as usize;
        if col.len() > bound {
            return Err(Error::invalid(format!(
                "class {class} constants have {} entries, at most {bound} are ever read",
                col.len()
            )));
        }
    }
    let classes = match solve_reduced_constraints(n, a, class_constants) {
        Ok(c) => c,
        Err(Error::ConstraintViolated(msg)) => {
            return Err(Error::VerifyOnly(format!(
                "constraints are only solved automatically when all arms share one \
                 congruence class; the supplied constants violate them: {msg}"
            )));
        }
        Err(e) => return Err(e),
    };
    let k = a.len();
    let class_cols: BTreeMap<u32, Vec<Poly>> = classes
        .iter()
        .map(|(&cl, col)| (cl, rat_col_to_poly(col)))
        .collect();
    let empty = Vec::new();
    let row_args: Vec<SchurArgs> = (0..k)
        .map(|i| {
            SchurArgs::shifted(
                Bank::T,
                class_cols.get(&(a[i] % n)).unwrap_or(&empty).clone(),
            )
        })
        .collect();
    let col_args: Vec<SchurArgs> = (0..k)
        .map(|j| {
            SchurArgs::shifted(
                Bank::T,
                iota_col(class_cols.get(&(a[j] % n)).unwrap_or(&empty)),
            )
        })
        .collect();
    let matrix: Vec<Vec<Poly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| chi_args(a[i], a[j], &row_args[i], &col_args[j]))
                .collect()
        })
        .collect();
    let poly = if k == 0 {
        Poly::one()
    } else {
        linalg::det(&matrix).expect("square by construction")
    };
    Ok(TauPoly {
        family: Family::CkpReduced(n),
        label: TauLabel::Frobenius(f.clone()),
        constants: Constants::Classes(classes),
        poly,
    })
}

fn bkp_parts(lambda: &Partition) -> Result<Vec<u32>> {
    let mut parts: Vec<u32> = lambda.parts().to_vec();
    if parts.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::invalid(format!(
            "BKP needs a strict partition, got {lambda}"
        )));
    }
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    Ok(parts)
}

/// The antisymmetric BKP matrix: entries above the diagonal are
/// chibar(λ_i, λ_j)(t_o + c_i; t_o + ι(c_j)) with t_o the odd-time slice
/// (even base variables zero, constants kept in full); entries below mirror
/// with a sign and the diagonal is zero. The printed kernel itself is
/// antisymmetric only up to constant-dependent terms, so the matrix is
/// completed from its upper triangle.
pub fn tau_bkp_matrix(lambda: &Partition, c: &ConstMatrix) -> Result<Vec<Vec<Poly>>> {
    let parts = bkp_parts(lambda)?;
    let two_n = parts.len();
    let bounds: Vec<usize> = (0..two_n)
        .map(|i| {
            let other = (0..two_n)
                .filter(|&j| j != i)
                .map(|j| parts[j])
                .max()
                .unwrap_or(0);
            (parts[i] + other) as usize
        })
        .collect();
    check_column_bounds(c, &bounds, "BKP constants")?;
    let cols = poly_cols(c);
    let mut matrix = vec![vec![Poly::zero(); two_n]; two_n];
    for i in 0..two_n {
        for j in i + 1..two_n {
            let first = SchurArgs::shifted_odd(Bank::T, col_entry_vec(&cols, i));
            let second = SchurArgs::shifted_odd(Bank::T, iota_col(&col_entry_vec(&cols, j)));
            let entry = chibar_args(parts[i], parts[j], &first, &second);
            matrix[j][i] = entry.neg();
            matrix[i][j] = entry;
        }
    }
    Ok(matrix)
}

/// BKP tau function: the Pfaffian of the chibar matrix over odd times.
pub fn tau_bkp(lambda: &Partition, c: &ConstMatrix) -> Result<TauPoly> {
    let matrix = tau_bkp_matrix(lambda, c)?;
    let poly = linalg::pfaffian(&matrix)
        .map_err(|e| Error::internal(format!("BKP matrix check failed: {e}")))?;
    Ok(TauPoly {
        family: Family::Bkp,
        label: TauLabel::Parts(lambda.clone()),
        constants: Constants::Matrix(c.clone()),
        poly,
    })
}

/// The partition whose Schur polynomial, restricted to odd times, the
/// squared BKP tau function is proportional to: Frobenius coordinates
/// (λ_1 - 1, ..., λ_{2n} - 1 | λ_1, ..., λ_{2n}), dropping the final pair
/// when λ_{2n} = 0.
pub fn bkp_square_partition(lambda: &Partition) -> Result<Partition> {
    let mut parts = bkp_parts(lambda)?;
    if parts.last() == Some(&0) {
        parts.pop();
    }
    let arms: Vec<u32> = parts.iter().map(|&p| p - 1).collect();
    let legs: Vec<u32> = parts.clone();
    Ok(FrobeniusCoords::new(arms, legs)?.to_partition())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::{schur_jt, ArgSpec};

    fn t(i: u32) -> Poly {
        Poly::var(VarRef::t(i))
    }

    fn tp(i: u32) -> Poly {
        Poly::var(VarRef::tp(i))
    }

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rc(cols: &[&[i64]]) -> ConstMatrix {
        ConstMatrix::new(
            cols.iter()
                .map(|col| col.iter().map(|&x| Rat::from(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn jt_single_box_with_shift() {
        let tau = tau_kp_jt(&part(&[1]), &rc(&[&[5]])).unwrap();
        assert_eq!(tau.poly, t(1).add(&Poly::constant(Rat::from(5))));
        assert_eq!(tau.family, Family::KpJt);
    }

    #[test]
    fn jt_zero_constants_is_schur() {
        for lam in Partition::enumerate_up_to(6) {
            let tau = tau_kp_jt(&lam, &ConstMatrix::zero()).unwrap();
            assert_eq!(tau.poly, schur_jt(&lam, &ArgSpec::t()), "{lam}");
        }
    }

    #[test]
    fn jt_shape_rejected() {
        // λ=(1): single column, bound λ_1 - 1 + 1 = 1.
        assert!(tau_kp_jt(&part(&[1]), &rc(&[&[1, 2]])).is_err());
        assert!(tau_kp_jt(&part(&[1]), &rc(&[&[1], &[1]])).is_err());
    }

    #[test]
    fn giambelli_matches_jt_at_zero() {
        for lam in Partition::enumerate_up_to(6) {
            let f = lam.to_frobenius();
            let g = tau_kp_giambelli(&f, &ConstMatrix::zero(), &ConstMatrix::zero()).unwrap();
            let j = tau_kp_jt(&lam, &ConstMatrix::zero()).unwrap();
            assert_eq!(g.poly, j.poly, "{lam}");
        }
    }

    #[test]
    fn giambelli_single_hook_shift() {
        let f = FrobeniusCoords::new(vec![0], vec![0]).unwrap();
        let tau = tau_kp_giambelli(&f, &rc(&[&[7]]), &ConstMatrix::zero()).unwrap();
        assert_eq!(tau.poly, t(1).add(&Poly::constant(Rat::from(7))));
    }

    #[test]
    fn giambelli_shape_rejected() {
        let f = FrobeniusCoords::new(vec![1, 0], vec![1, 0]).unwrap();
        // d column 2 bound is b_2 = 0.
        assert!(tau_kp_giambelli(&f, &ConstMatrix::zero(), &rc(&[&[], &[1]])).is_err());
        // c column 2 bound is a_2 + b_1 + 1 = 2.
        assert!(tau_kp_giambelli(&f, &rc(&[&[], &[1, 1, 1]]), &ConstMatrix::zero()).is_err());
    }

    #[test]
    fn resolve_assigns_constrained_slot() {
        // a=(1,0), c11=1, c21=3, c31=0, c12=2: c22 = -((1-2)^2/2 + 3) = -7/2.
        let c = rc(&[&[1, 3], &[2]]);
        let resolved = resolve_ckp_constraints(&[1, 0], &c).unwrap();
        assert_eq!(resolved.cols()[1][1], Rat::new(-7, 2));
        // Free entries untouched.
        assert_eq!(resolved.cols()[0], vec![Rat::from(1), Rat::from(3)]);
        assert_eq!(resolved.cols()[1][0], Rat::from(2));
    }

    #[test]
    fn resolve_trivial_cases() {
        let c = rc(&[&[4, 5]]);
        let resolved = resolve_ckp_constraints(&[2], &c).unwrap();
        assert_eq!(resolved, c);
        let zero = resolve_ckp_constraints(&[1, 0], &ConstMatrix::zero()).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn ckp_single_hook() {
        let tau = tau_ckp(&[0], &rc(&[&[9]])).unwrap();
        assert_eq!(tau.poly, t(1).add(&Poly::constant(Rat::from(9))));
    }

    #[test]
    fn ckp_zero_constants_is_square_schur() {
        let tau = tau_ckp(&[1, 0], &ConstMatrix::zero()).unwrap();
        assert_eq!(tau.poly, schur_jt(&part(&[2, 2]), &ArgSpec::t()));
    }

    #[test]
    fn ckp_output_is_conjugation_invariant() {
        let c = rc(&[&[1, 2, 3], &[4, 5]]);
        let tau = tau_ckp(&[1, 0], &c).unwrap();
        assert_eq!(tau.poly.iota_c(Bank::T), tau.poly);
        match &tau.constants {
            Constants::Matrix(m) => {
                // The resolved slot is row 2 of column 2:
                // -((1-4)^2/2 + 2) = -13/2.
                assert_eq!(m.cols()[1][1], Rat::new(-13, 2));
            }
            _ => panic!("expected matrix constants"),
        }
    }

    #[test]
    fn ckp_symbolic_defect_is_the_even_time_term() {
        let (tau, cols) = tau_ckp_symbolic(&[1, 0], false).unwrap();
        assert_eq!(cols[0].len(), 3);
        assert_eq!(cols[1].len(), 2);
        let defect = tau.sub(&tau.iota_c(Bank::T));
        // (c11^2 - 2 c11 c12 + c12^2 + 2 c21 + 2 c22) t2 with the
        // column-major numbering c11=tp1, c21=tp2, c31=tp3, c12=tp4, c22=tp5.
        let coeff = tp(1)
            .pow(2)
            .sub(&tp(1).mul(&tp(4)).scale(&Rat::from(2)))
            .add(&tp(4).pow(2))
            .add(&tp(2).scale(&Rat::from(2)))
            .add(&tp(5).scale(&Rat::from(2)));
        assert_eq!(defect, coeff.mul(&t(2)));
        // After resolution the defect vanishes.
        let (resolved, _) = tau_ckp_symbolic(&[1, 0], true).unwrap();
        assert_eq!(resolved.iota_c(Bank::T), resolved);
    }

    #[test]
    fn tmatrix_matches_up_to_sign() {
        for c in [ConstMatrix::zero(), rc(&[&[1, -2, 3], &[2, 7]])] {
            let plain = tau_ckp(&[1, 0], &c).unwrap();
            let alt = tau_ckp_tmatrix(&[1, 0], &c).unwrap();
            let ratio = plain.poly.proportionality(&alt.poly).expect("proportional");
            assert!(ratio == Rat::ONE || ratio == Rat::from(-1), "ratio {ratio}");
        }
    }

    #[test]
    fn reduced_single_hook() {
        let mut cc = BTreeMap::new();
        cc.insert(0, vec![Rat::from(4)]);
        let tau = tau_ckp_reduced(3, &FrobeniusCoords::new(vec![0], vec![0]).unwrap(), &cc)
            .unwrap();
        assert_eq!(tau.poly, t(1).add(&Poly::constant(Rat::from(4))));
        assert_eq!(tau.family, Family::CkpReduced(3));
    }

    #[test]
    fn reduced_zero_constants_is_hook_schur() {
        let f = FrobeniusCoords::new(vec![2], vec![2]).unwrap();
        let tau = tau_ckp_reduced(3, &f, &BTreeMap::new()).unwrap();
        assert_eq!(tau.poly, schur_jt(&part(&[3, 1, 1]), &ArgSpec::t()));
    }

    #[test]
    fn reduced_assigns_even_entry() {
        // Family (3m, ..., 3, 0) at m=1: the pair (3,0) forces c_4 = -c_2^2.
        let f = FrobeniusCoords::new(vec![3, 0], vec![3, 0]).unwrap();
        let mut cc = BTreeMap::new();
        cc.insert(0, vec![Rat::from(1), Rat::from(5), Rat::from(-2)]);
        let tau = tau_ckp_reduced(3, &f, &cc).unwrap();
        match &tau.constants {
            Constants::Classes(classes) => {
                assert_eq!(classes[&0][3], Rat::from(-25));
                assert_eq!(classes[&0][..3], [Rat::from(1), Rat::from(5), Rat::from(-2)]);
            }
            _ => panic!("expected class constants"),
        }
        assert_eq!(tau.poly.iota_c(Bank::T), tau.poly);
    }

    #[test]
    fn reduced_constrains_translate_pairs() {
        // For a=(2) and n=3 there is no arm pair, but the class vector also
        // feeds the translated column at 2-3 = -1, whose pairing with the arm
        // has index 2+(-1)+1 = 2 and forces c_2 = 0. The tau with c_2 left
        // free depends on t_3; with the solved constants it must not.
        let solved = solve_reduced_constraints(
            3,
            &[2],
            &BTreeMap::from([(2, vec![Rat::from(1), Rat::from(7), Rat::from(4)])]),
        )
        .unwrap();
        assert_eq!(solved[&2], [Rat::from(1), Rat::ZERO, Rat::from(4)]);

        let f = FrobeniusCoords::new(vec![2], vec![2]).unwrap();
        let tau = tau_ckp_reduced(3, &f, &solved).unwrap();
        let dt3 = tau.poly.partial_derivative(VarRef::t(3));
        assert!(dt3.is_zero(), "solved constants keep t_3 out: {dt3}");

        // Both (5,-4) and (2,-1) reach index 2, and (5,2) reaches index 8,
        // so the (3m+2, ..., 5, 2) family at m=1 zeroes c_2 and assigns c_8.
        let solved = solve_reduced_constraints(
            3,
            &[5, 2],
            &BTreeMap::from([(2, vec![Rat::ZERO, Rat::from(3)])]),
        )
        .unwrap();
        assert_eq!(solved[&2][1], Rat::ZERO);
        assert_eq!(solved[&2][7], Rat::ZERO);
        assert_eq!(solved[&2].len(), 8);
    }

    #[test]
    fn reduced_rejects_inadmissible() {
        let f = FrobeniusCoords::new(vec![1, 0], vec![1, 0]).unwrap();
        let err = tau_ckp_reduced(2, &f, &BTreeMap::new()).unwrap_err();
        assert!(err.to_string().contains("multiple of 2"), "{err}");
        let g = FrobeniusCoords::new(vec![4], vec![4]).unwrap();
        let err = tau_ckp_reduced(3, &g, &BTreeMap::new()).unwrap_err();
        assert!(err.to_string().contains("not an arm"), "{err}");
    }

    #[test]
    fn reduced_multi_class_checks_constraints() {
        // a=(1,0) is admissible for n=5 and spans two congruence classes.
        let f = FrobeniusCoords::new(vec![1, 0], vec![1, 0]).unwrap();
        let mut good = BTreeMap::new();
        good.insert(1, vec![Rat::from(2), Rat::from(-2)]);
        good.insert(0, vec![Rat::ZERO, Rat::ZERO]);
        let tau = tau_ckp_reduced(5, &f, &good).unwrap();
        assert_eq!(tau.poly.iota_c(Bank::T), tau.poly);

        let mut bad = BTreeMap::new();
        bad.insert(1, vec![Rat::from(2), Rat::from(1)]);
        let err = tau_ckp_reduced(5, &f, &bad).unwrap_err();
        assert!(matches!(err, Error::VerifyOnly(_)), "{err}");
    }

    #[test]
    fn bkp_smallest_cases() {
        let tau = tau_bkp(&part(&[1]), &ConstMatrix::zero()).unwrap();
        assert_eq!(tau.poly, t(1).scale(&Rat::new(1, 2)));
        let empty = tau_bkp(&Partition::empty(), &ConstMatrix::zero()).unwrap();
        assert_eq!(empty.poly, Poly::one());
        let tau21 = tau_bkp(&part(&[2, 1]), &ConstMatrix::zero()).unwrap();
        let expect = t(1).pow(3).scale(&Rat::new(1, 12)).sub(&t(3));
        assert_eq!(tau21.poly, expect);
    }

    #[test]
    fn bkp_rejects_non_strict() {
        assert!(tau_bkp(&part(&[2, 2]), &ConstMatrix::zero()).is_err());
    }

    #[test]
    fn bkp_square_partition_examples() {
        assert_eq!(bkp_square_partition(&part(&[1])).unwrap(), part(&[1, 1]));
        assert_eq!(bkp_square_partition(&part(&[2, 1])).unwrap(), part(&[2, 2, 2]));
    }

    #[test]
    fn bkp_square_proportional_to_schur() {
        let tau = tau_bkp(&part(&[1]), &ConstMatrix::zero()).unwrap();
        let square = tau.poly.mul(&tau.poly);
        let target = schur_jt(&bkp_square_partition(&part(&[1])).unwrap(), &ArgSpec::t())
            .restrict_zero(|v| v.bank == Bank::T && v.index % 2 == 0);
        assert_eq!(square.proportionality(&target), Some(Rat::from(2)));
    }
}
