//! Exact vanishing test for factored bilinear residues.
//!
//! Write the Miwa-shifted factor tau(t - [z^{-1}]) = sum_m P_m(t) z^{-m} and
//! multiply by the exponential prefactor exp(sum_i t_i z^i); the coefficient
//! of z^alpha in the product is the row polynomial
//!
//!   X_alpha = sum_m s_{alpha+m}(t) P_m(t).
//!
//! Every residue checked here is a sum over alpha of X_alpha(t) Y_beta(t')
//! with beta = -1 - offset - alpha, where Y runs over a second row family and
//! the symmetric pairing carries a sign (-1)^beta from evaluating its wave
//! series at -z. For the plain pairing the second wave factor is
//! tau(t' + [z^{-1}]) exp(-sum t'_i z^i); negating every t' variable (a linear
//! automorphism of the second tensor leg, harmless to vanishing) turns it
//! into the primary construction applied to tau(-t), so both sides use the
//! same row shape.
//!
//! Viewing a family as a coefficient matrix A over the monomial basis
//! (columns indexed by alpha), the residue is A E A'^T with E the signed
//! permutation pairing the alphas, and it vanishes iff B E B'^T = 0 for row
//! space bases B, B' of the two matrices.
//!
//! The bases are found without materializing any row. Under the pairing
//! <f, g> = [f(d~) g] at t = 0, where d~ substitutes t_i -> (1/i) d/dt_i, the
//! monomial basis is orthogonal with positive weights, so the Gram matrix
//! G[a][a'] = <X_a, X_a'> has the same row space as A. The adjoint of
//! multiplication by any F is the operator F(d~), and sum_b s_b(d~) z^b is
//! the shift t -> t + [z], which gives s_a(d~) s_v = s_{v-a} and the product
//! rule s_u(d~)(fg) = sum_{a+b=u} (s_a(d~)f)(s_b(d~)g). Every Gram entry
//! therefore collapses to pairings of skewed pieces:
//!
//!   <s_u P_m, s_v P_m'> = sum_{b=0}^{u} <T[m][v-u+b], T[m'][b]>,
//!
//! with skew table T[m][b] = s_b(d~) P_m, read off one further Miwa shift
//! P_m(t + [z]). The b-sum is cut at the left index u, so the tables store
//! prefix sums. All arithmetic is exact rational.

use crate::laurent::miwa_shift;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::vars::Bank;

/// Weight of a monomial under the pairing: prod over factors t_i^k of k!/i^k.
/// With this normalization <p_la, p_mu> = delta * z_la in power-sum language,
/// so Schur polynomials come out orthonormal.
fn pairing_weight(m: &Monomial) -> Rat {
    let mut w = Rat::ONE;
    for (v, e) in m.iter() {
        for j in 1..=e {
            w *= &Rat::new(j as i64, v.index as i64);
        }
    }
    w
}

/// The diagonal pairing <f, g>. Both term lists share the canonical order, so
/// one merge pass finds the matching monomials.
pub(crate) fn pairing_dot(f: &Poly, g: &Poly) -> Rat {
    let (a, b) = (f.terms(), g.terms());
    let mut acc = Rat::ZERO;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.canon_cmp(&b[j].0) {
            std::cmp::Ordering::Greater => i += 1,
            std::cmp::Ordering::Less => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &(&(&a[i].1 * &b[j].1) * &pairing_weight(&a[i].0));
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// One family of residue rows, held in factored form.
pub(crate) struct RowFamily {
    /// skew[m][b] = s_b(d~) P_m; the b = 0 entry is P_m itself.
    skew: Vec<Vec<Poly>>,
    d: i64,
}

impl RowFamily {
    /// Rows of the shift tau(t - [z^{-1}]): P_m is its z^{-m} piece.
    pub(crate) fn primary(tau: &Poly) -> RowFamily {
        let shifted = miwa_shift(tau, Bank::T, -1, 1);
        let d = tau.wdeg() as i64;
        RowFamily::from_pieces((0..=d).map(|m| shifted.coeff(-m)).collect(), d)
    }

    /// Rows of the second factor of the plain bilinear pairing, with every
    /// variable negated: the primary construction applied to tau(-t).
    pub(crate) fn kp_dual(tau: &Poly) -> RowFamily {
        RowFamily::primary(&tau.negate_vars(Some(Bank::T)))
    }

    fn from_pieces(pieces: Vec<Poly>, d: i64) -> RowFamily {
        let skew = pieces
            .iter()
            .map(|p| {
                if p.is_zero() {
                    return Vec::new();
                }
                // The z^b coefficient of P(t + [z]) is the z^{-b} one of
                // P(t + [z^{-1}]).
                let shifted = miwa_shift(p, Bank::T, 1, 1);
                let top = -shifted.min_pow().unwrap_or(0);
                (0..=top).map(|b| shifted.coeff(-b)).collect()
            })
            .collect();
        RowFamily { skew, d }
    }

    #[cfg(test)]
    pub(crate) fn d(&self) -> i64 {
        self.d
    }

    /// Row alpha in full, for cross-checks against the direct residue.
    #[cfg(test)]
    pub(crate) fn row(&self, alpha: i64) -> Poly {
        use crate::schur::{schur_sequence, SchurArgs};
        let maxj = alpha + self.d;
        if maxj < 0 {
            return Poly::zero();
        }
        let seq = schur_sequence(&SchurArgs::plain(Bank::T), maxj as usize);
        let mut acc = Poly::zero();
        for (m, entries) in self.skew.iter().enumerate() {
            let u = alpha + m as i64;
            if u < 0 || entries.is_empty() {
                continue;
            }
            acc = acc.add(&seq[u as usize].mul(&entries[0]));
        }
        acc
    }
}

/// Prefix tables for one orientation of one skew-table pair: entry
/// [delta + lb - 1][B - max(0, -delta)] holds sum_{b <= B} q_b with
/// q_b = <left[delta+b], right[b]>, lb the right table's length. Forward
/// orientation reads the dot matrix as (left, right); flipped swaps the axes.
fn orient(dots: &[Vec<Rat>], flipped: bool) -> Vec<Vec<Rat>> {
    let (la, lb) = if flipped {
        (dots[0].len(), dots.len())
    } else {
        (dots.len(), dots[0].len())
    };
    let mut out = Vec::with_capacity(la + lb - 1);
    for dix in 0..(la + lb - 1) as i64 {
        let delta = dix - (lb as i64 - 1);
        let bmin = (-delta).max(0);
        let bmax = (lb as i64 - 1).min(la as i64 - 1 - delta);
        let mut row = Vec::new();
        if bmin <= bmax {
            let mut acc = Rat::ZERO;
            for b in bmin..=bmax {
                let a = (delta + b) as usize;
                acc += if flipped {
                    &dots[b as usize][a]
                } else {
                    &dots[a][b as usize]
                };
                row.push(acc.clone());
            }
        }
        out.push(row);
    }
    out
}

/// Gram matrix of the rows over alpha in [lo, hi].
fn gram(f: &RowFamily, lo: i64, hi: i64) -> Vec<Vec<Rat>> {
    let mm = f.skew.len();
    let lens: Vec<usize> = f.skew.iter().map(|t| t.len()).collect();
    let mut pref: Vec<Vec<Vec<Vec<Rat>>>> = vec![vec![Vec::new(); mm]; mm];
    for m in 0..mm {
        for mp in m..mm {
            if lens[m] == 0 || lens[mp] == 0 {
                continue;
            }
            let dots: Vec<Vec<Rat>> = f.skew[m]
                .iter()
                .map(|x| f.skew[mp].iter().map(|y| pairing_dot(x, y)).collect())
                .collect();
            pref[m][mp] = orient(&dots, false);
            if mp > m {
                pref[mp][m] = orient(&dots, true);
            }
        }
    }
    // <s_u P_m, s_v P_mp> = prefix sum at delta = v - u, cut at b = u.
    let lookup = |m: usize, mp: usize, delta: i64, cut: i64| -> Option<&Rat> {
        let tab = &pref[m][mp];
        let dix = delta + lens[mp] as i64 - 1;
        if dix < 0 || dix >= tab.len() as i64 {
            return None;
        }
        let row = &tab[dix as usize];
        if row.is_empty() {
            return None;
        }
        let idx = cut - (-delta).max(0);
        if idx < 0 {
            return None;
        }
        Some(&row[(idx as usize).min(row.len() - 1)])
    };
    let n = (hi - lo + 1) as usize;
    let mut g = vec![vec![Rat::ZERO; n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc = Rat::ZERO;
            for m in 0..mm {
                let u = lo + i as i64 + m as i64;
                if u < 0 || lens[m] == 0 {
                    continue;
                }
                for mp in 0..mm {
                    let v = lo + j as i64 + mp as i64;
                    if v < 0 || lens[mp] == 0 {
                        continue;
                    }
                    if let Some(val) = lookup(m, mp, v - u, u) {
                        acc += val;
                    }
                }
            }
            g[i][j] = acc.clone();
            g[j][i] = acc;
        }
    }
    g
}

/// Rows spanning the row space of the input, echelonized: each basis row is
/// normalized to 1 at its pivot, and rows are kept sorted by pivot.
fn row_basis(rows: Vec<Vec<Rat>>) -> Vec<(usize, Vec<Rat>)> {
    let mut basis: Vec<(usize, Vec<Rat>)> = Vec::new();
    for mut row in rows {
        for (pivot, brow) in &basis {
            let fac = row[*pivot].clone();
            if !fac.is_zero() {
                for (r, b) in row.iter_mut().zip(brow.iter()) {
                    *r -= &(&fac * b);
                }
            }
        }
        if let Some(pivot) = row.iter().position(|v| !v.is_zero()) {
            let inv = row[pivot].recip();
            for v in row.iter_mut() {
                *v *= &inv;
            }
            let at = basis.partition_point(|(q, _)| *q < pivot);
            basis.insert(at, (pivot, row));
        }
    }
    basis
}

/// Decides exactly whether sum_alpha e_alpha X_alpha * Y_{-1-offset-alpha}
/// vanishes, with e_alpha = (-1)^{alpha+1+offset} when `alternating` and 1
/// otherwise. `same_family` marks that x and y are the same family, whose
/// alpha range is closed under the pairing, so one Gram basis serves both
/// sides.
pub(crate) fn pairing_vanishes(
    x: &RowFamily,
    y: &RowFamily,
    offset: i64,
    same_family: bool,
    alternating: bool,
) -> bool {
    let lo = -x.d;
    let hi = y.d - 1 - offset;
    if hi < lo {
        return true;
    }
    let sigma = |alpha: i64| -1 - offset - alpha;
    let bx = row_basis(gram(x, lo, hi));
    let by = if same_family {
        bx.clone()
    } else {
        row_basis(gram(y, sigma(hi), sigma(lo)))
    };
    let lo_y = sigma(hi);
    for (_, rx) in &bx {
        for (_, ry) in &by {
            let mut acc = Rat::ZERO;
            for alpha in lo..=hi {
                let term = &rx[(alpha - lo) as usize] * &ry[(sigma(alpha) - lo_y) as usize];
                if alternating && (alpha + 1 + offset).rem_euclid(2) == 1 {
                    acc -= &term;
                } else {
                    acc += &term;
                }
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}
