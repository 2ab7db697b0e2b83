//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept sorted in the canonical order (weighted degree, then total
//! degree, then reverse-lexicographic tie-break), largest first, with no zero
//! coefficients, so equal polynomials are structurally equal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::rat::Rat;
use crate::vars::{Bank, VarRef};

/// Multiplicative string hasher in the FxHash style; fast on the short
/// packed monomial words that dominate hashing here.
#[derive(Default)]
pub(crate) struct FxHasher {
    hash: u64,
}

const SEED: u64 = 0x51_7c_c1_b7_27_22_0a_95;

impl Hasher for FxHasher {
    fn finish(&self) -> u64 {
        self.hash
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u8(&mut self, v: u8) {
        self.write_u64(v as u64);
    }

    fn write_u64(&mut self, v: u64) {
        self.hash = (self.hash.rotate_left(5) ^ v).wrapping_mul(SEED);
    }

    fn write_usize(&mut self, v: usize) {
        self.write_u64(v as u64);
    }

    fn write_i64(&mut self, v: i64) {
        self.write_u64(v as u64);
    }
}

pub(crate) type FxBuildHasher = BuildHasherDefault<FxHasher>;
pub(crate) type FxHashMap<K, V> = HashMap<K, V, FxBuildHasher>;

/// A polynomial in the time variables of both banks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Rat)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::ONE)
    }

    pub fn constant(c: Rat) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn var(v: VarRef) -> Poly {
        Poly {
            terms: vec![(Monomial::var(v, 1), Rat::ONE)],
        }
    }

    pub fn term(m: Monomial, c: Rat) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(terms: Vec<(Monomial, Rat)>) -> Poly {
        let mut terms = terms;
        terms.sort_unstable_by(|a, b| b.0.canon_cmp(&a.0));
        let mut out: Vec<(Monomial, Rat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == m => *acc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    /// Leading term in the canonical order.
    pub fn leading(&self) -> Option<&(Monomial, Rat)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        // Terms are sorted descending, so binary search with reversed order.
        match self
            .terms
            .binary_search_by(|(tm, _)| m.canon_cmp(tm))
        {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rat::ZERO,
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one())
    }

    /// Maximum weighted degree over terms (zero polynomial: 0).
    pub fn wdeg(&self) -> u64 {
        self.terms.first().map_or(0, |(m, _)| m.wdeg())
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out: Vec<(Monomial, Rat)> = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.canon_cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // Multiplying every monomial by a fixed monomial preserves the
        // canonical order, so no resort is needed.
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_term(m, c);
        }
        let mut acc: FxHashMap<Monomial, Rat> = FxHashMap::with_capacity_and_hasher(
            self.terms.len() * rhs.terms.len() / 2 + 8,
            FxBuildHasher::default(),
        );
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (&self.terms, &rhs.terms)
        } else {
            (&rhs.terms, &self.terms)
        };
        for (ma, ca) in small.iter() {
            for (mb, cb) in large.iter() {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &c;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Rat)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        terms.sort_unstable_by(|a, b| b.0.canon_cmp(&a.0));
        Poly { terms }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to one variable.
    pub fn partial_derivative(&self, v: VarRef) -> Poly {
        let mut terms: Vec<(Monomial, Rat)> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let reduced = Monomial::from_pairs(
                m.iter()
                    .map(|(w, k)| if w == v { (w, k - 1) } else { (w, k) }),
            );
            terms.push((reduced, c * &Rat::from(e as i64)));
        }
        Poly::from_terms(terms)
    }

    /// Substitutes `t_i -> t_i + shift[i-1]` in the given bank; indices past
    /// the end of `shifts` are left unshifted.
    pub fn shift_constants(&self, bank: Bank, shifts: &[Rat]) -> Poly {
        let polys: Vec<Poly> = shifts.iter().map(|c| Poly::constant(c.clone())).collect();
        self.shift_vars(bank, &polys)
    }

    /// Substitutes `t_i -> t_i + shifts[i-1]` with polynomial shifts.
    pub fn shift_vars(&self, bank: Bank, shifts: &[Poly]) -> Poly {
        // Powers of (t_i + shift_i), memoized per variable.
        let mut powers: FxHashMap<u32, Vec<Poly>> = FxHashMap::default();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut fixed: Vec<(VarRef, u32)> = Vec::new();
            let mut parts = Poly::constant(c.clone());
            for (v, e) in m.iter() {
                let idx = v.index as usize;
                if v.bank != bank || idx > shifts.len() || shifts[idx - 1].is_zero() {
                    fixed.push((v, e));
                    continue;
                }
                let cache = powers.entry(v.index).or_insert_with(|| {
                    vec![Poly::one(), Poly::var(v).add(&shifts[idx - 1])]
                });
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&cache[1]);
                    cache.push(next);
                }
                parts = parts.mul(&cache[e as usize]);
            }
            out = out.add(&parts.mul_term(&Monomial::from_pairs(fixed), &Rat::ONE));
        }
        out
    }

    /// The involution `t_i -> -(-1)^i t_i` on the given bank: even-indexed
    /// variables change sign, odd-indexed ones do not.
    pub fn iota_c(&self, bank: Bank) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let flips: u32 = m
                        .iter()
                        .filter(|(v, _)| v.bank == bank && v.index % 2 == 0)
                        .map(|(_, e)| e)
                        .sum();
                    let c = if flips % 2 == 1 { -c } else { c.clone() };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// Negates every variable of the given bank (`None`: both banks).
    pub fn negate_vars(&self, bank: Option<Bank>) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let flips: u32 = m
                        .iter()
                        .filter(|(v, _)| bank.is_none() || Some(v.bank) == bank)
                        .map(|(_, e)| e)
                        .sum();
                    let c = if flips % 2 == 1 { -c } else { c.clone() };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// Substitutes a polynomial for one variable.
    pub fn substitute_var(&self, v: VarRef, value: &Poly) -> Poly {
        let mut by_exp: BTreeMap<u32, Vec<(Monomial, Rat)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let rest = if e == 0 {
                m.clone()
            } else {
                Monomial::from_pairs(m.iter().filter(|(w, _)| *w != v))
            };
            by_exp.entry(e).or_default().push((rest, c.clone()));
        }
        let mut out = Poly::zero();
        let mut power = Poly::one();
        let mut cur_exp = 0u32;
        for (e, terms) in by_exp {
            while cur_exp < e {
                power = power.mul(value);
                cur_exp += 1;
            }
            out = out.add(&Poly::from_terms(terms).mul(&power));
        }
        out
    }

    /// Substitutes every variable of a bank by the polynomial at its index.
    /// Fails if the polynomial uses an index past the end of `values`.
    pub fn substitute_bank(&self, bank: Bank, values: &[Poly]) -> Result<Poly> {
        let mut out = self.clone();
        let max = self.max_index(bank);
        if max as usize > values.len() {
            return Err(Error::invalid(format!(
                "substitution covers indices up to {}, polynomial uses {}{}",
                values.len(),
                bank.json_tag(),
                max
            )));
        }
        for i in (1..=max).rev() {
            out = out.substitute_var(VarRef::new(bank, i), &values[i as usize - 1]);
        }
        Ok(out)
    }

    /// Sets to zero every variable accepted by the predicate.
    pub fn restrict_zero(&self, pred: impl Fn(VarRef) -> bool) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.iter().any(|(v, _)| pred(v)))
                .cloned()
                .collect(),
        }
    }

    /// Largest index of the bank appearing in the polynomial (0 if none).
    pub fn max_index(&self, bank: Bank) -> u32 {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.iter())
            .filter(|(v, _)| v.bank == bank)
            .map(|(v, _)| v.index)
            .max()
            .unwrap_or(0)
    }

    pub fn uses_bank(&self, bank: Bank) -> bool {
        self.max_index(bank) > 0
    }

    /// Moves every variable from one bank to the other; the polynomial must
    /// not already use the target bank.
    pub fn relabel_bank(&self, from: Bank, to: Bank) -> Poly {
        if from == to {
            return self.clone();
        }
        assert!(
            !self.uses_bank(to),
            "relabeling would collide with existing variables"
        );
        // A uniform bank change preserves the canonical order.
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        m.map_vars_monotone(|v| {
                            if v.bank == from {
                                VarRef::new(to, v.index)
                            } else {
                                v
                            }
                        }),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// The ratio r with other = r * self, if one exists. Two zero
    /// polynomials count as proportional with ratio one.
    pub fn proportionality(&self, other: &Poly) -> Option<Rat> {
        match (self.terms.first(), other.terms.first()) {
            (None, None) => Some(Rat::ONE),
            (Some((m, c)), Some((om, oc))) if m == om => {
                let r = oc / c;
                (self.scale(&r) == *other).then_some(r)
            }
            _ => None,
        }
    }

    /// Splits into homogeneous components by weighted degree, exploiting the
    /// canonical sort (weighted degree is the primary sort key).
    pub fn split_wdeg(&self) -> Vec<(u64, Poly)> {
        let mut out: Vec<(u64, Poly)> = Vec::new();
        for (m, c) in &self.terms {
            let w = m.wdeg();
            match out.last_mut() {
                Some((lw, p)) if *lw == w => p.terms.push((m.clone(), c.clone())),
                _ => out.push((w, Poly::term(m.clone(), c.clone()))),
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag} ")?;
                }
                let vars: Vec<String> = m
                    .iter()
                    .map(|(v, e)| {
                        if e == 1 {
                            v.to_string()
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
                write!(f, "{}", vars.join(" "))?;
            }
        }
        Ok(())
    }
}
