//! Monomials over the two variable banks.
//!
//! A monomial is stored as a sorted, packed list of `(variable, exponent)`
//! pairs, one `u64` per variable. The canonical term order used throughout
//! the crate compares weighted degree first, then total degree, then breaks
//! ties reverse-lexicographically: walking the variables from largest to
//! smallest, the first exponent difference decides, and the monomial with
//! the smaller exponent there is the larger term.

use std::cmp::Ordering;

use crate::vars::VarRef;

const EXP_MASK: u64 = 0xffff_ffff;

/// Product of variable powers; the empty product is the constant monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    /// Packed `(VarRef::key() << 32) | exponent`, sorted by key, exponents nonzero.
    packed: Box<[u64]>,
}

fn pack(v: VarRef, exp: u32) -> u64 {
    ((v.key() as u64) << 32) | exp as u64
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { packed: Box::new([]) }
    }

    pub fn var(v: VarRef, exp: u32) -> Monomial {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial {
                packed: Box::new([pack(v, exp)]),
            }
        }
    }

    /// Builds from arbitrary pairs, merging duplicates and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarRef, u32)>) -> Monomial {
        let mut items: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|&(_, e)| e != 0)
            .map(|(v, e)| (v.key(), e))
            .collect();
        items.sort_by_key(|&(k, _)| k);
        let mut packed: Vec<u64> = Vec::with_capacity(items.len());
        for (k, e) in items {
            match packed.last_mut() {
                Some(last) if (*last >> 32) as u32 == k => {
                    let merged = ((*last & EXP_MASK) as u32)
                        .checked_add(e)
                        .expect("exponent overflow");
                    *last = ((k as u64) << 32) | merged as u64;
                }
                _ => packed.push(((k as u64) << 32) | e as u64),
            }
        }
        Monomial {
            packed: packed.into_boxed_slice(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.packed.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarRef, u32)> + '_ {
        self.packed
            .iter()
            .map(|&p| (VarRef::from_key((p >> 32) as u32), (p & EXP_MASK) as u32))
    }

    pub fn num_vars(&self) -> usize {
        self.packed.len()
    }

    pub fn exponent(&self, v: VarRef) -> u32 {
        let key = v.key();
        match self.packed.binary_search_by_key(&key, |&p| (p >> 32) as u32) {
            Ok(i) => (self.packed[i] & EXP_MASK) as u32,
            Err(_) => 0,
        }
    }

    /// Weighted degree: sum of `index * exponent` over both banks.
    pub fn wdeg(&self) -> u64 {
        self.iter().map(|(v, e)| v.weight() * e as u64).sum()
    }

    /// Total degree: sum of exponents.
    pub fn tdeg(&self) -> u64 {
        self.iter().map(|(_, e)| e as u64).sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let (a, b) = (&self.packed, &rhs.packed);
        let mut out: Vec<u64> = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ka, kb) = (a[i] >> 32, b[j] >> 32);
            match ka.cmp(&kb) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = ((a[i] & EXP_MASK) as u32)
                        .checked_add((b[j] & EXP_MASK) as u32)
                        .expect("exponent overflow");
                    out.push((ka << 32) | e as u64);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial {
            packed: out.into_boxed_slice(),
        }
    }

    /// Exact division; `None` if some exponent of `rhs` exceeds `self`'s.
    pub fn try_div(&self, rhs: &Monomial) -> Option<Monomial> {
        let (a, b) = (&self.packed, &rhs.packed);
        let mut out: Vec<u64> = Vec::with_capacity(a.len());
        let mut i = 0;
        for &pb in b.iter() {
            let (kb, eb) = (pb >> 32, pb & EXP_MASK);
            loop {
                if i >= a.len() {
                    return None;
                }
                let (ka, ea) = (a[i] >> 32, a[i] & EXP_MASK);
                match ka.cmp(&kb) {
                    Ordering::Less => {
                        out.push(a[i]);
                        i += 1;
                    }
                    Ordering::Greater => return None,
                    Ordering::Equal => {
                        if ea < eb {
                            return None;
                        }
                        if ea > eb {
                            out.push((ka << 32) | (ea - eb));
                        }
                        i += 1;
                        break;
                    }
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        Some(Monomial {
            packed: out.into_boxed_slice(),
        })
    }

    /// Canonical term order; `Greater` sorts earlier in a polynomial.
    pub fn canon_cmp(&self, rhs: &Monomial) -> Ordering {
        self.wdeg()
            .cmp(&rhs.wdeg())
            .then_with(|| self.tdeg().cmp(&rhs.tdeg()))
            .then_with(|| {
                let (a, b) = (&self.packed, &rhs.packed);
                let (mut i, mut j) = (a.len(), b.len());
                loop {
                    match (i, j) {
                        (0, 0) => return Ordering::Equal,
                        // One side exhausted: at the largest variable still
                        // present on the other side, the exhausted side has
                        // exponent zero, and the smaller exponent wins.
                        (0, _) => return Ordering::Greater,
                        (_, 0) => return Ordering::Less,
                        _ => {}
                    }
                    let (ka, ea) = (a[i - 1] >> 32, a[i - 1] & EXP_MASK);
                    let (kb, eb) = (b[j - 1] >> 32, b[j - 1] & EXP_MASK);
                    match ka.cmp(&kb) {
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Equal => {
                            if ea != eb {
                                // Smaller exponent at the largest differing
                                // variable wins.
                                return if ea < eb {
                                    Ordering::Greater
                                } else {
                                    Ordering::Less
                                };
                            }
                            i -= 1;
                            j -= 1;
                        }
                    }
                }
            })
    }

    /// Applies a variable map, e.g. bank relabeling. The map must be
    /// strictly monotone in the packed key order.
    pub(crate) fn map_vars_monotone(&self, f: impl Fn(VarRef) -> VarRef) -> Monomial {
        let packed: Vec<u64> = self
            .iter()
            .map(|(v, e)| pack(f(v), e))
            .collect();
        debug_assert!(packed.windows(2).all(|w| w[0] >> 32 < w[1] >> 32));
        Monomial {
            packed: packed.into_boxed_slice(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VarRef;

    fn m(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|&(i, e)| (VarRef::t(i), e)))
    }

    #[test]
    fn degrees() {
        let x = m(&[(1, 2), (3, 1)]);
        assert_eq!(x.wdeg(), 5);
        assert_eq!(x.tdeg(), 3);
        assert_eq!(Monomial::one().wdeg(), 0);
    }

    #[test]
    fn mul_and_div() {
        let a = m(&[(1, 2), (2, 1)]);
        let b = m(&[(1, 1), (3, 2)]);
        let ab = a.mul(&b);
        assert_eq!(ab, m(&[(1, 3), (2, 1), (3, 2)]));
        assert_eq!(ab.try_div(&b).unwrap(), a);
        assert_eq!(ab.try_div(&a).unwrap(), b);
        assert!(a.try_div(&b).is_none());
        assert_eq!(a.try_div(&Monomial::one()).unwrap(), a);
    }

    #[test]
    fn canonical_order_spreads_by_weight_then_total_degree_then_revlex() {
        // All of weighted degree 4: t1^4 > t2^2 > t1*t3 > t4.
        let t1_4 = m(&[(1, 4)]);
        let t2_2 = m(&[(2, 2)]);
        let t1t3 = m(&[(1, 1), (3, 1)]);
        let t4 = m(&[(4, 1)]);
        assert_eq!(t1_4.canon_cmp(&t2_2), Ordering::Greater);
        assert_eq!(t2_2.canon_cmp(&t1t3), Ordering::Greater);
        assert_eq!(t1t3.canon_cmp(&t4), Ordering::Greater);
        // Weighted degree dominates everything.
        assert_eq!(t4.canon_cmp(&m(&[(1, 3)])), Ordering::Greater);
        // Equality.
        assert_eq!(t1t3.canon_cmp(&m(&[(3, 1), (1, 1)])), Ordering::Equal);
    }

    #[test]
    fn mixed_banks_compare() {
        let t = Monomial::var(VarRef::t(2), 1);
        let tp = Monomial::var(VarRef::tp(2), 1);
        // Same weighted and total degree; t'2 is the larger variable, so the
        // monomial holding it loses.
        assert_eq!(t.canon_cmp(&tp), Ordering::Greater);
    }

    #[test]
    fn exponent_lookup() {
        let a = m(&[(1, 2), (5, 7)]);
        assert_eq!(a.exponent(VarRef::t(5)), 7);
        assert_eq!(a.exponent(VarRef::t(2)), 0);
        assert_eq!(a.exponent(VarRef::tp(1)), 0);
    }
}
