//! Variable identifiers.
//!
//! Polynomials live in two infinite banks of time variables: the primary
//! bank `t1, t2, ...` and a primed bank `t'1, t'2, ...` used by two-variable
//! residue computations. Variable `t_i` carries weight `i` in the weighted
//! degree; bank membership does not affect the weight.

use std::fmt;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bank {
    T,
    TPrime,
}

impl Bank {
    pub fn json_tag(self) -> &'static str {
        match self {
            Bank::T => "t",
            Bank::TPrime => "tp",
        }
    }
}

/// A single variable: bank plus 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarRef {
    pub bank: Bank,
    pub index: u32,
}

impl VarRef {
    pub fn new(bank: Bank, index: u32) -> VarRef {
        assert!(index >= 1, "variable indices are 1-based");
        assert!(index < (1 << 30), "variable index out of range");
        VarRef { bank, index }
    }

    pub fn t(index: u32) -> VarRef {
        VarRef::new(Bank::T, index)
    }

    pub fn tp(index: u32) -> VarRef {
        VarRef::new(Bank::TPrime, index)
    }

    /// Weight of the variable in the weighted degree.
    pub fn weight(self) -> u64 {
        self.index as u64
    }

    /// Packed key preserving (bank, index) order.
    pub(crate) fn key(self) -> u32 {
        let bank_bit = match self.bank {
            Bank::T => 0u32,
            Bank::TPrime => 1 << 30,
        };
        bank_bit | self.index
    }

    pub(crate) fn from_key(key: u32) -> VarRef {
        let bank = if key & (1 << 30) != 0 {
            Bank::TPrime
        } else {
            Bank::T
        };
        VarRef {
            bank,
            index: key & ((1 << 30) - 1),
        }
    }

    /// Compact text form used in JSON, e.g. `t3` or `tp1`.
    pub fn json_name(self) -> String {
        format!("{}{}", self.bank.json_tag(), self.index)
    }

    pub fn parse_json_name(s: &str) -> Result<VarRef, Error> {
        let (bank, digits) = if let Some(rest) = s.strip_prefix("tp") {
            (Bank::TPrime, rest)
        } else if let Some(rest) = s.strip_prefix('t') {
            (Bank::T, rest)
        } else {
            return Err(Error::invalid(format!("bad variable name {s:?}")));
        };
        let index: u32 = digits
            .parse()
            .map_err(|_| Error::invalid(format!("bad variable index in {s:?}")))?;
        if index == 0 || index >= (1 << 30) {
            return Err(Error::invalid(format!("variable index out of range in {s:?}")));
        }
        Ok(VarRef { bank, index })
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bank {
            Bank::T => write!(f, "t{}", self.index),
            Bank::TPrime => write!(f, "t'{}", self.index),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_round_trip_preserves_order() {
        let vars = [
            VarRef::t(1),
            VarRef::t(2),
            VarRef::t(41),
            VarRef::tp(1),
            VarRef::tp(7),
        ];
        let mut keys: Vec<u32> = vars.iter().map(|v| v.key()).collect();
        let sorted = {
            let mut k = keys.clone();
            k.sort();
            k
        };
        assert_eq!(keys, sorted);
        keys.dedup();
        assert_eq!(keys.len(), vars.len());
        for v in vars {
            assert_eq!(VarRef::from_key(v.key()), v);
        }
    }

    #[test]
    fn json_names_round_trip() {
        for v in [VarRef::t(3), VarRef::tp(12)] {
            assert_eq!(VarRef::parse_json_name(&v.json_name()).unwrap(), v);
        }
        assert!(VarRef::parse_json_name("t0").is_err());
        assert!(VarRef::parse_json_name("x1").is_err());
        assert!(VarRef::parse_json_name("t").is_err());
    }
}
