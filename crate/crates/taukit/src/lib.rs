//! Exact construction and verification of polynomial tau functions.
//!
//! The crate builds tau functions of the KP hierarchy (Jacobi-Trudi and
//! Giambelli determinants with shifted constants), of the CKP hierarchy
//! (symmetry-constrained Giambelli determinants), of its n-reduced variants,
//! and of the BKP hierarchy (Pfaffians), all over exact rational arithmetic.
//! Bilinear residue identities, symmetry constraints, and the KdV and
//! Kaup-Kupershmidt equations can be checked exactly; every check reports a
//! polynomial residual that is zero precisely when the check passes.

pub mod error;
pub mod rat;
pub mod vars;
pub mod monomial;
pub mod poly;
pub mod laurent;
pub mod ratfunc;
pub mod linalg;
pub mod partitions;
pub mod schur;
pub mod seeds;
pub mod tau;
mod zerotest;
pub mod bilinear;
pub mod wave;
pub mod pde;
pub mod jsonio;
pub mod latex;

pub use bilinear::{CheckReport, CheckStats, Identity};
pub use error::Error;
pub use laurent::LaurentPoly;
pub use monomial::Monomial;
pub use partitions::{FrobeniusCoords, Partition};
pub use pde::OddRestriction;
pub use poly::Poly;
pub use rat::Rat;
pub use ratfunc::RatFunc;
pub use schur::ArgSpec;
pub use seeds::SeedSpec;
pub use tau::{ConstMatrix, Constants, Family, TauLabel, TauPoly};
pub use vars::{Bank, VarRef};
pub use wave::{WaveCheck, WaveRoute, WaveSymbol};
