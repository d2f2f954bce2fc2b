//! Exact arithmetic for skew-symmetrizable cluster algebras.
//!
//! The crate implements seed and Y-seed mutation over exact Laurent
//! polynomials, the principal-coefficient pattern (g-vectors and
//! F-polynomials), tropical (max-plus) evaluation, the F-invariant of a
//! pair of cluster monomials, exchange-graph enumeration for finite-type
//! inputs, and machine checks of the identities tying all of these
//! together. Everything is integer-exact: coefficients are
//! arbitrary-precision and no floating point appears anywhere.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line live in the companion `finv-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod explore;
pub mod fraction;
pub mod invariant;
pub mod matrix;
pub mod poly;
pub mod principal;
pub mod seed;
pub mod tropical;
pub mod verify;

pub use error::{Error, Result};
pub use explore::{check_separation_theorem, explore, ExchangeGraph, SeparationReport};
pub use fraction::SubtractionFreeFraction;
pub use invariant::{
    check_finv_recurrence, f_inj, f_invariant, g_recurrence_step, q_recurrence_step, rho_eval,
    sign_coherent_pair, FInvariantResult, QVector,
};
pub use matrix::{find_skew_symmetrizer, ExchangeMatrix, SkewSymmetrizer};
pub use poly::{Coeff, ExponentVector, LaurentPoly};
pub use principal::{
    ExtendedMatrix, FPolynomial, GFData, GVector, PatternCache, PrincipalSeed,
};
pub use seed::{ClusterMonomialRef, MutationSequence, Seed, YSeed};
pub use tropical::{sff_eval_tropical, tropical_eval, TropicalValue};
pub use verify::{run_suite, verify_f_exchange, SuiteConfig, SuiteName, SuiteReport};
