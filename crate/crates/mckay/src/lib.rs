//! Exact computation of the McKay correspondence for finite subgroup
//! schemes of SL(2,K), K a field of characteristic 0 presented as a
//! subfield of a cyclotomic field.
//!
//! The crate provides:
//!
//! * [`exact`] — arithmetic in Q(zeta_m) with arbitrary-precision rational
//!   coefficients, Galois automorphisms and certified real embeddings;
//! * [`poly`] — multivariate polynomials over cyclotomic coefficients,
//!   Buchberger's algorithm and quotient-ring bases;
//! * [`groups`] — character tables of the five families of finite
//!   subgroups of SL(2,C);
//! * [`galois`] — field specifications, K-forms of the group schemes and
//!   the induced Galois action on irreducible characters;
//! * [`graphs`] — representation graphs, folding along Galois orbits and
//!   classification against the diagram catalog;
//! * [`realize`] — realizability of the subgroups over K via Hilbert
//!   symbols, conic search and witness matrix synthesis;
//! * [`toric`] — the toric minimal resolution of the A_{n-1} singularity
//!   with cluster ideals, stratification and tautological degrees.

pub mod exact;
pub mod galois;
pub mod graphs;
pub mod groups;
pub mod poly;
pub mod realize;
pub mod report;
pub mod selftest;
pub mod toric;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("{k} is not coprime to the conductor {m}")]
    NonCoprimeGalois { k: i64, m: u64 },
    #[error("element does not lie in Q(zeta_{m})")]
    NotInCyclotomic { m: u64 },
    #[error("invalid group parameter: {0}")]
    InvalidGroup(String),
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("transformed character matches no row of the table ({0})")]
    NoMatchingRow(String),
    #[error("corrupted character data: {0}")]
    CorruptedTable(String),
    #[error("graph not in the diagram catalog: {0}")]
    UnrecognizedGraph(String),
    #[error("polynomial ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid conic solution: {0}")]
    InvalidSolution(String),
    #[error("ideal does not contain the invariant maximal ideal: {0}")]
    NotOnFiber(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
