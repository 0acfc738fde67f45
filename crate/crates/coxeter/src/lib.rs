//! Exact-arithmetic toolkit for Coxeter groups.
//!
//! The crate computes root systems of Coxeter groups in the geometric
//! representation over the real field Q(√2,√3,√5), which covers every bond
//! label in {2,3,4,5,6,∞}. On top of that it provides reflection subgroups
//! with canonical simple systems, and the move groupoid used to analyse the
//! centralizer of a parabolic subgroup: the perpendicular reflection
//! subgroup, its simple roots, and the loop subgroup acting on them.
//!
//! All arithmetic is exact; there is no floating point on any logic path.

pub mod centralizer;
pub mod decomp;
pub mod field;
pub mod graph;
pub mod geom;
pub mod refsub;

use graph::GenSet;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported bond label m = {m}; supported labels are 2..=6 and inf")]
    UnsupportedLabel { m: u64 },
    #[error("division by zero in field arithmetic")]
    DivisionByZero,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("subset {subset} does not generate a finite group")]
    NotFiniteType { subset: GenSet },
    #[error("subset {subset} is not connected in the Coxeter graph")]
    NotConnected { subset: GenSet },
    #[error("invalid root: {0}")]
    InvalidRoot(String),
    #[error("inner product {value} does not match -cos(pi/m) for any supported m")]
    UnsupportedOrder { value: String },
    #[error("no move from {tuple} with generator {generator}: the relevant component is not of finite type")]
    MoveUnavailable { tuple: String, generator: usize },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
