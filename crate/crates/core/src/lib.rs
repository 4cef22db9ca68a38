//! Exact-arithmetic Heckman-Opdam and Jack polynomials for root systems of
//! type A, B and BC (and products thereof), together with the Cherednik
//! operators acting on trigonometric polynomials, the Helgason-Johnson
//! boundedness region, and the BC-to-A limit transition at lattice spectral
//! points.
//!
//! All polynomial coefficients are arbitrary-precision rationals; floating
//! point enters only at evaluation time (complex exponentials, convergence
//! tables, and the floating Gamma diagnostics).

pub mod cherednik;
pub mod gamma;
pub mod hopoly;
pub mod jack;
pub mod limits;
pub mod rational;
pub mod rootsys;
pub mod spectra;
pub mod trigpoly;
pub mod verify;

pub use rational::Rat;
pub use rootsys::{AffineWord, Family, Multiplicity, Point, RootSystem, Weight};
pub use trigpoly::TrigPoly;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero vector has no coroot")]
    ZeroVector,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("affine reflection needs an irreducible system")]
    NotIrreducible,
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("weight is fixed by s_{0}")]
    FixedWeight(usize),
    #[error("zero denominator in recursion constant for letter {0}")]
    ZeroDenominator(usize),
    #[error("negative multiplicity not admitted here")]
    NegativeMultiplicity,
    #[error("weight must be dominant")]
    NotDominant,
    #[error("exponent must be nonnegative")]
    NegativeExponent,
    #[error("pole in a Gamma argument")]
    GammaPole,
    #[error("evaluation overflow: |<w, Re z>| > 700")]
    EvalOverflow,
    #[error("zero normalizer for kernel at weight {0:?}")]
    ZeroNormalizer(Vec<i64>),
    #[error("word is not reduced or point is not regular dominant")]
    NotReducedWord,
    #[error("invalid limit schedule: {0}")]
    InvalidSchedule(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
