//! Exact-arithmetic invariant computations for Dolgachev surfaces `S(p,q)`.
//!
//! The crate computes the two leading coefficients `a(n)`, `b(n)` of the
//! degree-four Spin-polynomial `q_S(n) = a(n)Q^2 + b(n)Qk^2 + c(n)k^4` of a
//! simply connected Dolgachev surface with multiple fibers of coprime
//! multiplicities `p` and `q`, entirely over the rationals (no floating
//! point anywhere). The computation goes stratum by stratum through the
//! moduli of 1-instantons and is cross-checked against independently
//! evaluated closed forms; places where commonly printed formula variants
//! disagree with the validated working forms are collected into a
//! machine-checked errata ledger.
//!
//! Module map:
//!
//! - [`lattice`]: the rank-10 model of `H^2(S;Z)` with its intersection
//!   pairing, the distinguished classes `F`, `F_p`, `F_q`, `K_S`, `k`,
//!   transvections, and the `-E8` structure of `k^perp / rad`.
//! - [`vertical`]: cohomology dimensions of vertical line bundles and the
//!   section-count totals entering the stratum multiplicities.
//! - [`hilb2`]: the symbolic quartic intersection form on `Pic(Hilb^2 S)`
//!   and the `mu(A)^3` evaluators for the two stratum families.
//! - [`strata`]: the stratum square, its two index bijections, all
//!   per-stratum quantities, and the signed multiplicity `m(sigma,tau,n)`.
//! - [`invariant`]: assembly of `a(n)`, `b(n)`, closed-form checks, and
//!   evaluation of the symmetrized polynomial on four lattice classes.
//! - [`walls`]: wall/chamber queries in the positive cone, the Dirac index
//!   formula, and wall-effectiveness tests.
//! - [`verify`]: the identity suite tying everything together, plus the
//!   errata ledger.
//! - [`cli`], [`output`]: command-line front end and exact JSON/CSV output.

pub mod cli;
pub mod hilb2;
pub mod invariant;
pub mod lattice;
pub mod output;
pub mod rational;
pub mod strata;
pub mod vertical;
pub mod verify;
pub mod walls;

pub use lattice::{DistinguishedClasses, LatticeClass, SurfaceParams};
pub use rational::Rat;

/// Errors produced by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("multiplicities must be positive, got p = {p}, q = {q}")]
    NonPositiveMultiplicity { p: i64, q: i64 },
    #[error("d must be a positive odd integer, got {d}")]
    InvalidFiberDegree { d: i64 },
    #[error("type-2 coefficient formula needs alpha*q < beta*p or alpha*beta = 0, got alpha = {alpha}, beta = {beta}")]
    Phi2Normalization { alpha: i64, beta: i64 },
    #[error("type-2 indices must satisfy alpha, beta >= 0 and alpha*q + beta*p < p*q, got alpha = {alpha}, beta = {beta}")]
    Phi2Domain { alpha: i64, beta: i64 },
    #[error("ext^2 length twists need alpha, beta >= 0, got alpha = {alpha}, beta = {beta}")]
    NegativeTwist { alpha: i64, beta: i64 },
    #[error("{which} does not lie in the orthogonal complement of the fiber class")]
    NotInFiberPerp { which: &'static str },
    #[error("n must be >= 1, got {n}")]
    InvalidChamberParameter { n: i64 },
    #[error("class is not integral")]
    NotIntegral,
    #[error("(c1 - 2M)^2 = {square} lies outside the wall range [-8, -1]")]
    OutsideWallRange { square: i64 },
    #[error("period point must have positive self-intersection, got {square}")]
    NotInPositiveCone { square: String },
    #[error("period point lies in the opposite cone component (pairing with the fiber ray is not positive)")]
    WrongConeComponent,
    #[error("segment endpoints lie in different components of the positive cone")]
    ConeComponentMismatch,
    #[error("segment endpoint lies on the wall perpendicular to {zeta}")]
    EndpointOnWall { zeta: String },
    #[error("mu-route comparison needs A.F != 0")]
    DegenerateMuClass,
}

pub type Result<T> = std::result::Result<T, Error>;
