//! Numerical geometry of lines and subspaces of R³.
//!
//! Everything here is generic over a [`Scalar`] (implemented for `f32` and
//! `f64`); the rational side of the θ ladder uses [`num_rational::Ratio`].

mod ladder;
mod lemma;
pub mod sample;
mod subspace;
mod vector;
mod witness;

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};
use serde::Serialize;
use thiserror::Error;

pub use ladder::{c, f, f_inv, f_inv_exact, theta, ThetaLadder};
pub use lemma::{dot_closed_form, lemma_certificate, lemma_extrema, lemma_min_closed_form, v_phi, LemmaCertificate};
pub use subspace::{d_l, d_pi, max_deviation, proj_metric, sasaki_project, Line3, Subspace3};
pub use vector::{UnitVec3, Vec3};
pub use witness::{chain_witness, witness_step, ChainLink, ChainWitness, WitnessStep};

/// Default agreement required between numeric and closed-form lemma minima.
pub const CERTIFICATE_TOL: f64 = 1e-6;
/// Default tolerance on the angle reached by a single witness step.
pub const WITNESS_TOL: f64 = 1e-9;
/// Default tolerance on the final orthogonality of a witness chain.
pub const CHAIN_TOL: f64 = 1e-7;
/// Slack allowed on the `d(A, B) ≥ θ_n` precondition.
pub const PRECONDITION_SLACK: f64 = 1e-12;

pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + Serialize + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

pub(crate) fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("representable constant")
}

/// Norms at or below this are treated as zero.
pub(crate) fn zero_tol<T: Scalar>() -> T {
    T::epsilon() * lit(1e3)
}

pub(crate) fn unit_tol<T: Scalar>() -> T {
    T::epsilon() * lit(64.0)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("argument {value} outside the domain {domain}")]
    DomainError { value: f64, domain: &'static str },
    #[error("certificate failed at theta = {theta}: {detail}")]
    CertificateFailure { theta: f64, detail: String },
    #[error("precondition failed: {0}")]
    PreconditionError(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("operand of dimension 0")]
    DimensionError,
    #[error("basis is not orthonormal")]
    NotOrthonormal,
}

impl GeomError {
    pub fn kind(&self) -> &'static str {
        match self {
            GeomError::DomainError { .. } => "domain_error",
            GeomError::CertificateFailure { .. } => "certificate_failure",
            GeomError::PreconditionError(_) => "precondition_error",
            GeomError::DegenerateInput(_) => "degenerate_input",
            GeomError::DimensionError => "dimension_error",
            GeomError::NotOrthonormal => "not_orthonormal",
        }
    }
}

/// An angle in radians; metric values are clamped to `[0, π/2]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Angle<T>(T);

impl<T: Scalar> Angle<T> {
    pub fn new(radians: T) -> Self {
        Angle(radians)
    }

    /// `arccos` of a cosine clamped into `[0, 1]`.
    pub fn from_cos(c: T) -> Self {
        Angle(c.max(T::zero()).min(T::one()).acos())
    }

    /// `atan2(|s|, |c|)`, accurate near both `0` and `π/2`.
    pub fn from_sin_cos(s: T, c: T) -> Self {
        Angle(s.abs().atan2(c.abs()).min(T::FRAC_PI_2()))
    }

    pub fn radians(self) -> T {
        self.0
    }

    pub fn cos(self) -> T {
        self.0.cos()
    }
}
