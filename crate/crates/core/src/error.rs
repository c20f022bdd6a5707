//! Error types shared by the whole pipeline.
//!
//! Every fatal error names the pipeline stage it came from, the identity or
//! property that failed, and a minimal witness when one exists.

use thiserror::Error;

/// A witness for a failed check: which basis elements were involved and what
/// the offending value was.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct Witness {
    pub elements: Vec<String>,
    pub detail: String,
}

impl Witness {
    pub fn new(elements: &[&str], detail: impl Into<String>) -> Self {
        Witness {
            elements: elements.iter().map(|s| s.to_string()).collect(),
            detail: detail.into(),
        }
    }

    pub fn detail(detail: impl Into<String>) -> Self {
        Witness {
            elements: Vec::new(),
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.elements.is_empty() {
            write!(f, "{}", self.detail)
        } else {
            write!(f, "[{}] {}", self.elements.join(", "), self.detail)
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{stage}: not a complex, d^2 != 0: {witness}")]
    NotAComplex { stage: &'static str, witness: Witness },

    #[error("{stage}: rank at the truncation boundary cannot be certified: {witness}")]
    TruncationUnstable { stage: &'static str, witness: Witness },

    #[error("series cap mismatch: {0}")]
    CapMismatch(String),

    #[error("hochschild: ranks still moving between truncation lengths {prev} and {cur}: {witness}")]
    StabilizationFailed { prev: usize, cur: usize, witness: Witness },

    #[error("hochschild: induced operation {op} does not descend to homology: {witness}")]
    NotWellDefined { op: &'static str, witness: Witness },

    #[error("calculus: contraction by the volume class is not a chain map: {witness}")]
    NotChainMap { witness: Witness },

    #[error("calculus: contraction by the volume class is not a quasi-isomorphism: {witness}")]
    NotQuasiIso { witness: Witness },

    #[error("calculus: product does not descend to the Jacobian ring: {witness}")]
    ProductNotDescending { witness: Witness },

    #[error("calculus: trace functional induces a degenerate pairing: {witness}")]
    Degenerate { witness: Witness },

    #[error("calculus: residue pairing is not perfect on the bigraded pieces: {witness}")]
    NotPerfect { witness: Witness },

    #[error("calculus: Hodge-number property violated ({property}): {witness}")]
    HodgePropertyViolated { property: &'static str, witness: Witness },

    #[error("derham: Hodge-to-de-Rham degeneration fails ({check}): {witness}")]
    DegenerationFails { check: &'static str, witness: Witness },

    #[error("derham: no u-polynomial lift of degree <= {bound} found: {witness}")]
    LiftNotFound { bound: i64, witness: Witness },

    #[error("deformation: image of the boundary twisted by the volume class is not a contraction: {witness}")]
    NotInImage { witness: Witness },

    #[error("deformation: Maurer-Cartan obstruction is not exact at order {order}: {witness}")]
    ObstructionNonExact { order: usize, witness: Witness },

    #[error("deformation: weight homogeneity broken at order {order}: {witness}")]
    HomogeneityBroken { order: usize, witness: Witness },

    #[error("deformation: Kodaira-Spencer matrix is singular at the origin: {witness}")]
    RhoSingular { witness: Witness },

    #[error("deformation: deformed de Rham module drops rank: {witness}")]
    RankDrop { witness: Witness },

    #[error("primitive: u-window too narrow, need [{need_min}, {need_max}]")]
    WindowTooNarrow { need_min: i64, need_max: i64 },

    #[error("primitive: order-{order} linear system for the primitive form is singular: {witness}")]
    UniquenessFailure { order: usize, witness: Witness },

    #[error("primitive: condition {name} failed at order {order}: {witness}")]
    PCheckFailed { name: &'static str, order: usize, witness: Witness },

    #[error("primitive: structure tensor is not integrable: {witness}")]
    NotIntegrable { witness: Witness },

    #[error("{stage}: validation gate failed: {witness}")]
    GateFailed { stage: &'static str, witness: Witness },

    #[error("{stage}: Calabi-Yau hypothesis failed ({check}): {witness}")]
    CyHypothesis { stage: &'static str, check: &'static str, witness: Witness },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("{stage}: {message}")]
    Invalid { stage: &'static str, message: String },
}

impl Error {
    /// Exit code class: 1 validation gate, 2 degeneration / CY hypothesis,
    /// 3 internal truncation instability.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegenerationFails { .. }
            | Error::CyHypothesis { .. }
            | Error::NotQuasiIso { .. }
            | Error::Degenerate { .. }
            | Error::NotPerfect { .. }
            | Error::HodgePropertyViolated { .. }
            | Error::RankDrop { .. }
            | Error::ObstructionNonExact { .. } => 2,
            Error::TruncationUnstable { .. }
            | Error::StabilizationFailed { .. }
            | Error::WindowTooNarrow { .. }
            | Error::CapMismatch(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
