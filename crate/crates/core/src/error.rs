use thiserror::Error;

/// Errors shared by the series algebra, interpolation and normalization layers.
#[derive(Debug, Error)]
pub enum Error {
    /// Two series with incompatible resonance order or truncation bound.
    #[error("incompatible series: {left} vs {right} for {what}")]
    Mismatch {
        what: &'static str,
        left: String,
        right: String,
    },

    /// A generator whose flow does not terminate on the truncated algebra.
    #[error("generator monomial z^{k} zbar^{l} m={m:?} has total degree {degree} < 3; its flow does not terminate under truncation")]
    NonTerminating {
        k: u32,
        l: u32,
        m: [u32; 3],
        degree: u32,
    },

    /// A nondegeneracy hypothesis failed, with the offending value attached.
    #[error("hypothesis failed: {condition} (|value| = {magnitude:.3e}, threshold = {threshold:.3e})")]
    Hypothesis {
        condition: String,
        magnitude: f64,
        threshold: f64,
    },

    #[error("series is not real-valued: coeff({k},{l},{m:?}) differs from conjugate partner by {deviation:.3e}")]
    NotReal {
        k: u32,
        l: u32,
        m: [u32; 3],
        deviation: f64,
    },

    #[error("series is not resonant for n = {n}: found monomial z^{k} zbar^{l}")]
    NotResonant { n: u32, k: u32, l: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("verification failed: max residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    Verification { residual: f64, tol: f64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
