//! Crate-wide error type.

use thiserror::Error;

use crate::qseries::QIndex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },

    #[error("coefficient vector for order {order} must have length {expected}, got {got}")]
    BadCoeffLength {
        order: u64,
        expected: usize,
        got: usize,
    },

    #[error("embedding index {k} is not coprime to order {order}")]
    NonCoprimeIndex { k: i64, order: u64 },

    #[error("order {from} does not divide order {to}")]
    OrderNotDivisible { from: u64, to: u64 },

    #[error("element of Q(zeta_{from}) does not lie in the subfield Q(zeta_{to})")]
    NotInSubfield { from: u64, to: u64 },

    #[error("field norm did not reduce to a rational integer")]
    NormNotRational,

    #[error("series scale mismatch: {left} vs {right}")]
    ScaleMismatch { left: u32, right: u32 },

    #[error("series root order mismatch: {left} vs {right}")]
    RootOrderMismatch { left: u64, right: u64 },

    #[error("index {idx:?} lies beyond the truncation bound {prec}")]
    IndexOutOfRange { idx: QIndex, prec: i64 },

    #[error("index {idx:?} violates positive semi-definiteness")]
    IndexNotPsd { idx: QIndex },

    #[error("coarsening by {factor} hit the off-lattice index {idx:?}")]
    OffLattice { idx: QIndex, factor: i64 },

    #[error("invalid theta characteristic entry {value}; entries must be 0 or 1")]
    BadCharacteristic { value: i64 },

    #[error("invalid theta dilation {value}; must be 1 or 2")]
    BadDilation { value: i64 },

    #[error("empty theta factor list")]
    EmptyFactorList,

    #[error("malformed factor line {line}: {text:?}")]
    BadFactorLine { line: usize, text: String },

    #[error("Hecke operators require an odd prime, got {p}")]
    BadHeckePrime { p: i64 },

    #[error("series must be at scale 4 for the slash action, got {scale}")]
    SlashScale { scale: u32 },

    #[error("precision {prec} too small for T({p}); need at least {needed}")]
    InsufficientPrecision { p: i64, prec: i64, needed: i64 },

    #[error("off-lattice residue survived the T({p}) coset sum at index {idx:?}; rep normalization is inconsistent")]
    HeckeResidue { p: i64, idx: QIndex },

    #[error("coefficient failed to project to root order 8 after the T({p}) coset sum")]
    HeckeProjection { p: i64 },

    #[error("symplectic normalization lift failed for a coset representative (p={p}); this indicates a bug")]
    NormalizeLift { p: i64 },

    #[error("p = 2 is excluded: the conjecture is asserted only up to the Euler factors at 2")]
    PrimeTwoExcluded,

    #[error("lambda infinity-type search returned no survivors; finite part or type family is wrong")]
    LambdaSearchEmpty,

    #[error("generator has even norm; lambda is only defined on ideals coprime to 2")]
    EvenNormGenerator,

    #[error("no generator of norm {norm} found for p={p} with coefficients bounded by {bound}; retry with a larger search box")]
    NormSearchExhausted { p: i64, norm: String, bound: i64 },

    #[error("calibration failed: {reason}")]
    Calibration { reason: String },

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
