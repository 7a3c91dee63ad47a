//! Shared error type for every fallible operation in the crate.

use std::path::PathBuf;

/// Everything that can go wrong across construction, verification, and io.
#[derive(Debug, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    /// Correlation requires both sequences to have the same length.
    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Sequences, codes, and sets must contain at least one element.
    #[error("empty {what}")]
    Empty { what: &'static str },

    /// Codes being combined or compared must share their geometry.
    #[error("shape mismatch: {detail}")]
    ShapeMismatch { detail: String },

    /// An entry fell outside the declared alphabet.
    #[error("alphabet violation at {locus}: {detail}")]
    AlphabetViolation { locus: String, detail: String },

    /// Weighting scalars must be roots of unity, never zero.
    #[error("scalar {index} is not unimodular")]
    NonUnimodularScalar { index: usize },

    /// A gap partition for P blocks needs exactly P + 1 gaps.
    #[error("expected {expected} gaps for {blocks} blocks, got {got}")]
    WrongGapCount {
        expected: usize,
        blocks: usize,
        got: usize,
    },

    /// The block count must divide the number of seed codes evenly.
    #[error("{blocks} blocks cannot partition {codes} codes into equal groups")]
    IndivisibleGroup { codes: usize, blocks: usize },

    /// A would-be seed failed its complementarity check.
    #[error("seed {spec:?} is not a complete complementary code: {detail}")]
    SeedRejected { spec: String, detail: String },

    /// A permutation family failed the disjointness condition required
    /// for multi-set construction.
    #[error("permutation family rejected: {detail}")]
    PermFamilyRejected { detail: String },

    /// Permutation images must be a bijection on 1..=M.
    #[error("not a permutation of 1..={degree}: {detail}")]
    NotABijection { degree: usize, detail: String },

    /// The permutation search space contains no family meeting the
    /// requested conditions.
    #[error("no admissible permutation family of {count} permutations exists for M={degree}, P={blocks}")]
    SearchExhausted {
        degree: usize,
        blocks: usize,
        count: usize,
    },

    /// A partition strategy cannot meet its constraints within the budget.
    #[error("infeasible partition: {detail}")]
    Infeasible { detail: String },

    /// The request is valid but outside what this generator can produce.
    #[error("unsupported: {detail}")]
    Unsupported { detail: String },

    /// Zero-correlation zone widths must satisfy 1 <= Z <= L.
    #[error("zone width {zone} out of range for sequence length {len}")]
    ZoneOutOfRange { zone: usize, len: usize },

    /// The requested measurement is undefined for this input.
    #[error("not applicable: {detail}")]
    NotApplicable { detail: String },

    /// A document failed to parse or validate.
    #[error("parse error at {locus}: {detail}")]
    Parse { locus: String, detail: String },

    /// Filesystem failure while reading or writing a document.
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn shape(detail: impl Into<String>) -> Self {
        Error::ShapeMismatch {
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(locus: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parse {
            locus: locus.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
