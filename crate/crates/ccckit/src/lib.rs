//! Toolkit for complete complementary codes with embedded spectral
//! nulls.
//!
//! A complete complementary code is a square set of multi-row codes
//! whose code-level correlations are ideal: each code's rowwise
//! auto-correlations sum to a single peak, and any two codes sum to
//! zero at every shift. This crate builds such sets with exact zero
//! symbols placed at chosen positions, trading a slightly reduced peak
//! for nulls usable as spectral or temporal guards, and extends the
//! construction to families of sets that stay uncorrelated over a wide
//! window of shifts.
//!
//! The main entry points:
//!
//! - [`seed_ccc`] resolves and verifies a starting set,
//! - [`build_snc_ccc`] and [`build_multiple_snc_ccc`] run the
//!   gap-interleaved construction, [`generate`] drives it from a
//!   declarative [`Recipe`],
//! - [`verify_ccc`], [`verify_zccs`], [`measure_zccz`], and
//!   [`qccs_delta`] check and measure the results exhaustively,
//! - [`format`] reads and writes the JSON and CSV document formats.
//!
//! Correlation arithmetic stays in exact Gaussian integers whenever the
//! alphabet allows it, so verification verdicts on ternary and
//! quaternary codes carry no floating-point caveats.

pub mod alphabet;
pub mod code;
pub mod construct;
pub mod corr;
pub mod error;
pub mod format;
pub mod mos;
pub mod partition;
pub mod perm;
pub mod recipe;
pub mod registry;
pub mod seed;
pub mod verify;

pub use alphabet::{Alphabet, Entry};
pub use code::{Code, CodeFamily, CodeSet, FamilyProvenance, Sequence};
pub use construct::{Generated, build_multiple_snc_ccc, build_snc_ccc, generate, r_operator};
pub use corr::{
    CorrelationMode, CorrelationProfile, CorrelationValue, acf_aperiodic, acf_periodic,
    code_xcorr, correlation_profile,
};
pub use error::{Error, Result};
pub use mos::{MosFamily, mos_generate};
pub use partition::{GapPartition, make_partition};
pub use perm::{Permutation, check_perm_family, search_perm_family};
pub use recipe::{PartitionChoice, PermChoice, Recipe};
pub use seed::seed_ccc;
pub use verify::{
    Measurements, QccsDelta, VerificationReport, Violation, measure_zccz, qccs_delta,
    qccs_report, verify_ccc, verify_mos, verify_snc, verify_zccs,
};
