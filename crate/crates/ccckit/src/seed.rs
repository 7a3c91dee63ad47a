//! Seed code sets: the verified complete complementary codes every
//! construction starts from.
//!
//! A seed selector is resolved against a registry of sources: the
//! built-in worked example, Sylvester-derived sets of any power-of-two
//! order, and finally document paths. Whatever the source, the set is
//! re-verified before release; a broken seed never reaches a builder.

use std::path::Path;
use std::sync::LazyLock;

use crate::alphabet::{Alphabet, Entry};
use crate::code::{Code, CodeSet, Sequence};
use crate::error::{Error, Result};
use crate::format;
use crate::registry::{Registry, Strategy};
use crate::verify::verify_ccc;

/// Loads the code set a selector describes. Verification happens in
/// [`seed_ccc`], not here.
pub trait SeedSource: Strategy {
    fn load(&self, selector: &str) -> Result<CodeSet>;
}

/// The worked 4-code ternary example: four 4x3 codes with one zero per
/// row position pattern, peak 12.
struct Example1;

const EXAMPLE1_CODES: [[&str; 4]; 4] = [
    ["+++", "++-", "++-", "-+-"],
    ["+-+", "++-", "--+", "+++"],
    ["+--", "+++", "-+-", "+--"],
    ["+--", "+-+", "+++", "-++"],
];

impl Strategy for Example1 {
    fn name(&self) -> &'static str {
        "example1"
    }
}

impl SeedSource for Example1 {
    fn load(&self, _selector: &str) -> Result<CodeSet> {
        let codes = EXAMPLE1_CODES
            .iter()
            .map(|rows| Code::from_signs(rows))
            .collect::<Result<Vec<_>>>()?;
        CodeSet::new(codes, Alphabet::Ternary)
    }
}

/// Sylvester columns as an (M, 1) set: code k holds column k of the
/// order-M Hadamard matrix, one symbol per row. Selector `hadamard:M`.
struct HadamardColumns;

impl Strategy for HadamardColumns {
    fn name(&self) -> &'static str {
        "hadamard"
    }

    fn claims(&self, selector: &str) -> bool {
        selector == "hadamard" || selector.starts_with("hadamard:")
    }
}

impl SeedSource for HadamardColumns {
    fn load(&self, selector: &str) -> Result<CodeSet> {
        let Some(arg) = selector.strip_prefix("hadamard:") else {
            return Err(Error::parse(
                format!("seed selector {selector:?}"),
                "expected hadamard:M with M a power of two",
            ));
        };
        let order: usize = arg.parse().map_err(|_| {
            Error::parse(
                format!("seed selector {selector:?}"),
                format!("{arg:?} is not a code count"),
            )
        })?;
        if order == 0 || !order.is_power_of_two() {
            return Err(Error::Unsupported {
                detail: format!("hadamard seeds exist only for powers of two, not {order}"),
            });
        }
        let codes = (0..order)
            .map(|k| {
                let rows = (0..order)
                    .map(|j| {
                        let sign = if (j & k).count_ones().is_multiple_of(2) {
                            Entry::ONE
                        } else {
                            Entry::MINUS_ONE
                        };
                        Sequence::new(vec![sign])
                    })
                    .collect::<Result<Vec<_>>>()?;
                Code::new(rows)
            })
            .collect::<Result<Vec<_>>>()?;
        CodeSet::new(codes, Alphabet::Ternary)
    }
}

/// Catch-all source treating the selector as a document path.
struct FileSeed;

impl Strategy for FileSeed {
    fn name(&self) -> &'static str {
        "file"
    }

    fn claims(&self, _selector: &str) -> bool {
        true
    }
}

impl SeedSource for FileSeed {
    fn load(&self, selector: &str) -> Result<CodeSet> {
        let path = Path::new(selector);
        if !path.exists() {
            return Err(Error::Unsupported {
                detail: format!(
                    "seed selector {selector:?} is neither a built-in seed nor an \
                     existing file; built-ins: example1, hadamard:M"
                ),
            });
        }
        format::load_codeset(path)
    }
}

static SOURCES: LazyLock<Registry<dyn SeedSource + Send + Sync>> = LazyLock::new(|| {
    let mut r: Registry<dyn SeedSource + Send + Sync> = Registry::new();
    r.register(Box::new(Example1));
    r.register(Box::new(HadamardColumns));
    // The path source claims everything, so it stays last.
    r.register(Box::new(FileSeed));
    r
});

/// The registry of built-in seed sources.
pub fn seed_sources() -> &'static Registry<dyn SeedSource + Send + Sync> {
    &SOURCES
}

/// Resolves a seed selector, loads the set, and verifies complete
/// complementarity before releasing it.
pub fn seed_ccc(selector: &str) -> Result<CodeSet> {
    // The final source claims every selector, so resolution cannot miss.
    let source = SOURCES.resolve(selector).expect("catch-all seed source");
    let set = source.load(selector)?;
    let report = verify_ccc(&set, set.tolerance());
    if !report.verdict {
        let detail = report
            .violations
            .first()
            .map_or_else(|| "verification failed".into(), ToString::to_string);
        return Err(Error::SeedRejected {
            spec: selector.into(),
            detail,
        });
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_is_a_verified_seed() {
        let set = seed_ccc("example1").unwrap();
        assert_eq!(
            (set.num_codes(), set.code_rows(), set.seq_len()),
            (4, 4, 3)
        );
        assert_eq!(set.alphabet(), Alphabet::Ternary);
        assert_eq!(set.uniform_zero_count(), Some(0));
    }

    #[test]
    fn hadamard_columns_scale_by_powers_of_two() {
        let h2 = seed_ccc("hadamard:2").unwrap();
        assert_eq!((h2.num_codes(), h2.code_rows(), h2.seq_len()), (2, 2, 1));
        assert_eq!(h2.code(1).rows()[0][0], Entry::ONE);
        assert_eq!(h2.code(1).rows()[1][0], Entry::MINUS_ONE);

        assert!(seed_ccc("hadamard:1").is_ok());
        assert!(seed_ccc("hadamard:4").is_ok());
        assert!(matches!(
            seed_ccc("hadamard:3"),
            Err(Error::Unsupported { .. })
        ));
        assert!(matches!(seed_ccc("hadamard:x"), Err(Error::Parse { .. })));
        assert!(matches!(seed_ccc("hadamard"), Err(Error::Parse { .. })));
    }

    #[test]
    fn unknown_selectors_name_the_builtins() {
        let err = seed_ccc("example9").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("example1") && msg.contains("hadamard:M"), "message was: {msg}");
    }
}
