//! Declarative build recipes.
//!
//! A recipe captures every choice a construction makes: the seed, the
//! block count, how the zero budget is partitioned, which scalar
//! family weights the blocks, and how seed codes are permuted across
//! sets. Feeding the same recipe back through [`crate::generate`]
//! reproduces the same output byte for byte, so documents embed their
//! recipe as provenance.

fn default_seed() -> String {
    "example1".into()
}

fn default_mos() -> String {
    "hadamard".into()
}

fn default_strict_mu() -> bool {
    true
}

/// The zero-budget partition, either spelled out or delegated to a
/// named strategy.
#[derive(Clone, PartialEq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum PartitionChoice {
    /// Explicit gap vector, P + 1 entries.
    Explicit(Vec<usize>),
    /// A strategy resolves `total` zeros at build time.
    Strategy { total: usize, strategy: String },
}

/// How the family's permutations are chosen.
#[derive(Clone, PartialEq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum PermChoice {
    /// Explicit 1-based image vectors, one per set.
    Explicit(Vec<Vec<usize>>),
    /// Search for an admissible family; `seed` steers exploration
    /// order, with 0 meaning lexicographic.
    Search { seed: u64 },
}

/// A complete, reproducible description of one construction run.
#[derive(Clone, PartialEq, Debug, serde::Serialize, serde::Deserialize)]
pub struct Recipe {
    /// Seed selector: a built-in name or a document path.
    #[serde(default = "default_seed")]
    pub seed: String,
    /// P, the number of seed codes concatenated per output code.
    pub blocks: usize,
    pub partition: PartitionChoice,
    /// Scalar family generator name.
    #[serde(default = "default_mos")]
    pub mos: String,
    /// Absent for a single-set build.
    #[serde(default)]
    pub perms: Option<PermChoice>,
    /// Demand aligned-collision freedom of the permutation family.
    #[serde(default)]
    pub require_14: bool,
    /// Check class disjointness on residues 1..=P-1 only (true) or on
    /// all of 1..=P (false).
    #[serde(default = "default_strict_mu")]
    pub strict_mu: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_fields_take_defaults() {
        let r: Recipe =
            serde_json::from_str(r#"{"blocks": 2, "partition": [0, 3, 0]}"#).unwrap();
        assert_eq!(r.seed, "example1");
        assert_eq!(r.mos, "hadamard");
        assert_eq!(r.perms, None);
        assert!(!r.require_14);
        assert!(r.strict_mu);
        assert_eq!(r.partition, PartitionChoice::Explicit(vec![0, 3, 0]));
    }

    #[test]
    fn partition_and_perm_choices_round_trip() {
        let r = Recipe {
            seed: "hadamard:4".into(),
            blocks: 2,
            partition: PartitionChoice::Strategy {
                total: 5,
                strategy: "distinct".into(),
            },
            mos: "dft".into(),
            perms: Some(PermChoice::Search { seed: 9 }),
            require_14: true,
            strict_mu: false,
        };
        let text = serde_json::to_string(&r).unwrap();
        let back: Recipe = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);

        let explicit: Recipe = serde_json::from_str(
            r#"{"blocks": 2, "partition": {"total": 4, "strategy": "even"},
                "perms": [[1, 2, 3, 4], [2, 1, 4, 3]]}"#,
        )
        .unwrap();
        assert_eq!(
            explicit.perms,
            Some(PermChoice::Explicit(vec![
                vec![1, 2, 3, 4],
                vec![2, 1, 4, 3]
            ]))
        );
    }
}
