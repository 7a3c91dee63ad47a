//! Building spectrally null constrained sets from verified seeds.
//!
//! One output code interleaves P seed codes with a fixed gap vector:
//! each row is `0^{n_1} | b_1 c_1 | 0^{n_2} | ... | b_P c_P | 0^{n_{P+1}}`,
//! where the `c_i` are matching rows of P seed codes and the `b_i` are
//! scalars from one vector of an orthogonal family. Grouping an (M, L)
//! seed into M/P groups of P and running every scalar vector over every
//! group yields M codes of shape (M, PL + n) that form a complete
//! complementary code again, with exactly n zeros embedded per row.
//!
//! Running the same build over several permuted orderings of the seed
//! produces a family of sets; when the permutations have disjoint
//! residue classes, any two sets stay uncorrelated on every shift
//! within the seed length plus the smallest interior gap.

use crate::code::{Code, CodeFamily, CodeSet, FamilyProvenance, Sequence};
use crate::error::{Error, Result};
use crate::mos::{MosFamily, mos_generate};
use crate::partition::{GapPartition, make_partition};
use crate::perm::{Permutation, admission_failure, search_perm_family};
use crate::recipe::{PartitionChoice, PermChoice, Recipe};
use crate::seed::seed_ccc;
use crate::verify::verify_ccc;

use crate::alphabet::Entry;

/// Concatenates matching rows of `codes`, scaled by `scalars`, with the
/// partition's zero gaps interleaved. All codes must share one shape;
/// scalar count and block count must both equal the code count.
pub fn r_operator(
    codes: &[Code],
    scalars: &Sequence,
    partition: &GapPartition,
) -> Result<Code> {
    let Some(first) = codes.first() else {
        return Err(Error::Empty { what: "block list" });
    };
    let blocks = codes.len();
    let (rows, len) = (first.num_rows(), first.seq_len());
    for (i, code) in codes.iter().enumerate() {
        if code.num_rows() != rows || code.seq_len() != len {
            return Err(Error::shape(format!(
                "block {i} is {}x{}, expected {rows}x{len}",
                code.num_rows(),
                code.seq_len()
            )));
        }
    }
    if scalars.len() != blocks {
        return Err(Error::shape(format!(
            "{} scalars cannot weight {blocks} blocks",
            scalars.len()
        )));
    }
    if let Some(index) = (0..blocks).find(|&i| scalars[i].is_zero()) {
        return Err(Error::NonUnimodularScalar { index });
    }
    if partition.blocks() != blocks {
        return Err(Error::WrongGapCount {
            expected: blocks + 1,
            blocks,
            got: partition.gaps().len(),
        });
    }

    let gaps = partition.gaps();
    let out_len = blocks * len + partition.total();
    let out_rows = (0..rows)
        .map(|m| {
            let mut row = Vec::with_capacity(out_len);
            for (i, code) in codes.iter().enumerate() {
                row.extend(std::iter::repeat_n(Entry::Zero, gaps[i]));
                row.extend(code.rows()[m].entries().iter().map(|&e| scalars[i] * e));
            }
            row.extend(std::iter::repeat_n(Entry::Zero, gaps[blocks]));
            Sequence::new(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Code::new(out_rows)
}

fn checked_seed(seed: &CodeSet, blocks: usize) -> Result<()> {
    if blocks == 0 || !seed.num_codes().is_multiple_of(blocks) {
        return Err(Error::IndivisibleGroup {
            codes: seed.num_codes(),
            blocks,
        });
    }
    let report = verify_ccc(seed, seed.tolerance());
    if !report.verdict {
        let detail = report
            .violations
            .first()
            .map_or_else(|| "verification failed".into(), ToString::to_string);
        return Err(Error::SeedRejected {
            spec: "in-memory seed".into(),
            detail,
        });
    }
    Ok(())
}

fn assemble(seed: &CodeSet, mos: &MosFamily, partition: &GapPartition) -> Result<CodeSet> {
    let blocks = mos.order();
    let codes = (0..seed.num_codes())
        .map(|t| {
            let (group, mu) = (t / blocks, t % blocks);
            let block_codes = &seed.codes()[group * blocks..(group + 1) * blocks];
            r_operator(block_codes, mos.vector(mu), partition)
        })
        .collect::<Result<Vec<_>>>()?;
    CodeSet::new(codes, seed.alphabet().promote(mos.alphabet()))
}

/// Builds one spectrally null constrained set from a verified seed.
/// Output code `t` weights seed group `t / P` with scalar vector
/// `t % P`. The seed is re-verified; a failed seed is rejected rather
/// than silently propagated.
pub fn build_snc_ccc(
    seed: &CodeSet,
    mos: &MosFamily,
    partition: &GapPartition,
) -> Result<CodeSet> {
    if partition.blocks() != mos.order() {
        return Err(Error::WrongGapCount {
            expected: mos.order() + 1,
            blocks: mos.order(),
            got: partition.gaps().len(),
        });
    }
    checked_seed(seed, mos.order())?;
    assemble(seed, mos, partition)
}

/// Builds one set per permutation, each from the reordered seed, all
/// sharing the scalar family and partition. The permutation family
/// must have pairwise disjoint residue classes; aligned-collision
/// freedom is additionally demanded when `require_14` is set.
pub fn build_multiple_snc_ccc(
    seed: &CodeSet,
    mos: &MosFamily,
    partition: &GapPartition,
    perms: &[Permutation],
    strict_mu: bool,
    require_14: bool,
) -> Result<CodeFamily> {
    let blocks = mos.order();
    if partition.blocks() != blocks {
        return Err(Error::WrongGapCount {
            expected: blocks + 1,
            blocks,
            got: partition.gaps().len(),
        });
    }
    checked_seed(seed, blocks)?;
    if let Some(detail) =
        admission_failure(perms, seed.num_codes(), blocks, strict_mu, require_14)?
    {
        return Err(Error::PermFamilyRejected { detail });
    }
    let sets = perms
        .iter()
        .map(|perm| {
            let reordered = (1..=seed.num_codes())
                .map(|pos| seed.code(perm.apply(pos) - 1).clone())
                .collect();
            // Reordering preserves the seed property, so assembly
            // needs no re-verification.
            let permuted = CodeSet::new(reordered, seed.alphabet())?;
            assemble(&permuted, mos, partition)
        })
        .collect::<Result<Vec<_>>>()?;
    CodeFamily::new(sets)
}

/// What a recipe produced: one set, or a family of them.
#[derive(Clone, PartialEq, Debug)]
pub enum Generated {
    Set(CodeSet),
    Family(CodeFamily),
}

/// Runs a recipe end to end: resolve and verify the seed, settle the
/// partition, generate the scalar family, settle the permutations, and
/// build. Families come back carrying provenance that reproduces them.
pub fn generate(recipe: &Recipe) -> Result<Generated> {
    let seed = seed_ccc(&recipe.seed)?;
    let blocks = recipe.blocks;
    // Partition feasibility is judged before seed compatibility so an
    // impossible gap budget is reported as such even when the block
    // count also fails to divide the seed.
    let partition = match &recipe.partition {
        PartitionChoice::Explicit(gaps) => {
            let p = GapPartition::new(gaps.clone())?;
            if p.blocks() != blocks {
                return Err(Error::WrongGapCount {
                    expected: blocks + 1,
                    blocks,
                    got: gaps.len(),
                });
            }
            p
        }
        PartitionChoice::Strategy { total, strategy } => {
            make_partition(*total, blocks, strategy, seed.seq_len())?
        }
    };
    if blocks == 0 || !seed.num_codes().is_multiple_of(blocks) {
        return Err(Error::IndivisibleGroup {
            codes: seed.num_codes(),
            blocks,
        });
    }
    let mos = mos_generate(blocks, &recipe.mos)?;

    let Some(choice) = &recipe.perms else {
        return Ok(Generated::Set(build_snc_ccc(&seed, &mos, &partition)?));
    };
    let perms = match choice {
        PermChoice::Explicit(images) => images
            .iter()
            .map(|image| Permutation::new(image.clone()))
            .collect::<Result<Vec<_>>>()?,
        PermChoice::Search { seed: search_seed } => search_perm_family(
            seed.num_codes(),
            blocks,
            recipe.require_14,
            *search_seed,
            recipe.strict_mu,
        )?,
    };
    let family = build_multiple_snc_ccc(
        &seed,
        &mos,
        &partition,
        &perms,
        recipe.strict_mu,
        recipe.require_14,
    )?;
    let provenance = FamilyProvenance {
        recipe: recipe.clone(),
        seed_len: seed.seq_len(),
        partition,
        perms: perms.iter().map(|p| p.image().to_vec()).collect(),
    };
    Ok(Generated::Family(family.with_provenance(provenance)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::corr::{CorrelationMode, code_xcorr};

    fn gap(gaps: &[usize]) -> GapPartition {
        GapPartition::new(gaps.to_vec()).unwrap()
    }

    #[test]
    fn rows_interleave_scaled_blocks_and_gaps() {
        let a = Code::from_signs(&["+-", "++"]).unwrap();
        let b = Code::from_signs(&["--", "+-"]).unwrap();
        let scalars = Sequence::from_signs("+-").unwrap();
        let out = r_operator(&[a, b], &scalars, &gap(&[1, 2, 0])).unwrap();
        assert_eq!((out.num_rows(), out.seq_len()), (2, 7));
        assert_eq!(out.rows()[0], Sequence::from_signs("0+-00++").unwrap());
        assert_eq!(out.rows()[1], Sequence::from_signs("0++00-+").unwrap());
    }

    #[test]
    fn r_operator_rejects_mismatched_inputs() {
        let a = Code::from_signs(&["+-"]).unwrap();
        let b = Code::from_signs(&["+-+"]).unwrap();
        let two = Sequence::from_signs("++").unwrap();
        assert!(r_operator(&[a.clone(), b], &two, &gap(&[0, 0, 0])).is_err());
        assert!(r_operator(&[], &two, &gap(&[0, 0])).is_err());
        assert!(matches!(
            r_operator(&[a.clone(), a.clone()], &Sequence::from_signs("+").unwrap(), &gap(&[0, 0, 0])),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            r_operator(&[a.clone(), a.clone()], &Sequence::from_signs("+0").unwrap(), &gap(&[0, 0, 0])),
            Err(Error::NonUnimodularScalar { index: 1 })
        ));
        assert!(matches!(
            r_operator(&[a.clone(), a.clone()], &two, &gap(&[0, 0])),
            Err(Error::WrongGapCount { .. })
        ));
    }

    #[test]
    fn built_sets_keep_the_seed_property() {
        let seed = seed_ccc("hadamard:2").unwrap();
        let mos = mos_generate(2, "hadamard").unwrap();
        let set = build_snc_ccc(&seed, &mos, &gap(&[1, 0, 2])).unwrap();
        assert_eq!((set.num_codes(), set.code_rows(), set.seq_len()), (2, 2, 5));
        assert_eq!(set.uniform_zero_count(), Some(6));

        let report = crate::verify::verify_ccc(&set, set.tolerance());
        assert!(report.verdict, "violations: {:?}", report.violations);
        // Peak is rows * length - zeros = 2*5 - 3 per row pair.
        let peak = code_xcorr(set.code(0), set.code(0), 0, CorrelationMode::Aperiodic).unwrap();
        assert!(peak.matches_real(4, 0.0));
    }

    #[test]
    fn group_and_scalar_indices_interleave() {
        // With M = 4, P = 2: codes 0 and 1 use seed group {0, 1}, codes
        // 2 and 3 use group {2, 3}; odd codes take the alternating
        // scalar vector.
        let seed = seed_ccc("hadamard:4").unwrap();
        let mos = mos_generate(2, "hadamard").unwrap();
        let set = build_snc_ccc(&seed, &mos, &gap(&[0, 0, 0])).unwrap();
        let h = |k: usize| seed.code(k).clone();
        let plus = Sequence::from_signs("++").unwrap();
        let minus = Sequence::from_signs("+-").unwrap();
        let expect0 = r_operator(&[h(0), h(1)], &plus, &gap(&[0, 0, 0])).unwrap();
        let expect3 = r_operator(&[h(2), h(3)], &minus, &gap(&[0, 0, 0])).unwrap();
        assert_eq!(set.code(0), &expect0);
        assert_eq!(set.code(3), &expect3);
    }

    #[test]
    fn block_count_must_divide_the_seed() {
        let seed = seed_ccc("example1").unwrap();
        let mos = mos_generate(8, "hadamard").unwrap();
        let err = build_snc_ccc(&seed, &mos, &gap(&[0; 9])).unwrap_err();
        assert!(matches!(
            err,
            Error::IndivisibleGroup {
                codes: 4,
                blocks: 8
            }
        ));
    }

    #[test]
    fn broken_seeds_are_rejected() {
        let c = Code::from_signs(&["++", "++"]).unwrap();
        let not_ccc = CodeSet::new(vec![c.clone(), c], Alphabet::Ternary).unwrap();
        let mos = mos_generate(2, "hadamard").unwrap();
        let err = build_snc_ccc(&not_ccc, &mos, &gap(&[0, 0, 0])).unwrap_err();
        assert!(matches!(err, Error::SeedRejected { .. }));
    }

    #[test]
    fn families_demand_disjoint_classes() {
        let seed = seed_ccc("hadamard:4").unwrap();
        let mos = mos_generate(2, "hadamard").unwrap();
        let identity2 = vec![Permutation::identity(4), Permutation::identity(4)];
        let err = build_multiple_snc_ccc(&seed, &mos, &gap(&[0, 1, 0]), &identity2, true, false)
            .unwrap_err();
        assert!(matches!(err, Error::PermFamilyRejected { .. }));

        let good = vec![
            Permutation::identity(4),
            Permutation::new(vec![2, 1, 4, 3]).unwrap(),
        ];
        let fam =
            build_multiple_snc_ccc(&seed, &mos, &gap(&[0, 1, 0]), &good, true, false).unwrap();
        assert_eq!(fam.num_sets(), 2);
        assert_eq!(fam.set(0).seq_len(), 3);
    }

    #[test]
    fn generate_runs_recipes_end_to_end() {
        let recipe = Recipe {
            seed: "example1".into(),
            blocks: 2,
            partition: PartitionChoice::Explicit(vec![0, 3, 0]),
            mos: "hadamard".into(),
            perms: None,
            require_14: false,
            strict_mu: true,
        };
        let Generated::Set(set) = generate(&recipe).unwrap() else {
            panic!("expected a single set");
        };
        assert_eq!((set.num_codes(), set.code_rows(), set.seq_len()), (4, 4, 9));

        let family_recipe = Recipe {
            perms: Some(PermChoice::Search { seed: 0 }),
            ..recipe
        };
        let Generated::Family(fam) = generate(&family_recipe).unwrap() else {
            panic!("expected a family");
        };
        assert_eq!(fam.num_sets(), 2);
        let prov = fam.provenance().unwrap();
        assert_eq!(prov.seed_len, 3);
        assert_eq!(prov.perms, vec![vec![1, 2, 3, 4], vec![2, 1, 4, 3]]);
    }
}
