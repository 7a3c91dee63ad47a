//! Randomized invariants for the correlation kernels, the row
//! assembly operator, and the permutation-family checker.

use ccckit::{
    Code, Entry, GapPartition, Permutation, Sequence, acf_aperiodic, acf_periodic,
    check_perm_family, mos_generate, r_operator, search_perm_family,
};
use num_complex::Complex;
use proptest::prelude::*;

fn ternary_entry() -> impl Strategy<Value = Entry> {
    prop_oneof![
        Just(Entry::ONE),
        Just(Entry::MINUS_ONE),
        Just(Entry::Zero),
    ]
}

fn ternary_seq(len: usize) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(ternary_entry(), len).prop_map(|v| Sequence::new(v).unwrap())
}

fn seq_pair() -> impl Strategy<Value = (Sequence, Sequence)> {
    (1usize..24).prop_flat_map(|len| (ternary_seq(len), ternary_seq(len)))
}

fn exact(v: ccckit::CorrelationValue) -> Complex<i64> {
    v.as_exact().expect("ternary correlations stay exact")
}

proptest! {
    /// Reducing the shift into 0..L and folding the two aperiodic
    /// windows reproduces the cyclic correlation.
    #[test]
    fn periodic_folds_the_aperiodic_windows((a, b) in seq_pair(), shift in -64i64..64) {
        let len = a.len() as i64;
        let tau = shift.rem_euclid(len);
        let folded = exact(acf_aperiodic(&a, &b, tau).unwrap())
            + exact(acf_aperiodic(&a, &b, tau - len).unwrap());
        prop_assert_eq!(exact(acf_periodic(&a, &b, shift).unwrap()), folded);
    }

    #[test]
    fn swapping_arguments_conjugates_and_negates_the_shift((a, b) in seq_pair(), shift in -64i64..64) {
        let forward = exact(acf_aperiodic(&a, &b, shift).unwrap());
        let backward = exact(acf_aperiodic(&b, &a, -shift).unwrap());
        prop_assert_eq!(forward, backward.conj());

        let forward = exact(acf_periodic(&a, &b, shift).unwrap());
        let backward = exact(acf_periodic(&b, &a, -shift).unwrap());
        prop_assert_eq!(forward, backward.conj());
    }

    /// At shift zero the self-correlation counts the non-zero entries.
    #[test]
    fn zero_shift_energy_counts_nonzeros(a in (1usize..24).prop_flat_map(ternary_seq)) {
        let nonzeros = Complex::new((a.len() - a.zero_count()) as i64, 0);
        prop_assert_eq!(exact(acf_aperiodic(&a, &a, 0).unwrap()), nonzeros);
        prop_assert_eq!(exact(acf_periodic(&a, &a, 0).unwrap()), nonzeros);
    }

    /// Scaling one argument by a unimodular constant never changes
    /// correlation magnitudes.
    #[test]
    fn unimodular_scaling_preserves_magnitude((a, b) in seq_pair(), num in 0u32..4, shift in -24i64..24) {
        let scaled = a.scaled(Entry::root(num, 4));
        let before = acf_aperiodic(&a, &b, shift).unwrap();
        let after = acf_aperiodic(&scaled, &b, shift).unwrap();
        prop_assert_eq!(exact(before).norm_sqr(), exact(after).norm_sqr());
    }

    /// Ternary inputs keep the whole computation in integers, and the
    /// result is bounded by the overlap length.
    #[test]
    fn ternary_results_are_exact_and_bounded((a, b) in seq_pair(), shift in -64i64..64) {
        let v = exact(acf_aperiodic(&a, &b, shift).unwrap());
        prop_assert_eq!(v.im, 0);
        prop_assert!(v.re.abs() <= a.len() as i64);
    }

    /// Every generated vector family is mutually orthogonal and
    /// unimodular by construction; generation is deterministic.
    #[test]
    fn mos_generation_is_stable(exp in 0u32..4, p in 1usize..8) {
        let h = mos_generate(1usize << exp, "hadamard").unwrap();
        prop_assert_eq!(h.order(), 1usize << exp);
        let d1 = mos_generate(p, "dft").unwrap();
        let d2 = mos_generate(p, "dft").unwrap();
        prop_assert_eq!(d1.vectors(), d2.vectors());
    }
}

fn assembly_case()
-> impl Strategy<Value = (Vec<Code>, Sequence, Vec<usize>)> {
    (1usize..4, 1usize..5, 1usize..4).prop_flat_map(|(rows, len, blocks)| {
        (
            prop::collection::vec(
                prop::collection::vec(ternary_seq(len), rows)
                    .prop_map(|rs| Code::new(rs).unwrap()),
                blocks,
            ),
            prop::collection::vec((0u32..4).prop_map(|n| Entry::root(n, 4)), blocks)
                .prop_map(|v| Sequence::new(v).unwrap()),
            prop::collection::vec(0usize..4, blocks + 1),
        )
    })
}

proptest! {
    /// The assembled row is block scalar products separated by the
    /// requested runs of zeros, in order.
    #[test]
    fn assembled_rows_place_blocks_at_gap_offsets((codes, scalars, gaps) in assembly_case()) {
        let blocks = codes.len();
        let seq_len = codes[0].seq_len();
        let partition = GapPartition::new(gaps).unwrap();
        let out = r_operator(&codes, &scalars, &partition).unwrap();
        prop_assert_eq!(out.seq_len(), blocks * seq_len + partition.total());

        for (m, row) in out.rows().iter().enumerate() {
            let mut cursor = 0;
            for (i, code) in codes.iter().enumerate() {
                for _ in 0..partition.gaps()[i] {
                    prop_assert_eq!(row[cursor], Entry::Zero);
                    cursor += 1;
                }
                for j in 0..seq_len {
                    prop_assert_eq!(row[cursor], scalars[i] * code.rows()[m][j]);
                    cursor += 1;
                }
            }
            for _ in 0..partition.gaps()[blocks] {
                prop_assert_eq!(row[cursor], Entry::Zero);
                cursor += 1;
            }
            prop_assert_eq!(cursor, out.seq_len());
        }
    }
}

/// Quantifier-literal reimplementation of the two family conditions,
/// used as an oracle for the production checker.
fn naive_check(perms: &[Permutation], blocks: usize, strict_mu: bool) -> (bool, bool) {
    let degree = perms[0].degree();
    let groups = degree / blocks;
    let mu_hi = if strict_mu { blocks - 1 } else { blocks };

    let class_values = |perm: &Permutation, mu: usize| -> Vec<usize> {
        (0..groups).map(|i| perm.apply(i * blocks + mu)).collect()
    };
    let mut disjoint = true;
    for mu in 1..=mu_hi {
        for x in 0..perms.len() {
            for y in x + 1..perms.len() {
                let vx = class_values(&perms[x], mu);
                let vy = class_values(&perms[y], mu);
                if vx.iter().any(|v| vy.contains(v)) {
                    disjoint = false;
                }
            }
        }
    }

    let position_of = |perm: &Permutation, value: usize| -> usize {
        (1..=degree).find(|&pos| perm.apply(pos) == value).unwrap()
    };
    let mut aligned = true;
    for x in 0..perms.len() {
        for y in 0..perms.len() {
            if x == y {
                continue;
            }
            for value in 1..=degree {
                let p1 = position_of(&perms[x], value);
                let p2 = position_of(&perms[y], value);
                let mu1 = (p1 - 1) % blocks + 1;
                let mu2 = (p2 - 1) % blocks + 1;
                let lo = (1i64 - mu1 as i64).max(1 - mu2 as i64);
                let hi = ((blocks - mu1) as i64).min((blocks - mu2) as i64);
                for alpha in lo..=hi {
                    if alpha == 0 {
                        continue;
                    }
                    let q1 = (p1 as i64 + alpha) as usize;
                    let q2 = (p2 as i64 + alpha) as usize;
                    if perms[x].apply(q1) == perms[y].apply(q2) {
                        aligned = false;
                    }
                }
            }
        }
    }
    (disjoint, aligned)
}

fn family_case() -> impl Strategy<Value = (usize, usize, Vec<Permutation>)> {
    prop_oneof![
        Just((4usize, 2usize)),
        Just((4, 4)),
        Just((6, 2)),
        Just((6, 3)),
        Just((8, 2)),
        Just((8, 4)),
    ]
    .prop_flat_map(|(degree, blocks)| {
        let perm = Just((1..=degree).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|image| Permutation::new(image).unwrap());
        (
            Just(degree),
            Just(blocks),
            prop::collection::vec(perm, 2..4),
        )
    })
}

proptest! {
    #[test]
    fn family_checker_matches_the_naive_oracle(
        (degree, blocks, perms) in family_case(),
        strict_mu in any::<bool>(),
    ) {
        let got = check_perm_family(&perms, degree, blocks, strict_mu).unwrap();
        prop_assert_eq!(got, naive_check(&perms, blocks, strict_mu));
    }

    /// Search results always satisfy what they were asked for, and a
    /// fixed seed reproduces the same family.
    #[test]
    fn search_results_satisfy_their_own_conditions(
        (degree, blocks) in prop_oneof![
            Just((4usize, 2usize)),
            Just((4, 4)),
            Just((6, 2)),
            Just((8, 2)),
        ],
        require_14 in any::<bool>(),
        seed in 0u64..32,
    ) {
        match search_perm_family(degree, blocks, require_14, seed, true) {
            Ok(found) => {
                let (disjoint, aligned) =
                    check_perm_family(&found, degree, blocks, true).unwrap();
                prop_assert!(disjoint);
                prop_assert!(!require_14 || aligned);
                prop_assert_eq!(found.len(), blocks);

                let again = search_perm_family(degree, blocks, require_14, seed, true).unwrap();
                prop_assert_eq!(found, again);
            }
            Err(e) => {
                let exhausted = matches!(e, ccckit::Error::SearchExhausted { .. });
                prop_assert!(exhausted, "unexpected error: {}", e);
            }
        }
    }
}
