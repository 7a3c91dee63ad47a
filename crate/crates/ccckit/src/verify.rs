//! Verification sweeps and measurements over code sets and families.
//!
//! Everything here is exhaustive rather than sampled: a verdict of
//! true means every code pair was checked at every shift the property
//! constrains. Exact alphabets are compared with zero tolerance;
//! floating alphabets use the tolerance the caller or set supplies.

use crate::code::{CodeFamily, CodeSet};
use crate::corr::{CorrelationMode, code_xcorr};
use crate::error::{Error, Result};
use crate::mos::MosFamily;

/// One concrete way a property failed, pinned to where it happened.
#[derive(Clone, PartialEq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// The input's shape itself breaks the property.
    Structure { detail: String },
    /// A correlation value differed from what the property demands.
    Correlation {
        /// Present when the offending pair spans two sets of a family.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sets: Option<(usize, usize)>,
        codes: (usize, usize),
        shift: i64,
        mode: CorrelationMode,
        re: f64,
        im: f64,
        expected: f64,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Structure { detail } => write!(f, "structure: {detail}"),
            Violation::Correlation {
                sets,
                codes,
                shift,
                mode,
                re,
                im,
                expected,
            } => {
                if let Some((j1, j2)) = sets {
                    write!(f, "sets ({j1},{j2}) ")?;
                }
                write!(
                    f,
                    "codes ({},{}) shift {shift} ({mode}): got {re}{im:+}i, expected {expected}",
                    codes.0, codes.1
                )
            }
        }
    }
}

/// Quantities a sweep measured along the way.
#[derive(Clone, PartialEq, Debug, Default, serde::Serialize, serde::Deserialize)]
pub struct Measurements {
    /// Width of a verified or measured zero-correlation zone.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zone_width: Option<usize>,
    /// Zone width the construction's provenance promises.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_zone: Option<usize>,
    /// Smallest interior gap of the provenance partition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior_min: Option<usize>,
    /// Largest side-lobe magnitude overall.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_sidelobe: Option<f64>,
    /// Largest auto-correlation side-lobe magnitude.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_auto_sidelobe: Option<f64>,
    /// Largest cross-correlation magnitude.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_cross_sidelobe: Option<f64>,
    /// Largest side-lobe divided by the peak, where a peak exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized_sidelobe: Option<f64>,
}

impl Measurements {
    fn is_empty(&self) -> bool {
        self == &Measurements::default()
    }
}

/// Outcome of one verification or measurement pass.
#[derive(Clone, PartialEq, Debug, serde::Serialize, serde::Deserialize)]
pub struct VerificationReport {
    /// What was examined; callers may overwrite with a file path.
    pub subject: String,
    /// The property or measurement the pass ran.
    pub property: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<CorrelationMode>,
    pub verdict: bool,
    /// The complementarity peak the property demanded, where one does.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub peak: Option<f64>,
    /// Zeros per code, where the sweep established uniformity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<usize>,
    /// "traditional-ccc" or "snc-ccc" once complementarity verified.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<String>,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Measurements::is_empty")]
    pub measured: Measurements,
}

/// Distance of a shift from the aligned shift, respecting wraparound in
/// periodic mode.
fn shift_distance(shift: i64, len: usize, mode: CorrelationMode) -> usize {
    match mode {
        CorrelationMode::Aperiodic => shift.unsigned_abs() as usize,
        CorrelationMode::Periodic => {
            let tau = shift.rem_euclid(len as i64) as usize;
            tau.min(len - tau)
        }
    }
}

/// The shifts a sweep visits: every aperiodic lag or every periodic
/// residue.
fn mode_shifts(len: usize, mode: CorrelationMode) -> std::ops::RangeInclusive<i64> {
    let l = len as i64;
    match mode {
        CorrelationMode::Aperiodic => -(l - 1)..=(l - 1),
        CorrelationMode::Periodic => 0..=(l - 1),
    }
}

/// Checks every code pair of `set` at every shift within `zone` of
/// aligned: autos must hit `peak` at shift 0 and vanish elsewhere,
/// crosses must vanish throughout.
fn sweep_zone(
    set: &CodeSet,
    mode: CorrelationMode,
    zone: usize,
    peak: i64,
    tol: f64,
    violations: &mut Vec<Violation>,
) {
    let len = set.seq_len();
    for k1 in 0..set.num_codes() {
        for k2 in 0..set.num_codes() {
            for shift in mode_shifts(len, mode) {
                if shift_distance(shift, len, mode) >= zone {
                    continue;
                }
                // Geometry is uniform across the set, so this cannot fail.
                let v = code_xcorr(set.code(k1), set.code(k2), shift, mode).unwrap();
                let expected = if k1 == k2 && shift == 0 { peak } else { 0 };
                let ok = if expected == 0 {
                    v.is_zero(tol)
                } else {
                    v.matches_real(expected, tol)
                };
                if !ok {
                    let c = v.to_complex();
                    violations.push(Violation::Correlation {
                        sets: None,
                        codes: (k1, k2),
                        shift,
                        mode,
                        re: c.re,
                        im: c.im,
                        expected: expected as f64,
                    });
                }
            }
        }
    }
}

/// Structure checks shared by the set-level sweeps: uniform zero count,
/// and optionally squareness. Returns the zero count of code 0 as the
/// epsilon the peak target uses.
fn structural_epsilon(
    set: &CodeSet,
    require_square: bool,
    violations: &mut Vec<Violation>,
) -> usize {
    if require_square && set.num_codes() != set.code_rows() {
        violations.push(Violation::Structure {
            detail: format!(
                "complete complementarity requires as many codes as rows, got {} codes of {} rows",
                set.num_codes(),
                set.code_rows()
            ),
        });
    }
    match set.uniform_zero_count() {
        Some(eps) => eps,
        None => {
            let counts: Vec<usize> = set.codes().iter().map(|c| c.zero_count()).collect();
            violations.push(Violation::Structure {
                detail: format!("zero counts differ across codes: {counts:?}"),
            });
            set.code(0).zero_count()
        }
    }
}

/// Verifies complete complementarity: every aperiodic auto-correlation
/// is the peak `rows * length - epsilon` at shift 0 and zero elsewhere,
/// and every cross-correlation is zero everywhere. The sweep is
/// exhaustive over all code pairs and shifts.
pub fn verify_ccc(set: &CodeSet, tolerance: f64) -> VerificationReport {
    let mut violations = Vec::new();
    let epsilon = structural_epsilon(set, true, &mut violations);
    let peak = (set.code_rows() * set.seq_len() - epsilon) as i64;
    sweep_zone(
        set,
        CorrelationMode::Aperiodic,
        set.seq_len(),
        peak,
        tolerance,
        &mut violations,
    );
    let verdict = violations.is_empty();
    let classification = verdict.then(|| {
        if epsilon > 0 {
            "snc-ccc".to_string()
        } else {
            "traditional-ccc".to_string()
        }
    });
    VerificationReport {
        subject: "code-set".into(),
        property: "complete-complementarity".into(),
        mode: Some(CorrelationMode::Aperiodic),
        verdict,
        peak: Some(peak as f64),
        epsilon: Some(epsilon),
        classification,
        violations,
        measured: Measurements::default(),
    }
}

/// Verifies a zero-correlation zone of width `zone`: within the zone,
/// autos peak only at the aligned shift and crosses vanish everywhere.
/// A zone of the full sequence length is the ideal property in the
/// chosen mode.
pub fn verify_zccs(
    set: &CodeSet,
    zone: usize,
    mode: CorrelationMode,
) -> Result<VerificationReport> {
    let len = set.seq_len();
    if zone == 0 || zone > len {
        return Err(Error::ZoneOutOfRange { zone, len });
    }
    let mut violations = Vec::new();
    let epsilon = structural_epsilon(set, false, &mut violations);
    let peak = (set.code_rows() * len - epsilon) as i64;
    sweep_zone(set, mode, zone, peak, set.tolerance(), &mut violations);
    let verdict = violations.is_empty();
    Ok(VerificationReport {
        subject: "code-set".into(),
        property: "zero-correlation-zone".into(),
        mode: Some(mode),
        verdict,
        peak: Some(peak as f64),
        epsilon: Some(epsilon),
        classification: None,
        violations,
        measured: Measurements {
            zone_width: Some(zone),
            ..Measurements::default()
        },
    })
}

/// Whether the set carries a spectral null in every code: zeros are
/// present and uniformly counted.
pub fn verify_snc(set: &CodeSet) -> bool {
    set.uniform_zero_count().is_some_and(|eps| eps > 0)
}

/// Measures the inter-set zero-correlation zone of a family: the
/// largest `Z` such that every correlation between codes of different
/// sets vanishes at every shift within distance `Z` of aligned. When
/// the family carries provenance, the measured zone is compared to the
/// promised seed length plus smallest interior gap, and any shortfall
/// is reported as violations.
pub fn measure_zccz(
    family: &CodeFamily,
    mode: CorrelationMode,
) -> Result<(usize, VerificationReport)> {
    if family.num_sets() < 2 {
        return Err(Error::NotApplicable {
            detail: "inter-set zones need at least two sets".into(),
        });
    }
    let len = family.set(0).seq_len();
    let tol = family.set(0).tolerance();
    let mut zone = len;
    for j1 in 0..family.num_sets() {
        for j2 in j1 + 1..family.num_sets() {
            for k1 in 0..family.set(j1).num_codes() {
                for k2 in 0..family.set(j2).num_codes() {
                    for shift in mode_shifts(len, mode) {
                        let v = code_xcorr(
                            family.set(j1).code(k1),
                            family.set(j2).code(k2),
                            shift,
                            mode,
                        )?;
                        if !v.is_zero(tol) {
                            zone = zone.min(shift_distance(shift, len, mode));
                        }
                    }
                }
            }
        }
    }

    let interior_min = family
        .provenance()
        .and_then(|p| p.partition.interior_min());
    let predicted = family
        .provenance()
        .zip(interior_min)
        .map(|(p, lambda)| p.seed_len + lambda);
    let verdict = predicted.is_none_or(|p| zone >= p);

    let mut violations = Vec::new();
    if let Some(pred) = predicted
        && zone < pred
    {
        for j1 in 0..family.num_sets() {
            for j2 in j1 + 1..family.num_sets() {
                for k1 in 0..family.set(j1).num_codes() {
                    for k2 in 0..family.set(j2).num_codes() {
                        for shift in mode_shifts(len, mode) {
                            if shift_distance(shift, len, mode) >= pred {
                                continue;
                            }
                            let v = code_xcorr(
                                family.set(j1).code(k1),
                                family.set(j2).code(k2),
                                shift,
                                mode,
                            )?;
                            if !v.is_zero(tol) {
                                let c = v.to_complex();
                                violations.push(Violation::Correlation {
                                    sets: Some((j1, j2)),
                                    codes: (k1, k2),
                                    shift,
                                    mode,
                                    re: c.re,
                                    im: c.im,
                                    expected: 0.0,
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    let report = VerificationReport {
        subject: "code-family".into(),
        property: "inter-set-zero-zone".into(),
        mode: Some(mode),
        verdict,
        peak: None,
        epsilon: None,
        classification: None,
        violations,
        measured: Measurements {
            zone_width: Some(zone),
            predicted_zone: predicted,
            interior_min,
            ..Measurements::default()
        },
    };
    Ok((zone, report))
}

/// Worst-case side-lobe levels of a set.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct QccsDelta {
    /// max of the auto and cross levels.
    pub delta: f64,
    /// Largest auto-correlation magnitude away from the aligned shift.
    pub delta_auto: f64,
    /// Largest cross-correlation magnitude at any shift.
    pub delta_cross: f64,
}

/// Measures the side-lobe levels of `set` in `mode`. Autos scan every
/// non-aligned shift; crosses scan everything including aligned.
pub fn qccs_delta(set: &CodeSet, mode: CorrelationMode) -> QccsDelta {
    let len = set.seq_len();
    let mut delta_auto: f64 = 0.0;
    let mut delta_cross: f64 = 0.0;
    for k1 in 0..set.num_codes() {
        for k2 in k1..set.num_codes() {
            for shift in mode_shifts(len, mode) {
                if k1 == k2 && shift == 0 {
                    continue;
                }
                let v = code_xcorr(set.code(k1), set.code(k2), shift, mode).unwrap();
                let target = if k1 == k2 {
                    &mut delta_auto
                } else {
                    &mut delta_cross
                };
                *target = target.max(v.magnitude());
            }
        }
    }
    QccsDelta {
        delta: delta_auto.max(delta_cross),
        delta_auto,
        delta_cross,
    }
}

/// Wraps [`qccs_delta`] into a report, normalizing against the peak
/// when the zero count is uniform.
pub fn qccs_report(set: &CodeSet, mode: CorrelationMode) -> VerificationReport {
    let d = qccs_delta(set, mode);
    let normalized = set.uniform_zero_count().map(|eps| {
        let peak = (set.code_rows() * set.seq_len() - eps) as f64;
        d.delta / peak
    });
    VerificationReport {
        subject: "code-set".into(),
        property: "side-lobe-levels".into(),
        mode: Some(mode),
        verdict: true,
        peak: None,
        epsilon: set.uniform_zero_count(),
        classification: None,
        violations: Vec::new(),
        measured: Measurements {
            max_sidelobe: Some(d.delta),
            max_auto_sidelobe: Some(d.delta_auto),
            max_cross_sidelobe: Some(d.delta_cross),
            normalized_sidelobe: normalized,
            ..Measurements::default()
        },
    }
}

/// Re-verifies mutual orthogonality of a scalar family.
pub fn verify_mos(family: &MosFamily) -> VerificationReport {
    let tol = family.alphabet().tolerance(family.order() as f64);
    let mut violations = Vec::new();
    for i in 0..family.order() {
        for j in i + 1..family.order() {
            // Vectors share a length by construction.
            let v = crate::corr::acf_aperiodic(family.vector(i), family.vector(j), 0).unwrap();
            if !v.is_zero(tol) {
                let c = v.to_complex();
                violations.push(Violation::Correlation {
                    sets: None,
                    codes: (i, j),
                    shift: 0,
                    mode: CorrelationMode::Aperiodic,
                    re: c.re,
                    im: c.im,
                    expected: 0.0,
                });
            }
        }
    }
    let verdict = violations.is_empty();
    VerificationReport {
        subject: "scalar-family".into(),
        property: "mutual-orthogonality".into(),
        mode: None,
        verdict,
        peak: None,
        epsilon: None,
        classification: None,
        violations,
        measured: Measurements::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::code::Code;

    fn golay_set() -> CodeSet {
        // Two complementary pairs forming a (2, 2)-CCC.
        let a = Code::from_signs(&["++", "+-"]).unwrap();
        let b = Code::from_signs(&["+-", "++"]).unwrap();
        CodeSet::new(vec![a, b], Alphabet::Ternary).unwrap()
    }

    #[test]
    fn complete_complementarity_verifies_exactly() {
        let set = golay_set();
        let report = verify_ccc(&set, 0.0);
        assert!(report.verdict);
        assert_eq!(report.peak, Some(4.0));
        assert_eq!(report.epsilon, Some(0));
        assert_eq!(report.classification.as_deref(), Some("traditional-ccc"));
        assert!(report.violations.is_empty());
    }

    #[test]
    fn a_single_flip_breaks_the_verdict() {
        let a = Code::from_signs(&["++", "+-"]).unwrap();
        let b = Code::from_signs(&["+-", "+-"]).unwrap();
        let set = CodeSet::new(vec![a, b], Alphabet::Ternary).unwrap();
        let report = verify_ccc(&set, 0.0);
        assert!(!report.verdict);
        assert!(report.classification.is_none());
        assert!(
            report
                .violations
                .iter()
                .any(|v| matches!(v, Violation::Correlation { .. }))
        );
    }

    #[test]
    fn non_square_sets_are_flagged_structurally() {
        let a = Code::from_signs(&["++", "+-"]).unwrap();
        let set = CodeSet::new(vec![a], Alphabet::Ternary).unwrap();
        let report = verify_ccc(&set, 0.0);
        assert!(!report.verdict);
        assert!(
            report
                .violations
                .iter()
                .any(|v| matches!(v, Violation::Structure { .. }))
        );
    }

    #[test]
    fn uneven_zero_counts_are_flagged_structurally() {
        let a = Code::from_signs(&["+0", "+-"]).unwrap();
        let b = Code::from_signs(&["+-", "++"]).unwrap();
        let set = CodeSet::new(vec![a, b], Alphabet::Ternary).unwrap();
        let report = verify_ccc(&set, 0.0);
        assert!(!report.verdict);
        assert!(
            report
                .violations
                .iter()
                .any(|v| matches!(v, Violation::Structure { detail } if detail.contains("zero counts")))
        );
    }

    #[test]
    fn zone_bounds_are_validated() {
        let set = golay_set();
        assert!(matches!(
            verify_zccs(&set, 0, CorrelationMode::Aperiodic),
            Err(Error::ZoneOutOfRange { zone: 0, len: 2 })
        ));
        assert!(matches!(
            verify_zccs(&set, 3, CorrelationMode::Aperiodic),
            Err(Error::ZoneOutOfRange { zone: 3, len: 2 })
        ));
        let full = verify_zccs(&set, 2, CorrelationMode::Aperiodic).unwrap();
        assert!(full.verdict);
        assert_eq!(full.measured.zone_width, Some(2));
    }

    #[test]
    fn periodic_full_zone_is_the_ideal_property() {
        let set = golay_set();
        let report = verify_zccs(&set, 2, CorrelationMode::Periodic).unwrap();
        assert!(report.verdict, "violations: {:?}", report.violations);
    }

    #[test]
    fn snc_requires_uniform_present_zeros() {
        assert!(!verify_snc(&golay_set()));
        let a = Code::from_signs(&["+0+", "0+-"]).unwrap();
        let b = Code::from_signs(&["+-0", "++0"]).unwrap();
        let set = CodeSet::new(vec![a, b.clone()], Alphabet::Ternary).unwrap();
        assert!(verify_snc(&set));
        let uneven = CodeSet::new(
            vec![Code::from_signs(&["+++", "+--"]).unwrap(), b],
            Alphabet::Ternary,
        )
        .unwrap();
        assert!(!verify_snc(&uneven));
    }

    #[test]
    fn sidelobe_levels_of_an_ideal_set_vanish() {
        let d = qccs_delta(&golay_set(), CorrelationMode::Aperiodic);
        assert_eq!((d.delta, d.delta_auto, d.delta_cross), (0.0, 0.0, 0.0));
        let report = qccs_report(&golay_set(), CorrelationMode::Aperiodic);
        assert_eq!(report.measured.normalized_sidelobe, Some(0.0));
    }

    #[test]
    fn sidelobe_levels_pick_up_the_worst_offender() {
        // Same code twice: cross-correlation at shift 0 equals the peak 4.
        let a = Code::from_signs(&["++", "+-"]).unwrap();
        let set = CodeSet::new(vec![a.clone(), a], Alphabet::Ternary).unwrap();
        let d = qccs_delta(&set, CorrelationMode::Aperiodic);
        assert_eq!(d.delta_cross, 4.0);
        assert_eq!(d.delta_auto, 0.0);
        assert_eq!(d.delta, 4.0);
    }

    #[test]
    fn scalar_families_re_verify() {
        let fam = crate::mos::mos_generate(4, "hadamard").unwrap();
        let report = verify_mos(&fam);
        assert!(report.verdict);
        let dft = crate::mos::mos_generate(5, "dft").unwrap();
        assert!(verify_mos(&dft).verdict);
    }
}
