//! Aperiodic and periodic cross-correlation of sequences and codes.
//!
//! The aperiodic correlation of `a` against `b` at shift `tau` slides
//! `a` over `b` and sums `a[i + tau] * conj(b[i])` where the windows
//! overlap; it vanishes for `|tau| >= L`. The periodic correlation
//! wraps instead of sliding: it sums `a[(i + tau) mod L] * conj(b[i])`
//! over a full period, and is evaluated here by that direct cyclic sum
//! rather than by folding two aperiodic values together, so the
//! identity between the two routes stays testable.
//!
//! Sums over Gaussian-integer sequences are accumulated exactly in
//! `Complex<i64>`; everything else falls back to floats.

use num_complex::{Complex, Complex64};

use crate::code::{Code, Sequence};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationMode {
    Aperiodic,
    Periodic,
}

impl std::fmt::Display for CorrelationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CorrelationMode::Aperiodic => f.write_str("aperiodic"),
            CorrelationMode::Periodic => f.write_str("periodic"),
        }
    }
}

/// A correlation sum. `Exact` carries a Gaussian integer and admits
/// zero-tolerance comparison; `Approx` carries a float and must be
/// compared against a tolerance.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum CorrelationValue {
    Exact(Complex<i64>),
    Approx(Complex64),
}

impl CorrelationValue {
    pub const ZERO: CorrelationValue = CorrelationValue::Exact(Complex::new(0, 0));

    pub fn to_complex(self) -> Complex64 {
        match self {
            CorrelationValue::Exact(v) => Complex64::new(v.re as f64, v.im as f64),
            CorrelationValue::Approx(v) => v,
        }
    }

    pub fn as_exact(self) -> Option<Complex<i64>> {
        match self {
            CorrelationValue::Exact(v) => Some(v),
            CorrelationValue::Approx(_) => None,
        }
    }

    pub fn magnitude(self) -> f64 {
        self.to_complex().norm()
    }

    /// Whether the value is zero within `tol`. Exact values ignore the
    /// tolerance entirely.
    pub fn is_zero(self, tol: f64) -> bool {
        match self {
            CorrelationValue::Exact(v) => v.re == 0 && v.im == 0,
            CorrelationValue::Approx(v) => v.norm() <= tol,
        }
    }

    /// Whether the value equals the real integer `target` within `tol`.
    pub fn matches_real(self, target: i64, tol: f64) -> bool {
        match self {
            CorrelationValue::Exact(v) => v.re == target && v.im == 0,
            CorrelationValue::Approx(v) => (v - Complex64::new(target as f64, 0.0)).norm() <= tol,
        }
    }
}

impl std::ops::Add for CorrelationValue {
    type Output = CorrelationValue;

    /// Exactness survives only when both addends are exact.
    fn add(self, rhs: CorrelationValue) -> CorrelationValue {
        use CorrelationValue::*;
        match (self, rhs) {
            (Exact(a), Exact(b)) => Exact(a + b),
            (a, b) => Approx(a.to_complex() + b.to_complex()),
        }
    }
}

impl std::fmt::Display for CorrelationValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CorrelationValue::Exact(v) => write!(f, "{}{:+}i", v.re, v.im),
            CorrelationValue::Approx(v) => write!(f, "{}{:+}i", v.re, v.im),
        }
    }
}

fn check_lengths(a: &Sequence, b: &Sequence) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.len())
}

/// Sums `a[ai + j] * conj(b[bi + j])` for `j in 0..count`, exactly when
/// both sequences are Gaussian.
fn window_sum(a: &Sequence, b: &Sequence, ai: usize, bi: usize, count: usize) -> CorrelationValue {
    if a.is_gaussian() && b.is_gaussian() {
        let mut acc = Complex::new(0i64, 0i64);
        for j in 0..count {
            let (ar, aim) = a[ai + j].as_gaussian().unwrap();
            let (br, bim) = b[bi + j].as_gaussian().unwrap();
            acc += Complex::new(ar, aim) * Complex::new(br, bim).conj();
        }
        CorrelationValue::Exact(acc)
    } else {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..count {
            acc += a[ai + j].value() * b[bi + j].value().conj();
        }
        CorrelationValue::Approx(acc)
    }
}

/// Aperiodic cross-correlation of equal-length sequences at `shift`.
/// Shifts at or beyond the length give an exact zero.
pub fn acf_aperiodic(a: &Sequence, b: &Sequence, shift: i64) -> Result<CorrelationValue> {
    let len = check_lengths(a, b)? as i64;
    if shift.abs() >= len {
        return Ok(CorrelationValue::ZERO);
    }
    let (ai, bi, count) = if shift >= 0 {
        (shift, 0, len - shift)
    } else {
        (0, -shift, len + shift)
    };
    Ok(window_sum(a, b, ai as usize, bi as usize, count as usize))
}

/// Periodic cross-correlation over one full period, by direct cyclic
/// summation. The shift is reduced mod L first, so every shift is valid.
pub fn acf_periodic(a: &Sequence, b: &Sequence, shift: i64) -> Result<CorrelationValue> {
    let len = check_lengths(a, b)?;
    let tau = shift.rem_euclid(len as i64) as usize;
    let exact = a.is_gaussian() && b.is_gaussian();
    if exact {
        let mut acc = Complex::new(0i64, 0i64);
        for i in 0..len {
            let (ar, aim) = a[(i + tau) % len].as_gaussian().unwrap();
            let (br, bim) = b[i].as_gaussian().unwrap();
            acc += Complex::new(ar, aim) * Complex::new(br, bim).conj();
        }
        Ok(CorrelationValue::Exact(acc))
    } else {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..len {
            acc += a[(i + tau) % len].value() * b[i].value().conj();
        }
        Ok(CorrelationValue::Approx(acc))
    }
}

/// Code-level correlation: the sum of rowwise correlations of two
/// same-shaped codes.
pub fn code_xcorr(a: &Code, b: &Code, shift: i64, mode: CorrelationMode) -> Result<CorrelationValue> {
    if a.num_rows() != b.num_rows() || a.seq_len() != b.seq_len() {
        return Err(Error::shape(format!(
            "codes are {}x{} and {}x{}",
            a.num_rows(),
            a.seq_len(),
            b.num_rows(),
            b.seq_len()
        )));
    }
    let mut acc = CorrelationValue::ZERO;
    for (ra, rb) in a.rows().iter().zip(b.rows()) {
        let term = match mode {
            CorrelationMode::Aperiodic => acf_aperiodic(ra, rb, shift)?,
            CorrelationMode::Periodic => acf_periodic(ra, rb, shift)?,
        };
        acc = acc + term;
    }
    Ok(acc)
}

/// A full sweep of code-level correlation values: shifts
/// `-(L-1)..=(L-1)` aperiodically, `0..=(L-1)` periodically.
#[derive(Clone, Debug)]
pub struct CorrelationProfile {
    mode: CorrelationMode,
    min_shift: i64,
    values: Vec<CorrelationValue>,
}

impl CorrelationProfile {
    pub fn mode(&self) -> CorrelationMode {
        self.mode
    }

    pub fn num_points(&self) -> usize {
        self.values.len()
    }

    /// `(shift, value)` pairs in ascending shift order.
    pub fn points(&self) -> impl Iterator<Item = (i64, CorrelationValue)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.min_shift + i as i64, v))
    }

    pub fn value_at(&self, shift: i64) -> Option<CorrelationValue> {
        let idx = shift.checked_sub(self.min_shift)?;
        usize::try_from(idx).ok().and_then(|i| self.values.get(i)).copied()
    }

    /// The largest magnitude over all points except `exclude`.
    pub fn max_magnitude_excluding(&self, exclude: Option<i64>) -> f64 {
        self.points()
            .filter(|&(s, _)| Some(s) != exclude)
            .map(|(_, v)| v.magnitude())
            .fold(0.0, f64::max)
    }
}

/// Sweeps the code-level correlation of `a` against `b` over every
/// shift meaningful in `mode`.
pub fn correlation_profile(a: &Code, b: &Code, mode: CorrelationMode) -> Result<CorrelationProfile> {
    let len = a.seq_len() as i64;
    let shifts: std::ops::RangeInclusive<i64> = match mode {
        CorrelationMode::Aperiodic => -(len - 1)..=(len - 1),
        CorrelationMode::Periodic => 0..=(len - 1),
    };
    let min_shift = *shifts.start();
    let values = shifts
        .map(|s| code_xcorr(a, b, s, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrelationProfile {
        mode,
        min_shift,
        values,
    })
}
