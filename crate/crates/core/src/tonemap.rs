//! Occupancy-weighted segment tone maps and the concatenated lookup table.
//!
//! The lower segment `[0, t]` maps through
//! `x0 * (1 - w^g) + (t - x0) * c(x) * w^g` and the upper segment
//! `[t + 1, L - 1]` through `(t + 1) + (1 - w^g) + (L - 1 - t) * c(x) * w^g`,
//! where `c` is the segment CDF, `w` the fraction of occupied bins in the
//! segment and `g` the exponent picked by the optimizer. Each result is
//! rounded half away from zero and clamped to its segment's output range.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::histogram::{SegmentCdf, SegmentPdf};
use crate::image::ImagePlane;
use crate::round_level;

/// Per-segment occupancy weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentWeights {
    pub omega_l: f64,
    pub omega_u: f64,
    /// Empty bins in `[0, t]`.
    pub k_l: usize,
    /// Empty bins in `[t + 1, L - 1]`.
    pub k_u: usize,
}

/// `omega_l = 1 - k_l / t` and `omega_u = 1 - k_u / (L - 1 - t)`, clamped to `[0, 1]`.
///
/// At `t = 0` the lower ratio is undefined; a single occupied bin is then
/// treated as fully occupied (`omega_l = 1`).
pub fn segment_weights(
    lower: &SegmentPdf,
    upper: &SegmentPdf,
    t: usize,
    levels: usize,
) -> SegmentWeights {
    debug_assert_eq!((lower.lo(), lower.hi()), (0, t));
    debug_assert_eq!((upper.lo(), upper.hi()), (t + 1, levels - 1));
    let k_l = lower.empty_bins();
    let k_u = upper.empty_bins();
    let omega_l = if t == 0 {
        if k_l == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        1.0 - k_l as f64 / t as f64
    };
    let omega_u = 1.0 - k_u as f64 / (levels - 1 - t) as f64;
    SegmentWeights {
        omega_l: omega_l.clamp(0.0, 1.0),
        omega_u: omega_u.clamp(0.0, 1.0),
        k_l,
        k_u,
    }
}

/// How the constant term of the upper-segment map is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpperMapForm {
    /// `(t + 1) + (1 - w^g) + (L - 1 - t) c w^g`
    #[default]
    AsPrinted,
    /// `(t + 1)(1 - w^g) + (L - 1 - t) c w^g`, mirroring the lower map's anchor term.
    Symmetric,
}

/// A contiguous run of LUT entries starting at input level `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMap {
    pub start: usize,
    pub values: Vec<u8>,
}

impl PartialMap {
    /// Last input level covered.
    pub fn end(&self) -> usize {
        self.start + self.values.len() - 1
    }
}

fn check_gamma(gamma: f64) {
    assert!(
        gamma > 0.0 && gamma <= 1.0,
        "gamma must lie in (0, 1], got {gamma}"
    );
}

/// Tone map for `[0, t]`.
///
/// # Panics
///
/// If `gamma` is outside `(0, 1]`, `x0 > t`, or `cdf` does not span `[0, t]`.
pub fn build_lower_map(cdf: &SegmentCdf, omega: f64, gamma: f64, x0: usize, t: usize) -> PartialMap {
    check_gamma(gamma);
    assert!(x0 <= t, "anchor level {x0} lies above threshold {t}");
    assert_eq!((cdf.lo(), cdf.hi()), (0, t), "lower CDF must span [0, t]");

    let weight = omega.powf(gamma);
    let anchor = x0 as f64 * (1.0 - weight);
    let span = (t - x0) as f64;
    let values = cdf
        .values()
        .iter()
        .map(|&c| round_level(anchor + span * c * weight).clamp(0.0, t as f64) as u8)
        .collect();
    PartialMap { start: 0, values }
}

/// Tone map for `[t + 1, levels - 1]`.
///
/// # Panics
///
/// If `gamma` is outside `(0, 1]` or `cdf` does not span `[t + 1, levels - 1]`.
pub fn build_upper_map(
    cdf: &SegmentCdf,
    omega: f64,
    gamma: f64,
    t: usize,
    levels: usize,
    form: UpperMapForm,
) -> PartialMap {
    check_gamma(gamma);
    assert_eq!(
        (cdf.lo(), cdf.hi()),
        (t + 1, levels - 1),
        "upper CDF must span [t + 1, L - 1]"
    );

    let weight = omega.powf(gamma);
    let base = (t + 1) as f64;
    let anchor = match form {
        UpperMapForm::AsPrinted => base + (1.0 - weight),
        UpperMapForm::Symmetric => base * (1.0 - weight),
    };
    let span = (levels - 1 - t) as f64;
    let top = (levels - 1) as f64;
    let values = cdf
        .values()
        .iter()
        .map(|&c| round_level(anchor + span * c * weight).clamp(base, top) as u8)
        .collect();
    PartialMap {
        start: t + 1,
        values,
    }
}

/// A complete lookup table over all input levels.
#[derive(Debug, Clone, PartialEq)]
pub struct ToneCurve {
    lut: Vec<u8>,
    gamma: Option<f64>,
    threshold: Option<usize>,
}

impl ToneCurve {
    pub fn identity(levels: usize) -> Self {
        Self {
            lut: (0..levels).map(|x| x as u8).collect(),
            gamma: None,
            threshold: None,
        }
    }

    pub fn lut(&self) -> &[u8] {
        &self.lut
    }

    pub fn levels(&self) -> usize {
        self.lut.len()
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    pub fn threshold(&self) -> Option<usize> {
        self.threshold
    }

    pub fn map(&self, x: u8) -> u8 {
        self.lut[usize::from(x)]
    }

    pub fn is_identity(&self) -> bool {
        self.lut.iter().enumerate().all(|(x, &y)| x == usize::from(y))
    }

    pub fn is_monotone(&self) -> bool {
        self.lut.windows(2).all(|w| w[0] <= w[1])
    }

    /// Writes `input,output` rows under a header line, LF-terminated.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "input,output")?;
        for (x, y) in self.lut.iter().enumerate() {
            writeln!(out, "{x},{y}")?;
        }
        Ok(())
    }
}

/// Joins the segment maps and forces the result to be non-decreasing.
pub fn concat_maps(
    lower: &PartialMap,
    upper: &PartialMap,
    gamma: f64,
    t: usize,
    levels: usize,
) -> Result<ToneCurve> {
    let gap = || Error::DomainGap { last: levels - 1 };
    if lower.values.is_empty() || upper.values.is_empty() {
        return Err(gap());
    }
    if lower.start != 0 || lower.end() != t || upper.start != t + 1 || upper.end() != levels - 1 {
        return Err(gap());
    }
    let mut lut: Vec<u8> = lower.values.iter().chain(&upper.values).copied().collect();
    for x in 1..lut.len() {
        lut[x] = lut[x].max(lut[x - 1]);
    }
    Ok(ToneCurve {
        lut,
        gamma: Some(gamma),
        threshold: Some(t),
    })
}

pub fn apply_curve(plane: &ImagePlane, curve: &ToneCurve) -> ImagePlane {
    assert_eq!(
        curve.levels(),
        plane.levels(),
        "curve and plane level counts differ"
    );
    plane.with_data(plane.data().iter().map(|&x| curve.map(x)).collect())
}
