//! End-to-end enhancement: threshold, weights, gamma sweep, HSV recomposition.

use std::time::Instant;

use crate::color::{hsv_to_rgb, rgb_to_hsv};
use crate::eme::{compute_eme, EmeParams};
use crate::error::{Error, Result};
use crate::histogram::{compute_histogram, segment_cdf, split_pdf, SegmentCdf};
use crate::image::{dequantize_channel, quantize_channel, Hsv, HsvImage, ImagePlane, RgbImage, LEVELS};
use crate::threshold::{find_threshold, EntropyParams};
use crate::tonemap::{
    apply_curve, build_lower_map, build_upper_map, concat_maps, segment_weights, SegmentWeights,
    ToneCurve, UpperMapForm,
};

/// Candidate exponents for the segment weights, strictly increasing in `(0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaGrid(Vec<f64>);

impl GammaGrid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("gamma grid is empty".into()));
        }
        if let Some(g) = values.iter().find(|&&g| !(g > 0.0 && g <= 1.0)) {
            return Err(Error::InvalidParameter(format!(
                "gamma values must lie in (0, 1], got {g}"
            )));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "gamma grid must be strictly increasing".into(),
            ));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

impl Default for GammaGrid {
    /// `{0.1, 0.2, ..., 1.0}`
    fn default() -> Self {
        Self((1..=10).map(|k| f64::from(k) / 10.0).collect())
    }
}

/// Which HSV channels are equalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChannelPolicy {
    ValueOnly,
    #[default]
    SaturationAndValue,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnhanceConfig {
    pub gamma_grid: GammaGrid,
    pub entropy: EntropyParams,
    pub eme: EmeParams,
    pub channels: ChannelPolicy,
    pub upper_map: UpperMapForm,
}

impl EnhanceConfig {
    pub fn validate(&self) -> Result<()> {
        self.entropy.validate()?;
        self.eme.validate()
    }
}

/// Everything the gamma sweep needs from the threshold stage.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentArtifacts {
    pub t: usize,
    pub weights: SegmentWeights,
    pub lower_cdf: SegmentCdf,
    pub upper_cdf: SegmentCdf,
    /// Darkest occupied level, the anchor of the lower map.
    pub x0: usize,
}

impl SegmentArtifacts {
    /// Runs histogram, threshold, split, CDFs and weights for one plane.
    pub fn analyze(plane: &ImagePlane, entropy: &EntropyParams) -> Result<Self> {
        let h = compute_histogram(plane);
        let t = find_threshold(&h, entropy)?.t;
        let (lower, upper) = split_pdf(&h, t)?;
        let lower_cdf = segment_cdf(&lower)?;
        let upper_cdf = segment_cdf(&upper)?;
        let weights = segment_weights(&lower, &upper, t, h.levels());
        Ok(Self {
            t,
            weights,
            lower_cdf,
            upper_cdf,
            x0: h.min_occupied(),
        })
    }

    pub fn curve(&self, gamma: f64, levels: usize, form: UpperMapForm) -> Result<ToneCurve> {
        let lower = build_lower_map(&self.lower_cdf, self.weights.omega_l, gamma, self.x0, self.t);
        let upper = build_upper_map(&self.upper_cdf, self.weights.omega_u, gamma, self.t, levels, form);
        concat_maps(&lower, &upper, gamma, self.t, levels)
    }
}

/// Result of the greedy gamma sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSearch {
    pub gamma: f64,
    pub eme: f64,
    pub curve: ToneCurve,
    pub plane: ImagePlane,
    /// `(gamma, EME)` for every grid point, in grid order.
    pub sweep: Vec<(f64, f64)>,
}

/// Evaluates every grid point and keeps the one with the highest EME; ties go
/// to the smaller gamma.
pub fn optimize_gamma(
    plane: &ImagePlane,
    artifacts: &SegmentArtifacts,
    grid: &GammaGrid,
    eme: &EmeParams,
    form: UpperMapForm,
) -> Result<GammaSearch> {
    let mut sweep = Vec::with_capacity(grid.values().len());
    let mut best: Option<GammaSearch> = None;
    for &gamma in grid.values() {
        let curve = artifacts.curve(gamma, plane.levels(), form)?;
        let enhanced = apply_curve(plane, &curve);
        let score = compute_eme(&enhanced, eme).value;
        sweep.push((gamma, score));
        if best.as_ref().is_none_or(|b| score > b.eme) {
            best = Some(GammaSearch {
                gamma,
                eme: score,
                curve,
                plane: enhanced,
                sweep: Vec::new(),
            });
        }
    }
    let mut best = best.expect("gamma grid is non-empty");
    best.sweep = sweep;
    Ok(best)
}

/// Per-channel diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelReport {
    /// The channel was passed through unchanged (flat or near-flat histogram).
    pub fallback: bool,
    pub threshold: Option<usize>,
    pub weights: Option<SegmentWeights>,
    pub x0: Option<usize>,
    pub gamma: Option<f64>,
    pub eme_before: f64,
    pub eme_after: f64,
    pub sweep: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelOutcome {
    pub plane: ImagePlane,
    pub curve: ToneCurve,
    pub report: ChannelReport,
}

/// Enhances one quantized channel. Planes without an admissible threshold, or
/// whose split leaves an empty segment, come back unchanged with
/// `report.fallback` set.
pub fn enhance_plane(plane: &ImagePlane, cfg: &EnhanceConfig) -> Result<ChannelOutcome> {
    cfg.validate()?;
    let eme_before = compute_eme(plane, &cfg.eme).value;

    let artifacts = match SegmentArtifacts::analyze(plane, &cfg.entropy) {
        Ok(a) => a,
        Err(Error::NoValidThreshold | Error::EmptySegment { .. }) => {
            return Ok(ChannelOutcome {
                plane: plane.clone(),
                curve: ToneCurve::identity(plane.levels()),
                report: ChannelReport {
                    fallback: true,
                    threshold: None,
                    weights: None,
                    x0: None,
                    gamma: None,
                    eme_before,
                    eme_after: eme_before,
                    sweep: Vec::new(),
                },
            })
        }
        Err(e) => return Err(e),
    };

    let search = optimize_gamma(plane, &artifacts, &cfg.gamma_grid, &cfg.eme, cfg.upper_map)?;
    Ok(ChannelOutcome {
        report: ChannelReport {
            fallback: false,
            threshold: Some(artifacts.t),
            weights: Some(artifacts.weights),
            x0: Some(artifacts.x0),
            gamma: Some(search.gamma),
            eme_before,
            eme_after: search.eme,
            sweep: search.sweep,
        },
        plane: search.plane,
        curve: search.curve,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnhanceReport {
    pub value: ChannelReport,
    /// `None` when the policy leaves saturation untouched.
    pub saturation: Option<ChannelReport>,
    pub wall_time_ms: f64,
}

/// Quantized V channel of an HSV image.
pub fn value_plane(hsv: &HsvImage) -> ImagePlane {
    quantize_channel(&hsv.value(), hsv.width(), hsv.height(), LEVELS).expect("V lies in [0, 1]")
}

/// Quantized S channel of an HSV image.
pub fn saturation_plane(hsv: &HsvImage) -> ImagePlane {
    quantize_channel(&hsv.saturation(), hsv.width(), hsv.height(), LEVELS)
        .expect("S lies in [0, 1]")
}

fn enhance_channel(
    original: Vec<f64>,
    plane: ImagePlane,
    cfg: &EnhanceConfig,
) -> Result<(Vec<f64>, ChannelReport)> {
    let outcome = enhance_plane(&plane, cfg)?;
    let values = if outcome.report.fallback {
        original
    } else {
        dequantize_channel(&outcome.plane)
    };
    Ok((values, outcome.report))
}

/// Enhances V (and S, per policy) of an HSV image. Hue is copied through untouched,
/// and a channel that falls back keeps its exact original values.
pub fn enhance_hsv(hsv: &HsvImage, cfg: &EnhanceConfig) -> Result<(HsvImage, ChannelReport, Option<ChannelReport>)> {
    let (v, v_report) = enhance_channel(hsv.value(), value_plane(hsv), cfg)?;
    let (s, s_report) = match cfg.channels {
        ChannelPolicy::ValueOnly => (hsv.saturation(), None),
        ChannelPolicy::SaturationAndValue => {
            let (s, report) = enhance_channel(hsv.saturation(), saturation_plane(hsv), cfg)?;
            (s, Some(report))
        }
    };
    let pixels = hsv
        .pixels()
        .iter()
        .zip(s.into_iter().zip(v))
        .map(|(p, (s, v))| Hsv { h: p.h, s, v })
        .collect();
    let out = HsvImage::new(hsv.width(), hsv.height(), pixels)?;
    Ok((out, v_report, s_report))
}

/// Full color pipeline: RGB -> HSV, per-channel enhancement, HSV -> RGB.
pub fn enhance_image(img: &RgbImage, cfg: &EnhanceConfig) -> Result<(RgbImage, EnhanceReport)> {
    let start = Instant::now();
    let hsv = rgb_to_hsv(img);
    let (enhanced, value, saturation) = enhance_hsv(&hsv, cfg)?;
    let untouched = value.fallback && saturation.as_ref().is_none_or(|s| s.fallback);
    let out = if untouched {
        img.clone()
    } else {
        hsv_to_rgb(&enhanced)
    };
    Ok((
        out,
        EnhanceReport {
            value,
            saturation,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    ))
}
