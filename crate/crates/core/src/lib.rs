//! Weighted histogram equalization with an entropy-of-PDF threshold.
//!
//! The enhancement pipeline splits a channel histogram at the level that
//! maximizes an entropy contrast score, equalizes the dark and bright
//! sub-histograms with curves weighted by their bin occupancy, and picks the
//! weight exponent `gamma` from a small grid by maximizing the block-based
//! EME contrast measure. Color images are processed in HSV; hue is never
//! touched.
//!
//! ```
//! use whe::{enhance_image, EnhanceConfig, RgbImage};
//!
//! let pixels = (0..64u32)
//!     .map(|i| {
//!         let v = 100 + (i % 8) as u8 * 4;
//!         [v, v / 2, v / 3]
//!     })
//!     .collect();
//! let img = RgbImage::new(8, 8, pixels).unwrap();
//! let (out, report) = enhance_image(&img, &EnhanceConfig::default()).unwrap();
//! assert_eq!(out.width(), 8);
//! assert!(report.value.eme_after >= report.value.eme_before);
//! ```

pub mod baselines;
pub mod codec;
pub mod color;
pub mod eme;
mod error;
pub mod histogram;
pub mod image;
pub mod pipeline;
pub mod scenes;
pub mod threshold;
pub mod tonemap;

pub use baselines::{clahe_lite, contrast_distort, global_he, ClaheParams, DistortionLevel};
pub use codec::{load_image, save_image};
pub use color::{hsv_to_rgb, rgb_to_hsv};
pub use eme::{block_contrast, compute_eme, EmeParams, EmeScore};
pub use error::{Error, Result};
pub use histogram::{compute_histogram, segment_cdf, split_pdf, Histogram, SegmentCdf, SegmentPdf};
pub use image::{dequantize_channel, quantize_channel, Hsv, HsvImage, ImagePlane, RgbImage, LEVELS};
pub use pipeline::{
    enhance_hsv, enhance_image, enhance_plane, optimize_gamma, ChannelOutcome, ChannelPolicy,
    ChannelReport, EnhanceConfig, EnhanceReport, GammaGrid, GammaSearch, SegmentArtifacts,
    saturation_plane, value_plane,
};
pub use threshold::{entropy_score, find_threshold, EntropyParams, ThresholdResult};
pub use tonemap::{
    apply_curve, build_lower_map, build_upper_map, concat_maps, segment_weights, PartialMap,
    SegmentWeights, ToneCurve, UpperMapForm,
};

/// Rounds half away from zero, treating values within `1e-9` of a half step
/// as exactly on it so that results do not depend on last-ulp noise.
pub(crate) fn round_level(value: f64) -> f64 {
    let halves = (value * 2.0).round();
    if (value * 2.0 - halves).abs() < 2e-9 {
        (halves / 2.0).round()
    } else {
        value.round()
    }
}
