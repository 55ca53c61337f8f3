//! Pixel-domain types shared by every stage of the pipeline.

use crate::error::{Error, Result};
use crate::round_level;

/// Number of quantization levels used for 8-bit imagery.
pub const LEVELS: usize = 256;

/// An 8-bit RGB image stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Promotes a grayscale buffer by replicating each value to all three channels.
    pub fn from_gray(width: usize, height: usize, gray: &[u8]) -> Result<Self> {
        Self::new(width, height, gray.iter().map(|&g| [g, g, g]).collect())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        self.pixels[y * self.width + x]
    }

    pub fn is_gray(&self) -> bool {
        self.pixels.iter().all(|p| p[0] == p[1] && p[1] == p[2])
    }

    pub fn into_pixels(self) -> Vec<[u8; 3]> {
        self.pixels
    }
}

/// One HSV sample: hue in degrees `[0, 360)`, saturation and value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hsv {
    pub h: f64,
    pub s: f64,
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HsvImage {
    width: usize,
    height: usize,
    pixels: Vec<Hsv>,
}

impl HsvImage {
    pub fn new(width: usize, height: usize, pixels: Vec<Hsv>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        if let Some(p) = pixels.iter().find(|p| {
            !(0.0..360.0).contains(&p.h) || !(0.0..=1.0).contains(&p.s) || !(0.0..=1.0).contains(&p.v)
        }) {
            return Err(Error::InvalidImage(format!("HSV sample out of range: {p:?}")));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[Hsv] {
        &self.pixels
    }

    pub fn hue(&self) -> Vec<f64> {
        self.pixels.iter().map(|p| p.h).collect()
    }

    pub fn saturation(&self) -> Vec<f64> {
        self.pixels.iter().map(|p| p.s).collect()
    }

    pub fn value(&self) -> Vec<f64> {
        self.pixels.iter().map(|p| p.v).collect()
    }
}

/// A single quantized channel: `width * height` integer levels in `[0, levels)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ImagePlane {
    width: usize,
    height: usize,
    levels: usize,
    data: Vec<u8>,
}

impl ImagePlane {
    /// Builds a 256-level plane.
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        Self::with_levels(width, height, LEVELS, data)
    }

    /// Builds a plane with a reduced level count (`2..=256`); mostly useful for
    /// small hand-checked examples.
    pub fn with_levels(width: usize, height: usize, levels: usize, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        if !(2..=LEVELS).contains(&levels) {
            return Err(Error::InvalidParameter(format!(
                "level count must be in 2..=256, got {levels}"
            )));
        }
        if let Some(&x) = data.iter().find(|&&x| usize::from(x) >= levels) {
            return Err(Error::InvalidImage(format!(
                "level {x} exceeds level count {levels}"
            )));
        }
        Ok(Self {
            width,
            height,
            levels,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Number of pixels, `N`.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    pub fn row(&self, y: usize) -> &[u8] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn min_level(&self) -> u8 {
        self.data.iter().copied().min().unwrap_or(0)
    }

    pub fn max_level(&self) -> u8 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    /// Same geometry and level count, new samples. Callers guarantee the range.
    pub(crate) fn with_data(&self, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), self.data.len());
        debug_assert!(data.iter().all(|&x| usize::from(x) < self.levels));
        Self {
            width: self.width,
            height: self.height,
            levels: self.levels,
            data,
        }
    }
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidImage(format!(
            "dimensions must be positive, got {width}x{height}"
        )));
    }
    if width.checked_mul(height) != Some(len) {
        return Err(Error::InvalidImage(format!(
            "{width}x{height} image needs {} samples, got {len}",
            width * height
        )));
    }
    Ok(())
}

/// Maps fractions in `[0, 1]` onto integer levels: `round(value * (levels - 1))`,
/// half away from zero, clamped.
pub fn quantize_channel(
    values: &[f64],
    width: usize,
    height: usize,
    levels: usize,
) -> Result<ImagePlane> {
    if !(2..=LEVELS).contains(&levels) {
        return Err(Error::InvalidParameter(format!(
            "level count must be in 2..=256, got {levels}"
        )));
    }
    let top = (levels - 1) as f64;
    let data = values
        .iter()
        .map(|&v| round_level(v * top).clamp(0.0, top) as u8)
        .collect();
    ImagePlane::with_levels(width, height, levels, data)
}

/// Inverse of [`quantize_channel`]: `x / (levels - 1)`.
pub fn dequantize_channel(plane: &ImagePlane) -> Vec<f64> {
    let top = (plane.levels() - 1) as f64;
    plane.data().iter().map(|&x| f64::from(x) / top).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantize_examples() {
        let p = quantize_channel(&[1.0, 0.5, 0.002, 0.0], 4, 1, LEVELS).unwrap();
        assert_eq!(p.data(), &[255, 128, 1, 0]);
    }

    #[test]
    fn quantize_clamps_out_of_range() {
        let p = quantize_channel(&[1.5, -0.2], 2, 1, LEVELS).unwrap();
        assert_eq!(p.data(), &[255, 0]);
    }

    #[test]
    fn dequantize_endpoints() {
        let p = ImagePlane::new(2, 1, vec![255, 0]).unwrap();
        assert_eq!(dequantize_channel(&p), vec![1.0, 0.0]);
    }

    #[test]
    fn quantize_dequantize_identity_all_levels() {
        let p = ImagePlane::new(256, 1, (0..=255).collect()).unwrap();
        let back = quantize_channel(&dequantize_channel(&p), 256, 1, LEVELS).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(ImagePlane::new(0, 1, vec![]).is_err());
        assert!(ImagePlane::new(2, 2, vec![0; 3]).is_err());
        assert!(RgbImage::new(1, 0, vec![]).is_err());
        assert!(ImagePlane::with_levels(2, 1, 4, vec![0, 4]).is_err());
    }

    #[test]
    fn hsv_image_validates_ranges() {
        let ok = Hsv { h: 359.9, s: 1.0, v: 0.0 };
        assert!(HsvImage::new(1, 1, vec![ok]).is_ok());
        let bad = Hsv { h: 360.0, s: 0.5, v: 0.5 };
        assert!(HsvImage::new(1, 1, vec![bad]).is_err());
    }

    #[test]
    fn gray_promotion_replicates() {
        let img = RgbImage::from_gray(1, 1, &[128]).unwrap();
        assert_eq!(img.pixel(0, 0), [128, 128, 128]);
        assert!(img.is_gray());
    }
}
