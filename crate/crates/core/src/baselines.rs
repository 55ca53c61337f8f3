//! Comparison methods and synthetic contrast degradation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::histogram::compute_histogram;
use crate::image::ImagePlane;
use crate::round_level;

/// Global contrast reduction applied to pristine images by the benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DistortionLevel {
    None,
    Light,
    Moderate,
    Heavy,
}

impl DistortionLevel {
    pub const ALL: [DistortionLevel; 4] = [Self::None, Self::Light, Self::Moderate, Self::Heavy];

    /// Contrast factor `s` in `out = mean + s * (x - mean)`.
    pub fn scale(self) -> f64 {
        match self {
            Self::None => 1.0,
            Self::Light => 0.7,
            Self::Moderate => 0.4,
            Self::Heavy => 0.2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Light => "light",
            Self::Moderate => "moderate",
            Self::Heavy => "heavy",
        }
    }
}

impl fmt::Display for DistortionLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistortionLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown distortion level {s:?}")))
    }
}

/// Compresses the plane's levels toward its mean by the level's scale factor.
pub fn contrast_distort(plane: &ImagePlane, level: DistortionLevel) -> ImagePlane {
    let s = level.scale();
    if s == 1.0 {
        return plane.clone();
    }
    let mean = plane.data().iter().map(|&x| f64::from(x)).sum::<f64>() / plane.len() as f64;
    let top = (plane.levels() - 1) as f64;
    let data = plane
        .data()
        .iter()
        .map(|&x| round_level(mean + s * (f64::from(x) - mean)).clamp(0.0, top) as u8)
        .collect();
    plane.with_data(data)
}

/// Classic histogram equalization through the whole-image CDF.
pub fn global_he(plane: &ImagePlane) -> ImagePlane {
    let h = compute_histogram(plane);
    let lut = equalization_lut(&h.counts().iter().map(|&c| c as f64).collect::<Vec<_>>());
    plane.with_data(plane.data().iter().map(|&x| lut[usize::from(x)]).collect())
}

/// `round((L - 1) * cdf(x))` for a (possibly clipped) histogram.
fn equalization_lut(counts: &[f64]) -> Vec<u8> {
    let total: f64 = counts.iter().sum();
    let top = (counts.len() - 1) as f64;
    let mut running = 0.0;
    counts
        .iter()
        .map(|&c| {
            running += c;
            round_level(top * (running / total)).clamp(0.0, top) as u8
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClaheParams {
    pub tiles_x: usize,
    pub tiles_y: usize,
    /// Per-bin limit as a fraction of the tile's pixel count; `f64::INFINITY` disables clipping.
    pub clip: f64,
}

impl Default for ClaheParams {
    fn default() -> Self {
        Self {
            tiles_x: 8,
            tiles_y: 8,
            clip: 0.01,
        }
    }
}

/// Tile boundaries `[start, end)` along one axis.
fn tile_bounds(len: usize, tiles: usize) -> Vec<(usize, usize)> {
    (0..tiles)
        .map(|i| (i * len / tiles, (i + 1) * len / tiles))
        .collect()
}

/// For a pixel coordinate, the two neighbouring tiles and the weight of the second.
fn interpolation_axis(len: usize, bounds: &[(usize, usize)]) -> Vec<(usize, usize, f64)> {
    let centers: Vec<f64> = bounds
        .iter()
        .map(|&(s, e)| (s + e - 1) as f64 / 2.0)
        .collect();
    let last = centers.len() - 1;
    (0..len)
        .map(|p| {
            let p = p as f64;
            if p <= centers[0] {
                (0, 0, 0.0)
            } else if p >= centers[last] {
                (last, last, 0.0)
            } else {
                let i = centers.partition_point(|&c| c <= p) - 1;
                (i, i + 1, (p - centers[i]) / (centers[i + 1] - centers[i]))
            }
        })
        .collect()
}

/// Contrast-limited adaptive histogram equalization: per-tile clipped histograms,
/// uniform redistribution of the clipped excess, and bilinear blending between
/// the mappings of the four nearest tile centers.
pub fn clahe_lite(plane: &ImagePlane, params: &ClaheParams) -> Result<ImagePlane> {
    let (tx, ty) = (params.tiles_x, params.tiles_y);
    if tx == 0 || ty == 0 || params.clip.is_nan() || params.clip <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "CLAHE needs at least one tile per axis and a positive clip, got {tx}x{ty}, clip {}",
            params.clip
        )));
    }
    let (width, height) = (plane.width(), plane.height());
    if tx > width || ty > height {
        return Err(Error::TilesLargerThanImage {
            tiles_x: tx,
            tiles_y: ty,
            width,
            height,
        });
    }
    let levels = plane.levels();
    let xs = tile_bounds(width, tx);
    let ys = tile_bounds(height, ty);

    let mut luts = Vec::with_capacity(tx * ty);
    for &(y0, y1) in &ys {
        for &(x0, x1) in &xs {
            let mut counts = vec![0.0f64; levels];
            for y in y0..y1 {
                for &v in &plane.row(y)[x0..x1] {
                    counts[usize::from(v)] += 1.0;
                }
            }
            let limit = (params.clip * ((x1 - x0) * (y1 - y0)) as f64).max(1.0);
            let excess: f64 = counts.iter().map(|&c| (c - limit).max(0.0)).sum();
            if excess > 0.0 {
                let share = excess / levels as f64;
                for c in counts.iter_mut() {
                    *c = c.min(limit) + share;
                }
            }
            luts.push(equalization_lut(&counts));
        }
    }

    let col = interpolation_axis(width, &xs);
    let row = interpolation_axis(height, &ys);
    let top = (levels - 1) as f64;
    let mut data = Vec::with_capacity(plane.len());
    for (y, &(j0, j1, wy)) in row.iter().enumerate() {
        for (x, &(i0, i1, wx)) in col.iter().enumerate() {
            let v = usize::from(plane.get(x, y));
            let at = |i: usize, j: usize| f64::from(luts[j * tx + i][v]);
            let upper = (1.0 - wx) * at(i0, j0) + wx * at(i1, j0);
            let lower = (1.0 - wx) * at(i0, j1) + wx * at(i1, j1);
            let blended = (1.0 - wy) * upper + wy * lower;
            data.push(round_level(blended).clamp(0.0, top) as u8);
        }
    }
    Ok(plane.with_data(data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn levels_round_trip_names() {
        for l in DistortionLevel::ALL {
            assert_eq!(l.name().parse::<DistortionLevel>().unwrap(), l);
        }
        assert!("extreme".parse::<DistortionLevel>().is_err());
    }

    #[test]
    fn distort_none_is_identity() {
        let p = ImagePlane::new(4, 1, vec![0, 10, 200, 255]).unwrap();
        assert_eq!(contrast_distort(&p, DistortionLevel::None), p);
    }

    #[test]
    fn distort_constant_is_unchanged() {
        let p = ImagePlane::new(3, 3, vec![77; 9]).unwrap();
        for l in DistortionLevel::ALL {
            assert_eq!(contrast_distort(&p, l), p);
        }
    }

    #[test]
    fn heavy_distortion_of_ramp() {
        // 127.5 -/+ 0.2 * 127.5
        let p = ImagePlane::new(16, 16, (0..=255).collect()).unwrap();
        let d = contrast_distort(&p, DistortionLevel::Heavy);
        assert_eq!((d.min_level(), d.max_level()), (102, 153));
    }

    #[test]
    fn he_of_uniform_histogram_is_near_identity() {
        let p = ImagePlane::new(16, 16, (0..=255).collect()).unwrap();
        let out = global_he(&p);
        for (a, b) in p.data().iter().zip(out.data()) {
            assert!((i16::from(*a) - i16::from(*b)).abs() <= 1);
        }
    }

    #[test]
    fn he_of_constant_is_white() {
        let p = ImagePlane::new(2, 2, vec![40; 4]).unwrap();
        assert!(global_he(&p).data().iter().all(|&x| x == 255));
    }

    #[test]
    fn he_four_level_example() {
        // cdf = [.5, .75, .75, 1] -> round(3 c) = [2, 2, 2, 3]
        let p = ImagePlane::with_levels(2, 2, 4, vec![0, 0, 1, 3]).unwrap();
        assert_eq!(global_he(&p).data(), &[2, 2, 2, 3]);
    }

    #[test]
    fn single_unclipped_tile_equals_global_he() {
        let data: Vec<u8> = (0..40 * 30).map(|i| ((i * 97 + i / 7) % 180) as u8 + 20).collect();
        let p = ImagePlane::new(40, 30, data).unwrap();
        let params = ClaheParams { tiles_x: 1, tiles_y: 1, clip: f64::INFINITY };
        assert_eq!(clahe_lite(&p, &params).unwrap(), global_he(&p));
    }

    #[test]
    fn clahe_of_constant_is_constant() {
        let p = ImagePlane::new(32, 32, vec![60; 1024]).unwrap();
        let out = clahe_lite(&p, &ClaheParams::default()).unwrap();
        let first = out.data()[0];
        assert!(out.data().iter().all(|&x| x == first));
    }

    #[test]
    fn clahe_rejects_oversized_tiling() {
        let p = ImagePlane::new(4, 4, vec![0; 16]).unwrap();
        let params = ClaheParams { tiles_x: 5, tiles_y: 1, clip: 0.1 };
        assert!(matches!(clahe_lite(&p, &params), Err(Error::TilesLargerThanImage { .. })));
        let params = ClaheParams { tiles_x: 1, tiles_y: 1, clip: 0.0 };
        assert!(matches!(clahe_lite(&p, &params), Err(Error::InvalidParameter(_))));
    }

    proptest! {
        #[test]
        fn he_is_monotone(data in proptest::collection::vec(any::<u8>(), 1..300)) {
            let p = ImagePlane::new(data.len(), 1, data).unwrap();
            let out = global_he(&p);
            let mut pairs: Vec<(u8, u8)> = p.data().iter().copied().zip(out.data().iter().copied()).collect();
            pairs.sort();
            prop_assert!(pairs.windows(2).all(|w| w[0].1 <= w[1].1));
        }

        #[test]
        fn distortion_shrinks_range(data in proptest::collection::vec(any::<u8>(), 1..300), which in 0usize..4) {
            let level = DistortionLevel::ALL[which];
            let p = ImagePlane::new(data.len(), 1, data).unwrap();
            let d = contrast_distort(&p, level);
            let before = f64::from(p.max_level() - p.min_level());
            let after = f64::from(d.max_level() - d.min_level());
            prop_assert!(after <= level.scale() * before + 1.0);
        }
    }
}
