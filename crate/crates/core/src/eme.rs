//! Block-based EME contrast measure.
//!
//! The plane is tiled into `block_w x block_h` blocks (partial blocks on the
//! right and bottom edges are kept). Each block contributes
//! `f * ln(b + f)` with `f = (max - min + a) / (max + min + a)`, and the score
//! is the mean over blocks.

use crate::error::{Error, Result};
use crate::image::ImagePlane;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmeParams {
    pub block_w: usize,
    pub block_h: usize,
    pub a: f64,
    pub b: f64,
}

impl Default for EmeParams {
    fn default() -> Self {
        Self {
            block_w: 8,
            block_h: 8,
            a: 1.0,
            b: 1.0,
        }
    }
}

impl EmeParams {
    pub fn with_block(block_w: usize, block_h: usize) -> Self {
        Self {
            block_w,
            block_h,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_w == 0 || self.block_h == 0 {
            return Err(Error::InvalidParameter(format!(
                "EME block must be at least 1x1, got {}x{}",
                self.block_w, self.block_h
            )));
        }
        if !(self.a > 0.0 && self.a.is_finite()) || !(self.b > 0.0 && self.b.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "EME constants must be positive, got a={} b={}",
                self.a, self.b
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmeScore {
    pub value: f64,
    pub blocks_scored: usize,
}

fn contrast(min: u8, max: u8, a: f64) -> f64 {
    let (min, max) = (f64::from(min), f64::from(max));
    (max - min + a) / (max + min + a)
}

/// Michelson-style contrast of one block.
///
/// # Panics
///
/// If `block` is empty.
pub fn block_contrast(block: &[u8], a: f64) -> f64 {
    let min = *block.iter().min().expect("block must be non-empty");
    let max = *block.iter().max().expect("block must be non-empty");
    contrast(min, max, a)
}

/// # Panics
///
/// If either block dimension is zero.
pub fn compute_eme(plane: &ImagePlane, params: &EmeParams) -> EmeScore {
    let (bw, bh) = (params.block_w, params.block_h);
    assert!(bw > 0 && bh > 0, "EME block must be at least 1x1");
    let (width, height) = (plane.width(), plane.height());
    let blocks_x = width.div_ceil(bw);
    let blocks_y = height.div_ceil(bh);

    let mut mins = vec![u8::MAX; blocks_x];
    let mut maxs = vec![u8::MIN; blocks_x];
    let mut sum = 0.0;
    for by in 0..blocks_y {
        mins.fill(u8::MAX);
        maxs.fill(u8::MIN);
        for y in by * bh..((by + 1) * bh).min(height) {
            for (bx, chunk) in plane.row(y).chunks(bw).enumerate() {
                for &v in chunk {
                    mins[bx] = mins[bx].min(v);
                    maxs[bx] = maxs[bx].max(v);
                }
            }
        }
        for bx in 0..blocks_x {
            let f = contrast(mins[bx], maxs[bx], params.a);
            sum += f * (params.b + f).ln();
        }
    }
    let blocks_scored = blocks_x * blocks_y;
    EmeScore {
        value: sum / blocks_scored as f64,
        blocks_scored,
    }
}
