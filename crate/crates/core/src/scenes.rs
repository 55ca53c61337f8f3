//! Seeded procedural scenes with natural-image statistics: smooth illumination,
//! multi-octave texture, occluding shapes with their own colors, and sensor
//! noise. Used as a self-contained benchmark corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::color::hsv_to_rgb_pixel;
use crate::image::{Hsv, RgbImage};

/// Bilinearly interpolated lattice noise in `[0, 1]`.
struct ValueNoise {
    cells: usize,
    lattice: Vec<f64>,
}

impl ValueNoise {
    fn new(rng: &mut impl Rng, cells: usize) -> Self {
        let lattice = (0..(cells + 1) * (cells + 1)).map(|_| rng.gen()).collect();
        Self { cells, lattice }
    }

    /// Samples at `u, v` in `[0, 1]`.
    fn sample(&self, u: f64, v: f64) -> f64 {
        let (fx, fy) = (u * self.cells as f64, v * self.cells as f64);
        let (ix, iy) = ((fx as usize).min(self.cells - 1), (fy as usize).min(self.cells - 1));
        let (tx, ty) = (smooth(fx - ix as f64), smooth(fy - iy as f64));
        let at = |x: usize, y: usize| self.lattice[y * (self.cells + 1) + x];
        let top = at(ix, iy) * (1.0 - tx) + at(ix + 1, iy) * tx;
        let bottom = at(ix, iy + 1) * (1.0 - tx) + at(ix + 1, iy + 1) * tx;
        top * (1.0 - ty) + bottom * ty
    }
}

fn smooth(t: f64) -> f64 {
    t * t * (3.0 - 2.0 * t)
}

struct Blob {
    cx: f64,
    cy: f64,
    rx: f64,
    ry: f64,
    value: f64,
    hue: f64,
    sat: f64,
}

/// A `width x height` scene determined entirely by `seed`.
pub fn natural(seed: u64, width: usize, height: usize) -> RgbImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let octaves: Vec<ValueNoise> = [3, 6, 12, 24]
        .into_iter()
        .map(|c| ValueNoise::new(&mut rng, c))
        .collect();
    let hue_field = ValueNoise::new(&mut rng, 2);
    let base_hue: f64 = rng.gen_range(0.0..360.0);
    let light_angle: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let blobs: Vec<Blob> = (0..rng.gen_range(3..8))
        .map(|_| Blob {
            cx: rng.gen(),
            cy: rng.gen(),
            rx: rng.gen_range(0.05..0.3),
            ry: rng.gen_range(0.05..0.3),
            value: rng.gen_range(0.05..0.95),
            hue: rng.gen_range(0.0..360.0),
            sat: rng.gen_range(0.1..0.8),
        })
        .collect();

    let mut samples = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let u = x as f64 / width.max(2).saturating_sub(1) as f64;
            let v = y as f64 / height.max(2).saturating_sub(1) as f64;
            let illumination =
                0.5 + 0.35 * ((u - 0.5) * light_angle.cos() + (v - 0.5) * light_angle.sin());
            let texture: f64 = octaves
                .iter()
                .zip([0.5, 0.25, 0.15, 0.1])
                .map(|(n, w)| w * n.sample(u, v))
                .sum();
            let mut value = 0.55 * illumination + 0.45 * texture;
            let mut hue = (base_hue + 90.0 * hue_field.sample(u, v)) % 360.0;
            let mut sat = 0.2 + 0.4 * texture;
            for b in &blobs {
                let d = ((u - b.cx) / b.rx).powi(2) + ((v - b.cy) / b.ry).powi(2);
                if d < 1.0 {
                    // shaded interior keeps some of the underlying texture
                    value = 0.7 * b.value + 0.3 * value * (1.2 - 0.4 * d);
                    hue = b.hue;
                    sat = b.sat;
                }
            }
            samples.push((hue, sat, value + rng.gen_range(-0.02..0.02)));
        }
    }

    // stretch to most of the dynamic range, as a well-exposed photograph would be
    let (lo, hi) = samples
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), s| (lo.min(s.2), hi.max(s.2)));
    let span = (hi - lo).max(1e-9);
    let pixels = samples
        .into_iter()
        .map(|(h, s, v)| {
            hsv_to_rgb_pixel(Hsv {
                h,
                s: s.clamp(0.0, 1.0),
                v: (0.03 + 0.94 * (v - lo) / span).clamp(0.0, 1.0),
            })
        })
        .collect();
    RgbImage::new(width, height, pixels).expect("scene geometry is consistent")
}

/// `count` scenes with consecutive seeds starting at `first_seed`.
pub fn corpus(first_seed: u64, count: usize, width: usize, height: usize) -> Vec<RgbImage> {
    (0..count as u64)
        .map(|i| natural(first_seed + i, width, height))
        .collect()
}
