//! Hexcone RGB <-> HSV conversion.

use crate::image::{Hsv, HsvImage, RgbImage};
use crate::round_level;

/// Converts one 8-bit RGB triple. Achromatic pixels get `h = 0`; black gets `s = 0`.
pub fn rgb_to_hsv_pixel([r, g, b]: [u8; 3]) -> Hsv {
    let (r, g, b) = (f64::from(r), f64::from(g), f64::from(b));
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;

    let v = max / 255.0;
    let s = if max == 0.0 { 0.0 } else { delta / max };
    let h = if delta == 0.0 {
        0.0
    } else if max == r {
        60.0 * ((g - b) / delta)
    } else if max == g {
        60.0 * ((b - r) / delta + 2.0)
    } else {
        60.0 * ((r - g) / delta + 4.0)
    };
    let h = if h < 0.0 { h + 360.0 } else { h };
    // -0.0 and values rounding up to 360 both fold to 0
    let h = if h >= 360.0 || h == 0.0 { 0.0 } else { h };
    Hsv { h, s, v }
}

pub fn hsv_to_rgb_pixel(Hsv { h, s, v }: Hsv) -> [u8; 3] {
    let chroma = v * s;
    let sector = h / 60.0;
    let x = chroma * (1.0 - (sector % 2.0 - 1.0).abs());
    let (r, g, b) = match sector as u32 {
        0 => (chroma, x, 0.0),
        1 => (x, chroma, 0.0),
        2 => (0.0, chroma, x),
        3 => (0.0, x, chroma),
        4 => (x, 0.0, chroma),
        _ => (chroma, 0.0, x),
    };
    let m = v - chroma;
    let to_u8 = |c: f64| round_level((c + m) * 255.0).clamp(0.0, 255.0) as u8;
    [to_u8(r), to_u8(g), to_u8(b)]
}

pub fn rgb_to_hsv(img: &RgbImage) -> HsvImage {
    let pixels = img.pixels().iter().copied().map(rgb_to_hsv_pixel).collect();
    HsvImage::new(img.width(), img.height(), pixels).expect("conversion preserves geometry and ranges")
}

pub fn hsv_to_rgb(img: &HsvImage) -> RgbImage {
    let pixels = img.pixels().iter().copied().map(hsv_to_rgb_pixel).collect();
    RgbImage::new(img.width(), img.height(), pixels).expect("conversion preserves geometry")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Hsv, b: Hsv) -> bool {
        (a.h - b.h).abs() < 1e-9 && (a.s - b.s).abs() < 1e-12 && (a.v - b.v).abs() < 1e-12
    }

    #[test]
    fn canonical_values() {
        assert!(close(rgb_to_hsv_pixel([255, 0, 0]), Hsv { h: 0.0, s: 1.0, v: 1.0 }));
        assert!(close(rgb_to_hsv_pixel([0, 0, 0]), Hsv { h: 0.0, s: 0.0, v: 0.0 }));
        assert!(close(
            rgb_to_hsv_pixel([128, 128, 128]),
            Hsv { h: 0.0, s: 0.0, v: 128.0 / 255.0 }
        ));
        assert!(close(rgb_to_hsv_pixel([0, 255, 0]), Hsv { h: 120.0, s: 1.0, v: 1.0 }));
        assert!(close(rgb_to_hsv_pixel([0, 0, 255]), Hsv { h: 240.0, s: 1.0, v: 1.0 }));
    }

    #[test]
    fn inverse_canonical_values() {
        assert_eq!(hsv_to_rgb_pixel(Hsv { h: 120.0, s: 1.0, v: 1.0 }), [0, 255, 0]);
        for h in [0.0, 77.0, 200.0, 359.0] {
            let gray = hsv_to_rgb_pixel(Hsv { h, s: 0.0, v: 0.5 });
            assert_eq!(gray, [128, 128, 128]);
        }
    }

    #[test]
    fn hue_stays_in_range_near_red() {
        let hsv = rgb_to_hsv_pixel([255, 0, 1]);
        assert!(hsv.h > 359.0 && hsv.h < 360.0);
    }

    proptest! {
        #[test]
        fn round_trip_within_one_level(r: u8, g: u8, b: u8) {
            let back = hsv_to_rgb_pixel(rgb_to_hsv_pixel([r, g, b]));
            for (x, y) in [r, g, b].iter().zip(back.iter()) {
                prop_assert!((i16::from(*x) - i16::from(*y)).abs() <= 1);
            }
        }
    }
}
