use whe::baselines::contrast_distort;
use whe::{
    compute_eme, dequantize_channel, enhance_hsv, enhance_image, hsv_to_rgb, rgb_to_hsv,
    value_plane, ChannelPolicy, DistortionLevel, EnhanceConfig, GammaGrid, Hsv, HsvImage,
    RgbImage,
};

fn heavy_scene(seed: u64) -> RgbImage {
    let hsv = rgb_to_hsv(&whe::scenes::natural(seed, 80, 60));
    let v = dequantize_channel(&contrast_distort(&value_plane(&hsv), DistortionLevel::Heavy));
    let pixels = hsv.pixels().iter().zip(v).map(|(p, v)| Hsv { v, ..*p }).collect();
    hsv_to_rgb(&HsvImage::new(hsv.width(), hsv.height(), pixels).unwrap())
}

#[test]
fn enhancement_is_deterministic() {
    let img = heavy_scene(11);
    let cfg = EnhanceConfig::default();
    let (a, ra) = enhance_image(&img, &cfg).unwrap();
    let (b, rb) = enhance_image(&img, &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(ra.value, rb.value);
    assert_eq!(ra.saturation, rb.saturation);
}

#[test]
fn heavy_distortion_gains_contrast() {
    for seed in 0..5 {
        let (_, report) = enhance_image(&heavy_scene(seed), &EnhanceConfig::default()).unwrap();
        let v = &report.value;
        assert!(!v.fallback);
        assert!(v.eme_after > v.eme_before, "seed {seed}: {} <= {}", v.eme_after, v.eme_before);
    }
}

#[test]
fn hue_plane_is_untouched() {
    let hsv = rgb_to_hsv(&heavy_scene(3));
    for channels in [ChannelPolicy::ValueOnly, ChannelPolicy::SaturationAndValue] {
        let cfg = EnhanceConfig { channels, ..EnhanceConfig::default() };
        let (out, _, _) = enhance_hsv(&hsv, &cfg).unwrap();
        assert!(hsv.hue().iter().zip(out.hue()).all(|(a, b)| a.to_bits() == b.to_bits()));
    }
}

#[test]
fn value_only_policy_keeps_saturation() {
    let hsv = rgb_to_hsv(&heavy_scene(4));
    let cfg = EnhanceConfig { channels: ChannelPolicy::ValueOnly, ..EnhanceConfig::default() };
    let (out, _, s) = enhance_hsv(&hsv, &cfg).unwrap();
    assert!(s.is_none());
    assert_eq!(hsv.saturation(), out.saturation());
}

#[test]
fn grayscale_saturation_falls_back() {
    let gray: Vec<u8> = (0..64 * 64).map(|i| ((i % 64) * 2 + 40) as u8).collect();
    let img = RgbImage::from_gray(64, 64, &gray).unwrap();
    let (out, report) = enhance_image(&img, &EnhanceConfig::default()).unwrap();
    assert!(report.saturation.unwrap().fallback);
    assert!(!report.value.fallback);
    assert!(out.is_gray());
}

#[test]
fn single_gamma_grid_is_used() {
    let cfg = EnhanceConfig {
        gamma_grid: GammaGrid::new(vec![0.5]).unwrap(),
        ..EnhanceConfig::default()
    };
    let (_, report) = enhance_image(&heavy_scene(5), &cfg).unwrap();
    assert_eq!(report.value.gamma, Some(0.5));
    assert_eq!(report.value.sweep.len(), 1);
}

#[test]
fn enhancing_twice_is_safe() {
    let cfg = EnhanceConfig::default();
    let (once, _) = enhance_image(&heavy_scene(6), &cfg).unwrap();
    let (twice, report) = enhance_image(&once, &cfg).unwrap();
    assert_eq!((twice.width(), twice.height()), (once.width(), once.height()));
    let v = value_plane(&rgb_to_hsv(&twice));
    assert!(report.value.eme_after.is_finite());
    assert!(compute_eme(&v, &cfg.eme).value.is_finite());
}
