//! Corpus benchmark: every image x distortion level x method, scored by EME on V.

use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use rayon::prelude::*;
use whe::{
    clahe_lite, compute_eme, contrast_distort, dequantize_channel, enhance_image, global_he,
    hsv_to_rgb, load_image, rgb_to_hsv, value_plane, ClaheParams, DistortionLevel, EnhanceConfig, Hsv,
    HsvImage, RgbImage,
};

pub const CSV_HEADER: &str = "image,level,method,eme,gamma,threshold,time_ms";

/// Enhancement methods, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Original,
    He,
    Clahe,
    Proposed,
}

impl Method {
    pub const ALL: [Method; 4] = [Self::Original, Self::He, Self::Clahe, Self::Proposed];

    pub fn name(self) -> &'static str {
        match self {
            Self::Original => "original",
            Self::He => "he",
            Self::Clahe => "clahe",
            Self::Proposed => "proposed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub image: String,
    pub level: DistortionLevel,
    pub method: Method,
    pub eme: f64,
    pub gamma: Option<f64>,
    pub threshold: Option<usize>,
    pub time_ms: f64,
}

impl BenchmarkRow {
    fn sort_key(&self) -> (&str, DistortionLevel, Method) {
        (&self.image, self.level, self.method)
    }

    pub fn write_csv_line<W: Write>(&self, mut out: W) -> io::Result<()> {
        let gamma = self.gamma.map(|g| g.to_string()).unwrap_or_default();
        let threshold = self.threshold.map(|t| t.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{:.8},{},{},{:.3}",
            self.image, self.level, self.method, self.eme, gamma, threshold, self.time_ms
        )
    }
}

/// Replaces anything that would need CSV quoting.
pub fn sanitize_name(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_alphanumeric() || matches!(c, '-' | '_' | '.') {
                c
            } else {
                '_'
            }
        })
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct BenchmarkSettings {
    pub enhance: EnhanceConfig,
    pub clahe: ClaheParams,
    pub levels: Vec<DistortionLevel>,
}

/// Applies the level's contrast reduction to V, leaving H and S untouched.
pub fn distort_image(img: &RgbImage, level: DistortionLevel) -> RgbImage {
    if level == DistortionLevel::None {
        return img.clone();
    }
    let hsv = rgb_to_hsv(img);
    let v = dequantize_channel(&contrast_distort(&value_plane(&hsv), level));
    let pixels = hsv
        .pixels()
        .iter()
        .zip(v)
        .map(|(p, v)| Hsv { v, ..*p })
        .collect();
    let hsv = HsvImage::new(img.width(), img.height(), pixels).expect("V stays in [0, 1]");
    hsv_to_rgb(&hsv)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

/// All rows for one already-decoded image.
pub fn benchmark_image(
    name: &str,
    img: &RgbImage,
    settings: &BenchmarkSettings,
) -> anyhow::Result<Vec<BenchmarkRow>> {
    let eme = &settings.enhance.eme;
    let mut rows = Vec::with_capacity(settings.levels.len() * Method::ALL.len());
    for &level in &settings.levels {
        let distorted = distort_image(img, level);
        let v = value_plane(&rgb_to_hsv(&distorted));
        let row = |method, eme, gamma, threshold, time_ms| BenchmarkRow {
            image: name.to_owned(),
            level,
            method,
            eme,
            gamma,
            threshold,
            time_ms,
        };

        let (score, ms) = timed(|| compute_eme(&v, eme).value);
        rows.push(row(Method::Original, score, None, None, ms));

        let (score, ms) = timed(|| compute_eme(&global_he(&v), eme).value);
        rows.push(row(Method::He, score, None, None, ms));

        let (clahe, ms) = timed(|| clahe_lite(&v, &settings.clahe));
        let clahe = clahe.with_context(|| format!("CLAHE on {name}"))?;
        rows.push(row(Method::Clahe, compute_eme(&clahe, eme).value, None, None, ms));

        let (result, ms) = timed(|| enhance_image(&distorted, &settings.enhance));
        let (out, report) = result.with_context(|| format!("enhancing {name}"))?;
        let score = compute_eme(&value_plane(&rgb_to_hsv(&out)), eme).value;
        rows.push(row(Method::Proposed, score, report.value.gamma, report.value.threshold, ms));
    }
    Ok(rows)
}

/// Image files directly inside `dir`, in name order.
fn list_images(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    Ok(paths)
}

/// Benchmarks every decodable image in `dir`; undecodable or failing images are
/// logged and skipped. Fails only when nothing could be processed.
pub fn run_benchmark(dir: &Path, settings: &BenchmarkSettings) -> anyhow::Result<Vec<BenchmarkRow>> {
    let paths = list_images(dir)?;
    let per_image: Vec<Option<Vec<BenchmarkRow>>> = paths
        .par_iter()
        .map(|path| {
            let name = sanitize_name(
                &path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
            );
            let result = load_image(path)
                .map_err(anyhow::Error::from)
                .and_then(|img| benchmark_image(&name, &img, settings));
            match result {
                Ok(rows) => Some(rows),
                Err(e) => {
                    log::warn!("skipping {}: {e:#}", path.display());
                    None
                }
            }
        })
        .collect();

    let mut rows: Vec<BenchmarkRow> = per_image.into_iter().flatten().flatten().collect();
    if rows.is_empty() {
        bail!("no decodable images in {}", dir.display());
    }
    rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchmarkRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        row.write_csv_line(&mut out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_csv_safe() {
        assert_eq!(sanitize_name("a b,c\"d"), "a_b_c_d");
        assert_eq!(sanitize_name("img-01.v2"), "img-01.v2");
    }

    #[test]
    fn csv_line_format() {
        let row = BenchmarkRow {
            image: "x".into(),
            level: DistortionLevel::Heavy,
            method: Method::Proposed,
            eme: 0.25,
            gamma: Some(0.3),
            threshold: Some(120),
            time_ms: 1.5,
        };
        let mut buf = Vec::new();
        row.write_csv_line(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,heavy,proposed,0.25000000,0.3,120,1.500\n");

        let row = BenchmarkRow { gamma: None, threshold: None, method: Method::He, ..row };
        let mut buf = Vec::new();
        row.write_csv_line(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,heavy,he,0.25000000,,,1.500\n");
    }

    #[test]
    fn one_image_yields_sixteen_rows() {
        let img = whe::scenes::natural(1, 48, 40);
        let settings = BenchmarkSettings {
            levels: DistortionLevel::ALL.to_vec(),
            ..BenchmarkSettings::default()
        };
        let rows = benchmark_image("s", &img, &settings).unwrap();
        assert_eq!(rows.len(), 16);
        assert!(rows.iter().all(|r| r.eme.is_finite()));
    }

    #[test]
    fn distortion_keeps_hue_channel_of_gray() {
        let img = RgbImage::from_gray(4, 1, &[0, 50, 100, 250]).unwrap();
        let d = distort_image(&img, DistortionLevel::Heavy);
        assert!(d.is_gray());
    }
}
