//! Command implementations behind the `whe` binary.

pub mod args;
pub mod benchmark;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use whe::{enhance_image, enhance_plane, load_image, rgb_to_hsv, save_image, value_plane, ChannelReport, EnhanceConfig};

use crate::args::{Cli, Command};
use crate::benchmark::{run_benchmark, write_csv, BenchmarkSettings};

/// Runs one parsed command, writing human-readable output to `stdout`.
pub fn run<W: Write>(cli: Cli, stdout: &mut W) -> anyhow::Result<()> {
    match cli.command {
        Command::Enhance {
            input,
            output,
            enhance,
        } => cmd_enhance(&input, &output, &enhance.config()?, stdout),
        Command::Benchmark {
            corpus,
            output,
            enhance,
            baseline,
        } => {
            let settings = BenchmarkSettings {
                enhance: enhance.config()?,
                clahe: baseline.clahe(),
                levels: baseline.levels(),
            };
            cmd_benchmark(&corpus, &output, &settings, stdout)
        }
        Command::Curve {
            input,
            output,
            enhance,
        } => cmd_curve(&input, &output, &enhance.config()?),
    }
}

fn describe(channel: &str, r: &ChannelReport) -> String {
    match (r.fallback, r.threshold, r.weights, r.gamma) {
        (false, Some(t), Some(w), Some(gamma)) => format!(
            "{channel}: t={t} omega_l={:.4} omega_u={:.4} x0={} gamma={gamma} eme_before={:.6} eme_after={:.6}",
            w.omega_l,
            w.omega_u,
            r.x0.unwrap_or_default(),
            r.eme_before,
            r.eme_after
        ),
        _ => format!("{channel}: fallback (identity) eme={:.6}", r.eme_before),
    }
}

pub fn cmd_enhance<W: Write>(
    input: &Path,
    output: &Path,
    cfg: &EnhanceConfig,
    stdout: &mut W,
) -> anyhow::Result<()> {
    let img = load_image(input).with_context(|| format!("reading {}", input.display()))?;
    let (out, report) = enhance_image(&img, cfg)?;
    save_image(output, &out).with_context(|| format!("writing {}", output.display()))?;

    writeln!(stdout, "{}", describe("V", &report.value))?;
    match &report.saturation {
        Some(s) => writeln!(stdout, "{}", describe("S", s))?,
        None => writeln!(stdout, "S: untouched")?,
    }
    writeln!(stdout, "time: {:.1} ms", report.wall_time_ms)?;
    Ok(())
}

pub fn cmd_benchmark<W: Write>(
    corpus: &Path,
    output: &Path,
    settings: &BenchmarkSettings,
    stdout: &mut W,
) -> anyhow::Result<()> {
    let rows = run_benchmark(corpus, settings)?;
    let file = File::create(output).with_context(|| format!("writing {}", output.display()))?;
    let mut out = BufWriter::new(file);
    write_csv(&rows, &mut out)?;
    out.flush()?;
    writeln!(stdout, "wrote {} rows to {}", rows.len(), output.display())?;
    Ok(())
}

pub fn cmd_curve(input: &Path, output: &Path, cfg: &EnhanceConfig) -> anyhow::Result<()> {
    let img = load_image(input).with_context(|| format!("reading {}", input.display()))?;
    let outcome = enhance_plane(&value_plane(&rgb_to_hsv(&img)), cfg)?;
    let file = File::create(output).with_context(|| format!("writing {}", output.display()))?;
    let mut out = BufWriter::new(file);
    outcome.curve.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}
