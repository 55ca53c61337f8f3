use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use whe::{
    ChannelPolicy, ClaheParams, DistortionLevel, EmeParams, EnhanceConfig, EntropyParams,
    GammaGrid, UpperMapForm,
};

#[derive(Debug, Parser)]
#[command(name = "whe", version, about = "Entropy-threshold weighted histogram equalization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enhance a single image and print the per-channel report.
    Enhance {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        enhance: EnhanceArgs,
    },
    /// Score original/HE/CLAHE/proposed on every image of a directory at each distortion level.
    Benchmark {
        corpus: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        enhance: EnhanceArgs,
        #[command(flatten)]
        baseline: BaselineArgs,
    },
    /// Dump the V-channel tone curve chosen for an image as CSV.
    Curve {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        enhance: EnhanceArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelsArg {
    /// Value only
    V,
    /// Saturation and value
    Sv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UpperMapArg {
    Printed,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    None,
    Light,
    Moderate,
    Heavy,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct EnhanceArgs {
    /// Comma-separated gamma candidates in (0, 1].
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0")]
    pub gamma_grid: Vec<f64>,
    /// EME block size as WxH.
    #[arg(long, value_parser = parse_dims, default_value = "8x8")]
    pub block_size: (usize, usize),
    #[arg(long, default_value_t = 1e-6)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.01)]
    pub min_segment_mass: f64,
    #[arg(long, value_enum, default_value_t = ChannelsArg::Sv)]
    pub channels: ChannelsArg,
    #[arg(long, value_enum, default_value_t = UpperMapArg::Printed)]
    pub upper_map: UpperMapArg,
}

impl EnhanceArgs {
    pub fn config(&self) -> whe::Result<EnhanceConfig> {
        let cfg = EnhanceConfig {
            gamma_grid: GammaGrid::new(self.gamma_grid.clone())?,
            entropy: EntropyParams {
                alpha: self.alpha,
                beta: self.beta,
                min_segment_mass: self.min_segment_mass,
            },
            eme: EmeParams::with_block(self.block_size.0, self.block_size.1),
            channels: match self.channels {
                ChannelsArg::V => ChannelPolicy::ValueOnly,
                ChannelsArg::Sv => ChannelPolicy::SaturationAndValue,
            },
            upper_map: match self.upper_map {
                UpperMapArg::Printed => UpperMapForm::AsPrinted,
                UpperMapArg::Symmetric => UpperMapForm::Symmetric,
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct BaselineArgs {
    /// CLAHE tile grid as XxY.
    #[arg(long, value_parser = parse_dims, default_value = "8x8")]
    pub tiles: (usize, usize),
    /// CLAHE clip limit as a fraction of the tile pixel count.
    #[arg(long, default_value_t = 0.01)]
    pub clip: f64,
    /// Distortion levels to benchmark (comma-separated).
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    pub levels: Vec<LevelArg>,
}

impl BaselineArgs {
    pub fn clahe(&self) -> ClaheParams {
        ClaheParams {
            tiles_x: self.tiles.0,
            tiles_y: self.tiles.1,
            clip: self.clip,
        }
    }

    pub fn levels(&self) -> Vec<DistortionLevel> {
        let mut out: Vec<DistortionLevel> = self
            .levels
            .iter()
            .flat_map(|l| match l {
                LevelArg::None => vec![DistortionLevel::None],
                LevelArg::Light => vec![DistortionLevel::Light],
                LevelArg::Moderate => vec![DistortionLevel::Moderate],
                LevelArg::Heavy => vec![DistortionLevel::Heavy],
                LevelArg::All => DistortionLevel::ALL.to_vec(),
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("expected a positive integer, got {v:?}"))
    };
    Ok((parse(w)?, parse(h)?))
}
