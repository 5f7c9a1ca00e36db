use std::path::PathBuf;

use clap::Parser;
use multipole::{
    Boundary, MeanNormalization, Origin, PgmFormat, PipelineConfig, QxyFactor, WindowAnchor,
};

use crate::CliError;

/// Dipole and quadrupole edge maps of a grayscale PGM image.
#[derive(Debug, Parser)]
#[command(name = "multipole", version)]
pub struct CliArgs {
    /// Input image (PGM, P2 or P5).
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// Write the tone-mapped dipole magnitude map here.
    #[arg(long, value_name = "PATH")]
    pub out_dipole: Option<PathBuf>,

    /// Write the tone-mapped quadrupole determinant map here.
    #[arg(long, value_name = "PATH")]
    pub out_quadrupole: Option<PathBuf>,

    /// Write mean, charge, px, py, qxx and qxy grids as text into this directory.
    #[arg(long, value_name = "DIR")]
    pub dump_fields: Option<PathBuf>,

    /// Window size as HxW.
    #[arg(long, default_value = "2x2", value_name = "HxW")]
    pub window: String,

    /// Window anchoring; inferred from the window size when omitted.
    #[arg(long, value_name = "centered-odd|topleft-even")]
    pub anchor: Option<WindowAnchor>,

    #[arg(
        long,
        default_value = "clamp",
        value_name = "clamp|reflect|skip-border"
    )]
    pub boundary: Boundary,

    #[arg(
        long,
        default_value = "window-center",
        value_name = "window-center|absolute"
    )]
    pub origin: Origin,

    /// Off-diagonal factor f in Qxy = sum q*f*x*y.
    #[arg(long, default_value = "2", value_name = "2|1")]
    pub qxy_factor: QxyFactor,

    /// Exponent of the dipole tone map.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,

    /// Exponent of the quadrupole tone map.
    #[arg(long, default_value_t = 0.25)]
    pub beta: f64,

    #[arg(
        long,
        default_value = "pixel-count",
        value_name = "pixel-count|paper-4didj"
    )]
    pub mean_norm: MeanNormalization,

    /// Output PGM encoding.
    #[arg(long, default_value = "P5", value_name = "P2|P5")]
    pub format: PgmFormat,

    /// Print the global dipole and quadrupole moments of the input.
    #[arg(long)]
    pub global: bool,
}

impl CliArgs {
    pub fn pipeline_config(&self) -> Result<PipelineConfig, CliError> {
        let (window_height, window_width) = parse_window(&self.window)?;
        let window_anchor = match self.anchor {
            Some(a) => a,
            None => infer_anchor(window_height, window_width)?,
        };
        let cfg = PipelineConfig {
            window_height,
            window_width,
            window_anchor,
            boundary: self.boundary,
            origin: self.origin,
            qxy_factor: self.qxy_factor,
            alpha: self.alpha,
            beta: self.beta,
            mean_normalization: self.mean_norm,
        };
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }

    pub fn requests_output(&self) -> bool {
        self.out_dipole.is_some()
            || self.out_quadrupole.is_some()
            || self.dump_fields.is_some()
            || self.global
    }
}

pub fn parse_window(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || {
        CliError::Usage(format!(
            "window '{s}' is not HxW with two positive integers"
        ))
    };
    let (h, w) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let h: usize = h.trim().parse().map_err(|_| bad())?;
    let w: usize = w.trim().parse().map_err(|_| bad())?;
    if h == 0 || w == 0 {
        return Err(bad());
    }
    Ok((h, w))
}

fn infer_anchor(h: usize, w: usize) -> Result<WindowAnchor, CliError> {
    let odd = |n: usize| n % 2 == 1;
    if odd(h) && odd(w) {
        Ok(WindowAnchor::CenteredOdd)
    } else if (h == 1 || !odd(h)) && (w == 1 || !odd(w)) {
        Ok(WindowAnchor::TopLeftEven)
    } else {
        Err(CliError::Usage(format!(
            "window {h}x{w} mixes odd and even dimensions; no anchor fits"
        )))
    }
}
