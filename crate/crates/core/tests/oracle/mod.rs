//! Brute-force evaluation of the local moments straight from their
//! definitions. Shares nothing with the library beyond reading the config
//! fields: window enumeration, boundary substitution and the sums are all
//! written out here.
#![allow(dead_code)]

use multipole::{
    Bitmap, Boundary, MeanNormalization, Origin, PipelineConfig, QxyFactor, WindowAnchor,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub px: f64,
    pub py: f64,
    pub qxx: f64,
    pub qyy: f64,
    pub qxy: f64,
}

const ZERO: Moments = Moments {
    px: 0.0,
    py: 0.0,
    qxx: 0.0,
    qyy: 0.0,
    qxy: 0.0,
};

fn substitute(k: i64, len: i64, boundary: Boundary) -> Option<i64> {
    if k >= 1 && k <= len {
        return Some(k);
    }
    match boundary {
        Boundary::SkipBorder => None,
        Boundary::Clamp => Some(if k < 1 { 1 } else { len }),
        Boundary::Reflect => {
            if len == 1 {
                return Some(1);
            }
            // bounce back and forth until inside
            let mut k = k;
            loop {
                if k < 1 {
                    k = 2 - k;
                } else if k > len {
                    k = 2 * len - k;
                } else {
                    return Some(k);
                }
            }
        }
    }
}

fn offsets(size: usize, anchor: WindowAnchor) -> Vec<i64> {
    match anchor {
        WindowAnchor::CenteredOdd => {
            let half = (size as i64 - 1) / 2;
            (-half..=half).collect()
        }
        WindowAnchor::TopLeftEven => (0..size as i64).collect(),
    }
}

/// Index lists of the window of `(i, j)`, or `None` when skipped.
pub fn window(
    bm: &Bitmap,
    cfg: &PipelineConfig,
    i: usize,
    j: usize,
) -> Option<(Vec<i64>, Vec<i64>)> {
    let (h, w) = (bm.height() as i64, bm.width() as i64);
    let rows: Option<Vec<i64>> = offsets(cfg.window_height, cfg.window_anchor)
        .into_iter()
        .map(|d| substitute(i as i64 + d, h, cfg.boundary))
        .collect();
    let cols: Option<Vec<i64>> = offsets(cfg.window_width, cfg.window_anchor)
        .into_iter()
        .map(|d| substitute(j as i64 + d, w, cfg.boundary))
        .collect();
    Some((rows?, cols?))
}

fn normalizer(cfg: &PipelineConfig, count: usize) -> f64 {
    match cfg.mean_normalization {
        MeanNormalization::PixelCount => count as f64,
        MeanNormalization::Paper4DiDj => {
            let di = ((cfg.window_height - 1) / 2) as f64;
            let dj = ((cfg.window_width - 1) / 2) as f64;
            4.0 * di * dj
        }
    }
}

pub fn mean(bm: &Bitmap, cfg: &PipelineConfig, i: usize, j: usize) -> Option<f64> {
    let (rows, cols) = window(bm, cfg, i, j)?;
    let mut sum = 0.0;
    for &k in &rows {
        for &l in &cols {
            sum += bm.get(k as usize, l as usize).unwrap() as f64;
        }
    }
    Some(sum / normalizer(cfg, rows.len() * cols.len()))
}

/// Moments of the window of `(i, j)`; zero for skipped windows.
pub fn moments(bm: &Bitmap, cfg: &PipelineConfig, i: usize, j: usize) -> Moments {
    let Some((rows, cols)) = window(bm, cfg, i, j) else {
        return ZERO;
    };
    let m = mean(bm, cfg, i, j).unwrap();
    let norm = normalizer(cfg, rows.len() * cols.len());
    let (ox, oy) = match cfg.origin {
        Origin::Absolute => (0.0, 0.0),
        Origin::WindowCenter => (
            rows.iter().sum::<i64>() as f64 / rows.len() as f64,
            cols.iter().sum::<i64>() as f64 / cols.len() as f64,
        ),
    };
    let f = match cfg.qxy_factor {
        QxyFactor::Two => 2.0,
        QxyFactor::One => 1.0,
    };
    let mut acc = ZERO;
    for &k in &rows {
        for &l in &cols {
            let q = bm.get(k as usize, l as usize).unwrap() as f64 - m;
            let x = k as f64 - ox;
            let y = l as f64 - oy;
            let r2 = x * x + y * y;
            acc.px += q * x;
            acc.py += q * y;
            acc.qxx += q * (2.0 * x * x - r2);
            acc.qyy += q * (2.0 * y * y - r2);
            acc.qxy += q * f * x * y;
        }
    }
    Moments {
        px: acc.px / norm,
        py: acc.py / norm,
        qxx: acc.qxx / norm,
        qyy: acc.qyy / norm,
        qxy: acc.qxy / norm,
    }
}

pub fn moment_grid(bm: &Bitmap, cfg: &PipelineConfig) -> Vec<Moments> {
    let mut out = Vec::new();
    for i in 1..=bm.height() {
        for j in 1..=bm.width() {
            out.push(moments(bm, cfg, i, j));
        }
    }
    out
}

/// `|a - b| <= tol * max(|a|, |b|, 1)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

pub fn random_bitmap(rng: &mut StdRng, height: usize, width: usize) -> Bitmap {
    Bitmap::from_fn(height, width, |_, _| rng.gen()).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Every valid combination of window, boundary, origin and normalization
/// for the window sizes 2x2, 3x3 and 5x5.
pub fn all_modes() -> Vec<PipelineConfig> {
    let mut out = Vec::new();
    for (size, anchor) in [
        (2, WindowAnchor::TopLeftEven),
        (3, WindowAnchor::CenteredOdd),
        (5, WindowAnchor::CenteredOdd),
    ] {
        for boundary in [Boundary::Clamp, Boundary::Reflect, Boundary::SkipBorder] {
            for origin in [Origin::WindowCenter, Origin::Absolute] {
                for norm in [MeanNormalization::PixelCount, MeanNormalization::Paper4DiDj] {
                    for f in [QxyFactor::Two, QxyFactor::One] {
                        let cfg = PipelineConfig {
                            window_height: size,
                            window_width: size,
                            window_anchor: anchor,
                            boundary,
                            origin,
                            qxy_factor: f,
                            mean_normalization: norm,
                            ..PipelineConfig::default()
                        };
                        if cfg.validate().is_ok() {
                            out.push(cfg);
                        }
                    }
                }
            }
        }
    }
    out
}
