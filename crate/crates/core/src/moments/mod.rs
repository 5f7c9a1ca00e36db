//! Global and local dipole/quadrupole moments of a bitmap.
//!
//! Tones act as charges. Locally, the charge of a window pixel is its tone
//! minus the mean of that same window, so in pixel-count mode every
//! window is neutral and its dipole does not depend on the origin.
//!
//! The per-window functions here are the direct reference evaluation.
//! [`fast_moment_fields`] produces the same fields from summed-area tables.

mod fast;

pub use fast::fast_moment_fields;

use crate::config::{Boundary, Origin, PipelineConfig, QxyFactor};
use crate::error::{Error, Result};
use crate::types::{
    Bitmap, DipoleField, DipoleVector, QuadrupoleField, QuadrupoleTensor, ScalarField,
};
use crate::window::{resolve_window, window_fits, WindowSpec};

/// Dipole of the whole image in absolute coordinates, normalized by `h·w`.
pub fn global_dipole(bm: &Bitmap) -> DipoleVector {
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in 1..=bm.height() {
        for j in 1..=bm.width() {
            let b = bm.at(i - 1, j - 1) as f64;
            sx += b * i as f64;
            sy += b * j as f64;
        }
    }
    let n = (bm.height() * bm.width()) as f64;
    DipoleVector {
        px: sx / n,
        py: sy / n,
    }
}

/// Traceless quadrupole of the whole image in absolute coordinates,
/// normalized by `h·w`, with the `2xy` off-diagonal convention.
pub fn global_quadrupole(bm: &Bitmap) -> QuadrupoleTensor {
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for i in 1..=bm.height() {
        for j in 1..=bm.width() {
            let b = bm.at(i - 1, j - 1) as f64;
            let (x, y) = (i as f64, j as f64);
            sxx += b * (2.0 * x * x - (x * x + y * y));
            sxy += b * 2.0 * x * y;
        }
    }
    let n = (bm.height() * bm.width()) as f64;
    QuadrupoleTensor::traceless(sxx / n, sxy / n)
}

/// Local average brightness over `win`, divided by the configured normalizer.
pub fn local_mean(bm: &Bitmap, win: &WindowSpec, cfg: &PipelineConfig) -> Result<f64> {
    cfg.validate()?;
    let sum: u64 = win.pixels().map(|(r, c)| tone(bm, r, c) as u64).sum();
    Ok(sum as f64 / cfg.normalizer(win.count) as f64)
}

/// Charges `b - M` of every pixel of `win`, row-major, relative to the mean
/// of `win` itself.
pub fn window_charges(bm: &Bitmap, win: &WindowSpec, cfg: &PipelineConfig) -> Result<Vec<f64>> {
    let mean = local_mean(bm, win, cfg)?;
    Ok(win
        .pixels()
        .map(|(r, c)| tone(bm, r, c) as f64 - mean)
        .collect())
}

/// Local mean `M(i, j)` at every pixel; zero where a skip-border window
/// leaves the image.
pub fn mean_map(bm: &Bitmap, cfg: &PipelineConfig) -> Result<ScalarField> {
    per_pixel(bm, cfg, |win, _| local_mean(bm, win, cfg))
}

/// Charge `q(i, j) = b(i, j) - M(i, j)` at every pixel.
pub fn charge_map(bm: &Bitmap, cfg: &PipelineConfig) -> Result<ScalarField> {
    // (D·b - Σb) / D keeps the charge exact up to one rounding
    per_pixel(bm, cfg, |win, (i, j)| {
        let sum: i64 = win.pixels().map(|(r, c)| tone(bm, r, c) as i64).sum();
        let d = cfg.normalizer(win.count) as i64;
        Ok((d * tone(bm, i, j) as i64 - sum) as f64 / d as f64)
    })
}

/// Moments of the distribution `b(k, l) - mean` over `win`, divided by
/// `normalizer`.
///
/// With `mean = 0` the charges are the raw tones, which is how the global
/// moments are recovered from the local definition.
pub fn window_moments(
    bm: &Bitmap,
    win: &WindowSpec,
    mean: f64,
    normalizer: f64,
    origin: Origin,
    qxy_factor: QxyFactor,
) -> (DipoleVector, QuadrupoleTensor) {
    let (ox, oy) = match origin {
        Origin::WindowCenter => (win.centroid_x, win.centroid_y),
        Origin::Absolute => (0.0, 0.0),
    };
    let f = qxy_factor.value() as f64;
    let (mut px, mut py, mut qxx, mut qxy) = (0.0, 0.0, 0.0, 0.0);
    for (k, l) in win.pixels() {
        let q = tone(bm, k, l) as f64 - mean;
        let x = k as f64 - ox;
        let y = l as f64 - oy;
        let r2 = x * x + y * y;
        px += q * x;
        py += q * y;
        qxx += q * (2.0 * x * x - r2);
        qxy += q * f * x * y;
    }
    (
        DipoleVector {
            px: px / normalizer,
            py: py / normalizer,
        },
        QuadrupoleTensor::traceless(qxx / normalizer, qxy / normalizer),
    )
}

/// Local dipole and quadrupole of the window anchored at `(i, j)`.
pub fn moments_at(
    bm: &Bitmap,
    cfg: &PipelineConfig,
    i: usize,
    j: usize,
) -> Result<(DipoleVector, QuadrupoleTensor)> {
    cfg.validate()?;
    if cfg.boundary == Boundary::SkipBorder && !window_fits(cfg, bm.height(), bm.width(), i, j) {
        bm.coordinates(i, j)?;
        return Ok(Default::default());
    }
    let win = resolve_window(cfg, bm, i, j)?;
    let mean = local_mean(bm, &win, cfg)?;
    let norm = cfg.normalizer(win.count) as f64;
    Ok(window_moments(
        bm,
        &win,
        mean,
        norm,
        cfg.origin,
        cfg.qxy_factor,
    ))
}

/// Reference evaluation of both local moment fields, one window at a time.
pub fn naive_moment_fields(
    bm: &Bitmap,
    cfg: &PipelineConfig,
) -> Result<(DipoleField, QuadrupoleField)> {
    cfg.validate()?;
    let (h, w) = (bm.height(), bm.width());
    let mut dipoles = Vec::with_capacity(h * w);
    let mut quads = Vec::with_capacity(h * w);
    for i in 1..=h {
        for j in 1..=w {
            let (p, q) = moments_at(bm, cfg, i, j)?;
            dipoles.push(p);
            quads.push(q);
        }
    }
    Ok((
        DipoleField::from_parts(h, w, dipoles),
        QuadrupoleField::from_parts(h, w, quads),
    ))
}

pub fn local_dipole_field(bm: &Bitmap, cfg: &PipelineConfig) -> Result<DipoleField> {
    naive_moment_fields(bm, cfg).map(|(d, _)| d)
}

pub fn local_quadrupole_field(bm: &Bitmap, cfg: &PipelineConfig) -> Result<QuadrupoleField> {
    naive_moment_fields(bm, cfg).map(|(_, q)| q)
}

fn tone(bm: &Bitmap, row: usize, col: usize) -> u8 {
    bm.at(row - 1, col - 1)
}

fn per_pixel(
    bm: &Bitmap,
    cfg: &PipelineConfig,
    mut f: impl FnMut(&WindowSpec, (usize, usize)) -> Result<f64>,
) -> Result<ScalarField> {
    cfg.validate()?;
    let (h, w) = (bm.height(), bm.width());
    let mut values = Vec::with_capacity(h * w);
    for i in 1..=h {
        for j in 1..=w {
            if cfg.boundary == Boundary::SkipBorder && !window_fits(cfg, h, w, i, j) {
                values.push(0.0);
                continue;
            }
            let win = resolve_window(cfg, bm, i, j)?;
            values.push(f(&win, (i, j))?);
        }
    }
    ScalarField::new(h, w, values).map_err(|e| Error::Field(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::MeanNormalization;

    fn bm(h: usize, w: usize, tones: &[u8]) -> Bitmap {
        Bitmap::new(h, w, tones.to_vec()).unwrap()
    }

    #[test]
    fn global_dipole_examples() {
        let d = global_dipole(&bm(2, 2, &[1, 1, 1, 1]));
        assert_eq!((d.px, d.py), (1.5, 1.5));
        let d = global_dipole(&Bitmap::constant(5, 3, 0).unwrap());
        assert_eq!((d.px, d.py), (0.0, 0.0));
        let d = global_dipole(&bm(1, 2, &[0, 255]));
        assert_eq!((d.px, d.py), (127.5, 255.0));
    }

    #[test]
    fn global_quadrupole_examples() {
        let q = global_quadrupole(&Bitmap::constant(3, 3, 0).unwrap());
        assert_eq!((q.qxx(), q.qyy(), q.qxy()), (0.0, 0.0, 0.0));
        let q = global_quadrupole(&bm(1, 1, &[255]));
        assert_eq!((q.qxx(), q.qyy(), q.qxy()), (0.0, 0.0, 510.0));
        let q = global_quadrupole(&bm(2, 2, &[1, 1, 1, 1]));
        assert_eq!(q.qxx(), -q.qyy());
    }

    #[test]
    fn local_mean_examples() {
        let cfg = PipelineConfig::default();
        let b = bm(2, 2, &[10, 20, 30, 40]);
        let win = resolve_window(&cfg, &b, 1, 1).unwrap();
        assert_eq!(local_mean(&b, &win, &cfg).unwrap(), 25.0);

        let c = Bitmap::constant(6, 6, 77).unwrap();
        for cfg in [PipelineConfig::default(), PipelineConfig::centered(5, 3)] {
            let win = resolve_window(&cfg, &c, 1, 6).unwrap();
            assert_eq!(local_mean(&c, &win, &cfg).unwrap(), 77.0);
        }

        // nine tones 2, 4, ..., 18 summing to 90
        let nine = Bitmap::from_fn(3, 3, |i, j| (2 * ((i - 1) * 3 + j)) as u8).unwrap();
        let cfg = PipelineConfig {
            mean_normalization: MeanNormalization::Paper4DiDj,
            ..PipelineConfig::centered(3, 3)
        };
        let win = resolve_window(&cfg, &nine, 2, 2).unwrap();
        assert_eq!(local_mean(&nine, &win, &cfg).unwrap(), 22.5);
    }

    #[test]
    fn literal_mean_rejects_top_left() {
        let cfg = PipelineConfig {
            mean_normalization: MeanNormalization::Paper4DiDj,
            ..PipelineConfig::default()
        };
        let b = bm(2, 2, &[1, 2, 3, 4]);
        let win = WindowSpec::new(vec![1, 2], vec![1, 2]).unwrap();
        assert!(matches!(local_mean(&b, &win, &cfg), Err(Error::Config(_))));
    }

    #[test]
    fn charges_of_a_two_pixel_window() {
        let b = bm(1, 2, &[0, 255]);
        let cfg = PipelineConfig::top_left(1, 2);
        let win = resolve_window(&cfg, &b, 1, 1).unwrap();
        assert_eq!(window_charges(&b, &win, &cfg).unwrap(), vec![-127.5, 127.5]);
        // pixel (1, 2) clamps to the window {2, 2}
        assert_eq!(charge_map(&b, &cfg).unwrap().values(), &[-127.5, 0.0]);
    }

    #[test]
    fn constant_bitmap_has_no_charge() {
        let c = Bitmap::constant(5, 7, 200).unwrap();
        for cfg in [PipelineConfig::default(), PipelineConfig::centered(3, 5)] {
            assert!(charge_map(&c, &cfg)
                .unwrap()
                .values()
                .iter()
                .all(|&q| q == 0.0));
            let (d, q) = naive_moment_fields(&c, &cfg).unwrap();
            assert!(d.values().iter().all(|v| v.px == 0.0 && v.py == 0.0));
            assert!(q.values().iter().all(|t| t.qxx() == 0.0 && t.qxy() == 0.0));
        }
    }

    #[test]
    fn charge_map_ignores_shift() {
        let b = Bitmap::from_fn(6, 5, |i, j| ((i * 37 + j * 11) % 200) as u8).unwrap();
        let shifted = b.map_tones(|t| t + 7);
        for cfg in [PipelineConfig::default(), PipelineConfig::centered(3, 3)] {
            let a = charge_map(&b, &cfg).unwrap();
            let s = charge_map(&shifted, &cfg).unwrap();
            for (x, y) in a.values().iter().zip(s.values()) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn vertical_step_window() {
        let b = bm(2, 2, &[0, 0, 255, 255]);
        let (p, q) = moments_at(&b, &PipelineConfig::default(), 1, 1).unwrap();
        assert_eq!((p.px, p.py), (63.75, 0.0));
        assert_eq!((q.qxx(), q.qxy()), (0.0, 0.0));

        let (p, _) = moments_at(&b.transpose(), &PipelineConfig::default(), 1, 1).unwrap();
        assert_eq!((p.px, p.py), (0.0, 63.75));
    }

    #[test]
    fn checkerboard_window() {
        let b = bm(2, 2, &[255, 0, 0, 255]);
        let (p, q) = moments_at(&b, &PipelineConfig::default(), 1, 1).unwrap();
        assert_eq!((p.px, p.py), (0.0, 0.0));
        assert_eq!((q.qxx(), q.qyy(), q.qxy()), (0.0, 0.0, 63.75));
        let literal = PipelineConfig {
            qxy_factor: QxyFactor::One,
            ..PipelineConfig::default()
        };
        let (_, q) = moments_at(&b, &literal, 1, 1).unwrap();
        assert_eq!(q.qxy(), 31.875);
    }

    #[test]
    fn skip_border_pixels_are_zero() {
        let b = Bitmap::from_fn(4, 4, |i, j| (i * 40 + j * 3) as u8).unwrap();
        let cfg = PipelineConfig {
            boundary: Boundary::SkipBorder,
            ..PipelineConfig::centered(3, 3)
        };
        let (d, _) = naive_moment_fields(&b, &cfg).unwrap();
        assert_eq!(d.get(1, 2).unwrap(), DipoleVector::default());
        assert_ne!(d.get(2, 2).unwrap(), DipoleVector::default());
        assert_eq!(mean_map(&b, &cfg).unwrap().get(4, 4), Some(0.0));
    }

    #[test]
    fn full_window_reproduces_global_moments() {
        let b = Bitmap::from_fn(5, 7, |i, j| ((i * 53 + j * 29) % 256) as u8).unwrap();
        let win = WindowSpec::full(&b);
        let n = (b.height() * b.width()) as f64;
        let (p, q) = window_moments(&b, &win, 0.0, n, Origin::Absolute, QxyFactor::Two);
        let gp = global_dipole(&b);
        let gq = global_quadrupole(&b);
        assert!((p.px - gp.px).abs() <= 1e-12 * gp.px.abs());
        assert!((p.py - gp.py).abs() <= 1e-12 * gp.py.abs());
        assert!((q.qxx() - gq.qxx()).abs() <= 1e-9 * gq.qxx().abs().max(1.0));
        assert!((q.qxy() - gq.qxy()).abs() <= 1e-9 * gq.qxy().abs().max(1.0));
    }
}
