//! Edge maps from local moments: dipole magnitude, quadrupole determinant,
//! and their tone-mapped 8-bit renderings.

use crate::config::PipelineConfig;
use crate::error::{Error, Result};
use crate::moments::fast_moment_fields;
use crate::types::{Bitmap, DipoleField, QuadrupoleField, ScalarField};

/// Output of [`detect_edges`].
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeResult {
    /// Dipole magnitude `P` per pixel.
    pub p_map: ScalarField,
    /// Absolute quadrupole determinant `Q` per pixel.
    pub q_map: ScalarField,
    pub p_max: f64,
    pub q_max: f64,
    /// `P` tone-mapped with exponent `alpha`.
    pub dipole_bitmap: Bitmap,
    /// `Q` tone-mapped with exponent `beta`.
    pub quadrupole_bitmap: Bitmap,
}

/// `P = sqrt(px² + py²)` per pixel.
pub fn dipole_magnitude_map(df: &DipoleField) -> ScalarField {
    df.map(|d| d.magnitude())
}

/// `Q = |qxx·qyy - qxy²|` per pixel.
pub fn quadrupole_det_map(qf: &QuadrupoleField) -> ScalarField {
    qf.map(|q| q.determinant().abs())
}

/// Maps a non-negative field to tones `round(255·(v / v_max)^exponent)`,
/// rounding half up. A field whose maximum is zero maps to all zeros.
pub fn tone_map(sf: &ScalarField, exponent: f64) -> Result<Bitmap> {
    if !(exponent.is_finite() && exponent > 0.0) {
        return Err(Error::Domain(format!(
            "tone-map exponent must be positive, got {exponent}"
        )));
    }
    if let Some(v) = sf.values().iter().find(|v| **v < 0.0) {
        return Err(Error::Domain(format!("cannot tone-map negative value {v}")));
    }
    let v_max = sf.max();
    let tones = if v_max == 0.0 {
        vec![0u8; sf.values().len()]
    } else {
        sf.values()
            .iter()
            .map(|&v| {
                let t = (255.0 * (v / v_max).powf(exponent) + 0.5).floor();
                t.clamp(0.0, 255.0) as u8
            })
            .collect()
    };
    Bitmap::new(sf.height(), sf.width(), tones)
}

/// Runs the full pipeline: moment fields, `P` and `Q` maps, maxima, and
/// the two tone-mapped bitmaps.
pub fn detect_edges(bm: &Bitmap, cfg: &PipelineConfig) -> Result<EdgeResult> {
    let (dipoles, quads) = fast_moment_fields(bm, cfg)?;
    let p_map = dipole_magnitude_map(&dipoles);
    let q_map = quadrupole_det_map(&quads);
    let dipole_bitmap = tone_map(&p_map, cfg.alpha)?;
    let quadrupole_bitmap = tone_map(&q_map, cfg.beta)?;
    Ok(EdgeResult {
        p_max: p_map.max(),
        q_max: q_map.max(),
        p_map,
        q_map,
        dipole_bitmap,
        quadrupole_bitmap,
    })
}
