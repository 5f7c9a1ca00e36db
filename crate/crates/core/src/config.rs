use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How a window is placed relative to its output pixel `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowAnchor {
    /// Rows `[i - Δi, i + Δi]`; odd window dimensions.
    CenteredOdd,
    /// Rows `[i, i + height - 1]`; even window dimensions.
    TopLeftEven,
}

/// Index substitution for window pixels that fall outside the image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Nearest valid index.
    Clamp,
    /// Mirror about the border pixel without repeating it.
    Reflect,
    /// Output pixels whose window leaves the image are zero.
    SkipBorder,
}

/// Coordinate origin used for local moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Coordinates relative to the centroid of the window.
    WindowCenter,
    /// Raw pixel coordinates `x = row`, `y = col`.
    Absolute,
}

/// Factor `f` in `Qxy = Σ q·f·x·y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QxyFactor {
    /// `2xy`, the traceless-tensor convention.
    Two,
    /// `xy`, the literal local-quadrupole formula.
    One,
}

impl QxyFactor {
    pub fn value(self) -> i64 {
        match self {
            QxyFactor::Two => 2,
            QxyFactor::One => 1,
        }
    }
}

/// Normalizer of the local mean and the local moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeanNormalization {
    /// Divide by the number of window pixels (true mean; windows are neutral).
    PixelCount,
    /// Divide by `4·Δi·Δj`; centered-odd windows only.
    Paper4DiDj,
}

/// Every knob of the edge-detection pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub window_height: usize,
    pub window_width: usize,
    pub window_anchor: WindowAnchor,
    pub boundary: Boundary,
    pub origin: Origin,
    pub qxy_factor: QxyFactor,
    /// Exponent of the dipole tone map.
    pub alpha: f64,
    /// Exponent of the quadrupole tone map.
    pub beta: f64,
    pub mean_normalization: MeanNormalization,
}

impl Default for PipelineConfig {
    /// 2x2 top-left window, clamp, window-center origin, `f = 2`,
    /// `alpha = 1/2`, `beta = 1/4`, pixel-count mean.
    fn default() -> Self {
        PipelineConfig {
            window_height: 2,
            window_width: 2,
            window_anchor: WindowAnchor::TopLeftEven,
            boundary: Boundary::Clamp,
            origin: Origin::WindowCenter,
            qxy_factor: QxyFactor::Two,
            alpha: 0.5,
            beta: 0.25,
            mean_normalization: MeanNormalization::PixelCount,
        }
    }
}

impl PipelineConfig {
    /// Centered window of odd size `height x width`, other settings default.
    pub fn centered(height: usize, width: usize) -> Self {
        PipelineConfig {
            window_height: height,
            window_width: width,
            window_anchor: WindowAnchor::CenteredOdd,
            ..Default::default()
        }
    }

    /// Top-left anchored window of even size `height x width`, other settings default.
    pub fn top_left(height: usize, width: usize) -> Self {
        PipelineConfig {
            window_height: height,
            window_width: width,
            window_anchor: WindowAnchor::TopLeftEven,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (wh, ww) = (self.window_height, self.window_width);
        if wh == 0 || ww == 0 {
            return Err(Error::config(format!(
                "window {wh}x{ww} has a zero dimension"
            )));
        }
        if wh * ww < 2 {
            return Err(Error::config(
                "a 1x1 window has identically zero charge; use at least two pixels",
            ));
        }
        // A dimension of 1 is both [i, i] and [i - 0, i + 0], so it fits either anchor.
        match self.window_anchor {
            WindowAnchor::CenteredOdd => {
                if wh % 2 == 0 || ww % 2 == 0 {
                    return Err(Error::config(format!(
                        "centered-odd anchor needs odd window dimensions, got {wh}x{ww}"
                    )));
                }
            }
            WindowAnchor::TopLeftEven => {
                if (wh > 1 && wh % 2 == 1) || (ww > 1 && ww % 2 == 1) {
                    return Err(Error::config(format!(
                        "topleft-even anchor needs even window dimensions, got {wh}x{ww}"
                    )));
                }
            }
        }
        if self.mean_normalization == MeanNormalization::Paper4DiDj {
            if self.window_anchor != WindowAnchor::CenteredOdd {
                return Err(Error::config(
                    "paper-4didj normalization needs a centered-odd window (Δi, Δj undefined otherwise)",
                ));
            }
            if wh < 3 || ww < 3 {
                return Err(Error::config(format!(
                    "paper-4didj normalization needs Δi, Δj >= 1, got window {wh}x{ww}"
                )));
            }
        }
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::config(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Number of window rows above the output pixel.
    pub(crate) fn lead_rows(&self) -> usize {
        match self.window_anchor {
            WindowAnchor::CenteredOdd => (self.window_height - 1) / 2,
            WindowAnchor::TopLeftEven => 0,
        }
    }

    /// Number of window columns left of the output pixel.
    pub(crate) fn lead_cols(&self) -> usize {
        match self.window_anchor {
            WindowAnchor::CenteredOdd => (self.window_width - 1) / 2,
            WindowAnchor::TopLeftEven => 0,
        }
    }

    /// Mean/moment normalizer for a window holding `count` pixels.
    pub(crate) fn normalizer(&self, count: usize) -> u64 {
        match self.mean_normalization {
            MeanNormalization::PixelCount => count as u64,
            MeanNormalization::Paper4DiDj => 4 * self.lead_rows() as u64 * self.lead_cols() as u64,
        }
    }
}

macro_rules! named_enum {
    ($ty:ident { $($variant:ident => $name:literal),+ $(,)? }) => {
        impl $ty {
            pub const NAMES: &'static [&'static str] = &[$($name),+];

            pub fn name(self) -> &'static str {
                match self {
                    $($ty::$variant => $name),+
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($ty::$variant),)+
                    _ => Err(Error::config(format!(
                        "unknown {} '{}', expected one of: {}",
                        stringify!($ty),
                        s,
                        Self::NAMES.join(", ")
                    ))),
                }
            }
        }
    };
}

named_enum!(WindowAnchor { CenteredOdd => "centered-odd", TopLeftEven => "topleft-even" });
named_enum!(Boundary { Clamp => "clamp", Reflect => "reflect", SkipBorder => "skip-border" });
named_enum!(Origin { WindowCenter => "window-center", Absolute => "absolute" });
named_enum!(QxyFactor { Two => "2", One => "1" });
named_enum!(MeanNormalization { PixelCount => "pixel-count", Paper4DiDj => "paper-4didj" });

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let cfg = PipelineConfig::default();
        cfg.validate().unwrap();
        assert_eq!((cfg.window_height, cfg.window_width), (2, 2));
        assert_eq!(cfg.alpha, 0.5);
        assert_eq!(cfg.beta, 0.25);
    }

    #[test]
    fn anchor_parity() {
        assert!(PipelineConfig::top_left(3, 3).validate().is_err());
        assert!(PipelineConfig::top_left(2, 3).validate().is_err());
        assert!(PipelineConfig::centered(2, 2).validate().is_err());
        assert!(PipelineConfig::centered(3, 5).validate().is_ok());
        assert!(PipelineConfig::top_left(1, 2).validate().is_ok());
        assert!(PipelineConfig::centered(1, 3).validate().is_ok());
    }

    #[test]
    fn tiny_windows_rejected() {
        assert!(PipelineConfig::centered(1, 1).validate().is_err());
        assert!(PipelineConfig::top_left(0, 2).validate().is_err());
    }

    #[test]
    fn literal_normalization_needs_centered_window() {
        let cfg = PipelineConfig {
            mean_normalization: MeanNormalization::Paper4DiDj,
            ..PipelineConfig::default()
        };
        assert!(cfg.validate().is_err());
        let mut cfg = PipelineConfig::centered(3, 3);
        cfg.mean_normalization = MeanNormalization::Paper4DiDj;
        cfg.validate().unwrap();
        assert_eq!(cfg.normalizer(9), 4);
        cfg.window_width = 1;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn exponents_must_be_positive() {
        let mut cfg = PipelineConfig {
            alpha: 0.0,
            ..PipelineConfig::default()
        };
        assert!(cfg.validate().is_err());
        cfg.alpha = f64::NAN;
        assert!(cfg.validate().is_err());
        cfg.alpha = 1.0;
        cfg.beta = -0.25;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn names_round_trip() {
        for name in Boundary::NAMES {
            assert_eq!(name.parse::<Boundary>().unwrap().name(), *name);
        }
        assert_eq!(
            "paper-4didj".parse::<MeanNormalization>().unwrap(),
            MeanNormalization::Paper4DiDj
        );
        assert_eq!("1".parse::<QxyFactor>().unwrap().value(), 1);
        assert!("diagonal".parse::<WindowAnchor>().is_err());
    }
}
