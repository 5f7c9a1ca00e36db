//! Image and field types.
//!
//! Public indices are 1-based: pixel `(i, j)` sits at row `i`, column `j`
//! with `1 <= i <= height` and `1 <= j <= width`, and its coordinates are
//! `x = i`, `y = j`. Storage is row-major and 0-based; the conversion lives
//! in [`Field::get`], [`Bitmap::get`] and [`pixel_coordinates`].

use crate::error::{Error, Result};

/// An 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitmap {
    height: usize,
    width: usize,
    tones: Vec<u8>,
}

impl Bitmap {
    pub fn new(height: usize, width: usize, tones: Vec<u8>) -> Result<Self> {
        check_dims(height, width)?;
        if tones.len() != height * width {
            return Err(Error::Field(format!(
                "{} tones for a {height}x{width} bitmap",
                tones.len()
            )));
        }
        Ok(Bitmap {
            height,
            width,
            tones,
        })
    }

    /// Builds a bitmap from a function of the 1-based `(row, col)`.
    pub fn from_fn(
        height: usize,
        width: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        check_dims(height, width)?;
        let mut tones = Vec::with_capacity(height * width);
        for i in 1..=height {
            for j in 1..=width {
                tones.push(f(i, j));
            }
        }
        Ok(Bitmap {
            height,
            width,
            tones,
        })
    }

    pub fn constant(height: usize, width: usize, tone: u8) -> Result<Self> {
        Self::from_fn(height, width, |_, _| tone)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Row-major tones.
    pub fn tones(&self) -> &[u8] {
        &self.tones
    }

    pub fn into_tones(self) -> Vec<u8> {
        self.tones
    }

    /// Tone at the 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Option<u8> {
        if (1..=self.height).contains(&row) && (1..=self.width).contains(&col) {
            Some(self.tones[(row - 1) * self.width + (col - 1)])
        } else {
            None
        }
    }

    /// 0-based access for the inner loops.
    #[inline]
    pub(crate) fn at(&self, r: usize, c: usize) -> u8 {
        self.tones[r * self.width + c]
    }

    /// Coordinates of the 1-based `(row, col)`.
    pub fn coordinates(&self, row: usize, col: usize) -> Result<(f64, f64)> {
        pixel_coordinates(row, col, self.height, self.width)
    }

    pub fn transpose(&self) -> Bitmap {
        let mut tones = Vec::with_capacity(self.tones.len());
        for c in 0..self.width {
            for r in 0..self.height {
                tones.push(self.at(r, c));
            }
        }
        Bitmap {
            height: self.width,
            width: self.height,
            tones,
        }
    }

    /// Applies `f` to every tone.
    pub fn map_tones(&self, f: impl Fn(u8) -> u8) -> Bitmap {
        Bitmap {
            height: self.height,
            width: self.width,
            tones: self.tones.iter().map(|&t| f(t)).collect(),
        }
    }
}

/// Maps a 1-based pixel index to its `(x, y)` coordinates, `x = row`, `y = col`.
pub fn pixel_coordinates(
    row: usize,
    col: usize,
    height: usize,
    width: usize,
) -> Result<(f64, f64)> {
    if row == 0 || col == 0 || row > height || col > width {
        return Err(Error::Index {
            row,
            col,
            height,
            width,
        });
    }
    Ok((row as f64, col as f64))
}

fn check_dims(height: usize, width: usize) -> Result<()> {
    if height == 0 || width == 0 {
        return Err(Error::Field(format!("empty {height}x{width} grid")));
    }
    Ok(())
}

/// Per-pixel value stored in a [`Field`].
pub trait FieldValue: Copy {
    fn validate(&self) -> Result<()>;
}

impl FieldValue for f64 {
    fn validate(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::Field(format!("non-finite value {self}")))
        }
    }
}

/// Dipole moment `(px, py)` of a charge distribution.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DipoleVector {
    pub px: f64,
    pub py: f64,
}

impl DipoleVector {
    pub fn new(px: f64, py: f64) -> Result<Self> {
        let v = DipoleVector { px, py };
        v.validate()?;
        Ok(v)
    }

    pub fn magnitude(&self) -> f64 {
        (self.px * self.px + self.py * self.py).sqrt()
    }
}

impl FieldValue for DipoleVector {
    fn validate(&self) -> Result<()> {
        if self.px.is_finite() && self.py.is_finite() {
            Ok(())
        } else {
            Err(Error::Field(format!("non-finite dipole {self:?}")))
        }
    }
}

/// Symmetric traceless 2x2 quadrupole tensor.
///
/// Fields are private so that `qxx + qyy = 0` cannot be broken after
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadrupoleTensor {
    qxx: f64,
    qyy: f64,
    qxy: f64,
}

impl QuadrupoleTensor {
    /// Checked constructor; accepts `|qxx + qyy| <= 1e-9 * max(|qxx|, |qyy|, 1)`.
    pub fn new(qxx: f64, qyy: f64, qxy: f64) -> Result<Self> {
        let t = QuadrupoleTensor { qxx, qyy, qxy };
        t.validate()?;
        Ok(t)
    }

    /// Builds the tensor from its two free components with `qyy = -qxx`.
    pub fn traceless(qxx: f64, qxy: f64) -> Self {
        QuadrupoleTensor {
            qxx,
            qyy: -qxx,
            qxy,
        }
    }

    pub fn qxx(&self) -> f64 {
        self.qxx
    }

    pub fn qyy(&self) -> f64 {
        self.qyy
    }

    pub fn qxy(&self) -> f64 {
        self.qxy
    }

    pub fn determinant(&self) -> f64 {
        self.qxx * self.qyy - self.qxy * self.qxy
    }
}

impl FieldValue for QuadrupoleTensor {
    fn validate(&self) -> Result<()> {
        if !(self.qxx.is_finite() && self.qyy.is_finite() && self.qxy.is_finite()) {
            return Err(Error::Field(format!("non-finite quadrupole {self:?}")));
        }
        let scale = self.qxx.abs().max(self.qyy.abs()).max(1.0);
        if (self.qxx + self.qyy).abs() > 1e-9 * scale {
            return Err(Error::Field(format!(
                "quadrupole trace {} is not zero",
                self.qxx + self.qyy
            )));
        }
        Ok(())
    }
}

/// Immutable `height x width` grid of per-pixel values, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Field<T> {
    height: usize,
    width: usize,
    values: Vec<T>,
}

/// Real-valued map: local means, charges, `P` and `Q`.
pub type ScalarField = Field<f64>;
pub type DipoleField = Field<DipoleVector>;
pub type QuadrupoleField = Field<QuadrupoleTensor>;

impl<T: FieldValue> Field<T> {
    pub fn new(height: usize, width: usize, values: Vec<T>) -> Result<Self> {
        check_dims(height, width)?;
        if values.len() != height * width {
            return Err(Error::Field(format!(
                "{} values for a {height}x{width} field",
                values.len()
            )));
        }
        for v in &values {
            v.validate()?;
        }
        Ok(Field {
            height,
            width,
            values,
        })
    }

    /// Constructor for values produced by this crate that already satisfy
    /// the per-value invariants.
    pub(crate) fn from_parts(height: usize, width: usize, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), height * width);
        debug_assert!(values.iter().all(|v| v.validate().is_ok()));
        Field {
            height,
            width,
            values,
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value at the 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Option<T> {
        if (1..=self.height).contains(&row) && (1..=self.width).contains(&col) {
            Some(self.values[(row - 1) * self.width + (col - 1)])
        } else {
            None
        }
    }

    /// Applies `f` per value, keeping the shape.
    pub fn map<U: FieldValue>(&self, f: impl Fn(&T) -> U) -> Field<U> {
        Field::from_parts(self.height, self.width, self.values.iter().map(f).collect())
    }

    pub fn transpose(&self) -> Field<T> {
        let mut values = Vec::with_capacity(self.values.len());
        for c in 0..self.width {
            for r in 0..self.height {
                values.push(self.values[r * self.width + c]);
            }
        }
        Field {
            height: self.width,
            width: self.height,
            values,
        }
    }
}

impl ScalarField {
    /// Largest value, scanning row-major. Computed on every call.
    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

impl DipoleField {
    pub fn px(&self) -> ScalarField {
        self.map(|d| d.px)
    }

    pub fn py(&self) -> ScalarField {
        self.map(|d| d.py)
    }
}

impl QuadrupoleField {
    pub fn qxx(&self) -> ScalarField {
        self.map(|q| q.qxx())
    }

    pub fn qyy(&self) -> ScalarField {
        self.map(|q| q.qyy())
    }

    pub fn qxy(&self) -> ScalarField {
        self.map(|q| q.qxy())
    }
}
