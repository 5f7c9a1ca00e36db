//! Window-size independent evaluation of the local moment fields.
//!
//! The image is padded so that every window, after boundary substitution,
//! is a contiguous rectangle of the padded grid. Padded cells keep the
//! coordinates of the source pixel they replicate. Six summed-area tables
//! of `b`, `b·x`, `b·y`, `b·x²`, `b·y²`, `b·x·y` then give each window's
//! raw sums in O(1).
//!
//! All sums are integers. The tables use wrapping `i64` arithmetic: the
//! prefix totals may overflow on huge images, but each window sum is small
//! and comes out exact modulo 2^64. Centering and mean subtraction are done
//! on exact `i128` numerators, so each output component is rounded once,
//! when the numerator is divided by its denominator.

use crate::config::{Boundary, Origin, PipelineConfig};
use crate::error::Result;
use crate::types::{Bitmap, DipoleField, DipoleVector, QuadrupoleField, QuadrupoleTensor};
use crate::window::{substitute_index, window_fits};

const B: usize = 0;
const BX: usize = 1;
const BY: usize = 2;
const BXX: usize = 3;
const BYY: usize = 4;
const BXY: usize = 5;

type Sums = [i64; 6];

/// Local dipole and quadrupole fields in O(h·w) time for any window size.
///
/// Agrees with [`naive_moment_fields`](super::naive_moment_fields) to
/// floating-point rounding.
pub fn fast_moment_fields(
    bm: &Bitmap,
    cfg: &PipelineConfig,
) -> Result<(DipoleField, QuadrupoleField)> {
    cfg.validate()?;
    let (h, w) = (bm.height(), bm.width());
    let (wh, ww) = (cfg.window_height, cfg.window_width);

    // Skipped windows are zeroed below, so their padding content is irrelevant.
    let pad_mode = match cfg.boundary {
        Boundary::SkipBorder => Boundary::Clamp,
        b => b,
    };
    let row_src = padded_axis(h, cfg.lead_rows(), wh, pad_mode);
    let col_src = padded_axis(w, cfg.lead_cols(), ww, pad_mode);
    let table = SummedArea::new(bm, &row_src, &col_src);
    let rows = AxisSums::new(&row_src);
    let cols = AxisSums::new(&col_src);

    let n = (wh * ww) as i128;
    let d = cfg.normalizer(wh * ww) as i128;
    let f = cfg.qxy_factor.value() as i128;
    let dipole_den = (n * d * d) as f64;
    let quad_den = (n * n * d * d) as f64;

    let mut dipoles = Vec::with_capacity(h * w);
    let mut quads = Vec::with_capacity(h * w);
    for r in 0..h {
        let (sx1, sxx1) = rows.window(r, wh);
        // the coordinate sums over a product window scale by the other side
        let (sx1, sxx1) = (sx1 * ww as i128, sxx1 * ww as i128);
        for c in 0..w {
            if cfg.boundary == Boundary::SkipBorder && !window_fits(cfg, h, w, r + 1, c + 1) {
                dipoles.push(DipoleVector::default());
                quads.push(QuadrupoleTensor::default());
                continue;
            }
            let (sy1, syy1) = cols.window(c, ww);
            let (sy1, syy1) = (sy1 * wh as i128, syy1 * wh as i128);
            let sxy1 = sx1 * sy1 / n;

            let s = table.window(r, c, wh, ww).map(i128::from);
            // origin = (a / n, cc / n)
            let (a, cc) = match cfg.origin {
                Origin::WindowCenter => (sx1, sy1),
                Origin::Absolute => (0, 0),
            };

            // n·D·Σ q·u and n·D·Σ q·v
            let px_num = d * (n * s[BX] - a * s[B]) - n * s[B] * (sx1 - a);
            let py_num = d * (n * s[BY] - cc * s[B]) - n * s[B] * (sy1 - cc);

            // D·n²·Σ q·u², D·n²·Σ q·v², D·n²·Σ q·u·v
            let u2_num = d * (n * n * s[BXX] - 2 * a * n * s[BX] + a * a * s[B])
                - s[B] * (n * n * sxx1 - 2 * a * n * sx1 + a * a * n);
            let v2_num = d * (n * n * s[BYY] - 2 * cc * n * s[BY] + cc * cc * s[B])
                - s[B] * (n * n * syy1 - 2 * cc * n * sy1 + cc * cc * n);
            let uv_num = d * (n * n * s[BXY] - a * n * s[BY] - cc * n * s[BX] + a * cc * s[B])
                - s[B] * (n * n * sxy1 - a * n * sy1 - cc * n * sx1 + a * cc * n);

            dipoles.push(DipoleVector {
                px: px_num as f64 / dipole_den,
                py: py_num as f64 / dipole_den,
            });
            quads.push(QuadrupoleTensor::traceless(
                (u2_num - v2_num) as f64 / quad_den,
                (f * uv_num) as f64 / quad_den,
            ));
        }
    }
    Ok((
        DipoleField::from_parts(h, w, dipoles),
        QuadrupoleField::from_parts(h, w, quads),
    ))
}

/// Source coordinate (1-based) of every padded position along one axis.
fn padded_axis(len: usize, lead: usize, size: usize, boundary: Boundary) -> Vec<i64> {
    (0..len + size - 1)
        .map(|p| {
            let index = p as i64 - lead as i64 + 1;
            substitute_index(index, len, boundary).expect("padding mode never skips") as i64
        })
        .collect()
}

/// Prefix sums of coordinates and squared coordinates along one padded axis.
struct AxisSums {
    sum: Vec<i128>,
    sum_sq: Vec<i128>,
}

impl AxisSums {
    fn new(src: &[i64]) -> Self {
        let mut sum = vec![0i128; src.len() + 1];
        let mut sum_sq = vec![0i128; src.len() + 1];
        for (k, &x) in src.iter().enumerate() {
            let x = x as i128;
            sum[k + 1] = sum[k] + x;
            sum_sq[k + 1] = sum_sq[k] + x * x;
        }
        AxisSums { sum, sum_sq }
    }

    fn window(&self, start: usize, size: usize) -> (i128, i128) {
        (
            self.sum[start + size] - self.sum[start],
            self.sum_sq[start + size] - self.sum_sq[start],
        )
    }
}

struct SummedArea {
    stride: usize,
    cells: Vec<Sums>,
}

impl SummedArea {
    fn new(bm: &Bitmap, row_src: &[i64], col_src: &[i64]) -> Self {
        let stride = col_src.len() + 1;
        let mut cells = vec![[0i64; 6]; (row_src.len() + 1) * stride];
        for (p, &x) in row_src.iter().enumerate() {
            let mut run: Sums = [0; 6];
            for (q, &y) in col_src.iter().enumerate() {
                let b = bm.at(x as usize - 1, y as usize - 1) as i64;
                let bx = b * x;
                let by = b * y;
                let terms = [b, bx, by, bx * x, by * y, bx * y];
                let above = cells[p * stride + q + 1];
                let cell = &mut cells[(p + 1) * stride + q + 1];
                for k in 0..6 {
                    run[k] = run[k].wrapping_add(terms[k]);
                    cell[k] = above[k].wrapping_add(run[k]);
                }
            }
        }
        SummedArea { stride, cells }
    }

    /// Sums over padded rows `r..r + wh` and columns `c..c + ww`.
    #[inline]
    fn window(&self, r: usize, c: usize, wh: usize, ww: usize) -> Sums {
        let s = self.stride;
        let (top, bottom) = (r * s, (r + wh) * s);
        let (a, b, cc, d) = (
            &self.cells[bottom + c + ww],
            &self.cells[top + c + ww],
            &self.cells[bottom + c],
            &self.cells[top + c],
        );
        std::array::from_fn(|k| {
            a[k].wrapping_sub(b[k])
                .wrapping_sub(cc[k])
                .wrapping_add(d[k])
        })
    }
}
