//! Neighborhood resolution: which pixels (with multiplicity) a window covers.

use crate::config::{Boundary, PipelineConfig};
use crate::error::{Error, Result};
use crate::types::Bitmap;

/// Resolved neighborhood of one output pixel.
///
/// Indices are 1-based and already substituted per the boundary mode, so
/// a clamped window may list the same row twice. The window is the
/// Cartesian product `rows x cols`.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSpec {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Mean of the row coordinates summed over.
    pub centroid_x: f64,
    /// Mean of the column coordinates summed over.
    pub centroid_y: f64,
    pub count: usize,
}

impl WindowSpec {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        let count = rows.len() * cols.len();
        if count == 0 {
            return Err(Error::config("window covers no pixels"));
        }
        let centroid_x = rows.iter().sum::<usize>() as f64 / rows.len() as f64;
        let centroid_y = cols.iter().sum::<usize>() as f64 / cols.len() as f64;
        Ok(WindowSpec {
            rows,
            cols,
            centroid_x,
            centroid_y,
            count,
        })
    }

    /// Window over the whole image.
    pub fn full(bm: &Bitmap) -> Self {
        // rows and cols are non-empty for any bitmap
        WindowSpec::new((1..=bm.height()).collect(), (1..=bm.width()).collect())
            .expect("bitmap is non-empty")
    }

    /// `(row, col)` pairs in row-major order.
    pub fn pixels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .flat_map(move |&r| self.cols.iter().map(move |&c| (r, c)))
    }
}

/// Substitutes a possibly out-of-range 1-based index into `1..=len`.
///
/// Returns `None` for out-of-range indices under [`Boundary::SkipBorder`].
pub fn substitute_index(index: i64, len: usize, boundary: Boundary) -> Option<usize> {
    let n = len as i64;
    if (1..=n).contains(&index) {
        return Some(index as usize);
    }
    match boundary {
        Boundary::SkipBorder => None,
        Boundary::Clamp => Some(index.clamp(1, n) as usize),
        Boundary::Reflect => {
            if n == 1 {
                return Some(1);
            }
            let period = 2 * (n - 1);
            let k = (index - 1).rem_euclid(period);
            Some(if k < n { k + 1 } else { period - k + 1 } as usize)
        }
    }
}

/// Whether the unsubstituted window of `(i, j)` lies inside the image.
pub fn window_fits(cfg: &PipelineConfig, height: usize, width: usize, i: usize, j: usize) -> bool {
    let (lr, lc) = (cfg.lead_rows(), cfg.lead_cols());
    i > lr
        && j > lc
        && i - lr + cfg.window_height - 1 <= height
        && j - lc + cfg.window_width - 1 <= width
}

/// Resolves the neighborhood of the 1-based pixel `(i, j)`.
pub fn resolve_window(cfg: &PipelineConfig, bm: &Bitmap, i: usize, j: usize) -> Result<WindowSpec> {
    cfg.validate()?;
    let (h, w) = (bm.height(), bm.width());
    if i == 0 || j == 0 || i > h || j > w {
        return Err(Error::Index {
            row: i,
            col: j,
            height: h,
            width: w,
        });
    }
    if cfg.boundary == Boundary::SkipBorder && !window_fits(cfg, h, w, i, j) {
        return Err(Error::Domain(format!(
            "window of ({i}, {j}) leaves the image under skip-border"
        )));
    }
    let rows = axis_indices(i, cfg.lead_rows(), cfg.window_height, h, cfg.boundary);
    let cols = axis_indices(j, cfg.lead_cols(), cfg.window_width, w, cfg.boundary);
    WindowSpec::new(rows, cols)
}

fn axis_indices(
    center: usize,
    lead: usize,
    size: usize,
    len: usize,
    boundary: Boundary,
) -> Vec<usize> {
    let start = center as i64 - lead as i64;
    (start..start + size as i64)
        .map(|k| substitute_index(k, len, boundary).expect("checked by window_fits"))
        .collect()
}
