//! Dipole and quadrupole moment maps of grayscale images.
//!
//! Each pixel's neighborhood is treated as a charge distribution whose
//! charges are the tones minus the local mean. The magnitude of the local
//! dipole and the absolute determinant of the local traceless quadrupole
//! both light up along edges; [`detect_edges`] renders them as 8-bit maps.
//!
//! ```
//! use multipole::{detect_edges, Bitmap, PipelineConfig};
//!
//! let step = Bitmap::from_fn(8, 8, |_, j| if j <= 4 { 0 } else { 255 }).unwrap();
//! let edges = detect_edges(&step, &PipelineConfig::default()).unwrap();
//! assert_eq!(edges.dipole_bitmap.get(3, 4), Some(255));
//! assert_eq!(edges.dipole_bitmap.get(3, 2), Some(0));
//! ```

pub mod config;
pub mod error;
pub mod moments;
pub mod pgm;
pub mod pipeline;
pub mod types;
pub mod window;

pub use config::{Boundary, MeanNormalization, Origin, PipelineConfig, QxyFactor, WindowAnchor};
pub use error::{Error, Result};
pub use moments::{
    charge_map, fast_moment_fields, global_dipole, global_quadrupole, local_dipole_field,
    local_mean, local_quadrupole_field, mean_map, naive_moment_fields, window_charges,
    window_moments,
};
pub use pgm::{read_pgm, read_pgm_header, write_pgm, PgmFormat, PgmHeader};
pub use pipeline::{detect_edges, dipole_magnitude_map, quadrupole_det_map, tone_map, EdgeResult};
pub use types::{
    pixel_coordinates, Bitmap, DipoleField, DipoleVector, Field, FieldValue, QuadrupoleField,
    QuadrupoleTensor, ScalarField,
};
pub use window::{resolve_window, WindowSpec};
