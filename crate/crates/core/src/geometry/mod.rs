//! Airfoil geometry: the shared chordwise station grid, PARSEC surface
//! construction, cross-section area, and Selig-format coordinate I/O.

mod calibrate;
mod grid;
mod parsec;
mod selig;

pub use calibrate::{fit_fixed_parsec_defaults, naca0012_reference, CALIBRATION_AREA_TARGET};
pub use grid::{vinokur_grid, StationGrid, Surface};
pub use parsec::{airfoil_area, evaluate_airfoil, solve_parsec_surface};
pub use parsec::{AirfoilShape, FixedParsec, ParsecParams, SurfaceCoeffs};
pub use selig::{parse_selig, read_selig, write_selig};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("infeasible spacing pair (n={n}, d0={d0}, d1={d1}): {reason}")]
    InfeasibleSpacing {
        n: usize,
        d0: f64,
        d1: f64,
        reason: String,
    },
    #[error("singular PARSEC system: {parameter} = {value} leaves no solvable surface")]
    SingularSurface { parameter: &'static str, value: f64 },
    #[error("invalid geometry: surfaces cross at x = {x:.6} (gap {gap:.3e})")]
    CrossingSurfaces { x: f64, gap: f64 },
    #[error("calibration failure: {0}")]
    CalibrationFailure(String),
    #[error("malformed coordinate file: {0}")]
    BadCoordinateFile(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
