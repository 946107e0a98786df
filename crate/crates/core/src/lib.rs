//! Latent-space inverse design of airfoils.
//!
//! The pipeline couples a generative model over surface-pressure
//! distributions with a regression surrogate mapping those distributions to
//! shape parameters and aerodynamic quantities of interest. Evolutionary
//! search runs in the generator's low-dimensional latent space, and an
//! active-learning loop validates optima against a flow solver, growing the
//! training corpus until the surrogate's error at the optimum meets a
//! configured threshold.
//!
//! Modules:
//! - [`geometry`]: PARSEC airfoil construction and the shared station grid
//! - [`solver`]: built-in panel/boundary-layer solver and the Xfoil adapter
//! - [`neural`]: dense-network stack and the Cp -> (shape, QoI) regressor
//! - [`generative`]: the variational autoencoder over Cp distributions
//! - [`sampling`]: design-of-experiments sampling and dataset persistence
//! - [`optimizer`]: real-coded GA and NSGA-II on bounded vectors
//! - [`framework`]: two-step prediction, optimization problems, and the
//!   active-learning controller

pub mod geometry;

pub use geometry::{AirfoilShape, FixedParsec, ParsecParams, StationGrid};
