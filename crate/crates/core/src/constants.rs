//! Physical constants, CODATA-2018.
//!
//! Everything downstream of the dimensionless reduction is independent of the
//! unit system; these values only enter through [`crate::model`] and
//! [`crate::lab`].  Pinned in one table so that reported digits are
//! reproducible.

/// Identifies the constants table in run manifests and reports.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Elementary charge, C (exact in SI-2019).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Electron mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Vacuum permeability, N/A².
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;
