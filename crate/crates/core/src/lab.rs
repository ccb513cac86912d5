//! Experimental observables: persistent loop current and the accessible
//! (α, β) region for electron rings.
//!
//! The loop current of the normalized ring mode is
//!
//! ```text
//! I(t) = q n ħ / (2π m R²)  -  q² Φ₀ cos(ωt) / (4π² m R²)
//! ```
//!
//! a persistent term plus a term oscillating with the flux.  The quantity is
//! reported in amperes (charge times the probability current of the
//! normalized mode), which is dimensionally unambiguous where a bare current
//! density would not be.
//!
//! Feasibility scans fix the particle to the electron with charge `+e`, the
//! reference system of the experimental discussion.

use rayon::prelude::*;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::model::{self, DriveConfig, RingConfig};

/// Loop current in amperes at time `t`.  `ω = 0` is allowed: the cosine
/// becomes a constant and the formula is the static-flux current.
pub fn loop_current(ring: &RingConfig, drive: &DriveConfig, t: f64) -> f64 {
    let pi = core::f64::consts::PI;
    let q = ring.charge;
    let m_r2 = ring.mass * ring.radius * ring.radius;
    let persistent = q * ring.n as f64 * crate::constants::HBAR / (2.0 * pi * m_r2);
    let driven =
        q * q * drive.flux_amplitude * (drive.omega * t).cos() / (4.0 * pi * pi * m_r2);
    persistent - driven
}

/// Extremes of (α, β) over a rectangular (R, ω) box.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct FeasibilityBounds {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub beta_min: f64,
    pub beta_max: f64,
}

fn electron_params(flux_ratio: f64, n: i64, radius: f64, omega: f64) -> Result<model::ModeParams> {
    let ring = RingConfig::electron(radius, n)?;
    let drive = DriveConfig::new(flux_ratio * model::flux_quantum(), omega, radius / 2.0)?;
    model::dimensionless(&ring, &drive)
}

/// Extremizes α and β of the electron ring over the corners of the box.
/// Both are monotone in ωR², so the corners suffice.
pub fn feasibility_bounds(
    flux_ratio: f64,
    n: i64,
    radius_range: (f64, f64),
    omega_range: (f64, f64),
) -> Result<FeasibilityBounds> {
    check_range("radius", radius_range)?;
    check_range("omega", omega_range)?;
    let mut alpha = (f64::INFINITY, f64::NEG_INFINITY);
    let mut beta = (f64::INFINITY, f64::NEG_INFINITY);
    for r in [radius_range.0, radius_range.1] {
        for w in [omega_range.0, omega_range.1] {
            let p = electron_params(flux_ratio, n, r, w)?;
            alpha = (alpha.0.min(p.alpha), alpha.1.max(p.alpha));
            beta = (beta.0.min(p.beta), beta.1.max(p.beta));
        }
    }
    Ok(FeasibilityBounds {
        alpha_min: alpha.0,
        alpha_max: alpha.1,
        beta_min: beta.0,
        beta_max: beta.1,
    })
}

fn check_range(name: &str, range: (f64, f64)) -> Result<()> {
    if !(range.0 > 0.0 && range.1 >= range.0) {
        return Err(Error::Domain(format!(
            "{name} range must be positive and ordered, got {range:?}"
        )));
    }
    Ok(())
}

/// One grid point of a feasibility scan.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct GridSample {
    pub radius: f64,
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
    /// `kR = ωR/c`.
    pub k_radius: f64,
    /// `kR ≤ 1e-3`.
    pub valid: bool,
}

/// Log-spaced (R, ω) grid of electron-ring drive parameters.
#[derive(Debug, Clone)]
pub struct FeasibilityGrid {
    pub flux_ratio: f64,
    pub n: i64,
    pub radius_range: (f64, f64),
    pub omega_range: (f64, f64),
    pub samples: Vec<GridSample>,
}

/// Default grid resolution per axis.
pub const DEFAULT_GRID_POINTS: usize = 25;

impl FeasibilityGrid {
    /// Builds the grid; every sample's α, β go through the same
    /// dimensionless reduction as everything else in the crate.
    pub fn generate(
        flux_ratio: f64,
        n: i64,
        radius_range: (f64, f64),
        omega_range: (f64, f64),
        radius_points: usize,
        omega_points: usize,
    ) -> Result<Self> {
        check_range("radius", radius_range)?;
        check_range("omega", omega_range)?;
        if radius_points < 2 || omega_points < 2 {
            return Err(Error::Domain("need at least 2 points per axis".into()));
        }
        let radii: Vec<f64> = log_space(radius_range, radius_points);
        let omegas: Vec<f64> = log_space(omega_range, omega_points);
        let samples = radii
            .par_iter()
            .flat_map_iter(|&radius| {
                let omegas = omegas.clone();
                omegas.into_iter().map(move |omega| (radius, omega))
            })
            .map(|(radius, omega)| {
                let p = electron_params(flux_ratio, n, radius, omega)?;
                let k_radius = omega * radius / SPEED_OF_LIGHT;
                Ok(GridSample {
                    radius,
                    omega,
                    alpha: p.alpha,
                    beta: p.beta,
                    k_radius,
                    valid: k_radius <= 1e-3,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            flux_ratio,
            n,
            radius_range,
            omega_range,
            samples,
        })
    }

    /// CSV export: `R_m,omega_rad_s,alpha,beta,kR,valid,rank` (rank empty for
    /// unranked grids).
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "R_m,omega_rad_s,alpha,beta,kR,valid,rank")?;
        for s in &self.samples {
            writeln!(
                out,
                "{},{},{},{},{},{},",
                s.radius, s.omega, s.alpha, s.beta, s.k_radius, s.valid
            )?;
        }
        Ok(())
    }
}

fn log_space((lo, hi): (f64, f64), points: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (llo + (lhi - llo) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// A scan hit, ordered by log-space distance from the window centers.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct RankedSample {
    #[serde(flatten)]
    pub sample: GridSample,
    pub rank: usize,
    /// Euclidean distance in (ln α, ln β) from the window centers.
    pub log_distance: f64,
}

/// Outcome of a window scan: matches, or the nearest miss when nothing fits.
#[derive(Debug, Clone)]
pub enum ScanOutcome {
    Matches(Vec<RankedSample>),
    /// No grid point fell inside the windows; advisory only.
    Empty {
        nearest: GridSample,
        log_distance: f64,
    },
}

/// Selects grid points whose (|α|, β) land in the requested windows, ranked
/// by log-space distance from the window centers.
pub fn feasibility_scan(
    grid: &FeasibilityGrid,
    alpha_window: (f64, f64),
    beta_window: (f64, f64),
) -> Result<ScanOutcome> {
    check_range("alpha window", alpha_window)?;
    check_range("beta window", beta_window)?;
    let center = |w: (f64, f64)| 0.5 * (w.0.ln() + w.1.ln());
    let (ca, cb) = (center(alpha_window), center(beta_window));
    let distance = |s: &GridSample| -> f64 {
        let da = s.alpha.abs().max(f64::MIN_POSITIVE).ln() - ca;
        let db = s.beta.max(f64::MIN_POSITIVE).ln() - cb;
        (da * da + db * db).sqrt()
    };

    let mut hits: Vec<(f64, GridSample)> = grid
        .samples
        .iter()
        .filter(|s| {
            let a = s.alpha.abs();
            a >= alpha_window.0
                && a <= alpha_window.1
                && s.beta >= beta_window.0
                && s.beta <= beta_window.1
        })
        .map(|s| (distance(s), *s))
        .collect();

    if hits.is_empty() {
        let nearest = grid
            .samples
            .iter()
            .min_by(|a, b| distance(a).total_cmp(&distance(b)))
            .ok_or_else(|| Error::Degenerate("empty grid".into()))?;
        return Ok(ScanOutcome::Empty {
            nearest: *nearest,
            log_distance: distance(nearest),
        });
    }
    hits.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then_with(|| a.1.radius.total_cmp(&b.1.radius))
            .then_with(|| a.1.omega.total_cmp(&b.1.omega))
    });
    Ok(ScanOutcome::Matches(
        hits.into_iter()
            .enumerate()
            .map(|(i, (d, s))| RankedSample {
                sample: s,
                rank: i + 1,
                log_distance: d,
            })
            .collect(),
    ))
}
