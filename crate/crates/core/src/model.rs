//! Physical configurations and the dimensionless reduction.
//!
//! SI units throughout (flux in weber, `Φ_QM = 2πħ/e`); ω is an angular
//! frequency in rad/s everywhere.  All spectral quantities downstream depend
//! only on the dimensionless drive strengths produced here:
//!
//! ```text
//! α = n ħ Φ₀ / (m R² ω Φ_QM)        β = ħ Φ₀² / (8 m R² ω Φ_QM²)
//! ```
//!
//! together with the level energies `E_n = S (n + f)²` (static flux) and
//! `E′_n = S (n² + f²/2)` (oscillating flux), `S = ħ²/(2mR²)`, `f = Φ₀/Φ_QM`.

use crate::constants::{ELEMENTARY_CHARGE, HBAR, SPEED_OF_LIGHT, VACUUM_PERMEABILITY};
use crate::error::{Error, Result};

/// Relative mismatch tolerated between a stated flux amplitude and the one
/// implied by the solenoid winding.
const FLUX_CONSISTENCY_TOL: f64 = 1e-12;

/// The particle on the ring.
#[derive(Debug, Clone, Copy)]
pub struct RingConfig {
    /// Particle mass, kg.
    pub mass: f64,
    /// Particle charge, C.  The flux ratio is taken against this charge's
    /// flux quantum `2πħ/q`.
    pub charge: f64,
    /// Ring radius, m.
    pub radius: f64,
    /// Angular-momentum quantum number.
    pub n: i64,
}

impl RingConfig {
    pub fn new(mass: f64, charge: f64, radius: f64, n: i64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        if charge == 0.0 || !charge.is_finite() {
            return Err(Error::Domain(format!("charge must be nonzero, got {charge}")));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Domain(format!("radius must be positive, got {radius}")));
        }
        Ok(Self {
            mass,
            charge,
            radius,
            n,
        })
    }

    /// Electron ring, the reference particle of the feasibility analysis.
    pub fn electron(radius: f64, n: i64) -> Result<Self> {
        Self::new(
            crate::constants::ELECTRON_MASS,
            ELEMENTARY_CHARGE,
            radius,
            n,
        )
    }

    /// `S = ħ²/(2mR²)`, J.
    pub fn energy_scale(&self) -> f64 {
        HBAR * HBAR / (2.0 * self.mass * self.radius * self.radius)
    }
}

/// The driven solenoid threading the ring.
#[derive(Debug, Clone, Copy)]
pub struct DriveConfig {
    /// Flux amplitude Φ₀, Wb; the instantaneous flux is `Φ₀ cos(ωt)`.
    pub flux_amplitude: f64,
    /// Drive angular frequency, rad/s.
    pub omega: f64,
    /// Solenoid radius `a`, m; must sit inside the ring.
    pub solenoid_radius: f64,
    /// Winding density, turns per metre (0 when unspecified).
    pub turns_density: f64,
    /// Winding current amplitude, A (0 when unspecified).
    pub current_amplitude: f64,
}

impl DriveConfig {
    pub fn new(flux_amplitude: f64, omega: f64, solenoid_radius: f64) -> Result<Self> {
        Self::with_windings(flux_amplitude, omega, solenoid_radius, 0.0, 0.0)
    }

    /// Full constructor; when `turns_density * current_amplitude > 0` the
    /// stated flux must match `μ₀ n_t I₀ π a²` to 1e-12 relative.
    pub fn with_windings(
        flux_amplitude: f64,
        omega: f64,
        solenoid_radius: f64,
        turns_density: f64,
        current_amplitude: f64,
    ) -> Result<Self> {
        if !(omega >= 0.0) || !omega.is_finite() {
            return Err(Error::Domain(format!("omega must be >= 0, got {omega}")));
        }
        if !(solenoid_radius > 0.0) || !solenoid_radius.is_finite() {
            return Err(Error::Domain(format!(
                "solenoid radius must be positive, got {solenoid_radius}"
            )));
        }
        if !(turns_density >= 0.0) || !(current_amplitude >= 0.0) {
            return Err(Error::Domain(
                "winding density and current amplitude must be >= 0".into(),
            ));
        }
        if !flux_amplitude.is_finite() {
            return Err(Error::Domain("flux amplitude must be finite".into()));
        }
        let drive = Self {
            flux_amplitude,
            omega,
            solenoid_radius,
            turns_density,
            current_amplitude,
        };
        if turns_density * current_amplitude > 0.0 {
            let derived = drive.winding_flux();
            let rel = (flux_amplitude - derived).abs() / derived.abs();
            if rel > FLUX_CONSISTENCY_TOL {
                return Err(Error::Inconsistent(format!(
                    "flux amplitude {flux_amplitude} Wb disagrees with the winding flux \
                     mu0*n*I0*pi*a^2 = {derived} Wb (relative {rel:e})"
                )));
            }
        }
        Ok(drive)
    }

    /// Flux implied by the winding, `μ₀ n_t I₀ π a²`.
    pub fn winding_flux(&self) -> f64 {
        VACUUM_PERMEABILITY
            * self.turns_density
            * self.current_amplitude
            * core::f64::consts::PI
            * self.solenoid_radius
            * self.solenoid_radius
    }
}

/// Dimensionless drive parameters of one angular-momentum mode.
#[derive(Debug, Clone, Copy)]
pub struct ModeParams {
    /// Strength of the `sin ωt` phase term (signed).
    pub alpha: f64,
    /// Strength of the `sin 2ωt` phase term (non-negative).
    pub beta: f64,
    /// Flux ratio `f = Φ₀/Φ_QM` (signed).
    pub flux_ratio: f64,
    /// Angular-momentum quantum number.
    pub n: i64,
    /// Drive quantum `ħω`, J.
    pub hbar_omega: f64,
    /// Level scale `S = ħ²/(2mR²)`, J.
    pub energy_scale: f64,
}

impl ModeParams {
    /// Builds mode parameters from explicit dimensionless values, choosing
    /// `ħω = 1` as the energy unit.
    ///
    /// The remaining scales follow from the exact identities
    /// `α = 2nfS/(ħω)` and `β = f²S/(4ħω)`: for `n ≠ 0` they fix
    /// `f = 8nβ/α` and `S = α² ħω/(16 n² β)`; for `n = 0` the spectrum
    /// depends only on `2βħω`, and `S = ħω`, `f = 2√β` is the documented
    /// consistent completion.
    pub fn from_dimensionless(n: i64, alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || beta < 0.0 {
            return Err(Error::Domain(format!(
                "need finite alpha and beta >= 0, got alpha = {alpha}, beta = {beta}"
            )));
        }
        let hbar_omega = 1.0;
        if n == 0 {
            if alpha != 0.0 {
                return Err(Error::Inconsistent(format!(
                    "n = 0 forces alpha = 0, got {alpha}"
                )));
            }
            return Self::with_units(0, 0.0, beta, 2.0 * beta.sqrt(), hbar_omega, hbar_omega);
        }
        if alpha == 0.0 {
            if beta != 0.0 {
                return Err(Error::Inconsistent(
                    "alpha = 0 with n != 0 forces a zero flux ratio and hence beta = 0".into(),
                ));
            }
            return Self::with_units(n, 0.0, 0.0, 0.0, hbar_omega, hbar_omega);
        }
        if beta == 0.0 {
            return Err(Error::Inconsistent(
                "a nonzero alpha requires beta > 0 (beta scales with the squared flux ratio)"
                    .into(),
            ));
        }
        let flux_ratio = 8.0 * n as f64 * beta / alpha;
        let energy_scale = alpha * alpha * hbar_omega / (16.0 * (n * n) as f64 * beta);
        Self::with_units(n, alpha, beta, flux_ratio, hbar_omega, energy_scale)
    }

    /// Builds mode parameters with explicit energy scales, validating the
    /// defining identities.
    pub fn with_units(
        n: i64,
        alpha: f64,
        beta: f64,
        flux_ratio: f64,
        hbar_omega: f64,
        energy_scale: f64,
    ) -> Result<Self> {
        if beta < 0.0 {
            return Err(Error::Domain(format!("beta must be >= 0, got {beta}")));
        }
        if !(hbar_omega > 0.0) || !(energy_scale > 0.0) {
            return Err(Error::Domain(
                "hbar_omega and energy_scale must be positive".into(),
            ));
        }
        let p = Self {
            alpha,
            beta,
            flux_ratio,
            n,
            hbar_omega,
            energy_scale,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 && self.alpha != 0.0 {
            return Err(Error::Inconsistent(format!(
                "n = 0 forces alpha = 0, got {}",
                self.alpha
            )));
        }
        // β = f α / (8n) for n ≠ 0, and β = f² S/(4ħω) always.
        if self.n != 0 {
            let implied = self.flux_ratio * self.alpha / (8.0 * self.n as f64);
            let scale = self.beta.abs().max(implied.abs()).max(1e-300);
            if (implied - self.beta).abs() > 1e-9 * scale {
                return Err(Error::Inconsistent(format!(
                    "beta = {} violates beta = flux_ratio*alpha/(8n) = {implied}",
                    self.beta
                )));
            }
        }
        let implied = self.flux_ratio * self.flux_ratio * self.energy_scale
            / (4.0 * self.hbar_omega);
        let scale = self.beta.abs().max(implied.abs());
        if (implied - self.beta).abs() > 1e-9 * scale.max(1e-300) {
            return Err(Error::Inconsistent(format!(
                "beta = {} violates beta = f^2 S/(4 hbar omega) = {implied}",
                self.beta
            )));
        }
        Ok(())
    }

    /// `E′_n = S (n² + f²/2)`, J.
    pub fn shifted_energy(&self) -> f64 {
        energy_shifted(self.n, self.flux_ratio, self.energy_scale)
    }

    /// Drive angular frequency implied by `ħω`.
    pub fn omega(&self) -> f64 {
        self.hbar_omega / HBAR
    }
}

/// Quantum of magnetic flux `Φ_QM = 2πħ/e`, Wb.
pub fn flux_quantum() -> f64 {
    2.0 * core::f64::consts::PI * HBAR / ELEMENTARY_CHARGE
}

/// Static-flux level energy `E_n = S (n + f)²`.
pub fn energy_static(n: i64, flux_ratio: f64, energy_scale: f64) -> f64 {
    let u = n as f64 + flux_ratio;
    energy_scale * u * u
}

/// Oscillating-flux base energy `E′_n = S (n² + f²/2)`.
pub fn energy_shifted(n: i64, flux_ratio: f64, energy_scale: f64) -> f64 {
    energy_scale * ((n * n) as f64 + 0.5 * flux_ratio * flux_ratio)
}

/// Reduces a physical ring + drive to the dimensionless mode parameters.
///
/// Errors with a degenerate-drive message at ω = 0; the static spectrum is
/// [`energy_static`]'s business.
pub fn dimensionless(ring: &RingConfig, drive: &DriveConfig) -> Result<ModeParams> {
    if drive.omega == 0.0 {
        return Err(Error::Degenerate(
            "omega = 0 is the static limit; use energy_static for the flux-shifted levels".into(),
        ));
    }
    if drive.solenoid_radius >= ring.radius {
        return Err(Error::Domain(format!(
            "solenoid radius {} must be smaller than the ring radius {}",
            drive.solenoid_radius, ring.radius
        )));
    }
    let flux_ratio = drive.flux_amplitude * ring.charge / (2.0 * core::f64::consts::PI * HBAR);
    let common = HBAR / (ring.mass * ring.radius * ring.radius * drive.omega);
    let alpha = ring.n as f64 * flux_ratio * common;
    let beta = 0.125 * flux_ratio * flux_ratio * common;
    ModeParams::with_units(
        ring.n,
        alpha,
        beta,
        flux_ratio,
        HBAR * drive.omega,
        ring.energy_scale(),
    )
}

/// Regime of the low-frequency approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `kR ≤ 1e-3`.
    Valid,
    /// `kR ≤ 1e-1`.
    Marginal,
    Invalid,
}

/// Outcome of the kR / ka / flux-consistency checks.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ValidityReport {
    /// `kR = ωR/c`.
    pub k_ring: f64,
    /// `ka = ωa/c`.
    pub k_solenoid: f64,
    pub regime: Regime,
    /// Present when the winding is specified; compares Φ₀ with μ₀ n_t I₀ πa².
    pub flux_consistency: Option<FluxConsistency>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FluxConsistency {
    pub stated_wb: f64,
    pub winding_wb: f64,
    pub relative_error: f64,
    pub consistent: bool,
}

/// Reports how well the configuration sits inside the `ka < kR ≪ 1` regime.
pub fn validity(ring: &RingConfig, drive: &DriveConfig) -> ValidityReport {
    let k = drive.omega / SPEED_OF_LIGHT;
    let k_ring = k * ring.radius;
    let k_solenoid = k * drive.solenoid_radius;
    let regime = if k_ring <= 1e-3 {
        Regime::Valid
    } else if k_ring <= 1e-1 {
        Regime::Marginal
    } else {
        Regime::Invalid
    };
    let flux_consistency = if drive.turns_density * drive.current_amplitude > 0.0 {
        let winding = drive.winding_flux();
        let rel = (drive.flux_amplitude - winding).abs() / winding.abs();
        Some(FluxConsistency {
            stated_wb: drive.flux_amplitude,
            winding_wb: winding,
            relative_error: rel,
            consistent: rel <= FLUX_CONSISTENCY_TOL,
        })
    } else {
        None
    };
    ValidityReport {
        k_ring,
        k_solenoid,
        regime,
        flux_consistency,
    }
}
