//! Quasi-energy sidebands of a charged particle on a ring threaded by a
//! sinusoidally oscillating magnetic flux.
//!
//! A particle of mass `m` and charge `q` confined to a ring of radius `R`,
//! with a solenoid through the ring carrying flux `Φ₀ cos(ωt)`, acquires the
//! accumulated phase
//!
//! ```text
//! f(t) = S (n² t + 2 n f sin(ωt)/ω + (f²/2)(t + sin(2ωt)/(2ω)))
//! ```
//!
//! with `S = ħ²/(2mR²)` and `f = Φ₀/Φ_QM`.  Expanding `exp(-i f(t)/ħ)` in
//! harmonics of the drive turns each angular-momentum level into a comb of
//! quasi-energy lines `E′_n + r ħω` weighted by
//!
//! ```text
//! C_r = Σ_s (-1)^r J_{r+2s}(α) J_s(β)
//! ```
//!
//! where `α` and `β` are the dimensionless drive strengths of the `sin ωt`
//! and `sin 2ωt` phase terms.  This crate evaluates those weights three ways
//! (double Bessel series, n = 0 closed form, FFT of the sampled phase
//! signal), the exact solenoid fields outside the winding, the persistent
//! loop current, and the experimentally accessible (α, β) region.
//!
//! Modules map one-to-one onto the physics:
//!
//! * [`specfun`] — large-order `J_n` arrays (Miller backward recurrence) and
//!   `Y₀`, `Y₁`.
//! * [`model`] — physical configurations, dimensionless reduction, static and
//!   shifted level energies.
//! * [`spectrum`] — weight tables `C_r`, peak detection, sideband spectra,
//!   two-level transition diagram.
//! * [`oracle`] — independent verification routes: exact phase, FFT
//!   coefficients, single-mode Schrödinger integration, static limit.
//! * [`fields`] — exact and low-frequency solenoid fields.
//! * [`lab`] — persistent current and feasibility scans.
//!
//! All public functions are pure; every returned value is immutable and safe
//! to share across threads.

pub mod constants;
pub mod error;
pub mod fields;
pub mod lab;
pub mod model;
pub mod oracle;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};
pub use model::{DriveConfig, ModeParams, RingConfig};
pub use spectrum::{PeakInfo, QuasiEnergySpectrum, WeightTable};
