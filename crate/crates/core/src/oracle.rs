//! Independent verification routes.
//!
//! * [`phase_analytic`] — the exact accumulated phase `f(t)`, evaluated in
//!   two algebraically different forms that are asserted against each other.
//! * [`coefficients_dft`] — weights as Fourier coefficients of the sampled
//!   unit-modulus signal `exp(-i(α sin θ + β sin 2θ))`.  This is the
//!   production table builder; the Bessel series is its definitional
//!   validator, never the other way around.  The index convention
//!   `C_r = (1/N) Σ_j s_j e^{-i r θ_j}` is pinned against the series on
//!   small instances by the tests in this module.
//! * [`phase_ode`] — classical fourth-order integration of the single-mode
//!   Schrödinger amplitude, validating `f(t)` itself independently of both
//!   expansions.
//! * [`static_limit_check`] — the ω → 0 approach to the static levels.
//!
//! The [`checks`] submodule packages all of this into pass/fail
//! [`OracleReport`]s for the verification CLI.

use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::model::{self, DriveConfig, ModeParams, RingConfig};
use crate::spectrum::{self, WeightMethod, WeightTable};

/// Default DFT oversampling; keeps leakage below 1e-12 for the smooth
/// unit-modulus signal while bounding memory.
pub const DEFAULT_OVERSAMPLE: usize = 4;

/// Hard cap on the FFT length (1 GiB of complex samples).
pub const MAX_DFT_LEN: usize = 1 << 26;

/// Default step count for [`phase_ode`]; keeps the norm drift of the
/// acceptance-scale instances below 1e-10 per period.
pub const DEFAULT_STEPS_PER_PERIOD: usize = 20_000;

/// Exact accumulated phase `f(t)` in J·s.
///
/// Evaluates both the integrated form
/// `S (n² t + 2 n f sin(ωt)/ω + (f²/2)(t + sin(2ωt)/(2ω)))`
/// and the regrouped form `E′_n t + ħ(α sin ωt + β sin 2ωt)`, asserting that
/// they agree to 1e-12 of the natural phase scale.
pub fn phase_analytic(t: f64, params: &ModeParams) -> f64 {
    let omega = params.omega();
    debug_assert!(omega > 0.0, "phase_analytic needs a running drive");
    let s = params.energy_scale;
    let f = params.flux_ratio;
    let n = params.n as f64;
    let (sin_wt, sin_2wt) = ((omega * t).sin(), (2.0 * omega * t).sin());

    let integrated = s
        * (n * n * t
            + 2.0 * n * f * sin_wt / omega
            + 0.5 * f * f * (t + sin_2wt / (2.0 * omega)));
    let regrouped =
        params.shifted_energy() * t + HBAR * (params.alpha * sin_wt + params.beta * sin_2wt);

    let scale = params.shifted_energy().abs() * t.abs()
        + HBAR * (params.alpha.abs() + params.beta.abs())
        + f64::MIN_POSITIVE;
    assert!(
        (integrated - regrouped).abs() <= 1e-12 * scale,
        "the two forms of f(t) disagree: {integrated:e} vs {regrouped:e}"
    );
    integrated
}

/// DFT-route weight table for explicit `(α, β)`, detached from any mode.
pub fn coefficients_dft(alpha: f64, beta: f64, oversample: usize) -> Result<WeightTable> {
    let params = synth_params(alpha, beta)?;
    dft_table(&params, oversample)
}

/// Mode parameters carrying raw `(α, β)` for table bookkeeping.
pub(crate) fn synth_params(alpha: f64, beta: f64) -> Result<ModeParams> {
    if alpha == 0.0 {
        ModeParams::from_dimensionless(0, 0.0, beta)
    } else if beta > 0.0 {
        ModeParams::from_dimensionless(1, alpha, beta)
    } else {
        // β = 0 with α ≠ 0 has no physical mode; a raw series/DFT table is
        // still well defined.
        ModeParams::with_units(1, alpha, 0.0, 0.0, 1.0, 1.0)
    }
}

/// The shared DFT kernel: samples the phase signal, runs one forward FFT and
/// reads the window `C_r = X[r mod N]/N`.
pub(crate) fn dft_table(params: &ModeParams, oversample: usize) -> Result<WeightTable> {
    if oversample < 2 {
        return Err(Error::Domain(format!(
            "oversample must be at least 2, got {oversample}"
        )));
    }
    let (alpha, beta) = (params.alpha, params.beta);
    let r_max = spectrum::window_half_width(alpha, beta);
    let needed = oversample
        .checked_mul(2 * r_max as usize + 2)
        .ok_or_else(|| Error::Resource("DFT length overflows".into()))?;
    let n = needed.next_power_of_two();
    if n > MAX_DFT_LEN {
        return Err(Error::Resource(format!(
            "DFT length {n} exceeds {MAX_DFT_LEN}; reduce |alpha| + 2*beta or the oversample \
             factor"
        )));
    }

    let mut signal = vec![Complex::new(0.0, 0.0); n];
    let step = 2.0 * core::f64::consts::PI / n as f64;
    signal
        .par_chunks_mut(1 << 16)
        .enumerate()
        .for_each(|(chunk, out)| {
            let base = chunk << 16;
            for (i, slot) in out.iter_mut().enumerate() {
                let theta = (base + i) as f64 * step;
                let (s1, c1) = theta.sin_cos();
                let s2 = 2.0 * s1 * c1; // sin 2θ
                let phase = alpha.mul_add(s1, beta * s2);
                let (sp, cp) = phase.sin_cos();
                *slot = Complex::new(cp, -sp);
            }
        });

    FftPlanner::new().plan_fft_forward(n).process(&mut signal);

    let inv_n = 1.0 / n as f64;
    let mut weights = Vec::with_capacity(2 * r_max as usize + 1);
    let mut worst_imag = 0.0f64;
    for r in -r_max..=r_max {
        let idx = r.rem_euclid(n as i64) as usize;
        let c = signal[idx] * inv_n;
        worst_imag = worst_imag.max(c.im.abs());
        weights.push(c.re);
    }
    assert!(
        worst_imag <= 1e-10,
        "weights must be real; largest imaginary residue {worst_imag:e}"
    );
    Ok(WeightTable::from_parts(
        *params,
        r_max,
        weights,
        WeightMethod::Dft,
        0.0,
        0,
    ))
}

/// Phase history of the single-mode amplitude over one drive period.
#[derive(Debug, Clone)]
pub struct PhaseTrace {
    /// Sample times, s.
    pub times: Vec<f64>,
    /// `f(t)` in J·s, recovered as `-ħ ·` unwrapped `arg c(t)`.
    pub phase_values: Vec<f64>,
    /// Largest `| |c| - 1 |` seen along the trajectory.
    pub norm_drift: f64,
}

/// Integrates `dc/dt = -(i/ħ) S (n + f cos ωt)² c` over one period with the
/// classical fourth-order scheme and returns the unwrapped phase.
pub fn phase_ode(
    ring: &RingConfig,
    drive: &DriveConfig,
    steps_per_period: usize,
) -> Result<PhaseTrace> {
    if steps_per_period < 1_000 {
        return Err(Error::Domain(format!(
            "need at least 1000 steps per period, got {steps_per_period}"
        )));
    }
    if drive.omega <= 0.0 {
        return Err(Error::Degenerate(
            "phase_ode integrates over one drive period; omega must be positive".into(),
        ));
    }
    let s = ring.energy_scale();
    let f = drive.flux_amplitude * ring.charge / (2.0 * core::f64::consts::PI * HBAR);
    let n = ring.n as f64;
    let omega = drive.omega;
    // angular rate λ(t): c' = -i λ c
    let rate = |t: f64| {
        let u = n + f * (omega * t).cos();
        s * u * u / HBAR
    };

    let period = 2.0 * core::f64::consts::PI / omega;
    let h = period / steps_per_period as f64;
    let mut c = Complex::new(1.0, 0.0);
    let mut theta = 0.0f64; // unwrapped arg c
    let mut norm_drift = 0.0f64;
    let mut times = Vec::with_capacity(steps_per_period + 1);
    let mut phase_values = Vec::with_capacity(steps_per_period + 1);
    times.push(0.0);
    phase_values.push(0.0);

    let deriv = |t: f64, c: Complex<f64>| Complex::new(0.0, -rate(t)) * c;
    for k in 0..steps_per_period {
        let t = k as f64 * h;
        let k1 = deriv(t, c);
        let k2 = deriv(t + 0.5 * h, c + k1 * (0.5 * h));
        let k3 = deriv(t + 0.5 * h, c + k2 * (0.5 * h));
        let k4 = deriv(t + h, c + k3 * h);
        let next = c + (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0);

        // unwrap by per-step increments; each is < π by the step-size bound
        let increment = (next * c.conj()).arg();
        debug_assert!(increment.abs() < core::f64::consts::PI);
        theta += increment;
        c = next;
        norm_drift = norm_drift.max((c.norm() - 1.0).abs());

        times.push((k + 1) as f64 * h);
        phase_values.push(-HBAR * theta);
    }
    if norm_drift > 1e-8 {
        return Err(Error::Integration(format!(
            "norm drift {norm_drift:e} exceeds 1e-8; increase steps_per_period"
        )));
    }
    Ok(PhaseTrace {
        times,
        phase_values,
        norm_drift,
    })
}

/// Static-limit report: `f(t*)/t*` against `E_n = S (n + f)²` for a
/// decreasing ω sequence.
#[derive(Debug, Clone, serde::Serialize)]
pub struct StaticLimitReport {
    pub omegas: Vec<f64>,
    pub deviations: Vec<f64>,
    /// Target `E_n` of the static formula, J.
    pub static_energy: f64,
    /// Deviations never increase along the sequence.
    pub monotone: bool,
    /// Log–log slope of deviation vs ω; `None` when every deviation is 0.
    pub convergence_order: Option<f64>,
}

/// Evaluates the ω → 0 approach of the accumulated phase to the static level.
///
/// `params_at` supplies the mode parameters of the *same* physical ring and
/// flux at each requested drive frequency; `t_star` is the fixed probe time.
pub fn static_limit_check(
    params_at: impl Fn(f64) -> ModeParams,
    omega_sequence: &[f64],
    t_star: f64,
) -> Result<StaticLimitReport> {
    if omega_sequence.len() < 4 {
        return Err(Error::Domain(format!(
            "need at least 4 frequencies, got {}",
            omega_sequence.len()
        )));
    }
    if !omega_sequence.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0) {
        return Err(Error::Domain(
            "omega sequence must be strictly decreasing and positive".into(),
        ));
    }
    if !(t_star > 0.0) {
        return Err(Error::Domain(format!(
            "t_star must be positive, got {t_star}"
        )));
    }

    let reference = params_at(omega_sequence[0]);
    let static_energy =
        model::energy_static(reference.n, reference.flux_ratio, reference.energy_scale);
    let mut deviations = Vec::with_capacity(omega_sequence.len());
    for &omega in omega_sequence {
        let p = params_at(omega);
        let dev = (phase_analytic(t_star, &p) / t_star - static_energy).abs();
        deviations.push(dev);
    }
    let monotone = deviations.windows(2).all(|w| w[1] <= w[0]);

    let pts: Vec<(f64, f64)> = omega_sequence
        .iter()
        .zip(&deviations)
        .filter(|(_, &d)| d > 0.0)
        .map(|(&w, &d)| (w.ln(), d.ln()))
        .collect();
    let convergence_order = if pts.len() < 2 {
        None
    } else {
        let count = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / count;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / count;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        Some(sxy / sxx)
    };
    Ok(StaticLimitReport {
        omegas: omega_sequence.to_vec(),
        deviations,
        static_energy,
        monotone,
        convergence_order,
    })
}

/// One verification outcome, exported as JSON by the CLI.
#[derive(Debug, Clone, serde::Serialize)]
pub struct OracleReport {
    pub check: String,
    pub params: String,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl OracleReport {
    fn new(check: &str, params: String, max_abs_error: f64, tolerance: f64) -> Self {
        Self {
            check: check.to_string(),
            params,
            max_abs_error,
            tolerance,
            pass: max_abs_error <= tolerance,
        }
    }
}

/// Pass/fail wrappers around the verification routes, shared by the CLI and
/// the acceptance suite.
pub mod checks {
    use super::*;

    /// Parseval tolerance grows with the drive strength: 1e-9 through
    /// max(|α|, 2β) = 1e4, then 1e-6 through 1e6.
    pub fn parseval_tolerance(alpha: f64, beta: f64) -> f64 {
        if alpha.abs().max(2.0 * beta) <= 1e4 {
            1e-9
        } else {
            1e-6
        }
    }

    /// `Σ_r C_r² = 1` over the table window.
    pub fn parseval(table: &WeightTable) -> OracleReport {
        let p = table.params();
        let err = (table.parseval_sum() - 1.0).abs();
        OracleReport::new(
            "parseval",
            format!("alpha={}, beta={}", p.alpha, p.beta),
            err,
            parseval_tolerance(p.alpha, p.beta),
        )
    }

    /// Odd entries of a ground-mode table are exactly zero (tolerance 0).
    pub fn parity_n0(table: &WeightTable) -> OracleReport {
        let mut worst = 0.0f64;
        for (r, c) in table.iter() {
            if r.rem_euclid(2) == 1 {
                worst = worst.max(c.abs());
            }
        }
        OracleReport::new(
            "parity_n0",
            format!("beta={}", table.params().beta),
            worst,
            0.0,
        )
    }

    /// Series, DFT and (when α = 0) closed form agree elementwise.
    pub fn triangle(alpha: f64, beta: f64, tol: f64) -> Result<OracleReport> {
        let params = synth_params(alpha, beta)?;
        let dft = dft_table(&params, DEFAULT_OVERSAMPLE)?;
        let series = spectrum::coefficients_series_window(&params, 1e-13)?;
        let mut worst = 0.0f64;
        for (r, c) in series.iter() {
            worst = worst.max((c - dft.weight(r)).abs());
        }
        if alpha == 0.0 {
            let closed = spectrum::coefficients_n0(beta)?;
            for (r, c) in closed.iter() {
                worst = worst.max((c - dft.weight(r)).abs());
                worst = worst.max((c - series.weight(r)).abs());
            }
        }
        Ok(OracleReport::new(
            "oracle_triangle",
            format!("alpha={alpha}, beta={beta}"),
            worst,
            tol,
        ))
    }

    /// `(-α)` table equals `(-1)^r ×` the `(α)` table.
    pub fn sign_flip(alpha: f64, beta: f64, tol: f64) -> Result<OracleReport> {
        let plus = coefficients_dft(alpha, beta, DEFAULT_OVERSAMPLE)?;
        let minus = coefficients_dft(-alpha, beta, DEFAULT_OVERSAMPLE)?;
        let mut worst = 0.0f64;
        for (r, c) in plus.iter() {
            let sign = if r.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            worst = worst.max((minus.weight(r) - sign * c).abs());
        }
        Ok(OracleReport::new(
            "sign_flip",
            format!("alpha={alpha}, beta={beta}"),
            worst,
            tol,
        ))
    }

    /// `|r_peak - 2β| ≤ 5 β^{1/3}` on the ground-mode table.
    pub fn rpeak_law(beta: f64) -> Result<OracleReport> {
        let table = spectrum::coefficients_n0(beta)?;
        let peak = spectrum::find_peak(&table)?;
        let err = (peak.r_peak as f64 - 2.0 * beta).abs();
        Ok(OracleReport::new(
            "rpeak_law",
            format!("beta={beta}"),
            err,
            5.0 * beta.cbrt(),
        ))
    }

    /// Ground-mode closed form against the DFT, elementwise.
    pub fn closed_vs_dft(beta: f64, tol: f64) -> Result<OracleReport> {
        let closed = spectrum::coefficients_n0(beta)?;
        let dft = coefficients_dft(0.0, beta, DEFAULT_OVERSAMPLE)?;
        let mut worst = 0.0f64;
        for (r, c) in closed.iter() {
            worst = worst.max((c - dft.weight(r)).abs());
        }
        Ok(OracleReport::new(
            "closed_vs_dft",
            format!("beta={beta}"),
            worst,
            tol,
        ))
    }

    /// RK4 phase against `-f(t)/ħ` at 64 samples over one period.  Each
    /// deviation is taken relative to the largest sampled phase magnitude.
    pub fn phase_ode_vs_analytic(
        ring: &RingConfig,
        drive: &DriveConfig,
        steps_per_period: usize,
        tol: f64,
    ) -> Result<OracleReport> {
        let trace = phase_ode(ring, drive, steps_per_period)?;
        let params = model::dimensionless(ring, drive)?;
        let stride = (trace.times.len() / 64).max(1);
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for i in (stride..trace.times.len()).step_by(stride) {
            let analytic = -phase_analytic(trace.times[i], &params) / HBAR;
            let ode = -trace.phase_values[i] / HBAR;
            worst = worst.max((ode - analytic).abs());
            scale = scale.max(analytic.abs());
        }
        Ok(OracleReport::new(
            "phase_ode",
            format!(
                "n={}, flux_ratio={:.6}, alpha={:.6}",
                ring.n, params.flux_ratio, params.alpha
            ),
            worst / scale.max(f64::MIN_POSITIVE),
            tol,
        ))
    }

    /// Norm conservation of the RK4 integration.
    pub fn phase_ode_norm(
        ring: &RingConfig,
        drive: &DriveConfig,
        steps_per_period: usize,
        tol: f64,
    ) -> Result<OracleReport> {
        let trace = phase_ode(ring, drive, steps_per_period)?;
        Ok(OracleReport::new(
            "phase_ode_norm",
            format!("n={}", ring.n),
            trace.norm_drift,
            tol,
        ))
    }

    /// Monotone approach of `f(t*)/t*` to the static level.
    pub fn static_limit(
        params_at: impl Fn(f64) -> ModeParams,
        omega_sequence: &[f64],
        t_star: f64,
    ) -> Result<(OracleReport, StaticLimitReport)> {
        let report = static_limit_check(params_at, omega_sequence, t_star)?;
        let worst = if report.monotone { 0.0 } else { 1.0 };
        Ok((
            OracleReport::new(
                "static_limit_monotone",
                format!("omegas={:?}", report.omegas),
                worst,
                0.5,
            ),
            report,
        ))
    }
}
