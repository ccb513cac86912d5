//! `verify`: runs the verification checks and reports pass/fail.

use rand::{Rng, SeedableRng};

use ringfloquet::constants::HBAR;
use ringfloquet::model::{self, flux_quantum, DriveConfig, RingConfig};
use ringfloquet::oracle::{checks, coefficients_dft, OracleReport, DEFAULT_STEPS_PER_PERIOD};

use crate::commands::write_file;
use crate::manifest::RunManifest;
use crate::{CliError, VerifyArgs};

fn core(e: ringfloquet::Error) -> CliError {
    CliError::from_core(e)
}

fn collect(suite: &str) -> Result<Vec<OracleReport>, CliError> {
    let mut reports = Vec::new();
    let mut rng = rand::rngs::StdRng::seed_from_u64(0xf10c);

    // oracle triangle + Parseval on random instances
    let instances = if suite == "full" { 50 } else { 8 };
    for i in 0..instances {
        let alpha = if i % 5 == 0 {
            0.0
        } else {
            rng.gen_range(-100.0..100.0)
        };
        let beta = rng.gen_range(0.0..100.0);
        reports.push(checks::triangle(alpha, beta, 1e-10).map_err(core)?);
        let table = coefficients_dft(alpha, beta, 4).map_err(core)?;
        reports.push(checks::parseval(&table));
    }

    // parity of the ground mode
    let n0 = ringfloquet::spectrum::coefficients_n0(1e3).map_err(core)?;
    reports.push(checks::parity_n0(&n0));

    // sign-flip symmetry
    for _ in 0..5 {
        let alpha = rng.gen_range(0.5..100.0);
        let beta = rng.gen_range(0.0..100.0);
        reports.push(checks::sign_flip(alpha, beta, 1e-12).map_err(core)?);
    }

    // peak law and closed-form/DFT agreement
    let betas: &[f64] = if suite == "full" {
        &[1e3, 1e4, 1e5, 1e6]
    } else {
        &[1e3, 1e4]
    };
    for &beta in betas {
        reports.push(checks::rpeak_law(beta).map_err(core)?);
    }
    let closed_betas: &[f64] = if suite == "full" { &[1e3, 1e6] } else { &[1e3] };
    for &beta in closed_betas {
        reports.push(checks::closed_vs_dft(beta, 1e-10).map_err(core)?);
    }

    // static limit
    let ring = RingConfig::electron(1e-5, 0).map_err(core)?;
    let params_at = |omega: f64| {
        let drive = DriveConfig::new(flux_quantum(), omega, 1e-6).unwrap();
        model::dimensionless(&ring, &drive).unwrap()
    };
    let (rep, _) =
        checks::static_limit(params_at, &[1e-1, 1e-2, 1e-3, 1e-4], 1.0).map_err(core)?;
    reports.push(rep);

    // phase ODE against the closed form
    let ode_instances = if suite == "full" { 4 } else { 2 };
    for _ in 0..ode_instances {
        let flux_ratio: f64 = rng.gen_range(0.5..1.5);
        let alpha_target: f64 = rng.gen_range(0.5..10.0);
        let ring = RingConfig::electron(1e-5, 1).map_err(core)?;
        let omega =
            flux_ratio * HBAR / (ring.mass * ring.radius * ring.radius * alpha_target);
        let drive = DriveConfig::new(flux_ratio * flux_quantum(), omega, 1e-6).map_err(core)?;
        reports.push(
            checks::phase_ode_vs_analytic(&ring, &drive, DEFAULT_STEPS_PER_PERIOD, 1e-8)
                .map_err(core)?,
        );
        reports.push(
            checks::phase_ode_norm(&ring, &drive, DEFAULT_STEPS_PER_PERIOD, 1e-10)
                .map_err(core)?,
        );
    }
    Ok(reports)
}

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    if args.suite != "quick" && args.suite != "full" {
        return Err(CliError::usage(format!(
            "--suite must be quick or full, got {}",
            args.suite
        )));
    }
    let reports = collect(&args.suite)?;

    println!("{:<24} {:>13} {:>10}  result", "check", "max_abs_err", "tol");
    for r in &reports {
        println!(
            "{:<24} {:>13.3e} {:>10.1e}  {}",
            r.check,
            r.max_abs_error,
            r.tolerance,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    let report_path = args.out_dir.join(format!("verify_{}.json", args.suite));
    let json = serde_json::to_string_pretty(&reports)
        .map_err(|e| CliError::internal(format!("report serialization: {e}")))?;
    write_file(&report_path, json.as_bytes())?;

    let mut manifest = RunManifest::new("verify", None);
    manifest.set("suite", &args.suite);
    manifest.set("checks", reports.len());
    manifest.record_output(&report_path);
    manifest.write(&args.out_dir.join("verify_manifest.json"))?;

    let failures = reports.iter().filter(|r| !r.pass).count();
    if failures > 0 {
        return Err(CliError::verification(format!(
            "{failures} of {} checks failed; see {}",
            reports.len(),
            report_path.display()
        )));
    }
    println!("all {} checks passed", reports.len());
    Ok(())
}
