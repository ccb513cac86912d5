//! `spectrum`: weight table CSV, quasi-energy JSON, stem-plot SVG.

use ringfloquet::model::{self, ModeParams};
use ringfloquet::spectrum::{coefficients_full, find_peak, sidebands, WeightTable};

use crate::commands::write_file;
use crate::manifest::RunManifest;
use crate::{config, svg, CliError, SpectrumArgs};

/// Resolves the mode parameters from either the config file or the
/// dimensionless flags (clap already rejects mixing the two).
fn resolve(args: &SpectrumArgs, manifest: &mut RunManifest) -> Result<ModeParams, CliError> {
    if let Some(path) = &args.config {
        let cfg = config::load(path)?;
        for (k, v) in &cfg.raw {
            manifest.set(k, v);
        }
        let validity = model::validity(&cfg.ring, &cfg.drive);
        manifest.set("kR", validity.k_ring);
        manifest.set("regime", format!("{:?}", validity.regime));
        return model::dimensionless(&cfg.ring, &cfg.drive).map_err(CliError::from_core);
    }
    let n = args
        .n
        .ok_or_else(|| CliError::usage("dimensionless mode needs --n (or use --config)"))?;
    let params = if n == 0 {
        if args.flux_ratio.is_some() {
            return Err(CliError::usage("--flux-ratio needs --alpha and n != 0"));
        }
        if args.alpha.unwrap_or(0.0) != 0.0 {
            return Err(CliError::usage("n = 0 forces alpha = 0; pass --beta only"));
        }
        let beta = args
            .beta
            .ok_or_else(|| CliError::usage("n = 0 needs --beta"))?;
        ModeParams::from_dimensionless(0, 0.0, beta)
    } else {
        let alpha = args
            .alpha
            .ok_or_else(|| CliError::usage("n != 0 needs --alpha"))?;
        let beta = match (args.beta, args.flux_ratio) {
            (Some(_), Some(_)) => {
                return Err(CliError::usage("pass either --beta or --flux-ratio, not both"))
            }
            (Some(beta), None) => beta,
            (None, Some(f)) => f * alpha / (8.0 * n as f64),
            (None, None) => {
                return Err(CliError::usage("n != 0 needs --beta or --flux-ratio"))
            }
        };
        ModeParams::from_dimensionless(n, alpha, beta)
    }
    .map_err(CliError::from_core)?;
    Ok(params)
}

pub fn run(args: &SpectrumArgs) -> Result<(), CliError> {
    let mut manifest = RunManifest::new("spectrum", args.config.as_deref());
    let params = resolve(args, &mut manifest)?;
    manifest.set("n", params.n);
    manifest.set("alpha", params.alpha);
    manifest.set("beta", params.beta);
    manifest.set("flux_ratio", params.flux_ratio);
    manifest.set("hbar_omega_J", params.hbar_omega);
    manifest.set("energy_scale_J", params.energy_scale);
    manifest.set("floor", args.floor);

    let table = coefficients_full(&params).map_err(CliError::from_core)?;
    let peak = find_peak(&table).ok();
    if let Some(p) = &peak {
        manifest.set("r_peak", p.r_peak);
        manifest.set("weight_at_peak", p.weight_at_peak);
        manifest.set("contrast", p.contrast);
    }

    if let Some(path) = &args.out_csv {
        let mut buf = Vec::new();
        table.write_csv(&mut buf).map_err(|e| CliError::io("csv", e))?;
        write_file(path, &buf)?;
        manifest.record_output(path);
    }
    if let Some(path) = &args.out_json {
        let spec = sidebands(&table, args.floor).map_err(CliError::from_core)?;
        write_file(path, spec.to_json().as_bytes())?;
        manifest.record_output(path);
    }
    if let Some(path) = &args.out_svg {
        write_file(path, render(&table, peak.as_ref()).as_bytes())?;
        manifest.record_output(path);
    }
    println!(
        "spectrum: n={} alpha={} beta={} window=[-{}, {}]{}",
        params.n,
        params.alpha,
        params.beta,
        table.r_max(),
        table.r_max(),
        peak
            .map(|p| format!(" r_peak={} |C|={:.4e}", p.r_peak, p.weight_at_peak.abs()))
            .unwrap_or_default()
    );
    manifest.write(&args.manifest)
}

pub(crate) fn render(table: &WeightTable, peak: Option<&ringfloquet::PeakInfo>) -> String {
    let points: Vec<(f64, f64)> = table.iter().map(|(r, c)| (r as f64, c)).collect();
    let p = table.params();
    svg::stem_plot(
        &format!("C_r, n = {}, alpha = {}, beta = {}", p.n, p.alpha, p.beta),
        "r",
        "C_r",
        &points,
        peak.map(|p| (p.r_peak as f64, p.weight_at_peak)),
    )
}
