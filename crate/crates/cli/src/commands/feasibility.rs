//! `feasibility`: (R, ω) grid of drive strengths, corner bounds, optional
//! ranked window scan, and a grid map.

use ringfloquet::lab::{feasibility_bounds, feasibility_scan, FeasibilityGrid, ScanOutcome};

use crate::commands::write_file;
use crate::manifest::RunManifest;
use crate::{svg, CliError, FeasibilityArgs};

fn parse_window(label: &str, text: &str) -> Result<(f64, f64), CliError> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| CliError::usage(format!("--{label} expects LO:HI, got `{text}`")))?;
    let lo: f64 = lo
        .parse()
        .map_err(|e| CliError::usage(format!("--{label}: {e}")))?;
    let hi: f64 = hi
        .parse()
        .map_err(|e| CliError::usage(format!("--{label}: {e}")))?;
    Ok((lo, hi))
}

pub fn run(args: &FeasibilityArgs) -> Result<(), CliError> {
    let mut manifest = RunManifest::new("feasibility", None);
    manifest.set("flux_ratio", args.flux_ratio);
    manifest.set("n", args.n);
    manifest.set("radius_range_m", format!("{}:{}", args.radius_min, args.radius_max));
    manifest.set("omega_range_rad_s", format!("{}:{}", args.omega_min, args.omega_max));

    let bounds = feasibility_bounds(
        args.flux_ratio,
        args.n,
        (args.radius_min, args.radius_max),
        (args.omega_min, args.omega_max),
    )
    .map_err(CliError::from_core)?;
    println!(
        "bounds: {:.3e} <= alpha <= {:.3e}, {:.3e} <= beta <= {:.3e}",
        bounds.alpha_min, bounds.alpha_max, bounds.beta_min, bounds.beta_max
    );
    manifest.set("alpha_min", bounds.alpha_min);
    manifest.set("alpha_max", bounds.alpha_max);
    manifest.set("beta_min", bounds.beta_min);
    manifest.set("beta_max", bounds.beta_max);

    let grid = FeasibilityGrid::generate(
        args.flux_ratio,
        args.n,
        (args.radius_min, args.radius_max),
        (args.omega_min, args.omega_max),
        args.radius_points,
        args.omega_points,
    )
    .map_err(CliError::from_core)?;

    let windows = match (&args.alpha_window, &args.beta_window) {
        (Some(a), Some(b)) => Some((
            parse_window("alpha-window", a)?,
            parse_window("beta-window", b)?,
        )),
        (None, None) => None,
        _ => {
            return Err(CliError::usage(
                "--alpha-window and --beta-window must be given together",
            ))
        }
    };

    let mut csv = String::from("R_m,omega_rad_s,alpha,beta,kR,valid,rank\n");
    match windows {
        None => {
            for s in &grid.samples {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},\n",
                    s.radius, s.omega, s.alpha, s.beta, s.k_radius, s.valid
                ));
            }
        }
        Some((alpha_window, beta_window)) => {
            manifest.set("alpha_window", format!("{}:{}", alpha_window.0, alpha_window.1));
            manifest.set("beta_window", format!("{}:{}", beta_window.0, beta_window.1));
            match feasibility_scan(&grid, alpha_window, beta_window).map_err(CliError::from_core)? {
                ScanOutcome::Matches(hits) => {
                    println!("{} grid points inside the windows", hits.len());
                    manifest.set("matches", hits.len());
                    for h in &hits {
                        let s = &h.sample;
                        csv.push_str(&format!(
                            "{},{},{},{},{},{},{}\n",
                            s.radius, s.omega, s.alpha, s.beta, s.k_radius, s.valid, h.rank
                        ));
                    }
                }
                ScanOutcome::Empty {
                    nearest,
                    log_distance,
                } => {
                    // advisory, not an error
                    println!(
                        "no grid point falls inside the windows; nearest miss R = {:.3e} m, \
                         omega = {:.3e} rad/s (alpha = {:.3e}, beta = {:.3e}, log-distance {:.2})",
                        nearest.radius, nearest.omega, nearest.alpha, nearest.beta, log_distance
                    );
                    manifest.set("matches", 0);
                    manifest.set(
                        "nearest_miss",
                        format!("R={}, omega={}", nearest.radius, nearest.omega),
                    );
                }
            }
        }
    }
    write_file(&args.out_csv, csv.as_bytes())?;
    manifest.record_output(&args.out_csv);

    if let Some(path) = &args.out_svg {
        let cells: Vec<(f64, f64, f64, bool)> = grid
            .samples
            .iter()
            .map(|s| (s.radius, s.omega, s.beta, s.valid))
            .collect();
        let plot = svg::grid_map(
            &format!(
                "beta over the (R, omega) grid, flux ratio {}, n = {}",
                args.flux_ratio, args.n
            ),
            "R (log-spaced)",
            "omega (log-spaced)",
            &cells,
            args.radius_points,
            args.omega_points,
        );
        write_file(path, plot.as_bytes())?;
        manifest.record_output(path);
    }
    manifest.write(&args.manifest)
}
