//! `fields`: exact field profile CSV (`rho_m,t_s,A_phi,E_phi,B_z`), the
//! low-frequency defect per radius, and an amplitude plot.

use ringfloquet::fields::{approx_error, field_exact};

use crate::commands::write_file;
use crate::manifest::RunManifest;
use crate::{config, svg, CliError, FieldsArgs};

pub fn run(args: &FieldsArgs) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    if !(args.rho_min > cfg.drive.solenoid_radius) || !(args.rho_max > args.rho_min) {
        return Err(CliError::usage(format!(
            "need solenoid radius {} < rho-min < rho-max",
            cfg.drive.solenoid_radius
        )));
    }
    if args.rho_points < 2 {
        return Err(CliError::usage("need at least 2 radial points"));
    }

    let mut manifest = RunManifest::new("fields", Some(&args.config));
    for (k, v) in &cfg.raw {
        manifest.set(k, v);
    }
    manifest.set("rho_min_m", args.rho_min);
    manifest.set("rho_max_m", args.rho_max);
    manifest.set("rho_points", args.rho_points);
    manifest.set("t_s", args.time);

    let radii: Vec<f64> = (0..args.rho_points)
        .map(|i| {
            args.rho_min
                + (args.rho_max - args.rho_min) * i as f64 / (args.rho_points - 1) as f64
        })
        .collect();

    let mut csv = String::from("rho_m,t_s,A_phi,E_phi,B_z\n");
    let mut a_series = Vec::new();
    let mut e_series = Vec::new();
    let mut b_series = Vec::new();
    for &rho in &radii {
        let f = field_exact(&cfg.drive, rho, args.time).map_err(CliError::from_core)?;
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            rho, args.time, f.a_phi, f.e_phi, f.b_z
        ));
        a_series.push((rho, f.a_phi));
        e_series.push((rho, f.e_phi));
        b_series.push((rho, f.b_z));
    }
    write_file(&args.out_csv, csv.as_bytes())?;
    manifest.record_output(&args.out_csv);

    if let Some(path) = &args.out_error_csv {
        let mut csv = String::from("rho_m,k_rho,approx_error\n");
        for &rho in &radii {
            let k_rho = cfg.drive.omega * rho / ringfloquet::constants::SPEED_OF_LIGHT;
            match approx_error(&cfg.drive, rho) {
                Ok(err) => csv.push_str(&format!("{rho},{k_rho},{err}\n")),
                // out of the comparison regime: leave the column empty
                Err(_) => csv.push_str(&format!("{rho},{k_rho},\n")),
            }
        }
        write_file(path, csv.as_bytes())?;
        manifest.record_output(path);
    }

    if let Some(path) = &args.out_svg {
        let plot = svg::line_plot(
            &format!("solenoid fields at t = {} s", args.time),
            "rho (m)",
            "field (SI)",
            &[
                ("A_phi (T m)", &a_series),
                ("E_phi (V/m)", &e_series),
                ("B_z (T)", &b_series),
            ],
        );
        write_file(path, plot.as_bytes())?;
        manifest.record_output(path);
    }
    println!(
        "fields: {} radii in [{}, {}] m at t = {} s",
        radii.len(),
        args.rho_min,
        args.rho_max,
        args.time
    );
    manifest.write(&args.manifest)
}
