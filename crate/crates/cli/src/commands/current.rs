//! `current`: loop current over time, CSV `t_s,I_A` and a line plot.

use ringfloquet::lab::loop_current;

use crate::commands::write_file;
use crate::manifest::RunManifest;
use crate::{config, svg, CliError, CurrentArgs};

pub fn run(args: &CurrentArgs) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    if args.points < 2 {
        return Err(CliError::usage("need at least 2 time samples"));
    }
    if !(args.periods > 0.0) {
        return Err(CliError::usage("--periods must be positive"));
    }

    let mut manifest = RunManifest::new("current", Some(&args.config));
    for (k, v) in &cfg.raw {
        manifest.set(k, v);
    }
    manifest.set("periods", args.periods);
    manifest.set("points", args.points);

    // ω = 0 keeps the current constant; sample one second instead of a period
    let span = if cfg.drive.omega > 0.0 {
        args.periods * 2.0 * core::f64::consts::PI / cfg.drive.omega
    } else {
        1.0
    };
    let mut csv = String::from("t_s,I_A\n");
    let mut series = Vec::with_capacity(args.points);
    for i in 0..args.points {
        let t = span * i as f64 / (args.points - 1) as f64;
        let current = loop_current(&cfg.ring, &cfg.drive, t);
        csv.push_str(&format!("{t},{current}\n"));
        series.push((t, current));
    }
    write_file(&args.out_csv, csv.as_bytes())?;
    manifest.record_output(&args.out_csv);

    if let Some(path) = &args.out_svg {
        let plot = svg::line_plot(
            &format!("loop current, n = {}", cfg.ring.n),
            "t (s)",
            "I (A)",
            &[("I(t)", series.as_slice())],
        );
        write_file(path, plot.as_bytes())?;
        manifest.record_output(path);
    }
    println!(
        "current: {} samples over {span} s, persistent term {} A",
        args.points,
        loop_current(
            &cfg.ring,
            &ringfloquet::model::DriveConfig::new(0.0, 0.0, cfg.drive.solenoid_radius)
                .map_err(CliError::from_core)?,
            0.0
        )
    );
    manifest.write(&args.manifest)
}
