//! `figures`: regenerates every figure dataset in one run — the four weight
//! tables (CSV + spectrum JSON + stem SVG) and the two-mode level diagram.

use std::path::{Path, PathBuf};

use ringfloquet::model::ModeParams;
use ringfloquet::spectrum::{
    coefficients_full, find_peak, level_diagram, sidebands, WeightTable,
};

use crate::commands::{spectrum::render, write_file};
use crate::manifest::RunManifest;
use crate::{svg, CliError, FiguresArgs};

/// JSON line floor: keeps the figure spectra at the lines that are visible
/// on the published plots.
const FIGURE_FLOOR: f64 = 1e-3;

struct FigureSpec {
    name: &'static str,
    n: i64,
    alpha: f64,
    beta: f64,
}

const FIGURES: [FigureSpec; 4] = [
    FigureSpec {
        name: "fig1",
        n: 0,
        alpha: 0.0,
        beta: 1e3,
    },
    FigureSpec {
        name: "fig2",
        n: 0,
        alpha: 0.0,
        beta: 1e6,
    },
    FigureSpec {
        name: "fig3",
        n: 1,
        alpha: 1e3,
        beta: 137.5,
    },
    FigureSpec {
        name: "fig4",
        n: 1,
        alpha: 1e6,
        beta: 1.375e5,
    },
];

fn emit_table(
    dir: &Path,
    name: &str,
    table: &WeightTable,
    manifest: &mut RunManifest,
) -> Result<(), CliError> {
    let peak = find_peak(table).map_err(CliError::from_core)?;
    manifest.set(&format!("{name}.r_peak"), peak.r_peak);
    manifest.set(&format!("{name}.weight_at_peak"), peak.weight_at_peak);
    manifest.set(&format!("{name}.contrast"), peak.contrast);

    let csv_path = dir.join(format!("{name}.csv"));
    let mut buf = Vec::new();
    table.write_csv(&mut buf).map_err(|e| CliError::io("csv", e))?;
    write_file(&csv_path, &buf)?;
    manifest.record_output(&csv_path);

    let json_path = dir.join(format!("{name}.json"));
    let spec = sidebands(table, FIGURE_FLOOR).map_err(CliError::from_core)?;
    write_file(&json_path, spec.to_json().as_bytes())?;
    manifest.record_output(&json_path);

    let svg_path = dir.join(format!("{name}.svg"));
    write_file(&svg_path, render(table, Some(&peak)).as_bytes())?;
    manifest.record_output(&svg_path);
    println!(
        "{name}: r_peak = {}, |C| = {:.4e}, contrast = {:.2}",
        peak.r_peak,
        peak.weight_at_peak.abs(),
        peak.contrast
    );
    Ok(())
}

pub fn run(args: &FiguresArgs) -> Result<(), CliError> {
    let dir: &PathBuf = &args.out_dir;
    let mut manifest = RunManifest::new("figures", None);
    manifest.set("floor", FIGURE_FLOOR);

    for fig in &FIGURES {
        let params =
            ModeParams::from_dimensionless(fig.n, fig.alpha, fig.beta).map_err(CliError::from_core)?;
        let table = coefficients_full(&params).map_err(CliError::from_core)?;
        emit_table(dir, fig.name, &table, &mut manifest)?;
    }

    // fig5: the level diagram of the fig1/fig3 pair in one consistent unit
    // system (ħω = 1, S fixed by fig3's α = 2 f S/ħω).
    let hbar_omega = 1.0f64;
    let energy_scale = hbar_omega * 1e3 / (2.0 * 1.1);
    let f0 = (4.0 * 1e3 * hbar_omega / energy_scale).sqrt();
    let p0 = ModeParams::with_units(0, 0.0, 1e3, f0, hbar_omega, energy_scale)
        .map_err(CliError::from_core)?;
    let p1 = ModeParams::with_units(1, 1e3, 137.5, 1.1, hbar_omega, energy_scale)
        .map_err(CliError::from_core)?;
    let spec0 = sidebands(&coefficients_full(&p0).map_err(CliError::from_core)?, 0.0)
        .map_err(CliError::from_core)?;
    let spec1 = sidebands(&coefficients_full(&p1).map_err(CliError::from_core)?, 0.0)
        .map_err(CliError::from_core)?;
    let diagram = level_diagram(&spec0, &spec1).map_err(CliError::from_core)?;

    let json_path = dir.join("fig5.json");
    write_file(&json_path, diagram.to_json().as_bytes())?;
    manifest.record_output(&json_path);
    let svg_path = dir.join("fig5.svg");
    write_file(
        &svg_path,
        svg::level_diagram_svg("dominant sidebands of the n = 0 and n = 1 modes", &diagram)
            .as_bytes(),
    )?;
    manifest.record_output(&svg_path);
    println!(
        "fig5: lower sidebands gap = {:.4} (hbar omega units), crossing = {}",
        diagram
            .transitions
            .iter()
            .find(|t| (t.from, t.to) == (0, 2))
            .map(|t| t.gap)
            .unwrap_or(f64::NAN),
        diagram.lower_sideband_crosses
    );

    manifest.write(&dir.join("figures_manifest.json"))
}
