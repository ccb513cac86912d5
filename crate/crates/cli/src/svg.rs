//! Minimal hand-rolled SVG plotting: stem plots for weight tables, line
//! plots for field/current profiles, a rectangle map for feasibility grids
//! and the four-level diagram.  No plotting dependency, deterministic output.

use ringfloquet::spectrum::TransitionDiagram;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 520.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 36.0;
const MARGIN_B: f64 = 48.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(xs: (f64, f64), ys: (f64, f64)) -> Self {
        let pad = |lo: f64, hi: f64| {
            let span = (hi - lo).abs().max(1e-300);
            (lo - 0.05 * span, hi + 0.05 * span)
        };
        let (x0, x1) = pad(xs.0, xs.1);
        let (y0, y1) = pad(ys.0, ys.1);
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN_L + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - MARGIN_L - MARGIN_R)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_B - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - MARGIN_T - MARGIN_B)
    }
}

/// 1-2-5 tick positions covering [lo, hi].
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0) || !span.is_finite() {
        return vec![lo];
    }
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| span / s <= 7.0)
        .unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-9 * step {
        out.push(if t.abs() < 1e-12 * step { 0.0 } else { t });
        t += step;
    }
    out
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{:.1}\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\" \
         text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    )
}

fn axes(frame: &Frame, xlabel: &str, ylabel: &str) -> String {
    let mut s = String::new();
    let (px0, px1) = (frame.px(frame.x0), frame.px(frame.x1));
    let (py0, py1) = (frame.py(frame.y0), frame.py(frame.y1));
    s.push_str(&format!(
        "<rect x=\"{px0:.1}\" y=\"{py1:.1}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" \
         stroke=\"#444\"/>\n",
        px1 - px0,
        py0 - py1
    ));
    for t in ticks(frame.x0, frame.x1) {
        let x = frame.px(t);
        s.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{py0:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"#444\"/>\n\
             <text x=\"{x:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{}</text>\n",
            py0 + 5.0,
            py0 + 18.0,
            fmt_tick(t)
        ));
    }
    for t in ticks(frame.y0, frame.y1) {
        let y = frame.py(t);
        s.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{px0:.1}\" y2=\"{y:.1}\" stroke=\"#444\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{}</text>\n",
            px0 - 5.0,
            px0 - 8.0,
            y + 4.0,
            fmt_tick(t)
        ));
    }
    s.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
         text-anchor=\"middle\">{}</text>\n",
        (px0 + px1) / 2.0,
        HEIGHT - 10.0,
        escape(xlabel)
    ));
    s.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
         text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1})\">{}</text>\n",
        (py0 + py1) / 2.0,
        (py0 + py1) / 2.0,
        escape(ylabel)
    ));
    s
}

fn fmt_tick(t: f64) -> String {
    if t == 0.0 {
        "0".into()
    } else if t.abs() >= 1e4 || t.abs() < 1e-3 {
        format!("{t:.1e}")
    } else {
        format!("{t}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Keeps at most `max_keep` points, retaining the largest-|y| sample per
/// bucket so peaks survive.
fn decimate(points: &[(f64, f64)], max_keep: usize) -> Vec<(f64, f64)> {
    if points.len() <= max_keep {
        return points.to_vec();
    }
    let bucket = points.len().div_ceil(max_keep);
    points
        .chunks(bucket)
        .map(|c| {
            *c.iter()
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                .unwrap()
        })
        .collect()
}

/// Stem plot of a weight table, the dominant positive peak annotated.
pub fn stem_plot(
    title: &str,
    xlabel: &str,
    ylabel: &str,
    points: &[(f64, f64)],
    peak: Option<(f64, f64)>,
) -> String {
    let pts = decimate(points, 2048);
    let (mut ymin, mut ymax) = (0.0f64, 0.0f64);
    for &(_, y) in &pts {
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let frame = Frame::new(
        (pts.first().map_or(0.0, |p| p.0), pts.last().map_or(1.0, |p| p.0)),
        (ymin, ymax),
    );
    let mut s = header(title);
    s.push_str(&axes(&frame, xlabel, ylabel));
    let base = frame.py(0.0);
    for &(x, y) in &pts {
        if y == 0.0 {
            continue;
        }
        let px = frame.px(x);
        s.push_str(&format!(
            "<line x1=\"{px:.1}\" y1=\"{base:.1}\" x2=\"{px:.1}\" y2=\"{:.1}\" \
             stroke=\"#1f77b4\" stroke-width=\"1\"/>\n",
            frame.py(y)
        ));
    }
    if let Some((xp, yp)) = peak {
        let (px, py) = (frame.px(xp), frame.py(yp));
        s.push_str(&format!(
            "<circle cx=\"{px:.1}\" cy=\"{py:.1}\" r=\"3.5\" fill=\"#d62728\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             fill=\"#d62728\">r_peak = {xp}, C = {yp:.4e}</text>\n",
            px + 8.0,
            py - 6.0
        ));
    }
    s.push_str("</svg>\n");
    s
}

/// Multi-series line plot.
pub fn line_plot(
    title: &str,
    xlabel: &str,
    ylabel: &str,
    series: &[(&str, &[(f64, f64)])],
) -> String {
    const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
    for (_, pts) in series {
        for &(x, y) in *pts {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
    }
    let frame = Frame::new((xmin, xmax), (ymin, ymax));
    let mut s = header(title);
    s.push_str(&axes(&frame, xlabel, ylabel));
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = decimate(pts, 2048)
            .iter()
            .map(|&(x, y)| format!("{:.1},{:.1}", frame.px(x), frame.py(y)))
            .collect();
        s.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             fill=\"{color}\">{}</text>\n",
            path.join(" "),
            WIDTH - MARGIN_R - 150.0,
            MARGIN_T + 16.0 * (i + 1) as f64,
            escape(name)
        ));
    }
    s.push_str("</svg>\n");
    s
}

/// Rectangle map over a log-spaced (R, ω) grid, shaded by log10 of the value;
/// samples outside the validity regime are hatched grey.
pub fn grid_map(
    title: &str,
    xlabel: &str,
    ylabel: &str,
    cells: &[(f64, f64, f64, bool)],
    nx: usize,
    ny: usize,
) -> String {
    let (mut vmin, mut vmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(_, _, v, _) in cells {
        if v > 0.0 {
            vmin = vmin.min(v.log10());
            vmax = vmax.max(v.log10());
        }
    }
    if !vmin.is_finite() {
        vmin = 0.0;
        vmax = 1.0;
    }
    let w = (WIDTH - MARGIN_L - MARGIN_R) / nx as f64;
    let h = (HEIGHT - MARGIN_T - MARGIN_B) / ny as f64;
    let mut s = header(title);
    for (idx, &(_, _, v, valid)) in cells.iter().enumerate() {
        let (i, j) = (idx / ny, idx % ny);
        let x = MARGIN_L + i as f64 * w;
        let y = HEIGHT - MARGIN_B - (j + 1) as f64 * h;
        let color = if !valid {
            "#bbbbbb".to_string()
        } else if v > 0.0 {
            let t = ((v.log10() - vmin) / (vmax - vmin).max(1e-12)).clamp(0.0, 1.0);
            format!(
                "rgb({},{},{})",
                (40.0 + 200.0 * t) as u8,
                (60.0 + 80.0 * (1.0 - t)) as u8,
                (160.0 * (1.0 - t) + 40.0) as u8
            )
        } else {
            "#eeeeee".to_string()
        };
        s.push_str(&format!(
            "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{w:.1}\" height=\"{h:.1}\" fill=\"{color}\" \
             stroke=\"none\"/>\n"
        ));
    }
    s.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
         text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        HEIGHT - 10.0,
        escape(xlabel)
    ));
    s.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
         text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1})\">{}</text>\n",
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(ylabel)
    ));
    s.push_str("</svg>\n");
    s
}

/// Four-level diagram: static levels on the left, sideband pairs on the
/// right, suppressed transitions dashed.
pub fn level_diagram_svg(title: &str, diagram: &TransitionDiagram) -> String {
    let energies: Vec<f64> = diagram.levels.iter().map(|l| l.energy).collect();
    let (emin, emax) = energies
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &e| {
            (a.min(e), b.max(e))
        });
    let frame = Frame::new((0.0, 1.0), (emin, emax));
    let mut s = header(title);
    s.push_str(&axes(&frame, "", "energy (J)"));
    let (x0, x1) = (frame.px(0.15), frame.px(0.85));
    for level in &diagram.levels {
        let y = frame.py(level.energy);
        let color = if level.n == 0 { "#1f77b4" } else { "#d62728" };
        s.push_str(&format!(
            "<line x1=\"{x0:.1}\" y1=\"{y:.1}\" x2=\"{x1:.1}\" y2=\"{y:.1}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
             fill=\"{color}\">n={} r={}</text>\n",
            x1 + 6.0,
            y + 4.0,
            level.n,
            level.r
        ));
    }
    for t in &diagram.transitions {
        let (ya, yb) = (
            frame.py(diagram.levels[t.from].energy),
            frame.py(diagram.levels[t.to].energy),
        );
        let x = frame.px(0.25 + 0.1 * (t.from + t.to) as f64);
        let dash = match t.kind {
            ringfloquet::spectrum::TransitionKind::Allowed => "",
            ringfloquet::spectrum::TransitionKind::Suppressed => " stroke-dasharray=\"4 3\"",
        };
        s.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{ya:.1}\" x2=\"{x:.1}\" y2=\"{yb:.1}\" stroke=\"#666\" \
             stroke-width=\"1\"{dash}/>\n"
        ));
    }
    s.push_str("</svg>\n");
    s
}
