//! Minimal SVG output. Coordinates go through a symmetric log scale so that
//! values many orders of magnitude apart stay visible on one plot.

use std::fmt::Write as _;

use lgmirror::cycles::CycleRun;
use lgmirror::C64;

const PANEL: f64 = 320.0;
const PAD: f64 = 24.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

struct Frame {
    scale: f64,
    lo: (f64, f64),
    hi: (f64, f64),
    origin: (f64, f64),
}

fn symlog(x: f64, s: f64) -> f64 {
    x.signum() * (1.0 + x.abs() / s).log10()
}

impl Frame {
    fn fit(points: &[C64], origin: (f64, f64)) -> Frame {
        let smallest = points
            .iter()
            .flat_map(|z| [z.re.abs(), z.im.abs()])
            .filter(|v| *v > 1e-300)
            .fold(f64::INFINITY, f64::min);
        let scale = if smallest.is_finite() { smallest.max(1e-15) / 2.0 } else { 1.0 };
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for z in points {
            let (x, y) = (symlog(z.re, scale), symlog(z.im, scale));
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if !lo.0.is_finite() {
            lo = (-1.0, -1.0);
            hi = (1.0, 1.0);
        }
        let pad = |a: f64, b: f64| if b - a < 1e-9 { (a - 1.0, b + 1.0) } else { (a, b) };
        let (x0, x1) = pad(lo.0, hi.0);
        let (y0, y1) = pad(lo.1, hi.1);
        Frame { scale, lo: (x0, y0), hi: (x1, y1), origin }
    }

    fn map(&self, z: C64) -> (f64, f64) {
        let w = PANEL - 2.0 * PAD;
        let x = (symlog(z.re, self.scale) - self.lo.0) / (self.hi.0 - self.lo.0);
        let y = (symlog(z.im, self.scale) - self.lo.1) / (self.hi.1 - self.lo.1);
        (self.origin.0 + PAD + x * w, self.origin.1 + PANEL - PAD - y * w)
    }

    fn polyline(&self, out: &mut String, pts: &[C64], color: &str, width: f64) {
        let coords: Vec<String> = pts
            .iter()
            .map(|z| {
                let (x, y) = self.map(*z);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="{width}" points="{}"/>"#,
            coords.join(" ")
        );
    }

    fn dot(&self, out: &mut String, z: C64, color: &str, label: Option<&str>) {
        let (x, y) = self.map(z);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#);
        if let Some(l) = label {
            let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="9">{l}</text>"#, x + 4.0, y - 4.0);
        }
    }

    fn title(&self, out: &mut String, text: &str) {
        let _ = writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#ccc"/><text x="{}" y="{}" font-size="11">{text}</text>"##,
            self.origin.0,
            self.origin.1,
            self.origin.0 + 6.0,
            self.origin.1 + 14.0
        );
    }
}

fn document(width: f64, height: f64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n"
    )
}

/// Critical values in the complex plane.
pub fn critical_values(values: &[(C64, usize)]) -> String {
    let pts: Vec<C64> = values.iter().map(|v| v.0).collect();
    let f = Frame::fit(&pts, (0.0, 0.0));
    let mut body = String::new();
    f.title(&mut body, "critical values (symlog)");
    for (v, m) in values {
        f.dot(&mut body, *v, COLORS[0], Some(&format!("×{m}")));
    }
    document(PANEL, PANEL, &body)
}

/// Arcs in the `λ`-plane, then one panel per arc with the branch-point
/// trajectories in the base plane.
pub fn braids(run: &CycleRun) -> String {
    let mut body = String::new();
    let mut lam: Vec<C64> = vec![run.lambda0];
    for a in &run.arcs {
        lam.extend((0..=64).map(|k| a.point(k as f64 / 64.0)));
    }
    let f = Frame::fit(&lam, (0.0, 0.0));
    f.title(&mut body, "arcs in the λ-plane (symlog)");
    for (i, a) in run.arcs.iter().enumerate() {
        let pts: Vec<C64> = (0..=128).map(|k| a.point(k as f64 / 128.0)).collect();
        f.polyline(&mut body, &pts, COLORS[i % COLORS.len()], 1.2);
        f.dot(&mut body, a.to, "black", Some(&format!("arc {i}")));
    }
    f.dot(&mut body, run.lambda0, "black", Some("λ0"));
    for (i, b) in run.braids.iter().enumerate() {
        let origin = (PANEL * ((i + 1) % 3) as f64, PANEL * ((i + 1) / 3) as f64);
        let all: Vec<C64> = b.samples.iter().flat_map(|s| s.points.iter().copied()).collect();
        let g = Frame::fit(&all, origin);
        g.title(&mut body, &format!("arc {i}: branch points"));
        let n = b.samples[0].points.len();
        for k in 0..n {
            let path: Vec<C64> = b.samples.iter().map(|s| s.points[k]).collect();
            let color = COLORS[k % COLORS.len()];
            g.polyline(&mut body, &path, color, 1.0);
            g.dot(&mut body, path[0], color, Some(&k.to_string()));
        }
        for c in &b.collisions {
            g.dot(&mut body, c.position, "black", Some(&format!("{}{}", c.pair.0, c.pair.1)));
        }
    }
    let panels = run.braids.len() + 1;
    let rows = panels.div_ceil(3);
    document(PANEL * panels.min(3) as f64, PANEL * rows as f64, &body)
}
