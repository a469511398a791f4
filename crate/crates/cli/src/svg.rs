//! Self-contained two-panel SVG: the discriminant on a symmetric log axis
//! above, the number of equilibria below, one polyline per `r2`.

use std::fmt::Write;

use crate::format::fmt_sig;
use crate::sweep::SweepRow;

const WIDTH: f64 = 820.0;
const PANEL_H: f64 = 260.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const GAP: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

/// `sign(d) * log10(1 + |d|)`.
pub fn symlog(d: f64) -> f64 {
    d.signum() * d.abs().ln_1p() / std::f64::consts::LN_10
}

fn delta_y(r: &SweepRow) -> f64 {
    // out-of-range discriminants sit at the f64 limit
    r.delta
        .map(symlog)
        .unwrap_or(f64::from(r.delta_sign) * symlog(f64::MAX))
}

struct Axis {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Axis {
    fn map(&self, v: f64) -> f64 {
        if self.hi == self.lo {
            return (self.px_lo + self.px_hi) / 2.0;
        }
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }
}

fn curves(rows: &[SweepRow]) -> Vec<(f64, Vec<&SweepRow>)> {
    let mut out: Vec<(f64, Vec<&SweepRow>)> = Vec::new();
    for r in rows {
        match out.last_mut() {
            Some((r2, v)) if *r2 == r.r2 => v.push(r),
            _ => out.push((r.r2, vec![r])),
        }
    }
    out
}

fn polyline(s: &mut String, pts: impl Iterator<Item = (f64, f64)>, color: &str) {
    let coords: Vec<String> = pts.map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
        coords.join(" ")
    );
}

fn frame(s: &mut String, x: &Axis, y: &Axis, title: &str, y_ticks: &[(f64, String)], x_ticks: &[f64]) {
    let (x0, x1, y0, y1) = (x.px_lo, x.px_hi, y.px_hi, y.px_lo);
    let _ = writeln!(
        s,
        r##"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#444"/>"##,
        x1 - x0,
        y1 - y0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{title}</text>"#,
        (x0 + x1) / 2.0,
        y0 - 8.0
    );
    for (v, label) in y_ticks {
        let py = y.map(*v);
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{py:.2}" x2="{x1:.2}" y2="{py:.2}" stroke="#ddd"/>"##,
            x0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{label}</text>"#,
            x0 - 6.0,
            py + 4.0
        );
    }
    for v in x_ticks {
        let px = x.map(*v);
        let _ = writeln!(
            s,
            r##"<line x1="{px:.2}" y1="{y1:.2}" x2="{px:.2}" y2="{:.2}" stroke="#444"/>"##,
            y1 + 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            y1 + 18.0,
            fmt_sig(*v)
        );
    }
}

pub fn render(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    let height = TOP + 2.0 * PANEL_H + GAP + 50.0;
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if rows.is_empty() {
        s.push_str("</svg>\n");
        return s;
    }
    let a_lo = rows.iter().map(|r| r.a).fold(f64::INFINITY, f64::min);
    let a_hi = rows.iter().map(|r| r.a).fold(f64::NEG_INFINITY, f64::max);
    let x = Axis {
        lo: a_lo,
        hi: a_hi,
        px_lo: LEFT,
        px_hi: WIDTH - RIGHT,
    };
    let x_ticks: Vec<f64> = (0..=4).map(|i| a_lo + (a_hi - a_lo) * f64::from(i) / 4.0).collect();

    // top panel
    let ys: Vec<f64> = rows.iter().map(delta_y).collect();
    let d_lo = ys.iter().cloned().fold(0.0, f64::min).floor();
    let d_hi = ys.iter().cloned().fold(0.0, f64::max).ceil();
    let (d_lo, d_hi) = if d_lo == d_hi {
        (d_lo - 1.0, d_hi + 1.0)
    } else {
        (d_lo, d_hi)
    };
    let y_top = Axis {
        lo: d_lo,
        hi: d_hi,
        px_lo: TOP + PANEL_H,
        px_hi: TOP,
    };
    let step = ((d_hi - d_lo) / 8.0).ceil().max(1.0);
    let mut ticks = Vec::new();
    let mut t = (d_lo / step).ceil() * step;
    while t <= d_hi {
        let label = if t == 0.0 {
            "0".to_string()
        } else {
            format!("{}1e{}", if t < 0.0 { "-" } else { "" }, t.abs())
        };
        ticks.push((t, label));
        t += step;
    }
    frame(
        &mut s,
        &x,
        &y_top,
        "discriminant of g (symmetric log: sign(d) log10(1+|d|))",
        &ticks,
        &x_ticks,
    );
    let zero = y_top.map(0.0);
    let _ = writeln!(
        s,
        r##"<line x1="{LEFT:.2}" y1="{zero:.2}" x2="{:.2}" y2="{zero:.2}" stroke="#888" stroke-dasharray="4 3"/>"##,
        WIDTH - RIGHT
    );

    // bottom panel
    let b_top = TOP + PANEL_H + GAP;
    let y_bot = Axis {
        lo: 0.0,
        hi: 3.5,
        px_lo: b_top + PANEL_H,
        px_hi: b_top,
    };
    let n_ticks: Vec<(f64, String)> = (0..=3).map(|n| (f64::from(n), n.to_string())).collect();
    frame(&mut s, &x, &y_bot, "number of Nash equilibria", &n_ticks, &x_ticks);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">a</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        b_top + PANEL_H + 40.0
    );

    for (i, (r2, pts)) in curves(rows).iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        polyline(&mut s, pts.iter().map(|r| (x.map(r.a), y_top.map(delta_y(r)))), color);
        // offset each curve slightly so coincident counts stay visible
        let off = 3.0 * i as f64;
        polyline(
            &mut s,
            pts.iter().map(|r| (x.map(r.a), y_bot.map(r.n_nash as f64) - off)),
            color,
        );
        let ly = TOP + 20.0 * (i as f64 + 1.0);
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 20.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="12">r2 = {}</text>"#,
            lx + 26.0,
            ly + 4.0,
            fmt_sig(*r2)
        );
    }
    s.push_str("</svg>\n");
    s
}
