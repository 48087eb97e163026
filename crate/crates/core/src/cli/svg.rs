//! Minimal SVG line plot of the transmission curve.

use std::fmt::Write as _;

use super::report::CurveRow;
use crate::config::PotentialConfig;
use crate::regime::Zone;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;

fn nice_step(span: f64) -> f64 {
    let raw = span / 10.0;
    let base = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * base).find(|s| *s >= raw).unwrap_or(raw)
}

/// Klein zones are shaded dark (negative-energy oscillation under the
/// barrier), the barrier-top band light.
pub fn render(cfg: &PotentialConfig, rows: &[CurveRow], (lo, hi): (f64, f64)) -> String {
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |e: f64| LEFT + (e - lo) / (hi - lo) * pw;
    let sy = |t: f64| TOP + (1.0 - t) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for (zone, fill) in [
        (Zone::LowerKlein, "#bbbbbb"),
        (Zone::HigherKlein, "#bbbbbb"),
        (Zone::Conventional, "#e6e6e6"),
    ] {
        let (a, b) = zone.bounds(cfg);
        let (a, b) = (a.max(lo), b.min(hi));
        if b > a {
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{TOP}" width="{:.2}" height="{ph}" fill="{fill}"/>"#,
                sx(a),
                sx(b) - sx(a)
            );
        }
    }

    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    let step = nice_step(hi - lo);
    let mut tick = (lo / step).ceil() * step;
    while tick <= hi + 1e-12 {
        let x = sx(tick);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}</text>"#,
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 20.0,
            (tick * 1e6).round() / 1e6
        );
        tick += step;
    }
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let y = sy(t);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end">{t}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">E / m</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{:.2}" font-size="14" text-anchor="middle" transform="rotate(-90 15 {:.2})">|T|²</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );

    let points: Vec<String> =
        rows.iter().map(|r| format!("{:.2},{:.2}", sx(r.energy), sy(r.t2))).collect();
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="navy" stroke-width="1" points="{}"/>"#,
        points.join(" ")
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_polyline_and_shading() {
        let cfg = PotentialConfig::reference();
        let rows = vec![
            CurveRow { energy: 1.5, t2: 0.5, r2: 0.5, re_t: 0.0, im_t: 0.0, re_r: 0.0, im_r: 0.0 },
            CurveRow { energy: 11.0, t2: 1.0, r2: 0.0, re_t: 0.0, im_t: 0.0, re_r: 0.0, im_r: 0.0 },
        ];
        let svg = render(&cfg, &rows, (1.0, 12.0));
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<polyline"));
        assert_eq!(svg.matches("#bbbbbb").count(), 2);
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn tick_steps() {
        assert_eq!(nice_step(11.0), 2.0);
        assert_eq!(nice_step(1.0), 0.1);
    }
}
