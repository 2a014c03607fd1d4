//! Minimal static SVG plot of Lorenz curves.

use std::fmt::Write;

use mpcert::LorenzCurve;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

pub fn lorenz_plot(curves: &[(String, LorenzCurve)]) -> String {
    let d = curves
        .iter()
        .map(|(_, c)| c.len())
        .max()
        .unwrap_or(1)
        .max(1);
    let x = |k: usize| MARGIN + (WIDTH - 2.0 * MARGIN) * k as f64 / d as f64;
    let y = |v: f64| HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * v.clamp(0.0, 1.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{} {} H{} M{} {} V{}" stroke="black" fill="none"/>"#,
        x(0),
        y(0.0),
        x(d),
        x(0),
        y(0.0),
        y(1.0)
    );
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{t}</text>"#,
            x(0) - 6.0,
            y(t) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">k</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{}" font-size="12">C(k)</text>"#,
        MARGIN - 15.0
    );

    for (i, (label, curve)) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut points = format!("{},{}", x(0), y(0.0));
        for (k, v) in curve.cumulative.iter().enumerate() {
            let _ = write!(points, " {:.2},{:.2}", x(k + 1), y(*v));
        }
        let _ = writeln!(
            s,
            r#"<polyline points="{points}" stroke="{color}" fill="none" stroke-width="1.5"/>"#
        );
        if let Some(sigma) = &curve.sigma {
            for (k, (v, e)) in curve.cumulative.iter().zip(sigma).enumerate() {
                let _ = writeln!(
                    s,
                    r#"<line x1="{0:.2}" x2="{0:.2}" y1="{1:.2}" y2="{2:.2}" stroke="{color}"/>"#,
                    x(k + 1),
                    y(v - e),
                    y(v + e)
                );
            }
        }
        let ly = MARGIN + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly}" font-size="11" fill="{color}">{}</text>"#,
            WIDTH - MARGIN - 150.0,
            escape(label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
