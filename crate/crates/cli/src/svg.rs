//! Minimal SVG trajectory plots for 2D runs: one polyline per agent plus the
//! initial k-Hull polygon.

use kcapture::geometry::{khull_boundary_2d, PointSet, Vector};
use kcapture::scenario::Scenario;
use kcapture::trace::Trace;
use std::fmt::Write;

const COLORS: [&str; 9] = [
    "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#17becf", "#bcbd22", "#7f7f7f", "#e377c2",
    "#ff7f0e",
];

pub fn render(scenario: &Scenario, trace: &Trace) -> String {
    let steps = &trace.steps;
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    {
        let mut visit = |p: &Vector| {
            min_x = min_x.min(p.0[0]);
            max_x = max_x.max(p.0[0]);
            min_y = min_y.min(p.0[1]);
            max_y = max_y.max(p.0[1]);
        };
        for s in steps {
            visit(&s.e);
            for p in &s.p {
                visit(p);
            }
        }
        visit(&scenario.evader);
        for p in &scenario.pursuers {
            visit(p);
        }
    }
    let pad = 0.05 * ((max_x - min_x).max(max_y - min_y)).max(1.0);
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);
    // SVG y grows downward; flip via transform.
    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.4} {:.4} {:.4} {:.4}" width="640" height="640">"##,
        min_x - pad,
        -(max_y + pad),
        w,
        h
    );
    let _ = writeln!(out, r##"<g stroke-width="{:.5}" fill="none">"##, w / 640.0);

    // Initial k-Hull polygon, when computable.
    if let Ok(points) = PointSet::new(scenario.pursuers.clone()) {
        if let Ok(hull) = khull_boundary_2d(&points, scenario.k) {
            if hull.len() >= 3 {
                let pts: Vec<String> =
                    hull.iter().map(|v| format!("{:.5},{:.5}", v.0[0], -v.0[1])).collect();
                let _ = writeln!(
                    out,
                    r##"<polygon points="{}" fill="#dcefdc" stroke="#4c9a4c"/>"##,
                    pts.join(" ")
                );
            }
        }
    }

    for j in 0..trace.n {
        let pts: Vec<String> = steps
            .iter()
            .map(|s| format!("{:.5},{:.5}", s.p[j].0[0], -s.p[j].0[1]))
            .collect();
        let color = COLORS[j % COLORS.len()];
        let _ = writeln!(out, r##"<polyline points="{}" stroke="{color}"/>"##, pts.join(" "));
        if let Some(first) = steps.first() {
            let _ = writeln!(
                out,
                r##"<circle cx="{:.5}" cy="{:.5}" r="{:.5}" fill="{color}"/>"##,
                first.p[j].0[0],
                -first.p[j].0[1],
                2.5 * w / 640.0
            );
        }
    }
    let epts: Vec<String> = steps
        .iter()
        .map(|s| format!("{:.5},{:.5}", s.e.0[0], -s.e.0[1]))
        .collect();
    let _ = writeln!(out, r##"<polyline points="{}" stroke="#d62728"/>"##, epts.join(" "));
    if let Some(first) = steps.first() {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.5}" cy="{:.5}" r="{:.5}" fill="#d62728"/>"##,
            first.e.0[0],
            -first.e.0[1],
            2.5 * w / 640.0
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
