//! Standalone SVG line chart of a solution table: approximate solution, exact
//! solution and absolute error against x, all on one y axis.

use std::fmt::Write as _;

use thiserror::Error;

use crate::report::{SolutionRow, SolutionTable};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlotError {
    #[error("all {0} values coincide; nothing to scale")]
    DegenerateRange(&'static str),
    #[error("plot area is empty: width and height must exceed twice the margin")]
    InvalidConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotConfig {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub approx_color: String,
    pub exact_color: String,
    pub error_color: String,
    pub title: Option<String>,
}

impl Default for PlotConfig {
    fn default() -> Self {
        PlotConfig {
            width: 800.0,
            height: 600.0,
            margin: 50.0,
            approx_color: "red".into(),
            exact_color: "yellow".into(),
            error_color: "green".into(),
            title: None,
        }
    }
}

impl PlotConfig {
    pub fn with_title(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    fn validate(&self) -> Result<(), PlotError> {
        let ok = self.margin >= 0.0 && self.width > 2.0 * self.margin && self.height > 2.0 * self.margin;
        if ok {
            Ok(())
        } else {
            Err(PlotError::InvalidConfig)
        }
    }
}

/// Linear map from data space onto the plot area; y grows upward.
#[derive(Debug, Clone, Copy)]
struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let t = (x - self.x_min) / (self.x_max - self.x_min);
        (self.left + t * (self.right - self.left)).clamp(self.left, self.right)
    }

    fn py(&self, y: f64) -> f64 {
        let t = (y - self.y_min) / (self.y_max - self.y_min);
        (self.bottom - t * (self.bottom - self.top)).clamp(self.top, self.bottom)
    }
}

/// Legend name, stroke color and the row field plotted.
type Series<'a> = (&'a str, &'a str, fn(&SolutionRow) -> f64);

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn label(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

pub fn render_svg(table: &SolutionTable, config: &PlotConfig) -> Result<String, PlotError> {
    config.validate()?;
    let rows = table.rows();
    let (x_min, x_max) = min_max(rows.iter().map(|r| r.x));
    if x_max <= x_min {
        return Err(PlotError::DegenerateRange("x"));
    }
    let (y_min, y_max) = min_max(rows.iter().flat_map(|r| [r.y_approx, r.y_exact, r.abs_error]));
    if y_max <= y_min {
        return Err(PlotError::DegenerateRange("y"));
    }

    let m = config.margin;
    let frame = Frame {
        x_min,
        x_max,
        y_min,
        y_max,
        left: m,
        right: config.width - m,
        top: m,
        bottom: config.height - m,
    };

    let (w, h) = (config.width, config.height);
    let mut svg = String::new();
    // Writing to a String cannot fail.
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, r#"  <rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    if let Some(title) = &config.title {
        let _ = writeln!(
            svg,
            r#"  <text x="{:.3}" y="{:.3}" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
            w / 2.0,
            m / 2.0,
            escape(title)
        );
    }

    // Axes with min/max tick labels.
    let _ = writeln!(svg, r#"  <g stroke="black" stroke-width="1">"#);
    let _ = writeln!(
        svg,
        r#"    <line x1="{l:.3}" y1="{b:.3}" x2="{r:.3}" y2="{b:.3}"/>"#,
        l = frame.left,
        r = frame.right,
        b = frame.bottom
    );
    let _ = writeln!(
        svg,
        r#"    <line x1="{l:.3}" y1="{t:.3}" x2="{l:.3}" y2="{b:.3}"/>"#,
        l = frame.left,
        t = frame.top,
        b = frame.bottom
    );
    let _ = writeln!(svg, "  </g>");
    let _ = writeln!(svg, r#"  <g font-family="sans-serif" font-size="12" fill="black">"#);
    let ticks = [
        (frame.left, frame.bottom + 16.0, "middle", label(x_min)),
        (frame.right, frame.bottom + 16.0, "middle", label(x_max)),
        (frame.left - 6.0, frame.bottom + 4.0, "end", label(y_min)),
        (frame.left - 6.0, frame.top + 4.0, "end", label(y_max)),
    ];
    for (x, y, anchor, text) in ticks {
        let _ = writeln!(
            svg,
            r#"    <text x="{x:.3}" y="{y:.3}" text-anchor="{anchor}">{}</text>"#,
            escape(&text)
        );
    }
    let _ = writeln!(
        svg,
        r#"    <text x="{:.3}" y="{:.3}" text-anchor="middle">X</text>"#,
        (frame.left + frame.right) / 2.0,
        frame.bottom + 32.0
    );
    let _ = writeln!(svg, "  </g>");

    let series: [Series; 3] = [
        ("Y_Approximate", &config.approx_color, |r| r.y_approx),
        ("Y_Exact", &config.exact_color, |r| r.y_exact),
        ("Absolute Error", &config.error_color, |r| r.abs_error),
    ];
    for (name, color, value) in &series {
        let points: Vec<String> = rows
            .iter()
            .map(|r| format!("{:.3},{:.3}", frame.px(r.x), frame.py(value(r))))
            .collect();
        let _ = writeln!(
            svg,
            r#"  <polyline data-series="{}" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            escape(name),
            escape(color),
            points.join(" ")
        );
    }

    // Legend in the top-right corner of the plot area.
    let _ = writeln!(svg, r#"  <g font-family="sans-serif" font-size="12">"#);
    for (i, (name, color, _)) in series.iter().enumerate() {
        let y = frame.top + 14.0 + 18.0 * i as f64;
        let x = frame.right - 130.0;
        let _ = writeln!(
            svg,
            r#"    <line x1="{x:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}" stroke="{}" stroke-width="3"/>"#,
            x + 20.0,
            escape(color)
        );
        let _ = writeln!(
            svg,
            r#"    <text x="{:.3}" y="{:.3}" fill="black">{}</text>"#,
            x + 26.0,
            y + 4.0,
            escape(name)
        );
    }
    let _ = writeln!(svg, "  </g>");
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_function;
    use crate::report::build_table;
    use crate::solver::{solve_first, FirstOrderProblem, Method};

    fn table(f: &str, exact: &str, steps: usize) -> SolutionTable {
        let p = FirstOrderProblem::new(parse_function(f).unwrap(), 0.0, 1.0, 3.0, steps).unwrap();
        build_table(&solve_first(&p, Method::Rk4).unwrap(), &parse_function(exact).unwrap()).unwrap()
    }

    fn polylines(svg: &str) -> Vec<Vec<(f64, f64)>> {
        svg.lines()
            .filter(|l| l.contains("<polyline"))
            .map(|l| {
                let pts = l.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
                pts.split(' ')
                    .map(|p| {
                        let (a, b) = p.split_once(',').unwrap();
                        (a.parse().unwrap(), b.parse().unwrap())
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn three_series_of_grid_length() {
        let svg = render_svg(&table("(x-y)/2", "x-2+3*e^-(x/2)", 24), &PlotConfig::default()).unwrap();
        let lines = polylines(&svg);
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.len() == 25));
        assert!(svg.contains(r#"stroke="red""#));
        assert!(svg.contains(r#"stroke="yellow""#));
        assert!(svg.contains(r#"stroke="green""#));
        for name in ["Y_Approximate", "Y_Exact", "Absolute Error"] {
            assert!(svg.contains(&format!(">{name}</text>")), "{name}");
        }
    }

    #[test]
    fn coincident_curves() {
        // y' = 1 is integrated exactly, so approx == exact and the error is 0.
        let svg = render_svg(&table("1", "1+x", 1), &PlotConfig::default()).unwrap();
        let lines = polylines(&svg);
        assert_eq!(lines[0], lines[1]);
        // zero is the data minimum, so the error sits on the bottom edge.
        assert!(lines[2].iter().all(|&(_, y)| y == 550.0));
    }

    #[test]
    fn degenerate_ranges() {
        let row = SolutionRow {
            x: 0.0,
            y_approx: 1.0,
            y_exact: 1.0,
            abs_error: 0.0,
            z_approx: None,
        };
        let single = SolutionTable::from_rows(vec![row], 1.0).unwrap();
        assert_eq!(
            render_svg(&single, &PlotConfig::default()),
            Err(PlotError::DegenerateRange("x"))
        );

        let p = FirstOrderProblem::new(parse_function("0").unwrap(), 0.0, 0.0, 1.0, 3).unwrap();
        let flat = build_table(&solve_first(&p, Method::Rk4).unwrap(), &parse_function("0").unwrap()).unwrap();
        assert_eq!(
            render_svg(&flat, &PlotConfig::default()),
            Err(PlotError::DegenerateRange("y"))
        );
    }

    #[test]
    fn invalid_config() {
        let t = table("1", "1+x", 2);
        let cfg = PlotConfig {
            width: 100.0,
            margin: 50.0,
            ..PlotConfig::default()
        };
        assert_eq!(render_svg(&t, &cfg), Err(PlotError::InvalidConfig));
    }

    #[test]
    fn title_is_escaped() {
        let t = table("1", "1+x", 2);
        let svg = render_svg(&t, &PlotConfig::default().with_title("a<b & c")).unwrap();
        assert!(svg.contains("a&lt;b &amp; c"));
    }

    #[test]
    fn labels() {
        assert_eq!(label(3.0), "3");
        assert_eq!(label(0.125), "0.125");
        assert_eq!(label(-0.0), "0");
    }
}
