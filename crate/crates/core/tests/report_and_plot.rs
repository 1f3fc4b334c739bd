use proptest::prelude::*;
use rkode::report::{CSV_HEADER, CSV_HEADER_WITH_Z};
use rkode::{
    build_table, parse_function, render_svg, solve_first, solve_second, write_csv, FirstOrderProblem, Method,
    PlotConfig, SecondOrderProblem, SolutionRow, SolutionTable,
};

fn e(s: &str) -> rkode::Expr {
    parse_function(s).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

fn polylines(svg: &str) -> Vec<(String, Vec<(f64, f64)>)> {
    let doc = roxmltree::Document::parse(svg).expect("well-formed XML");
    doc.descendants()
        .filter(|n| n.has_tag_name("polyline"))
        .map(|n| {
            let pts = n
                .attribute("points")
                .unwrap()
                .split_whitespace()
                .map(|p| {
                    let (a, b) = p.split_once(',').unwrap();
                    (a.parse().unwrap(), b.parse().unwrap())
                })
                .collect();
            (n.attribute("stroke").unwrap().to_string(), pts)
        })
        .collect()
}

#[test]
fn headers_are_byte_exact() {
    let p = FirstOrderProblem::new(e("x"), 0.0, 0.0, 1.0, 2).unwrap();
    let t = build_table(&solve_first(&p, Method::Rk4).unwrap(), &e("x^2/2")).unwrap();
    let mut buf = Vec::new();
    write_csv(&t, &mut buf).unwrap();
    assert!(buf.starts_with(b"X,Y_Approximate,Y_Exact,Absolute_Error\n"));

    let p = SecondOrderProblem::new(e("z"), e("0"), 0.0, 0.0, 1.0, 1.0, 2).unwrap();
    let t = build_table(&solve_second(&p).unwrap(), &e("x")).unwrap();
    let mut buf = Vec::new();
    write_csv(&t, &mut buf).unwrap();
    assert!(buf.starts_with(b"X,Y_Approximate,Y_Exact,Absolute_Error,Z_Approximate\n"));
    assert_eq!(CSV_HEADER_WITH_Z, format!("{CSV_HEADER},Z_Approximate"));
}

#[test]
fn second_order_chart() {
    let p = SecondOrderProblem::new(e("z"), e("0-6*y-5*z"), 0.0, 2.0, 3.0, 2.0, 10).unwrap();
    let t = build_table(&solve_second(&p).unwrap(), &e("9*e^-(2*x)-7*e^-(3*x)")).unwrap();
    let svg = render_svg(&t, &PlotConfig::default()).unwrap();
    let lines = polylines(&svg);
    let colors: Vec<_> = lines.iter().map(|(c, _)| c.as_str()).collect();
    assert_eq!(colors, ["red", "yellow", "green"]);
    assert!(lines.iter().all(|(_, pts)| pts.len() == 11));
}

#[test]
fn custom_colors_and_size() {
    let p = FirstOrderProblem::new(e("x"), 0.0, 0.0, 1.0, 5).unwrap();
    let t = build_table(&solve_first(&p, Method::Euler).unwrap(), &e("x^2/2")).unwrap();
    let cfg = PlotConfig {
        width: 300.0,
        height: 200.0,
        margin: 20.0,
        approx_color: "#ff0000".into(),
        exact_color: "#cccc00".into(),
        error_color: "#00aa00".into(),
        title: None,
    };
    let svg = render_svg(&t, &cfg).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.root_element().attribute("width"), Some("300"));
    let colors: Vec<_> = polylines(&svg).into_iter().map(|(c, _)| c).collect();
    assert_eq!(colors, ["#ff0000", "#cccc00", "#00aa00"]);
}

fn arb_table() -> impl Strategy<Value = SolutionTable> {
    (
        -100.0f64..100.0,
        0.001f64..10.0,
        prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3, prop::option::of(-1e3f64..1e3)), 2..120),
        any::<bool>(),
    )
        .prop_map(|(x0, h, vals, with_z)| {
            let rows = vals
                .into_iter()
                .enumerate()
                .map(|(i, (ya, ye, z))| SolutionRow {
                    x: x0 + i as f64 * h,
                    y_approx: ya,
                    y_exact: ye,
                    abs_error: (ye - ya).abs(),
                    z_approx: if with_z { Some(z.unwrap_or(0.0)) } else { None },
                })
                .collect();
            SolutionTable::from_rows(rows, h).unwrap()
        })
}

proptest! {
    #[test]
    fn csv_round_trips(t in arb_table()) {
        let mut buf = Vec::new();
        let n = write_csv(&t, &mut buf).unwrap();
        prop_assert_eq!(n, t.len());
        let text = String::from_utf8(buf).unwrap();
        prop_assert_eq!(text.lines().count(), t.len() + 1);
        prop_assert!(!text.contains('\r'));
        for (row, parsed) in t.rows().iter().zip(csv_rows(&text)) {
            let mut want = vec![row.x, row.y_approx, row.y_exact, row.abs_error];
            want.extend(row.z_approx);
            prop_assert_eq!(parsed.len(), want.len());
            for (g, w) in parsed.iter().zip(&want) {
                prop_assert!((g - w).abs() <= 1e-10 * w.abs(), "{} vs {}", g, w);
            }
            prop_assert!(row.abs_error >= 0.0);
        }
    }

    #[test]
    fn chart_points_stay_in_plot_area_and_keep_order(t in arb_table()) {
        let cfg = PlotConfig::default();
        let svg = render_svg(&t, &cfg).unwrap();
        let lines = polylines(&svg);
        prop_assert_eq!(lines.len(), 3);
        for (_, pts) in &lines {
            prop_assert_eq!(pts.len(), t.len());
            for &(px, py) in pts {
                prop_assert!(px >= cfg.margin && px <= cfg.width - cfg.margin);
                prop_assert!(py >= cfg.margin && py <= cfg.height - cfg.margin);
            }
            prop_assert!(pts.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }
}
