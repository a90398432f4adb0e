//! Renders trajectory CSV into a self-contained SVG line chart: one polyline
//! per (ordering, seed, item) series.

use std::fmt::Write as _;
use std::io::Read;

use crate::error::CliError;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

const MARGIN_LEFT: f64 = 74.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 16.0;
const MARGIN_BOTTOM: f64 = 48.0;

#[derive(Debug)]
pub struct Series {
    pub key: String,
    pub points: Vec<(f64, f64)>,
}

/// Reads trajectory CSV (`ordering,seed,step,item,polysemy`) into series in
/// first-appearance order.
pub fn read_series(reader: impl Read) -> Result<Vec<Series>, CliError> {
    let mut csv_reader = csv::ReaderBuilder::new().from_reader(reader);
    let headers = csv_reader
        .headers()
        .map_err(|e| CliError::data(format!("trajectory input: {e}")))?
        .clone();
    let expected = ["ordering", "seed", "step", "item", "polysemy"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(CliError::data(format!(
            "trajectory input has header {:?}, expected {:?}",
            headers.iter().collect::<Vec<_>>().join(","),
            expected.join(",")
        )));
    }

    let mut series: Vec<Series> = Vec::new();
    for (idx, record) in csv_reader.records().enumerate() {
        let line = idx + 2;
        let record = record.map_err(|e| CliError::data(format!("trajectory input: {e}")))?;
        let field = |i: usize| record.get(i).unwrap_or("");
        let step: f64 = field(2)
            .parse()
            .map_err(|_| CliError::data(format!("line {line}: step {:?} is not a number", field(2))))?;
        let polysemy: f64 = field(4).parse().map_err(|_| {
            CliError::data(format!(
                "line {line}: polysemy {:?} is not a number",
                field(4)
            ))
        })?;
        if !step.is_finite() || !polysemy.is_finite() {
            return Err(CliError::data(format!("line {line}: non-finite sample")));
        }
        let key = format!("{}:{}:{}", field(0), field(1), field(3));
        match series.iter_mut().find(|s| s.key == key) {
            Some(s) => s.points.push((step, polysemy)),
            None => series.push(Series {
                key,
                points: vec![(step, polysemy)],
            }),
        }
    }
    if series.is_empty() {
        return Err(CliError::data("trajectory input has no data rows"));
    }
    Ok(series)
}

fn padded(min: f64, max: f64) -> (f64, f64) {
    if min < max {
        (min, max)
    } else {
        // Flat range: widen by 5% of the magnitude, or 0.5 around zero.
        let half = if min == 0.0 { 0.5 } else { min.abs() * 0.05 };
        (min - half, max + half)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_svg(series: &[Series], width: u32, height: u32) -> String {
    let w = width as f64;
    let h = height as f64;

    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in &s.points {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    let (x_lo, x_hi) = padded(x_min, x_max);
    let (y_lo, y_hi) = padded(y_min, y_max);

    let plot_w = w - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = h - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" role=\"img\">\n"
    );
    let _ = write!(
        svg,
        "  <rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>\n"
    );

    // Axes along the left and bottom plot edges.
    let x0 = MARGIN_LEFT;
    let x1 = w - MARGIN_RIGHT;
    let y0 = h - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    let _ = write!(
        svg,
        "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
        x0, y0, x1, y0
    );
    let _ = write!(
        svg,
        "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
        x0, y0, x0, y1
    );

    // Min and max tick labels on both axes, in data units.
    let _ = write!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"11\" \
         text-anchor=\"middle\" fill=\"#333333\">{}</text>\n",
        sx(x_min),
        y0 + 16.0,
        x_min
    );
    let _ = write!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"11\" \
         text-anchor=\"middle\" fill=\"#333333\">{}</text>\n",
        sx(x_max),
        y0 + 16.0,
        x_max
    );
    let _ = write!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"11\" \
         text-anchor=\"end\" fill=\"#333333\">{}</text>\n",
        x0 - 6.0,
        sy(y_min) + 4.0,
        y_min
    );
    let _ = write!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"11\" \
         text-anchor=\"end\" fill=\"#333333\">{}</text>\n",
        x0 - 6.0,
        sy(y_max) + 4.0,
        y_max
    );

    // Axis titles.
    let _ = write!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"12\" \
         text-anchor=\"middle\" fill=\"#333333\">step</text>\n",
        (x0 + x1) / 2.0,
        h - 12.0
    );
    let _ = write!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"12\" \
         text-anchor=\"middle\" fill=\"#333333\" transform=\"rotate(-90 {:.2} {:.2})\">polysemy</text>\n",
        14.0,
        (y0 + y1) / 2.0,
        14.0,
        (y0 + y1) / 2.0
    );

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::new();
        for (j, &(x, y)) in s.points.iter().enumerate() {
            if j > 0 {
                points.push(' ');
            }
            let _ = write!(points, "{:.2},{:.2}", sx(x), sy(y));
        }
        let _ = write!(
            svg,
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{points}\"/>\n"
        );
    }

    // Legend in the top right, capped to keep large sweeps readable.
    if series.len() <= 12 {
        for (i, s) in series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let ly = MARGIN_TOP + 6.0 + i as f64 * 16.0;
            let _ = write!(
                svg,
                "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"10\" height=\"10\" fill=\"{color}\"/>\n",
                x1 - 170.0,
                ly - 9.0
            );
            let _ = write!(
                svg,
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"11\" \
                 fill=\"#333333\">{}</text>\n",
                x1 - 156.0,
                ly,
                escape(&s.key)
            );
        }
    }

    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "ordering,seed,step,item,polysemy\n\
        file,0,0,frog,0.5\n\
        file,0,1,frog,0.4\n\
        file,0,2,frog,0.6\n";

    #[test]
    fn reads_series_grouped_by_ordering_seed_and_item() {
        let two = "ordering,seed,step,item,polysemy\n\
            a,0,0,x,1\n\
            b,0,0,x,2\n\
            a,0,1,x,3\n";
        let series = read_series(two.as_bytes()).unwrap();
        assert_eq!(series.len(), 2);
        assert_eq!(series[0].key, "a:0:x");
        assert_eq!(series[0].points, [(0.0, 1.0), (1.0, 3.0)]);
        assert_eq!(series[1].key, "b:0:x");
    }

    #[test]
    fn rejects_wrong_headers_and_empty_input() {
        let err = read_series("a,b\n1,2\n".as_bytes()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = read_series("ordering,seed,step,item,polysemy\n".as_bytes()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err =
            read_series("ordering,seed,step,item,polysemy\nf,0,zero,x,1\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn renders_one_polyline_per_series() {
        let series = read_series(SAMPLE.as_bytes()).unwrap();
        let svg = render_svg(&series, 640, 400);
        assert_eq!(svg.matches("<polyline").count(), 1);
        let points = svg
            .split("points=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap();
        assert_eq!(points.split(' ').count(), 3);
        assert!(svg.contains("polysemy"));
        assert!(svg.contains("</svg>"));
    }

    #[test]
    fn rendering_is_deterministic_and_handles_flat_series() {
        let flat = "ordering,seed,step,item,polysemy\n\
            file,0,0,x,2\n\
            file,0,1,x,2\n";
        let series = read_series(flat.as_bytes()).unwrap();
        let a = render_svg(&series, 300, 200);
        let b = render_svg(&series, 300, 200);
        assert_eq!(a, b);
        assert!(!a.contains("NaN"));
        assert!(!a.contains("inf"));
    }

    #[test]
    fn legend_labels_are_escaped() {
        let spicy = "ordering,seed,step,item,polysemy\n\
            a<b,0,0,x&y,1\n\
            a<b,0,1,x&y,2\n";
        let series = read_series(spicy.as_bytes()).unwrap();
        let svg = render_svg(&series, 300, 200);
        assert!(svg.contains("a&lt;b:0:x&amp;y"));
    }
}
