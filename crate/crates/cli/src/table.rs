//! CSV tables with a metadata comment line, and a minimal SVG line plot.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Num(v) => Some(*v),
            _ => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format_number(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

// JSON carries the same rounded number the CSV prints.
impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_u64(*v),
            Cell::Num(v) => s.serialize_f64(format_number(*v).parse().unwrap_or(*v)),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Empty => s.serialize_none(),
        }
    }
}

/// Fixed 12-digit decimals, so output is byte-identical across runs.
pub fn format_number(v: f64) -> String {
    let s = format!("{v:.12}");
    if s == "-0.000000000000" {
        "0.000000000000".into()
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub metadata: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# {}", self.metadata).unwrap();
        writeln!(out, "{}", self.header.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    /// Numeric values of column `j`, `None` for empty cells.
    pub fn column(&self, j: usize) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.get(j).and_then(Cell::as_f64)).collect()
    }

    /// One polyline per column against the first column, on linear axes.
    pub fn to_svg(&self) -> String {
        const W: f64 = 640.0;
        const H: f64 = 400.0;
        const PAD: f64 = 48.0;
        const COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
        let xs = self.column(0);
        let series: Vec<Vec<Option<f64>>> = (1..self.header.len()).map(|j| self.column(j)).collect();
        let finite = |v: &[Option<f64>]| v.iter().flatten().copied().collect::<Vec<f64>>();
        let all_x = finite(&xs);
        let all_y: Vec<f64> = series.iter().flat_map(|s| finite(s)).collect();
        let range = |v: &[f64]| {
            let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if !lo.is_finite() {
                (0.0, 1.0)
            } else if hi > lo {
                (lo, hi)
            } else {
                (lo - 0.5, hi + 0.5)
            }
        };
        let (x0, x1) = range(&all_x);
        let (y0, y1) = range(&all_y);
        let px = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
        let py = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);

        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        )
        .unwrap();
        writeln!(out, "<!-- {} -->", self.metadata.replace("--", "- -")).unwrap();
        writeln!(
            out,
            r#"<path d="M{PAD} {PAD} V{} H{}" fill="none" stroke="black"/>"#,
            H - PAD,
            W - PAD
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{PAD}" y="{}" font-size="11">{}</text><text x="{}" y="{}" font-size="11" text-anchor="end">{}</text>"#,
            H - PAD + 16.0,
            format_number(x0),
            W - PAD,
            H - PAD + 16.0,
            format_number(x1)
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="4" y="{}" font-size="11">{}</text><text x="4" y="{PAD}" font-size="11">{}</text>"#,
            H - PAD,
            format_number(y0),
            format_number(y1)
        )
        .unwrap();
        for (k, s) in series.iter().enumerate() {
            let colour = COLOURS[k % COLOURS.len()];
            let points: Vec<String> = xs
                .iter()
                .zip(s)
                .filter_map(|(x, y)| Some(format!("{:.2},{:.2}", px((*x)?), py((*y)?))))
                .collect();
            writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{colour}"/>"#,
                points.join(" ")
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="11" fill="{colour}">{}</text>"#,
                W - PAD - 120.0,
                PAD + 14.0 * k as f64,
                self.header[k + 1]
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        Table {
            metadata: "test".into(),
            header: vec!["L".into(), "a".into()],
            rows: vec![
                vec![Cell::Int(2), Cell::Num(0.5)],
                vec![Cell::Int(4), Cell::Empty],
                vec![Cell::Int(6), Cell::Num(-0.0)],
            ],
        }
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        assert_eq!(
            csv,
            "# test\nL,a\n2,0.500000000000\n4,\n6,0.000000000000\n"
        );
    }

    #[test]
    fn svg_has_one_polyline_per_series() {
        let svg = sample().to_svg();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.starts_with("<svg"));
    }
}
