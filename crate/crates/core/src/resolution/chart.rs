use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ResolutionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartClass {
    pub s: u32,
    pub t: u32,
    pub index: u32,
}

impl ChartClass {
    pub fn stem(&self) -> i64 {
        self.t as i64 - self.s as i64
    }
}

/// Ext classes in the window `s ≤ max_s`, `t ≤ max_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtChart {
    pub prime: u32,
    pub max_s: u32,
    pub max_t: u32,
    /// Sorted by `(s, t, index)`.
    pub classes: Vec<ChartClass>,
}

/// Serialized form of an [`ExtChart`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDocument {
    pub schema: u32,
    pub prime: u32,
    pub max_s: u32,
    pub max_t: u32,
    pub classes: Vec<ChartClass>,
}

impl ExtChart {
    pub fn dim(&self, s: u32, t: u32) -> usize {
        self.classes.iter().filter(|c| c.s == s && c.t == t).count()
    }

    pub fn dims(&self) -> ExtDims {
        let mut rows = vec![vec![0; self.max_t as usize + 1]; self.max_s as usize + 1];
        for c in &self.classes {
            if c.s <= self.max_s && c.t <= self.max_t {
                rows[c.s as usize][c.t as usize] += 1;
            }
        }
        ExtDims::from_rows(self.max_s, self.max_t, rows)
    }

    pub fn to_document(&self) -> ChartDocument {
        ChartDocument {
            schema: 1,
            prime: self.prime,
            max_s: self.max_s,
            max_t: self.max_t,
            classes: self.classes.clone(),
        }
    }

    pub fn from_document(doc: ChartDocument) -> Result<Self, ResolutionError> {
        if doc.schema != 1 {
            return Err(ResolutionError::Document(format!(
                "unsupported schema {}",
                doc.schema
            )));
        }
        if !doc.classes.windows(2).all(|w| w[0] < w[1]) {
            return Err(ResolutionError::Document(
                "classes must be sorted by (s, t, index) without duplicates".into(),
            ));
        }
        Ok(ExtChart {
            prime: doc.prime,
            max_s: doc.max_s,
            max_t: doc.max_t,
            classes: doc.classes,
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_document()).expect("chart serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, ResolutionError> {
        let doc: ChartDocument =
            serde_json::from_str(text).map_err(|e| ResolutionError::Document(e.to_string()))?;
        ExtChart::from_document(doc)
    }

    /// Class counts per `(stem, s)` cell.
    fn cells(&self) -> BTreeMap<(i64, u32), usize> {
        let mut cells = BTreeMap::new();
        for c in &self.classes {
            *cells.entry((c.stem(), c.s)).or_insert(0) += 1;
        }
        cells
    }

    fn max_stem(&self) -> i64 {
        self.classes
            .iter()
            .map(ChartClass::stem)
            .max()
            .unwrap_or(0)
            .max(self.max_t as i64)
    }
}

/// Dimension table indexed by `(s, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtDims {
    pub max_s: u32,
    pub max_t: u32,
    rows: Vec<Vec<usize>>,
}

impl ExtDims {
    pub(crate) fn from_rows(max_s: u32, max_t: u32, rows: Vec<Vec<usize>>) -> Self {
        ExtDims { max_s, max_t, rows }
    }

    pub fn get(&self, s: u32, t: u32) -> usize {
        self.rows
            .get(s as usize)
            .and_then(|r| r.get(t as usize))
            .copied()
            .unwrap_or(0)
    }

    /// `(s, t, self, other)` for each disagreement on the common window.
    pub fn mismatches(&self, other: &ExtDims) -> Vec<(u32, u32, usize, usize)> {
        let mut out = Vec::new();
        for s in 0..=self.max_s.min(other.max_s) {
            for t in 0..=self.max_t.min(other.max_t) {
                let (a, b) = (self.get(s, t), other.get(s, t));
                if a != b {
                    out.push((s, t, a, b));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartFormat {
    Ascii,
    Svg,
    Json,
}

impl FromStr for ChartFormat {
    type Err = ResolutionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ascii" => Ok(ChartFormat::Ascii),
            "svg" => Ok(ChartFormat::Svg),
            "json" => Ok(ChartFormat::Json),
            other => Err(ResolutionError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn chart_render(chart: &ExtChart, format: ChartFormat) -> String {
    match format {
        ChartFormat::Ascii => render_ascii(chart),
        ChartFormat::Svg => render_svg(chart),
        ChartFormat::Json => chart.to_json(),
    }
}

/// Rows from `s = max_s` down to 0, one column per stem. A cell shows `.`
/// for one class, the count for 2 to 9 and `+` beyond.
fn render_ascii(chart: &ExtChart) -> String {
    let cells = chart.cells();
    let width = chart.max_stem() as usize + 1;
    let label = chart.max_s.to_string().len();
    let mut out = String::new();
    for s in (0..=chart.max_s).rev() {
        let mut row: String = (0..width)
            .map(|x| match cells.get(&(x as i64, s)).copied().unwrap_or(0) {
                0 => ' ',
                1 => '.',
                n @ 2..=9 => char::from_digit(n as u32, 10).unwrap(),
                _ => '+',
            })
            .collect();
        row.truncate(row.trim_end().len());
        let _ = writeln!(out, "{s:>label$} |{row}");
    }
    let _ = writeln!(out, "{:>label$} +{}", "", "-".repeat(width));
    let mut ticks = String::new();
    let mut x = 0;
    while x < width {
        let tick = x.to_string();
        let _ = write!(ticks, "{tick:<5}");
        x += 5;
    }
    let _ = writeln!(out, "{:>label$}  {}", "", ticks.trim_end());
    out
}

const CELL: usize = 16;
const MARGIN: usize = 24;

fn render_svg(chart: &ExtChart) -> String {
    let cells = chart.cells();
    let cols = chart.max_stem() as usize + 1;
    let rows = chart.max_s as usize + 1;
    let (w, h) = (cols * CELL + 2 * MARGIN, rows * CELL + 2 * MARGIN);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(out, r##"<g stroke="#dddddd" stroke-width="1">"##);
    for i in 0..=cols {
        let x = MARGIN + i * CELL;
        let _ = writeln!(
            out,
            r#"<line x1="{x}" y1="{MARGIN}" x2="{x}" y2="{}"/>"#,
            h - MARGIN
        );
    }
    for j in 0..=rows {
        let y = MARGIN + j * CELL;
        let _ = writeln!(
            out,
            r#"<line x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}"/>"#,
            w - MARGIN
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<g font-family="monospace" font-size="9" fill="black">"#
    );
    for i in (0..cols).step_by(5) {
        let x = MARGIN + i * CELL + CELL / 2;
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{}" text-anchor="middle">{i}</text>"#,
            h - MARGIN + 12
        );
    }
    for j in (0..rows).step_by(5) {
        let y = h - MARGIN - j * CELL - CELL / 2 + 3;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{y}" text-anchor="end">{j}</text>"#,
            MARGIN - 4
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="black">"#);
    for (&(stem, s), &n) in &cells {
        if stem < 0 {
            continue;
        }
        let cx = (MARGIN + stem as usize * CELL) as f64 + CELL as f64 / 2.0;
        let cy = (h - MARGIN - s as usize * CELL) as f64 - CELL as f64 / 2.0;
        for k in 0..n {
            let dx = (k as f64 - (n as f64 - 1.0) / 2.0) * 4.0;
            let _ = writeln!(
                out,
                r#"<circle class="ext" cx="{:.1}" cy="{cy:.1}" r="2.5" data-s="{s}" data-stem="{stem}"/>"#,
                cx + dx
            );
        }
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(n: u32) -> ExtChart {
        ExtChart {
            prime: 2,
            max_s: n,
            max_t: n,
            classes: (0..=n).map(|s| ChartClass { s, t: s, index: 0 }).collect(),
        }
    }

    #[test]
    fn empty_chart_is_a_bare_grid() {
        let c = ExtChart {
            prime: 2,
            max_s: 2,
            max_t: 3,
            classes: vec![],
        };
        let text = chart_render(&c, ChartFormat::Ascii);
        assert_eq!(text, "2 |\n1 |\n0 |\n  +----\n   0\n");
        assert!(!chart_render(&c, ChartFormat::Svg).contains("<circle"));
    }

    #[test]
    fn tower_is_a_column_of_dots() {
        let text = chart_render(&tower(4), ChartFormat::Ascii);
        let rows: Vec<&str> = text.lines().take(5).collect();
        assert_eq!(rows, vec!["4 |.", "3 |.", "2 |.", "1 |.", "0 |."]);
        assert_eq!(
            chart_render(&tower(4), ChartFormat::Svg)
                .matches("<circle")
                .count(),
            5
        );
    }

    #[test]
    fn counts_shown_as_digits() {
        let mut c = tower(1);
        c.classes.push(ChartClass {
            s: 1,
            t: 1,
            index: 1,
        });
        c.classes.sort();
        assert!(chart_render(&c, ChartFormat::Ascii).starts_with("1 |2\n"));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let c = tower(3);
        let a = chart_render(&c, ChartFormat::Json);
        let b = chart_render(&ExtChart::from_json(&a).unwrap(), ChartFormat::Json);
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_unsorted_and_unknown_format() {
        let mut doc = tower(2).to_document();
        doc.classes.reverse();
        assert!(ExtChart::from_document(doc).is_err());
        assert_eq!(
            "png".parse::<ChartFormat>(),
            Err(ResolutionError::UnknownFormat("png".into()))
        );
    }
}
