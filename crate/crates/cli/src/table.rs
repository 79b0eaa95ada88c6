use std::io::Write;
use std::path::Path;

use crate::error::Result;

/// One CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    /// Value not defined for this row.
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x)
    }
}

/// Shortest decimal form that parses back to the same `f64`.
pub fn format_number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Int(n) => Some(*n as f64),
            _ => None,
        }
    }
}

/// Output of one command: a header and rows of equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Plot hints for the gnuplot script.
    pub plot: PlotHints,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlotHints {
    /// One-based CSV column used as abscissa.
    pub x_column: usize,
    pub x_label: String,
    pub y_label: String,
    pub log_y: bool,
}

impl Table {
    pub fn new(header: Vec<String>, plot: PlotHints) -> Self {
        Table {
            header,
            rows: Vec::new(),
            plot,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Values of a column, `None` where the field is empty.
    pub fn values(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.column(name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64()).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Gnuplot script plotting every numeric column except the abscissa and
    /// standard errors against the abscissa of `csv_path`.
    pub fn gnuplot_script(&self, csv_path: &Path) -> String {
        let name = csv_path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        let mut s = String::new();
        s.push_str("set datafile separator ','\n");
        s.push_str(&format!("set xlabel '{}'\n", self.plot.x_label));
        s.push_str(&format!("set ylabel '{}'\n", self.plot.y_label));
        if self.plot.log_y {
            s.push_str("set logscale y\nset format y '10^{%L}'\n");
        }
        s.push_str("set key outside right\nset grid\n");
        let series: Vec<String> = self
            .header
            .iter()
            .enumerate()
            .filter(|(i, h)| {
                i + 1 != self.plot.x_column && !h.ends_with("_se") && self.plot_series(h)
            })
            .map(|(i, h)| {
                let style = if h.starts_with("mc_") { "points" } else { "lines" };
                format!("'{name}' using {}:{} with {style} title '{}'", self.plot.x_column, i + 1, h.replace('_', " "))
            })
            .collect();
        s.push_str(&format!("plot {}\n", series.join(", \\\n     ")));
        s
    }

    fn plot_series(&self, header: &str) -> bool {
        !matches!(header, "delta" | "energy") && self.rows.iter().any(|r| {
            self.column(header).is_some_and(|i| matches!(r[i], Cell::Num(_)))
        })
    }
}
