//! Plain-text artifact formats: CSV tables, COO matrix dumps and schedule
//! dumps.

use std::fmt::Write as _;
use std::io;

use sweepvor_core::linalg::Coo;
use sweepvor_core::Schedule;

/// Formats `v` with 17 significant digits.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

/// A `serde_json` formatter that writes every float with 17 significant
/// digits.
#[derive(Clone, Copy, Debug, Default)]
pub struct SigDigits;

impl serde_json::ser::Formatter for SigDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(sig17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Comment lines that open every CSV artifact.
pub fn config_header(config_json: &str, config_hash: &str) -> String {
    format!("# config_sha256={config_hash}\n# config={config_json}\n")
}

/// Schedule dump with header `rank,cell_id,delta`.
pub fn schedule_csv(schedule: &Schedule) -> String {
    let mut s = String::from("rank,cell_id,delta\n");
    for (r, (&id, &delta)) in schedule.order.iter().zip(&schedule.keys).enumerate() {
        let _ = writeln!(s, "{r},{id},{}", sig17(delta));
    }
    s
}

/// One line per stored entry: `row col value`, or `row col` for a pattern
/// dump. Exact zeros are skipped.
pub fn coo_text(coo: &Coo, pattern: bool) -> String {
    let mut s = String::new();
    for &(r, c, v) in &coo.entries {
        if v == 0.0 {
            continue;
        }
        if pattern {
            let _ = writeln!(s, "{r} {c}");
        } else {
            let _ = writeln!(s, "{r} {c} {}", sig17(v));
        }
    }
    s
}

/// Parses a COO dump back into `(row, col, value)` triples; pattern dumps
/// yield value 1.
pub fn parse_coo(text: &str) -> Result<Vec<(usize, usize, f64)>, String> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(n, line)| {
            let mut it = line.split_whitespace();
            let mut field = |name: &str| it.next().ok_or_else(|| format!("line {}: missing {name}", n + 1));
            let r = field("row")?.parse::<usize>().map_err(|e| format!("line {}: {e}", n + 1))?;
            let c = field("col")?.parse::<usize>().map_err(|e| format!("line {}: {e}", n + 1))?;
            let v = match it.next() {
                Some(v) => v.parse::<f64>().map_err(|e| format!("line {}: {e}", n + 1))?,
                None => 1.0,
            };
            Ok((r, c, v))
        })
        .collect()
}

/// A table with a header row, written as CSV. Missing trailing values in a
/// column are left empty.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Serialises with the given comment header prepended.
    pub fn to_csv(&self, header: &str) -> String {
        let mut s = String::from(header);
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

/// Data rows of a CSV artifact, without comment lines.
pub fn data_lines(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

/// Iteration-log table: header `iterates,<label>...`, one row per
/// iteration, one column per run.
pub fn iteration_table(labels: &[String], columns: &[Vec<f64>]) -> Table {
    let mut t = Table::new(std::iter::once("iterates".to_string()).chain(labels.iter().cloned()));
    let n = columns.iter().map(Vec::len).max().unwrap_or(0);
    for i in 0..n {
        let mut row = vec![(i + 1).to_string()];
        row.extend(columns.iter().map(|c| c.get(i).map(|v| sig17(*v)).unwrap_or_default()));
        t.push(row);
    }
    t
}
