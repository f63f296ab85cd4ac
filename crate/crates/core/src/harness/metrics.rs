use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One CSV row: a single trial of one algorithm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub algorithm: String,
    pub n: usize,
    pub k: usize,
    pub c: usize,
    pub eps: f64,
    pub objective_value: f64,
    pub queries: u64,
    pub refresh_queries: u64,
    pub peak_stored: usize,
    pub passes: u32,
    pub wall_ms: f64,
}

pub const HEADER: [&str; 11] = [
    "algorithm",
    "n",
    "k",
    "c",
    "eps",
    "objective_value",
    "queries",
    "refresh_queries",
    "peak_stored",
    "passes",
    "wall_ms",
];

impl RunMetrics {
    fn record(&self) -> [String; 11] {
        [
            self.algorithm.clone(),
            self.n.to_string(),
            self.k.to_string(),
            self.c.to_string(),
            format_sig6(self.eps),
            format_sig6(self.objective_value),
            self.queries.to_string(),
            self.refresh_queries.to_string(),
            self.peak_stored.to_string(),
            self.passes.to_string(),
            format_sig6(self.wall_ms),
        ]
    }
}

/// Formats like C's `%g`: six significant digits, trailing zeros dropped,
/// exponent notation outside `[1e-4, 1e6)`.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!(
            "{}e{sign}{:02}",
            trim_zeros(mantissa.to_string()),
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Writes `rows` to `out`, preceded by the header when `header` is set.
pub fn write_csv<W: Write>(rows: &[RunMetrics], out: W, header: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if header {
        w.write_record(HEADER)?;
    }
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

/// Appends `rows` to the CSV at `path`, writing the header only if the file
/// is new or empty.
pub fn emit_csv(rows: &[RunMetrics], path: impl AsRef<Path>) -> Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let fresh = file.metadata()?.len() == 0;
    write_csv(rows, file, fresh)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<RunMetrics>> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r.deserialize().collect::<Result<Vec<RunMetrics>, _>>()?;
    Ok(rows)
}

/// Each row's value divided by the mean greedy value for the same
/// `(n, k)`, taken from the rows themselves. `None` where no greedy row
/// exists or the greedy value is zero.
pub fn normalize(rows: &[RunMetrics]) -> Vec<Option<f64>> {
    let mut greedy: HashMap<(usize, usize), Vec<f64>> = HashMap::new();
    for row in rows {
        if row.algorithm == "greedy" || row.algorithm == "greedy-lazy" {
            greedy
                .entry((row.n, row.k))
                .or_default()
                .push(row.objective_value);
        }
    }
    rows.iter()
        .map(|row| {
            let base = summarize(greedy.get(&(row.n, row.k))?).0;
            (base > 0.0).then(|| row.objective_value / base)
        })
        .collect()
}

/// Mean and population standard deviation; `(0, 0)` for no values.
pub fn summarize(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(alg: &str, value: f64) -> RunMetrics {
        RunMetrics {
            algorithm: alg.into(),
            n: 100,
            k: 5,
            c: 1,
            eps: 0.1,
            objective_value: value,
            queries: 101,
            refresh_queries: 0,
            peak_stored: 12,
            passes: 1,
            wall_ms: 0.25,
        }
    }

    #[test]
    fn sig6() {
        assert_eq!(format_sig6(0.1), "0.1");
        assert_eq!(format_sig6(3.0), "3");
        assert_eq!(format_sig6(1234.5678), "1234.57");
        assert_eq!(format_sig6(123456.7), "123457");
        assert_eq!(format_sig6(1234567.0), "1.23457e+06");
        assert_eq!(format_sig6(0.000123456789), "0.000123457");
        assert_eq!(format_sig6(0.0000123), "1.23e-05");
        assert_eq!(format_sig6(-2.5), "-2.5");
        assert_eq!(format_sig6(0.0), "0");
        assert_eq!(format_sig6(999999.5), "1e+06");
    }

    #[test]
    fn header_only_and_dedup() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        emit_csv(&[], &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);
        let rows: Vec<_> = (0..10).map(|i| row("ltl", i as f64)).collect();
        emit_csv(&rows, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 11);
        assert!(text.starts_with("algorithm,n,k,c,eps,objective_value,queries,"));
        emit_csv(&rows[..1], &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            text.lines().filter(|l| l.starts_with("algorithm")).count(),
            1
        );
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rt.csv");
        let rows = vec![
            row("qs", 1725.0),
            row("greedy", 2004.5),
            row("qs++", 0.000321),
        ];
        emit_csv(&rows, &path).unwrap();
        assert_eq!(read_csv(&path).unwrap(), rows);
    }

    #[test]
    fn normalization_uses_rows() {
        let rows = vec![row("greedy", 200.0), row("qs", 180.0), row("qs-br", 200.0)];
        assert_eq!(normalize(&rows), vec![Some(1.0), Some(0.9), Some(1.0)]);
        assert_eq!(normalize(&rows[1..]), vec![None, None]);
    }

    #[test]
    fn summary_stats() {
        assert_eq!(summarize(&[]), (0.0, 0.0));
        assert_eq!(summarize(&[2.0, 4.0]), (3.0, 1.0));
    }
}
