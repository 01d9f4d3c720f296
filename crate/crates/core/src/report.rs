//! Run artifacts: a CSV series and a JSON summary echoing the config.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::config::{CommandName, ExperimentConfig};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: CommandName,
    pub config: ExperimentConfig,
    pub header: Vec<String>,
    /// Preformatted CSV cells.
    pub rows: Vec<Vec<String>>,
    pub results: Value,
    /// Human-readable lines for stdout.
    pub lines: Vec<String>,
    /// Warnings for stderr.
    pub notices: Vec<String>,
}

impl Report {
    pub fn new(command: CommandName, config: &ExperimentConfig, header: &[&str]) -> Self {
        Report {
            command,
            config: config.clone(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            results: Value::Null,
            lines: Vec::new(),
            notices: Vec::new(),
        }
    }

    pub fn summary(&self) -> Value {
        json!({
            "command": self.command.as_str(),
            "config": self.config,
            "results": self.results,
        })
    }

    pub fn csv_string(&self) -> Result<String> {
        let io = |e: csv::Error| Error::Io(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

/// Full double precision, 17 significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Shortest round-trip form, switching to exponent notation outside `[1e-4, 1e16)`.
pub fn fmt_real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e16).contains(&a) {
        format!("{}", x + 0.0)
    } else {
        format!("{x:e}")
    }
}

/// `a+bi` with shortest round-trip components.
pub fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() && z.im != 0.0 { '-' } else { '+' };
    format!("{}{}{}i", fmt_real(z.re), sign, fmt_real(z.im.abs()))
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im, "abs": z.norm() })
}

fn with_ext(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// Writes `<base>.csv` and `<base>.json`; returns both paths.
pub fn emit_report(report: &Report, base: &Path) -> Result<(PathBuf, PathBuf)> {
    let io = |p: &Path, e: std::io::Error| Error::Io(format!("{}: {e}", p.display()));
    if let Some(dir) = base.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    }
    let csv_path = with_ext(base, "csv");
    let json_path = with_ext(base, "json");
    fs::write(&csv_path, report.csv_string()?).map_err(|e| io(&csv_path, e))?;
    let mut text = serde_json::to_string_pretty(&report.summary()).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    fs::write(&json_path, text).map_err(|e| io(&json_path, e))?;
    Ok((csv_path, json_path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_complex(Complex64::new(1.0, 0.0)), "1+0i");
        assert_eq!(fmt_complex(Complex64::new(-0.5, -0.25)), "-0.5-0.25i");
        assert_eq!(fmt_complex(Complex64::new(-0.0, -0.0)), "0+0i");
        assert_eq!(fmt_complex(Complex64::new(8.5e-17, 0.25)), "8.5e-17+0.25i");
        assert_eq!(sci(0.1), "1.0000000000000001e-1");
        assert_eq!(sci(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn header_only_csv() {
        let r = Report::new(CommandName::Weyl, &ExperimentConfig::default(), &["N", "re", "im", "abs_err"]);
        assert_eq!(r.csv_string().unwrap(), "N,re,im,abs_err\n");
    }
}
