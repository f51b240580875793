//! Text encodings shared by reports: JSON scalars, `%.17g`-style CSV floats,
//! and the short human format.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_rational::BigRational;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Scalar};

/// Significant digits used in CSV and other full-precision text output.
pub const CSV_DIGITS: usize = 17;
/// Significant digits used in human-readable output.
pub const HUMAN_DIGITS: usize = 6;

/// Output format selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Human,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "human" => Ok(Format::Human),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// Formats like C's `%.{sig}g`: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros trimmed.
pub fn format_g(v: f64, sig: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        let mut out = trim_zeros(mantissa).to_string();
        let _ = write!(out, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
        out
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Scalars that can appear in emitted reports.
pub trait Emit: Scalar {
    fn to_json_value(&self) -> Value;
    fn from_json_value(v: &Value) -> Result<Self>;
    /// Full-precision text (17 significant digits for floats).
    fn to_text(&self) -> String;
    /// Short text (6 significant digits for floats).
    fn to_human(&self) -> String;
}

impl Emit for f64 {
    fn to_json_value(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json_value(v: &Value) -> Result<Self> {
        v.as_f64()
            .ok_or_else(|| Error::Parse(format!("expected a number, got {v}")))
    }

    fn to_text(&self) -> String {
        format_g(*self, CSV_DIGITS)
    }

    fn to_human(&self) -> String {
        format_g(*self, HUMAN_DIGITS)
    }
}

impl Emit for BigRational {
    fn to_json_value(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json_value(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(BigRational::from_i64(n.as_i64().unwrap())),
            other => Err(Error::Parse(format!("expected a rational string, got {other}"))),
        }
    }

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn to_human(&self) -> String {
        if self.is_integer() {
            self.to_string()
        } else {
            format!("{} (~{})", self, format_g(self.to_f64(), HUMAN_DIGITS))
        }
    }
}

/// Joins CSV rows with `'\n'` endings (including a final newline).
pub fn csv_string(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Writes `text` to `path`, creating parent directories.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, text)?;
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_g_matches_printf() {
        assert_eq!(format_g(0.5, 17), "0.5");
        assert_eq!(format_g(0.1, 17), "0.10000000000000001");
        assert_eq!(format_g(1.0 / 3.0, 6), "0.333333");
        assert_eq!(format_g(18.0, 17), "18");
        assert_eq!(format_g(-10.0, 17), "-10");
        assert_eq!(format_g(1.5e-7, 6), "1.5e-07");
        assert_eq!(format_g(2.5e20, 17), "2.5e+20");
        assert_eq!(format_g(123456.7, 6), "123457");
        assert_eq!(format_g(1234567.0, 6), "1.23457e+06");
        assert_eq!(format_g(0.0001, 6), "0.0001");
    }

    #[test]
    fn text_round_trips() {
        for v in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, 6.02e23, -4.5e-9] {
            let s = v.to_text();
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn json_scalars_round_trip() {
        let r = BigRational::new(14.into(), 9.into());
        assert_eq!(r.to_json_value(), Value::String("14/9".into()));
        assert_eq!(BigRational::from_json_value(&r.to_json_value()).unwrap(), r);
        let f = 14.0 / 9.0;
        assert_eq!(f64::from_json_value(&f.to_json_value()).unwrap(), f);
        assert!(f64::from_json_value(&Value::String("x".into())).is_err());
    }

    #[test]
    fn csv_uses_newlines() {
        let s = csv_string(
            &["y".into(), "p1".into()],
            &[vec!["0".into(), "0.5".into()]],
        )
        .unwrap();
        assert_eq!(s, "y,p1\n0,0.5\n");
    }
}
