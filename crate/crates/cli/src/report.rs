//! Machine-readable run reports.
//!
//! One JSON artifact per run with a stable schema across commands:
//!
//! ```text
//! { "schema": 1, "command": ..., "config": {...},
//!   "rows": [...] | "verdicts": [...], "global_pass": ..., "tolerances": {...} }
//! ```
//!
//! All numbers are printed as `%.12e`; CSV mirrors the rows or verdicts
//! only. Output is UTF-8 with LF line endings and is byte-reproducible
//! for identical configs.

use std::io::Write;

/// C-style `%.12e` formatting (two-digit signed exponent).
pub fn fmt_e(x: f64) -> String {
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("e-format always has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// One table cell: a number, a label, or absent.
#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Text(String),
    Missing,
}

impl Cell {
    fn json(&self) -> String {
        match self {
            Cell::Num(x) => fmt_e(*x),
            Cell::Text(s) => format!("\"{}\"", json_escape(s)),
            Cell::Missing => "null".into(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt_e(*x),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }
}

/// One verification verdict.
#[derive(Debug, Clone)]
pub struct VerdictRow {
    /// Grid location (volume fraction, volume, or radius).
    pub beta: f64,
    pub verdict: &'static str,
    pub residual: Option<f64>,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub enum Payload {
    Table {
        header: Vec<&'static str>,
        rows: Vec<Vec<Cell>>,
    },
    Verdicts(Vec<VerdictRow>),
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    /// Ordered key-value echo of the run configuration.
    pub config: Vec<(String, String)>,
    pub payload: Payload,
    pub tolerances: Vec<(String, f64)>,
    pub global_pass: bool,
}

impl Report {
    pub fn write_json(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "{{")?;
        writeln!(w, "  \"schema\": 1,")?;
        writeln!(w, "  \"command\": \"{}\",", json_escape(self.command))?;
        writeln!(w, "  \"config\": {{")?;
        for (i, (k, v)) in self.config.iter().enumerate() {
            let comma = if i + 1 < self.config.len() { "," } else { "" };
            writeln!(
                w,
                "    \"{}\": \"{}\"{comma}",
                json_escape(k),
                json_escape(v)
            )?;
        }
        writeln!(w, "  }},")?;
        match &self.payload {
            Payload::Table { header, rows } => {
                writeln!(w, "  \"rows\": [")?;
                for (i, row) in rows.iter().enumerate() {
                    let fields: Vec<String> = header
                        .iter()
                        .zip(row)
                        .map(|(h, c)| format!("\"{}\": {}", h, c.json()))
                        .collect();
                    let comma = if i + 1 < rows.len() { "," } else { "" };
                    writeln!(w, "    {{{}}}{comma}", fields.join(", "))?;
                }
                writeln!(w, "  ],")?;
            }
            Payload::Verdicts(verdicts) => {
                writeln!(w, "  \"verdicts\": [")?;
                for (i, v) in verdicts.iter().enumerate() {
                    let mut fields = vec![
                        format!("\"beta\": {}", fmt_e(v.beta)),
                        format!("\"verdict\": \"{}\"", v.verdict),
                    ];
                    if let Some(r) = v.residual {
                        fields.push(format!("\"residual\": {}", fmt_e(r)));
                    }
                    if let Some(wit) = &v.witness {
                        fields.push(format!("\"witness\": \"{}\"", json_escape(wit)));
                    }
                    let comma = if i + 1 < verdicts.len() { "," } else { "" };
                    writeln!(w, "    {{{}}}{comma}", fields.join(", "))?;
                }
                writeln!(w, "  ],")?;
            }
        }
        writeln!(w, "  \"global_pass\": {},", self.global_pass)?;
        writeln!(w, "  \"tolerances\": {{")?;
        for (i, (k, v)) in self.tolerances.iter().enumerate() {
            let comma = if i + 1 < self.tolerances.len() {
                ","
            } else {
                ""
            };
            writeln!(w, "    \"{}\": {}{comma}", json_escape(k), fmt_e(*v))?;
        }
        writeln!(w, "  }}")?;
        writeln!(w, "}}")?;
        Ok(())
    }

    pub fn write_csv(&self, w: &mut impl Write) -> std::io::Result<()> {
        match &self.payload {
            Payload::Table { header, rows } => {
                writeln!(w, "{}", header.join(","))?;
                for row in rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(w, "{}", cells.join(","))?;
                }
            }
            Payload::Verdicts(verdicts) => {
                writeln!(w, "beta,verdict,residual,witness")?;
                for v in verdicts {
                    writeln!(
                        w,
                        "{},{},{},{}",
                        fmt_e(v.beta),
                        v.verdict,
                        v.residual.map(fmt_e).unwrap_or_default(),
                        v.witness.clone().unwrap_or_default()
                    )?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_style_exponent_formatting() {
        assert_eq!(fmt_e(2.0), "2.000000000000e+00");
        assert_eq!(fmt_e(-0.00123456), "-1.234560000000e-03");
        assert_eq!(fmt_e(std::f64::consts::TAU), "6.283185307180e+00");
        assert_eq!(fmt_e(1e100), "1.000000000000e+100");
        assert_eq!(fmt_e(0.0), "0.000000000000e+00");
    }

    #[test]
    fn json_is_schema_stable() {
        let report = Report {
            command: "verify",
            config: vec![("suite".into(), "levy-gromov".into())],
            payload: Payload::Verdicts(vec![VerdictRow {
                beta: 0.5,
                verdict: "pass",
                residual: Some(0.0),
                witness: None,
            }]),
            tolerances: vec![("slack".into(), 1e-6)],
            global_pass: true,
        };
        let mut buf = Vec::new();
        report.write_json(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"schema\": 1"));
        assert!(text.contains("\"global_pass\": true"));
        assert!(text.contains("5.000000000000e-01"));
        assert!(!text.contains('\r'));
    }
}
