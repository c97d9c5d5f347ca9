//! Deterministic table output: JSON lines or CSV, one record per Fourier
//! coefficient, sorted by (m, l2). Rationals are rendered exactly as
//! `num` or `num/den`; no floating point touches the output path.

use std::fmt::Write as _;

use elliptic_genus::rat::format_rat;
use elliptic_genus::QYSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Header metadata shared by all table kinds. Optional fields render as
/// `null` in JSON and are omitted from the CSV comment.
pub struct Header {
    pub kind: &'static str,
    pub n: Option<i64>,
    pub qmax: i64,
    pub weight: Option<i64>,
    pub index2: Option<i64>,
    pub route: Option<&'static str>,
    pub surface: Option<(String, i64, i64)>,
}

fn json_opt(v: Option<i64>) -> String {
    v.map_or_else(|| "null".to_string(), |x| x.to_string())
}

/// Render the full table into one String so errors can never leave a
/// partial table behind.
pub fn render(header: &Header, series: &QYSeries, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            write!(
                out,
                "{{\"kind\":\"{}\",\"n\":{},\"qmax\":{},\"weight\":{},\"index2\":{}",
                header.kind,
                json_opt(header.n),
                header.qmax,
                json_opt(header.weight),
                json_opt(header.index2),
            )
            .unwrap();
            if let Some(route) = header.route {
                write!(out, ",\"route\":\"{route}\"").unwrap();
            }
            if let Some((name, c1sq, c2)) = &header.surface {
                write!(out, ",\"surface\":\"{name}\",\"c1sq\":{c1sq},\"c2\":{c2}").unwrap();
            }
            out.push_str("}\n");
            for (m, l2, c) in series.terms() {
                writeln!(out, "{{\"m\":{m},\"l2\":{l2},\"c\":\"{}\"}}", format_rat(c)).unwrap();
            }
        }
        Format::Csv => {
            write!(
                out,
                "# kind={} n={} qmax={} weight={} index2={}",
                header.kind,
                json_opt(header.n),
                header.qmax,
                json_opt(header.weight),
                json_opt(header.index2),
            )
            .unwrap();
            if let Some(route) = header.route {
                write!(out, " route={route}").unwrap();
            }
            if let Some((name, c1sq, c2)) = &header.surface {
                write!(out, " surface={name} c1sq={c1sq} c2={c2}").unwrap();
            }
            out.push('\n');
            out.push_str("m,l2,c\n");
            for (m, l2, c) in series.terms() {
                writeln!(out, "{m},{l2},{}", format_rat(c)).unwrap();
            }
        }
    }
    out
}
