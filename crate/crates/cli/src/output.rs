//! CSV and JSON rendering of output rows.
//!
//! Every number is printed with 12 significant digits in the style of C's
//! `%.12g`; JSON carries the same rounded values, so both formats hold
//! identical numeric content.

use std::io::Write;

use serde::Serialize;

use crate::rows::OutputRow;

pub const CSV_HEADER: [&str; 9] = [
    "L",
    "h",
    "alpha",
    "scaled_length",
    "s_exact",
    "s_asymptotic",
    "s_small_block",
    "residual",
    "regime",
];

const SIGNIFICANT: usize = 12;

/// `%.12g`: fixed notation for decimal exponents in `[-4, 12)`, scientific
/// otherwise, trailing zeros removed.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..SIGNIFICANT as i32).contains(&exp) {
        let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), sign, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// The value a consumer of either format reads back.
pub fn rounded(x: f64) -> f64 {
    format_number(x).parse().unwrap_or(x)
}

fn opt(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

fn csv_record(row: &OutputRow) -> [String; 9] {
    [
        row.length.to_string(),
        format_number(row.h),
        format_number(row.alpha),
        if row.scaled_length.is_nan() {
            String::new()
        } else {
            format_number(row.scaled_length)
        },
        opt(row.s_exact),
        opt(row.s_asymptotic),
        opt(row.s_small_block),
        opt(row.residual),
        row.regime.clone(),
    ]
}

pub fn write_csv<W: Write>(rows: &[OutputRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(csv_record(row))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonRow<'a> {
    #[serde(rename = "L")]
    length: usize,
    h: f64,
    alpha: f64,
    scaled_length: Option<f64>,
    s_exact: Option<f64>,
    s_asymptotic: Option<f64>,
    s_small_block: Option<f64>,
    residual: Option<f64>,
    regime: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

impl<'a> From<&'a OutputRow> for JsonRow<'a> {
    fn from(row: &'a OutputRow) -> Self {
        let r = |x: Option<f64>| x.filter(|v| v.is_finite()).map(rounded);
        JsonRow {
            length: row.length,
            h: rounded(row.h),
            alpha: rounded(row.alpha),
            scaled_length: r(Some(row.scaled_length)),
            s_exact: r(row.s_exact),
            s_asymptotic: r(row.s_asymptotic),
            s_small_block: r(row.s_small_block),
            residual: r(row.residual),
            regime: &row.regime,
            error: row.error.as_deref(),
        }
    }
}

pub fn write_json<W: Write>(rows: &[OutputRow], mut out: W) -> std::io::Result<()> {
    let json: Vec<JsonRow> = rows.iter().map(JsonRow::from).collect();
    serde_json::to_writer_pretty(&mut out, &json)?;
    writeln!(out)
}
