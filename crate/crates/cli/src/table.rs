//! CSV encoding of sweep results.

use std::str::FromStr;

use sideband_core::analysis::{BipartitionFamily, WitnessTable};
use sideband_core::gaussian::Bipartition;

use crate::error::CliError;

pub const CSV_HEADER: &str = "sigma,bipartition,family,nu_min,log_neg,physical_min_nu";

/// Nine significant digits, shortest form: fixed notation for exponents in
/// `[-5, 9)`, scientific otherwise, trailing zeros removed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub sigma: f64,
    pub bipartition: Bipartition,
    pub family: BipartitionFamily,
    pub nu_min: f64,
    pub log_neg: f64,
    pub physical_min_nu: f64,
}

/// Header plus one row per (sigma, bipartition), in table order.
pub fn to_csv(tables: &[WitnessTable]) -> String {
    let mut out = String::with_capacity(64 * (1 + 31 * tables.len()));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for t in tables {
        let sigma = format_sig(t.sigma);
        let physical = format_sig(t.physical_min_nu);
        for e in &t.entries {
            out.push_str(&format!(
                "{sigma},{},{},{},{},{physical}\n",
                e.bipartition.label(),
                e.family,
                format_sig(e.nu_min),
                format_sig(e.log_neg),
            ));
        }
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == CSV_HEADER => {}
        Some(h) => return Err(CliError::Input(format!("unexpected CSV header `{h}`"))),
        None => return Err(CliError::Input("empty CSV".into())),
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let lineno = k + 2;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| CliError::Input(format!("CSV line {lineno}: {what}"));
        let fields: Vec<&str> = line.trim_end().split(',').collect();
        if fields.len() != 6 {
            return Err(bad(&format!("expected 6 fields, found {}", fields.len())));
        }
        let num = |i: usize, name: &str| {
            fields[i]
                .parse::<f64>()
                .map_err(|_| bad(&format!("{name} `{}` is not a number", fields[i])))
        };
        rows.push(CsvRow {
            sigma: num(0, "sigma")?,
            bipartition: Bipartition::parse_label(fields[1]).map_err(|e| bad(&e.to_string()))?,
            family: BipartitionFamily::from_str(fields[2]).map_err(|e| bad(&e.to_string()))?,
            nu_min: num(3, "nu_min")?,
            log_neg: num(4, "log_neg")?,
            physical_min_nu: num(5, "physical_min_nu")?,
        });
    }
    Ok(rows)
}
