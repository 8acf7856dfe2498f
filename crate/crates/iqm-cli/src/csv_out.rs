//! CSV emission with "#" provenance lines.

use iqm_lab::{ScenarioResult, Value};
use sha2::{Digest, Sha256};

use crate::config::ScenarioConfig;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g` formatting: 12 significant digits, trailing zeros removed,
/// exponent form outside [1e-4, 1e12).
pub fn format_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if exp < -4 || exp >= p as i32 {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Real(x) => format_g(*x),
        Value::Int(i) => i.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Text(s) => s.clone(),
        Value::Missing => String::new(),
    }
}

/// SHA-256 of the canonical JSON form of the effective configuration,
/// output paths excluded.
pub fn config_hash(cfg: &ScenarioConfig) -> String {
    let canonical = serde_json::to_vec(&cfg.without_outputs()).expect("configuration serializes");
    hex::encode(Sha256::digest(&canonical))
}

pub fn render(result: &ScenarioResult, cfg: &ScenarioConfig) -> String {
    let mut head = String::new();
    head.push_str(&format!("# iqm {}\n", env!("CARGO_PKG_VERSION")));
    head.push_str(&format!("# scenario {}\n", result.scenario));
    head.push_str(&format!("# config-sha256 {}\n", config_hash(cfg)));
    head.push_str(&format!("# seed {}\n", cfg.seed()));
    for (k, v) in &result.verdicts {
        head.push_str(&format!("# verdict {k} {v}\n"));
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&result.columns).expect("in-memory write");
    for row in &result.rows {
        w.write_record(row.iter().map(cell))
            .expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 cells");
    head + &body
}
