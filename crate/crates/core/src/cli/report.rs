use std::fmt::Write as _;
use std::io::Write as _;

use serde_json::{json, Value};

use crate::constants;
use crate::exact::format_complex;
use crate::homspace::HomError;
use crate::locverify::LocError;
use crate::qrep::RepError;
use crate::superalg::AlgebraError;

use super::Outcome;

pub struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    pub fn new(kind: &'static str, message: String) -> Self {
        Failure { kind, message }
    }
}

macro_rules! failure_from {
    ($($ty:ty => $kind:literal),* $(,)?) => {
        $(impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                Failure::new($kind, e.to_string())
            }
        })*
    };
}

failure_from! {
    AlgebraError => "superalg",
    RepError => "qrep",
    LocError => "locverify",
    HomError => "homspace",
}

fn envelope(command: &str, seed: Option<u64>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert("seed".into(), json!(seed));
    m.insert(
        "convention".into(),
        json!({ "kappa": format_complex(&constants::kappa()), "sign": constants::LOC_SIGN }),
    );
    m
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn write_stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

pub fn emit(as_json: bool, out: &Outcome) {
    if as_json {
        let mut m = envelope(out.command, out.seed);
        m.insert("passed".into(), json!(out.passed));
        if let Value::Object(body) = &out.body {
            for (k, v) in body {
                m.insert(k.clone(), v.clone());
            }
        }
        write_stdout(&format!("{}\n", serde_json::to_string_pretty(&Value::Object(m)).expect("serializable")));
        return;
    }
    let width = out.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut text = format!("superloc {} ({})\n", out.command, env!("CARGO_PKG_VERSION"));
    if let Some(seed) = out.seed {
        let _ = writeln!(text, "{:width$}  {seed}", "seed");
    }
    for (k, v) in &out.rows {
        let _ = writeln!(text, "{k:width$}  {v}");
    }
    let _ = writeln!(text, "{:width$}  {}", "status", if out.passed { "ok" } else { "FAILED" });
    write_stdout(&text);
}

pub fn emit_error(f: &Failure) {
    eprintln!("error: {}", f.message);
    let body = json!({ "error": { "module": f.kind, "message": f.message } });
    write_stdout(&format!("{}\n", serde_json::to_string_pretty(&body).expect("serializable")));
}
