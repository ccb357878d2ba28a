use std::io::Write;
use std::path::Path;

use crate::CliResult;

pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            r => r?,
        },
    }
    Ok(())
}

/// Comma-joined CSV line with a trailing newline.
pub fn csv_line<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: ToString,
{
    let mut s = fields.into_iter().map(|f| f.to_string()).collect::<Vec<_>>().join(",");
    s.push('\n');
    s
}

pub fn sci(x: f64) -> String {
    format!("{x:.10e}")
}

/// Relative deviation `|x - reference| / |reference|`.
pub fn rel_dev(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs()
}

pub fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}
