//! Deterministic text rendering shared by the subcommands.

use serde::Serialize;

use crate::error::{invalid, Result};

/// Seventeen significant digits in scientific notation; round-trips exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| invalid(format!("JSON encoding failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Appends one CSV row terminated by `\n`.
pub fn push_row(buf: &mut String, fields: &[String]) {
    buf.push_str(&fields.join(","));
    buf.push('\n');
}
