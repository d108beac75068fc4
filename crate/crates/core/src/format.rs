//! Number formatting for machine-readable output.
//!
//! Values are rounded to 12 significant digits and then printed with the
//! shortest decimal that round-trips, so `0.1 + 0.2` prints as `0.3` and
//! output is stable across platforms.

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds `x` to 12 significant digits. Negative zero becomes zero.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let text = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let rounded: f64 = text.parse().expect("formatted float parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

pub fn round_all(xs: &[f64]) -> Vec<f64> {
    xs.iter().copied().map(round_sig).collect()
}

/// Shortest round-trip decimal of the rounded value.
pub fn format_number(x: f64) -> String {
    let r = round_sig(x);
    if r.is_finite() {
        // `Display` for f64 is already shortest round-trip.
        format!("{r}")
    } else if r.is_nan() {
        "NaN".into()
    } else if r > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// JSON number for a rounded value; non-finite values become `null`.
pub fn json_number(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(round_sig(x))
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

pub fn json_numbers(xs: &[f64]) -> serde_json::Value {
    serde_json::Value::Array(xs.iter().map(|&x| json_number(x)).collect())
}

/// Rounds every float inside a JSON value.
pub fn round_json(value: serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match value {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            json_number(n.as_f64().expect("float"))
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}
