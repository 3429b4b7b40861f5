//! JSON rendering of exact values.
//!
//! An `ArakelovNumber` serializes as
//! `{"rational": "p/q", "zeta1": "p/q", "logs": {"2": "p/q", ...},
//! "numeric": "<decimal>"}` with every exact coefficient an exact
//! rational string, never a float; `numeric` is the boundary
//! evaluation at the precision the command was given. Emission order is
//! fixed and log keys ascend numerically, so parsing and re-rendering a
//! document is byte-identical.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use p1z::{ArakelovNumber, Error, Rational};
use serde_json::{json, Map, Value};

fn rational_to_string(q: &Rational) -> String {
    q.to_string()
}

fn rational_from_str(s: &str) -> Result<Rational, Error> {
    let bad = |reason: String| Error::Parse { pos: 0, reason };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num.trim()).map_err(|e| bad(format!("bad rational {s:?}: {e}")))?;
    let d = BigInt::from_str(den.trim()).map_err(|e| bad(format!("bad rational {s:?}: {e}")))?;
    if d.is_zero() {
        return Err(bad(format!("bad rational {s:?}: zero denominator")));
    }
    Ok(Rational::new(n, d))
}

/// Serializes an exact value, evaluating `numeric` at the given precision.
pub fn arakelov_to_json(x: &ArakelovNumber, precision: u32) -> Result<Value, Error> {
    let mut logs = Map::new();
    for (p, coeff) in x.log_terms() {
        logs.insert(p.to_string(), Value::String(rational_to_string(coeff)));
    }
    let numeric = x
        .numeric_value(precision)?
        .to_decimal(precision.saturating_sub(1));
    let mut out = Map::new();
    out.insert(
        "rational".into(),
        Value::String(rational_to_string(x.rational_part())),
    );
    out.insert(
        "zeta1".into(),
        Value::String(rational_to_string(x.zeta_coeff())),
    );
    out.insert("logs".into(), Value::Object(logs));
    out.insert("numeric".into(), Value::String(numeric));
    Ok(Value::Object(out))
}

/// Reconstructs the exact value from its JSON form (the `numeric` field
/// carries no information and is ignored).
pub fn arakelov_from_json(v: &Value) -> Result<ArakelovNumber, Error> {
    let obj = v.as_object().ok_or_else(|| Error::Parse {
        pos: 0,
        reason: "expected a JSON object".into(),
    })?;
    let field = |name: &str| -> Result<&str, Error> {
        obj.get(name)
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse {
                pos: 0,
                reason: format!("missing string field {name:?}"),
            })
    };
    let rational = rational_from_str(field("rational")?)?;
    let zeta = rational_from_str(field("zeta1")?)?;
    let mut logs = BTreeMap::new();
    if let Some(Value::Object(map)) = obj.get("logs") {
        for (key, value) in map {
            let p: u64 = key.parse().map_err(|_| Error::Parse {
                pos: 0,
                reason: format!("bad prime key {key:?}"),
            })?;
            let coeff = value.as_str().ok_or_else(|| Error::Parse {
                pos: 0,
                reason: format!("log coefficient for {key} is not a string"),
            })?;
            logs.insert(p, rational_from_str(coeff)?);
        }
    }
    ArakelovNumber::from_parts(rational, zeta, logs)
}

/// Compact canonical rendering.
pub fn render(v: &Value) -> String {
    serde_json::to_string(v).expect("values are serializable")
}

/// Pretty rendering for terminal output.
pub fn render_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values are serializable")
}

/// Wraps a command result with its name: `{"command": ..., ...fields}`.
pub fn command_envelope(command: &str, fields: Vec<(&str, Value)>) -> Value {
    let mut out = Map::new();
    out.insert("command".into(), json!(command));
    for (k, v) in fields {
        out.insert(k.into(), v);
    }
    Value::Object(out)
}
