//! A small validator for the subset of JSON Schema used by the published
//! subcommand schemas in `docs/`: `type`, `const`, `enum`, `properties`,
//! `required`, `additionalProperties` (boolean), `items`, `oneOf`, and
//! `x-rational` (our extension marking exact decimal-string numbers).

use serde_json::Value;

/// Validate `data` against `schema`; `Err` carries the path and reason of
/// the first violation.
pub fn validate(schema: &Value, data: &Value) -> Result<(), String> {
    validate_at(schema, data, "$")
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(n) => {
            if n.is_i64() || n.is_u64() {
                "integer"
            } else {
                "number"
            }
        }
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn rational_ok(s: &str) -> bool {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits_ok = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let num_ok = digits_ok(num.strip_prefix('-').unwrap_or(num));
    let den_ok = den.map_or(true, digits_ok);
    num_ok && den_ok
}

fn validate_at(schema: &Value, data: &Value, path: &str) -> Result<(), String> {
    let obj = match schema {
        Value::Bool(true) => return Ok(()),
        Value::Bool(false) => return Err(format!("{path}: schema forbids any value")),
        Value::Object(o) => o,
        _ => return Err(format!("{path}: malformed schema")),
    };
    if let Some(options) = obj.get("oneOf").and_then(Value::as_array) {
        let hits = options
            .iter()
            .filter(|s| validate_at(s, data, path).is_ok())
            .count();
        if hits != 1 {
            return Err(format!("{path}: matched {hits} of oneOf alternatives, need 1"));
        }
    }
    if let Some(t) = obj.get("type") {
        let actual = type_name(data);
        let allowed: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: malformed `type`")),
        };
        // JSON Schema treats integers as numbers too.
        let ok = allowed.contains(&actual) || (actual == "integer" && allowed.contains(&"number"));
        if !ok {
            return Err(format!("{path}: type {actual}, expected {allowed:?}"));
        }
    }
    if let Some(c) = obj.get("const") {
        if data != c {
            return Err(format!("{path}: value differs from const {c}"));
        }
    }
    if let Some(e) = obj.get("enum").and_then(Value::as_array) {
        if !e.contains(data) {
            return Err(format!("{path}: value not in enum"));
        }
    }
    if obj.get("x-rational").and_then(Value::as_bool) == Some(true) {
        match data.as_str() {
            Some(s) if rational_ok(s) => {}
            _ => return Err(format!("{path}: not an exact decimal rational string")),
        }
    }
    if let Some(props) = obj.get("properties").and_then(Value::as_object) {
        if let Value::Object(map) = data {
            for (k, sub) in props {
                if let Some(v) = map.get(k) {
                    validate_at(sub, v, &format!("{path}.{k}"))?;
                }
            }
            if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
                for k in map.keys() {
                    if !props.contains_key(k) {
                        return Err(format!("{path}: unexpected property `{k}`"));
                    }
                }
            }
        }
    }
    if let Some(req) = obj.get("required").and_then(Value::as_array) {
        if let Value::Object(map) = data {
            for k in req.iter().filter_map(Value::as_str) {
                if !map.contains_key(k) {
                    return Err(format!("{path}: missing required property `{k}`"));
                }
            }
        } else {
            return Err(format!("{path}: required applies to an object"));
        }
    }
    if let Some(items) = obj.get("items") {
        if let Value::Array(arr) = data {
            for (i, v) in arr.iter().enumerate() {
                validate_at(items, v, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn basic_keywords() {
        let schema = json!({
            "type": "object",
            "required": ["a", "b"],
            "additionalProperties": false,
            "properties": {
                "a": {"type": "string", "x-rational": true},
                "b": {"type": "array", "items": {"type": "integer"}},
            }
        });
        assert!(validate(&schema, &json!({"a": "-3/4", "b": [1, 2]})).is_ok());
        assert!(validate(&schema, &json!({"a": "x", "b": []})).is_err());
        assert!(validate(&schema, &json!({"a": "1"})).is_err());
        assert!(validate(&schema, &json!({"a": "1", "b": [], "c": 0})).is_err());
        assert!(validate(&schema, &json!({"a": "1", "b": ["x"]})).is_err());
    }

    #[test]
    fn one_of() {
        let schema = json!({"oneOf": [{"type": "integer"}, {"const": "inf"}]});
        assert!(validate(&schema, &json!(3)).is_ok());
        assert!(validate(&schema, &json!("inf")).is_ok());
        assert!(validate(&schema, &json!("nope")).is_err());
    }

    #[test]
    fn rational_strings() {
        for good in ["0", "-13824", "-102400/3", "20480/243"] {
            assert!(rational_ok(good), "{good}");
        }
        for bad in ["", "-", "1/", "/3", "1/-3", "1.5", "a"] {
            assert!(!rational_ok(bad), "{bad}");
        }
    }
}
