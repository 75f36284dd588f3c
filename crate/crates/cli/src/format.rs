//! Exact serialization of big integers and rationals as decimal strings,
//! plus the JSON encodings shared across subcommands.
//!
//! Every arbitrary-precision number is rendered as `"num"` or `"num/den"`
//! so no floating point ever appears in the output. Machine-sized
//! structural integers (primes, exponents, valuations) are plain JSON
//! numbers.

use decic_core::arith::{Int, Rat, UniPoly};
use decic_core::padic::ValueClassSet;
use num_traits::One;
use serde_json::{json, Value};

/// Exact decimal rendering: `"3"`, `"-102400/3"`.
pub fn rat_str(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact decimal rendering of an integer.
pub fn int_str(n: &Int) -> String {
    n.to_string()
}

/// Parse `"num"` or `"num/den"` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Int = n
        .parse()
        .map_err(|_| format!("invalid integer `{n}` in rational `{s}`"))?;
    let d: Int = d
        .parse()
        .map_err(|_| format!("invalid integer `{d}` in rational `{s}`"))?;
    if d == Int::from(0) {
        return Err(format!("zero denominator in rational `{s}`"));
    }
    Ok(Rat::new(n, d))
}

/// Polynomial as a JSON array of coefficient strings, ascending degree.
pub fn poly_json(f: &UniPoly) -> Value {
    Value::Array(f.coeffs().iter().map(|c| json!(rat_str(c))).collect())
}

/// Parse a JSON coefficient array (ascending degree) into a polynomial.
pub fn poly_from_json(v: &Value) -> Result<UniPoly, String> {
    let arr = v.as_array().ok_or("polynomial must be a JSON array")?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for c in arr {
        let s = c.as_str().ok_or("polynomial coefficients must be strings")?;
        coeffs.push(parse_rat(s)?);
    }
    Ok(UniPoly::new(coeffs))
}

/// The published encoding of a p-adic value-class set:
/// `{"p", "m", "complete", "classes": [{"v": int|"inf", "u": int}], ...}`.
/// The value 0 is the class `v = "inf"`; the pole is the separate
/// `"infinity"` flag; the high/low markers bound the explicit window.
pub fn value_class_set_json(s: &ValueClassSet) -> Value {
    let mut classes: Vec<Value> = s
        .classes()
        .map(|c| {
            // Units live in [1, p^m); fall back to a string in the
            // (unused in practice) case of an enormous modulus.
            let u = match c.u.to_string().parse::<u64>() {
                Ok(n) => json!(n),
                Err(_) => json!(c.u.to_string()),
            };
            json!({"v": c.v, "u": u})
        })
        .collect();
    if s.contains_zero() {
        classes.push(json!({"v": "inf", "u": 0}));
    }
    json!({
        "p": s.prime(),
        "m": s.unit_modulus_exponent(),
        "complete": s.is_complete(),
        "classes": classes,
        "infinity": s.contains_infinity(),
        "high_threshold": s.high_threshold(),
        "low_threshold": s.low_threshold(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use decic_core::arith::{rat, ratio};

    #[test]
    fn rational_round_trip() {
        for q in [rat(0), rat(-13824), ratio(-102400, 3), ratio(7, 2)] {
            assert_eq!(parse_rat(&rat_str(&q)).unwrap(), q);
        }
        assert_eq!(rat_str(&ratio(4, 2)), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn poly_round_trip() {
        let f = UniPoly::from_ints(&[-6, -6, 0, 1]);
        assert_eq!(poly_from_json(&poly_json(&f)).unwrap(), f);
    }
}
