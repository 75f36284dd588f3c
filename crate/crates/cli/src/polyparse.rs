//! Parser for human-entered univariate polynomials like `x^3-6x-6`,
//! `2*x^2 + 1/2 x - 3`, or `-x`.
//!
//! Grammar: a sum of terms; each term is an optional rational coefficient
//! (`num` or `num/den`), an optional `*`, an optional `x` or `x^k`.
//! Whitespace is ignored.

use crate::format::parse_rat;
use decic_core::arith::{rat, Rat, UniPoly};
use num_traits::Zero;

/// Parse a polynomial in the variable `x` with exact rational coefficients.
pub fn parse_poly(input: &str) -> Result<UniPoly, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let bytes = s.as_bytes();
    let mut terms: Vec<(Rat, usize)> = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        // Sign.
        let mut sign = rat(1);
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= bytes.len() {
            return Err(format!("dangling sign in `{input}`"));
        }
        // Coefficient (digits, optionally /digits).
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff = if i > start {
            let mut end = i;
            if i < bytes.len() && bytes[i] == b'/' {
                let mut k = i + 1;
                let dstart = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                if k == dstart {
                    return Err(format!("missing denominator in `{input}`"));
                }
                end = k;
                i = k;
            }
            parse_rat(&s[start..end])?
        } else {
            rat(1)
        };
        coeff = sign * coeff;
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        // Variable part.
        let mut exp = 0usize;
        if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let estart = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == estart {
                    return Err(format!("missing exponent in `{input}`"));
                }
                exp = s[estart..i]
                    .parse()
                    .map_err(|_| format!("exponent out of range in `{input}`"))?;
            }
        } else if i == start {
            return Err(format!(
                "unexpected character `{}` in `{input}`",
                &s[i..].chars().next().unwrap()
            ));
        }
        terms.push((coeff, exp));
        if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            return Err(format!(
                "unexpected character `{}` in `{input}`",
                &s[i..].chars().next().unwrap()
            ));
        }
    }
    let max_deg = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
    if max_deg > 64 {
        return Err(format!("degree {max_deg} too large (limit 64)"));
    }
    let mut coeffs = vec![Rat::zero(); max_deg + 1];
    for (c, e) in terms {
        coeffs[e] += c;
    }
    Ok(UniPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use decic_core::arith::ratio;

    #[test]
    fn parses_standard_forms() {
        assert_eq!(parse_poly("x^3-6x-6").unwrap(), UniPoly::from_ints(&[-6, -6, 0, 1]));
        assert_eq!(parse_poly("x^3 - 6*x - 6").unwrap(), UniPoly::from_ints(&[-6, -6, 0, 1]));
        assert_eq!(parse_poly("-x").unwrap(), UniPoly::from_ints(&[0, -1]));
        assert_eq!(parse_poly("5").unwrap(), UniPoly::from_ints(&[5]));
        assert_eq!(parse_poly("x^2+x+x").unwrap(), UniPoly::from_ints(&[0, 2, 1]));
        assert_eq!(
            parse_poly("1/2x^2 - 3/4").unwrap(),
            UniPoly::new(vec![ratio(-3, 4), rat(0), ratio(1, 2)])
        );
        // x - x collapses to the zero polynomial.
        assert!(parse_poly("x-x").unwrap().is_zero());
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "x^", "y+1", "3//4", "x^1000000", "2+", "x!"] {
            assert!(parse_poly(bad).is_err(), "{bad}");
        }
    }
}
