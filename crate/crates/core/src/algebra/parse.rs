//! Text form shared by `FqPoly` and `LaurentNum`: a signed sum of monomials such as
//! `t^2+1+t^-3`, `2*t^4-t` or `3t^(-2)`. Coefficients are integers reduced mod q.

use super::AlgebraError;

/// Parses `text` into `(exponent, coefficient)` pairs. Repeated exponents are allowed
/// and are summed by the caller.
pub(crate) fn parse_terms(text: &str) -> Result<Vec<(i64, i64)>, AlgebraError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(AlgebraError::Parse(text.to_string()));
    }
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut i = 0usize;
    let err = || AlgebraError::Parse(text.to_string());

    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if i != 0 {
            return Err(err());
        }
        // optional integer coefficient
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<i64> = if i > start {
            Some(s[start..i].parse().map_err(|_| err())?)
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
            if i >= bytes.len() || bytes[i] != b't' {
                return Err(err());
            }
        }
        let mut exponent = 0i64;
        if i < bytes.len() && bytes[i] == b't' {
            i += 1;
            exponent = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let paren = i < bytes.len() && bytes[i] == b'(';
                if paren {
                    i += 1;
                }
                let es = i;
                if i < bytes.len() && bytes[i] == b'-' {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exponent = s[es..i].parse().map_err(|_| err())?;
                if paren {
                    if i >= bytes.len() || bytes[i] != b')' {
                        return Err(err());
                    }
                    i += 1;
                }
            }
        } else if coeff.is_none() {
            return Err(err());
        }
        terms.push((exponent, sign * coeff.unwrap_or(1)));
    }
    Ok(terms)
}

/// Renders `(exponent, coefficient)` pairs, highest exponent first. Coefficients are
/// assumed nonzero residues.
pub(crate) fn format_terms(terms: impl Iterator<Item = (i64, u32)>) -> String {
    let mut out = String::new();
    for (e, c) in terms {
        if !out.is_empty() {
            out.push('+');
        }
        match (e, c) {
            (0, c) => out.push_str(&c.to_string()),
            (1, 1) => out.push('t'),
            (1, c) => out.push_str(&format!("{c}*t")),
            (e, 1) => out.push_str(&format!("t^{e}")),
            (e, c) => out.push_str(&format!("{c}*t^{e}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
