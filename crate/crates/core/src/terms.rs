//! Signed-sum text format shared by divisor and fiber classes:
//! `-2*L + 1*B[3] - 1/3*B[4]`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// Formats nonzero terms in the given order. The zero class renders as `0`.
pub fn format_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a Rational, String)>,
{
    let mut out = String::new();
    for (coef, label) in terms {
        if coef.is_zero() {
            continue;
        }
        if out.is_empty() {
            out.push_str(&format!("{coef}*{label}"));
        } else if coef.is_negative() {
            out.push_str(&format!(" - {}*{label}", -coef));
        } else {
            out.push_str(&format!(" + {coef}*{label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Splits a signed sum into `(coefficient, label)` pairs. A bare label has
/// coefficient 1; repeated labels are returned separately.
pub fn parse_terms(text: &str) -> Result<Vec<(Rational, String)>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty class".into()));
    }
    if compact == "0" {
        return Ok(Vec::new());
    }
    let mut pieces = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..bytes.len() {
        // a sign starts a new term unless it follows `*` or `/`
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'*' | b'/' | b'+' | b'-') {
            pieces.push(&compact[start..i]);
            start = i;
        }
    }
    pieces.push(&compact[start..]);

    let mut terms = Vec::with_capacity(pieces.len());
    for piece in pieces {
        let (negative, body) = strip_signs(piece)?;
        let (coef, label) = match body.split_once('*') {
            Some((c, l)) => (parse_rational(c)?, l),
            None => (Rational::from_integer(1.into()), body),
        };
        if label.is_empty() {
            return Err(Error::Parse(format!("missing label in `{piece}`")));
        }
        let coef = if negative { -coef } else { coef };
        terms.push((coef, label.to_string()));
    }
    Ok(terms)
}

fn strip_signs(piece: &str) -> Result<(bool, &str)> {
    let mut negative = false;
    let mut rest = piece;
    while let Some(c) = rest.chars().next() {
        match c {
            '+' => rest = &rest[1..],
            '-' => {
                negative = !negative;
                rest = &rest[1..];
            }
            _ => break,
        }
    }
    if rest.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{piece}`")));
    }
    Ok((negative, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn parses_mixed_signs() {
        let t = parse_terms("-2*L +1*B[3]  - 1/3 * B[4] + B[2]").unwrap();
        assert_eq!(
            t,
            vec![
                (int(-2), "L".to_string()),
                (int(1), "B[3]".to_string()),
                (ratio(-1, 3), "B[4]".to_string()),
                (int(1), "B[2]".to_string()),
            ]
        );
    }

    #[test]
    fn plus_minus_coefficient() {
        let t = parse_terms("1*L + -1/2*B[2]").unwrap();
        assert_eq!(t[1].0, ratio(-1, 2));
    }

    #[test]
    fn formats_zero_and_signs() {
        let a = int(-2);
        let b = int(0);
        let c = ratio(-1, 3);
        assert_eq!(
            format_terms([(&a, "L".into()), (&b, "B[2]".into()), (&c, "B[3]".into())]),
            "-2*L - 1/3*B[3]"
        );
        assert_eq!(format_terms([(&b, "L".to_string())]), "0");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_terms("").is_err());
        assert!(parse_terms("2*").is_err());
        assert!(parse_terms("x*L").is_err());
    }
}
