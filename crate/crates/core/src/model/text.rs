use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// A whitespace-separated token with its 1-based column.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Token<'a> {
    pub column: usize,
    pub text: &'a str,
}

/// A non-empty, comment-stripped line.
#[derive(Debug)]
pub(crate) struct Record<'a> {
    pub line: usize,
    pub tokens: Vec<Token<'a>>,
}

impl<'a> Record<'a> {
    pub fn syntax(&self, token: usize, message: impl Into<String>) -> Error {
        let column = self.tokens.get(token).map_or(1, |t| t.column);
        Error::Syntax { line: self.line, column, message: message.into() }
    }
}

/// Splits a line-oriented document into records. `#` starts a comment and both
/// LF and CRLF line endings are accepted.
pub(crate) fn records(text: &str) -> Vec<Record<'_>> {
    let mut out = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push(Token { column: content[..s].chars().count() + 1, text: &content[s..pos] });
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if let Some(s) = start {
            tokens.push(Token { column: content[..s].chars().count() + 1, text: &content[s..] });
        }
        if !tokens.is_empty() {
            out.push(Record { line: idx + 1, tokens });
        }
    }
    out
}

/// Parses an exact rational written as `p/q` or as a decimal number, with an
/// optional exponent such as `1e-9`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all_digits.is_empty() { BigInt::zero() } else { all_digits.parse().ok()? };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn decimals_and_fractions_agree() {
        assert_eq!(parse_rational("0.5"), Some(q(1, 2)));
        assert_eq!(parse_rational("1/2"), Some(q(1, 2)));
        assert_eq!(parse_rational("2/4"), Some(q(1, 2)));
        assert_eq!(parse_rational(".25"), Some(q(1, 4)));
        assert_eq!(parse_rational("1"), Some(q(1, 1)));
        assert_eq!(parse_rational("1e-9"), Some(q(1, 1_000_000_000)));
        assert_eq!(parse_rational("2.5E1"), Some(q(25, 1)));
        assert_eq!(parse_rational("-0.5"), Some(q(-1, 2)));
    }

    #[test]
    fn malformed_numbers_are_rejected() {
        for bad in ["", ".", "1/0", "a", "1.2.3", "0x10", "1e", "1/2/3"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn comments_and_crlf_are_stripped() {
        let recs = records("# header\r\nEDGE a b 1 # trailing\r\n\r\n  EDGE  c d 2\n");
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].line, 2);
        assert_eq!(recs[0].tokens.len(), 4);
        assert_eq!(recs[1].tokens[1].text, "c");
        assert_eq!(recs[1].tokens[1].column, 9);
    }
}
