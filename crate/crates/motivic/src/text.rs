//! Text syntax for CLI input.
//!
//! Grammar (whitespace-insensitive around `+`):
//!
//! ```text
//! expression := term ('+' term)*
//! term       := coefficient-token* square-token+ | coefficient-token+
//! coefficient-token := '1' | 't' | 't^<a>' | 'r' | 'r^<b>'
//! square-token      := 'Sq<n>'            (n ≥ 1)
//! ```
//!
//! e.g. `Sq4 Sq2 + t Sq3 Sq1`, `t^2 r Sq5`, `1`. Coefficient tokens must
//! precede the squares within a term. The parsed element is returned in
//! admissible (Adem-reduced) normal form. Errors carry the byte offset of
//! the offending token.

use std::fmt;

use crate::ground::GroundElement;
use crate::steenrod::{adem_reduce, SqWord, SteenrodElement};

/// A parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

/// Tokens: `+` separators and whitespace-delimited words, with positions.
fn tokenize(input: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in input.char_indices() {
        if ch.is_whitespace() || ch == '+' {
            if let Some(s) = start.take() {
                out.push((s, &input[s..i]));
            }
            if ch == '+' {
                out.push((i, "+"));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &input[s..]));
    }
    out
}

fn parse_exponent(pos: usize, tok: &str, letter: char) -> Result<u32, ParseError> {
    let rest = &tok[1..];
    if rest.is_empty() {
        return Ok(1);
    }
    let Some(digits) = rest.strip_prefix('^') else {
        return err(pos, format!("expected '{letter}' or '{letter}^<exp>', got '{tok}'"));
    };
    digits
        .parse::<u32>()
        .map_err(|_| ParseError { pos, msg: format!("invalid exponent in '{tok}'") })
}

/// Parse one term (a run of tokens between `+` separators) into a reduced
/// Steenrod element.
fn parse_term(tokens: &[(usize, &str)], term_pos: usize) -> Result<SteenrodElement, ParseError> {
    if tokens.is_empty() {
        return err(term_pos, "empty term");
    }
    let (mut a, mut b) = (0u32, 0u32);
    let mut squares: Vec<u32> = Vec::new();
    let mut seen_unit = false;
    for &(pos, tok) in tokens {
        if let Some(digits) = tok.strip_prefix("Sq") {
            let n = digits.parse::<u32>().map_err(|_| ParseError {
                pos,
                msg: format!("invalid square '{tok}' (expected Sq<n>)"),
            })?;
            if n == 0 {
                return err(pos, "Sq0 is the identity; write '1' instead");
            }
            squares.push(n);
        } else if tok == "1" || tok.starts_with('t') || tok.starts_with('r') {
            if !squares.is_empty() {
                return err(pos, format!("coefficient '{tok}' must precede the squares"));
            }
            match tok.chars().next().unwrap() {
                '1' if tok == "1" => seen_unit = true,
                't' => a += parse_exponent(pos, tok, 't')?,
                'r' => b += parse_exponent(pos, tok, 'r')?,
                _ => return err(pos, format!("unrecognized token '{tok}'")),
            }
        } else {
            return err(pos, format!("unrecognized token '{tok}'"));
        }
    }
    let _ = seen_unit;
    let coef = GroundElement::monomial(a, b);
    let reduced = if squares.is_empty() {
        SteenrodElement::one()
    } else {
        adem_reduce(&SqWord::from_squares(&squares))
    };
    Ok(reduced.coeff_mul(&coef))
}

/// Parse a `+`-separated expression into a reduced Steenrod element.
pub fn parse_expression(input: &str) -> Result<SteenrodElement, ParseError> {
    let tokens = tokenize(input);
    if tokens.is_empty() {
        return err(0, "empty expression");
    }
    let mut out = SteenrodElement::zero();
    let mut term: Vec<(usize, &str)> = Vec::new();
    let mut term_pos = 0;
    for (pos, tok) in tokens.into_iter().chain([(input.len(), "+")]) {
        if tok == "+" {
            out.add(&parse_term(&term, term_pos)?);
            term.clear();
            term_pos = pos + 1;
        } else {
            if term.is_empty() {
                term_pos = pos;
            }
            term.push((pos, tok));
        }
    }
    Ok(out)
}

/// Parse a structure vector `a,b,c,d,e,f,g` of seven bits.
pub fn parse_vector(input: &str) -> Result<[u8; 7], ParseError> {
    let parts: Vec<&str> = input.split(',').collect();
    if parts.len() != 7 {
        return err(0, format!("expected 7 comma-separated bits, got {}", parts.len()));
    }
    let mut v = [0u8; 7];
    let mut pos = 0;
    for (k, part) in parts.iter().enumerate() {
        match part.trim() {
            "0" => v[k] = 0,
            "1" => v[k] = 1,
            other => return err(pos, format!("expected bit 0 or 1, got '{other}'")),
        }
        pos += part.len() + 1;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let e = parse_expression("Sq2 Sq2").unwrap();
        assert_eq!(e, SteenrodElement::term(GroundElement::tau(), vec![3, 1]));
        let e = parse_expression("t^2 r Sq4 + Sq1").unwrap();
        let mut expected = SteenrodElement::term(GroundElement::monomial(2, 1), vec![4]);
        expected.add(&SteenrodElement::sq(1));
        assert_eq!(e, expected);
        assert_eq!(parse_expression("1").unwrap(), SteenrodElement::one());
        assert_eq!(
            parse_expression("t").unwrap(),
            SteenrodElement::one().coeff_mul(&GroundElement::tau())
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expression("Sq2 bogus").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_expression("Sq2 t Sq1").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_expression("").unwrap_err();
        assert_eq!(e.pos, 0);
        let e = parse_expression("Sq2 + + Sq1").unwrap_err();
        assert!(e.msg.contains("empty term"));
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("1,0,0,0,0,1,1").unwrap(), [1, 0, 0, 0, 0, 1, 1]);
        assert!(parse_vector("1,0").is_err());
        assert!(parse_vector("1,0,0,0,0,1,2").is_err());
    }
}
