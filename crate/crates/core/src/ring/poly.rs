//! Text form of univariate integer polynomials.
//!
//! ```text
//! poly  := term (('+' | '-') term)*
//! term  := coeff | coeff? 'x' ('^' nat)?
//! coeff := nat
//! ```
//!
//! Whitespace is ignored. A leading `-` and `-` between terms are accepted in
//! addition to `+` so that polynomials such as `x^2-x` can be written without
//! knowing the characteristic.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at column {}: {message}", .position + 1)]
pub struct ParseError {
    /// Zero-based character offset in the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

/// Parse into integer coefficients, constant term first, trailing zeros trimmed.
pub fn parse_integer_poly(text: &str) -> Result<Vec<i64>, ParseError> {
    let chars: Vec<(usize, char)> = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
    let end = text.chars().count();
    let mut pos = 0;
    let mut coeffs: Vec<i64> = Vec::new();
    let at = |p: usize| chars.get(p).map(|&(i, _)| i).unwrap_or(end);

    let nat = |pos: &mut usize| -> Option<i64> {
        let start = *pos;
        let mut v: i64 = 0;
        while let Some(&(_, c)) = chars.get(*pos) {
            let Some(d) = c.to_digit(10) else { break };
            v = v.checked_mul(10)?.checked_add(d as i64)?;
            *pos += 1;
        }
        (*pos > start).then_some(v)
    };

    if chars.is_empty() {
        return Err(ParseError::new(0, "empty polynomial"));
    }
    let mut sign = 1i64;
    if let Some(&(_, '-')) = chars.first() {
        sign = -1;
        pos += 1;
    }
    loop {
        let term_start = pos;
        let coeff = nat(&mut pos);
        let (c, degree) = match chars.get(pos) {
            Some(&(_, 'x')) => {
                pos += 1;
                let degree = if let Some(&(_, '^')) = chars.get(pos) {
                    pos += 1;
                    let p = pos;
                    nat(&mut pos).ok_or_else(|| ParseError::new(at(p), "expected exponent after '^'"))?
                } else {
                    1
                };
                (coeff.unwrap_or(1), degree)
            }
            _ => match coeff {
                Some(c) => (c, 0),
                None => return Err(ParseError::new(at(term_start), "expected a coefficient or 'x'")),
            },
        };
        let degree = usize::try_from(degree)
            .ok()
            .filter(|&d| d <= 4096)
            .ok_or_else(|| ParseError::new(at(term_start), "exponent too large"))?;
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] += sign * c;
        match chars.get(pos) {
            None => break,
            Some(&(_, '+')) => sign = 1,
            Some(&(_, '-')) => sign = -1,
            Some(&(i, c)) => return Err(ParseError::new(i, format!("unexpected character '{c}'"))),
        }
        pos += 1;
        if pos >= chars.len() {
            return Err(ParseError::new(end, "expected a term after operator"));
        }
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Reduce integer coefficients mod `n` and trim.
pub fn reduce_mod(coeffs: &[i64], n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = coeffs.iter().map(|&c| c.rem_euclid(n as i64) as usize).collect();
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    if out.is_empty() {
        out.push(0);
    }
    out
}

fn term(c: usize, degree: usize, var: &str) -> String {
    match (c, degree) {
        (c, 0) => c.to_string(),
        (1, 1) => var.to_string(),
        (c, 1) => format!("{c}{var}"),
        (1, d) => format!("{var}^{d}"),
        (c, d) => format!("{c}{var}^{d}"),
    }
}

/// Lowest degree first, e.g. `1+x+2x^2`; used for element names.
pub fn format_ascending(coeffs: &[usize]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| term(c, d, "x"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Highest degree first, e.g. `x^2+x+1`; used for moduli in provenance.
pub fn format_descending(coeffs: &[usize]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| term(c, d, "x"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Signed integer polynomial printer for `g(x)` labels, e.g. `x^2-x`.
pub struct IntPoly<'a>(pub &'a [i64]);

impl fmt::Display for IntPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let body = term(c.unsigned_abs() as usize, d, "x");
            match (first, c < 0) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, "+{body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_grammar_forms() {
        assert_eq!(parse_integer_poly("x^2+x+1").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_integer_poly("x^2").unwrap(), vec![0, 0, 1]);
        assert_eq!(parse_integer_poly(" 3 x ^ 2 + 2 ").unwrap(), vec![2, 0, 3]);
        assert_eq!(parse_integer_poly("x^1").unwrap(), vec![0, 1]);
        assert_eq!(parse_integer_poly("x^2-x").unwrap(), vec![0, -1, 1]);
        assert_eq!(parse_integer_poly("-x+1").unwrap(), vec![1, -1]);
        assert_eq!(parse_integer_poly("7").unwrap(), vec![7]);
    }

    #[test]
    fn reports_positions() {
        let e = parse_integer_poly("x^2+").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_integer_poly("x^2*x").unwrap_err();
        assert_eq!(e.position, 3);
        let e = parse_integer_poly("x^").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_integer_poly("").is_err());
        assert!(parse_integer_poly("y").is_err());
    }

    #[test]
    fn formats() {
        assert_eq!(format_ascending(&[1, 1]), "1+x");
        assert_eq!(format_ascending(&[0, 0, 2]), "2x^2");
        assert_eq!(format_ascending(&[0]), "0");
        assert_eq!(format_descending(&[1, 1, 1]), "x^2+x+1");
        assert_eq!(IntPoly(&[0, -1, 1]).to_string(), "x^2-x");
        assert_eq!(IntPoly(&[1, 0, 0, -2]).to_string(), "-2x^3+1");
    }

    proptest! {
        #[test]
        fn ascending_names_reparse(coeffs in proptest::collection::vec(0usize..7, 1..5)) {
            let reduced = reduce_mod(&coeffs.iter().map(|&c| c as i64).collect::<Vec<_>>(), 7);
            let text = format_ascending(&reduced);
            let back = reduce_mod(&parse_integer_poly(&text).unwrap(), 7);
            prop_assert_eq!(back, reduced);
        }
    }
}
