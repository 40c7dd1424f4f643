//! Line-oriented `.fop` / `.mop` text formats.
//!
//! ```text
//! # comment
//! modes 2
//! (1,0) : 0^ 0        # a0† a0
//! (0.5,-0.25) : 1^ 0
//! ```
//!
//! `.mop` files use `m<index>` tokens for Majorana operators instead.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::{FermionicHamiltonian, LadderOp, MajoranaHamiltonian};
use crate::error::{Error, Result};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Yields `(line_number, content)` with comments and blank lines removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Reads the `modes <N>` header and returns it with the remaining lines.
fn header(text: &str) -> Result<(usize, Vec<(usize, &str)>)> {
    let mut lines = content_lines(text);
    let (ln, first) = lines.next().ok_or_else(|| err(1, "missing `modes <N>` header"))?;
    let mut parts = first.split_whitespace();
    if parts.next() != Some("modes") {
        return Err(err(ln, "expected `modes <N>` header"));
    }
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(ln, "mode count must be a non-negative integer"))?;
    if parts.next().is_some() {
        return Err(err(ln, "trailing tokens after mode count"));
    }
    Ok((n, lines.collect()))
}

fn parse_coefficient(ln: usize, text: &str) -> Result<Complex64> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| err(ln, format!("coefficient {text:?} must look like (re,im)")))?;
    let (re, im) = inner.split_once(',').ok_or_else(|| err(ln, format!("coefficient {text:?} needs a comma")))?;
    let re: f64 = re.trim().parse().map_err(|_| err(ln, format!("non-numeric real part {re:?}")))?;
    let im: f64 = im.trim().parse().map_err(|_| err(ln, format!("non-numeric imaginary part {im:?}")))?;
    Ok(Complex64::new(re, im))
}

fn split_term(ln: usize, line: &str) -> Result<(Complex64, &str)> {
    let (coef, ops) = line.split_once(':').ok_or_else(|| err(ln, "expected `(<re>,<im>) : <ops>`"))?;
    Ok((parse_coefficient(ln, coef)?, ops))
}

pub fn parse_fermionic(text: &str) -> Result<FermionicHamiltonian> {
    let (n_modes, lines) = header(text)?;
    let mut h = FermionicHamiltonian::new(n_modes);
    for (ln, line) in lines {
        let (coef, ops_text) = split_term(ln, line)?;
        let mut ops = Vec::new();
        for tok in ops_text.split_whitespace() {
            let (digits, dagger) = match tok.strip_suffix('^') {
                Some(d) => (d, true),
                None => (tok, false),
            };
            let mode: usize = digits.parse().map_err(|_| err(ln, format!("malformed operator {tok:?}")))?;
            if mode >= n_modes {
                return Err(err(ln, format!("mode {mode} out of range for {n_modes} modes")));
            }
            ops.push(LadderOp { mode, dagger });
        }
        h.push(coef, ops)?;
    }
    Ok(h)
}

pub fn parse_majorana(text: &str) -> Result<MajoranaHamiltonian> {
    let (n_modes, lines) = header(text)?;
    let mut products = Vec::new();
    for (ln, line) in lines {
        let (coef, ops_text) = split_term(ln, line)?;
        let mut idx = Vec::new();
        for tok in ops_text.split_whitespace() {
            let i: usize = tok
                .strip_prefix('m')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| err(ln, format!("malformed Majorana operator {tok:?}")))?;
            if i >= 2 * n_modes {
                return Err(err(ln, format!("Majorana index {i} out of range for {n_modes} modes")));
            }
            idx.push(i);
        }
        products.push((coef, idx));
    }
    MajoranaHamiltonian::from_products(n_modes, products)
}

fn coef_text(c: Complex64) -> String {
    format!("({},{})", c.re, c.im)
}

pub fn write_fermionic(h: &FermionicHamiltonian) -> String {
    let mut out = format!("modes {}\n", h.n_modes());
    for t in h.terms() {
        let ops: Vec<String> =
            t.ops.iter().map(|op| if op.dagger { format!("{}^", op.mode) } else { op.mode.to_string() }).collect();
        let _ = writeln!(out, "{} : {}", coef_text(t.coefficient), ops.join(" "));
    }
    out
}

pub fn write_majorana(h: &MajoranaHamiltonian) -> String {
    let mut out = format!("modes {}\n", h.n_modes());
    for t in h.terms() {
        let ops: Vec<String> = t.indices.iter().map(|i| format!("m{i}")).collect();
        let _ = writeln!(out, "{} : {}", coef_text(t.coefficient), ops.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_term() {
        let h = parse_fermionic("modes 2\n(1,0) : 0^ 0").unwrap();
        assert_eq!(h.n_modes(), 2);
        assert_eq!(h.terms().len(), 1);
        assert_eq!(h.terms()[0].coefficient, Complex64::new(1.0, 0.0));
        assert_eq!(h.terms()[0].ops, vec![LadderOp::create(0), LadderOp::annihilate(0)]);
    }

    #[test]
    fn three_mode_file() {
        let text = "# a0† a0 + 2 a1† a2† a1 a2\nmodes 3\n(1,0) : 0^ 0\n\n(2, 0) : 1^ 2^ 1 2  # interaction\n";
        let h = parse_fermionic(text).unwrap();
        assert_eq!(h.terms().len(), 2);
        assert_eq!(h.terms()[1].coefficient.re, 2.0);
        assert_eq!(h.terms()[1].ops.len(), 4);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_fermionic("modes 1\n(1,0) : 3^") {
            Err(Error::Parse { line: 2, message }) => assert!(message.contains("out of range")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_fermionic("modes 1\n\n(a,0) : 0"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_fermionic("modes 1\n(1,0) : 0^^"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_fermionic("(1,0) : 0"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_fermionic("modes 1\n1.0 : 0"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_majorana("modes 1\n(1,0) : m2"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn majorana_file() {
        let h = parse_majorana("modes 3\n(1,0) : m0 m5\n(2,0) : m3 m1\n").unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.coefficient(&[1, 3]), Complex64::new(-2.0, 0.0));
        let again = parse_majorana(&write_majorana(&h)).unwrap();
        assert_eq!(again, h);
    }

    #[test]
    fn fermionic_round_trip() {
        let text = "modes 3\n(0.1,-2.5) : 2^ 0\n(1e-3,0) : \n";
        let h = parse_fermionic(text).unwrap();
        assert_eq!(parse_fermionic(&write_fermionic(&h)).unwrap(), h);
    }
}
