//! Plain-text tensor format for forms.
//!
//! ```text
//! field degree dim
//! coefficient
//! …
//! ```
//!
//! The header names the scalar field (`real` or `complex`), the degree m
//! and the per-slot dimension N. It is followed by exactly N^m
//! coefficient lines in row-major order with the last index fastest:
//! one decimal number per line for real forms, two (re, im) for complex
//! ones. Blank lines and `#` comments are ignored. The parser is strict
//! about everything else; it is exercised directly by the fuzz target.

use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forms::{MultilinearForm, ScalarField, MAX_COEFFICIENTS, MAX_DEGREE};

fn parse_number(token: &str, line: usize) -> Result<f64> {
    let value: f64 = token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid number {token:?}")))?;
    if !value.is_finite() {
        return Err(Error::parse(line, format!("coefficient {token:?} is not finite")));
    }
    Ok(value)
}

/// Parses a form from the text format.
pub fn parse_form(text: &str) -> Result<MultilinearForm> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| Error::parse(0, "empty input"))?;
    let mut tokens = header.split_whitespace();
    let field = match tokens.next() {
        Some("real") => ScalarField::Real,
        Some("complex") => ScalarField::Complex,
        Some(other) => {
            return Err(Error::parse(
                header_line,
                format!("unknown field tag {other:?}, expected \"real\" or \"complex\""),
            ))
        }
        None => return Err(Error::parse(header_line, "missing field tag")),
    };
    let degree: usize = tokens
        .next()
        .ok_or_else(|| Error::parse(header_line, "missing degree"))?
        .parse()
        .map_err(|_| Error::parse(header_line, "degree must be a positive integer"))?;
    let dim: usize = tokens
        .next()
        .ok_or_else(|| Error::parse(header_line, "missing dim"))?
        .parse()
        .map_err(|_| Error::parse(header_line, "dim must be a positive integer"))?;
    if tokens.next().is_some() {
        return Err(Error::parse(header_line, "trailing tokens after header"));
    }
    if degree < 1 || degree > MAX_DEGREE {
        return Err(Error::parse(
            header_line,
            format!("degree must be in 1..={MAX_DEGREE}, got {degree}"),
        ));
    }
    if dim < 1 {
        return Err(Error::parse(header_line, "dim must be at least 1"));
    }
    let mut expected = 1usize;
    for _ in 0..degree {
        expected = expected
            .checked_mul(dim)
            .filter(|&len| len <= MAX_COEFFICIENTS)
            .ok_or_else(|| {
                Error::parse(
                    header_line,
                    format!("tensor of dim {dim}, degree {degree} is too large"),
                )
            })?;
    }

    let mut coefficients = Vec::with_capacity(expected);
    for _ in 0..expected {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(header_line, format!("expected {expected} coefficients")))?;
        let mut tokens = line.split_whitespace();
        let re = parse_number(
            tokens.next().ok_or_else(|| Error::parse(line_no, "missing coefficient"))?,
            line_no,
        )?;
        let im = match field {
            ScalarField::Real => 0.0,
            ScalarField::Complex => parse_number(
                tokens
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "complex coefficient needs re and im"))?,
                line_no,
            )?,
        };
        if tokens.next().is_some() {
            return Err(Error::parse(line_no, "trailing tokens after coefficient"));
        }
        coefficients.push(Complex64::new(re, im));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(line_no, "trailing data after the last coefficient"));
    }
    MultilinearForm::new(field, degree, dim, coefficients)
}

/// Renders a form in the text format; parsing the output reproduces the
/// form exactly (floats are printed with round-trip precision).
pub fn render_form(form: &MultilinearForm) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {} {}\n", form.field(), form.degree(), form.dim()));
    for c in form.coefficients() {
        match form.field() {
            ScalarField::Real => out.push_str(&format!("{}\n", c.re)),
            ScalarField::Complex => out.push_str(&format!("{} {}\n", c.re, c.im)),
        }
    }
    out
}

/// Reads a form from a file.
pub fn read_form(path: &Path) -> Result<MultilinearForm> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(0, format!("cannot read {}: {e}", path.display())))?;
    parse_form(&text)
}

/// Writes a form to a file in the text format.
pub fn write_form(path: &Path, form: &MultilinearForm) -> Result<()> {
    std::fs::write(path, render_form(form))
        .map_err(|e| Error::parse(0, format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_real_header_and_values() {
        let form = parse_form("real 2 2\n1\n1\n1\n-1\n").unwrap();
        assert_eq!(form.field(), ScalarField::Real);
        assert_eq!((form.degree(), form.dim()), (2, 2));
        assert_eq!(form.coefficient(&[1, 1]).re, -1.0);
    }

    #[test]
    fn parses_complex_with_comments_and_blanks() {
        let text = "# a 1x2 complex linear form\ncomplex 1 2\n\n0.5 -1.5\n2 0\n";
        let form = parse_form(text).unwrap();
        assert_eq!(form.coefficients()[0], Complex64::new(0.5, -1.5));
        assert_eq!(form.coefficients()[1], Complex64::new(2.0, 0.0));
    }

    #[test]
    fn rejects_malformed_inputs() {
        for bad in [
            "",
            "real",
            "real 2",
            "quaternion 2 2\n",
            "real 0 2\n",
            "real 2 0\n",
            "real 17 1\n1\n",
            "real 1 99999999999999999999\n",
            "real 2 2\n1\n1\n1\n",              // too few
            "real 2 2\n1\n1\n1\n-1\n7\n",       // trailing data
            "real 1 1\nnan\n",
            "real 1 1\ninf\n",
            "real 1 1\nabc\n",
            "real 1 1\n1 2\n",                  // extra token on real line
            "complex 1 1\n1\n",                 // missing im
            "real 2 2 5\n1\n1\n1\n-1\n",        // trailing header token
            "real 8 8\n",                        // would need 16 million entries
        ] {
            assert!(parse_form(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn error_reports_line_numbers() {
        match parse_form("real 1 2\n1\nxyz\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn render_parse_round_trip_real(
            coeffs in proptest::collection::vec(-1e6f64..1e6, 8),
        ) {
            let form = MultilinearForm::from_real(3, 2, coeffs).unwrap();
            let again = parse_form(&render_form(&form)).unwrap();
            prop_assert_eq!(form, again);
        }

        #[test]
        fn render_parse_round_trip_complex(
            parts in proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 4),
        ) {
            let coeffs: Vec<Complex64> =
                parts.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
            let form = MultilinearForm::new(ScalarField::Complex, 2, 2, coeffs).unwrap();
            let again = parse_form(&render_form(&form)).unwrap();
            prop_assert_eq!(form, again);
        }
    }
}
