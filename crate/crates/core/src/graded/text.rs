//! Text form for graded polynomials: one term per line,
//! `num/den * gen^k gen ...`, constants as the bare rational.

use super::poly::{GradedPoly, Mono};
use super::space::GradedSpace;
use crate::num::{fmt_rat, parse_rat};
use std::fmt;

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "{}", fmt_rat(c))?;
            for i in 0..self.space().dim() {
                let e = m.get(i);
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    write!(f, " * {}", self.space().gen(i).name)?;
                } else {
                    write!(f, " * {}^{}", self.space().gen(i).name, e)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("bad coefficient `{0}`")]
    BadCoeff(String),
    #[error("unknown generator `{0}`")]
    UnknownGen(String),
    #[error("bad exponent `{0}`")]
    BadExponent(String),
}

/// Parses the `Display` format back; empty input and `0` are the zero
/// polynomial.
pub fn parse_poly(space: &GradedSpace, text: &str) -> Result<GradedPoly, ParseError> {
    let mut out = GradedPoly::zero(space);
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line == "0" {
            continue;
        }
        let mut parts = line.split('*').map(str::trim);
        let coeff_s = parts.next().unwrap_or_default();
        let c = parse_rat(coeff_s).ok_or_else(|| ParseError::BadCoeff(coeff_s.to_string()))?;
        let mut exps = vec![0u32; space.dim()];
        for factor in parts {
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: u32 =
                        e.trim().parse().map_err(|_| ParseError::BadExponent(e.to_string()))?;
                    (n.trim(), e)
                }
                None => (factor, 1),
            };
            let idx = space
                .index_of(name)
                .ok_or_else(|| ParseError::UnknownGen(name.to_string()))?;
            exps[idx] += e;
        }
        out.add_term(Mono::from_exps(&exps), c);
    }
    Ok(out)
}
