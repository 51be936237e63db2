//! Recursion files:
//!
//! ```text
//! # f_{n+1} = q^(2n+1) f_n
//! operator: L - q*M^2
//! rhs: 0
//! f0: 1
//! f1: q | 1 - q
//! ```
//!
//! `operator` is a word in `M, L, q` (noncommutative, `LM = qML`), `rhs` an
//! optional polynomial in `M, q`, and `f<n>` the initial values, each a
//! Laurent polynomial in `q` optionally followed by `| denominator`.

use crate::poly::{parse_poly, Polynomial, RationalFunction};
use crate::qholo::RecursionSystem;
use crate::weyl::WeylElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionFile {
    pub operator: WeylElement,
    pub rhs: Polynomial,
    pub initial_values: Vec<RationalFunction>,
}

impl RecursionFile {
    pub fn system(&self) -> Result<RecursionSystem, crate::qholo::QholoError> {
        RecursionSystem::new(self.operator.clone(), &self.rhs, self.initial_values.clone())
    }
}

fn value(text: &str, line: usize) -> Result<RationalFunction, String> {
    let (num, den) = match text.split_once('|') {
        Some((a, b)) => (a, b),
        None => (text, "1"),
    };
    let p = |s: &str| parse_poly(s.trim(), &["q"]).map_err(|e| format!("line {line}: {e}"));
    RationalFunction::from_polynomials(&p(num)?, &p(den)?).map_err(|e| format!("line {line}: {e}"))
}

pub fn parse_recursion(text: &str) -> Result<RecursionFile, String> {
    let mut operator = None;
    let mut rhs = Polynomial::zero(&["M", "q"]);
    let mut values: Vec<(usize, RationalFunction)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (key, body) = l
            .split_once(':')
            .ok_or_else(|| format!("line {line}: expected `key: value`"))?;
        let (key, body) = (key.trim(), body.trim());
        match key {
            "operator" => operator = Some(WeylElement::parse(body).map_err(|e| format!("line {line}: {e}"))?),
            "rhs" => rhs = parse_poly(body, &["M", "q"]).map_err(|e| format!("line {line}: {e}"))?,
            _ => {
                let n: usize = key
                    .strip_prefix('f')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| format!("line {line}: unknown key {key:?}"))?;
                values.push((n, value(body, line)?));
            }
        }
    }
    values.sort_by_key(|(n, _)| *n);
    if values.iter().enumerate().any(|(k, (n, _))| k != *n) {
        return Err("initial values must be f0, f1, ... without gaps".into());
    }
    Ok(RecursionFile {
        operator: operator.ok_or("missing `operator:` line")?,
        rhs,
        initial_values: values.into_iter().map(|(_, v)| v).collect(),
    })
}
