use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::DirichletPolynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct PolynomialJson {
    coefficients: Vec<TermJson>,
    #[serde(default, skip_deserializing)]
    length: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermJson {
    n: u64,
    re: f64,
    #[serde(default)]
    im: f64,
}

impl TryFrom<PolynomialJson> for DirichletPolynomial {
    type Error = Error;

    fn try_from(raw: PolynomialJson) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for t in &raw.coefficients {
            if !seen.insert(t.n) {
                return Err(Error::Parse { line: 0, message: format!("duplicate index n = {}", t.n) });
            }
        }
        DirichletPolynomial::from_pairs(raw.coefficients.into_iter().map(|t| (t.n, Complex64::new(t.re, t.im))))
    }
}

impl From<DirichletPolynomial> for PolynomialJson {
    fn from(f: DirichletPolynomial) -> Self {
        PolynomialJson {
            length: f.length(),
            coefficients: f.iter().map(|(n, c)| TermJson { n, re: c.re, im: c.im }).collect(),
        }
    }
}

/// Parses the line format `n re im` (blank lines and `#` comments allowed).
pub fn parse_polynomial_text(input: &str) -> Result<DirichletPolynomial> {
    let mut pairs: Vec<(u64, Complex64)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(format!("expected `n re im`, found {} fields", fields.len())));
        }
        let n: u64 = fields[0].parse().map_err(|_| err(format!("bad index `{}`", fields[0])))?;
        if n == 0 {
            return Err(err("index must be at least 1".into()));
        }
        let mut parts = [0.0f64; 2];
        for (slot, text) in parts.iter_mut().zip(&fields[1..]) {
            *slot = text.parse().map_err(|_| err(format!("bad number `{text}`")))?;
            if !slot.is_finite() {
                return Err(err(format!("non-finite number `{text}`")));
            }
        }
        if !seen.insert(n) {
            return Err(err(format!("duplicate index n = {n}")));
        }
        pairs.push((n, Complex64::new(parts[0], parts[1])));
    }
    DirichletPolynomial::from_pairs(pairs)
}

pub fn parse_polynomial_json(input: &str) -> Result<DirichletPolynomial> {
    let raw: PolynomialJson = serde_json::from_str(input)?;
    DirichletPolynomial::try_from(raw)
}

impl DirichletPolynomial {
    /// Text form, one `n re im` line per stored term. Round-trips exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (n, c) in self.iter() {
            out.push_str(&format!("{n} {:?} {:?}\n", c.re, c.im));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polynomial serializes")
    }
}
