//! Comma-separated parameter lists as accepted on the command line.
//!
//! Items are numbers (`100`, `1e4`, `0.25`) or `a/b` fractions; integer lists
//! additionally accept inclusive ranges `lo..hi` and `lo..hi:step`.

use crate::error::{Error, Result};

fn bad(item: &str, why: &str) -> Error {
    Error::Grid(format!("`{item}`: {why}"))
}

fn parse_real(item: &str) -> Result<f64> {
    let v = match item.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| bad(item, "bad numerator"))?;
            let b: f64 = b.trim().parse().map_err(|_| bad(item, "bad denominator"))?;
            if b == 0.0 {
                return Err(bad(item, "zero denominator"));
            }
            a / b
        }
        None => item.parse().map_err(|_| bad(item, "not a number"))?,
    };
    if !v.is_finite() {
        return Err(bad(item, "not finite"));
    }
    Ok(v)
}

fn parse_integer(item: &str) -> Result<u64> {
    if let Ok(v) = item.parse::<u64>() {
        return Ok(v);
    }
    let v = parse_real(item)?;
    if v < 0.0 || v.fract() != 0.0 || v > 9.007_199_254_740_992e15 {
        return Err(bad(item, "not a nonnegative integer"));
    }
    Ok(v as u64)
}

fn items(input: &str) -> Result<Vec<&str>> {
    let out: Vec<&str> = input.split(',').map(str::trim).collect();
    if out.iter().any(|s| s.is_empty()) {
        return Err(Error::Grid(format!("empty item in `{input}`")));
    }
    Ok(out)
}

/// Parses a list of reals.
pub fn parse_real_list(input: &str) -> Result<Vec<f64>> {
    items(input)?.into_iter().map(parse_real).collect()
}

/// Parses a list of nonnegative integers, expanding ranges. The expansion is
/// capped at `max_len` items.
pub fn parse_integer_list(input: &str, max_len: usize) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for item in items(input)? {
        match item.split_once("..") {
            Some((lo, rest)) => {
                let (hi, step) = match rest.split_once(':') {
                    Some((h, s)) => (h, parse_integer(s.trim())?),
                    None => (rest, 1),
                };
                let lo = parse_integer(lo.trim())?;
                let hi = parse_integer(hi.trim())?;
                if step == 0 || hi < lo {
                    return Err(bad(item, "empty or non-advancing range"));
                }
                let span = (hi - lo) / step;
                if span >= (max_len.saturating_sub(out.len())) as u64 {
                    return Err(bad(item, "range too long"));
                }
                out.extend((0..=span).map(|i| lo + i * step));
            }
            None => {
                if out.len() >= max_len {
                    return Err(bad(item, "list too long"));
                }
                out.push(parse_integer(item)?);
            }
        }
    }
    Ok(out)
}
