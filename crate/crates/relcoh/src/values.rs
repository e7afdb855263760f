//! Numeric flag values: plain numbers, `pi` expressions and `linspace` ranges.
//!
//! ```
//! use relcoh::values::{parse_list, parse_number};
//! assert_eq!(parse_number("pi/4").unwrap(), std::f64::consts::FRAC_PI_4);
//! assert_eq!(parse_list("linspace:0:1:5").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
//! assert_eq!(parse_list("0.1, 1/3").unwrap(), vec![0.1, 1.0 / 3.0]);
//! ```

use std::f64::consts::PI;

fn factor(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('-') {
        return factor(rest).map(|v| -v);
    }
    if s.eq_ignore_ascii_case("pi") {
        return Ok(PI);
    }
    s.parse::<f64>().map_err(|_| format!("invalid number `{s}`"))
}

/// A float, or a product/quotient of floats and `pi` such as `3*pi/16`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let mut parts = s.split('/');
    let product = |t: &str| t.split('*').map(factor).product::<Result<f64, String>>();
    let mut v = product(parts.next().unwrap_or_default())?;
    for d in parts {
        v /= product(d)?;
    }
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// `n` evenly spaced points from `a` to `b`, with both endpoints exact.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| if i == n - 1 { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
            .collect(),
    }
}

/// Comma-separated numbers, or `linspace:a:b:n`.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("linspace:") {
        let fields: Vec<&str> = rest.split(':').collect();
        let [a, b, n] = fields[..] else {
            return Err(format!("expected linspace:a:b:n, got `{s}`"));
        };
        let n: usize = n.trim().parse().map_err(|_| format!("invalid point count `{n}`"))?;
        if n == 0 {
            return Err("linspace needs at least one point".into());
        }
        return Ok(linspace(parse_number(a)?, parse_number(b)?, n));
    }
    let values = s.split(',').map(parse_number).collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err("empty value list".into());
    }
    Ok(values)
}
