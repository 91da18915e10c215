//! Parsing of command-line values: targets, radius grids, index ranges.

use nevanlinna::{parse_expr, ComplexValue, Expr64};
use num_complex::Complex64;

/// A usage or input error, reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<nevanlinna::Error> for InputError {
    fn from(e: nevanlinna::Error) -> Self {
        InputError(e.to_string())
    }
}

pub type InputResult<T> = std::result::Result<T, InputError>;

pub fn function(text: &str, what: &str) -> InputResult<Expr64> {
    parse_expr(text, false).map_err(|e| InputError(format!("{what} {text:?}: {e}")))
}

pub fn family(text: &str) -> InputResult<Expr64> {
    parse_expr(text, true).map_err(|e| InputError(format!("family {text:?}: {e}")))
}

/// Value of a `z`-free expression such as `2i`, `-3` or `exp(-n)` with `n` bound.
pub fn constant_of(e: &Expr64, text: &str) -> InputResult<Complex64> {
    if e.has_var() {
        return Err(InputError(format!("{text:?} must be a constant, not a function of z")));
    }
    match e.eval(ComplexValue::zero())? {
        ComplexValue::Finite(c) => Ok(c),
        ComplexValue::Infinity => Err(InputError(format!("{text:?} is infinite"))),
    }
}

pub fn complex(text: &str) -> InputResult<Complex64> {
    let e = parse_expr::<f64>(text.trim(), false).map_err(|e| InputError(format!("value {text:?}: {e}")))?;
    constant_of(&e, text)
}

pub fn target(text: &str) -> InputResult<ComplexValue> {
    let t = text.trim();
    if matches!(t, "inf" | "infinity" | "∞") {
        return Ok(ComplexValue::Infinity);
    }
    complex(t).map(ComplexValue::Finite)
}

pub fn list<T>(text: &str, item: impl Fn(&str) -> InputResult<T>) -> InputResult<Vec<T>> {
    let items: Vec<T> = text.split(',').filter(|s| !s.trim().is_empty()).map(item).collect::<InputResult<_>>()?;
    if items.is_empty() {
        return Err(InputError(format!("empty list {text:?}")));
    }
    Ok(items)
}

fn real(text: &str, what: &str) -> InputResult<f64> {
    let c = complex(text).map_err(|e| InputError(format!("{what}: {e}")))?;
    if c.im != 0.0 {
        return Err(InputError(format!("{what} {text:?} must be real")));
    }
    Ok(c.re)
}

/// `lo:hi:step` or a comma-separated list; strictly increasing and positive.
pub fn radius_grid(text: &str) -> InputResult<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let grid = match parts.as_slice() {
        [lo, hi, step] => {
            let (lo, hi, step) = (real(lo, "grid start")?, real(hi, "grid end")?, real(step, "grid step")?);
            if !(step > 0.0) || !(hi >= lo) {
                return Err(InputError(format!("malformed grid {text:?}: need lo ≤ hi and step > 0")));
            }
            let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
            if count > 100_000 {
                return Err(InputError(format!("grid {text:?} has too many points")));
            }
            (0..count).map(|k| lo + step * k as f64).collect()
        }
        [_] => list(text, |s| real(s, "radius"))?,
        _ => return Err(InputError(format!("malformed grid {text:?}: use lo:hi:step or a comma list"))),
    };
    if grid.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
        return Err(InputError(format!("grid {text:?}: radii must be positive and finite")));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(InputError(format!("grid {text:?} must be strictly increasing")));
    }
    Ok(grid)
}

/// `lo:hi` or a single index.
pub fn index_range(text: &str) -> InputResult<(i64, i64)> {
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| InputError(format!("malformed index range {text:?}")));
    match text.split_once(':') {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => {
            let n = parse(text)?;
            Ok((n, n))
        }
    }
}

/// Radii from `--radius` or `--radii`, exactly one of which must be given.
pub fn radii(radius: Option<f64>, radii: Option<&str>) -> InputResult<Vec<f64>> {
    match (radius, radii) {
        (Some(r), None) => {
            if !(r > 0.0) || !r.is_finite() {
                return Err(InputError(format!("radius must be positive, got {r}")));
            }
            Ok(vec![r])
        }
        (None, Some(g)) => radius_grid(g),
        (Some(_), Some(_)) => Err(InputError("give either --radius or --radii, not both".into())),
        (None, None) => Err(InputError("a radius is required (--radius or --radii)".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(radius_grid("0.5:2:0.5").unwrap(), vec![0.5, 1.0, 1.5, 2.0]);
        assert_eq!(radius_grid("1,2,4").unwrap(), vec![1.0, 2.0, 4.0]);
        assert!(radius_grid("2:1:0.5").is_err());
        assert!(radius_grid("1,1").is_err());
        assert!(radius_grid("-1,1").is_err());
        assert!(radius_grid("1:2").is_err());
    }

    #[test]
    fn targets() {
        assert_eq!(target("inf").unwrap(), ComplexValue::Infinity);
        assert_eq!(target("2i").unwrap(), ComplexValue::new(0.0, 2.0));
        assert_eq!(target("-3").unwrap(), ComplexValue::new(-3.0, 0.0));
        assert!(target("z").is_err());
        assert_eq!(list("inf,0", target).unwrap().len(), 2);
        assert_eq!(index_range("10:30").unwrap(), (10, 30));
    }
}
