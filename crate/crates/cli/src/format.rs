//! Number formatting and JSON builders shared by every report.

use nevanlinna::{CheckVerdict, ComplexValue, DivisorCatalog, DivisorKind};
use num_complex::Complex64;
use serde_json::{Map, Number, Value};

/// 17 significant digits as with `%.17g` (positional for exponents in
/// `-4..17`, trailing zeros trimmed) but with an unpadded exponent, e.g. `1e-7`.
pub fn real_text(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific form");
    let exp: i32 = exp.parse().expect("exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if (-4..17).contains(&exp) {
        if exp >= 0 {
            let split = exp as usize + 1;
            let (int, frac) = digits.split_at(split.min(digits.len()));
            let frac = frac.trim_end_matches('0');
            if frac.is_empty() {
                int.to_string()
            } else {
                format!("{int}.{frac}")
            }
        } else {
            let lead = "0".repeat((-exp - 1) as usize);
            format!("0.{lead}{}", digits.trim_end_matches('0'))
        }
    } else {
        let (first, rest) = digits.split_at(1);
        let rest = rest.trim_end_matches('0');
        if rest.is_empty() {
            format!("{first}e{exp}")
        } else {
            format!("{first}.{rest}e{exp}")
        }
    };
    format!("{sign}{body}")
}

/// A JSON number for finite `x`, otherwise the strings `"inf"`, `"-inf"`, `"nan"`.
pub fn real(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(real_text(x).parse::<Number>().expect("valid JSON number"))
    } else {
        Value::String(real_text(x))
    }
}

pub fn complex(z: Complex64) -> Value {
    let mut m = Map::new();
    m.insert("re".into(), real(z.re));
    m.insert("im".into(), real(z.im));
    Value::Object(m)
}

pub fn ext(z: ComplexValue) -> Value {
    match z {
        ComplexValue::Infinity => Value::String("inf".into()),
        ComplexValue::Finite(c) => complex(c),
    }
}

/// Compact text for an extended complex value, as used in CSV cells.
pub fn ext_text(z: ComplexValue) -> String {
    match z {
        ComplexValue::Infinity => "inf".into(),
        ComplexValue::Finite(c) if c.im == 0.0 => real_text(c.re),
        ComplexValue::Finite(c) => {
            let sign = if c.im.is_sign_negative() { "-" } else { "+" };
            format!("{}{sign}{}i", real_text(c.re), real_text(c.im.abs()))
        }
    }
}

pub fn verdict(v: &CheckVerdict<f64>) -> Value {
    let mut m = Map::new();
    m.insert("check".into(), Value::String(v.check.clone()));
    m.insert("relation".into(), Value::String(format!("{:?}", v.relation).to_lowercase()));
    m.insert("pass".into(), Value::Bool(v.pass));
    m.insert("lhs".into(), real(v.lhs));
    m.insert("rhs".into(), real(v.rhs));
    m.insert("residual".into(), real(v.residual));
    m.insert("bound".into(), real(v.bound));
    let details: Map<String, Value> = v.details.iter().map(|(k, x)| (k.clone(), real(*x))).collect();
    m.insert("details".into(), Value::Object(details));
    m.insert("notes".into(), Value::Array(v.notes.iter().cloned().map(Value::String).collect()));
    m.insert("subchecks".into(), Value::Array(v.subchecks.iter().map(verdict).collect()));
    Value::Object(m)
}

pub fn catalog(c: &DivisorCatalog<f64>) -> Value {
    let entries = c
        .entries
        .iter()
        .map(|e| {
            let mut m = Map::new();
            m.insert(
                "kind".into(),
                Value::String(match e.kind {
                    DivisorKind::Zero => "zero".into(),
                    DivisorKind::Pole => "pole".into(),
                }),
            );
            m.insert("location".into(), complex(e.location));
            m.insert("multiplicity".into(), Value::from(e.multiplicity));
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("disk_radius".into(), real(c.disk_radius));
    m.insert("exact".into(), Value::Bool(c.exact));
    m.insert("location_tolerance".into(), real(c.location_tolerance));
    m.insert("entries".into(), Value::Array(entries));
    Value::Object(m)
}

/// Builds a JSON object from `(key, value)` pairs in order.
pub fn object<const N: usize>(pairs: [(&str, Value); N]) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(real_text(2.0), "2");
        assert_eq!(real_text(2.0 / std::f64::consts::PI), "0.63661977236758138");
        assert_eq!(real_text(-1.5e-7), "-1.4999999999999999e-7");
        assert_eq!(real_text(-(2f64.powi(-23))), "-1.1920928955078125e-7");
        assert_eq!(real_text(1e-5), "1.0000000000000001e-5");
        assert_eq!(real_text(1e21), "1e21");
        assert_eq!(real_text(123456.5), "123456.5");
        assert_eq!(real_text(0.001), "0.001");
        for x in [std::f64::consts::E, 1.0 / 3.0, 6.02e23, -4.9e-324, 0.1 + 0.2] {
            assert_eq!(real_text(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(real(f64::INFINITY), Value::String("inf".into()));
    }
}
