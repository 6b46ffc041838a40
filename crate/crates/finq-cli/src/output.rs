use finq::cyclo::{format_rational, parse_rational};
use finq::{Cyclotomic, Rational};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// Always `p/q`, so `0/1` and `1/1` keep their denominators.
pub fn exact_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Rational values print as `p` or `p/q`, others in the `… (n=k)` text form.
pub fn exact_cyclotomic(c: &Cyclotomic) -> String {
    let c = c.minimal();
    match c.as_rational() {
        Some(q) => format_rational(&q),
        None => c.to_string(),
    }
}

/// Inverse of [`exact_cyclotomic`]; plain rationals are accepted too.
pub fn parse_cyclotomic(text: &str) -> finq::Result<Cyclotomic> {
    if text.contains("(n=") {
        text.parse()
    } else {
        parse_rational(text).map(Cyclotomic::from_rational)
    }
}

/// `p/q` for rational values, the cyclotomic text form otherwise.
pub(crate) fn exact_value(c: &Cyclotomic) -> String {
    match c.minimal().as_rational() {
        Some(q) => exact_rational(&q),
        None => c.minimal().to_string(),
    }
}

pub(crate) fn rational_float(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Real part alone for real values, `[re, im]` otherwise.
pub(crate) fn cyclotomic_float(c: &Cyclotomic) -> Value {
    let z = c.to_complex();
    if c.conjugate() == *c {
        json!(z.re)
    } else {
        json!([z.re, z.im])
    }
}

pub(crate) fn cyclotomic_list(cs: &[Cyclotomic]) -> Vec<String> {
    cs.iter().map(exact_cyclotomic).collect()
}

pub(crate) fn matrix_rows(m: &[Vec<u8>]) -> Vec<String> {
    m.iter()
        .map(|row| row.iter().map(|d| char::from(b'0' + d)).collect())
        .collect()
}

/// Digits of a state, vertex 0 first.
pub(crate) fn state_string(s: &[u8]) -> String {
    s.iter().map(|d| char::from(b'0' + d)).collect()
}
