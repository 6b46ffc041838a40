//! Exact arithmetic in cyclotomic fields ℚ(ω_n) using the power basis
//! 1, ω, …, ω^{φ(n)−1} modulo the cyclotomic polynomial Φ_n.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{f64_bits::F64, Error, Result};
use crate::linalg::{self, Field, Solution};

/// Arbitrary-precision rational scalar, always stored in lowest terms.
pub type Rational = BigRational;

/// Absolute tolerance used by [`recognize`].
pub const RECOGNIZE_TOLERANCE: f64 = 1e-6;

/// Upper bound on candidate vectors examined per subfield by [`recognize`].
pub const RECOGNIZE_BUDGET: u64 = 4_000_000;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Φ_n with integer coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicPoly {
    conductor: u32,
    coeffs: Arc<Vec<i64>>,
}

impl CyclotomicPoly {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl fmt::Display for CyclotomicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "r")?,
                (1, _) => write!(f, "{a}*r")?,
                (_, 1) => write!(f, "r^{i}")?,
                _ => write!(f, "{a}*r^{i}")?,
            }
        }
        Ok(())
    }
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Divides `num` by the monic polynomial `den`; the division must be exact.
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Φ_n, obtained by dividing r^n − 1 by Φ_d for every proper divisor d of n.
///
/// # Panics
/// If `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> CyclotomicPoly {
    assert!(n >= 1, "conductor must be positive");
    if let Some(c) = poly_cache().lock().unwrap().get(&n) {
        return CyclotomicPoly {
            conductor: n,
            coeffs: Arc::clone(c),
        };
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            p = div_exact_monic(&p, cyclotomic_polynomial(d).coeffs());
        }
    }
    let coeffs = Arc::new(p);
    poly_cache().lock().unwrap().insert(n, Arc::clone(&coeffs));
    CyclotomicPoly { conductor: n, coeffs }
}

/// An element of ℚ(ω_n) in canonical power-basis coordinates.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    coords: Vec<Rational>,
}

/// Reduces a coefficient vector of arbitrary length modulo Φ_n.
fn reduce_mod_phi(n: u32, mut raw: Vec<Rational>) -> Vec<Rational> {
    let poly = cyclotomic_polynomial(n);
    let p = poly.coeffs();
    let k = poly.degree();
    for i in (k..raw.len()).rev() {
        if raw[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut raw[i]);
        for (j, &pj) in p.iter().enumerate().take(k) {
            if pj != 0 {
                raw[i - k + j] -= &c * BigInt::from(pj);
            }
        }
    }
    raw.resize(k, Rational::zero());
    raw
}

impl Cyclotomic {
    /// Canonical element from raw coefficients of 1, ω, ω², … (any length).
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn reduce(n: u32, raw: Vec<Rational>) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let nn = n as usize;
        let folded = if raw.len() > nn {
            let mut f = vec![Rational::zero(); nn];
            for (i, c) in raw.into_iter().enumerate() {
                f[i % nn] += c;
            }
            f
        } else {
            raw
        };
        Cyclotomic {
            n,
            coords: reduce_mod_phi(n, folded),
        }
    }

    /// Builds an element from integer coefficients of 1, ω, ω², ….
    pub fn from_ints(n: u32, raw: &[i64]) -> Self {
        Self::reduce(n, raw.iter().map(|&c| integer(c)).collect())
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { n: 1, coords: vec![q] }
    }

    pub fn from_integer(i: i64) -> Self {
        Self::from_rational(integer(i))
    }

    /// ω_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::reduce(n, raw)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Re-expresses the element in ℚ(ω_m) for a multiple m of the conductor.
    ///
    /// # Panics
    /// If `m` is not a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m % self.n == 0, "{m} is not a multiple of {}", self.n);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut raw = vec![Rational::zero(); (self.coords.len() - 1) * step + 1];
        for (i, c) in self.coords.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Self::reduce(m, raw)
    }

    fn lift_pair(&self, other: &Self) -> (Self, Self) {
        if self.n == other.n {
            return (self.clone(), other.clone());
        }
        let m = self.n.lcm(&other.n);
        (self.lift(m), other.lift(m))
    }

    /// Smallest conductor d | n with the element in ℚ(ω_d).
    pub fn minimal(&self) -> Self {
        let mut best = self.clone();
        for d in divisors(self.n) {
            if d >= best.n || euler_phi(d) >= best.coords.len() {
                continue;
            }
            if let Some(z) = self.restrict(d) {
                best = z;
                break;
            }
        }
        best
    }

    /// The same number written in ℚ(ω_d), if it lies there.
    fn restrict(&self, d: u32) -> Option<Self> {
        if self.n % d != 0 {
            return None;
        }
        let k = euler_phi(d);
        // Solve Σ y_j lift(ω_d^j) = self over ℚ.
        let columns: Vec<Cyclotomic> = (0..k)
            .map(|j| Cyclotomic::root_of_unity(d, j as i64).lift(self.n))
            .collect();
        let rows = self.coords.len();
        let a: Vec<Vec<Rational>> = (0..rows)
            .map(|i| columns.iter().map(|c| c.coords[i].clone()).collect())
            .collect();
        match linalg::solve(&a, &self.coords) {
            Solution::Unique(y) => Some(Cyclotomic { n: d, coords: y }),
            _ => None,
        }
    }

    /// Complex conjugation ω^m ↦ ω^{n−m}.
    pub fn conjugate(&self) -> Self {
        let n = self.n as usize;
        let mut raw = vec![Rational::zero(); n];
        for (i, c) in self.coords.iter().enumerate() {
            raw[(n - i) % n] += c;
        }
        Self::reduce(self.n, raw)
    }

    /// Galois automorphism ω ↦ ω^k.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.n as i64;
        let kk = k.rem_euclid(n);
        if kk.gcd(&n) != 1 && n > 1 {
            return Err(Error::NotCoprime { k, n: self.n });
        }
        let mut raw = vec![Rational::zero(); self.n as usize];
        for (i, c) in self.coords.iter().enumerate() {
            raw[((i as i64 * kk) % n) as usize] += c;
        }
        Ok(Self::reduce(self.n, raw))
    }

    /// Floating-point value at ω = exp(2πi/n). Display and recognition only.
    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = std::f64::consts::TAU * i as f64 / self.n as f64;
            acc += Complex64::from_polar(1.0, angle) * c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// |z|² = z · conj(z).
    pub fn norm_sqr(&self) -> Self {
        self * &self.conjugate()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = self.coords.len();
        // Column j holds the coordinates of self · ω^j.
        let cols: Vec<Cyclotomic> = (0..k)
            .map(|j| self * &Cyclotomic::root_of_unity(self.n, j as i64))
            .collect();
        let a: Vec<Vec<Rational>> = (0..k)
            .map(|i| cols.iter().map(|c| c.coords[i].clone()).collect())
            .collect();
        let mut e0 = vec![Rational::zero(); k];
        e0[0] = Rational::one();
        match linalg::solve(&a, &e0) {
            Solution::Unique(y) => Ok(Cyclotomic { n: self.n, coords: y }),
            _ => unreachable!("multiplication by a nonzero field element is invertible"),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Cyclotomic::one().lift(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            n: self.n,
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coords == other.coords;
        }
        let (a, b) = self.lift_pair(other);
        a.coords == b.coords
    }
}

impl Eq for Cyclotomic {}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::from_integer(0)
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::from_integer(1)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl From<i64> for Cyclotomic {
    fn from(i: i64) -> Self {
        Cyclotomic::from_integer(i)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.lift_pair(rhs);
        Cyclotomic {
            n: a.n,
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.lift_pair(rhs);
        Cyclotomic {
            n: a.n,
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == 1 {
            return rhs.scale(&self.coords[0]);
        }
        if rhs.n == 1 {
            return self.scale(&rhs.coords[0]);
        }
        let (a, b) = self.lift_pair(rhs);
        let mut raw = vec![Rational::zero(); a.coords.len() + b.coords.len() - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Cyclotomic {
            n: a.n,
            coords: reduce_mod_phi(a.n, raw),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Field for Cyclotomic {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff = format_rational(&a);
            match i {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    if i == 1 {
                        write!(f, "w")?;
                    } else {
                        write!(f, "w^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (n={})", self.n)
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    /// Parses the text form `c0 + c1*w + c2*w^2 … (n=<conductor>)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("{why} in cyclotomic `{s}`"));
        let (body, tail) = s.rsplit_once("(n=").ok_or_else(|| bad("missing `(n=`"))?;
        let n: u32 = tail
            .trim()
            .strip_suffix(')')
            .ok_or_else(|| bad("missing `)`"))?
            .trim()
            .parse()
            .map_err(|_| bad("bad conductor"))?;
        if n == 0 {
            return Err(bad("zero conductor"));
        }
        let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        let mut raw: Vec<Rational> = Vec::new();
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in body.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(&body[start..i]);
                start = i;
            }
        }
        terms.push(&body[start..]);
        for term in terms.into_iter().filter(|t| !t.is_empty()) {
            let (sign, rest) = match term.as_bytes()[0] {
                b'+' => (1, &term[1..]),
                b'-' => (-1, &term[1..]),
                _ => (1, term),
            };
            let (coeff, power) = match rest.find('w') {
                None => (parse_rational(rest)?, 0usize),
                Some(pos) => {
                    let c = match rest[..pos].strip_suffix('*') {
                        Some(c) => parse_rational(c)?,
                        None if pos == 0 => Rational::one(),
                        None => return Err(bad("expected `*` before `w`")),
                    };
                    let p = match &rest[pos + 1..] {
                        "" => 1,
                        e => e
                            .strip_prefix('^')
                            .ok_or_else(|| bad("expected `^`"))?
                            .parse()
                            .map_err(|_| bad("bad exponent"))?,
                    };
                    (c, p)
                }
            };
            if raw.len() <= power {
                raw.resize(power + 1, Rational::zero());
            }
            raw[power] += coeff * integer(sign);
        }
        Ok(Cyclotomic::reduce(n, raw))
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicJson {
    n: u32,
    coords: Vec<[String; 2]>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicJson {
            n: self.n,
            coords: self
                .coords
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CyclotomicJson::deserialize(d)?;
        if j.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let raw = j
            .coords
            .iter()
            .map(|[p, q]| parse_rational(&format!("{p}/{q}")))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(Cyclotomic::reduce(j.n, raw))
    }
}

/// Recovers an exact element of ℚ(ω_n) from its numeric value.
///
/// Searches for `z` with `denom · z ∈ ℤ[ω_n]`, integer coordinates bounded by
/// `height` and `|z − value| < RECOGNIZE_TOLERANCE`. Subfields ℚ(ω_d), d | n,
/// are tried in order of increasing degree, so the result is expressed in the
/// smallest field that contains it. The caller must verify the result exactly.
pub fn recognize(value: Complex64, n: u32, denom: u64, height: u64) -> Result<Cyclotomic> {
    let not_found = || Error::NotFound {
        re: F64(value.re),
        im: F64(value.im),
        n,
    };
    if n == 0 || denom == 0 {
        return Err(not_found());
    }
    let mut fields: Vec<u32> = divisors(n).into_iter().filter(|d| d % 4 != 2).collect();
    fields.sort_by_key(|&d| (euler_phi(d), d));
    let target = value * denom as f64;
    let h = height as i64;
    for d in fields {
        if let Some(z) = search_subfield(target, d, h, value, denom) {
            return Ok(z);
        }
    }
    Err(not_found())
}

fn search_subfield(
    target: Complex64,
    d: u32,
    h: i64,
    value: Complex64,
    denom: u64,
) -> Option<Cyclotomic> {
    let k = euler_phi(d);
    let build = |c: &[i64]| {
        let coords = c
            .iter()
            .map(|&ci| Rational::new(BigInt::from(ci), BigInt::from(denom)))
            .collect();
        Cyclotomic { n: d, coords }
    };
    if k == 1 {
        let c0 = target.re.round();
        if c0.abs() > h as f64 {
            return None;
        }
        let z = build(&[c0 as i64]);
        return ((z.to_complex() - value).norm() < RECOGNIZE_TOLERANCE).then_some(z);
    }
    let free = k - 2;
    let side = (2 * h + 1) as u64;
    if side.checked_pow(free as u32).is_none_or(|c| c > RECOGNIZE_BUDGET) {
        return None;
    }
    let powers: Vec<Complex64> = (0..k)
        .map(|i| Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / d as f64))
        .collect();
    let (u, v) = (powers[k - 2], powers[k - 1]);
    let det = u.re * v.im - v.re * u.im;
    let mut c = vec![-h; free];
    let mut best: Option<(f64, Vec<i64>)> = None;
    loop {
        let partial: Complex64 = c
            .iter()
            .zip(&powers)
            .map(|(&ci, p)| p * ci as f64)
            .sum();
        let r = target - partial;
        let a = ((r.re * v.im - v.re * r.im) / det).round();
        let b = ((u.re * r.im - r.re * u.im) / det).round();
        if a.abs() <= h as f64 && b.abs() <= h as f64 {
            let err = ((partial + u * a + v * b) / denom as f64 - value).norm();
            if err < RECOGNIZE_TOLERANCE && best.as_ref().is_none_or(|(e, _)| err < *e) {
                let mut full = c.clone();
                full.push(a as i64);
                full.push(b as i64);
                best = Some((err, full));
            }
        }
        // Odometer step over the free coordinates.
        let mut i = 0;
        loop {
            if i == free {
                return best.map(|(_, full)| build(&full));
            }
            c[i] += 1;
            if c[i] > h {
                c[i] = -h;
                i += 1;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_golden() -> Cyclotomic {
        Cyclotomic::from_ints(5, &[1, 1, 0, 0, 1])
    }

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        assert_eq!(cyclotomic_polynomial(1).coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic_polynomial(12).coeffs(), &[1, 0, -1, 0, 1]);
        assert_eq!(
            cyclotomic_polynomial(60).coeffs(),
            &[1, 0, 1, 0, 0, 0, -1, 0, -1, 0, -1, 0, 0, 0, 1, 0, 1]
        );
        assert_eq!(cyclotomic_polynomial(24).coeffs(), &[1, 0, 0, 0, -1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12).to_string(), "1 - r^2 + r^4");
    }

    #[test]
    fn cyclotomic_polynomial_invariants() {
        for n in 1..=120u32 {
            let p = cyclotomic_polynomial(n);
            assert_eq!(p.degree(), euler_phi(n), "degree of Φ_{n}");
            assert_eq!(*p.coeffs().last().unwrap(), 1);
            let mut binom = vec![0i64; n as usize + 1];
            binom[0] = -1;
            binom[n as usize] = 1;
            let q = div_exact_monic(&binom, p.coeffs());
            // Re-multiplying must give back r^n − 1.
            let mut prod = vec![0i64; binom.len()];
            for (i, a) in q.iter().enumerate() {
                for (j, b) in p.coeffs().iter().enumerate() {
                    prod[i + j] += a * b;
                }
            }
            assert_eq!(prod, binom);
        }
    }

    #[test]
    fn reduce_examples() {
        let mut raw = vec![Rational::zero(); 13];
        raw[12] = Rational::one();
        assert_eq!(Cyclotomic::reduce(12, raw), Cyclotomic::one());
        // −1 = Σ_{k=1}^{p−1} ω^{(n/p)k} for p = 5 inside n = 15.
        let mut raw = vec![Rational::zero(); 13];
        for k in 1..5 {
            raw[3 * k] = Rational::one();
        }
        assert_eq!(Cyclotomic::reduce(15, raw), Cyclotomic::from_integer(-1));
        let alt = -(Cyclotomic::root_of_unity(5, 2) + Cyclotomic::root_of_unity(5, 3));
        assert_eq!(phi_golden(), alt);
        let again = Cyclotomic::reduce(5, phi_golden().coords().to_vec());
        assert_eq!(again.coords(), phi_golden().coords());
    }

    #[test]
    fn arithmetic_examples() {
        let phi = phi_golden();
        let one_minus = Cyclotomic::one() - &phi;
        assert_eq!(&phi * &one_minus, Cyclotomic::from_integer(-1));
        assert_eq!(
            Cyclotomic::root_of_unity(5, 1) + Cyclotomic::root_of_unity(5, 4),
            &phi - &Cyclotomic::one()
        );
        let x = Cyclotomic::from_ints(12, &[0, 2, 0, -1]);
        assert_eq!(&x * &x.inv().unwrap(), Cyclotomic::one());
        assert_eq!(
            Cyclotomic::root_of_unity(3, 1) + Cyclotomic::root_of_unity(3, 2),
            Cyclotomic::from_integer(-1)
        );
        assert_eq!(Cyclotomic::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation_and_galois() {
        assert_eq!(
            Cyclotomic::root_of_unity(4, 1).conjugate(),
            -Cyclotomic::root_of_unity(4, 1)
        );
        let q = Cyclotomic::from_rational(rational(3, 7));
        assert_eq!(q.conjugate(), q);
        let z = Cyclotomic::from_ints(24, &[0, 0, 2, 0, 0, 0, -1]);
        let expected = Cyclotomic::reduce(
            24,
            (0..23)
                .map(|i| match i {
                    22 => integer(2),
                    18 => integer(-1),
                    _ => Rational::zero(),
                })
                .collect(),
        );
        assert_eq!(z.conjugate(), expected);
        let zz = z.norm_sqr();
        let r = zz.as_rational().expect("z·conj(z) is rational");
        assert!(r > Rational::zero());
        assert_eq!(
            Cyclotomic::root_of_unity(3, 1).galois(2).unwrap(),
            Cyclotomic::from_ints(3, &[-1, -1])
        );
        assert!(matches!(
            Cyclotomic::root_of_unity(6, 1).galois(3),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn complex_embedding() {
        let v = Cyclotomic::root_of_unity(4, 1).to_complex();
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let w = Cyclotomic::from_ints(12, &[0, 2, 0, 0, 0, 0, 0, 0, 0, 1]).scale(&rational(1, 3));
        assert!((w.to_complex() - Complex64::new(1.0 / 3f64.sqrt(), 0.0)).norm() < 1e-12);
        assert_eq!(Cyclotomic::zero().to_complex(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn recognition_examples() {
        let half = recognize(Complex64::new(0.5, 0.0), 3, 2, 4).unwrap();
        assert_eq!(half, Cyclotomic::from_rational(rational(1, 2)));
        let golden_quarter = recognize(Complex64::new((1.0 + 5f64.sqrt()) / 4.0, 0.0), 5, 4, 4).unwrap();
        // (1+√5)/4 is half the golden ratio.
        assert_eq!(golden_quarter, phi_golden().scale(&rational(1, 2)));
        let inv_sqrt3 = recognize(Complex64::new(0.577350269189626, 0.0), 12, 3, 4).unwrap();
        assert_eq!(
            inv_sqrt3,
            Cyclotomic::from_ints(12, &[0, 2, 0, -1]).scale(&rational(1, 3))
        );
        assert!(matches!(
            recognize(Complex64::new(std::f64::consts::PI, 0.0), 5, 1, 3),
            Err(Error::NotFound { .. })
        ));
    }

    #[test]
    fn text_and_json_round_trip() {
        let z = Cyclotomic::from_ints(12, &[1, 0, 2, -1]).scale(&rational(-2, 3));
        let s = z.to_string();
        assert_eq!(s, "-2/3 - 4/3*w^2 + 2/3*w^3 (n=12)");
        assert_eq!(s.parse::<Cyclotomic>().unwrap(), z);
        assert_eq!("w (n=4)".parse::<Cyclotomic>().unwrap(), Cyclotomic::root_of_unity(4, 1));
        assert_eq!("0 (n=7)".parse::<Cyclotomic>().unwrap(), Cyclotomic::zero());
        let j = serde_json::to_string(&z).unwrap();
        assert_eq!(
            j,
            r#"{"n":12,"coords":[["-2","3"],["0","1"],["-4","3"],["2","3"]]}"#
        );
        assert_eq!(serde_json::from_str::<Cyclotomic>(&j).unwrap(), z);
    }

    #[test]
    fn minimal_conductor() {
        let z = Cyclotomic::from_ints(3, &[1, 2]).lift(12);
        let m = z.minimal();
        assert_eq!(m.conductor(), 3);
        assert_eq!(m, z);
        assert_eq!(Cyclotomic::from_integer(5).lift(60).minimal().conductor(), 1);
    }
}
