//! Sparse multivariate polynomials over exact coefficient rings.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cyclo::{format_rational, Cyclotomic, Rational};

/// Coefficient ring of a [`Poly`].
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `self / other` when the quotient exists in the ring.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    /// Text used when printing a polynomial; parenthesized when compound.
    fn render(&self) -> String;
    fn to_json(&self) -> Value;
}

impl Coeff for BigInt {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        json!(self.to_string())
    }
}

impl Coeff for Rational {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
    fn render(&self) -> String {
        format_rational(self)
    }
    fn to_json(&self) -> Value {
        json!(format_rational(self))
    }
}

impl Coeff for Cyclotomic {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.checked_div(other).ok()
    }
    fn render(&self) -> String {
        match self.as_rational() {
            Some(q) => format_rational(&q),
            None => format!("({self})"),
        }
    }
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("cyclotomic serializes")
    }
}

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Polynomial in `nvars` variables, stored as monomial → nonzero coefficient.
/// Map order is lexicographic with the first variable most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable with index `i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, C::one());
        p
    }

    /// Linear form Σ c_i x_i.
    pub fn linear(coeffs: &[C]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; n];
            m[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial length differs from variable count");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[u32]) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.iter().sum::<u32>() == degree)
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            p.add_term(m.clone(), a.clone() * c.clone());
        }
        p
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::constant(self.nvars, C::one());
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// Replaces variable `var` by the constant `value`.
    pub fn substitute(&self, var: usize, value: &C) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for _ in 0..m[var] {
                coeff = coeff * value.clone();
            }
            let mut m2 = m.clone();
            m2[var] = 0;
            p.add_term(m2, coeff);
        }
        p
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "point dimension differs");
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    fn mul_term(&self, mono: &[u32], c: &C) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            let m2: Monomial = m.iter().zip(mono).map(|(x, y)| x + y).collect();
            p.terms.insert(m2, a.clone() * c.clone());
        }
        p.terms.retain(|_, v| !v.is_zero());
        p
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dm, dc) = divisor.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            if rm.iter().zip(&dm).any(|(r, d)| r < d) {
                return None;
            }
            let mono: Monomial = rm.iter().zip(&dm).map(|(r, d)| r - d).collect();
            let c = rc.div_exact(&dc)?;
            rem = &rem - &divisor.mul_term(&mono, &c);
            quot.add_term(mono, c);
        }
        Some(quot)
    }

    /// Exact `k`-th root of a polynomial with leading coefficient 1, if one exists.
    pub fn nth_root(&self, k: u32) -> Option<Self> {
        if k == 0 {
            return None;
        }
        let (lm, lc) = self.leading()?;
        if !lc.is_one() || lm.iter().any(|e| e % k != 0) {
            return None;
        }
        let mut root = Self::zero(self.nvars);
        let root_lm: Monomial = lm.iter().map(|e| e / k).collect();
        root.add_term(root_lm.clone(), C::one());
        let k_c = (0..k).fold(C::zero(), |acc, _| acc + C::one());
        // Leading term of k · LT(root)^{k-1}.
        let shift: Monomial = root_lm.iter().map(|e| e * (k - 1)).collect();
        let limit = 4 * self.terms.len() + 16;
        for _ in 0..limit {
            let diff = self - &root.pow(k);
            let Some((dm, dc)) = diff.leading() else {
                return Some(root);
            };
            if dm.iter().zip(&shift).any(|(d, s)| d < s) {
                return None;
            }
            let mono: Monomial = dm.iter().zip(&shift).map(|(d, s)| d - s).collect();
            if mono >= root_lm {
                return None;
            }
            root.add_term(mono, dc.div_exact(&k_c)?);
        }
        None
    }

    /// Human-readable form using the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        names[v].clone()
                    } else {
                        format!("{}^{}", names[v], e)
                    }
                })
                .collect();
            let mono = vars.join("*");
            let mut coeff = c.render();
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            match (coeff.as_str(), mono.is_empty()) {
                (_, true) => out.push_str(&coeff),
                ("1", false) => out.push_str(&mono),
                (_, false) => {
                    out.push_str(&coeff);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| json!({ "coeff": c.to_json(), "exponents": m }))
                .collect(),
        )
    }
}

/// Default variable names `a1, a2, …`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("a{i}")).collect()
}

impl<'a, C: Coeff> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<'a, C: Coeff> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl<'a, C: Coeff> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count differs");
        let mut p = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                p.add_term(m, c1.clone() * c2.clone());
            }
        }
        p
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -c.clone();
        }
        p
    }
}

/// Converts an integer polynomial to cyclotomic coefficients.
pub fn to_cyclotomic(p: &Poly<BigInt>) -> Poly<Cyclotomic> {
    p.map_coeffs(|c| Cyclotomic::from_rational(Rational::from_integer(c.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: i64) -> BigInt {
        BigInt::from(i)
    }

    #[test]
    fn arithmetic_and_division() {
        let x = Poly::<BigInt>::var(2, 0);
        let y = Poly::<BigInt>::var(2, 1);
        let s = &x + &y;
        let d = &x - &y;
        let prod = &s * &d;
        let expected = &x.pow(2) - &y.pow(2);
        assert_eq!(prod, expected);
        assert_eq!(prod.div_exact(&s), Some(d.clone()));
        assert_eq!(prod.div_exact(&(&x + &Poly::constant(2, z(1)))), None);
        assert!(prod.is_homogeneous(2));
        assert_eq!(prod.eval(&[z(3), z(2)]), z(5));
    }

    #[test]
    fn rendering() {
        let x = Poly::<BigInt>::var(2, 0);
        let y = Poly::<BigInt>::var(2, 1);
        let p = &(&x.pow(2) - &y.scale(&z(3))) + &Poly::constant(2, z(-2));
        assert_eq!(p.render(&default_names(2)), "a1^2 - 3*a2 - 2");
    }

    #[test]
    fn substitution() {
        let x = Poly::<BigInt>::var(2, 0);
        let y = Poly::<BigInt>::var(2, 1);
        let p = &(&x * &y) + &x.pow(3);
        let q = p.substitute(0, &z(2));
        assert_eq!(q, &y.scale(&z(2)) + &Poly::constant(2, z(8)));
    }
}
