//! Natural state vectors, invariant pairings and exact Born probabilities.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::forms::{BasisForm, Decomposition};
use crate::perm::Orbital;

/// Occupation numbers of a natural state vector.
pub type StateVector = Vec<u64>;

/// Parses `1,1,2` (whitespace tolerated).
pub fn parse_vector(text: &str) -> Result<StateVector> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("`{t}` is not a natural number")))
        })
        .collect()
}

fn check_dims(n: usize, m: &[u64], v: &[u64]) -> Result<()> {
    for len in [m.len(), v.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: len,
            });
        }
    }
    Ok(())
}

/// `Σ_{(i,j)∈Δ} m_i n_j` over the pairs of one orbital.
pub fn orbital_pairing(orbital: &Orbital, m: &[u64], n: &[u64]) -> Result<u128> {
    check_dims(orbital.degree, m, n)?;
    Ok(orbital
        .pairs
        .iter()
        .map(|&(i, j)| m[i] as u128 * n[j] as u128)
        .sum())
}

/// `mᵀ A n` for a (0,1) basis form.
pub fn form_pairing(form: &BasisForm, m: &[u64], n: &[u64]) -> Result<u128> {
    check_dims(form.degree(), m, n)?;
    let mut acc = 0u128;
    for (i, row) in form.matrix.iter().enumerate() {
        if m[i] == 0 {
            continue;
        }
        let inner: u128 = row
            .iter()
            .zip(n)
            .map(|(&a, &nj)| a as u128 * nj as u128)
            .sum();
        acc += m[i] as u128 * inner;
    }
    Ok(acc)
}

/// An invariant scalar product `Σ c_r A_r` on one component.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentForm {
    pub label: String,
    pub basis: Vec<BasisForm>,
    pub coeffs: Vec<Cyclotomic>,
}

impl ComponentForm {
    pub fn new(label: impl Into<String>, basis: Vec<BasisForm>, coeffs: Vec<Cyclotomic>) -> Result<Self> {
        if basis.len() != coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: coeffs.len(),
            });
        }
        Ok(ComponentForm {
            label: label.into(),
            basis,
            coeffs,
        })
    }

    /// Component `k` (0-based) of a decomposition, with its normalization applied.
    pub fn from_decomposition(dec: &Decomposition, k: usize) -> Result<Self> {
        let form = dec.forms.get(k).ok_or(Error::OutOfRange {
            point: k + 1,
            degree: dec.forms.len(),
        })?;
        ComponentForm::new(format!("{}", k + 1), dec.basis.clone(), form.scaled())
    }

    pub fn degree(&self) -> usize {
        self.basis.first().map_or(0, BasisForm::degree)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.minimal().is_rational())
    }

    /// Sum of the distinct Galois conjugates of this form.
    pub fn combine_conjugates(&self) -> ComponentForm {
        let n = self.coeffs.iter().fold(1u32, |acc, c| acc.lcm(&c.minimal().conductor()));
        let mut seen: Vec<Vec<Cyclotomic>> = Vec::new();
        for k in 1..=n.max(1) as i64 {
            if k.gcd(&(n as i64)) != 1 && n > 1 {
                continue;
            }
            let conj: Vec<Cyclotomic> = self
                .coeffs
                .iter()
                .map(|c| c.lift(n).galois(k).expect("k is a unit").minimal())
                .collect();
            if !seen.contains(&conj) {
                seen.push(conj);
            }
        }
        let mut sum = vec![Cyclotomic::zero(); self.coeffs.len()];
        for conj in &seen {
            for (s, c) in sum.iter_mut().zip(conj) {
                *s = &*s + c;
            }
        }
        ComponentForm {
            label: seen_label(&self.label, seen.len()),
            basis: self.basis.clone(),
            coeffs: sum.into_iter().map(|c| c.minimal()).collect(),
        }
    }
}

fn seen_label(label: &str, count: usize) -> String {
    if count > 1 {
        format!("{label}+conjugates")
    } else {
        label.to_string()
    }
}

/// Exact `⟨m|n⟩ = Σ_r c_r · mᵀ A_r n`.
pub fn scalar_product(form: &ComponentForm, m: &[u64], n: &[u64]) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::zero();
    for (b, c) in form.basis.iter().zip(&form.coeffs) {
        let p = form_pairing(b, m, n)?;
        if p != 0 {
            let q = Rational::from_integer(p.into());
            acc = &acc + &c.scale(&q);
        }
    }
    Ok(acc.minimal())
}

/// `|⟨m|n⟩|² / (⟨m|m⟩⟨n|n⟩)` as an exact cyclotomic number.
fn probability_value(form: &ComponentForm, m: &[u64], n: &[u64]) -> Result<Cyclotomic> {
    let mn = scalar_product(form, m, n)?;
    let mm = scalar_product(form, m, m)?;
    let nn = scalar_product(form, n, n)?;
    if mm.is_zero() || nn.is_zero() {
        return Err(Error::ZeroNorm);
    }
    let num = &mn * &mn.conjugate();
    Ok(num.checked_div(&(&mm * &nn))?.minimal())
}

/// Born probability; irrational values are an error unless `combine_conjugates`
/// asks for the Galois-combined form instead.
pub fn born_probability(
    form: &ComponentForm,
    m: &[u64],
    n: &[u64],
    combine_conjugates: bool,
) -> Result<Rational> {
    let p = probability_value(form, m, n)?;
    if let Some(q) = p.as_rational() {
        return Ok(q);
    }
    if combine_conjugates {
        let combined = form.combine_conjugates();
        let p = probability_value(&combined, m, n)?;
        if let Some(q) = p.as_rational() {
            return Ok(q);
        }
        return Err(Error::IrrationalProbability(p.to_string()));
    }
    Err(Error::IrrationalProbability(p.to_string()))
}

/// Whether `|⟨m|n⟩|² ≤ ⟨m|m⟩⟨n|n⟩`; exact when both sides are rational.
pub fn cauchy_check(form: &ComponentForm, m: &[u64], n: &[u64]) -> Result<bool> {
    let mn = scalar_product(form, m, n)?;
    let lhs = (&mn * &mn.conjugate()).minimal();
    let rhs = (&scalar_product(form, m, m)? * &scalar_product(form, n, n)?).minimal();
    match (lhs.as_rational(), rhs.as_rational()) {
        (Some(a), Some(b)) => Ok(a <= b),
        _ => Ok(lhs.to_complex().re <= rhs.to_complex().re + 1e-9 * rhs.to_complex().re.abs().max(1.0)),
    }
}

/// Exhaustive stream of pairs with `⟨m|n⟩ = 0` and nonzero norms.
///
/// Entries range over `1..=bound` when `require_positive`, else `0..=bound`.
/// Pairs come in lexicographic order of `(m, n)`.
pub struct DestructiveSearch<'a> {
    form: &'a ComponentForm,
    lo: u64,
    hi: u64,
    m: Option<Vec<u64>>,
    n: Option<Vec<u64>>,
    row: Vec<Cyclotomic>,
    norms: Vec<Option<bool>>,
}

impl<'a> DestructiveSearch<'a> {
    fn next_vector(&self, v: &mut [u64]) -> bool {
        for d in v.iter_mut().rev() {
            if *d < self.hi {
                *d += 1;
                return true;
            }
            *d = self.lo;
        }
        false
    }

    fn index(&self, v: &[u64]) -> usize {
        let base = (self.hi - self.lo + 1) as usize;
        v.iter().fold(0, |acc, &d| acc * base + (d - self.lo) as usize)
    }

    fn nonzero_norm(&mut self, v: &[u64]) -> bool {
        let i = self.index(v);
        if let Some(b) = self.norms[i] {
            return b;
        }
        let b = !scalar_product(self.form, v, v).expect("dimensions fixed").is_zero();
        self.norms[i] = Some(b);
        b
    }

    /// Row vector `mᵀ H` for the current `m`.
    fn load_row(&mut self) {
        let m = self.m.as_ref().expect("current m");
        let deg = self.form.degree();
        let mut row = vec![Cyclotomic::zero(); deg];
        for (b, c) in self.form.basis.iter().zip(&self.form.coeffs) {
            for (i, r) in b.matrix.iter().enumerate() {
                if m[i] == 0 {
                    continue;
                }
                let w = c.scale(&Rational::from_integer(m[i].into()));
                for (j, &a) in r.iter().enumerate() {
                    if a != 0 {
                        row[j] = &row[j] + &w;
                    }
                }
            }
        }
        self.row = row;
    }
}

impl Iterator for DestructiveSearch<'_> {
    type Item = (Vec<u64>, Vec<u64>);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let mut m = self.m.take()?;
            let mut n = match self.n.take() {
                Some(n) => n,
                None => {
                    self.m = Some(m.clone());
                    if !self.nonzero_norm(&m) {
                        if self.next_vector(&mut m) {
                            self.m = Some(m);
                        } else {
                            self.m = None;
                        }
                        continue;
                    }
                    self.load_row();
                    m = self.m.take().expect("restored");
                    vec![self.lo; m.len()]
                }
            };
            let dot = self
                .row
                .iter()
                .zip(&n)
                .fold(Cyclotomic::zero(), |acc, (r, &nj)| {
                    if nj == 0 {
                        acc
                    } else {
                        &acc + &r.scale(&Rational::from_integer(nj.into()))
                    }
                });
            let hit = dot.is_zero() && self.nonzero_norm(&n);
            let current = hit.then(|| (m.clone(), n.clone()));
            if self.next_vector(&mut n) {
                self.n = Some(n);
                self.m = Some(m);
            } else if self.next_vector(&mut m) {
                self.m = Some(m);
            }
            if current.is_some() {
                return current;
            }
        }
    }
}

pub fn destructive_search(form: &ComponentForm, bound: u64, require_positive: bool) -> DestructiveSearch<'_> {
    let lo = u64::from(require_positive);
    let deg = form.degree();
    let hi = bound.max(lo);
    let count = (hi - lo + 1).to_usize().and_then(|b| b.checked_pow(deg as u32)).unwrap_or(0);
    DestructiveSearch {
        form,
        lo,
        hi,
        m: (deg > 0 && count > 0).then(|| vec![lo; deg]),
        n: None,
        row: Vec::new(),
        norms: vec![None; count],
    }
}
