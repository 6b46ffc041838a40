//! Lattice path sums over roots of unity and the binomial spacetime model.
//!
//! A walker on ℤ stays put (weight 1) or steps to a neighbour (weight w = ω_M).
//! Summing over paths gives the amplitude A_x^t(w), an element of ℤ[ω_M].
//! The second half of the module treats the ±1 walk as Bernoulli trials and
//! compares exact conditional probabilities with their Gaussian limit.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// Largest time horizon accepted by the exact routines.
pub const T_CAP: u32 = 5000;

fn check_horizon(t: u32) -> Result<()> {
    if t > T_CAP {
        return Err(Error::ScaleExceeded(format!("T = {t} exceeds {T_CAP}")));
    }
    Ok(())
}

/// Coefficients of A_x^t as a polynomial in w: entry τ counts paths with τ moves.
pub fn amplitude_polynomial(t: u32, x: i64) -> Result<Vec<BigInt>> {
    check_horizon(t)?;
    let tt = i64::from(t);
    if x.abs() > tt {
        return Err(Error::OutOfCone { x, t: tt });
    }
    let ax = x.unsigned_abs();
    let mut coeffs = vec![BigInt::zero(); t as usize + 1];
    // τ = |x| + 2k moves: k left-right pairs on top of the net displacement.
    let mut c: BigInt = binomial(BigInt::from(t), BigInt::from(ax));
    let mut tau = ax;
    let mut k = 0u64;
    loop {
        coeffs[tau as usize] = c.clone();
        if tau + 2 > u64::from(t) {
            break;
        }
        let rest = u64::from(t) - tau;
        c = c * BigInt::from(rest) * BigInt::from(rest - 1);
        c /= BigInt::from(k + 1) * BigInt::from(ax + k + 1);
        tau += 2;
        k += 1;
    }
    Ok(coeffs)
}

fn eval_at_root(m: u32, coeffs: &[BigInt]) -> Cyclotomic {
    let mut raw = vec![Rational::zero(); m as usize];
    for (tau, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            raw[tau % m as usize] += Rational::from_integer(c.clone());
        }
    }
    Cyclotomic::reduce(m, raw).minimal()
}

fn check_order(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::Invalid("root order M must be at least 1".into()));
    }
    Ok(())
}

/// A_x^t(ω_M).
pub fn amplitude(m: u32, t: u32, x: i64) -> Result<Cyclotomic> {
    check_order(m)?;
    Ok(eval_at_root(m, &amplitude_polynomial(t, x)?))
}

/// All amplitudes at time `t` for x in [−t, t].
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeTable {
    pub m: u32,
    pub t: u32,
    values: Vec<Cyclotomic>,
}

impl AmplitudeTable {
    pub fn new(m: u32, t: u32) -> Result<Self> {
        check_order(m)?;
        let tt = i64::from(t);
        let values = (-tt..=tt)
            .map(|x| amplitude(m, t, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(AmplitudeTable { m, t, values })
    }

    /// A_x^t, zero outside the cone.
    pub fn get(&self, x: i64) -> Cyclotomic {
        let tt = i64::from(self.t);
        if x.abs() > tt {
            return Cyclotomic::zero();
        }
        self.values[(x + tt) as usize].clone()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Cyclotomic)> {
        let tt = i64::from(self.t);
        self.values.iter().enumerate().map(move |(i, v)| (i as i64 - tt, v))
    }

    pub fn total(&self) -> Cyclotomic {
        self.values.iter().fold(Cyclotomic::zero(), |acc, v| &acc + v)
    }
}

/// A point source: position on the line and phase exponent k (phase ω_M^k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Source {
    pub position: i64,
    pub phase: i64,
}

impl Source {
    pub fn new(position: i64, phase: i64) -> Self {
        Source { position, phase }
    }
}

/// Parses `pos:phase` pairs separated by commas, e.g. `-4:0,4:2`.
pub fn parse_sources(text: &str) -> Result<Vec<Source>> {
    text.split(',')
        .map(|item| {
            let (p, k) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected pos:phase, got {item:?}")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
            };
            Ok(Source::new(num(p)?, num(k)?))
        })
        .collect()
}

/// Superposed amplitudes and intensities of several sources after `t` steps.
#[derive(Clone, Debug)]
pub struct InterferenceProfile {
    pub m: u32,
    pub t: u32,
    pub sources: Vec<Source>,
    pub positions: Vec<i64>,
    pub amplitudes: Vec<Cyclotomic>,
    /// |A|² = A·conj(A), real but rational only for some M.
    pub intensities: Vec<Cyclotomic>,
}

impl InterferenceProfile {
    pub fn total_intensity(&self) -> Cyclotomic {
        self.intensities
            .iter()
            .fold(Cyclotomic::zero(), |acc, v| &acc + v)
    }

    /// Intensities divided by their sum, exactly; all zero if the sum vanishes.
    pub fn probabilities(&self) -> Vec<Cyclotomic> {
        let total = self.total_intensity();
        self.intensities
            .iter()
            .map(|i| i.checked_div(&total).unwrap_or_else(|_| Cyclotomic::zero()))
            .collect()
    }

    /// Normalized intensities as floats.
    pub fn normalized(&self) -> Vec<f64> {
        let vals: Vec<f64> = self.intensities.iter().map(|i| i.to_complex().re).collect();
        let total: f64 = vals.iter().sum();
        if total == 0.0 {
            return vec![0.0; vals.len()];
        }
        vals.iter().map(|v| v / total).collect()
    }

    pub fn zero_positions(&self) -> Vec<i64> {
        self.positions
            .iter()
            .zip(&self.amplitudes)
            .filter(|(_, a)| a.is_zero())
            .map(|(&x, _)| x)
            .collect()
    }

    pub fn intensity_at(&self, x: i64) -> Option<&Cyclotomic> {
        let i = self.positions.iter().position(|&p| p == x)?;
        Some(&self.intensities[i])
    }
}

/// Superposes the shifted amplitude tables of `sources`, each weighted by ω_M^phase.
///
/// Positions run over every point reachable from some source.
pub fn interference(m: u32, t: u32, sources: &[Source]) -> Result<InterferenceProfile> {
    if sources.is_empty() {
        return Err(Error::Invalid("at least one source is required".into()));
    }
    let tt = i64::from(t);
    if let Some(s) = sources.iter().find(|s| s.position.abs() > tt) {
        return Err(Error::OutOfCone {
            x: s.position,
            t: tt,
        });
    }
    let table = AmplitudeTable::new(m, t)?;
    let lo = sources.iter().map(|s| s.position).min().unwrap_or(0) - tt;
    let hi = sources.iter().map(|s| s.position).max().unwrap_or(0) + tt;
    let phases: Vec<Cyclotomic> = sources
        .iter()
        .map(|s| Cyclotomic::root_of_unity(m, s.phase))
        .collect();
    let positions: Vec<i64> = (lo..=hi).collect();
    let amplitudes: Vec<Cyclotomic> = positions
        .iter()
        .map(|&x| {
            sources
                .iter()
                .zip(&phases)
                .fold(Cyclotomic::zero(), |acc, (s, w)| {
                    &acc + &(w * &table.get(x - s.position))
                })
                .minimal()
        })
        .collect();
    let intensities = amplitudes
        .iter()
        .map(|a| (a * &a.conjugate()).minimal())
        .collect();
    Ok(InterferenceProfile {
        m,
        t,
        sources: sources.to_vec(),
        positions,
        amplitudes,
        intensities,
    })
}

/// The two-source configuration family searched for destructive interference:
/// sources at −d (phase 0) and +d (phase k), 1 ≤ d ≤ `max_distance`, 0 ≤ k < M,
/// d ≤ T ≤ `max_t`.
///
/// A zero at x = 0 with ω_M^k = −1 is forced by mirror symmetry alone and is not
/// counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DestructiveFamily {
    pub max_t: u32,
    pub max_distance: u32,
}

impl Default for DestructiveFamily {
    fn default() -> Self {
        DestructiveFamily {
            max_t: 20,
            max_distance: 4,
        }
    }
}

/// A configuration of the family with an exact zero of the total amplitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DestructiveWitness {
    pub m: u32,
    pub t: u32,
    pub distance: u32,
    pub phase: i64,
    pub x: i64,
}

/// First witness for order `m` in the family, scanning T, then d, then k, then x.
pub fn destructive_witness(m: u32, family: DestructiveFamily) -> Result<Option<DestructiveWitness>> {
    check_order(m)?;
    for t in 1..=family.max_t {
        let table = AmplitudeTable::new(m, t)?;
        let tt = i64::from(t);
        for d in 1..=family.max_distance.min(t) {
            let d = i64::from(d);
            for k in 0..i64::from(m) {
                let w = Cyclotomic::root_of_unity(m, k);
                let mirror = 2 * k == i64::from(m);
                for x in (-d - tt)..=(d + tt) {
                    if mirror && x == 0 {
                        continue;
                    }
                    let total = &table.get(x + d) + &(&w * &table.get(x - d));
                    if total.is_zero() {
                        return Ok(Some(DestructiveWitness {
                            m,
                            t,
                            distance: d as u32,
                            phase: k,
                            x,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Smallest M ≤ `max_m` whose family contains a destructive configuration.
pub fn smallest_destructive_order(
    max_m: u32,
    family: DestructiveFamily,
) -> Result<Option<DestructiveWitness>> {
    for m in 1..=max_m {
        if let Some(w) = destructive_witness(m, family)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// A point of the ±1 walk: n₁ right steps and n₂ left steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpacetimePoint {
    pub n1: u64,
    pub n2: u64,
}

impl SpacetimePoint {
    pub fn from_xt(x: i64, t: i64) -> Result<Self> {
        if t < 0 || x.abs() > t {
            return Err(Error::OutOfCone { x, t });
        }
        if (t - x) % 2 != 0 {
            return Err(Error::ParityViolation { x, t });
        }
        Ok(SpacetimePoint {
            n1: ((t + x) / 2) as u64,
            n2: ((t - x) / 2) as u64,
        })
    }

    pub fn t(&self) -> i64 {
        (self.n1 + self.n2) as i64
    }

    pub fn x(&self) -> i64 {
        self.n1 as i64 - self.n2 as i64
    }
}

/// n! for n ≤ limit, computed once.
struct Factorials(Vec<BigInt>);

impl Factorials {
    fn up_to(limit: u64) -> Self {
        let mut f = Vec::with_capacity(limit as usize + 1);
        f.push(BigInt::one());
        for i in 1..=limit {
            let next = &f[i as usize - 1] * BigInt::from(i);
            f.push(next);
        }
        Factorials(f)
    }

    fn get(&self, n: u64) -> &BigInt {
        &self.0[n as usize]
    }
}

fn check_probability(p: &Rational) -> Result<()> {
    if p.is_negative() || p > &Rational::one() {
        return Err(Error::DomainError(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// (n₁+n₂)!/(n₁!n₂!) · p₁^n₁ · p₂^n₂ with p₂ = 1 − p₁.
pub fn binomial_probability(n1: u64, n2: u64, p1: &Rational) -> Result<Rational> {
    check_probability(p1)?;
    check_horizon(u32::try_from(n1 + n2).unwrap_or(u32::MAX))?;
    let p2 = Rational::one() - p1;
    let count: BigInt = binomial(BigInt::from(n1 + n2), BigInt::from(n1));
    let pow = |p: &Rational, e: u64| num_traits::pow(p.clone(), e as usize);
    Ok(Rational::from_integer(count) * pow(p1, n1) * pow(&p2, n2))
}

/// Probability that a walk from the origin to (X, T) passes through (x, t).
///
/// Independent of the step probabilities.
pub fn conditional_probability(point: (i64, i64), end: (i64, i64)) -> Result<Rational> {
    let (x, t) = point;
    let (big_x, big_t) = end;
    SpacetimePoint::from_xt(big_x, big_t)?;
    check_horizon(u32::try_from(big_t).unwrap_or(u32::MAX))?;
    let first = SpacetimePoint::from_xt(x, t)?;
    if t > big_t {
        return Err(Error::OutOfCone { x, t });
    }
    let second = SpacetimePoint::from_xt(big_x - x, big_t - t)
        .map_err(|_| Error::OutOfCone { x, t })?;
    let whole = SpacetimePoint::from_xt(big_x, big_t)?;
    let f = Factorials::up_to(big_t as u64);
    let num = f.get(first.n1 + first.n2)
        * f.get(second.n1 + second.n2)
        * f.get(whole.n1)
        * f.get(whole.n2);
    let den = f.get(first.n1)
        * f.get(first.n2)
        * f.get(second.n1)
        * f.get(second.n2)
        * f.get(whole.n1 + whole.n2);
    Ok(Rational::new(num, den))
}

/// Conditional probabilities of every interior point (0 < t < T) compatible with (X, T).
pub fn conditional_table(big_x: i64, big_t: i64) -> Result<Vec<((i64, i64), Rational)>> {
    SpacetimePoint::from_xt(big_x, big_t)?;
    let mut out = Vec::new();
    for t in 1..big_t {
        for x in (-t..=t).step_by(2) {
            if (big_x - x).abs() <= big_t - t {
                out.push(((x, t), conditional_probability((x, t), (big_x, big_t))?));
            }
        }
    }
    Ok(out)
}

/// Largest interior conditional probability and every point attaining it.
pub fn exact_maxima(big_x: i64, big_t: i64) -> Result<(Rational, Vec<(i64, i64)>)> {
    let table = conditional_table(big_x, big_t)?;
    let best = table
        .iter()
        .map(|(_, p)| p.clone())
        .max()
        .ok_or_else(|| Error::DomainError(format!("no interior points for T = {big_t}")))?;
    let points = table
        .into_iter()
        .filter(|(_, p)| *p == best)
        .map(|(pt, _)| pt)
        .collect();
    Ok((best, points))
}

fn check_velocity(v: f64) -> Result<()> {
    if !v.is_finite() || v.abs() >= 1.0 {
        return Err(Error::DomainError(format!("velocity {v} must satisfy |v| < 1")));
    }
    Ok(())
}

/// Gaussian approximation of the binomial distribution at (x, t) with drift v.
pub fn continuum_approx(x: f64, t: f64, v: f64) -> Result<f64> {
    check_velocity(v)?;
    if !(t.is_finite() && t > 0.0) || !x.is_finite() {
        return Err(Error::DomainError(format!("need t > 0, got x = {x}, t = {t}")));
    }
    let gamma = 1.0 - v * v;
    let u = (x - v * t) / gamma.sqrt();
    Ok((2.0 / (std::f64::consts::PI * t)).sqrt() / gamma.sqrt() * (-u * u / (2.0 * t)).exp())
}

/// Continuum counterpart of [`conditional_probability`].
pub fn approx_conditional(x: f64, t: f64, big_x: f64, big_t: f64, v: f64) -> Result<f64> {
    check_velocity(v)?;
    if !(t > 0.0 && t < big_t) || !x.is_finite() || !big_x.is_finite() {
        return Err(Error::DomainError(format!(
            "need 0 < t < T, got t = {t}, T = {big_t}"
        )));
    }
    let gamma = 1.0 - v * v;
    let s = gamma * t * big_t * (big_t - t);
    let d = big_x * t - x * big_t;
    Ok(big_t / (std::f64::consts::PI / 2.0 * s).sqrt() * (-d * d / (2.0 * s)).exp())
}

/// Grid points x = k·step in [−t, t] where [`approx_conditional`] is largest at time t.
pub fn approx_grid_argmax(t: f64, big_x: f64, big_t: f64, v: f64, step: f64) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::DomainError(format!("grid step {step} must be positive")));
    }
    let n = (t / step).floor().to_i64().unwrap_or(0);
    let grid: Vec<f64> = (-n..=n).map(|k| k as f64 * step).collect();
    let values = grid
        .iter()
        .map(|&x| approx_conditional(x, t, big_x, big_t, v))
        .collect::<Result<Vec<_>>>()?;
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(grid
        .into_iter()
        .zip(values)
        .filter(|(_, val)| (best - val).abs() <= 1e-12 * best)
        .map(|(x, _)| x)
        .collect())
}
