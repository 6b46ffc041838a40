//! Orbital basis forms, their structure constants, the determinant of a generic
//! invariant form, its factorization into linear factors, commutative coarsening
//! and the invariant scalar products on irreducible components.

use std::cmp::Ordering;
use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::{recognize, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use crate::perm::{Perm, PermGroup};
use crate::poly::Poly;

/// Largest rank accepted by [`det_poly`].
pub const MAX_RANK: usize = 8;
/// Largest degree accepted by [`det_poly`].
pub const MAX_DEGREE: usize = 16;
/// Random combinations tried by [`factor_det`] before giving up.
pub const FACTOR_ATTEMPTS: usize = 6;

const EIGEN_RESIDUAL: f64 = 1e-6;

/// A (0,1) matrix invariant under the group, usually one orbital.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisForm {
    pub index: usize,
    /// Display name, `A3` for an orbital or `A3+A4+A5` for a merged form.
    pub name: String,
    pub matrix: Vec<Vec<u8>>,
}

impl BasisForm {
    pub fn degree(&self) -> usize {
        self.matrix.len()
    }

    /// Row sum, constant for orbital matrices of transitive actions.
    pub fn valency(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.iter().map(|&x| x as usize).sum())
    }

    pub fn transpose(&self) -> Vec<Vec<u8>> {
        transpose(&self.matrix)
    }

    fn to_i64(&self) -> Vec<Vec<i64>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect()
    }
}

fn transpose<T: Copy>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect()
}

fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Orbital matrices of the action, in orbital order.
pub fn basis_forms(group: &PermGroup) -> Vec<BasisForm> {
    group
        .orbitals()
        .into_iter()
        .map(|o| BasisForm {
            index: o.index,
            name: format!("A{}", o.index + 1),
            matrix: o.matrix(),
        })
        .collect()
}

/// Wraps arbitrary (0,1) matrices as basis forms named `A1, A2, …`.
pub fn forms_from_matrices(matrices: Vec<Vec<Vec<u8>>>) -> Vec<BasisForm> {
    matrices
        .into_iter()
        .enumerate()
        .map(|(i, matrix)| BasisForm {
            index: i,
            name: format!("A{}", i + 1),
            matrix,
        })
        .collect()
}

/// Index of the form containing each position.
fn labels(basis: &[BasisForm]) -> Result<Vec<Vec<usize>>> {
    let n = basis.first().map_or(0, BasisForm::degree);
    let mut lab = vec![vec![usize::MAX; n]; n];
    for f in basis {
        if f.degree() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: f.degree(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                if f.matrix[i][j] != 0 {
                    if lab[i][j] != usize::MAX {
                        return Err(Error::Invalid("basis forms overlap".into()));
                    }
                    lab[i][j] = f.index;
                }
            }
        }
    }
    if lab.iter().flatten().any(|&l| l == usize::MAX) {
        return Err(Error::Invalid("basis forms do not cover every position".into()));
    }
    Ok(lab)
}

/// Ring constants `A_p A_q = Σ_r alpha[p][q][r] A_r` and commutator constants
/// `[A_p, A_q] = Σ_r gamma[p][q][r] A_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTables {
    pub alpha: Vec<Vec<Vec<i64>>>,
    pub gamma: Vec<Vec<Vec<i64>>>,
}

impl StructureTables {
    pub fn rank(&self) -> usize {
        self.alpha.len()
    }

    pub fn commute(&self, p: usize, q: usize) -> bool {
        self.gamma[p][q].iter().all(|&g| g == 0)
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|p| (p + 1..r).all(|q| self.commute(p, q)))
    }
}

pub fn structure_tables(basis: &[BasisForm]) -> Result<StructureTables> {
    let lab = labels(basis)?;
    let r = basis.len();
    let mats: Vec<Vec<Vec<i64>>> = basis.iter().map(BasisForm::to_i64).collect();
    let mut alpha = vec![vec![vec![0i64; r]; r]; r];
    for p in 0..r {
        for q in 0..r {
            let prod = int_mul(&mats[p], &mats[q]);
            let mut coeff: Vec<Option<i64>> = vec![None; r];
            for (i, row) in prod.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    let s = lab[i][j];
                    match coeff[s] {
                        None => coeff[s] = Some(v),
                        Some(c) if c != v => return Err(Error::NotInRing { p: p + 1, q: q + 1 }),
                        _ => {}
                    }
                }
            }
            for s in 0..r {
                alpha[p][q][s] = coeff[s].unwrap_or(0);
            }
        }
    }
    let gamma = (0..r)
        .map(|p| {
            (0..r)
                .map(|q| (0..r).map(|s| alpha[p][q][s] - alpha[q][p][s]).collect())
                .collect()
        })
        .collect();
    Ok(StructureTables { alpha, gamma })
}

/// Determinant of `Σ a_r A_r` as an integer polynomial in `a_1 … a_R`.
/// With `fix_a1` the diagonal coefficient is set to 1 after expansion.
pub fn det_poly(basis: &[BasisForm], fix_a1: bool) -> Result<Poly<BigInt>> {
    let r = basis.len();
    let n = basis.first().map_or(0, BasisForm::degree);
    if r > MAX_RANK || n > MAX_DEGREE {
        return Err(Error::ScaleExceeded(format!(
            "rank {r} and degree {n} exceed limits {MAX_RANK} and {MAX_DEGREE}"
        )));
    }
    let lab = labels(basis)?;
    let mut m: Vec<Vec<Poly<BigInt>>> = lab
        .iter()
        .map(|row| row.iter().map(|&l| Poly::var(r, l)).collect())
        .collect();
    let det = bareiss(&mut m, r);
    Ok(if fix_a1 {
        det.substitute(0, &BigInt::one())
    } else {
        det
    })
}

/// Fraction-free elimination; consumes the matrix.
pub fn bareiss<C: crate::poly::Coeff>(m: &mut [Vec<Poly<C>>], nvars: usize) -> Poly<C> {
    let n = m.len();
    if n == 0 {
        return Poly::constant(nvars, C::one());
    }
    let mut negate = false;
    let mut prev = Poly::constant(nvars, C::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss quotients are exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// One factor `E^exponent` of a determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub poly: Poly<Cyclotomic>,
    pub exponent: usize,
}

impl Factor {
    /// Degree of the factor, the multiplicity of its component.
    pub fn multiplicity(&self) -> u32 {
        self.poly.total_degree().unwrap_or(0)
    }

    /// Coefficients of a linear factor, `None` otherwise.
    pub fn linear_coeffs(&self) -> Option<Vec<Cyclotomic>> {
        if !self.poly.is_homogeneous(1) {
            return None;
        }
        let r = self.poly.nvars();
        Some(
            (0..r)
                .map(|i| {
                    let mut m = vec![0; r];
                    m[i] = 1;
                    self.poly.coeff(&m)
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationResult {
    pub factors: Vec<Factor>,
    pub conductor: u32,
    pub seed: u64,
    /// Random combinations used, including the successful one.
    pub attempts: usize,
}

impl FactorizationResult {
    pub fn exponents(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.exponent).collect()
    }

    /// Π E_k^{d_k} expanded.
    pub fn expand(&self, nvars: usize) -> Poly<Cyclotomic> {
        self.factors
            .iter()
            .fold(Poly::constant(nvars, Cyclotomic::one()), |acc, f| {
                &acc * &f.poly.pow(f.exponent as u32)
            })
    }
}

fn check_commuting(basis: &[BasisForm]) -> Result<()> {
    let mats: Vec<Vec<Vec<i64>>> = basis.iter().map(BasisForm::to_i64).collect();
    for p in 0..mats.len() {
        for q in p + 1..mats.len() {
            if int_mul(&mats[p], &mats[q]) != int_mul(&mats[q], &mats[p]) {
                return Err(Error::NonCommutative { p: p + 1, q: q + 1 });
            }
        }
    }
    Ok(())
}

/// Random Hermitian element of the algebra spanned by the forms and their transposes.
fn random_hermitian(basis: &[BasisForm], rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let n = basis[0].degree();
    let mut h = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for f in basis {
        let c: f64 = rng.gen_range(-1.0..1.0);
        let d: f64 = rng.gen_range(-1.0..1.0);
        for i in 0..n {
            for j in 0..n {
                if f.matrix[i][j] != 0 {
                    h[(i, j)] += Complex64::new(c, d);
                    h[(j, i)] += Complex64::new(c, -d);
                }
            }
        }
    }
    h
}

/// Eigenvalue tuples `(λ_1 … λ_R)` of the forms on the common eigenvectors of `h`.
fn eigen_tuples(basis: &[BasisForm], h: DMatrix<Complex64>) -> Option<Vec<Vec<Complex64>>> {
    let n = h.nrows();
    let eig = SymmetricEigen::new(h);
    let mats: Vec<DMatrix<Complex64>> = basis
        .iter()
        .map(|f| DMatrix::from_fn(n, n, |i, j| Complex64::new(f.matrix[i][j] as f64, 0.0)))
        .collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let v = eig.eigenvectors.column(k).into_owned();
        let mut tuple = Vec::with_capacity(basis.len());
        for a in &mats {
            let av = a * &v;
            let lambda = v.dotc(&av);
            if (av - &v * lambda).norm() > EIGEN_RESIDUAL {
                return None;
            }
            tuple.push(lambda);
        }
        out.push(tuple);
    }
    Some(out)
}

fn tie_key(coeffs: &[Cyclotomic]) -> Vec<(f64, f64)> {
    let round = |x: f64| (x * 1e9).round() / 1e9;
    coeffs
        .iter()
        .map(|c| {
            let z = c.to_complex();
            (-round(z.im), -round(z.re))
        })
        .collect()
}

/// Splits `det(Σ a_r A_r)` of a commuting basis into linear factors over ℚ(ω_conductor).
///
/// `det` may have `a_1` symbolic or fixed to 1. The factors are found from
/// common eigenvectors of a random Hermitian combination, recognized exactly
/// and accepted only if their product re-expands to `det`.
pub fn factor_det(
    basis: &[BasisForm],
    det: &Poly<BigInt>,
    conductor: u32,
    seed: u64,
) -> Result<FactorizationResult> {
    if basis.is_empty() {
        return Err(Error::Invalid("empty basis".into()));
    }
    check_commuting(basis)?;
    let r = basis.len();
    let n = basis[0].degree();
    let fixed = !det.is_homogeneous(n as u32);
    let target = det.map_coeffs(|c| Cyclotomic::from_rational(Rational::from_integer(c.clone())));
    let valencies: Vec<Cyclotomic> = basis
        .iter()
        .map(|f| Cyclotomic::from_integer(f.valency() as i64))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reason = String::from("no attempt made");
    for attempt in 1..=FACTOR_ATTEMPTS {
        let h = random_hermitian(basis, &mut rng);
        let Some(tuples) = eigen_tuples(basis, h) else {
            reason = "random combination did not separate the eigenspaces".into();
            continue;
        };
        let mut groups: Vec<(Vec<Cyclotomic>, usize)> = Vec::new();
        let mut cache: HashMap<(i64, i64), Cyclotomic> = HashMap::new();
        let mut failed = None;
        'vectors: for tuple in &tuples {
            let mut exact = Vec::with_capacity(r);
            for &z in tuple {
                let key = ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64);
                let c = match cache.get(&key) {
                    Some(c) => c.clone(),
                    None => match recognize(z, conductor, 1, n as u64) {
                        Ok(c) => {
                            cache.insert(key, c.clone());
                            c
                        }
                        Err(e) => {
                            failed = Some(e.to_string());
                            break 'vectors;
                        }
                    },
                };
                exact.push(c);
            }
            match groups.iter_mut().find(|(t, _)| *t == exact) {
                Some((_, count)) => *count += 1,
                None => groups.push((exact, 1)),
            }
        }
        if let Some(msg) = failed {
            reason = msg;
            continue;
        }
        groups.sort_by(|(a, da), (b, db)| {
            let ta = *a == valencies;
            let tb = *b == valencies;
            tb.cmp(&ta)
                .then(da.cmp(db))
                .then_with(|| {
                    tie_key(a)
                        .partial_cmp(&tie_key(b))
                        .unwrap_or(Ordering::Equal)
                })
        });
        let result = FactorizationResult {
            factors: groups
                .into_iter()
                .map(|(coeffs, exponent)| Factor {
                    poly: Poly::linear(&coeffs),
                    exponent,
                })
                .collect(),
            conductor,
            seed,
            attempts: attempt,
        };
        let mut expanded = result.expand(r);
        if fixed {
            expanded = expanded.substitute(0, &Cyclotomic::one());
        }
        if expanded == target {
            return Ok(result);
        }
        reason = "product of recognized factors differs from the determinant".into();
    }
    Err(Error::FactorizationFailed {
        attempts: FACTOR_ATTEMPTS,
        reason,
    })
}

/// [`factor_det`] over the group exponent, retrying multiples 2e, 3e, 4e.
pub fn factor_with_retries(
    basis: &[BasisForm],
    det: &Poly<BigInt>,
    exponent: u32,
    seed: u64,
) -> Result<FactorizationResult> {
    let mut last = None;
    for mult in 1..=4 {
        match factor_det(basis, det, exponent * mult, seed) {
            Ok(f) => return Ok(f),
            Err(e @ Error::NonCommutative { .. }) => return Err(e),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Result of merging orbital forms into a commuting family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coarsening {
    /// Original form indices summed into each new form.
    pub groups: Vec<Vec<usize>>,
    pub forms: Vec<BasisForm>,
}

impl Coarsening {
    pub fn is_identity(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }
}

fn group_commutator(tables: &StructureTables, a: &[usize], b: &[usize]) -> bool {
    let r = tables.rank();
    (0..r).all(|s| {
        a.iter()
            .flat_map(|&p| b.iter().map(move |&q| (p, q)))
            .map(|(p, q)| tables.gamma[p][q][s])
            .sum::<i64>()
            == 0
    })
}

fn all_commute(tables: &StructureTables, groups: &[Vec<usize>]) -> bool {
    (0..groups.len())
        .all(|i| (i + 1..groups.len()).all(|j| group_commutator(tables, &groups[i], &groups[j])))
}

/// Subsets of `items` of size `k` in lexicographic order.
fn subsets_of(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    crate::perm::k_subsets(items.len(), k)
        .into_iter()
        .map(|s| s.into_iter().map(|i| items[i]).collect())
        .collect()
}

fn merge(groups: &[Vec<usize>], chosen: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = groups
        .iter()
        .enumerate()
        .filter(|(i, _)| !chosen.contains(i))
        .map(|(_, g)| g.clone())
        .collect();
    let mut merged: Vec<usize> = chosen.iter().flat_map(|&i| groups[i].clone()).collect();
    merged.sort_unstable();
    out.push(merged);
    out
}

/// Merges forms until the family commutes pairwise.
///
/// Each round looks for the smallest set of non-commuting members, first in
/// lexicographic order, whose sum makes the whole family commute. If no single
/// merge finishes the job, the first smallest set whose sum commutes with every
/// other member is merged and the search repeats.
pub fn coarsen_commutative(basis: &[BasisForm], tables: &StructureTables) -> Result<Coarsening> {
    let mut groups: Vec<Vec<usize>> = (0..basis.len()).map(|i| vec![i]).collect();
    loop {
        if all_commute(tables, &groups) {
            break;
        }
        let m = groups.len();
        let noncomm: Vec<usize> = (0..m)
            .filter(|&i| (0..m).any(|j| j != i && !group_commutator(tables, &groups[i], &groups[j])))
            .collect();
        let mut finished = None;
        let mut partial = None;
        'search: for k in 2..=noncomm.len() {
            for s in subsets_of(&noncomm, k) {
                let next = merge(&groups, &s);
                if all_commute(tables, &next) {
                    finished = Some(next);
                    break 'search;
                }
                let last = next.len() - 1;
                if partial.is_none()
                    && (0..last).all(|i| group_commutator(tables, &next[i], &next[last]))
                {
                    partial = Some(next);
                }
            }
        }
        match (finished, partial) {
            (Some(next), _) => {
                groups = next;
                break;
            }
            (None, Some(next)) => groups = next,
            (None, None) => return Err(Error::CoarseningFailed),
        }
    }
    let n = basis[0].degree();
    let forms = groups
        .iter()
        .enumerate()
        .map(|(idx, g)| {
            let mut matrix = vec![vec![0u8; n]; n];
            for &o in g {
                for i in 0..n {
                    for j in 0..n {
                        matrix[i][j] += basis[o].matrix[i][j];
                    }
                }
            }
            BasisForm {
                index: idx,
                name: g
                    .iter()
                    .map(|&o| basis[o].name.clone())
                    .collect::<Vec<_>>()
                    .join("+"),
                matrix,
            }
        })
        .collect();
    Ok(Coarsening { groups, forms })
}

/// Invariant scalar product on one component: `C_k · Σ x_r A_r` with `x_1 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantForm {
    /// Position of the component in the factorization.
    pub component: usize,
    pub coeffs: Vec<Cyclotomic>,
    pub normalization: Rational,
}

impl InvariantForm {
    /// Coefficients with the normalization applied.
    pub fn scaled(&self) -> Vec<Cyclotomic> {
        self.coeffs.iter().map(|c| c.scale(&self.normalization)).collect()
    }

    pub fn matrix(&self, basis: &[BasisForm]) -> Vec<Vec<Cyclotomic>> {
        combine(basis, &self.scaled())
    }
}

/// `Σ c_r A_r` as an exact matrix.
pub fn combine(basis: &[BasisForm], coeffs: &[Cyclotomic]) -> Vec<Vec<Cyclotomic>> {
    let n = basis[0].degree();
    let mut m = vec![vec![Cyclotomic::zero(); n]; n];
    for (f, c) in basis.iter().zip(coeffs) {
        for i in 0..n {
            for j in 0..n {
                if f.matrix[i][j] != 0 {
                    m[i][j] = &m[i][j] + c;
                }
            }
        }
    }
    m
}

/// Solves `E_j(1, x_2, …) = 0` for all `j ≠ k` and scales by `d_k / N`.
pub fn invariant_scalar_products(
    basis: &[BasisForm],
    factorization: &FactorizationResult,
) -> Result<Vec<InvariantForm>> {
    let n = basis.first().map_or(0, BasisForm::degree);
    let linear: Vec<Vec<Cyclotomic>> = factorization
        .factors
        .iter()
        .map(|f| {
            f.linear_coeffs()
                .ok_or_else(|| Error::Invalid("invariant forms need linear factors".into()))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(linear.len());
    for (k, factor) in factorization.factors.iter().enumerate() {
        let rows: Vec<&Vec<Cyclotomic>> = linear
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, e)| e)
            .collect();
        let a: Vec<Vec<Cyclotomic>> = rows.iter().map(|e| e[1..].to_vec()).collect();
        let b: Vec<Cyclotomic> = rows.iter().map(|e| -e[0].clone()).collect();
        let mut coeffs = vec![Cyclotomic::one()];
        if basis.len() > 1 {
            match linalg::solve(&a, &b) {
                Solution::Unique(x) => coeffs.extend(x.into_iter().map(|c| c.minimal())),
                _ => return Err(Error::SingularSystem { component: k + 1 }),
            }
        }
        out.push(InvariantForm {
            component: k,
            coeffs,
            normalization: Rational::new(BigInt::from(factor.exponent), BigInt::from(n)),
        });
    }
    Ok(out)
}

/// Factors the group determinant of the regular representation of a group of order ≤ 8.
///
/// Linear factors come from the one-dimensional characters. Groups this small
/// have at most one character of higher degree d, whose factor is the exact
/// d-th root of the remaining cofactor.
pub fn frobenius_check(group: &PermGroup) -> Result<FactorizationResult> {
    let elems: Vec<Perm> = group.elements()?.to_vec();
    let g = elems.len();
    if g > 8 {
        return Err(Error::ScaleExceeded(format!("group order {g} exceeds 8")));
    }
    let index: HashMap<Perm, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut m: Vec<Vec<Poly<Cyclotomic>>> = (0..g)
        .map(|a| {
            (0..g)
                .map(|b| Poly::var(g, index[&elems[a].then(&elems[b].inverse())]))
                .collect()
        })
        .collect();
    let det = bareiss(&mut m, g);
    let e = group.exponent()? as u32;
    let chars = linear_characters(&elems, &index, group.generators(), e);
    let mut cofactor = det;
    let mut factors = Vec::new();
    for chi in &chars {
        let coeffs: Vec<Cyclotomic> = chi
            .iter()
            .map(|&k| Cyclotomic::root_of_unity(e, k as i64).minimal())
            .collect();
        let lin = Poly::linear(&coeffs);
        cofactor = cofactor.div_exact(&lin).ok_or_else(|| Error::FactorizationFailed {
            attempts: 1,
            reason: "linear character does not divide the group determinant".into(),
        })?;
        factors.push(Factor {
            poly: lin,
            exponent: 1,
        });
    }
    let rest = cofactor.total_degree().unwrap_or(0);
    if rest > 0 {
        let d = (rest as f64).sqrt().round() as u32;
        let root = (d * d == rest)
            .then(|| cofactor.nth_root(d))
            .flatten()
            .ok_or_else(|| Error::FactorizationFailed {
                attempts: 1,
                reason: "cofactor is not a perfect power".into(),
            })?;
        factors.push(Factor {
            poly: root,
            exponent: d as usize,
        });
    }
    Ok(FactorizationResult {
        factors,
        conductor: e,
        seed: 0,
        attempts: 1,
    })
}

/// One-dimensional characters as exponent vectors `χ(g) = ω_e^{k_g}` over `elems`.
fn linear_characters(
    elems: &[Perm],
    index: &HashMap<Perm, usize>,
    gens: &[Perm],
    e: u32,
) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = (e as usize).pow(gens.len() as u32);
    for code in 0..total {
        let mut c = code;
        let on_gens: Vec<u32> = gens
            .iter()
            .map(|_| {
                let k = (c % e as usize) as u32;
                c /= e as usize;
                k
            })
            .collect();
        let mut chi = vec![u32::MAX; elems.len()];
        chi[0] = 0;
        let mut queue = vec![0usize];
        let mut ok = true;
        while let Some(a) = queue.pop() {
            for (s, gen) in gens.iter().enumerate() {
                let b = index[&elems[a].then(gen)];
                let val = (chi[a] + on_gens[s]) % e;
                if chi[b] == u32::MAX {
                    chi[b] = val;
                    queue.push(b);
                } else if chi[b] != val {
                    ok = false;
                }
            }
        }
        if ok {
            out.push(chi);
        }
    }
    out
}

/// Every stage of the forms pipeline for one permutation action.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub orbitals: Vec<BasisForm>,
    pub tables: StructureTables,
    pub coarsening: Coarsening,
    /// Basis actually factored: the orbitals, or their coarsening.
    pub basis: Vec<BasisForm>,
    pub det: Poly<BigInt>,
    pub factorization: FactorizationResult,
    pub forms: Vec<InvariantForm>,
}

impl Decomposition {
    /// Dimension `d_k` of each component.
    pub fn dimensions(&self) -> Vec<usize> {
        self.factorization.exponents()
    }
}

/// Orbitals, tables, coarsening, determinant, factors and invariant forms.
pub fn decompose(group: &PermGroup, seed: u64) -> Result<Decomposition> {
    let orbitals = basis_forms(group);
    let tables = structure_tables(&orbitals)?;
    let coarsening = coarsen_commutative(&orbitals, &tables)?;
    let basis = coarsening.forms.clone();
    let det = det_poly(&basis, false)?;
    let exponent = group.exponent()? as u32;
    let factorization = factor_with_retries(&basis, &det, exponent, seed)?;
    let forms = invariant_scalar_products(&basis, &factorization)?;
    Ok(Decomposition {
        orbitals,
        tables,
        coarsening,
        basis,
        det,
        factorization,
        forms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::default_names;

    fn c3() -> PermGroup {
        PermGroup::from_strings(3, &["(1,2,3)"], "C3").unwrap()
    }

    #[test]
    fn c3_determinant() {
        let basis = basis_forms(&c3());
        let det = det_poly(&basis, false).unwrap();
        assert_eq!(
            det.render(&default_names(3)),
            "a1^3 - 3*a1*a2*a3 + a2^3 + a3^3"
        );
    }

    #[test]
    fn identity_basis() {
        let g = PermGroup::new(1, vec![], "1").unwrap();
        let basis = basis_forms(&g);
        let det = det_poly(&basis, false).unwrap();
        let f = factor_det(&basis, &det, 1, 0).unwrap();
        assert_eq!(f.exponents(), vec![1]);
    }

    #[test]
    fn c3_factorization_and_forms() {
        let basis = basis_forms(&c3());
        let det = det_poly(&basis, true).unwrap();
        let f = factor_det(&basis, &det, 3, 7).unwrap();
        assert_eq!(f.exponents(), vec![1, 1, 1]);
        let forms = invariant_scalar_products(&basis, &f).unwrap();
        let third = Rational::new(1.into(), 3.into());
        assert_eq!(forms[0].scaled(), vec![Cyclotomic::from_rational(third); 3]);
    }

    #[test]
    fn frobenius_small_groups() {
        let c2 = PermGroup::from_strings(2, &["(1,2)"], "C2").unwrap();
        assert_eq!(frobenius_check(&c2).unwrap().exponents(), vec![1, 1]);
        let s3 = PermGroup::from_strings(3, &["(1,2)", "(1,2,3)"], "S3").unwrap();
        let f = frobenius_check(&s3).unwrap();
        assert_eq!(f.exponents(), vec![1, 1, 2]);
        assert_eq!(f.factors[2].multiplicity(), 2);
    }

    #[test]
    fn commutative_ring_needs_no_coarsening() {
        let basis = basis_forms(&c3());
        let t = structure_tables(&basis).unwrap();
        assert!(coarsen_commutative(&basis, &t).unwrap().is_identity());
    }
}
