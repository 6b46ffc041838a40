//! Finite relations as bitsets over a hypercube of point states, and their
//! structural analysis: extension, projection, base relation, canonical
//! decomposition and algebraic normal form over GF(2).
//!
//! Bit `i` of a relation describes the tuple whose mixed-radix encoding is `i`,
//! with the first listed point as the least significant digit. Equivalently,
//! tuples are listed in ascending lexicographic order read from the last point.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::Rule;
use crate::error::{Error, Result};

/// Subset of `Σ^δ` for an ordered list of named points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    points: Vec<String>,
    q: u32,
    bits: Vec<bool>,
}

/// On-disk relation: `{"points": [...], "q": 2, "bits": "0110"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub points: Vec<String>,
    pub q: u32,
    pub bits: String,
}

fn hypercube_size(q: u32, k: usize) -> Result<usize> {
    (q as usize)
        .checked_pow(k as u32)
        .filter(|&s| s <= 1 << 26)
        .ok_or_else(|| Error::ScaleExceeded(format!("{q}^{k} tuples")))
}

fn names<S: AsRef<str>>(points: &[S]) -> Vec<String> {
    points.iter().map(|p| p.as_ref().to_string()).collect()
}

impl Relation {
    fn with_bits(points: Vec<String>, q: u32, bits: Vec<bool>) -> Result<Self> {
        if q < 2 {
            return Err(Error::Invalid("relations need q ≥ 2".into()));
        }
        let distinct: BTreeSet<&String> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::Invalid("point labels must be distinct".into()));
        }
        let expected = hypercube_size(q, points.len())?;
        if bits.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: bits.len(),
            });
        }
        Ok(Relation { points, q, bits })
    }

    /// The whole hypercube `Σ^δ`.
    pub fn trivial<S: AsRef<str>>(points: &[S], q: u32) -> Result<Self> {
        let size = hypercube_size(q, points.len())?;
        Relation::with_bits(names(points), q, vec![true; size])
    }

    pub fn empty<S: AsRef<str>>(points: &[S], q: u32) -> Result<Self> {
        let size = hypercube_size(q, points.len())?;
        Relation::with_bits(names(points), q, vec![false; size])
    }

    /// Relation whose members satisfy `pred` (tuples are given as digit slices).
    pub fn from_predicate<S: AsRef<str>>(
        points: &[S],
        q: u32,
        pred: impl Fn(&[u32]) -> bool,
    ) -> Result<Self> {
        let k = points.len();
        let size = hypercube_size(q, k)?;
        let mut r = Relation::with_bits(names(points), q, vec![false; size])?;
        for i in 0..size {
            let t = r.decode(i);
            r.bits[i] = pred(&t);
        }
        Ok(r)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of member tuples.
    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn is_trivial(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn arity(&self) -> usize {
        self.points.len()
    }

    pub fn decode(&self, mut index: usize) -> Vec<u32> {
        let q = self.q as usize;
        let mut t = vec![0; self.points.len()];
        for d in t.iter_mut() {
            *d = (index % q) as u32;
            index /= q;
        }
        t
    }

    pub fn encode(&self, tuple: &[u32]) -> usize {
        tuple
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.q as usize + d as usize)
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        tuple.len() == self.arity()
            && tuple.iter().all(|&d| d < self.q)
            && self.bits[self.encode(tuple)]
    }

    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn to_file(&self) -> RelationFile {
        RelationFile {
            points: self.points.clone(),
            q: self.q,
            bits: self.bit_string(),
        }
    }

    pub fn from_file(file: &RelationFile) -> Result<Self> {
        relation_from_bits(&file.points, file.q, &file.bits)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RelationFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Relation::from_file(&file)
    }

    fn positions(&self, subset: &[String]) -> Option<Vec<usize>> {
        subset
            .iter()
            .map(|p| self.points.iter().position(|x| x == p))
            .collect()
    }

    fn same_shape(&self, other: &Relation) -> Result<()> {
        if self.points != other.points || self.q != other.q {
            return Err(Error::Invalid(format!(
                "relations on {:?} and {:?} are not aligned",
                self.points, other.points
            )));
        }
        Ok(())
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.same_shape(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| a && b).collect();
        Ok(Relation { bits, ..self.clone() })
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.same_shape(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| a || b).collect();
        Ok(Relation { bits, ..self.clone() })
    }

    pub fn complement(&self) -> Relation {
        Relation {
            bits: self.bits.iter().map(|&b| !b).collect(),
            ..self.clone()
        }
    }

    pub fn is_subset_of(&self, other: &Relation) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b))
    }

    /// `R × Σ^{δ∖τ}` on the ordered superset `delta`.
    pub fn extend<S: AsRef<str>>(&self, delta: &[S]) -> Result<Relation> {
        let delta = names(delta);
        let probe = Relation {
            points: delta.clone(),
            q: self.q,
            bits: Vec::new(),
        };
        let pos = probe.positions(&self.points).ok_or(Error::NotSuperset)?;
        let size = hypercube_size(self.q, delta.len())?;
        let mut bits = vec![false; size];
        let mut sub = vec![0u32; self.points.len()];
        for (i, b) in bits.iter_mut().enumerate() {
            let t = probe.decode(i);
            for (s, &p) in sub.iter_mut().zip(&pos) {
                *s = t[p];
            }
            *b = self.bits[self.encode(&sub)];
        }
        Relation::with_bits(delta, self.q, bits)
    }

    /// Existential projection onto the ordered subset `tau`.
    pub fn project<S: AsRef<str>>(&self, tau: &[S]) -> Result<Relation> {
        let tau = names(tau);
        let pos = self.positions(&tau).ok_or_else(|| {
            Error::Invalid(format!("{tau:?} is not a subset of {:?}", self.points))
        })?;
        let mut out = Relation::empty(&tau, self.q)?;
        let mut sub = vec![0u32; tau.len()];
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                let t = self.decode(i);
                for (s, &p) in sub.iter_mut().zip(&pos) {
                    *s = t[p];
                }
                let j = out.encode(&sub);
                out.bits[j] = true;
            }
        }
        Ok(out)
    }

    /// Same relation with its points listed in another order.
    pub fn reorder<S: AsRef<str>>(&self, order: &[S]) -> Result<Relation> {
        if order.len() != self.arity() {
            return Err(Error::Invalid("reorder needs the same point set".into()));
        }
        self.extend(order)
    }

    /// Equality as sets of assignments, ignoring point order.
    pub fn equivalent(&self, other: &Relation) -> bool {
        self.q == other.q
            && self.arity() == other.arity()
            && other.reorder(&self.points).is_ok_and(|r| r == *self)
    }

    /// Whether the value at `position` is determined by the others.
    pub fn is_functional_at(&self, position: usize) -> bool {
        if position >= self.arity() {
            return false;
        }
        let others: Vec<String> = self
            .points
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != position)
            .map(|(_, p)| p.clone())
            .collect();
        let mut seen = vec![false; hypercube_size(self.q, others.len()).unwrap_or(0)];
        let probe = Relation {
            points: others,
            q: self.q,
            bits: Vec::new(),
        };
        for (i, &b) in self.bits.iter().enumerate() {
            if !b {
                continue;
            }
            let mut t = self.decode(i);
            t.remove(position);
            let j = probe.encode(&t);
            if seen[j] {
                return false;
            }
            seen[j] = true;
        }
        true
    }

    /// Positions at which the relation is functional.
    pub fn functional_positions(&self) -> Vec<usize> {
        (0..self.arity()).filter(|&p| self.is_functional_at(p)).collect()
    }

    pub fn is_functional(&self) -> bool {
        !self.functional_positions().is_empty()
    }

    /// Multilinear polynomial over GF(2) vanishing exactly on the relation.
    pub fn to_anf(&self) -> Result<AnfPoly> {
        if self.q != 2 {
            return Err(Error::UnsupportedQ(self.q));
        }
        let k = self.arity();
        // Möbius transform of the complement indicator; tuple index doubles as monomial mask.
        let mut c: Vec<bool> = self.bits.iter().map(|&b| !b).collect();
        for bit in 0..k {
            let step = 1 << bit;
            for i in 0..c.len() {
                if i & step != 0 {
                    c[i] ^= c[i ^ step];
                }
            }
        }
        let monomials = c
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u64)
            .collect();
        Ok(AnfPoly {
            points: self.points.clone(),
            monomials,
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {{{}}}", self.bit_string(), self.points.join(","))
    }
}

/// Parses a bit string for `points` with `q` states each.
pub fn relation_from_bits<S: AsRef<str>>(points: &[S], q: u32, bits: &str) -> Result<Relation> {
    let parsed: Vec<bool> = bits
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse(format!("invalid bit `{c}`"))),
        })
        .collect::<Result<_>>()?;
    Relation::with_bits(names(points), q, parsed)
}

/// Multilinear GF(2) polynomial; bit `i` of a monomial mask is point `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnfPoly {
    pub points: Vec<String>,
    pub monomials: BTreeSet<u64>,
}

impl AnfPoly {
    fn vars(&self, mask: u64) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| mask >> i & 1 == 1).collect()
    }

    /// Value at a 0/1 tuple.
    pub fn eval(&self, tuple: &[u32]) -> u32 {
        let x = tuple
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &d)| acc | (d as u64 & 1) << i);
        self.monomials
            .iter()
            .filter(|&&m| x & m == m)
            .count() as u32
            % 2
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Terms by descending degree; equal degrees by descending variable lists.
    pub fn render(&self) -> String {
        if self.monomials.is_empty() {
            return "0".into();
        }
        let glue = if self.points.iter().all(|p| p.chars().count() == 1) {
            ""
        } else {
            "*"
        };
        let mut terms: Vec<Vec<usize>> = self.monomials.iter().map(|&m| self.vars(m)).collect();
        terms.sort_by(|a, b| {
            b.len().cmp(&a.len()).then_with(|| {
                let ra: Vec<usize> = a.iter().rev().copied().collect();
                let rb: Vec<usize> = b.iter().rev().copied().collect();
                rb.cmp(&ra)
            })
        });
        terms
            .iter()
            .map(|t| {
                if t.is_empty() {
                    "1".to_string()
                } else {
                    t.iter()
                        .map(|&i| self.points[i].as_str())
                        .collect::<Vec<_>>()
                        .join(glue)
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Intersection of the extensions of `relations` to the union of their domains,
/// listed in order of first appearance.
pub fn base_relation(relations: &[Relation]) -> Result<Relation> {
    let first = relations
        .first()
        .ok_or_else(|| Error::Invalid("base relation of an empty system".into()))?;
    let mut domain: Vec<String> = Vec::new();
    for r in relations {
        if r.q != first.q {
            return Err(Error::Invalid("relations use different q".into()));
        }
        for p in &r.points {
            if !domain.contains(p) {
                domain.push(p.clone());
            }
        }
    }
    let mut acc = Relation::trivial(&domain, first.q)?;
    for r in relations {
        acc = acc.intersection(&r.extend(&domain)?)?;
    }
    Ok(acc)
}

/// A proper consequence together with its face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consequence {
    pub face: Vec<String>,
    pub relation: Relation,
}

/// Nontrivial projections onto faces of codimension `1..=max_codim`.
///
/// Faces are listed by codimension, then by the lexicographic order of the
/// removed positions; a projection already implied by a larger face listed
/// earlier is still reported if nontrivial.
pub fn proper_consequences(r: &Relation, max_codim: usize) -> Result<Vec<Consequence>> {
    let k = r.arity();
    let mut out = Vec::new();
    for codim in 1..=max_codim.min(k.saturating_sub(1)) {
        for removed in crate::perm::k_subsets(k, codim) {
            let face: Vec<String> = (0..k)
                .filter(|i| !removed.contains(i))
                .map(|i| r.points[i].clone())
                .collect();
            let proj = r.project(&face)?;
            if !proj.is_trivial() {
                out.push(Consequence {
                    face,
                    relation: proj,
                });
            }
        }
    }
    Ok(out)
}

/// `R ∪ (Σ^δ ∖ ∩ extended consequences)`.
pub fn principal_factor(r: &Relation, consequences: &[Relation]) -> Result<Relation> {
    let mut meet = Relation::trivial(&r.points, r.q)?;
    for c in consequences {
        let ext = c.extend(&r.points)?;
        if !r.is_subset_of(&ext)? {
            return Err(Error::NotConsequence(c.points.clone()));
        }
        meet = meet.intersection(&ext)?;
    }
    r.union(&meet.complement())
}

/// Which consequences enter a canonical decomposition.
pub const CONSEQUENCE_CHOICE: &str = "nontrivial projections onto codimension-1 faces";

/// `R = P ∩ ∩ Q_i × Σ^{δ∖δ_i}` with the consequences from [`CONSEQUENCE_CHOICE`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalDecomposition {
    pub relation: Relation,
    pub consequences: Vec<Consequence>,
    pub factor: Relation,
    pub reducible: bool,
    pub prime: bool,
    /// Decompositions of the consequences, present when recursion was requested.
    pub children: Vec<CanonicalDecomposition>,
    pub choice: &'static str,
}

/// Canonical decomposition, recursing `depth` levels into the consequences.
pub fn canonical_decomposition(r: &Relation, depth: usize) -> Result<CanonicalDecomposition> {
    let consequences = proper_consequences(r, 1)?;
    let rels: Vec<Relation> = consequences.iter().map(|c| c.relation.clone()).collect();
    let factor = principal_factor(r, &rels)?;
    let mut rebuilt = factor.clone();
    for c in &rels {
        rebuilt = rebuilt.intersection(&c.extend(&r.points)?)?;
    }
    if rebuilt != *r {
        return Err(Error::Invalid("canonical decomposition does not rebuild the relation".into()));
    }
    let prime = consequences.is_empty();
    let reducible = !prime && factor.is_trivial();
    let children = if depth > 0 {
        rels.iter()
            .map(|c| canonical_decomposition(c, depth - 1))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Ok(CanonicalDecomposition {
        relation: r.clone(),
        consequences,
        factor,
        reducible,
        prime,
        children,
        choice: CONSEQUENCE_CHOICE,
    })
}

// ---------------------------------------------------------------------------
// Cellular automata

pub const ECA_POINTS: [&str; 4] = ["p", "q", "r", "s"];

/// Local relation `s = f(p, q, r)` of an elementary rule; `f(p,q,r)` is bit `4p+2q+r` of `rule`.
pub fn elementary_relation(rule: u8) -> Relation {
    Relation::from_predicate(&ECA_POINTS, 2, |t| {
        let idx = 4 * t[0] + 2 * t[1] + t[2];
        t[3] == u32::from(rule >> idx & 1)
    })
    .expect("16 bits")
}

/// Points `x1 … x{k+2}`: neighbours, centre, and the centre one step later.
pub fn symmetric_points(k: usize) -> Vec<String> {
    (1..=k + 2).map(|i| format!("x{i}")).collect()
}

/// Local relation of a binary rule on a `k`-valent neighbourhood.
pub fn symmetric_relation(k: usize, rule: &Rule) -> Result<Relation> {
    Relation::from_predicate(&symmetric_points(k), 2, |t| {
        let live = t[..k].iter().filter(|&&d| d == 1).count();
        u32::from(rule.next(t[k] as u8, live)) == t[k + 1]
    })
}

/// Local relation of Life (B3/S23) on `x1 … x10`.
pub fn life_relation() -> Relation {
    symmetric_relation(8, &Rule::life()).expect("1024 bits")
}

/// The pieces of the Life decomposition: `R₂` on `δ∖{x9}` and the eight `R₁` on `δ∖{x_i}`.
pub struct LifeDecomposition {
    pub relation: Relation,
    pub r2: Consequence,
    pub r1: Vec<Consequence>,
}

pub fn life_decomposition() -> Result<LifeDecomposition> {
    let relation = life_relation();
    let delta = relation.points().to_vec();
    let without = |skip: &str| -> Vec<String> {
        delta.iter().filter(|p| p.as_str() != skip).cloned().collect()
    };
    let face2 = without("x9");
    let r2 = Consequence {
        relation: relation.project(&face2)?,
        face: face2,
    };
    let r1 = (1..=8)
        .map(|i| {
            let face = without(&format!("x{i}"));
            Ok(Consequence {
                relation: relation.project(&face)?,
                face,
            })
        })
        .collect::<Result<_>>()?;
    Ok(LifeDecomposition { relation, r2, r1 })
}

/// Census of the 256 elementary rules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EcaClassification {
    pub reducible: Vec<u8>,
    pub irreducible: Vec<u8>,
    pub prime: Vec<u8>,
}

pub fn classify_elementary() -> Result<EcaClassification> {
    let mut out = EcaClassification {
        reducible: Vec::new(),
        irreducible: Vec::new(),
        prime: Vec::new(),
    };
    for rule in 0..=255u8 {
        let d = canonical_decomposition(&elementary_relation(rule), 0)?;
        if d.reducible {
            out.reducible.push(rule);
        } else {
            out.irreducible.push(rule);
        }
        if d.prime {
            out.prime.push(rule);
        }
    }
    Ok(out)
}

/// One step of an elementary rule on a ring: `u(x, t+1) = f(u(x-1), u(x), u(x+1))`.
pub fn eca_step(rule: u8, row: &[u8]) -> Vec<u8> {
    let m = row.len();
    (0..m)
        .map(|x| {
            let p = row[(x + m - 1) % m];
            let q = row[x];
            let r = row[(x + 1) % m];
            rule >> (4 * p + 2 * q + r) & 1
        })
        .collect()
}

/// Rows `u(·, 0) … u(·, steps)`.
pub fn eca_evolve(rule: u8, initial: &[u8], steps: usize) -> Vec<Vec<u8>> {
    let mut rows = vec![initial.to_vec()];
    for _ in 0..steps {
        let next = eca_step(rule, rows.last().expect("nonempty"));
        rows.push(next);
    }
    rows
}

/// Closed-form solution of rules 15 and 90 on a ring.
pub fn closed_form(rule: u8, initial: &[u8], t: usize) -> Result<Vec<u8>> {
    let m = initial.len() as i64;
    let a = |x: i64| initial[x.rem_euclid(m) as usize];
    match rule {
        15 => Ok((0..m).map(|x| (a(x - t as i64) + t as u8 % 2) % 2).collect()),
        90 => Ok((0..m)
            .map(|x| {
                (0..=t)
                    .filter(|&k| binomial_odd(t, k))
                    .fold(0u8, |acc, k| acc ^ a(x - t as i64 + 2 * k as i64))
            })
            .collect()),
        _ => Err(Error::Invalid(format!("no closed form for rule {rule}"))),
    }
}

/// `C(n, k)` is odd iff `k` is a submask of `n`.
fn binomial_odd(n: usize, k: usize) -> bool {
    k <= n && k & n == k
}

/// Whether direct simulation matches the closed form for every `t ≤ steps`.
pub fn general_solution_check(rule: u8, initial: &[u8], steps: usize) -> Result<bool> {
    let rows = eca_evolve(rule, initial, steps);
    for (t, row) in rows.iter().enumerate() {
        if *row != closed_form(rule, initial, t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_bit_strings() {
        assert_eq!(elementary_relation(30).bit_string(), "1001010101101010");
        assert_eq!(elementary_relation(110).bit_string(), "1100000100111110");
        assert_eq!(elementary_relation(90).bit_string(), "1010010101011010");
        assert_eq!(elementary_relation(15).bit_string(), "0101010110101010");
    }

    #[test]
    fn rule_30_decomposition() {
        let d = canonical_decomposition(&elementary_relation(30), 0).unwrap();
        let faces: Vec<(Vec<String>, String)> = d
            .consequences
            .iter()
            .map(|c| (c.face.clone(), c.relation.bit_string()))
            .collect();
        assert_eq!(
            faces,
            vec![
                (names(&["p", "r", "s"]), "11011110".to_string()),
                (names(&["p", "q", "s"]), "11011110".to_string()),
            ]
        );
        assert_eq!(d.factor.bit_string(), "1011111101111111");
        assert!(!d.reducible);
        assert_eq!(
            d.factor.to_anf().unwrap().render(),
            "qrs+pqr+rs+qs+pr+pq+s+p"
        );
        assert_eq!(elementary_relation(30).to_anf().unwrap().render(), "qr+s+r+q+p");
    }

    #[test]
    fn rule_110_decomposition() {
        let r = elementary_relation(110);
        assert_eq!(r.to_anf().unwrap().render(), "pqr+qr+s+r+q");
        let d = canonical_decomposition(&r, 0).unwrap();
        assert_eq!(d.factor.bit_string(), "1111111111111110");
        assert_eq!(d.factor.to_anf().unwrap().render(), "pqrs");
        let mut faces: Vec<String> = d
            .consequences
            .iter()
            .map(|c| format!("{}:{}", c.face.concat(), c.relation.bit_string()))
            .collect();
        faces.sort();
        assert_eq!(faces, vec!["pqs:11011111", "prs:11011111", "qrs:10010111"]);
    }

    #[test]
    fn rule_15_and_90_faces() {
        let r15 = elementary_relation(15);
        let face = r15.project(&["p", "s"]).unwrap();
        assert_eq!(face.bit_string(), "0110");
        let r90 = elementary_relation(90);
        let face = r90.project(&["p", "r", "s"]).unwrap();
        assert_eq!(face.bit_string(), "10010110");
        assert_eq!(face.to_anf().unwrap().render(), "s+r+p");
    }

    #[test]
    fn census() {
        let c = classify_elementary().unwrap();
        assert_eq!((c.reducible.len(), c.irreducible.len()), (118, 138));
        assert_eq!(c.prime, vec![105, 150]);
        assert!(c.reducible.contains(&0) && c.reducible.contains(&255));
    }

    #[test]
    fn extend_project_roundtrip() {
        let r = relation_from_bits(&["a", "b"], 2, "1101").unwrap();
        let e = r.extend(&["c", "b", "a"]).unwrap();
        assert_eq!(e.len(), r.len() * 2);
        assert_eq!(e.project(&["a", "b"]).unwrap(), r);
        assert_eq!(r.extend(&["a"]), Err(Error::NotSuperset));
        assert!(matches!(
            relation_from_bits(&["a", "b"], 2, "110"),
            Err(Error::LengthMismatch { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn functional() {
        let face = relation_from_bits(&["r", "s"], 2, "1101").unwrap();
        assert!(!face.is_functional());
        let diag = relation_from_bits(&["a", "b"], 2, "1001").unwrap();
        assert_eq!(diag.functional_positions(), vec![0, 1]);
        for rule in 0..=255u8 {
            assert!(elementary_relation(rule).is_functional_at(3));
        }
    }

    #[test]
    fn general_solutions() {
        let a = [1, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1];
        assert!(general_solution_check(15, &a, 8).unwrap());
        assert!(general_solution_check(90, &a, 8).unwrap());
        assert!(general_solution_check(90, &a, 0).unwrap());
    }
}
