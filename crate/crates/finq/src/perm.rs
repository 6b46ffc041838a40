//! Permutations, permutation groups given by generators, orbits, blocks and orbitals.
//!
//! Points are 0-based internally and 1-based in all text. Permutations act on
//! the right: `i·g = g.apply(i)`, and `p.then(q)` applies `p` first.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the number of elements materialized by [`PermGroup::closure`].
pub const CLOSURE_CAP: usize = 1_000_000;

/// Bijection of `{0..N-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::OutOfRange { point: i + 1, degree: n });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::Parse(format!("image {} repeated", i + 1)));
            }
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::OutOfRange { point: a + 1, degree });
                }
                if std::mem::replace(&mut used[a], true) {
                    return Err(Error::Parse(format!("point {} appears twice", a + 1)));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation `(1,5,3)(7,8)`, `()`, or a bracketed 1-based image list `[2,3,1]`.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(body) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let images = parse_points(body)?;
            if images.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: images.len(),
                });
            }
            for &p in &images {
                if p >= degree {
                    return Err(Error::OutOfRange { point: p + 1, degree });
                }
            }
            return Self::from_images(images);
        }
        let mut cycles = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let body_end = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
            let body = rest[..body_end]
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{text}`")))?;
            if body.contains('(') {
                return Err(Error::Parse(format!("nested cycle in `{text}`")));
            }
            if !body.is_empty() {
                cycles.push(parse_points(body)?);
            }
            rest = &rest[body_end + 1..];
        }
        if t.is_empty() {
            return Err(Error::Parse("empty permutation text".into()));
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    fn all_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.all_cycles().iter().fold(1, |acc, c| acc.lcm(&c.len()))
    }

    /// Cycle length → number of cycles (fixed points count as length 1).
    pub fn cycle_type(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in self.all_cycles() {
            *out.entry(c.len()).or_insert(0) += 1;
        }
        out
    }

    /// Characteristic polynomial of the permutation matrix as `[(i, k_i)]`,
    /// meaning Π (λ^i − 1)^{k_i}.
    pub fn char_poly_factored(&self) -> Vec<(usize, usize)> {
        self.cycle_type().into_iter().collect()
    }
}

fn parse_points(body: &str) -> Result<Vec<usize>> {
    body.split(',')
        .map(|s| {
            let v: usize = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad point `{s}`")))?;
            if v == 0 {
                return Err(Error::OutOfRange { point: 0, degree: 0 });
            }
            Ok(v - 1)
        })
        .collect()
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

/// One orbital: an orbit of the group on ordered pairs of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbital {
    pub index: usize,
    pub degree: usize,
    /// Sorted list of 0-based pairs.
    pub pairs: Vec<(usize, usize)>,
}

impl Orbital {
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.binary_search(&(i, j)).is_ok()
    }

    /// 0/1 matrix of the orbital.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.degree]; self.degree];
        for &(i, j) in &self.pairs {
            m[i][j] = 1;
        }
        m
    }
}

/// On-disk group description; generator strings use 1-based cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default)]
    pub name: String,
}

/// Permutation group given by generators, with a lazily built element list.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    name: String,
    elements: OnceLock<Vec<Perm>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let g = PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            name: self.name.clone(),
            elements: OnceLock::new(),
        };
        if let Some(e) = self.elements.get() {
            let _ = g.elements.set(e.clone());
        }
        g
    }
}

impl PermGroup {
    /// An empty generator list is replaced by the identity.
    pub fn new(degree: usize, generators: Vec<Perm>, name: impl Into<String>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let generators = if generators.is_empty() {
            vec![Perm::identity(degree)]
        } else {
            generators
        };
        Ok(PermGroup {
            degree,
            generators,
            name: name.into(),
            elements: OnceLock::new(),
        })
    }

    pub fn from_strings(degree: usize, gens: &[&str], name: &str) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|s| Perm::parse(s, degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, perms, name)
    }

    pub fn from_file(file: &GroupFile) -> Result<Self> {
        let gens: Vec<&str> = file.generators.iter().map(String::as_str).collect();
        Self::from_strings(file.degree, &gens, &file.name)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GroupFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            degree: self.degree,
            generators: self.generators.iter().map(Perm::to_string).collect(),
            name: self.name.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// All group elements by breadth-first products, identity first.
    pub fn closure(&self, cap: usize) -> Result<&[Perm]> {
        if let Some(e) = self.elements.get() {
            return if e.len() <= cap {
                Ok(e)
            } else {
                Err(Error::CapExceeded { cap })
            };
        }
        let id = Perm::identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut list = vec![id];
        let mut k = 0;
        while k < list.len() {
            for g in &self.generators {
                let h = list[k].then(g);
                if seen.insert(h.clone()) {
                    if list.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    list.push(h);
                }
            }
            k += 1;
        }
        Ok(self.elements.get_or_init(|| list))
    }

    pub fn elements(&self) -> Result<&[Perm]> {
        self.closure(CLOSURE_CAP)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> Result<usize> {
        Ok(self
            .elements()?
            .iter()
            .fold(1, |acc, g| acc.lcm(&g.order())))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut k = 0;
        while k < out.len() {
            for g in &self.generators {
                let j = g.apply(out[k]);
                if !seen[j] {
                    seen[j] = true;
                    out.push(j);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// Orbit partition, classes sorted and ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if done[p] {
                continue;
            }
            let o = self.orbit(p);
            for &q in &o {
                done[q] = true;
            }
            out.push(o);
        }
        out
    }

    /// Orbits meeting the given seed points.
    pub fn orbits_of(&self, seeds: &[usize]) -> Vec<Vec<usize>> {
        self.orbits()
            .into_iter()
            .filter(|o| seeds.iter().any(|s| o.binary_search(s).is_ok()))
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Finest block system in which `a` and `b` share a block.
    pub fn block_system_containing(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        let mut queue = VecDeque::new();
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let (gx, gy) = (g.apply(x), g.apply(y));
                if uf.union(gx, gy) {
                    queue.push_back((gx, gy));
                }
            }
        }
        uf.classes()
    }

    /// Nontrivial block system with the smallest blocks, or `None` for a primitive action.
    /// Ties go to the system found first when pairing point 0 with 1, 2, ….
    pub fn blocks(&self) -> Result<Option<Vec<Vec<usize>>>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let mut best: Option<Vec<Vec<usize>>> = None;
        for j in 1..self.degree {
            let sys = self.block_system_containing(0, j);
            if sys.len() == 1 {
                continue;
            }
            if best.as_ref().map_or(true, |b| sys[0].len() < b[0].len()) {
                best = Some(sys);
            }
        }
        Ok(best)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.blocks()?.is_none())
    }

    /// Orbitals in first-seen lexicographic order of their pairs.
    pub fn orbitals(&self) -> Vec<Orbital> {
        let n = self.degree;
        let mut label = vec![usize::MAX; n * n];
        let mut out = Vec::new();
        for start in 0..n * n {
            if label[start] != usize::MAX {
                continue;
            }
            let r = out.len();
            label[start] = r;
            let mut pairs = vec![(start / n, start % n)];
            let mut k = 0;
            while k < pairs.len() {
                let (i, j) = pairs[k];
                for g in &self.generators {
                    let (gi, gj) = (g.apply(i), g.apply(j));
                    let idx = gi * n + gj;
                    if label[idx] == usize::MAX {
                        label[idx] = r;
                        pairs.push((gi, gj));
                    }
                }
                k += 1;
            }
            pairs.sort_unstable();
            out.push(Orbital {
                index: r,
                degree: n,
                pairs,
            });
        }
        out
    }

    /// Elements fixing `point`, returned as a group generated by that element list.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point >= self.degree {
            return Err(Error::OutOfRange {
                point: point + 1,
                degree: self.degree,
            });
        }
        let elems: Vec<Perm> = self
            .elements()?
            .iter()
            .filter(|g| g.apply(point) == point)
            .cloned()
            .collect();
        let g = PermGroup::new(
            self.degree,
            elems.clone(),
            format!("Stab_{}({})", point + 1, self.name),
        )?;
        let _ = g.elements.set(elems);
        Ok(g)
    }

    /// Action induced on the classes of an invariant partition.
    pub fn on_blocks(&self, blocks: &[Vec<usize>], name: &str) -> Result<PermGroup> {
        let mut which = vec![usize::MAX; self.degree];
        for (b, class) in blocks.iter().enumerate() {
            for &p in class {
                which[p] = b;
            }
        }
        let mut gens = Vec::new();
        for g in &self.generators {
            let images: Vec<usize> = blocks.iter().map(|c| which[g.apply(c[0])]).collect();
            for (b, c) in blocks.iter().enumerate() {
                if c.iter().any(|&p| which[g.apply(p)] != images[b]) {
                    return Err(Error::Invalid("partition is not invariant".into()));
                }
            }
            gens.push(Perm::from_images(images)?);
        }
        PermGroup::new(blocks.len(), gens, name)
    }

    /// Action induced on `k`-element subsets, listed in lexicographic order.
    pub fn on_subsets(&self, k: usize, name: &str) -> Result<(PermGroup, Vec<Vec<usize>>)> {
        let subsets = k_subsets(self.degree, k);
        let index: BTreeMap<Vec<usize>, usize> = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut gens = Vec::new();
        for g in &self.generators {
            let images = subsets
                .iter()
                .map(|s| {
                    let mut t: Vec<usize> = s.iter().map(|&p| g.apply(p)).collect();
                    t.sort_unstable();
                    index[&t]
                })
                .collect();
            gens.push(Perm::from_images(images)?);
        }
        Ok((PermGroup::new(subsets.len(), gens, name)?, subsets))
    }
}

/// All `k`-subsets of `{0..n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl FromStr for GroupFile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        by_root.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(Perm::parse("(1,2,3)", 3).unwrap().images(), &[1, 2, 0]);
        assert!(Perm::parse("()", 5).unwrap().is_identity());
        let g1 = Perm::parse("(1,5,3,2,6,4)(7,8)", 8).unwrap();
        assert_eq!(g1.images(), &[4, 5, 1, 0, 2, 3, 7, 6]);
        assert_eq!(g1.to_string(), "(1,5,3,2,6,4)(7,8)");
        assert_eq!(Perm::parse("[2,3,1]", 3).unwrap().images(), &[1, 2, 0]);
        assert_eq!(
            Perm::parse("(1,4)", 3).unwrap_err(),
            Error::OutOfRange { point: 4, degree: 3 }
        );
        assert_eq!(Perm::parse("(1,2", 3).unwrap_err().kind(), "ParseError");
        assert_eq!(Perm::parse("(1,2)(2,3)", 3).unwrap_err().kind(), "ParseError");
    }

    #[test]
    fn composition_is_right_action() {
        let a = Perm::parse("(1,2)", 3).unwrap();
        let b = Perm::parse("(2,3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn orbits_and_transitivity() {
        let g = PermGroup::from_strings(3, &["(1,2)"], "").unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2]]);
        assert!(!g.is_transitive());
        let id = PermGroup::new(4, vec![], "1").unwrap();
        assert_eq!(id.orbits().len(), 4);
        let c5 = PermGroup::from_strings(5, &["(1,2,3,4,5)"], "C5").unwrap();
        assert!(c5.is_transitive());
    }

    #[test]
    fn closure_and_cap() {
        let s3 = PermGroup::from_strings(3, &["(1,2)", "(1,2,3)"], "S3").unwrap();
        assert_eq!(s3.order().unwrap(), 6);
        assert_eq!(s3.exponent().unwrap(), 6);
        let s5 = PermGroup::from_strings(5, &["(1,2)", "(1,2,3,4,5)"], "S5").unwrap();
        assert_eq!(s5.closure(50).unwrap_err(), Error::CapExceeded { cap: 50 });
        assert_eq!(s5.order().unwrap(), 120);
    }

    #[test]
    fn blocks_of_cyclic_four() {
        let c4 = PermGroup::from_strings(4, &["(1,2,3,4)"], "C4").unwrap();
        assert_eq!(c4.blocks().unwrap(), Some(vec![vec![0, 2], vec![1, 3]]));
        let g = PermGroup::from_strings(3, &["(1,2)"], "").unwrap();
        assert_eq!(g.blocks().unwrap_err(), Error::NotTransitive);
    }

    #[test]
    fn orbitals_of_c3() {
        let c3 = PermGroup::from_strings(3, &["(1,2,3)"], "C3").unwrap();
        let orb = c3.orbitals();
        assert_eq!(orb.len(), 3);
        assert_eq!(orb[0].pairs, vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(orb[1].pairs, vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(orb[2].pairs, vec![(0, 2), (1, 0), (2, 1)]);
        let triv = PermGroup::new(2, vec![], "1").unwrap();
        assert_eq!(triv.orbitals().len(), 4);
    }

    #[test]
    fn cycle_types() {
        let p = Perm::parse("(1,2)(3,4,5)", 5).unwrap();
        assert_eq!(p.char_poly_factored(), vec![(2, 1), (3, 1)]);
        assert_eq!(Perm::identity(3).char_poly_factored(), vec![(1, 3)]);
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn induced_actions() {
        let s4 = PermGroup::from_strings(4, &["(1,2)", "(1,2,3,4)"], "S4").unwrap();
        let (pairs, subsets) = s4.on_subsets(2, "S4 on pairs").unwrap();
        assert_eq!(subsets.len(), 6);
        assert_eq!(pairs.order().unwrap(), 24);
        let stab = s4.stabilizer(0).unwrap();
        assert_eq!(stab.order().unwrap(), 6);
    }

    #[test]
    fn group_file_round_trip() {
        let g = PermGroup::from_json(r#"{"degree":3,"generators":["(1,2,3)"],"name":"C3"}"#)
            .unwrap();
        assert_eq!(g.to_file().generators, vec!["(1,2,3)"]);
        assert_eq!(g.name(), "C3");
    }
}
