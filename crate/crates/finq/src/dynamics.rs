//! Symmetric deterministic dynamics on graphs.
//!
//! States are functions `X → {0..q-1}` stored as digit vectors. Groups act on
//! the right, matching [`Perm`]: a space permutation `a` moves the value at
//! `x` to `x·a`. Internal symmetries are permutations of the local states.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cyclo::{Rational, rational};
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup, CLOSURE_CAP};

/// Upper bound on `q^|X|` for full state-space sweeps.
pub const STATE_CAP: u64 = 1 << 24;

/// Simple undirected graph with sorted neighbour lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    name: Option<String>,
}

/// On-disk graph; vertices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl Graph {
    /// Edges are 0-based unordered pairs; loops and repeated edges are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, name: impl Into<String>) -> Result<Self> {
        let mut norm = Vec::with_capacity(edges.len());
        for (i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(Error::OutOfRange {
                        point: v + 1,
                        degree: n,
                    });
                }
            }
            if i == j {
                return Err(Error::Invalid(format!("loop at vertex {}", i + 1)));
            }
            norm.push((i.min(j), i.max(j)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!(
                "repeated edge ({}, {})",
                w[0].0 + 1,
                w[0].1 + 1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &norm {
            adj[i].push(j);
            adj[j].push(i);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let name: String = name.into();
        Ok(Graph {
            n,
            edges: norm,
            adj,
            name: (!name.is_empty()).then_some(name),
        })
    }

    /// `rows × cols` torus with the eight-cell Moore neighbourhood; cell `(r, c)` is `r·cols + c`.
    pub fn torus_moore(rows: usize, cols: usize) -> Result<Self> {
        if rows < 3 || cols < 3 {
            return Err(Error::Invalid("Moore torus needs at least 3 rows and columns".into()));
        }
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                for (dr, dc) in [(0, 1), (1, cols - 1), (1, 0), (1, 1)] {
                    let w = ((r + dr) % rows) * cols + (c + dc) % cols;
                    edges.push((v, w));
                }
            }
        }
        let name = if rows == cols {
            format!("torus{rows}")
        } else {
            format!("torus{rows}x{cols}")
        };
        Graph::new(rows * cols, edges, name)
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let mut edges = Vec::with_capacity(file.edges.len());
        for &[i, j] in &file.edges {
            if i == 0 || j == 0 {
                return Err(Error::OutOfRange {
                    point: 0,
                    degree: file.n,
                });
            }
            edges.push((i - 1, j - 1));
        }
        Graph::new(file.n, edges, file.name.clone().unwrap_or_default())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::from_file(&file)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            n: self.n,
            edges: self.edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
            name: self.name.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && self.adj[i].binary_search(&j).is_ok()
    }

    /// Common vertex degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|nb| nb.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || bfs_tree(self, 0).iter().all(Option::is_some)
    }

    /// Whether `g` maps edges to edges.
    pub fn is_automorphism(&self, g: &Perm) -> bool {
        g.degree() == self.n
            && self
                .edges
                .iter()
                .all(|&(i, j)| self.has_edge(g.apply(i), g.apply(j)))
    }
}

/// BFS parent pointers from `root`; the root points to itself.
fn bfs_tree(graph: &Graph, root: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; graph.n];
    parent[root] = Some(root);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            if parent[v].is_none() {
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    parent
}

// ---------------------------------------------------------------------------
// Group actions on states

/// Element `(α(x), a)` of `M ≀_X F`: `alpha[x]` permutes local states, `a` permutes `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub alpha: Vec<Perm>,
    pub a: Perm,
}

impl WreathElement {
    pub fn identity(n: usize, q: usize) -> Self {
        WreathElement {
            alpha: vec![Perm::identity(q); n],
            a: Perm::identity(n),
        }
    }

    /// Pure space symmetry `(id, a)`.
    pub fn spatial(a: Perm, q: usize) -> Self {
        WreathElement {
            alpha: vec![Perm::identity(q); a.degree()],
            a,
        }
    }

    fn check(&self) -> Result<()> {
        if self.alpha.len() != self.a.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.a.degree(),
                got: self.alpha.len(),
            });
        }
        Ok(())
    }

    fn local_degree(&self) -> usize {
        self.alpha.first().map_or(0, Perm::degree)
    }
}

fn check_state(state: &[u8], n: usize, q: usize) -> Result<()> {
    if state.len() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            got: state.len(),
        });
    }
    if let Some(&d) = state.iter().find(|&&d| d as usize >= q) {
        return Err(Error::Invalid(format!("local state {d} is not below q = {q}")));
    }
    Ok(())
}

/// `σ'(x) = σ(x a⁻¹) α(x a⁻¹)`.
pub fn wreath_act(state: &[u8], u: &WreathElement) -> Result<Vec<u8>> {
    u.check()?;
    check_state(state, u.a.degree(), u.local_degree())?;
    let inv = u.a.inverse();
    Ok((0..state.len())
        .map(|x| {
            let y = inv.apply(x);
            u.alpha[y].apply(state[y] as usize) as u8
        })
        .collect())
}

/// `(α, a)(β, b) = (α(x) β(x a), a b)`.
pub fn wreath_mul(u: &WreathElement, v: &WreathElement) -> Result<WreathElement> {
    u.check()?;
    v.check()?;
    if u.a.degree() != v.a.degree() {
        return Err(Error::DegreeMismatch {
            expected: u.a.degree(),
            got: v.a.degree(),
        });
    }
    let alpha = (0..u.alpha.len())
        .map(|x| u.alpha[x].then(&v.alpha[u.a.apply(x)]))
        .collect();
    Ok(WreathElement {
        alpha,
        a: u.a.then(&v.a),
    })
}

/// `(α, a)⁻¹ = (α(x a⁻¹)⁻¹, a⁻¹)`.
pub fn wreath_inv(u: &WreathElement) -> Result<WreathElement> {
    u.check()?;
    let inv = u.a.inverse();
    let alpha = (0..u.alpha.len())
        .map(|x| u.alpha[inv.apply(x)].inverse())
        .collect();
    Ok(WreathElement { alpha, a: inv })
}

/// Split extension of a space group by `M^X`, fixed by an antihomomorphism
/// `μ` and an arbitrary function `κ` on the space group.
#[derive(Clone, Debug)]
pub struct SplitExtension {
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mu: Vec<usize>,
    kappa: Vec<usize>,
}

impl SplitExtension {
    /// `mu` and `kappa` are tables over `elements` (indices into the same list).
    pub fn new(elements: Vec<Perm>, mu: Vec<usize>, kappa: Vec<usize>) -> Result<Self> {
        let m = elements.len();
        if mu.len() != m || kappa.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: mu.len().min(kappa.len()),
            });
        }
        if mu.iter().chain(&kappa).any(|&i| i >= m) {
            return Err(Error::Invalid("map table points outside the group".into()));
        }
        let index: HashMap<Perm, usize> =
            elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let ext = SplitExtension {
            elements,
            index,
            mu,
            kappa,
        };
        // μ(a)μ(b) = μ(ba)
        for a in 0..m {
            for b in 0..m {
                let ba = ext.idx(&ext.elements[b].then(&ext.elements[a]))?;
                let lhs = ext.elements[ext.mu[a]].then(&ext.elements[ext.mu[b]]);
                if lhs != ext.elements[ext.mu[ba]] {
                    return Err(Error::NotAntihomomorphism);
                }
            }
        }
        Ok(ext)
    }

    /// `μ(a) = κ(a) = a⁻¹`: the standard wreath product.
    pub fn wreath(group: &PermGroup) -> Result<Self> {
        let elements = group.elements()?.to_vec();
        let inv = Self::table(&elements, |g| g.inverse())?;
        Self::new(elements, inv.clone(), inv)
    }

    /// `μ(a) = κ(a) = id`: the direct product.
    pub fn direct(group: &PermGroup) -> Result<Self> {
        let elements = group.elements()?.to_vec();
        let id = Self::table(&elements, |g| Perm::identity(g.degree()))?;
        Self::new(elements, id.clone(), id)
    }

    /// Builds a table by applying `f` to every element; the image must lie in the list.
    pub fn table(elements: &[Perm], f: impl Fn(&Perm) -> Perm) -> Result<Vec<usize>> {
        elements
            .iter()
            .map(|g| {
                let h = f(g);
                elements
                    .iter()
                    .position(|e| *e == h)
                    .ok_or_else(|| Error::Invalid("map leaves the group".into()))
            })
            .collect()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    fn idx(&self, g: &Perm) -> Result<usize> {
        self.index
            .get(g)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("{g} is not in the space group")))
    }

    fn mu(&self, a: &Perm) -> Result<&Perm> {
        Ok(&self.elements[self.mu[self.idx(a)?]])
    }

    fn kappa(&self, a: &Perm) -> Result<&Perm> {
        Ok(&self.elements[self.kappa[self.idx(a)?]])
    }

    /// `σ'(x) = σ(x μ(a)) α(x κ(a))`.
    pub fn act(&self, state: &[u8], u: &WreathElement) -> Result<Vec<u8>> {
        u.check()?;
        check_state(state, u.a.degree(), u.local_degree())?;
        let mu = self.mu(&u.a)?;
        let kappa = self.kappa(&u.a)?;
        Ok((0..state.len())
            .map(|x| u.alpha[kappa.apply(x)].apply(state[mu.apply(x)] as usize) as u8)
            .collect())
    }

    /// `(α, a)(β, b) = (α(x κ(ab)⁻¹ μ(b) κ(a)) β(x κ(ab)⁻¹ κ(b)), ab)`.
    pub fn mul(&self, u: &WreathElement, v: &WreathElement) -> Result<WreathElement> {
        u.check()?;
        v.check()?;
        let ab = u.a.then(&v.a);
        let k_ab_inv = self.kappa(&ab)?.inverse();
        let left = k_ab_inv.then(self.mu(&v.a)?).then(self.kappa(&u.a)?);
        let right = k_ab_inv.then(self.kappa(&v.a)?);
        let alpha = (0..u.alpha.len())
            .map(|x| u.alpha[left.apply(x)].then(&v.alpha[right.apply(x)]))
            .collect();
        Ok(WreathElement { alpha, a: ab })
    }

    /// `(α, a)⁻¹ = (α(x κ(a⁻¹)⁻¹ μ(a)⁻¹ κ(a))⁻¹, a⁻¹)`.
    pub fn inv(&self, u: &WreathElement) -> Result<WreathElement> {
        u.check()?;
        let a_inv = u.a.inverse();
        let shift = self
            .kappa(&a_inv)?
            .inverse()
            .then(&self.mu(&u.a)?.inverse())
            .then(self.kappa(&u.a)?);
        let alpha = (0..u.alpha.len())
            .map(|x| u.alpha[shift.apply(x)].inverse())
            .collect();
        Ok(WreathElement { alpha, a: a_inv })
    }
}

/// Convenience form of [`SplitExtension::act`] taking the tables directly.
pub fn split_extension_act(
    state: &[u8],
    u: &WreathElement,
    elements: &[Perm],
    mu: &[usize],
    kappa: &[usize],
) -> Result<Vec<u8>> {
    SplitExtension::new(elements.to_vec(), mu.to_vec(), kappa.to_vec())?.act(state, u)
}

// ---------------------------------------------------------------------------
// State spaces and orbits

/// Mixed-radix encoding of states: vertex 0 is the least significant digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateSpace {
    pub n: usize,
    pub q: usize,
}

impl StateSpace {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::Invalid("q must be at least 2".into()));
        }
        match (q as u64).checked_pow(n as u32) {
            Some(s) if s <= STATE_CAP => Ok(StateSpace { n, q }),
            _ => Err(Error::ScaleExceeded(format!("{q}^{n} states exceed 2^24"))),
        }
    }

    pub fn size(&self) -> usize {
        self.q.pow(self.n as u32)
    }

    pub fn encode(&self, state: &[u8]) -> usize {
        state
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.q + d as usize)
    }

    pub fn decode(&self, mut index: usize) -> Vec<u8> {
        (0..self.n)
            .map(|_| {
                let d = index % self.q;
                index /= self.q;
                d as u8
            })
            .collect()
    }
}

/// Orbits of a group acting on all of `q^X`, numbered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub space: StateSpace,
    /// Orbit id of every encoded state.
    pub orbit_of: Vec<u32>,
    /// Smallest encoded state in each orbit.
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// Orbit size → number of orbits of that size.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &s in &self.sizes {
            *out.entry(s).or_insert(0) += 1;
        }
        out
    }

    pub fn orbit_of_state(&self, state: &[u8]) -> usize {
        self.orbit_of[self.space.encode(state)] as usize
    }
}

/// Orbit partition of `q^X` under the group generated by `generators`.
pub fn orbit_partition(n: usize, q: usize, generators: &[WreathElement]) -> Result<OrbitPartition> {
    let space = StateSpace::new(n, q)?;
    for g in generators {
        g.check()?;
        if g.a.degree() != n || g.local_degree() != q {
            return Err(Error::DegreeMismatch {
                expected: n,
                got: g.a.degree(),
            });
        }
    }
    let size = space.size();
    let mut orbit_of = vec![u32::MAX; size];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..size {
        if orbit_of[start] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        orbit_of[start] = id;
        stack.push(start);
        let mut count = 0;
        while let Some(s) = stack.pop() {
            count += 1;
            let state = space.decode(s);
            for g in generators {
                let t = space.encode(&wreath_act(&state, g)?);
                if orbit_of[t] == u32::MAX {
                    orbit_of[t] = id;
                    stack.push(t);
                }
            }
        }
        representatives.push(start);
        sizes.push(count);
    }
    Ok(OrbitPartition {
        space,
        orbit_of,
        representatives,
        sizes,
    })
}

/// Orbit partition for a space group with trivial internal symmetry.
pub fn spatial_orbit_partition(group: &PermGroup, q: usize) -> Result<OrbitPartition> {
    let gens: Vec<WreathElement> = group
        .generators()
        .iter()
        .map(|g| WreathElement::spatial(g.clone(), q))
        .collect();
    orbit_partition(group.degree(), q, &gens)
}

/// `σ·g` for a space permutation with trivial internal symmetry: `σ(x g⁻¹)`.
pub fn permute_state(state: &[u8], g: &Perm) -> Vec<u8> {
    let mut out = vec![0; state.len()];
    for (y, &v) in state.iter().enumerate() {
        out[g.apply(y)] = v;
    }
    out
}

// ---------------------------------------------------------------------------
// Rules and evolution

/// Binary rule depending only on a vertex's own state and its live-neighbour count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Birth and survival counts as bitmasks over the neighbour count.
    BirthSurvival { birth: u64, survive: u64 },
    /// Lookup number: bit `2·count + x` holds the next state (digits ascending).
    Code(u64),
}

impl Rule {
    /// Parses `B123/S0` style lists or a decimal lookup number such as `86`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Ok(code) = t.parse::<u64>() {
            return Ok(Rule::Code(code));
        }
        let upper = t.to_ascii_uppercase();
        let (b, s) = upper
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("rule `{text}`: expected B…/S…")))?;
        let mask = |part: &str, tag: char| -> Result<u64> {
            let digits = part
                .strip_prefix(tag)
                .ok_or_else(|| Error::Parse(format!("rule `{text}`: missing {tag}")))?;
            digits.chars().try_fold(0u64, |m, c| {
                c.to_digit(10)
                    .map(|d| m | (1 << d))
                    .ok_or_else(|| Error::Parse(format!("rule `{text}`: bad count `{c}`")))
            })
        };
        Ok(Rule::BirthSurvival {
            birth: mask(b, 'B')?,
            survive: mask(s, 'S')?,
        })
    }

    pub fn life() -> Self {
        Rule::BirthSurvival {
            birth: 1 << 3,
            survive: (1 << 2) | (1 << 3),
        }
    }

    pub fn next(&self, x: u8, count: usize) -> u8 {
        match *self {
            Rule::BirthSurvival { birth, survive } => {
                let m = if x == 0 { birth } else { survive };
                (count < 64 && m >> count & 1 == 1) as u8
            }
            Rule::Code(code) => {
                let bit = 2 * count + x as usize;
                (bit < 64 && code >> bit & 1 == 1) as u8
            }
        }
    }

    /// Lookup number of this rule for valence `k`.
    pub fn code(&self, k: usize) -> Option<u64> {
        if 2 * k + 1 >= 64 {
            return None;
        }
        Some((0..=k).fold(0, |acc, c| {
            acc | (self.next(0, c) as u64) << (2 * c) | (self.next(1, c) as u64) << (2 * c + 1)
        }))
    }

    /// `B…/S…` form for valence `k`.
    pub fn to_bs(&self, k: usize) -> String {
        let list = |x: u8| -> String {
            (0..=k)
                .filter(|&c| self.next(x, c) == 1)
                .map(|c| c.to_string())
                .collect()
        };
        format!("B{}/S{}", list(0), list(1))
    }
}

/// One synchronous step of a binary symmetric rule on a regular graph.
pub fn evolve(state: &[u8], rule: &Rule, graph: &Graph) -> Result<Vec<u8>> {
    graph.regular_degree().ok_or(Error::NotRegular)?;
    check_state(state, graph.n(), 2)?;
    Ok((0..graph.n())
        .map(|v| {
            let live = graph.neighbors(v).iter().filter(|&&w| state[w] == 1).count();
            rule.next(state[v], live)
        })
        .collect())
}

/// States `σ_0 … σ_steps`.
pub fn trajectory(state: &[u8], rule: &Rule, graph: &Graph, steps: usize) -> Result<Vec<Vec<u8>>> {
    let mut out = vec![state.to_vec()];
    for _ in 0..steps {
        let next = evolve(out.last().expect("nonempty"), rule, graph)?;
        out.push(next);
    }
    Ok(out)
}

/// Whether `evolve(σ·g) = evolve(σ)·g` for every generator and every given state.
pub fn is_equivariant(rule: &Rule, graph: &Graph, group: &PermGroup, states: &[Vec<u8>]) -> Result<bool> {
    for s in states {
        let next = evolve(s, rule, graph)?;
        for g in group.generators() {
            if evolve(&permute_state(s, g), rule, graph)? != permute_state(&next, g) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Quotient dynamics of a rule on the group orbits of state space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasePortrait {
    pub partition: OrbitPartition,
    /// Orbit reached in one step from each orbit.
    pub transition: Vec<usize>,
    /// Cycles of the quotient map, each listed from its smallest orbit id.
    pub cycles: Vec<Vec<usize>>,
    /// Index into `cycles` of the attractor each orbit falls into.
    pub basin_of: Vec<usize>,
    /// Quotient steps from each orbit to its cycle.
    pub depth: Vec<usize>,
    /// Basin size over total state count, per cycle.
    pub weights: Vec<Rational>,
}

impl PhasePortrait {
    pub fn basin_size(&self, cycle: usize) -> usize {
        self.basin_of
            .iter()
            .zip(&self.partition.sizes)
            .filter(|(&b, _)| b == cycle)
            .map(|(_, &s)| s)
            .sum()
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |a, w| a + w)
    }
}

pub fn phase_portrait(graph: &Graph, rule: &Rule, group: &PermGroup) -> Result<PhasePortrait> {
    if group.degree() != graph.n() {
        return Err(Error::DegreeMismatch {
            expected: graph.n(),
            got: group.degree(),
        });
    }
    graph.regular_degree().ok_or(Error::NotRegular)?;
    let partition = spatial_orbit_partition(group, 2)?;
    let space = partition.space;
    let reps: Vec<Vec<u8>> = partition
        .representatives
        .iter()
        .map(|&r| space.decode(r))
        .collect();
    if !is_equivariant(rule, graph, group, &reps)? {
        return Err(Error::NotEquivariant);
    }
    let transition: Vec<usize> = reps
        .iter()
        .map(|s| Ok(partition.orbit_of_state(&evolve(s, rule, graph)?)))
        .collect::<Result<_>>()?;

    let m = transition.len();
    // 0 = unvisited, 1 = on current walk, 2 = done
    let mut mark = vec![0u8; m];
    let mut cycle_of = vec![usize::MAX; m];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..m {
        let mut walk = Vec::new();
        let mut v = start;
        while mark[v] == 0 {
            mark[v] = 1;
            walk.push(v);
            v = transition[v];
        }
        if mark[v] == 1 {
            let pos = walk.iter().position(|&w| w == v).expect("on walk");
            let mut cyc = walk[pos..].to_vec();
            let min_pos = cyc.iter().enumerate().min_by_key(|(_, &c)| c).map(|(i, _)| i).unwrap();
            cyc.rotate_left(min_pos);
            for &c in &cyc {
                cycle_of[c] = cycles.len();
            }
            cycles.push(cyc);
        }
        for w in walk {
            mark[w] = 2;
        }
    }

    let mut basin_of = vec![usize::MAX; m];
    let mut depth = vec![0; m];
    for start in 0..m {
        let mut path = Vec::new();
        let mut v = start;
        while cycle_of[v] == usize::MAX && basin_of[v] == usize::MAX {
            path.push(v);
            v = transition[v];
        }
        let (b, d) = if cycle_of[v] != usize::MAX {
            (cycle_of[v], 0)
        } else {
            (basin_of[v], depth[v])
        };
        basin_of[v] = b;
        for (k, &p) in path.iter().rev().enumerate() {
            basin_of[p] = b;
            depth[p] = d + k + 1;
        }
    }

    let total = space.size() as i64;
    let mut basin = vec![0usize; cycles.len()];
    for (o, &b) in basin_of.iter().enumerate() {
        basin[b] += partition.sizes[o];
    }
    let weights = basin.iter().map(|&s| rational(s as i64, total)).collect();
    Ok(PhasePortrait {
        partition,
        transition,
        cycles,
        basin_of,
        depth,
        weights,
    })
}

/// Two trajectory states in one orbit and the element moving the first onto the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonWitness {
    pub t0: usize,
    pub t1: usize,
    pub g: Perm,
}

impl SolitonWitness {
    pub fn period(&self) -> usize {
        self.t1 - self.t0
    }
}

/// Element `g` with `b = a·g`, if any.
pub fn same_orbit_witness(a: &[u8], b: &[u8], group: &PermGroup) -> Result<Option<Perm>> {
    let elements = group.closure(CLOSURE_CAP)?;
    Ok(elements.iter().find(|g| permute_state(a, g) == b).cloned())
}

/// Earliest `t1`, then earliest `t0 < t1`, with `σ_{t1} = σ_{t0}·g`.
pub fn soliton_witness(trajectory: &[Vec<u8>], group: &PermGroup) -> Result<Option<SolitonWitness>> {
    let elements = group.closure(CLOSURE_CAP)?;
    for t1 in 1..trajectory.len() {
        for t0 in 0..t1 {
            let (a, b) = (&trajectory[t0], &trajectory[t1]);
            if a.iter().filter(|&&v| v != 0).count() != b.iter().filter(|&&v| v != 0).count() {
                continue;
            }
            if let Some(g) = elements.iter().find(|g| permute_state(a, g) == *b) {
                return Ok(Some(SolitonWitness {
                    t0,
                    t1,
                    g: g.clone(),
                }));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Gauge connections

/// Internal-group element on every oriented edge, with `P(j, i) = P(i, j)⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    graph: Graph,
    local_degree: usize,
    /// `P(i, j)` for `i < j`.
    forward: BTreeMap<(usize, usize), Perm>,
}

impl Connection {
    /// `f(i, j)` is called once per edge with `i < j`.
    pub fn from_fn(graph: &Graph, local_degree: usize, f: impl Fn(usize, usize) -> Perm) -> Result<Self> {
        let mut forward = BTreeMap::new();
        for &(i, j) in graph.edges() {
            let p = f(i, j);
            if p.degree() != local_degree {
                return Err(Error::DegreeMismatch {
                    expected: local_degree,
                    got: p.degree(),
                });
            }
            forward.insert((i, j), p);
        }
        Ok(Connection {
            graph: graph.clone(),
            local_degree,
            forward,
        })
    }

    /// `P(i, j) = α(i) α(j)⁻¹`.
    pub fn pure_gauge(graph: &Graph, alpha: &[Perm]) -> Result<Self> {
        if alpha.len() != graph.n() {
            return Err(Error::DegreeMismatch {
                expected: graph.n(),
                got: alpha.len(),
            });
        }
        let d = alpha.first().map_or(0, Perm::degree);
        Connection::from_fn(graph, d, |i, j| alpha[i].then(&alpha[j].inverse()))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn local_degree(&self) -> usize {
        self.local_degree
    }

    /// Oriented edge element `P(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Result<Perm> {
        if let Some(p) = self.forward.get(&(i, j)) {
            Ok(p.clone())
        } else if let Some(p) = self.forward.get(&(j, i)) {
            Ok(p.inverse())
        } else {
            Err(Error::BadPath(i + 1, j + 1))
        }
    }

    /// Overwrites `P(i, j)` (and so `P(j, i)`).
    pub fn set(&mut self, i: usize, j: usize, p: Perm) -> Result<()> {
        if !self.graph.has_edge(i, j) {
            return Err(Error::BadPath(i + 1, j + 1));
        }
        let (key, val) = if i < j { ((i, j), p) } else { ((j, i), p.inverse()) };
        self.forward.insert(key, val);
        Ok(())
    }

    /// `P(i, j) → γ(i)⁻¹ P(i, j) γ(j)`.
    pub fn gauge_transform(&self, gamma: &[Perm]) -> Result<Connection> {
        if gamma.len() != self.graph.n() {
            return Err(Error::DegreeMismatch {
                expected: self.graph.n(),
                got: gamma.len(),
            });
        }
        let forward = self
            .forward
            .iter()
            .map(|(&(i, j), p)| ((i, j), gamma[i].inverse().then(p).then(&gamma[j])))
            .collect();
        Ok(Connection {
            graph: self.graph.clone(),
            local_degree: self.local_degree,
            forward,
        })
    }
}

/// Ordered product `P(x1, x2) P(x2, x3) ⋯` along a vertex path.
pub fn parallel_transport(conn: &Connection, path: &[usize]) -> Result<Perm> {
    path.windows(2)
        .try_fold(Perm::identity(conn.local_degree), |acc, w| {
            Ok(acc.then(&conn.get(w[0], w[1])?))
        })
}

/// Transport around a closed path; the closing edge back to the first vertex is
/// implied unless the path already ends where it starts.
pub fn holonomy(conn: &Connection, cycle: &[usize]) -> Result<Perm> {
    let mut closed = cycle.to_vec();
    if let (Some(&first), Some(&last)) = (cycle.first(), cycle.last()) {
        if cycle.len() == 1 || first != last {
            closed.push(first);
        }
    }
    parallel_transport(conn, &closed)
}

/// Gauge function `α` with `P(i, j) = α(i) α(j)⁻¹`, fixed by `α = id` at the
/// root of every component's BFS tree; `None` if some chord disagrees.
pub fn is_trivial_connection(conn: &Connection, graph: &Graph) -> Option<Vec<Perm>> {
    let n = graph.n();
    let mut alpha: Vec<Option<Perm>> = vec![None; n];
    for root in 0..n {
        if alpha[root].is_some() {
            continue;
        }
        alpha[root] = Some(Perm::identity(conn.local_degree));
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in graph.neighbors(u) {
                if alpha[v].is_none() {
                    let p = conn.get(u, v).ok()?;
                    alpha[v] = Some(p.inverse().then(alpha[u].as_ref().expect("visited")));
                    queue.push_back(v);
                }
            }
        }
    }
    let alpha: Vec<Perm> = alpha.into_iter().map(|a| a.expect("all visited")).collect();
    for &(i, j) in graph.edges() {
        if conn.get(i, j).ok()? != alpha[i].then(&alpha[j].inverse()) {
            return None;
        }
    }
    Some(alpha)
}
