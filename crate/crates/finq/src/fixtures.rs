//! Built-in groups, graphs, character tables and printed reference data.
//!
//! Point numbering in generator strings is 1-based. The icosahedron uses the
//! numbering in which vertex 1 neighbours 2–6 (in cyclic order) and the vertex
//! opposite to p is 1 + ((p + 5) mod 12).

use crate::cyclo::{rational, Cyclotomic, Rational};
use crate::dynamics::Graph;
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

/// Names accepted by [`group`].
pub const GROUP_NAMES: &[&str] = &[
    "S3",
    "C3",
    "SL23deg8",
    "A2roots",
    "A5ico",
    "A5deg5",
    "A5deg6",
    "A5deg10",
    "cubeAut",
    "fullereneC60",
    "torus8glider",
];

/// Names accepted by [`graph`].
pub const GRAPH_NAMES: &[&str] = &["tetrahedron", "cube", "icosahedron", "fullereneC60", "torus8"];

/// Names accepted by [`character_table`].
pub const TABLE_NAMES: &[&str] = &["S3", "A5"];

/// Generators of the rotation group of the icosahedron.
pub const A5_ICO_GENERATORS: [&str; 2] = [
    "(2,3,4,5,6)(8,9,10,11,12)",
    "(1,2)(3,6)(4,10)(5,11)(7,8)(9,12)",
];

pub fn group(name: &str) -> Result<PermGroup> {
    match name {
        "S3" => PermGroup::from_strings(3, &["(2,3)", "(1,3,2)"], "S3"),
        "C3" => PermGroup::from_strings(3, &["(1,2,3)"], "C3"),
        "SL23deg8" => PermGroup::from_strings(
            8,
            &["(1,5,3,2,6,4)(7,8)", "(1,3,7,2,4,8)(5,6)"],
            "SL23deg8",
        ),
        "A2roots" => {
            PermGroup::from_strings(6, &["(1,4)(2,3)(5,6)", "(1,3)(2,5)(4,6)"], "A2roots")
        }
        "A5ico" => PermGroup::from_strings(12, &A5_ICO_GENERATORS, "A5ico"),
        "A5deg5" => PermGroup::from_strings(5, &["(1,2,3,4,5)", "(1,2,3)"], "A5deg5"),
        "A5deg6" => {
            let ico = group("A5ico")?;
            let blocks: Vec<Vec<usize>> = (0..6).map(|i| vec![i, i + 6]).collect();
            ico.on_blocks(&blocks, "A5deg6")
        }
        "A5deg10" => Ok(group("A5deg5")?.on_subsets(2, "A5deg10")?.0),
        "cubeAut" => cube_group(),
        "fullereneC60" => fullerene_group(),
        "torus8glider" => torus_group(8),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

pub fn graph(name: &str) -> Result<Graph> {
    match name {
        "tetrahedron" => {
            let edges = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .collect();
            Graph::new(4, edges, "tetrahedron")
        }
        "cube" => {
            let mut edges = Vec::new();
            for v in 0..8usize {
                for b in 0..3 {
                    let w = v ^ (1 << b);
                    if v < w {
                        edges.push((v, w));
                    }
                }
            }
            Graph::new(8, edges, "cube")
        }
        "icosahedron" => {
            let adj = icosahedron_adjacency();
            let mut edges = Vec::new();
            for (v, nb) in adj.iter().enumerate() {
                for &w in nb {
                    if v < w {
                        edges.push((v, w));
                    }
                }
            }
            Graph::new(12, edges, "icosahedron")
        }
        "fullereneC60" => fullerene_graph(),
        "torus8" => Graph::torus_moore(8, 8),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

/// 0-based neighbour lists of the icosahedron in the fixture numbering.
pub fn icosahedron_adjacency() -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); 12];
    let mut link = |a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    // Upper pentagon 2..6 around vertex 1, lower pentagon 8..12 around vertex 7.
    for i in 0..5 {
        let u = 1 + i;
        link(0, u);
        link(u, 1 + (i + 1) % 5);
        link(u, 7 + (i + 2) % 5);
        link(u, 7 + (i + 3) % 5);
        link(6, 7 + i);
        link(7 + i, 7 + (i + 1) % 5);
    }
    for nb in &mut adj {
        nb.sort_unstable();
    }
    adj
}

/// Opposite vertex, 0-based: Opp(p) = 1 + ((p + 5) mod 12) in 1-based numbering.
pub fn opposite(v: usize) -> usize {
    (v + 6) % 12
}

fn cube_group() -> Result<PermGroup> {
    let bits = |f: &dyn Fn(usize) -> usize| Perm::from_images((0..8).map(f).collect());
    let swap01 = bits(&|v| (v & 4) | ((v & 1) << 1) | ((v >> 1) & 1))?;
    let rotate = bits(&|v| ((v << 1) & 6) | (v >> 2))?;
    let flip = bits(&|v| v ^ 1)?;
    PermGroup::new(8, vec![swap01, rotate, flip], "cubeAut")
}

/// Directed icosahedron edges in lexicographic order; these are the C60 vertices.
pub fn fullerene_vertices() -> Vec<(usize, usize)> {
    let adj = icosahedron_adjacency();
    let mut out = Vec::with_capacity(60);
    for (u, nb) in adj.iter().enumerate() {
        for &v in nb {
            out.push((u, v));
        }
    }
    out
}

fn fullerene_graph() -> Result<Graph> {
    let verts = fullerene_vertices();
    let adj = icosahedron_adjacency();
    let idx = |e: (usize, usize)| verts.binary_search(&e).expect("directed edge");
    let mut edges = Vec::new();
    for (i, &(u, v)) in verts.iter().enumerate() {
        let rev = idx((v, u));
        if i < rev {
            edges.push((i, rev));
        }
        for &w in &adj[u] {
            if w > v && adj[v].contains(&w) {
                edges.push((i, idx((u, w))));
            }
        }
    }
    Graph::new(60, edges, "fullereneC60")
}

fn fullerene_group() -> Result<PermGroup> {
    let verts = fullerene_vertices();
    let ico = group("A5ico")?;
    let antipode = Perm::from_images((0..12).map(opposite).collect())?;
    let mut gens: Vec<Perm> = ico.generators().to_vec();
    gens.push(antipode);
    let induced = gens
        .iter()
        .map(|g| {
            Perm::from_images(
                verts
                    .iter()
                    .map(|&(u, v)| {
                        verts
                            .binary_search(&(g.apply(u), g.apply(v)))
                            .expect("automorphism maps edges to edges")
                    })
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(60, induced, "fullereneC60")
}

/// Translations, quarter turn and transpose of an `n × n` torus; cell `(r, c)` is `r·n + c`.
fn torus_group(n: usize) -> Result<PermGroup> {
    let cell = |f: &dyn Fn(usize, usize) -> (usize, usize)| {
        Perm::from_images(
            (0..n * n)
                .map(|i| {
                    let (r, c) = f(i / n, i % n);
                    r * n + c
                })
                .collect(),
        )
    };
    let right = cell(&|r, c| (r, (c + 1) % n))?;
    let down = cell(&|r, c| ((r + 1) % n, c))?;
    let turn = cell(&|r, c| (c, (n - r) % n))?;
    let transpose = cell(&|r, c| (c, r))?;
    PermGroup::new(n * n, vec![right, down, turn, transpose], format!("torus{n}glider"))
}

/// Character table with class and irreducible labels; entries are exact.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    pub group: String,
    pub classes: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub irreps: Vec<String>,
    pub rows: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn dimensions(&self) -> Vec<Cyclotomic> {
        self.rows.iter().map(|r| r[0].clone()).collect()
    }
}

pub fn character_table(name: &str) -> Result<CharacterTable> {
    let int = Cyclotomic::from_integer;
    match name {
        "S3" => Ok(CharacterTable {
            group: "S3".into(),
            classes: vec!["C1".into(), "C2".into(), "C3".into()],
            class_sizes: vec![1, 3, 2],
            irreps: vec!["1".into(), "1'".into(), "2".into()],
            rows: vec![
                vec![int(1), int(1), int(1)],
                vec![int(1), int(-1), int(1)],
                vec![int(2), int(0), int(-1)],
            ],
        }),
        "A5" => {
            // φ = 1 + ω5 + ω5⁴, 1 − φ = 1 + ω5² + ω5³.
            let phi = Cyclotomic::from_ints(5, &[1, 1, 0, 0, 1]);
            let phi_bar = Cyclotomic::from_ints(5, &[1, 0, 1, 1, 0]);
            Ok(CharacterTable {
                group: "A5".into(),
                classes: ["C1", "C15", "C20", "C12", "C12'"].map(String::from).to_vec(),
                class_sizes: vec![1, 15, 20, 12, 12],
                irreps: ["1", "3", "3'", "4", "5"].map(String::from).to_vec(),
                rows: vec![
                    vec![int(1), int(1), int(1), int(1), int(1)],
                    vec![int(3), int(-1), int(0), phi.clone(), phi_bar.clone()],
                    vec![int(3), int(-1), int(0), phi_bar, phi],
                    vec![int(4), int(0), int(1), int(-1), int(-1)],
                    vec![int(5), int(1), int(-1), int(0), int(0)],
                ],
            })
        }
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

fn parse_rows(rows: &[&str]) -> Vec<Vec<u8>> {
    rows.iter()
        .map(|r| r.bytes().map(|b| u8::from(b == b'1')).collect())
        .collect()
}

/// The four orbital matrices of SL(2,3) on 8 points as printed.
pub fn sl23_printed_forms() -> Vec<Vec<Vec<u8>>> {
    vec![
        parse_rows(&[
            "10000000", "01000000", "00100000", "00010000", "00001000", "00000100", "00000010",
            "00000001",
        ]),
        parse_rows(&[
            "01000000", "10000000", "00010000", "00100000", "00000100", "00001000", "00000001",
            "00000010",
        ]),
        parse_rows(&[
            "00101010", "00010101", "01000110", "10001001", "01100001", "10010010", "01011000",
            "10100100",
        ]),
        parse_rows(&[
            "00010101", "00101010", "10001001", "01000110", "10010010", "01100001", "10100100",
            "01011000",
        ]),
    ]
}

/// The six orbital matrices of the A2 Weyl group on its roots as printed.
pub fn a2_printed_forms() -> Vec<Vec<Vec<u8>>> {
    vec![
        parse_rows(&["100000", "010000", "001000", "000100", "000010", "000001"]),
        parse_rows(&["010000", "000001", "000010", "001000", "000100", "100000"]),
        parse_rows(&["001000", "000100", "100000", "010000", "000001", "000010"]),
        parse_rows(&["000100", "000010", "000001", "100000", "010000", "001000"]),
        parse_rows(&["000010", "001000", "010000", "000001", "100000", "000100"]),
        parse_rows(&["000001", "100000", "000100", "000010", "001000", "010000"]),
    ]
}

/// The three orbital matrices of C3 on 3 points.
pub fn c3_printed_forms() -> Vec<Vec<Vec<u8>>> {
    vec![
        parse_rows(&["100", "010", "001"]),
        parse_rows(&["010", "001", "100"]),
        parse_rows(&["001", "100", "010"]),
    ]
}

fn w3(a: i64, b: i64) -> Cyclotomic {
    Cyclotomic::from_ints(3, &[a, b])
}

/// Linear factors of the SL(2,3) determinant with their exponents, as printed.
pub fn sl23_printed_factors() -> Vec<(Vec<Cyclotomic>, usize)> {
    let s = w3(1, 2);
    let one = || Cyclotomic::from_integer(1);
    vec![
        (vec![one(), one(), w3(3, 0), w3(3, 0)], 1),
        (vec![one(), w3(-1, 0), s.clone(), -s.clone()], 2),
        (vec![one(), w3(-1, 0), -s.clone(), s.clone()], 2),
        (vec![one(), one(), w3(-1, 0), w3(-1, 0)], 3),
    ]
}

/// Scaled coefficients of the four SL(2,3) invariant forms over A1..A4, as printed.
pub fn sl23_printed_invariant_forms() -> Vec<Vec<Cyclotomic>> {
    let q = |n, d| Cyclotomic::from_rational(rational(n, d));
    // (1 + 2ω)/12
    let s = w3(1, 2).scale(&rational(1, 12));
    vec![
        vec![q(1, 8), q(1, 8), q(1, 8), q(1, 8)],
        vec![q(1, 4), q(-1, 4), -s.clone(), s.clone()],
        vec![q(1, 4), q(-1, 4), s.clone(), -s],
        vec![q(3, 8), q(3, 8), q(-1, 8), q(-1, 8)],
    ]
}

/// Factors of the coarsened A2 determinant over (A1, A2, A6, A3+A4+A5), as printed.
pub fn a2_printed_factors() -> Vec<(Vec<Cyclotomic>, usize)> {
    let one = || Cyclotomic::from_integer(1);
    let z = || Cyclotomic::from_integer(0);
    vec![
        (vec![one(), one(), one(), w3(-3, 0)], 1),
        (vec![one(), one(), one(), w3(3, 0)], 1),
        (vec![one(), w3(0, 1), w3(-1, -1), z()], 2),
        (vec![one(), w3(-1, -1), w3(0, 1), z()], 2),
    ]
}

/// Scaled invariant forms of the coarsened A2 basis over (A1, A2, A6, A3+A4+A5), as printed.
pub fn a2_printed_invariant_forms() -> Vec<Vec<Cyclotomic>> {
    let q = |n, d| Cyclotomic::from_rational(rational(n, d));
    let third = rational(1, 3);
    vec![
        vec![q(1, 6), q(1, 6), q(1, 6), q(1, 6)],
        vec![q(1, 6), q(1, 6), q(1, 6), q(-1, 6)],
        vec![q(1, 3), w3(-1, -1).scale(&third), w3(0, 1).scale(&third), q(0, 1)],
        vec![q(1, 3), w3(0, 1).scale(&third), w3(-1, -1).scale(&third), q(0, 1)],
    ]
}

/// √5 in ℚ(ω5): 1 + 2ω5 + 2ω5⁴.
pub fn sqrt5() -> Cyclotomic {
    Cyclotomic::from_ints(5, &[1, 2, 0, 0, 2])
}

/// Invariant forms of A5 on the icosahedron over the orbitals (Q, B, A, C), labelled 1, 3, 3', 5.
pub fn a5_printed_forms() -> Vec<(&'static str, Vec<Cyclotomic>)> {
    let q = |n, d| Cyclotomic::from_rational(rational(n, d));
    let r = sqrt5().scale(&rational(1, 20));
    vec![
        ("1", vec![q(1, 12), q(1, 12), q(1, 12), q(1, 12)]),
        ("3", vec![q(1, 4), r.clone(), q(-1, 4), -r.clone()]),
        ("3'", vec![q(1, 4), -r.clone(), q(-1, 4), r]),
        ("5", vec![q(5, 12), q(-1, 12), q(5, 12), q(-1, 12)]),
    ]
}

/// The combined 3 ⊕ 3' form (1/2)(Q − A) over (Q, B, A, C).
pub fn a5_combined_form() -> Vec<Cyclotomic> {
    let q = |n, d| Cyclotomic::from_rational(rational(n, d));
    vec![q(1, 2), q(0, 1), q(-1, 2), q(0, 1)]
}

/// The two-dimensional S3 form over (diagonal, off-diagonal): Q − L²/3.
pub fn s3_standard_form() -> Vec<Cyclotomic> {
    vec![
        Cyclotomic::from_rational(rational(2, 3)),
        Cyclotomic::from_rational(rational(-1, 3)),
    ]
}

fn w24(terms: &[(usize, i64)], denom: i64) -> Cyclotomic {
    let mut raw = vec![0i64; 24];
    for &(k, c) in terms {
        raw[k] += c;
    }
    Cyclotomic::from_ints(24, &raw).scale(&rational(1, denom))
}

/// The S3 transformation matrix that diagonalizes the transposition (2,3), over ℚ(ω24).
///
/// Entries (2,3) and (3,3) are ∓1/√2 = ∓(ω + ω³ − ω⁵)/2.
pub fn s3_transform_q24() -> Vec<Vec<Cyclotomic>> {
    let inv_sqrt3 = w24(&[(2, 4), (6, -2)], 6);
    let sqrt_two_thirds = w24(&[(1, 2), (3, 2), (5, 2), (7, -4)], 6);
    let minus_inv_sqrt6 = w24(&[(1, -1), (3, -1), (5, -1), (7, 2)], 6);
    let inv_sqrt2 = w24(&[(1, 1), (3, 1), (5, -1)], 2);
    let zero = Cyclotomic::from_integer(0);
    vec![
        vec![inv_sqrt3.clone(), sqrt_two_thirds, zero],
        vec![inv_sqrt3.clone(), minus_inv_sqrt6.clone(), -inv_sqrt2.clone()],
        vec![inv_sqrt3, minus_inv_sqrt6, inv_sqrt2],
    ]
}

/// Tribimaximal mixing matrix: the S3 transform with its first two columns swapped.
pub fn tribimaximal_matrix() -> Vec<Vec<Cyclotomic>> {
    s3_transform_q24()
        .into_iter()
        .map(|mut row| {
            row.swap(0, 1);
            row
        })
        .collect()
}

/// Squared moduli of the tribimaximal matrix.
pub fn tribimaximal_squares() -> Vec<Vec<Rational>> {
    vec![
        vec![rational(2, 3), rational(1, 3), rational(0, 1)],
        vec![rational(1, 6), rational(1, 3), rational(1, 2)],
        vec![rational(1, 6), rational(1, 3), rational(1, 2)],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_groups_build() {
        let orders = [6, 3, 24, 6, 60, 60, 60, 60, 48, 120, 512];
        for (name, order) in GROUP_NAMES.iter().zip(orders) {
            assert_eq!(group(name).unwrap().order().unwrap(), order, "{name}");
        }
    }

    #[test]
    fn icosahedron_numbering() {
        let adj = icosahedron_adjacency();
        assert_eq!(adj[0], vec![1, 2, 3, 4, 5]);
        assert_eq!(adj[1], vec![0, 2, 5, 9, 10]);
        for v in 0..12 {
            let mapped: Vec<usize> = {
                let mut m: Vec<usize> = adj[v].iter().map(|&w| opposite(w)).collect();
                m.sort_unstable();
                m
            };
            assert_eq!(adj[opposite(v)], mapped);
        }
    }

    #[test]
    fn graphs_are_regular() {
        for (name, k) in GRAPH_NAMES.iter().zip([3, 3, 5, 3, 8]) {
            let g = graph(name).unwrap();
            assert_eq!(g.regular_degree(), Some(k), "{name}");
        }
    }

    #[test]
    fn unknown_names() {
        assert_eq!(group("nope").unwrap_err().kind(), "UnknownFixture");
        assert!(character_table("S4").is_err());
    }
}
