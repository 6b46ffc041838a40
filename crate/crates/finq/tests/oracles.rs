//! Fixture groups checked against brute-force automorphism searches.

use std::collections::BTreeSet;

use finq::dynamics::Graph;
use finq::fixtures;

/// Every adjacency-preserving vertex permutation, by backtracking.
fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, img: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let v = img.len();
        if v == g.n() {
            out.push(img.clone());
            return;
        }
        for w in 0..g.n() {
            if used[w] {
                continue;
            }
            let ok = (0..v).all(|u| g.has_edge(u, v) == g.has_edge(img[u], w));
            if ok {
                img.push(w);
                used[w] = true;
                extend(g, img, used, out);
                used[w] = false;
                img.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), &mut vec![false; g.n()], &mut out);
    out
}

#[test]
fn icosahedron_rotations_are_half_the_automorphisms() {
    let graph = fixtures::graph("icosahedron").unwrap();
    let all: BTreeSet<Vec<usize>> = automorphisms(&graph).into_iter().collect();
    assert_eq!(all.len(), 120);
    let group = fixtures::group("A5ico").unwrap();
    let rot: BTreeSet<Vec<usize>> = group
        .elements()
        .unwrap()
        .iter()
        .map(|p| p.images().to_vec())
        .collect();
    assert_eq!(rot.len(), 60);
    assert!(rot.is_subset(&all));
    let antipode: Vec<usize> = (0..12).map(fixtures::opposite).collect();
    assert!(all.contains(&antipode));
    assert!(!rot.contains(&antipode));
}

#[test]
fn cube_group_is_the_full_automorphism_group() {
    let graph = fixtures::graph("cube").unwrap();
    let all: BTreeSet<Vec<usize>> = automorphisms(&graph).into_iter().collect();
    let group = fixtures::group("cubeAut").unwrap();
    let els: BTreeSet<Vec<usize>> = group
        .elements()
        .unwrap()
        .iter()
        .map(|p| p.images().to_vec())
        .collect();
    assert_eq!(all, els);
}

#[test]
fn tetrahedron_has_symmetric_group() {
    let graph = fixtures::graph("tetrahedron").unwrap();
    assert_eq!(automorphisms(&graph).len(), 24);
}

#[test]
fn fixture_generators_preserve_their_graphs() {
    for (group, graph) in [
        ("A5ico", "icosahedron"),
        ("cubeAut", "cube"),
        ("fullereneC60", "fullereneC60"),
        ("torus8glider", "torus8"),
    ] {
        let g = fixtures::group(group).unwrap();
        let gr = fixtures::graph(graph).unwrap();
        for gen in g.generators() {
            assert!(gr.is_automorphism(gen), "{group} on {graph}");
        }
    }
}

#[test]
fn path_sum_matches_enumerated_paths() {
    use finq::pathsum::amplitude_polynomial;
    use num_bigint::BigInt;
    for t in 0..=8u32 {
        let mut counts = std::collections::BTreeMap::<(i64, usize), u64>::new();
        for code in 0..3u64.pow(t) {
            let (mut c, mut x, mut moves) = (code, 0i64, 0usize);
            for _ in 0..t {
                match c % 3 {
                    0 => {}
                    1 => {
                        x += 1;
                        moves += 1;
                    }
                    _ => {
                        x -= 1;
                        moves += 1;
                    }
                }
                c /= 3;
            }
            *counts.entry((x, moves)).or_insert(0) += 1;
        }
        for x in -(t as i64)..=t as i64 {
            let poly = amplitude_polynomial(t, x).unwrap();
            for (tau, coeff) in poly.iter().enumerate() {
                let want = counts.get(&(x, tau)).copied().unwrap_or(0);
                assert_eq!(*coeff, BigInt::from(want), "t={t} x={x} tau={tau}");
            }
        }
    }
}
