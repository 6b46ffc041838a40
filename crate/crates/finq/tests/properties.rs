use std::sync::OnceLock;

use finq::born::{cauchy_check, scalar_product, ComponentForm};
use finq::cyclo::Cyclotomic;
use finq::dynamics::{
    evolve, holonomy, permute_state, wreath_act, wreath_inv, wreath_mul, Connection, Rule,
    SplitExtension, WreathElement,
};
use finq::forms::{decompose, Decomposition};
use finq::relations::{base_relation, eca_evolve, Relation};
use finq::{fixtures, Perm, PermGroup};
use num_traits::Zero;
use proptest::prelude::*;

fn perm(k: usize) -> impl Strategy<Value = Perm> {
    Just((0..k).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn wreath_element(n: usize, q: usize) -> impl Strategy<Value = WreathElement> {
    (prop::collection::vec(perm(q), n), perm(n)).prop_map(|(alpha, a)| WreathElement { alpha, a })
}

fn state(n: usize, q: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..q as u8, n)
}

fn relation(points: &'static [&'static str]) -> impl Strategy<Value = Relation> {
    let size = 1usize << points.len();
    prop::collection::vec(any::<bool>(), size).prop_map(move |bits| {
        Relation::from_predicate(points, 2, |t| {
            let idx = t.iter().rev().fold(0usize, |acc, &d| 2 * acc + d as usize);
            bits[idx]
        })
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wreath_action_is_a_right_action(
        s in state(5, 3), u in wreath_element(5, 3), v in wreath_element(5, 3)
    ) {
        let lhs = wreath_act(&wreath_act(&s, &u).unwrap(), &v).unwrap();
        let rhs = wreath_act(&s, &wreath_mul(&u, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = wreath_act(&wreath_act(&s, &u).unwrap(), &wreath_inv(&u).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn wreath_product_is_associative(
        u in wreath_element(4, 3), v in wreath_element(4, 3), w in wreath_element(4, 3)
    ) {
        let l = wreath_mul(&wreath_mul(&u, &v).unwrap(), &w).unwrap();
        let r = wreath_mul(&u, &wreath_mul(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn split_extensions_are_groups(
        pick in 0..3usize,
        kappa_seed in prop::collection::vec(0..6usize, 6),
        s in state(3, 2),
        alphas in prop::collection::vec(prop::collection::vec(perm(2), 3), 3),
        idx in prop::collection::vec(0..6usize, 3),
    ) {
        let g = fixtures::group("S3").unwrap();
        let elements = g.elements().unwrap().to_vec();
        let ext = match pick {
            0 => SplitExtension::wreath(&g).unwrap(),
            1 => SplitExtension::direct(&g).unwrap(),
            _ => {
                let mu = SplitExtension::table(&elements, Perm::inverse).unwrap();
                SplitExtension::new(elements.clone(), mu, kappa_seed).unwrap()
            }
        };
        let els: Vec<WreathElement> = alphas
            .into_iter()
            .zip(&idx)
            .map(|(alpha, &i)| WreathElement { alpha, a: ext.elements()[i].clone() })
            .collect();
        let (u, v, w) = (&els[0], &els[1], &els[2]);
        let uv = ext.mul(u, v).unwrap();
        prop_assert_eq!(
            ext.act(&ext.act(&s, u).unwrap(), v).unwrap(),
            ext.act(&s, &uv).unwrap()
        );
        prop_assert_eq!(
            ext.mul(&uv, w).unwrap(),
            ext.mul(u, &ext.mul(v, w).unwrap()).unwrap()
        );
        let back = ext.act(&ext.act(&s, u).unwrap(), &ext.inv(u).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn symmetric_rules_are_equivariant(
        s in state(8, 2), g_idx in 0..48usize, birth in 0u64..16, survive in 0u64..16
    ) {
        let graph = fixtures::graph("cube").unwrap();
        let group = fixtures::group("cubeAut").unwrap();
        let g = group.elements().unwrap()[g_idx].clone();
        let rule = Rule::BirthSurvival { birth, survive };
        let a = evolve(&permute_state(&s, &g), &rule, &graph).unwrap();
        let b = permute_state(&evolve(&s, &rule, &graph).unwrap(), &g);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn anf_round_trip(r in relation(&["a", "b", "c", "d"])) {
        let anf = r.to_anf().unwrap();
        for idx in 0..16 {
            let t = r.decode(idx);
            prop_assert_eq!(r.contains(&t), anf.eval(&t) == 0);
        }
    }

    #[test]
    fn projection_is_strongest_consequence(
        r in relation(&["a", "b", "c", "d"]),
        extra in relation(&["a", "c", "d"]),
    ) {
        let face = ["a", "c", "d"];
        let p = r.project(&face).unwrap();
        prop_assert!(r.is_subset_of(&p.extend(r.points()).unwrap()).unwrap());
        // Any superset of the projection is a consequence; anything weaker than
        // a consequence must contain the projection.
        let q = p.union(&extra).unwrap();
        if r.is_subset_of(&q.extend(r.points()).unwrap()).unwrap() {
            prop_assert!(p.is_subset_of(&q).unwrap());
        }
        if r.is_subset_of(&extra.extend(r.points()).unwrap()).unwrap() {
            prop_assert!(p.is_subset_of(&extra).unwrap());
        }
    }

    #[test]
    fn base_relation_is_below_inputs(
        r1 in relation(&["a", "b", "c"]),
        r2 in relation(&["b", "c", "d"]),
    ) {
        let base = base_relation(&[r1.clone(), r2.clone()]).unwrap();
        for r in [&r1, &r2] {
            prop_assert!(base.is_subset_of(&r.extend(base.points()).unwrap()).unwrap());
        }
    }

    #[test]
    fn rule_168_zero_diagonals(row in prop::collection::vec(0..2u8, 12)) {
        let rows = eca_evolve(168, &row, 12);
        let m = row.len();
        for (t, r) in rows.iter().enumerate() {
            for x in 0..m {
                if r[x] == 0 {
                    for k in 1..rows.len() - t {
                        prop_assert_eq!(rows[t + k][(x + k * (m - 1)) % m], 0);
                    }
                }
            }
        }
    }

    #[test]
    fn connection_orientation_and_gauge(
        perms in prop::collection::vec(perm(3), 12),
        gamma in prop::collection::vec(perm(3), 8),
    ) {
        let graph = fixtures::graph("cube").unwrap();
        let edges = graph.edges().to_vec();
        let conn = Connection::from_fn(&graph, 3, |i, j| {
            let k = edges.iter().position(|&e| e == (i, j)).unwrap();
            perms[k].clone()
        })
        .unwrap();
        for &(i, j) in &edges {
            prop_assert_eq!(conn.get(j, i).unwrap(), conn.get(i, j).unwrap().inverse());
        }
        let moved = conn.gauge_transform(&gamma).unwrap();
        let cycle = [0, 1, 3, 7, 5, 4];
        let h = holonomy(&conn, &cycle).unwrap();
        let h2 = holonomy(&moved, &cycle).unwrap();
        prop_assert_eq!(h2, gamma[0].inverse().then(&h).then(&gamma[0]));
    }
}

fn a5() -> &'static (PermGroup, Decomposition) {
    static CELL: OnceLock<(PermGroup, Decomposition)> = OnceLock::new();
    CELL.get_or_init(|| {
        let group = fixtures::group("A5ico").unwrap();
        let d = decompose(&group, 1).unwrap();
        (group, d)
    })
}

fn permuted_vector(v: &[u64], g: &Perm) -> Vec<u64> {
    let mut out = vec![0; v.len()];
    for (i, &x) in v.iter().enumerate() {
        out[g.apply(i)] = x;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn forms_are_relabeling_invariant(
        m in prop::collection::vec(0..6u64, 12),
        n in prop::collection::vec(0..6u64, 12),
        g_idx in 0..60usize,
    ) {
        let (group, d) = a5();
        let g = group.elements().unwrap()[g_idx].clone();
        for k in 0..d.forms.len() {
            let form = ComponentForm::from_decomposition(d, k).unwrap();
            let before = scalar_product(&form, &m, &n).unwrap();
            let after = scalar_product(&form, &permuted_vector(&m, &g), &permuted_vector(&n, &g)).unwrap();
            prop_assert_eq!(before, after);
            prop_assert!(cauchy_check(&form, &m, &n).unwrap());
        }
    }

    #[test]
    fn a5_quadratic_identity(
        m in prop::collection::vec(0..50u64, 12),
        n in prop::collection::vec(0..50u64, 12),
    ) {
        let group = fixtures::group("A5ico").unwrap();
        let sum: u128 = group
            .orbitals()
            .iter()
            .map(|o| finq::born::orbital_pairing(o, &m, &n).unwrap())
            .sum();
        let l = |v: &[u64]| v.iter().sum::<u64>() as u128;
        prop_assert_eq!(sum, l(&m) * l(&n));
    }

    #[test]
    fn cyclotomic_field_laws(
        a in prop::collection::vec(-5i64..6, 12),
        b in prop::collection::vec(-5i64..6, 12),
    ) {
        let x = Cyclotomic::from_ints(12, &a);
        let y = Cyclotomic::from_ints(12, &b);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x.clone());
        }
        let n = &x * &x.conjugate();
        prop_assert_eq!(n.conjugate(), n);
    }
}
