use finq::fixtures;
use finq::forms::{self, combine, decompose};
use finq::{Cyclotomic, Perm};
use num_traits::{One, Zero};

fn identity(n: usize) -> Vec<Vec<Cyclotomic>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() })
                .collect()
        })
        .collect()
}

fn add(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

fn conj_transpose(m: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].conjugate()).collect()).collect()
}

fn permuted(m: &[Vec<Cyclotomic>], g: &Perm) -> Vec<Vec<Cyclotomic>> {
    let n = m.len();
    let mut out = vec![vec![Cyclotomic::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            out[g.apply(i)][g.apply(j)] = m[i][j].clone();
        }
    }
    out
}

#[test]
fn pipeline_laws_on_fixtures() {
    for name in ["S3", "C3", "SL23deg8", "A2roots", "A5ico", "A5deg5", "A5deg6", "A5deg10", "cubeAut"] {
        let g = fixtures::group(name).unwrap();
        let d = decompose(&g, 1).unwrap();
        let n = g.degree();
        let dims = d.dimensions();
        let mult: Vec<u32> = d.factorization.factors.iter().map(|f| f.multiplicity()).collect();
        let total: usize = dims.iter().zip(&mult).map(|(&dk, &mk)| dk * mk as usize).sum();
        assert_eq!(total, n, "{name}");
        if d.coarsening.is_identity() {
            let squares: u32 = mult.iter().map(|m| m * m).sum();
            assert_eq!(squares as usize, d.orbitals.len(), "{name}");
        }
        let mut sum = vec![vec![Cyclotomic::zero(); n]; n];
        for f in &d.forms {
            let b = f.matrix(&d.basis);
            assert_eq!(conj_transpose(&b), b, "{name} hermitian");
            for gen in g.generators() {
                assert_eq!(permuted(&b, gen), b, "{name} invariant");
            }
            sum = add(&sum, &b);
        }
        assert_eq!(sum, identity(n), "{name} completeness");
    }
}

#[test]
fn basis_sums_to_all_ones() {
    for name in ["SL23deg8", "A2roots", "A5ico"] {
        let g = fixtures::group(name).unwrap();
        let basis = forms::basis_forms(&g);
        let n = g.degree();
        let ones = vec![Cyclotomic::one(); basis.len()];
        let j = combine(&basis, &ones);
        assert!(j.iter().flatten().all(|c| *c == Cyclotomic::one()), "{name}");
        let _ = n;
    }
}
