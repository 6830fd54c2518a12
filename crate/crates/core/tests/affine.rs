mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use szabo::affine::{
    charpoly, curvature, cyclic_parallel_ricci, is_affine_szabo, is_flat, is_l3_space, ricci, szabo_operator,
};
use szabo::numcheck::{random_connection, random_polynomial};
use szabo::symexpr::{rational, Polynomial};
use szabo::{AffineConnection, Chart, PolyMatrix, SymbolicVector};

use common::load;

/// det by cofactor expansion along the first row.
fn det(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut acc = Polynomial::zero(nvars);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][c] * &det(&minor, nvars);
        if c % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

fn connection(seed: u64, n: usize) -> AffineConnection {
    let chart = Chart::standard(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connection(&mut rng, &chart, 2, 2, 0.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn charpoly_matches_cofactor_determinant(seed in any::<u64>(), n in 1usize..=4) {
        let chart = Chart::standard(2);
        let nv = chart.nvars();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = PolyMatrix::from_fn(n, nv, |_, _| random_polynomial(&mut rng, chart.base(), nv, 2, 2));
        let lam = chart.poly(chart.spectral());
        let rows: Vec<Vec<Polynomial>> = (0..n)
            .map(|r| (0..n).map(|c| if r == c { &lam - &a[(r, c)] } else { -&a[(r, c)] }).collect())
            .collect();
        let cert = charpoly(&a);
        prop_assert_eq!(cert.degree(), n);
        prop_assert_eq!(cert.to_polynomial(chart.spectral(), nv), det(&rows, nv));
    }

    #[test]
    fn szabo_operator_annihilates_its_direction(seed in any::<u64>(), n in 2usize..=3) {
        let conn = connection(seed, n);
        let x = SymbolicVector::symbolic(conn.chart(), n);
        let s = szabo_operator(&conn, &x).unwrap();
        prop_assert!(s.mul_vec(x.components()).iter().all(Polynomial::is_zero));
    }

    #[test]
    fn szabo_operator_is_cubic_in_direction(seed in any::<u64>(), n in 2usize..=3) {
        let conn = connection(seed, n);
        let chart = conn.chart();
        let t = chart.poly(chart.scale());
        let x = SymbolicVector::symbolic(chart, n);
        let tx = SymbolicVector::new(x.components().iter().map(|c| c * &t).collect());
        let s = szabo_operator(&conn, &x).unwrap();
        let t3 = t.pow(3);
        prop_assert_eq!(szabo_operator(&conn, &tx).unwrap(), s.map(|p| p * &t3));
    }

    #[test]
    fn szabo_implies_cyclic_parallel(seed in any::<u64>(), n in 2usize..=3) {
        // Dense 3-d connections make the symbolic charpoly very large.
        let chart = Chart::standard(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let conn = random_connection(&mut rng, &chart, 2, 1, if n == 2 { 0.5 } else { 0.2 });
        if is_affine_szabo(&conn).is_nilpotent() {
            prop_assert!(cyclic_parallel_ricci(&conn).iter().all(Polynomial::is_zero));
        }
    }

    #[test]
    fn two_dimensional_szabo_iff_cyclic_parallel(seed in any::<u64>()) {
        let conn = connection(seed, 2);
        prop_assert_eq!(is_affine_szabo(&conn).is_nilpotent(), is_l3_space(&conn));
    }
}

#[test]
fn charpoly_of_known_matrices() {
    let nv = Chart::standard(1).nvars();
    let jordan = PolyMatrix::from_ints(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]], nv);
    assert!(charpoly(&jordan).is_nilpotent());
    // Companion matrix of λ^3 - 2λ^2 + 3λ - 5.
    let companion = PolyMatrix::from_ints(&[vec![0, 0, 5], vec![1, 0, -3], vec![0, 1, 2]], nv);
    let cert = charpoly(&companion);
    let want: Vec<Polynomial> = [-5, 3, -2].iter().map(|&c| Polynomial::from_int(nv, c)).collect();
    assert_eq!(cert.coeffs(), &want[..]);
    assert!(!cert.is_nilpotent());
    assert!(charpoly(&PolyMatrix::identity(2, nv)).coeffs().iter().all(|c| !c.is_zero()));
}

#[test]
fn hand_computed_curvature_of_nonszabo_witness() {
    // Γ^2_22 = u1: R^2_{122} = ∂1 Γ^2_22 = 1, Ric_12 = R^2_{212} = -1.
    let p = load("nonszabo.geo");
    let conn = p.connection();
    let r = curvature(conn);
    let one = p.chart().one();
    assert_eq!(r.nonzero().len(), 2);
    assert_eq!(r.get(&[1, 0, 1, 1]), &one);
    assert_eq!(r.get(&[1, 1, 0, 1]), &-&one);
    let ric = ricci(conn);
    assert_eq!(ric.nonzero().len(), 1);
    assert_eq!(ric.get(&[0, 1]), &-&one);
    assert!(!is_flat(conn));
    assert!(!is_affine_szabo(conn).is_nilpotent());
    assert!(cyclic_parallel_ricci(conn).iter().any(|p| !p.is_zero()));
}

#[test]
fn example_connection_is_szabo_but_not_flat() {
    let p = load("example36.geo");
    let conn = p.connection();
    let chart = p.chart();
    assert!(!is_flat(conn));
    let cert = is_affine_szabo(conn);
    assert!(cert.is_nilpotent());
    assert_eq!(cert.render_in(chart), "λ^3");
    // Ric_11 = ∂2 Γ^2_11 + ... vanishes since nothing depends on u2.
    let ric = ricci(conn);
    assert!(ric.is_zero());
    let s = szabo_operator(conn, &SymbolicVector::symbolic(chart, 3)).unwrap();
    assert!(!s.is_zero());
    assert!(s.pow(3).is_zero());
}

#[test]
fn szabo_operator_at_a_constant_direction() {
    let p = load("example36.geo");
    let chart = p.chart();
    let x = SymbolicVector::constant(chart, &[rational(1, 1), rational(0, 1), rational(2, 1)]);
    let s = szabo_operator(p.connection(), &x).unwrap();
    assert!(s.pow(3).is_zero());
    assert!(szabo_operator(p.connection(), &SymbolicVector::symbolic(chart, 2)).is_err());
}

#[test]
fn family_instances_follow_the_pde_system() {
    let p = load("family31-template.geo");
    let chart = p.chart();
    let params = chart.params();
    let set = |values: &[(usize, i64)]| {
        let subs: Vec<_> = params
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let c = values.iter().find(|(i, _)| *i == k).map(|&(_, c)| c).unwrap_or(0);
                (v, rational(c, 1))
            })
            .collect();
        p.connection().map(|g| g.eval_partial(&subs)).unwrap()
    };
    // f2 = 0, f1 = 2 + u1*u3, f3 = u1^2 - u3: solves the system.
    let good = set(&[(0, 2), (6, 1), (24, 1), (23, -1)]);
    assert!(cyclic_parallel_ricci(&good).iter().all(Polynomial::is_zero));
    assert!(is_affine_szabo(&good).is_nilpotent());
    // f2 = u1 alone violates ∂1∂2 f2 = f2 ∂1 f2.
    let bad = set(&[(11, 1)]);
    assert!(cyclic_parallel_ricci(&bad).iter().any(|r| !r.is_zero()));
    assert!(!is_affine_szabo(&bad).is_nilpotent());
}
