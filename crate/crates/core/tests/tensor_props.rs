mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use szabo::affine::{curvature, nabla_curvature, ricci, ricci_from_curvature};
use szabo::extension::{build_extension, levi_civita_general};
use szabo::numcheck::{random_connection, random_polynomial, random_twist};
use szabo::{AffineConnection, Chart, Slot, TensorField};

use common::{first_bianchi, second_bianchi};

fn connection(seed: u64, n: usize) -> AffineConnection {
    let chart = Chart::standard(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connection(&mut rng, &chart, 2, 2, 0.5)
}

fn random_tensor(seed: u64, conn: &AffineConnection, variance: Vec<Slot>) -> TensorField {
    let chart = conn.chart();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    TensorField::from_fn(conn.dim(), variance, chart.nvars(), |_| {
        random_polynomial(&mut rng, chart.base(), chart.nvars(), 2, 2)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bianchi_identities(seed in any::<u64>(), n in 2usize..=3) {
        let conn = connection(seed, n);
        prop_assert!(first_bianchi(&curvature(&conn)));
        prop_assert!(second_bianchi(&nabla_curvature(&conn)));
    }

    #[test]
    fn curvature_is_antisymmetric_in_k_j(seed in any::<u64>(), n in 2usize..=3) {
        let r = curvature(&connection(seed, n));
        for idx in szabo::tensor::multi_indices(n, 4) {
            let swapped = [idx[0], idx[2], idx[1], idx[3]];
            prop_assert_eq!(r.get(&idx), &-r.get(&swapped));
        }
    }

    #[test]
    fn ricci_is_the_contraction_of_curvature(seed in any::<u64>(), n in 2usize..=3) {
        let conn = connection(seed, n);
        let r = curvature(&conn);
        prop_assert_eq!(ricci(&conn), ricci_from_curvature(&r));
        prop_assert_eq!(r.contract(0, 1).unwrap(), ricci(&conn));
    }

    #[test]
    fn covariant_derivative_obeys_leibniz(seed in any::<u64>(), n in 2usize..=3) {
        let conn = connection(seed, n);
        let a = random_tensor(seed ^ 1, &conn, vec![Slot::Upper]);
        let b = random_tensor(seed ^ 2, &conn, vec![Slot::Lower, Slot::Lower]);
        let lhs = a.tensor_product(&b).unwrap().covariant_derivative(&conn).unwrap();
        let da = a.covariant_derivative(&conn).unwrap();
        let db = b.covariant_derivative(&conn).unwrap();
        let first = da.tensor_product(&b).unwrap();
        // a ⊗ ∇b has the derivative slot second; move it to the front.
        let ab = a.tensor_product(&db).unwrap();
        let second = TensorField::from_fn(n, lhs.variance().to_vec(), lhs.nvars(), |idx| {
            ab.get(&[idx[1], idx[0], idx[2], idx[3]]).clone()
        });
        prop_assert_eq!(lhs, first.add(&second).unwrap());
    }

    #[test]
    fn contraction_is_linear(seed in any::<u64>(), n in 2usize..=3) {
        let conn = connection(seed, n);
        let v = vec![Slot::Upper, Slot::Lower, Slot::Lower];
        let t = random_tensor(seed ^ 4, &conn, v.clone());
        let s = random_tensor(seed ^ 5, &conn, v);
        let sum = t.add(&s).unwrap().contract(0, 2).unwrap();
        prop_assert_eq!(sum, t.contract(0, 2).unwrap().add(&s.contract(0, 2).unwrap()).unwrap());
    }

    #[test]
    fn covariant_derivative_commutes_with_contraction(seed in any::<u64>(), n in 2usize..=3) {
        let conn = connection(seed, n);
        let t = random_tensor(seed ^ 3, &conn, vec![Slot::Upper, Slot::Lower, Slot::Lower]);
        let lhs = t.contract(0, 1).unwrap().covariant_derivative(&conn).unwrap();
        let rhs = t.covariant_derivative(&conn).unwrap().contract(1, 2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn extension_levi_civita_is_metric(seed in any::<u64>(), n in 2usize..=3, twisted in any::<bool>()) {
        let conn = connection(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(7));
        let phi = random_twist(&mut rng, conn.chart(), 2, 2);
        let metric = build_extension(&conn, twisted.then_some(&phi)).unwrap();
        let lc = levi_civita_general(&metric);
        let g = metric.metric();
        let gt = TensorField::from_fn(2 * n, vec![Slot::Lower, Slot::Lower], g.nvars(), |idx| {
            g[(idx[0], idx[1])].clone()
        });
        prop_assert!(gt.covariant_derivative(&lc).unwrap().is_zero());
        for idx in szabo::tensor::multi_indices(2 * n, 3) {
            prop_assert_eq!(lc.christoffel(idx[0], idx[1], idx[2]), lc.christoffel(idx[0], idx[2], idx[1]));
        }
    }
}

#[test]
fn flat_connection_has_zero_curvature() {
    let chart = Chart::standard(3);
    let conn = AffineConnection::zero(chart.clone(), chart.base().to_vec());
    assert!(curvature(&conn).is_zero());
    assert!(nabla_curvature(&conn).is_zero());
    let t = random_tensor(5, &conn, vec![Slot::Lower]);
    let dt = t.covariant_derivative(&conn).unwrap();
    for a in 0..3 {
        for i in 0..3 {
            assert_eq!(dt.get(&[a, i]), &t.get(&[i]).diff(chart.base()[a]));
        }
    }
}
