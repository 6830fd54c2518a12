mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use szabo::affine::{curvature, is_affine_szabo};
use szabo::extension::{
    build_extension, curvature_relation_mismatches, factorization_holds, is_locally_symmetric,
    is_pseudo_szabo_nilpotent, levi_civita_closed_form, levi_civita_general, ExtensionGeometry,
};
use szabo::numcheck::{random_connection, random_twist};
use szabo::symexpr::{Polynomial, RationalFunction};
use szabo::{Chart, PolyMatrix, SymmetricBilinear};

use common::{corpus, load};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn routes_agree_on_random_input(seed in any::<u64>(), n in 2usize..=3) {
        let chart = Chart::standard(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let conn = random_connection(&mut rng, &chart, 2, 2, 0.5);
        let phi = random_twist(&mut rng, &chart, 2, 2);
        for twist in [None, Some(&phi)] {
            let metric = build_extension(&conn, twist).unwrap();
            let closed = levi_civita_closed_form(&conn, twist).unwrap();
            let general = levi_civita_general(&metric);
            prop_assert_eq!(general.symbols(), closed.symbols());
            prop_assert!(curvature_relation_mismatches(&conn, twist).unwrap().is_empty());
        }
    }
}

#[test]
fn inverse_agrees_with_gauss_jordan() {
    for c in corpus(6) {
        let metric = build_extension(&c.conn, Some(&c.twist)).unwrap();
        let gj = metric.metric().inverse_rational().unwrap();
        let closed = metric.inverse();
        for (r, row) in gj.iter().enumerate() {
            for (col, x) in row.iter().enumerate() {
                assert_eq!(x, &RationalFunction::from_poly(closed[(r, col)].clone()));
            }
        }
        let id = PolyMatrix::identity(metric.dim(), metric.chart().nvars());
        assert_eq!(metric.metric().mul(metric.inverse()), id);
        assert_eq!(metric.inverse().mul(metric.metric()), id);
    }
}

#[test]
fn walker_block_of_example() {
    let p = load("example36.geo");
    let chart = p.chart();
    let metric = build_extension(p.connection(), None).unwrap();
    let b = metric.walker_block();
    assert_eq!(b[(0, 0)], chart.parse("-2*u1*u3*u5").unwrap());
    assert_eq!(b[(2, 2)], chart.parse("-2*(u1+u3)*u5").unwrap());
    for (r, c) in [(0, 1), (0, 2), (1, 1), (1, 2)] {
        assert!(b[(r, c)].is_zero());
    }
    let g = metric.metric();
    for i in 0..3 {
        assert!(g[(i, i + 3)].is_one() && g[(i + 3, i)].is_one());
        for j in 0..3 {
            assert!(g[(i + 3, j + 3)].is_zero());
        }
    }
}

#[test]
fn example_extension_certificates() {
    let p = load("example36.geo");
    let metric = build_extension(p.connection(), None).unwrap();
    let cert = is_pseudo_szabo_nilpotent(&metric);
    assert_eq!(cert.degree(), 6);
    assert!(cert.is_nilpotent());
    let geo = ExtensionGeometry::new(&metric);
    assert!(factorization_holds(&geo));
    assert!(geo.ricci_operator_certificate().is_nilpotent());
    assert!(geo.block_structure().holds());
    assert_eq!(is_affine_szabo(p.connection()).squared(), cert);
}

#[test]
fn local_symmetry_witness() {
    let p = load("example36.geo");
    let metric = build_extension(p.connection(), None).unwrap();
    let sym = is_locally_symmetric(&metric);
    assert!(!sym.is_symmetric());
    assert!(sym.component([0, 0, 2, 4, 0]).is_one());

    let flat = load("zero.geo");
    let metric = build_extension(flat.connection(), None).unwrap();
    assert!(is_locally_symmetric(&metric).is_symmetric());
    assert!(curvature(&levi_civita_general(&metric)).is_zero());
}

#[test]
fn twisted_samples_stay_szabo() {
    for name in ["metric39-twist1.geo", "metric39-twist2.geo"] {
        let p = load(name);
        let twist = p.twist().expect("fixture has a twist");
        let metric = build_extension(p.connection(), Some(twist)).unwrap();
        let geo = ExtensionGeometry::new(&metric);
        assert!(geo.szabo_certificate().is_nilpotent(), "{name}");
        assert!(factorization_holds(&geo), "{name}");
        let closed = levi_civita_closed_form(p.connection(), Some(twist)).unwrap();
        assert_eq!(geo.connection().symbols(), closed.symbols(), "{name}");
        // Γ̃^4_12 = ½ ∂2 φ_11.
        let half = szabo::symexpr::rational(1, 2);
        assert_eq!(
            geo.connection().christoffel(3, 0, 1),
            &twist.get(0, 0).diff(p.chart().base()[1]).scale(&half),
            "{name}"
        );
    }
}

#[test]
fn twist_changes_the_metric_only_in_the_walker_block() {
    let p = load("example36.geo");
    let chart = p.chart();
    let phi = SymmetricBilinear::from_entries(chart.clone(), [(0, 1, chart.parse("u1^2").unwrap())]).unwrap();
    let plain = build_extension(p.connection(), None).unwrap();
    let twisted = build_extension(p.connection(), Some(&phi)).unwrap();
    let diff = twisted.metric().sub(plain.metric());
    for r in 0..6 {
        for c in 0..6 {
            let want: Polynomial = match (r, c) {
                (0, 1) | (1, 0) => chart.parse("u1^2").unwrap(),
                _ => chart.zero(),
            };
            assert_eq!(diff[(r, c)], want);
        }
    }
}

#[test]
fn walker_block_is_symmetric_and_affine_in_fibers() {
    for c in corpus(8) {
        let metric = build_extension(&c.conn, Some(&c.twist)).unwrap();
        let b = metric.walker_block();
        let chart = metric.chart();
        for r in 0..b.dim() {
            for col in 0..b.dim() {
                assert_eq!(b[(r, col)], b[(col, r)]);
                for &v in chart.fiber() {
                    assert!(b[(r, col)].degree_in(v) <= 1);
                }
            }
        }
    }
}

#[test]
fn invalid_twists_are_rejected() {
    let chart = Chart::standard(2);
    let u = |s: &str| chart.parse(s).unwrap();
    let asym = vec![u("u1"), u("u2"), u("u1"), chart.zero()];
    assert!(SymmetricBilinear::new(chart.clone(), asym).is_err());
    let fiber = vec![u("u3"), chart.zero(), chart.zero(), chart.zero()];
    assert!(SymmetricBilinear::new(chart.clone(), fiber).is_err());
    assert!(SymmetricBilinear::new(chart.clone(), vec![chart.zero(); 3]).is_err());
    assert!(SymmetricBilinear::from_entries(chart.clone(), [(0, 1, u("u1")), (1, 0, u("u2"))]).is_err());
}

#[test]
fn rejects_mismatched_inputs() {
    let p = load("example36.geo");
    let other = Chart::standard(2);
    let phi = SymmetricBilinear::from_entries(other.clone(), [(0, 0, other.parse("u1").unwrap())]).unwrap();
    assert!(build_extension(p.connection(), Some(&phi)).is_err());
    assert!(SymmetricBilinear::from_entries(other.clone(), [(0, 2, other.one())]).is_err());
}
