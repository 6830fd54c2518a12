//! Twisted Riemannian extensions: adding a symmetric (0,2)-tensor φ to the
//! Walker block keeps the Szabó certificate nilpotent.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use szabo::extension::{build_extension, factorization_holds, ExtensionGeometry};
use szabo::numcheck::random_twist;
use szabo::{AffineConnection, Chart};

fn main() {
    let chart = Chart::standard(3);
    let conn = AffineConnection::from_entries(
        chart.clone(),
        chart.base().to_vec(),
        [
            (0, 0, 1, chart.parse("u1*u3").unwrap()),
            (2, 2, 1, chart.parse("u1 + u3").unwrap()),
        ],
    )
    .unwrap();

    for seed in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_twist(&mut rng, &chart, 2, 2);
        let metric = build_extension(&conn, Some(&phi)).unwrap();
        let geo = ExtensionGeometry::new(&metric);
        println!(
            "seed {seed}: φ_11 = {}; P(λ) = {}; factorization holds: {}",
            chart.fmt(phi.get(0, 0)),
            geo.szabo_certificate().render_in(&chart),
            factorization_holds(&geo)
        );
    }
}
