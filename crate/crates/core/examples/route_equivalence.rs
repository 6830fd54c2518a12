//! The Levi-Civita connection of a Riemannian extension computed twice:
//! from the general formula applied to the metric, and from the closed
//! form in terms of Γ and φ. The two must agree symbol by symbol.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use szabo::extension::{build_extension, levi_civita_closed_form, levi_civita_general};
use szabo::numcheck::{random_connection, random_twist};
use szabo::Chart;

fn main() {
    for seed in 0..5u64 {
        let n = 2 + (seed % 2) as usize;
        let chart = Chart::standard(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let conn = random_connection(&mut rng, &chart, 2, 2, 0.5);
        let phi = random_twist(&mut rng, &chart, 2, 2);
        let metric = build_extension(&conn, Some(&phi)).unwrap();
        let general = levi_civita_general(&metric);
        let closed = levi_civita_closed_form(&conn, Some(&phi)).unwrap();
        let nonzero = general.nonzero_symbols().len();
        println!(
            "seed {seed}, n = {n}: {nonzero} nonzero symbols, routes agree: {}",
            general.symbols() == closed.symbols()
        );
    }
}
