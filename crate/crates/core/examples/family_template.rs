//! The three-function family ∇_∂1∂1 = f1∂2, ∇_∂2∂2 = f2∂2, ∇_∂3∂3 = f3∂2
//! with generic quadratic f1, f2, f3: the Szabó characteristic polynomial
//! reduces to its λ^2 coefficient, a cubic form in the direction whose
//! coefficients are the cyclic-parallel residuals.

use std::path::PathBuf;

use szabo::affine::{charpoly, cyclic_parallel_ricci, szabo_operator};
use szabo::problem::Problem;
use szabo::SymbolicVector;

fn main() {
    let file = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/family31-template.geo");
    let p = Problem::load(&file).expect("fixture parses");
    let chart = p.chart();
    let conn = p.connection();

    let s = szabo_operator(conn, &SymbolicVector::symbolic(chart, 3)).unwrap();
    let cert = charpoly(&s);
    for (i, c) in cert.coeffs().iter().enumerate() {
        println!("coefficient of λ^{i}: {} terms", c.len());
    }

    let rho = cyclic_parallel_ricci(conn);
    println!("distinct residuals ρ_(xyz), x ≤ y ≤ z:");
    for x in 0..3 {
        for y in x..3 {
            for z in y..3 {
                println!("  ρ_({}{}{}) has {} terms", x + 1, y + 1, z + 1, rho[(x * 3 + y) * 3 + z].len());
            }
        }
    }
}
