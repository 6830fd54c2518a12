//! Curvature, Ricci tensor and cyclic-parallel residuals of a connection
//! given by its Christoffel symbols.

use szabo::affine::{curvature, cyclic_parallel_ricci, is_flat, ricci};
use szabo::{AffineConnection, Chart};

fn main() {
    let chart = Chart::standard(2);
    // Γ^2_11 = u1^2 + u2 on a 2-dimensional chart.
    let conn = AffineConnection::from_entries(
        chart.clone(),
        chart.base().to_vec(),
        [(0, 0, 1, chart.parse("u1^2 + u2").unwrap())],
    )
    .expect("valid entries");

    println!("flat: {}", is_flat(&conn));
    for (idx, value) in curvature(&conn).nonzero() {
        let [h, k, j, i] = [idx[0] + 1, idx[1] + 1, idx[2] + 1, idx[3] + 1];
        println!("R^{h}_{{{k},{j},{i}}} = {}", chart.fmt(value));
    }
    for (idx, value) in ricci(&conn).nonzero() {
        println!("Ric_{{{},{}}} = {}", idx[0] + 1, idx[1] + 1, chart.fmt(value));
    }
    let residuals = cyclic_parallel_ricci(&conn);
    let nonzero = residuals.iter().filter(|p| !p.is_zero()).count();
    println!("nonzero cyclic-parallel residuals: {nonzero}");
}
