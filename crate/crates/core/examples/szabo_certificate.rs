//! Affine Szabó operator for a fully symbolic direction and its
//! characteristic polynomial certificate.

use szabo::affine::{charpoly, szabo_operator};
use szabo::{AffineConnection, Chart, SymbolicVector};

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

    let x = SymbolicVector::symbolic(&chart, 3);
    let s = szabo_operator(&conn, &x).unwrap();
    println!("S(X), X = a1 ∂1 + a2 ∂2 + a3 ∂3:");
    for r in 0..3 {
        let row: Vec<String> = (0..3).map(|c| chart.fmt(&s[(r, c)])).collect();
        println!("  [{}]", row.join(", "));
    }
    let cert = charpoly(&s);
    println!("P(λ) = {}", cert.render_in(&chart));
    println!("nilpotent: {}", cert.is_nilpotent());

    // A connection that fails the test, for contrast.
    let bad = AffineConnection::from_entries(chart.clone(), chart.base().to_vec(), [(1, 1, 1, chart.parse("u1").unwrap())])
        .unwrap();
    let cert = charpoly(&szabo_operator(&bad, &x).unwrap());
    println!("Γ^2_22 = u1: P(λ) = {}", cert.render_in(&chart));
}
