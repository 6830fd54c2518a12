//! Classical Riemannian extension of a 3-dimensional affine Szabó
//! connection: Walker metric, curvature, Szabó certificate and the
//! failure of local symmetry.

use szabo::extension::{build_extension, ExtensionGeometry};
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
    let metric = build_extension(&conn, None).unwrap();

    println!("Walker block B = -2 u_k' Γ^k_ij:");
    let b = metric.walker_block();
    for r in 0..3 {
        let row: Vec<String> = (0..3).map(|c| chart.fmt(&b[(r, c)])).collect();
        println!("  [{}]", row.join(", "));
    }

    let geo = ExtensionGeometry::new(&metric);
    println!("nonzero curvature components: {}", geo.curvature().nonzero().len());
    let cert = geo.szabo_certificate();
    println!("P(λ) = {}", cert.render_in(&chart));
    println!("block structure holds: {}", geo.block_structure().holds());

    let sym = geo.local_symmetry();
    println!("locally symmetric: {}", sym.is_symmetric());
    println!("(∇_∂1 R)(∂1,∂3,∂5,∂1) = {}", chart.fmt(sym.component([0, 0, 2, 4, 0])));
}
