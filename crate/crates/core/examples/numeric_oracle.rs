//! Numeric backstops: central differences against exact derivatives and
//! exact nilpotency probes at random rational points.

use szabo::affine::szabo_operator;
use szabo::numcheck::{fd_check_derivative, nilpotency_report, SamplePlan};
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
    let plan = SamplePlan::new(42, 3).unwrap();

    let gamma = conn.christoffel(1, 0, 0);
    let fd = fd_check_derivative(gamma, chart.base()[0], &plan, chart.vars()).unwrap();
    print!("{fd}");

    let s = szabo_operator(&conn, &SymbolicVector::symbolic(&chart, 3)).unwrap();
    let probes = nilpotency_report("Szabó", &s, &plan, chart.vars()).unwrap();
    print!("{probes}");
    println!("all passed: {}", fd.passed() && probes.passed());
}
