//! Parse, simplify, differentiate and evaluate polynomial expressions.

use szabo::symexpr::{parse_expr, rational, RationalFunction, VarTable};

fn main() {
    let vars = VarTable::new(["u1", "u2", "u3"]).expect("distinct names");
    let p = parse_expr("(u1 + u3)^2 - u1^2 - u3^2", &vars).expect("valid expression");
    println!("p          = {}", p.display(&vars));

    let u1 = vars.get("u1").unwrap();
    println!("dp/du1     = {}", p.diff(u1).display(&vars));

    let point = [rational(2, 1), rational(0, 1), rational(5, 3)];
    println!("p(2, 0, 5/3) = {}", p.eval(&point).unwrap());

    let num = parse_expr("u1^2 - u3^2", &vars).unwrap();
    let den = parse_expr("2*u1 - 2*u3", &vars).unwrap();
    let q = RationalFunction::new(num, den).unwrap();
    println!("(u1^2 - u3^2)/(2*u1 - 2*u3) = {}", q.display(&vars));
}
