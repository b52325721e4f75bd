//! Wheel weights, the Duflo operator, and the c1 symbols of small Lie algebras.

use defquant::algebra::Names;
use defquant::catalog;
use defquant::expr::parse_sym;
use defquant::starprod::{duflo_apply, duflo_series, wheel_operator};

fn main() -> defquant::Result<()> {
    let s = duflo_series(6);
    println!("w1 = {}, b2 = {}, b4 = {}, b6 = {}", s.w1(), s.b(2), s.b(4), s.b(6));

    for (name, pi) in [("heisenberg", catalog::heisenberg()), ("sl2", catalog::sl2()), ("solvable2", catalog::solvable2())] {
        let names = Names::standard(pi.dim());
        let c1 = wheel_operator(&pi, 1);
        let c2 = wheel_operator(&pi, 2);
        println!("{name}: c1 symbol {}, c2 symbol {}", c1.render(&names), c2.render(&names));
    }

    let pi = catalog::sl2();
    let names = Names::standard(3);
    let f = parse_sym("x1^2 + x2^2 + x3^2", &names, 2)?;
    println!("duflo(casimir) = {}", duflo_apply(&s, &pi, &f)?.render(&names));
    Ok(())
}
