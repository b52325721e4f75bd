//! The quadratic bivector x1 x2 ∂1∧∂2 quantized to first order in ħ.

use std::sync::Arc;

use defquant::algebra::{NCPoly, Names};
use defquant::catalog;
use defquant::cobar::quadratic_relations;
use defquant::expr::{parse_nc, parse_sym};
use defquant::rewrite::build_system;
use defquant::starprod::{associator, StarAlgebra};

fn main() -> defquant::Result<()> {
    let pi = catalog::quantum_plane();
    let names = Names::standard(2);

    let rels: Vec<NCPoly> = quadratic_relations(&pi)?.into_iter().map(|(_, r)| r).collect();
    println!("relation mod h^2: {}", rels[0].render(&names));
    let sys = Arc::new(build_system(2, 1, &rels, 8)?.complete(10)?);
    for w in ["x2*x1", "x2^2*x1", "x2^2*x1^3"] {
        println!("NF({w}) = {}", sys.normal_form(&parse_nc(w, &names, 1)?)?.render(&names));
    }
    let h = sys.hilbert(6);
    println!("flat to degree 6: {}", h.is_flat());

    let star = StarAlgebra::first_order(&pi, 1);
    let f = parse_sym("x1^2", &names, 1)?;
    let g = parse_sym("x2", &names, 1)?;
    println!("x1^2 * x2 = {}", star.star(&f, &g)?.render(&names));
    println!("associator zero mod h^2: {}", associator(&star, &f, &g, &g)?.is_zero());
    Ok(())
}
