//! U_ħ(sl2) from the Chevalley-Eilenberg instance: completion, PBW basis
//! and the transported (Gutt) star product.

use std::sync::Arc;

use defquant::ainfty::build_linear_instance;
use defquant::algebra::{NCPoly, Names};
use defquant::catalog;
use defquant::cobar::relations;
use defquant::expr::parse_sym;
use defquant::rewrite::build_system;
use defquant::starprod::{associator, StarAlgebra};

fn main() -> defquant::Result<()> {
    let pi = catalog::sl2();
    let names = Names::standard(3);
    let order = 3;

    let inst = build_linear_instance(&pi, order)?;
    let rels: Vec<NCPoly> = relations(&inst)?.into_iter().map(|(_, r)| r).collect();
    for r in &rels {
        println!("relation: {}", r.render(&names));
    }
    let sys = Arc::new(build_system(3, order, &rels, 8)?.complete(100)?);
    println!("status: {:?}, rules added by completion: {}", sys.status(), sys.added_rules());
    let h = sys.hilbert(6);
    println!("irreducible words by degree: {:?}", h.counts);

    let star = StarAlgebra::gutt(&pi, order, 8)?;
    let f = parse_sym("x1", &names, order)?;
    let g = parse_sym("x2*x3", &names, order)?;
    println!("x1 * x2*x3 = {}", star.star(&f, &g)?.render(&names));
    let a = associator(&star, &f, &g, &parse_sym("x1^2", &names, order)?)?;
    println!("associator zero: {}", a.is_zero());
    Ok(())
}
