//! Moyal product on the Weyl algebra and the matching normal ordering.

use std::sync::Arc;

use defquant::ainfty::build_constant_instance;
use defquant::algebra::{Names, NCPoly};
use defquant::catalog;
use defquant::cobar::relations;
use defquant::expr::{parse_nc, parse_sym};
use defquant::rewrite::build_system;
use defquant::starprod::StarAlgebra;

fn main() -> defquant::Result<()> {
    let pi = catalog::weyl(1)?;
    let names = Names::standard(2);
    let order = 4;

    let star = StarAlgebra::moyal(&pi, order)?;
    for (f, g) in [("x1", "x2"), ("x2", "x1"), ("x1^2", "x2^2")] {
        let p = star.star(&parse_sym(f, &names, order)?, &parse_sym(g, &names, order)?)?;
        println!("{f} * {g} = {}", p.render(&names));
    }

    let inst = build_constant_instance(&pi, order)?;
    let rels: Vec<NCPoly> = relations(&inst)?.into_iter().map(|(_, r)| r).collect();
    println!("relation: {}", rels[0].render(&names));
    let sys = Arc::new(build_system(2, order, &rels, 8)?.complete(10)?);
    for w in ["x2*x1", "x2^2*x1^2", "x2^3*x1"] {
        let nf = sys.normal_form(&parse_nc(w, &names, order)?)?;
        println!("NF({w}) = {}", nf.render(&names));
    }
    Ok(())
}
