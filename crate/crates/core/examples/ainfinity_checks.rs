//! Stasheff identities for the two explicit instances, and a seeded sign error.

use defquant::ainfty::{build_constant_instance, build_linear_instance, check_stasheff, check_unitality};
use defquant::algebra::Subset;
use defquant::catalog;

fn main() -> defquant::Result<()> {
    let weyl = build_constant_instance(&catalog::weyl(1)?, 2)?;
    let report = check_stasheff(&weyl, 4)?;
    println!("weyl: stasheff {} , unital {}", report.passed(), check_unitality(&weyl).passed());

    let ce = build_linear_instance(&catalog::sl2(), 2)?;
    println!("sl2: stasheff {}", check_stasheff(&ce, 4)?.passed());

    let broken = ce.with_flipped_sign(vec![Subset::singleton(0), Subset::singleton(1)])?;
    let report = check_stasheff(&broken, 3)?;
    println!("sl2 with d2(e1, e2) negated: stasheff {}", report.passed());
    if let Some(v) = report.violations.first() {
        println!("first violation: {v:?}");
    }
    Ok(())
}
