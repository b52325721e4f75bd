//! δ₀ and δ_ħ on the cobar complex, δ² = 0, and the Koszul cohomology.

use defquant::ainfty::build_linear_instance;
use defquant::algebra::{Names, Subset};
use defquant::catalog;
use defquant::cobar::{check_delta_squared, classical_delta, cohomology_ranks, DualDifferential};

fn main() -> defquant::Result<()> {
    let names = Names::standard(3);
    for s in [Subset::from_indices(&[0, 1]), Subset::from_indices(&[0, 1, 2])] {
        let d = classical_delta(3, 0, s);
        println!("delta0({:?}) = {}", s.indices(), d.render(&names));
    }

    let delta = DualDifferential::new(&build_linear_instance(&catalog::heisenberg(), 2)?);
    println!("heisenberg delta_h^2 = 0: {}", check_delta_squared(&delta, 4).passed());

    let table = cohomology_ranks(&DualDifferential::classical(3, 0), -2..=0, 4)?;
    for w in 0..=4 {
        let h: Vec<i64> = (-2..=0).map(|k| table.get(k, w).map_or(0, |s| s.cohomology)).collect();
        println!("weight {w}: H^-2, H^-1, H^0 = {h:?}");
    }
    Ok(())
}
