//! Custom Taylor components: export an instance to JSON, load it back, and
//! check it before trusting it. Pass a path to load a components file
//! instead, or `--export` to print the Heisenberg components as JSON.

use defquant::ainfty::{build_linear_instance, check_stasheff, AInftyInstance, ComponentsFile};
use defquant::algebra::Names;
use defquant::catalog;
use defquant::cobar::relations;

fn main() -> defquant::Result<()> {
    let arg = std::env::args().nth(1);
    if arg.as_deref() == Some("--export") {
        let file = build_linear_instance(&catalog::heisenberg(), 2)?.to_json();
        println!("{}", defquant::serial::canonical(&file)?);
        return Ok(());
    }
    let file: ComponentsFile = match arg {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => build_linear_instance(&catalog::heisenberg(), 2)?.to_json(),
    };
    let mut inst = AInftyInstance::from_json(&file)?;
    println!("components: {}, verified before check: {}", file.components.len(), inst.is_verified());
    let report = check_stasheff(&inst, 4)?;
    println!("verified after check: {}", inst.mark_verified(&report));

    let names = Names::standard(inst.dim());
    for ((i, j), r) in relations(&inst)? {
        println!("x{}{}: {}", i + 1, j + 1, r.render(&names));
    }
    Ok(())
}
