//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use defquant::ainfty::{build_constant_instance, build_linear_instance, check_stasheff};
use defquant::algebra::hseries::{integer, rational};
use defquant::algebra::monomial::binomial;
use defquant::algebra::{Basis, HSeries, NCPoly, NCWord, Names, PoissonBivector, Subset, SymMonomial, SymPoly};
use defquant::catalog;
use defquant::cli::{cmd_relations, Format};
use defquant::cobar::{
    check_delta_squared, classical_delta, cohomology_ranks, quadratic_relations, relations, DualDifferential,
};
use defquant::problem::Problem;
use defquant::rewrite::{build_system, Status};
use defquant::starprod::{apply_operator, associator, duflo_series, wheel_operator, StarAlgebra};
use defquant::verify::{verify_constant, verify_linear, Mutation, Outcome, Suite, VerificationCase};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(start: Instant, limit: u64) -> Result<(), String> {
    let t = start.elapsed();
    ensure!(t <= Duration::from_secs(limit), "took {:.1}s, limit {limit}s", t.as_secs_f64());
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng, dim: usize, order: usize, max_degree: usize) -> SymPoly {
    let mut p = SymPoly::zero(dim, order);
    while p.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let mut e = vec![0u32; dim];
            for _ in 0..rng.gen_range(0..=max_degree) {
                e[rng.gen_range(0..dim)] += 1;
            }
            p.add_term(SymMonomial::new(e), &HSeries::constant(integer(rng.gen_range(1..=5)), order));
        }
    }
    p
}

fn linear_relations(pi: &PoissonBivector, order: usize) -> Result<Vec<NCPoly>, String> {
    let inst = ok(build_linear_instance(pi, order))?;
    Ok(ok(relations(&inst))?.into_iter().map(|(_, r)| r).collect())
}

fn symplectic3() -> PoissonBivector {
    PoissonBivector::constant(3, &[((0, 1), integer(1)), ((0, 2), integer(2)), ((1, 2), integer(-1))]).unwrap()
}

fn relation_goldens() -> Result<String, String> {
    let start = Instant::now();
    let cases: [(&str, &str, &[&str]); 4] = [
        ("weyl", "dim = 2\n[[pi]]\ni = 1\nj = 2\nvalue = \"1\"\n", &["x1*x2 - x2*x1 - h"]),
        (
            "heisenberg",
            "dim = 3\n[[pi]]\ni = 1\nj = 2\nvalue = \"x3\"\n",
            &["x1*x2 - x2*x1 - h*x3", "x1*x3 - x3*x1", "x2*x3 - x3*x2"],
        ),
        (
            "sl2",
            "dim = 3\n[[pi]]\ni = 1\nj = 2\nvalue = \"x3\"\n[[pi]]\ni = 2\nj = 3\nvalue = \"x1\"\n[[pi]]\ni = 3\nj = 1\nvalue = \"x2\"\n",
            &["x1*x2 - x2*x1 - h*x3", "x1*x3 - x3*x1 + h*x2", "x2*x3 - x3*x2 - h*x1"],
        ),
        ("solvable2", "dim = 2\n[[pi]]\ni = 1\nj = 2\nvalue = \"x1\"\n", &["x1*x2 - x2*x1 - h*x1"]),
    ];
    for (name, src, expected) in cases {
        let p = ok(Problem::from_toml(src))?;
        let out = ok(cmd_relations(&p, None, Format::Text))?.text;
        ensure!(out.lines().collect::<Vec<_>>() == expected, "{name}: got {out:?}");
    }
    within(start, 1)?;
    Ok("weyl, heisenberg, sl2, solvable2".into())
}

fn constant_isomorphism() -> Result<String, String> {
    let start = Instant::now();
    let mut checked = 0;
    for n in [1, 2] {
        let pi = ok(catalog::weyl(n))?;
        let report = ok(verify_constant(&pi, 4, 4, 200))?;
        ensure!(report.passed(), "d={}:\n{report}", 2 * n);
        checked += report.check("multiplicativity").map_or(0, |c| c.checked);
    }
    within(start, 30)?;
    Ok(format!("d=2,4: {checked} products"))
}

fn linear_flatness() -> Result<String, String> {
    let start = Instant::now();
    let weyl = ok(catalog::weyl(1))?;
    let inst = ok(build_constant_instance(&weyl, 4))?;
    let weyl_rels: Vec<NCPoly> = ok(relations(&inst))?.into_iter().map(|(_, r)| r).collect();
    let systems = [
        ("weyl", 2, weyl_rels),
        ("heisenberg", 3, linear_relations(&catalog::heisenberg(), 4)?),
        ("sl2", 3, linear_relations(&catalog::sl2(), 4)?),
        ("solvable2", 2, linear_relations(&catalog::solvable2(), 4)?),
    ];
    for (name, d, rels) in systems {
        let sys = ok(ok(build_system(d, 4, &rels, 8))?.complete(100))?;
        ensure!(sys.status() == Status::Completed, "{name}: {:?}", sys.status());
        ensure!(sys.added_rules() == 0, "{name}: {} rules added", sys.added_rules());
        let h = sys.hilbert(6);
        for n in 0..=6 {
            ensure!(h.counts[n] == binomial(n + d - 1, n), "{name}: degree {n} count {}", h.counts[n]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, pi) in [("heisenberg", catalog::heisenberg()), ("sl2", catalog::sl2()), ("solvable2", catalog::solvable2())] {
        let star = ok(StarAlgebra::gutt(&pi, 4, 12))?;
        for _ in 0..100 {
            let [f, g, h] = [0, 1, 2].map(|_| random_poly(&mut rng, pi.dim(), 4, 4));
            ensure!(ok(associator(&star, &f, &g, &h))?.is_zero(), "{name}: associator nonzero");
        }
    }
    within(start, 60)?;
    Ok("4 systems, 300 triples".into())
}

fn stasheff() -> Result<String, String> {
    let start = Instant::now();
    let mut instances = vec![
        ("weyl d=2", ok(build_constant_instance(&ok(catalog::weyl(1))?, 2))?),
        ("constant d=3", ok(build_constant_instance(&symplectic3(), 2))?),
        ("heisenberg", ok(build_linear_instance(&catalog::heisenberg(), 2))?),
        ("sl2", ok(build_linear_instance(&catalog::sl2(), 2))?),
    ];
    let mut tuples = 0;
    for (name, inst) in &instances {
        let r = ok(check_stasheff(inst, 4))?;
        ensure!(r.passed(), "{name}: {:?}", r.violations.first());
        tuples += r.tuples_checked;
    }
    let (_, sl2) = instances.pop().unwrap();
    let mutated = ok(sl2.with_flipped_sign(vec![Subset::singleton(0), Subset::singleton(1)]))?;
    ensure!(!ok(check_stasheff(&mutated, 4))?.passed(), "sign mutation not detected");
    within(start, 60)?;
    Ok(format!("{tuples} tuples; mutation detected"))
}

fn cobar_differential() -> Result<String, String> {
    let names = Names::standard(2);
    let d12 = classical_delta(2, 0, Subset::from_indices(&[0, 1])).render(&names);
    ensure!(d12 == "x1*x2 - x2*x1", "delta0(x12) = {d12}");
    let mut count = 0;
    for d in 1..=3 {
        ensure!(check_delta_squared(&DualDifferential::classical(d, 2), 4).passed(), "delta0^2, d={d}");
        count += 1;
    }
    let instances = [
        ("weyl", ok(build_constant_instance(&ok(catalog::weyl(1))?, 4))?),
        ("constant d=3", ok(build_constant_instance(&symplectic3(), 4))?),
        ("heisenberg", ok(build_linear_instance(&catalog::heisenberg(), 4))?),
        ("sl2", ok(build_linear_instance(&catalog::sl2(), 4))?),
        ("solvable2", ok(build_linear_instance(&catalog::solvable2(), 4))?),
    ];
    for (name, inst) in &instances {
        let r = check_delta_squared(&DualDifferential::new(inst), 4);
        ensure!(r.passed(), "delta_h^2 on {name}: {:?}", r.failures.first());
        count += 1;
    }
    Ok(format!("{count} differentials; delta0(x12) = {d12}"))
}

fn koszul_window() -> Result<String, String> {
    let start = Instant::now();
    for d in 1..=3 {
        let t = ok(cohomology_ranks(&DualDifferential::classical(d, 0), -2..=0, 4))?;
        for w in 0..=4usize {
            let hm1 = t.get(-1, w).ok_or("missing slot")?.cohomology;
            let h0 = t.get(0, w).ok_or("missing slot")?.cohomology;
            ensure!(hm1 == 0, "d={d} w={w}: H^-1 = {hm1}");
            ensure!(h0 == binomial(w + d - 1, w) as i64, "d={d} w={w}: H^0 = {h0}");
        }
    }
    within(start, 120)?;
    Ok("d<=3, w<=4".into())
}

fn quadratic_case() -> Result<String, String> {
    let pi = catalog::quantum_plane();
    let rels: Vec<NCPoly> = ok(quadratic_relations(&pi))?.into_iter().map(|(_, r)| r).collect();
    let sys = Arc::new(ok(ok(build_system(2, 1, &rels, 8))?.complete(10))?);
    let nf = ok(sys.normal_form(&NCPoly::monomial(2, 1, NCWord::new(vec![1, 0]))))?;
    let expected = NCPoly::term(2, NCWord::new(vec![0, 1]), HSeries::from_coeffs(vec![integer(1), integer(-1)], 1));
    ensure!(nf == expected, "NF(x2*x1) = {}", nf.render(&Names::standard(2)));
    let h = sys.hilbert(6);
    ensure!(h.is_flat(), "Hilbert mismatch {:?}", h.first_mismatch());
    let star = StarAlgebra::first_order(&pi, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let [f, g, k] = [0, 1, 2].map(|_| random_poly(&mut rng, 2, 1, 4));
        ensure!(ok(associator(&star, &f, &g, &k))?.is_zero(), "associator nonzero mod h^2");
    }
    Ok("NF(x2*x1) = (1-h)x1*x2; flat to degree 6; 100 triples".into())
}

fn duflo() -> Result<String, String> {
    let s = duflo_series(8);
    ensure!(s.w1() == rational(-1, 4), "w1 = {}", s.w1());
    ensure!(s.b(2) == rational(1, 48), "b2 = {}", s.b(2));
    ensure!(s.b(4) == rational(-1, 5760), "b4 = {}", s.b(4));
    for (name, pi) in [("heisenberg", catalog::heisenberg()), ("sl2", catalog::sl2())] {
        ensure!(wheel_operator(&pi, 1).is_zero(), "c1 nonzero for {name}");
    }
    // c1 acts as a derivation of the transported product on the solvable algebra.
    let pi = catalog::solvable2();
    let c1 = wheel_operator(&pi, 1).with_order(4);
    ensure!(!c1.is_zero(), "c1 vanishes for solvable2");
    let star = ok(StarAlgebra::gutt(&pi, 4, 8))?;
    let basis = SymMonomial::all_up_to(2, 4);
    let mut pairs = 0;
    for a in &basis {
        for b in &basis {
            if a.degree() + b.degree() > 4 {
                continue;
            }
            let f = SymPoly::monomial(2, 4, a.clone());
            let g = SymPoly::monomial(2, 4, b.clone());
            let lhs = apply_operator(&c1, &ok(star.star(&f, &g))?);
            let rhs = &ok(star.star(&apply_operator(&c1, &f), &g))? + &ok(star.star(&f, &apply_operator(&c1, &g)))?;
            ensure!(lhs == rhs, "c1 not a derivation on {a:?}, {b:?}");
            pairs += 1;
        }
    }
    let report = ok(verify_linear(&pi, 4, 4))?;
    ensure!(report.check("c1_derivation").is_some_and(|c| c.outcome == Outcome::Pass), "c1_derivation check failed");
    Ok(format!("w1, b2, b4; c1 derivation on {pairs} pairs"))
}

fn mutations() -> Result<String, String> {
    let cases = [
        ("broken jacobi", VerificationCase::new(Suite::Linear, catalog::sl2()).with_mutation(Mutation::BrokenJacobi)),
        ("flipped sign", VerificationCase::new(Suite::Linear, catalog::heisenberg()).with_mutation(Mutation::FlipDeltaSign)),
        ("flipped sign", VerificationCase::new(Suite::Constant, ok(catalog::weyl(1))?).with_mutation(Mutation::FlipDeltaSign)),
        ("corrupt rule", VerificationCase::new(Suite::Linear, catalog::sl2()).with_mutation(Mutation::CorruptRule)),
        ("corrupt rule", VerificationCase::new(Suite::Constant, ok(catalog::weyl(1))?).with_mutation(Mutation::CorruptRule)),
    ];
    let mut caught = Vec::new();
    for (name, case) in cases {
        let report = ok(case.run())?;
        ensure!(!report.passed(), "{name} not detected");
        let ce = report.first_counterexample().ok_or(format!("{name}: no counterexample"))?;
        ensure!(ok(case.replay(ce))?, "{name}: counterexample {ce:?} does not replay");
        caught.push(format!("{name} by {}", ce.check));
    }
    Ok(caught.join(", "))
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("relation goldens", relation_goldens),
        ("constant-case isomorphism", constant_isomorphism),
        ("linear-case PBW and flatness", linear_flatness),
        ("Stasheff identities", stasheff),
        ("cobar differential", cobar_differential),
        ("Koszul window", koszul_window),
        ("quadratic case mod h^2", quadratic_case),
        ("Duflo data", duflo),
        ("mutation detection", mutations),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.2}s) {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2}s) {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
