//! End-to-end verification suites: the quantized algebra against the
//! rewriting quotient, A∞ axioms, δ² = 0, flatness and Koszulness.
//!
//! Every probe is exact. A failing check carries a [`Counterexample`] whose
//! inputs are plain strings; [`VerificationCase::replay`] re-evaluates that
//! single probe from scratch.

use std::cell::RefCell;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ainfty::{build_instance, check_stasheff, stasheff_expression, AInftyInstance};
use crate::algebra::hseries::{integer, rational};
use crate::algebra::monomial::binomial;
use crate::algebra::{symmetrize, Basis, HSeries, NCPoly, NCWord, Names, PoissonBivector, Subset, SymMonomial, SymPoly};
use crate::cobar::{check_delta_squared, cohomology_ranks, quadratic_relations, relations, DualDifferential};
use crate::error::{Error, Result};
use crate::expr::parse_sym;
use crate::rewrite::{build_system, RewriteSystem, Status, DEFAULT_DEGREE_BOUND, DEFAULT_RULE_BUDGET};
use crate::starprod::{apply_operator, duflo_series, first_order_star, moyal_star, wheel_operator, QuotientAlgebra};

pub const SCHEMA_VERSION: u32 = 1;

/// Degree up to which products are checked exhaustively on monomial pairs.
pub const EXHAUSTIVE_DEGREE: usize = 3;

/// Degree up to which Hilbert counts are compared.
pub const FLATNESS_DEGREE: usize = 6;

/// Total degree up to which the c_1-derivation property is checked.
pub const C1_DEGREE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum Suite {
    Constant,
    Linear,
    Quadratic,
    Koszul { max_weight: usize },
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::Constant => f.write_str("constant"),
            Suite::Linear => f.write_str("linear"),
            Suite::Quadratic => f.write_str("quadratic"),
            Suite::Koszul { max_weight } => write!(f, "koszul(max_weight={max_weight})"),
        }
    }
}

/// A defect seeded into the pipeline before checking.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    #[default]
    None,
    /// Negate one Taylor component entry (or the ħ-part of one quadratic relation).
    FlipDeltaSign,
    /// Add ħ to the right-hand side of the first rewrite rule.
    CorruptRule,
    /// Replace Sym by Sym∘(1 + cħ∂_i∂_j).
    PerturbSymmetrization,
    /// Perturb one structure constant until Jacobi fails.
    BrokenJacobi,
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mutation::None => "none",
            Mutation::FlipDeltaSign => "flip_delta_sign",
            Mutation::CorruptRule => "corrupt_rule",
            Mutation::PerturbSymmetrization => "perturb_symmetrization",
            Mutation::BrokenJacobi => "broken_jacobi",
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerificationCase {
    pub suite: Suite,
    pub pi: PoissonBivector,
    /// Degree bound D on the factors of checked products.
    pub degree: usize,
    /// ħ-truncation N (forced to 1 for the quadratic suite, 0 for Koszul).
    pub order: usize,
    /// Number of random probes per randomized check.
    pub trials: usize,
    pub seed: u64,
    pub mutation: Mutation,
}

impl VerificationCase {
    pub fn new(suite: Suite, pi: PoissonBivector) -> Self {
        VerificationCase {
            suite,
            pi,
            degree: 4,
            order: 4,
            trials: 100,
            seed: 0,
            mutation: Mutation::None,
        }
    }

    pub fn with_degree(mut self, degree: usize) -> Self {
        self.degree = degree;
        self
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mutation(mut self, mutation: Mutation) -> Self {
        self.mutation = mutation;
        self
    }

    /// An unmutated case is expected to pass.
    pub fn expects_pass(&self) -> bool {
        self.mutation == Mutation::None
    }

    fn effective_order(&self) -> usize {
        match self.suite {
            Suite::Quadratic => 1,
            Suite::Koszul { .. } => 0,
            _ => self.order,
        }
    }

    pub fn run(&self) -> Result<VerificationReport> {
        let start = Instant::now();
        let ctx = Context::build(self)?;
        let checks = ctx.run_all();
        Ok(VerificationReport {
            schema_version: SCHEMA_VERSION,
            passed: checks.iter().all(|c| c.outcome != Outcome::Fail),
            config: ctx.echo(),
            checks,
            elapsed: start.elapsed(),
        })
    }

    /// Re-evaluates the probe recorded in `ce` on a freshly built pipeline;
    /// true if it still fails with the same value.
    pub fn replay(&self, ce: &Counterexample) -> Result<bool> {
        let ctx = Context::build(self)?;
        let probe = ctx.probe(&ce.check, &ce.inputs)?;
        Ok(matches!(probe, Some((e, a)) if e == ce.expected && a == ce.actual))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub outcome: Outcome,
    /// Number of probes evaluated.
    pub checked: usize,
    pub detail: String,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub suite: Suite,
    pub dim: usize,
    pub pi: serde_json::Value,
    pub degree: usize,
    pub order: usize,
    pub trials: usize,
    pub seed: u64,
    pub mutation: Mutation,
    pub relations: Vec<String>,
    pub system_status: Option<Status>,
    pub rules: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub passed: bool,
    pub config: ConfigEcho,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The first failing check's counterexample.
    pub fn first_counterexample(&self) -> Option<&Counterexample> {
        self.checks.iter().find_map(|c| c.counterexample.as_ref())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "suite {}  dim {}  D={}  N={}  trials {}  seed {}  mutation {}",
            c.suite, c.dim, c.degree, c.order, c.trials, c.seed, c.mutation
        )?;
        for r in &c.relations {
            writeln!(f, "  relation  {r}")?;
        }
        if let Some(s) = c.system_status {
            writeln!(f, "  system    {s}, {} rules", c.rules.len())?;
        }
        for ch in &self.checks {
            writeln!(f, "  {} {:<20} {:>6}  {}", ch.outcome, ch.name, ch.checked, ch.detail)?;
            if let Some(ce) = &ch.counterexample {
                writeln!(f, "       inputs   [{}]", ce.inputs.join("; "))?;
                writeln!(f, "       expected {}", ce.expected)?;
                writeln!(f, "       actual   {}", ce.actual)?;
            }
        }
        write!(f, "result: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Standard case for a constant π: Moyal against NF∘Sym.
pub fn verify_constant(pi: &PoissonBivector, degree: usize, order: usize, trials: usize) -> Result<VerificationReport> {
    VerificationCase::new(Suite::Constant, pi.clone())
        .with_degree(degree)
        .with_order(order)
        .with_trials(trials)
        .run()
}

/// Standard case for a linear π: the transported product on the PBW quotient.
pub fn verify_linear(pi: &PoissonBivector, degree: usize, order: usize) -> Result<VerificationReport> {
    VerificationCase::new(Suite::Linear, pi.clone())
        .with_degree(degree)
        .with_order(order)
        .run()
}

/// Standard case for a quadratic π, modulo ħ².
pub fn verify_quadratic(pi: &PoissonBivector, degree: usize) -> Result<VerificationReport> {
    VerificationCase::new(Suite::Quadratic, pi.clone()).with_degree(degree).run()
}

/// Cohomology of the classical cobar complex of ∧(V*) with dim V = `dim`.
pub fn verify_koszul(dim: usize, max_weight: usize) -> Result<VerificationReport> {
    VerificationCase::new(Suite::Koszul { max_weight }, crate::catalog::abelian(dim)).run()
}

/// Bernoulli numbers B_0..=B_n from Σ_{k≤m} C(m+1,k) B_k = 0.
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let mut acc = BigRational::zero();
        let mut c = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(c.clone()) * bk;
            c = c * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Probe result: `None` if it holds, otherwise (expected, actual).
type Probe = Option<(String, String)>;

struct Context {
    case: VerificationCase,
    names: Names,
    order: usize,
    pi: PoissonBivector,
    inst: Option<AInftyInstance>,
    delta: Option<DualDifferential>,
    relations: Vec<((usize, usize), NCPoly)>,
    system: std::result::Result<RewriteSystem, String>,
    quotient: Option<RefCell<QuotientAlgebra>>,
    perturbation: Option<(BigRational, usize, usize)>,
}

fn wrong_class(expected: &str, pi: &PoissonBivector) -> Error {
    Error::WrongClass {
        expected: expected.into(),
        found: pi.class().to_string(),
    }
}

fn not_applicable(case: &VerificationCase) -> Error {
    Error::Invalid(format!("mutation {} does not apply to the {} suite", case.mutation, case.suite))
}

/// Adds ±x_l to structure constants until the Jacobi identity fails.
fn break_jacobi(pi: &PoissonBivector) -> Result<PoissonBivector> {
    let d = pi.dim();
    if d < 3 {
        return Err(Error::Invalid("every bivector in dimension < 3 satisfies Jacobi".into()));
    }
    for i in 0..d {
        for j in i + 1..d {
            for l in 0..d {
                for sign in [1, -1] {
                    let mut upper = Vec::new();
                    for a in 0..d {
                        for b in a + 1..d {
                            let mut e = pi.entry(a, b).clone();
                            if (a, b) == (i, j) {
                                e.add_term(SymMonomial::var(d, l), &HSeries::constant(integer(sign), 0));
                            }
                            upper.push(((a, b), e));
                        }
                    }
                    let candidate = PoissonBivector::from_upper(d, upper)?;
                    if !candidate.is_poisson() {
                        return Ok(candidate);
                    }
                }
            }
        }
    }
    Err(Error::Invalid("no single structure-constant perturbation breaks Jacobi".into()))
}

fn flip_hbar_part(rel: &NCPoly) -> NCPoly {
    rel.map_coeffs(|c| {
        let mut coeffs = c.coeffs().to_vec();
        for x in coeffs.iter_mut().skip(1) {
            *x = -x.clone();
        }
        HSeries::from_coeffs(coeffs, c.order())
    })
}

fn parse_indices(s: &str, dim: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part
            .parse()
            .map_err(|_| Error::Invalid(format!("bad index {part:?}")))?;
        if i == 0 || i > dim {
            return Err(Error::Invalid(format!("index {i} out of range 1..={dim}")));
        }
        out.push(i - 1);
    }
    Ok(out)
}

fn render_indices(ix: &[usize]) -> String {
    ix.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("bad number {s:?}")))
}

fn one_input(inputs: &[String], n: usize) -> Result<&[String]> {
    if inputs.len() != n {
        return Err(Error::Invalid(format!("expected {n} inputs, got {}", inputs.len())));
    }
    Ok(inputs)
}

fn random_monomial<R: Rng>(rng: &mut R, dim: usize, max_degree: usize) -> SymMonomial {
    let degree = rng.gen_range(0..=max_degree);
    let mut e = vec![0u32; dim];
    for _ in 0..degree {
        e[rng.gen_range(0..dim)] += 1;
    }
    SymMonomial::new(e)
}

/// One to three terms of degree ≤ max_degree with small nonzero integer
/// coefficients, sometimes carrying an ħ-term.
fn random_poly<R: Rng>(rng: &mut R, dim: usize, order: usize, max_degree: usize) -> SymPoly {
    let mut p = SymPoly::zero(dim, order);
    while p.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let m = random_monomial(rng, dim, max_degree);
            let mut coeffs = vec![integer(nonzero(rng))];
            if order >= 1 && rng.gen_bool(0.3) {
                coeffs.push(integer(nonzero(rng)));
            }
            p.add_term(m, &HSeries::from_coeffs(coeffs, order));
        }
    }
    p
}

fn nonzero<R: Rng>(rng: &mut R) -> i64 {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

const CHECKS_CONSTANT: &[&str] = &[
    "relations",
    "delta_squared",
    "stasheff",
    "completion",
    "relations_reduce",
    "flatness",
    "unitriangularity",
    "multiplicativity",
];

const CHECKS_LINEAR: &[&str] = &[
    "jacobi",
    "relations",
    "stasheff",
    "delta_squared",
    "completion",
    "relations_reduce",
    "flatness",
    "unitriangularity",
    "multiplicativity",
    "associativity",
    "duflo_weights",
    "c1_derivation",
];

const CHECKS_QUADRATIC: &[&str] = &[
    "jacobi",
    "homogeneity",
    "relations",
    "completion",
    "relations_reduce",
    "flatness",
    "unitriangularity",
    "multiplicativity",
    "associativity",
];

const CHECKS_KOSZUL: &[&str] = &["delta_squared", "acyclicity", "h0"];

impl Context {
    fn build(case: &VerificationCase) -> Result<Self> {
        let order = case.effective_order();
        let d = case.pi.dim();
        let names = Names::standard(d);
        let m = case.mutation;
        let pi = match (case.suite, m) {
            (Suite::Linear, Mutation::BrokenJacobi) => break_jacobi(&case.pi)?,
            (_, Mutation::BrokenJacobi) => return Err(not_applicable(case)),
            (Suite::Koszul { .. }, Mutation::CorruptRule | Mutation::PerturbSymmetrization) => {
                return Err(not_applicable(case))
            }
            _ => case.pi.clone(),
        };
        match case.suite {
            Suite::Constant if !pi.is_constant() => return Err(wrong_class("constant", &pi)),
            Suite::Linear if !pi.is_linear() => return Err(wrong_class("linear", &pi)),
            Suite::Quadratic if !pi.is_quadratic() => return Err(wrong_class("quadratic", &pi)),
            Suite::Koszul { max_weight } if d > 4 || max_weight > 5 => {
                return Err(Error::Infeasible(format!(
                    "Koszul window d={d}, weight {max_weight} exceeds d <= 4, weight <= 5"
                )))
            }
            _ => {}
        }

        let mut inst = match case.suite {
            Suite::Constant | Suite::Linear => Some(build_instance(&pi, order)?),
            Suite::Koszul { .. } => Some(AInftyInstance::wedge(d, 0)),
            Suite::Quadratic => None,
        };
        if m == Mutation::FlipDeltaSign {
            if let Some(i) = inst.take() {
                let target = match case.suite {
                    Suite::Constant if i.components().curvature().is_some() => Some(vec![]),
                    Suite::Linear => i
                        .components()
                        .table(1)
                        .and_then(|t| t.keys().next().cloned()),
                    _ => None,
                };
                let target = target.unwrap_or_else(|| vec![Subset::singleton(0), Subset::singleton(1)]);
                inst = Some(i.with_flipped_sign(target)?);
            }
        }
        let delta = inst.as_ref().map(DualDifferential::new);

        let mut rels = match case.suite {
            Suite::Constant | Suite::Linear => relations(inst.as_ref().expect("instance"))?,
            Suite::Quadratic => quadratic_relations(&pi)?,
            Suite::Koszul { .. } => Vec::new(),
        };
        if m == Mutation::FlipDeltaSign && case.suite == Suite::Quadratic {
            if let Some((_, r)) = rels.first_mut() {
                *r = flip_hbar_part(r);
            }
        }

        let (system, quotient) = if matches!(case.suite, Suite::Koszul { .. }) {
            (Err("no rewriting system".to_string()), None)
        } else {
            let factor = if case.suite == Suite::Linear { 3 } else { 2 };
            let bound = DEFAULT_DEGREE_BOUND.max(factor * case.degree).max(FLATNESS_DEGREE);
            let polys: Vec<NCPoly> = rels.iter().map(|(_, r)| r.clone()).collect();
            let mut raw = build_system(d, order, &polys, bound)?;
            if m == Mutation::CorruptRule {
                let rule = raw
                    .rules()
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::Invalid("no rewrite rule to corrupt".into()))?;
                let rhs = &rule.rhs + &NCPoly::constant(d, HSeries::hbar(order));
                raw = raw.with_rule(&rule.lhs, rhs)?;
            }
            match raw.complete(DEFAULT_RULE_BUDGET) {
                Ok(sys) => {
                    let q = if sys.status() == Status::Completed {
                        Some(RefCell::new(QuotientAlgebra::new(Arc::new(sys.clone()))?))
                    } else {
                        None
                    };
                    (Ok(sys), q)
                }
                Err(e) => (Err(e.to_string()), None),
            }
        };

        let perturbation = if m == Mutation::PerturbSymmetrization {
            if order == 0 {
                return Err(not_applicable(case));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(case.seed);
            rng.set_stream(1);
            let i = rng.gen_range(0..d);
            let j = rng.gen_range(0..d);
            Some((integer(nonzero(&mut rng)), i, j))
        } else {
            None
        };

        Ok(Context {
            case: case.clone(),
            names,
            order,
            pi,
            inst,
            delta,
            relations: rels,
            system,
            quotient,
            perturbation,
        })
    }

    fn dim(&self) -> usize {
        self.pi.dim()
    }

    fn echo(&self) -> ConfigEcho {
        let (status, rules) = match &self.system {
            Ok(s) => (
                Some(s.status()),
                s.rules().iter().map(|r| r.render(&self.names)).collect(),
            ),
            Err(_) => (None, Vec::new()),
        };
        ConfigEcho {
            suite: self.case.suite,
            dim: self.dim(),
            pi: crate::serial::bivector_to_json(&self.pi),
            degree: self.case.degree,
            order: self.order,
            trials: self.case.trials,
            seed: self.case.seed,
            mutation: self.case.mutation,
            relations: self.relations.iter().map(|(_, r)| r.render(&self.names)).collect(),
            system_status: status,
            rules,
        }
    }

    fn check_names(&self) -> &'static [&'static str] {
        match self.case.suite {
            Suite::Constant => CHECKS_CONSTANT,
            Suite::Linear => CHECKS_LINEAR,
            Suite::Quadratic => CHECKS_QUADRATIC,
            Suite::Koszul { .. } => CHECKS_KOSZUL,
        }
    }

    fn run_all(&self) -> Vec<CheckResult> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.case.seed);
        self.check_names()
            .iter()
            .map(|name| match self.skip_reason(name) {
                Some(reason) => CheckResult {
                    name: name.to_string(),
                    outcome: Outcome::Skipped,
                    checked: 0,
                    detail: reason,
                    counterexample: None,
                },
                None => self.run_check(name, &mut rng),
            })
            .collect()
    }

    fn skip_reason(&self, name: &str) -> Option<String> {
        let needs_quotient = matches!(
            name,
            "relations_reduce" | "unitriangularity" | "multiplicativity" | "c1_derivation"
        ) || (name == "associativity" && self.case.suite == Suite::Linear);
        if needs_quotient && self.quotient.is_none() {
            return Some(match &self.system {
                Ok(s) => format!("rewriting system is {}", s.status()),
                Err(e) => e.clone(),
            });
        }
        if name == "c1_derivation" && !self.pi.is_poisson() {
            return Some("π violates Jacobi".into());
        }
        None
    }

    /// Inputs enumerated for a check: exhaustive lists, or `trials` random
    /// probes drawn from `rng`.
    fn inputs(&self, name: &str, rng: &mut ChaCha8Rng) -> Vec<Vec<String>> {
        let d = self.dim();
        let pairs = |v: Vec<usize>| v.iter().map(|i| vec![i.to_string()]).collect::<Vec<_>>();
        let upper = || {
            (0..d)
                .flat_map(|i| (i + 1..d).map(move |j| vec![render_indices(&[i, j])]))
                .collect::<Vec<_>>()
        };
        let render = |p: &SymPoly| p.render(&self.names);
        let monomials = |deg: usize| SymMonomial::all_up_to(d, deg);
        match name {
            "jacobi" => (0..d)
                .flat_map(|i| (i + 1..d).flat_map(move |j| (j + 1..d).map(move |k| vec![render_indices(&[i, j, k])])))
                .collect(),
            "relations" | "relations_reduce" | "homogeneity" => upper(),
            "flatness" => pairs((0..=FLATNESS_DEGREE).collect()),
            "unitriangularity" => monomials(self.case.degree)
                .into_iter()
                .map(|m| vec![render(&SymPoly::monomial(d, self.order, m))])
                .collect(),
            "multiplicativity" => {
                let basis = monomials(self.case.degree.min(EXHAUSTIVE_DEGREE));
                let mut out = Vec::new();
                for a in &basis {
                    for b in &basis {
                        out.push(vec![
                            render(&SymPoly::monomial(d, self.order, a.clone())),
                            render(&SymPoly::monomial(d, self.order, b.clone())),
                        ]);
                    }
                }
                for _ in 0..self.case.trials {
                    let f = random_poly(rng, d, self.order, self.case.degree);
                    let g = random_poly(rng, d, self.order, self.case.degree);
                    out.push(vec![render(&f), render(&g)]);
                }
                out
            }
            "associativity" => (0..self.case.trials)
                .map(|_| {
                    (0..3)
                        .map(|_| render(&random_poly(rng, d, self.order, self.case.degree)))
                        .collect()
                })
                .collect(),
            "duflo_weights" => pairs((1..=self.order.max(4)).collect()),
            "c1_derivation" => {
                let basis = monomials(C1_DEGREE);
                let mut out = Vec::new();
                for a in &basis {
                    for b in &basis {
                        if a.degree() + b.degree() <= C1_DEGREE {
                            out.push(vec![
                                render(&SymPoly::monomial(d, self.order, a.clone())),
                                render(&SymPoly::monomial(d, self.order, b.clone())),
                            ]);
                        }
                    }
                }
                out
            }
            "completion" => vec![vec![]],
            _ => Vec::new(),
        }
    }

    fn run_check(&self, name: &str, rng: &mut ChaCha8Rng) -> CheckResult {
        let result = |outcome, checked, detail: String, counterexample| CheckResult {
            name: name.to_string(),
            outcome,
            checked,
            detail,
            counterexample,
        };
        // Checks with a bulk evaluator; their probes are replayed one at a time.
        match name {
            "stasheff" => {
                let inst = self.inst.as_ref().expect("instance");
                let max_n = if self.dim() <= 3 { 4 } else { 3 };
                return match check_stasheff(inst, max_n) {
                    Ok(rep) => match rep.violations.first() {
                        None => result(Outcome::Pass, rep.tuples_checked, format!("arity <= {max_n}"), None),
                        Some(v) => {
                            let inputs: Vec<String> = v.inputs.iter().map(|s| render_indices(&s.indices())).collect();
                            let ce = self.counterexample(name, inputs);
                            result(
                                Outcome::Fail,
                                rep.tuples_checked,
                                format!("{} violations, first at arity {}", rep.violations.len(), v.arity),
                                ce,
                            )
                        }
                    },
                    Err(e) => result(Outcome::Skipped, 0, e.to_string(), None),
                };
            }
            "delta_squared" => {
                let delta = self.delta.as_ref().expect("differential");
                let w = match self.case.suite {
                    Suite::Koszul { max_weight } => max_weight,
                    _ => 4,
                };
                let rep = check_delta_squared(delta, w);
                return match rep.failures.first() {
                    None => result(Outcome::Pass, rep.generators_checked, format!("generators of weight <= {w}"), None),
                    Some(fl) => {
                        let ce = self.counterexample(name, vec![render_indices(&fl.subset.indices())]);
                        result(Outcome::Fail, rep.generators_checked, format!("{} failures", rep.failures.len()), ce)
                    }
                };
            }
            "acyclicity" | "h0" => {
                let Suite::Koszul { max_weight } = self.case.suite else {
                    unreachable!()
                };
                let delta = self.delta.as_ref().expect("differential");
                let lo = 1 - max_weight.max(1) as i64;
                let degrees = if name == "h0" { 0..=0 } else { lo..=-1 };
                let table = match cohomology_ranks(delta, degrees, max_weight) {
                    Ok(t) => t,
                    Err(e) => return result(Outcome::Fail, 0, e.to_string(), None),
                };
                let mut checked = 0;
                for s in &table.slots {
                    checked += 1;
                    let inputs = vec![s.degree.to_string(), s.weight.to_string()];
                    if self.koszul_expected(s.degree, s.weight) != s.cohomology {
                        let ce = self.counterexample(name, inputs);
                        return result(Outcome::Fail, checked, "cohomology mismatch".into(), ce);
                    }
                }
                return result(Outcome::Pass, checked, format!("weights <= {max_weight}"), None);
            }
            _ => {}
        }
        let inputs = self.inputs(name, rng);
        let mut checked = 0;
        for inp in &inputs {
            checked += 1;
            match self.probe(name, inp) {
                Ok(None) => {}
                Ok(Some((expected, actual))) => {
                    let ce = Counterexample {
                        check: name.to_string(),
                        inputs: inp.clone(),
                        expected,
                        actual,
                    };
                    return result(Outcome::Fail, checked, "mismatch".into(), Some(ce));
                }
                Err(e) => return result(Outcome::Fail, checked, e.to_string(), None),
            }
        }
        result(Outcome::Pass, checked, self.pass_detail(name), None)
    }

    fn pass_detail(&self, name: &str) -> String {
        match name {
            "completion" => match &self.system {
                Ok(s) => format!("{} rules, {} added", s.len(), s.added_rules()),
                Err(_) => String::new(),
            },
            "flatness" => format!("degrees <= {FLATNESS_DEGREE}"),
            "multiplicativity" => format!(
                "monomial pairs to degree {} plus {} random pairs",
                self.case.degree.min(EXHAUSTIVE_DEGREE),
                self.case.trials
            ),
            "associativity" => format!("{} random triples", self.case.trials),
            "c1_derivation" => format!("pairs of total degree <= {C1_DEGREE}"),
            _ => String::new(),
        }
    }

    fn counterexample(&self, name: &str, inputs: Vec<String>) -> Option<Counterexample> {
        match self.probe(name, &inputs) {
            Ok(Some((expected, actual))) => Some(Counterexample {
                check: name.to_string(),
                inputs,
                expected,
                actual,
            }),
            _ => None,
        }
    }

    fn koszul_expected(&self, degree: i64, weight: usize) -> i64 {
        if degree == 0 {
            binomial(weight + self.dim() - 1, weight) as i64
        } else {
            0
        }
    }

    fn sym(&self, s: &str) -> Result<SymPoly> {
        parse_sym(s, &self.names, self.order)
    }

    fn quotient(&self) -> Result<std::cell::RefMut<'_, QuotientAlgebra>> {
        self.quotient
            .as_ref()
            .map(RefCell::borrow_mut)
            .ok_or_else(|| Error::NotCompleted("unavailable".into()))
    }

    /// Φ' = NF∘Sym, composed with the seeded perturbation if any.
    fn phi(&self, f: &SymPoly) -> Result<NCPoly> {
        let f = match &self.perturbation {
            Some((c, i, j)) => {
                let corr = f.partial(*i).partial(*j).scale(&HSeries::monomial(c.clone(), 1, self.order));
                f + &corr
            }
            None => f.clone(),
        };
        self.quotient()?.transport(&f)
    }

    fn star(&self, f: &SymPoly, g: &SymPoly) -> Result<SymPoly> {
        match self.case.suite {
            Suite::Constant => moyal_star(f, g, &self.pi),
            Suite::Quadratic => first_order_star(f, g, &self.pi),
            _ => {
                let mut q = self.quotient()?;
                let a = q.transport(f)?;
                let b = q.transport(g)?;
                let ab = q.product(&a, &b)?;
                q.inverse_transport(&ab)
            }
        }
    }

    fn pair(&self, inputs: &[String]) -> Result<(usize, usize)> {
        let ix = parse_indices(&one_input(inputs, 1)?[0], self.dim())?;
        match ix[..] {
            [i, j] if i < j => Ok((i, j)),
            _ => Err(Error::Invalid(format!("expected i,j with i < j, got {:?}", inputs[0]))),
        }
    }

    fn relation(&self, i: usize, j: usize) -> Result<&NCPoly> {
        self.relations
            .iter()
            .find(|(k, _)| *k == (i, j))
            .map(|(_, r)| r)
            .ok_or_else(|| Error::Invalid(format!("no relation for ({},{})", i + 1, j + 1)))
    }

    /// Evaluates one probe of the named check.
    fn probe(&self, name: &str, inputs: &[String]) -> Result<Probe> {
        let d = self.dim();
        let n = &self.names;
        let mismatch = |e: String, a: String| Ok(if e == a { None } else { Some((e, a)) });
        match name {
            "jacobi" => {
                let ix = parse_indices(&one_input(inputs, 1)?[0], d)?;
                let [i, j, k] = ix[..] else {
                    return Err(Error::Invalid("expected i,j,k".into()));
                };
                mismatch("0".into(), self.pi.jacobi_defect(i, j, k).render(n))
            }
            "relations" => {
                let (i, j) = self.pair(inputs)?;
                let xi = NCPoly::letter(d, self.order, i);
                let xj = NCPoly::letter(d, self.order, j);
                let comm = &(&xi * &xj) - &(&xj * &xi);
                let hbar = HSeries::hbar(self.order);
                let expected = match self.case.suite {
                    Suite::Constant => {
                        &comm - &NCPoly::constant(d, HSeries::monomial(self.pi.constant_entry(i, j), 1, self.order))
                    }
                    Suite::Linear => {
                        let mut e = comm;
                        for k in 0..d {
                            let f = self.pi.structure_constant(i, j, k);
                            if !f.is_zero() {
                                e.add_scaled(&NCPoly::letter(d, self.order, k), &(-&hbar.scale(&f)));
                            }
                        }
                        e
                    }
                    _ => &comm - &symmetrize(&self.pi.entry(i, j).with_order(self.order)).scale(&hbar),
                };
                mismatch(expected.render(n), self.relation(i, j)?.render(n))
            }
            "homogeneity" => {
                let (i, j) = self.pair(inputs)?;
                let bad_entry = self.pi.entry(i, j).iter().find(|(m, _)| m.degree() != 2);
                let bad_word = self.relation(i, j)?.iter().find(|(w, _)| w.len() != 2);
                Ok(match (bad_entry, bad_word) {
                    (None, None) => None,
                    (Some((m, _)), _) => Some(("degree 2".into(), format!("π entry monomial of degree {}", m.degree()))),
                    (_, Some((w, _))) => Some(("length 2".into(), format!("relation word of length {}", w.len()))),
                })
            }
            "stasheff" => {
                let inst = self.inst.as_ref().ok_or_else(|| Error::Invalid("no A∞ instance".into()))?;
                let tuple: Vec<Subset> = inputs
                    .iter()
                    .map(|s| parse_indices(s, d).map(|ix| Subset::from_indices(&ix)))
                    .collect::<Result<_>>()?;
                mismatch("0".into(), stasheff_expression(inst, &tuple).render(n))
            }
            "delta_squared" => {
                let delta = self.delta.as_ref().ok_or_else(|| Error::Invalid("no differential".into()))?;
                let s = Subset::from_indices(&parse_indices(&one_input(inputs, 1)?[0], d)?);
                if s.is_empty() {
                    return Err(Error::Invalid("empty generator".into()));
                }
                let names = Names::standard(d);
                mismatch("0".into(), delta.apply(delta.on_generator(s)).render(&names))
            }
            "completion" => Ok(match &self.system {
                Err(e) => Some(("completed".into(), e.clone())),
                Ok(s) => match (s.status(), s.witness()) {
                    (Status::Completed, _) => {
                        let strict = matches!(self.case.suite, Suite::Constant | Suite::Linear);
                        if strict && s.added_rules() > 0 {
                            Some(("0 added rules".into(), format!("{} added rules", s.added_rules())))
                        } else {
                            None
                        }
                    }
                    (st, Some(w)) => Some((
                        "completed".into(),
                        format!(
                            "{st}: overlap {} leaves {}",
                            NCPoly::monomial(d, self.order, w.overlap.clone()).render(n),
                            w.remainder.render(n)
                        ),
                    )),
                    (st, None) => Some(("completed".into(), st.to_string())),
                },
            }),
            "relations_reduce" => {
                let (i, j) = self.pair(inputs)?;
                let r = self.relation(i, j)?.clone();
                let nf = self.quotient()?.nf(&r)?;
                mismatch("0".into(), nf.render(n))
            }
            "flatness" => {
                let deg = parse_usize(&one_input(inputs, 1)?[0])?;
                let expected = binomial(deg + d - 1, deg).to_string();
                match &self.system {
                    Err(e) => Ok(Some((expected, e.clone()))),
                    Ok(s) => match s.witness() {
                        Some(w) if s.status() == Status::Nonconfluent => Ok(Some((
                            expected,
                            format!("nonzero irreducible {} lies in the ideal", w.remainder.render(n)),
                        ))),
                        _ => mismatch(expected, s.hilbert(deg).counts[deg].to_string()),
                    },
                }
            }
            "unitriangularity" => {
                let f = self.sym(&one_input(inputs, 1)?[0])?;
                let (m, _) = f
                    .leading()
                    .filter(|_| f.len() == 1)
                    .ok_or_else(|| Error::Invalid("expected a monomial".into()))?;
                let t = self.phi(&SymPoly::monomial(d, self.order, m.clone()))?;
                let sorted = NCWord::new(m.sorted_letters());
                let expected = NCPoly::monomial(d, self.order, sorted.clone()).render(n);
                // The leading coefficient only needs to be ≡ 1 mod ħ.
                let actual = match t.leading() {
                    Some((w, c)) => NCPoly::term(d, w.clone(), c.at_zero()).render(n),
                    None => "0".into(),
                };
                mismatch(expected, actual)
            }
            "multiplicativity" => {
                let inp = one_input(inputs, 2)?;
                let (f, g) = (self.sym(&inp[0])?, self.sym(&inp[1])?);
                let lhs = self.phi(&self.star(&f, &g)?)?;
                let (pf, pg) = (self.phi(&f)?, self.phi(&g)?);
                let rhs = self.quotient()?.product(&pf, &pg)?;
                mismatch(rhs.render(n), lhs.render(n))
            }
            "associativity" => {
                let inp = one_input(inputs, 3)?;
                let (f, g, h) = (self.sym(&inp[0])?, self.sym(&inp[1])?, self.sym(&inp[2])?);
                let left = self.star(&self.star(&f, &g)?, &h)?;
                let right = self.star(&f, &self.star(&g, &h)?)?;
                mismatch(right.render(n), left.render(n))
            }
            "duflo_weights" => {
                let k = parse_usize(&one_input(inputs, 1)?[0])?;
                if k == 0 {
                    return Err(Error::Invalid("weights start at 1".into()));
                }
                let series = duflo_series(self.order.max(4).max(k));
                let expected = if k == 1 {
                    rational(-1, 4)
                } else if k % 2 == 1 {
                    BigRational::zero()
                } else {
                    let b = bernoulli(k);
                    let kf = crate::algebra::monomial::factorial(k);
                    &b[k] / BigRational::from_integer(BigInt::from(2 * k) * kf)
                };
                mismatch(expected.to_string(), series.weight(k).to_string())
            }
            "c1_derivation" => {
                let inp = one_input(inputs, 2)?;
                let (f, g) = (self.sym(&inp[0])?, self.sym(&inp[1])?);
                let c1 = wheel_operator(&self.pi, 1);
                let lhs = apply_operator(&c1, &self.star(&f, &g)?);
                let rhs = &self.star(&apply_operator(&c1, &f), &g)? + &self.star(&f, &apply_operator(&c1, &g))?;
                mismatch(rhs.render(n), lhs.render(n))
            }
            "acyclicity" | "h0" => {
                let Suite::Koszul { .. } = self.case.suite else {
                    return Err(Error::Invalid("cohomology checks belong to the koszul suite".into()));
                };
                let inp = one_input(inputs, 2)?;
                let degree: i64 = inp[0]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad degree {:?}", inp[0])))?;
                let weight = parse_usize(&inp[1])?;
                let delta = self.delta.as_ref().expect("differential");
                let table = cohomology_ranks(delta, degree..=degree, weight)?;
                let slot = table
                    .get(degree, weight)
                    .ok_or_else(|| Error::Invalid("slot outside the computed table".into()))?;
                mismatch(self.koszul_expected(degree, weight).to_string(), slot.cohomology.to_string())
            }
            other => Err(Error::Invalid(format!("unknown check {other:?}"))),
        }
    }
}
