//! Command-line front end. Exit codes: 0 pass, 1 verification failure,
//! 2 usage or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::json;

use crate::ainfty::{build_instance, AInftyInstance, ComponentsFile};
use crate::algebra::{symmetrize, NCPoly, PoissonClass, SymPoly};
use crate::cobar::{cohomology_ranks, relations, DualDifferential};
use crate::error::{Error, Result};
use crate::expr::{parse_nc, parse_sym};
use crate::problem::{Problem, SuiteName};
use crate::rewrite::{build_system, RewriteSystem, DEFAULT_DEGREE_BOUND, DEFAULT_RULE_BUDGET};
use crate::serial::canonical;
use crate::starprod::StarAlgebra;
use crate::verify::{Mutation, SCHEMA_VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Constant,
    Linear,
    Quadratic,
    Koszul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MutationArg {
    None,
    FlipDeltaSign,
    CorruptRule,
    PerturbSymmetrization,
    BrokenJacobi,
}

#[derive(Debug, Parser)]
#[command(name = "defquant", version, about = "Exact deformation quantization of polynomial Poisson structures")]
pub struct Cli {
    /// ħ-truncation order N (overrides the problem file)
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Degree bound D (overrides the problem file)
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Random seed (overrides the problem file)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the relations δ_ħ(x_ij) = 0, i < j
    Relations {
        file: PathBuf,
        /// Take the Taylor components from a JSON file instead of π
        #[arg(long)]
        components: Option<PathBuf>,
    },
    /// Normal form of an expression in T(V)[ħ]/I
    NormalForm { file: PathBuf, expression: String },
    /// Star product f ⋆ g on S(V)[ħ]
    Star { file: PathBuf, f: String, g: String },
    /// Run a verification suite
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
        #[arg(long, value_enum, default_value_t = MutationArg::None)]
        mutation: MutationArg,
        #[arg(long)]
        trials: Option<usize>,
        /// Weight bound for the koszul suite
        #[arg(long)]
        max_weight: Option<usize>,
        /// Also write the JSON report to this path
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Cohomology dimensions of the cobar complex
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = -2, allow_negative_numbers = true)]
        min_degree: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        max_degree: i64,
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
        /// Use the undeformed differential δ₀
        #[arg(long)]
        classical: bool,
    },
}

/// Output of one command: what to print and the exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_PASS }
    }
}

fn load(file: &PathBuf, cli: &Cli) -> Result<Problem> {
    let mut p = Problem::load(file)?;
    if let Some(n) = cli.trunc {
        p.trunc = n;
    }
    if let Some(d) = cli.degree {
        p.degree = d;
    }
    if let Some(s) = cli.seed {
        p.task.seed = Some(s);
    }
    Ok(p)
}

fn emit<T: Serialize>(format: Format, value: &T, text: String) -> Result<String> {
    match format {
        Format::Text => Ok(text),
        Format::Json => canonical(value),
    }
}

/// Largest positive rational c with every coefficient an integer multiple
/// of c, signed like the leading coefficient.
fn content(p: &NCPoly) -> BigRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in p.iter() {
        let q = c.constant_term();
        num = num.gcd(q.numer());
        den = den.lcm(q.denom());
    }
    let c = BigRational::new(num, den);
    match p.leading() {
        Some((_, lc)) if lc.constant_term().is_negative() => -c,
        _ => c,
    }
}

/// `c h` written as `h`, `3h`, `(h/2)`, `(3h/2)` for positive c.
fn scaled_h(c: &BigRational) -> String {
    let n = if c.numer().is_one() { String::new() } else { c.numer().to_string() };
    if c.is_integer() {
        format!("{n}h")
    } else {
        format!("({n}h/{})", c.denom())
    }
}

/// x_i x_j − x_j x_i − ħ Sym(π_ij) with the common coefficient of
/// Sym(π_ij) factored out, followed by `  (mod h^2)`.
pub fn render_quadratic_relation(problem: &Problem, i: usize, j: usize) -> String {
    let d = problem.dim();
    let names = &problem.names;
    let xi = NCPoly::letter(d, 0, i);
    let xj = NCPoly::letter(d, 0, j);
    let mut out = (&(&xi * &xj) - &(&xj * &xi)).render(names);
    let sym = symmetrize(problem.pi.entry(i, j));
    if !sym.is_zero() {
        let c = content(&sym);
        let inner = sym.scale_q(&c.recip());
        out.push_str(if c.is_positive() { " - " } else { " + " });
        let h = scaled_h(&c.abs());
        if inner.len() == 1 && inner.iter().all(|(_, k)| k.is_one()) {
            out.push_str(&format!("{h}*{}", inner.render(names)));
        } else {
            out.push_str(&format!("{h}*({})", inner.render(names)));
        }
    }
    out.push_str("  (mod h^2)");
    out
}

#[derive(Serialize)]
struct RelationJson {
    i: usize,
    j: usize,
    relation: String,
}

pub fn cmd_relations(problem: &Problem, components: Option<&ComponentsFile>, format: Format) -> Result<Output> {
    let names = &problem.names;
    let d = problem.dim();
    let (rows, modulus): (Vec<RelationJson>, Option<String>) = match components {
        Some(file) => {
            let inst = AInftyInstance::from_json(file)?;
            if inst.dim() != d {
                return Err(Error::DimensionMismatch(inst.dim(), d));
            }
            let rows = relations(&inst)?
                .into_iter()
                .map(|((i, j), r)| RelationJson {
                    i: i + 1,
                    j: j + 1,
                    relation: r.render(names),
                })
                .collect();
            (rows, None)
        }
        None => {
            problem.pi.check_poisson()?;
            match problem.class() {
                PoissonClass::Constant | PoissonClass::Linear => {
                    let inst = build_instance(&problem.pi, problem.trunc)?;
                    let rows = relations(&inst)?
                        .into_iter()
                        .map(|((i, j), r)| RelationJson {
                            i: i + 1,
                            j: j + 1,
                            relation: r.render(names),
                        })
                        .collect();
                    (rows, None)
                }
                PoissonClass::Quadratic => {
                    let mut rows = Vec::new();
                    for i in 0..d {
                        for j in i + 1..d {
                            rows.push(RelationJson {
                                i: i + 1,
                                j: j + 1,
                                relation: render_quadratic_relation(problem, i, j),
                            });
                        }
                    }
                    (rows, Some("h^2".into()))
                }
                PoissonClass::General => {
                    return Err(Error::WrongClass {
                        expected: "constant, linear or quadratic".into(),
                        found: "general".into(),
                    })
                }
            }
        }
    };
    let text = rows.iter().map(|r| r.relation.clone()).collect::<Vec<_>>().join("\n");
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "dim": d,
        "class": problem.class(),
        "order": problem.trunc,
        "modulus": modulus,
        "relations": rows,
    });
    Ok(Output::ok(emit(format, &value, text)?))
}

/// The completed rewriting system presenting the quantized algebra, with
/// room for words of degree `min_bound`.
pub fn problem_system(problem: &Problem, min_bound: usize) -> Result<RewriteSystem> {
    problem.pi.check_poisson()?;
    let d = problem.dim();
    let bound = DEFAULT_DEGREE_BOUND.max(problem.degree).max(min_bound);
    let (order, rels): (usize, Vec<NCPoly>) = match problem.class() {
        PoissonClass::Quadratic if !problem.pi.is_zero() => (
            1,
            crate::cobar::quadratic_relations(&problem.pi)?
                .into_iter()
                .map(|(_, r)| r)
                .collect(),
        ),
        _ => {
            let inst = build_instance(&problem.pi, problem.trunc)?;
            (problem.trunc, relations(&inst)?.into_iter().map(|(_, r)| r).collect())
        }
    };
    build_system(d, order, &rels, bound)?.complete(DEFAULT_RULE_BUDGET)
}

pub fn cmd_normal_form(problem: &Problem, expression: &str, format: Format) -> Result<Output> {
    let probe = parse_nc(expression, &problem.names, 0)?;
    let sys = Arc::new(problem_system(problem, probe.max_degree().unwrap_or(0))?);
    let t = parse_nc(expression, &problem.names, sys.order())?;
    let nf = sys.normal_form(&t)?;
    let mut text = nf.render(&problem.names);
    if sys.order() == 1 && problem.class() == PoissonClass::Quadratic {
        text.push_str("  (mod h^2)");
    }
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "input": expression,
        "normal_form": text,
        "rules": sys.rules().iter().map(|r| r.render(&problem.names)).collect::<Vec<_>>(),
    });
    Ok(Output::ok(emit(format, &value, text)?))
}

pub fn cmd_star(problem: &Problem, f: &str, g: &str, format: Format) -> Result<Output> {
    problem.pi.check_poisson()?;
    let first_order = !problem.pi.is_constant() && !problem.pi.is_linear();
    let order = if first_order { 1 } else { problem.trunc };
    let fp: SymPoly = parse_sym(f, &problem.names, order)?;
    let gp: SymPoly = parse_sym(g, &problem.names, order)?;
    let bound = fp.max_degree().unwrap_or(0) + gp.max_degree().unwrap_or(0);
    let star = StarAlgebra::for_bivector(&problem.pi, order, bound)?;
    let product = star.star(&fp, &gp)?;
    let mut text = product.render(&problem.names);
    if first_order {
        text.push_str("  (mod h^2)");
    }
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "kind": star.kind(),
        "order": order,
        "f": f,
        "g": g,
        "product": text,
    });
    Ok(Output::ok(emit(format, &value, text)?))
}

fn suite_name(s: SuiteArg) -> SuiteName {
    match s {
        SuiteArg::Constant => SuiteName::Constant,
        SuiteArg::Linear => SuiteName::Linear,
        SuiteArg::Quadratic => SuiteName::Quadratic,
        SuiteArg::Koszul => SuiteName::Koszul,
    }
}

fn mutation(m: MutationArg) -> Mutation {
    match m {
        MutationArg::None => Mutation::None,
        MutationArg::FlipDeltaSign => Mutation::FlipDeltaSign,
        MutationArg::CorruptRule => Mutation::CorruptRule,
        MutationArg::PerturbSymmetrization => Mutation::PerturbSymmetrization,
        MutationArg::BrokenJacobi => Mutation::BrokenJacobi,
    }
}

pub struct VerifyOptions {
    pub suite: Option<SuiteArg>,
    pub mutation: MutationArg,
    pub trials: Option<usize>,
    pub max_weight: Option<usize>,
    pub report: Option<PathBuf>,
}

pub fn cmd_verify(problem: &Problem, opts: &VerifyOptions, format: Format) -> Result<Output> {
    let mut problem = problem.clone();
    if let Some(t) = opts.trials {
        problem.task.trials = Some(t);
    }
    if let Some(w) = opts.max_weight {
        problem.task.max_weight = Some(w);
    }
    let suite = match opts.suite {
        Some(s) => suite_name(s),
        None => problem.default_suite()?,
    };
    let report = problem.case(suite).with_mutation(mutation(opts.mutation)).run()?;
    let json = canonical(&report)?;
    if let Some(path) = &opts.report {
        std::fs::write(path, format!("{json}\n"))?;
    }
    let text = match format {
        Format::Text => report.to_string(),
        Format::Json => json,
    };
    Ok(Output {
        text,
        code: if report.passed() { EXIT_PASS } else { EXIT_FAIL },
    })
}

pub struct CohomologyOptions {
    pub min_degree: i64,
    pub max_degree: i64,
    pub max_weight: usize,
    pub classical: bool,
}

pub fn cmd_cohomology(problem: &Problem, opts: &CohomologyOptions, format: Format) -> Result<Output> {
    if opts.min_degree > opts.max_degree {
        return Err(Error::Invalid(format!(
            "empty degree window {}..={}",
            opts.min_degree, opts.max_degree
        )));
    }
    let delta = if opts.classical {
        DualDifferential::classical(problem.dim(), 0)
    } else {
        problem.pi.check_poisson()?;
        DualDifferential::new(&build_instance(&problem.pi, problem.trunc)?)
    };
    let table = cohomology_ranks(&delta, opts.min_degree..=opts.max_degree, opts.max_weight)?;
    let value = json!({ "schema_version": SCHEMA_VERSION, "table": table });
    let text = table.to_string().trim_end().to_string();
    Ok(Output::ok(emit(format, &value, text)?))
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Relations { file, components } => {
            let p = load(file, cli)?;
            let comps = match components {
                Some(path) => Some(serde_json::from_str::<ComponentsFile>(&std::fs::read_to_string(path)?)?),
                None => None,
            };
            cmd_relations(&p, comps.as_ref(), cli.format)
        }
        Command::NormalForm { file, expression } => cmd_normal_form(&load(file, cli)?, expression, cli.format),
        Command::Star { file, f, g } => cmd_star(&load(file, cli)?, f, g, cli.format),
        Command::Verify {
            file,
            suite,
            mutation,
            trials,
            max_weight,
            report,
        } => {
            let opts = VerifyOptions {
                suite: *suite,
                mutation: *mutation,
                trials: *trials,
                max_weight: *max_weight,
                report: report.clone(),
            };
            cmd_verify(&load(file, cli)?, &opts, cli.format)
        }
        Command::Cohomology {
            file,
            min_degree,
            max_degree,
            max_weight,
            classical,
        } => {
            let opts = CohomologyOptions {
                min_degree: *min_degree,
                max_degree: *max_degree,
                max_weight: *max_weight,
                classical: *classical,
            };
            cmd_cohomology(&load(file, cli)?, &opts, cli.format)
        }
    }
}

fn error_json(e: &Error) -> String {
    let mut v = json!({ "error": { "code": e.code(), "message": e.to_string() } });
    if let Error::Parse { line, column, .. } = e {
        v["error"]["line"] = json!(line);
        v["error"]["column"] = json!(column);
    }
    v.to_string()
}

/// Parses `args` (including the program name), runs the command and
/// writes to `out`/`err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.text);
            o.code
        }
        Err(e) => {
            let _ = match cli.format {
                Format::Json => writeln!(err, "{}", error_json(&e)),
                Format::Text => writeln!(err, "error: {e}"),
            };
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(src: &str) -> Problem {
        Problem::from_toml(src).unwrap()
    }

    #[test]
    fn quadratic_relation_text() {
        let p = problem("dim = 2\n[[pi]]\ni = 1\nj = 2\nvalue = \"x1*x2\"\n");
        assert_eq!(
            render_quadratic_relation(&p, 0, 1),
            "x1*x2 - x2*x1 - (h/2)*(x1*x2 + x2*x1)  (mod h^2)"
        );
        let p = problem("dim = 2\n[[pi]]\ni = 1\nj = 2\nvalue = \"x1^2\"\n");
        assert_eq!(render_quadratic_relation(&p, 0, 1), "x1*x2 - x2*x1 - h*x1^2  (mod h^2)");
        let p = problem("dim = 2\n[[pi]]\ni = 1\nj = 2\nvalue = \"-3x1*x2\"\n");
        assert_eq!(
            render_quadratic_relation(&p, 0, 1),
            "x1*x2 - x2*x1 + (3h/2)*(x1*x2 + x2*x1)  (mod h^2)"
        );
    }

    #[test]
    fn weyl_commands() {
        let p = problem("dim = 2\n[[pi]]\ni = 1\nj = 2\nvalue = \"1\"\n");
        assert_eq!(cmd_relations(&p, None, Format::Text).unwrap().text, "x1*x2 - x2*x1 - h");
        assert_eq!(cmd_normal_form(&p, "x2*x1", Format::Text).unwrap().text, "x1*x2 - h");
        assert_eq!(cmd_star(&p, "x1", "x2", Format::Text).unwrap().text, "x1*x2 + (1/2)h");
    }

    #[test]
    fn exit_codes() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run(["defquant", "relations"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["defquant", "relations", "/nonexistent.toml"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["defquant", "--help"], &mut out, &mut err), EXIT_PASS);
    }
}
