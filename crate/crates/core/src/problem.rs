//! Problem files (TOML).
//!
//! ```toml
//! name = "heisenberg"
//! dim = 3
//! trunc = 4        # ħ-truncation N
//! degree = 4       # degree bound D
//!
//! [[pi]]
//! i = 1
//! j = 2
//! value = "x3"
//!
//! [task]
//! suite = "linear"
//! trials = 100
//! seed = 0
//! ```
//!
//! `names` optionally renames the generators; entries may be given for
//! either ordering of (i, j) and are extended by antisymmetry.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::algebra::{Names, PoissonBivector, PoissonClass, SymPoly};
use crate::error::{Error, Result};
use crate::expr::parse_sym;
use crate::verify::{Suite, VerificationCase};

pub const DEFAULT_TRUNC: usize = 4;
pub const DEFAULT_DEGREE: usize = 4;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_MAX_WEIGHT: usize = 4;

fn default_trunc() -> usize {
    DEFAULT_TRUNC
}

fn default_degree() -> usize {
    DEFAULT_DEGREE
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Constant,
    Linear,
    Quadratic,
    Koszul,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiEntry {
    pub i: usize,
    pub j: usize,
    pub value: Spanned<String>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub suite: Option<SuiteName>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub max_weight: Option<usize>,
}

/// The file as written.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub name: Option<String>,
    pub dim: usize,
    pub names: Option<Vec<String>>,
    #[serde(default = "default_trunc")]
    pub trunc: usize,
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default)]
    pub pi: Vec<PiEntry>,
    #[serde(default)]
    pub task: Task,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub names: Names,
    pub pi: PoissonBivector,
    pub trunc: usize,
    pub degree: usize,
    pub task: Task,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn toml_error(src: &str, e: toml::de::Error) -> Error {
    match e.span() {
        Some(span) => {
            let (line, column) = line_col(src, span.start);
            Error::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        }
        None => Error::Toml(e),
    }
}

fn validate_names(names: &[String], dim: usize) -> Result<()> {
    if names.len() != dim {
        return Err(Error::Invalid(format!("{} names given for dimension {dim}", names.len())));
    }
    for (k, n) in names.iter().enumerate() {
        let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok || n == "h" {
            return Err(Error::Invalid(format!("invalid generator name {n:?}")));
        }
        if names[..k].contains(n) {
            return Err(Error::Invalid(format!("duplicate generator name {n:?}")));
        }
    }
    Ok(())
}

impl Problem {
    pub fn from_toml(src: &str) -> Result<Self> {
        let file: ProblemFile = toml::from_str(src).map_err(|e| toml_error(src, e))?;
        let d = file.dim;
        if d == 0 || d > 16 {
            return Err(Error::Invalid(format!("dimension {d} outside 1..=16")));
        }
        let names = match &file.names {
            Some(n) => {
                validate_names(n, d)?;
                Names::new(n.clone())
            }
            None => Names::standard(d),
        };
        let mut upper: BTreeMap<(usize, usize), SymPoly> = BTreeMap::new();
        for e in &file.pi {
            let (i, j) = (e.i, e.j);
            let (line, column) = line_col(src, e.value.span().start);
            if i == 0 || j == 0 || i > d || j > d {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("pi index ({i}, {j}) out of range 1..={d}"),
                });
            }
            if i == j {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("diagonal entry pi_{i}{i} is not allowed"),
                });
            }
            let p = parse_sym(e.value.get_ref(), &names, 1).map_err(|err| match err {
                Error::Parse { line: l, column: c, message } => Error::Parse {
                    line: line + l - 1,
                    // One column for the opening quote.
                    column: if l == 1 { column + c } else { c },
                    message,
                },
                other => other,
            })?;
            if p.iter().any(|(_, c)| !c.is_constant()) {
                return Err(Error::Parse {
                    line,
                    column,
                    message: "pi entries must not depend on h".into(),
                });
            }
            let p = p.with_order(0);
            let (key, p) = if i < j { ((i - 1, j - 1), p) } else { ((j - 1, i - 1), -p) };
            if let Some(prev) = upper.get(&key) {
                if *prev != p {
                    return Err(Error::Parse {
                        line,
                        column,
                        message: format!("pi_{i}{j} contradicts an earlier entry under antisymmetry"),
                    });
                }
            }
            upper.insert(key, p);
        }
        let pi = PoissonBivector::from_upper(d, upper)?;
        Ok(Problem {
            name: file.name.unwrap_or_else(|| "problem".into()),
            names,
            pi,
            trunc: file.trunc,
            degree: file.degree,
            task: file.task,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn dim(&self) -> usize {
        self.pi.dim()
    }

    pub fn class(&self) -> PoissonClass {
        self.pi.class()
    }

    /// The task's suite, or the one matching the class of π.
    pub fn default_suite(&self) -> Result<SuiteName> {
        if let Some(s) = self.task.suite {
            return Ok(s);
        }
        match self.class() {
            PoissonClass::Constant => Ok(SuiteName::Constant),
            PoissonClass::Linear => Ok(SuiteName::Linear),
            PoissonClass::Quadratic => Ok(SuiteName::Quadratic),
            PoissonClass::General => Err(Error::WrongClass {
                expected: "constant, linear or quadratic".into(),
                found: "general".into(),
            }),
        }
    }

    pub fn case(&self, suite: SuiteName) -> VerificationCase {
        let suite = match suite {
            SuiteName::Constant => Suite::Constant,
            SuiteName::Linear => Suite::Linear,
            SuiteName::Quadratic => Suite::Quadratic,
            SuiteName::Koszul => Suite::Koszul {
                max_weight: self.task.max_weight.unwrap_or(DEFAULT_MAX_WEIGHT),
            },
        };
        VerificationCase::new(suite, self.pi.clone())
            .with_degree(self.degree)
            .with_order(self.trunc)
            .with_trials(self.task.trials.unwrap_or(DEFAULT_TRIALS))
            .with_seed(self.task.seed.unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn parses_heisenberg() {
        let p = Problem::from_toml("dim = 3\n[[pi]]\ni = 1\nj = 2\nvalue = \"x3\"\n").unwrap();
        assert_eq!(p.pi, catalog::heisenberg());
        assert_eq!((p.trunc, p.degree), (DEFAULT_TRUNC, DEFAULT_DEGREE));
        assert_eq!(p.default_suite().unwrap(), SuiteName::Linear);
    }

    #[test]
    fn antisymmetry_and_names() {
        let src = "dim = 2\nnames = [\"p\", \"q\"]\n[[pi]]\ni = 2\nj = 1\nvalue = \"-1\"\n";
        let p = Problem::from_toml(src).unwrap();
        assert_eq!(p.pi, catalog::weyl(1).unwrap());
        assert_eq!(p.names.get(1), "q");
        let clash = "dim = 2\n[[pi]]\ni = 1\nj = 2\nvalue = \"1\"\n[[pi]]\ni = 2\nj = 1\nvalue = \"1\"\n";
        assert!(matches!(Problem::from_toml(clash), Err(Error::Parse { line: 9, .. })));
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "dim = 2\n[[pi]]\ni = 1\nj = 2\nvalue = \"x1 * * x2\"\n";
        match Problem::from_toml(bad) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (5, 15)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Problem::from_toml("dim = 2\n[[pi]]\ni = 1\nj = 3\nvalue = \"1\"\n"),
            Err(Error::Parse { line: 5, .. })
        ));
        assert!(matches!(Problem::from_toml("dim = \"two\"\n"), Err(Error::Parse { line: 1, .. })));
        assert!(Problem::from_toml("dim = 2\n[[pi]]\ni = 1\nj = 2\nvalue = \"h\"\n").is_err());
        assert!(Problem::from_toml("dim = 2\nnames = [\"a\", \"a\"]\n").is_err());
    }
}
