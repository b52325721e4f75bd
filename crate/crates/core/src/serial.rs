//! Canonical JSON: sorted keys, rationals as `"p/q"` strings, terms in basis
//! order. Indices in JSON are 1-based.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::hseries::{parse_rational, rational_to_string};
use crate::algebra::{Basis, HSeries, NCWord, Poly, PoissonBivector, Subset, SymMonomial};
use crate::error::{Error, Result};

/// Version tag carried by every report.
pub const SCHEMA_VERSION: u32 = 1;

/// Pretty-prints with keys sorted (`serde_json::Map` is ordered).
pub fn canonical<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)?)
}

pub fn hseries_to_json(s: &HSeries) -> Vec<String> {
    s.coeffs().iter().map(rational_to_string).collect()
}

pub fn hseries_from_json(v: &[String], order: usize) -> Result<HSeries> {
    if v.len() > order + 1 {
        return Err(Error::Invalid(format!(
            "coefficient list of length {} exceeds truncation order {order}",
            v.len()
        )));
    }
    let cs = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
    Ok(HSeries::from_coeffs(cs, order))
}

/// A basis element's JSON form: a list of 1-based integers.
pub trait BasisJson: Basis {
    fn to_indices(&self) -> Vec<usize>;
    fn from_indices(v: &[usize], dim: usize) -> Result<Self>;
}

impl BasisJson for SymMonomial {
    /// The exponent vector.
    fn to_indices(&self) -> Vec<usize> {
        self.exponents().iter().map(|&e| e as usize).collect()
    }

    fn from_indices(v: &[usize], dim: usize) -> Result<Self> {
        if v.len() != dim {
            return Err(Error::Invalid(format!(
                "exponent vector has length {}, expected {dim}",
                v.len()
            )));
        }
        Ok(SymMonomial::new(v.iter().map(|&e| e as u32).collect()))
    }
}

impl BasisJson for NCWord {
    /// The letters, 1-based.
    fn to_indices(&self) -> Vec<usize> {
        self.letters().iter().map(|&l| l as usize + 1).collect()
    }

    fn from_indices(v: &[usize], dim: usize) -> Result<Self> {
        check_range(v, dim)?;
        Ok(NCWord::new(v.iter().map(|&l| (l - 1) as u16).collect()))
    }
}

impl BasisJson for Subset {
    /// The sorted index set, 1-based.
    fn to_indices(&self) -> Vec<usize> {
        self.indices().iter().map(|i| i + 1).collect()
    }

    fn from_indices(v: &[usize], dim: usize) -> Result<Self> {
        check_range(v, dim)?;
        if v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!(
                "wedge index set {v:?} must be strictly increasing"
            )));
        }
        Ok(Subset::from_indices(&v.iter().map(|i| i - 1).collect::<Vec<_>>()))
    }
}

fn check_range(v: &[usize], dim: usize) -> Result<()> {
    if let Some(bad) = v.iter().find(|&&i| i == 0 || i > dim) {
        return Err(Error::Invalid(format!(
            "index {bad} out of range 1..={dim}"
        )));
    }
    Ok(())
}

/// Serializes rationals as `"p/q"` strings.
pub fn serialize_rationals<S: serde::Serializer>(v: &[num_rational::BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational_to_string))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub basis: Vec<usize>,
    pub coeff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub dim: usize,
    pub order: usize,
    pub terms: Vec<TermJson>,
}

pub fn terms_to_json<B: BasisJson>(p: &Poly<B>) -> Vec<TermJson> {
    p.iter()
        .map(|(b, c)| TermJson {
            basis: b.to_indices(),
            coeff: hseries_to_json(c),
        })
        .collect()
}

pub fn terms_from_json<B: BasisJson>(terms: &[TermJson], dim: usize, order: usize) -> Result<Poly<B>> {
    let mut p = Poly::zero(dim, order);
    for t in terms {
        p.add_term(B::from_indices(&t.basis, dim)?, &hseries_from_json(&t.coeff, order)?);
    }
    Ok(p)
}

pub fn poly_to_json<B: BasisJson>(p: &Poly<B>) -> PolyJson {
    PolyJson {
        dim: p.dim(),
        order: p.order(),
        terms: terms_to_json(p),
    }
}

pub fn poly_from_json<B: BasisJson>(j: &PolyJson) -> Result<Poly<B>> {
    terms_from_json(&j.terms, j.dim, j.order)
}

/// `{"dim": d, "entries": [{"i":1,"j":2,"value": poly}]}` listing i < j.
pub fn bivector_to_json(pi: &PoissonBivector) -> Value {
    let mut entries = Vec::new();
    for i in 0..pi.dim() {
        for j in i + 1..pi.dim() {
            let e = pi.entry(i, j);
            if !e.is_zero() {
                entries.push(serde_json::json!({
                    "i": i + 1,
                    "j": j + 1,
                    "value": poly_to_json(e),
                }));
            }
        }
    }
    serde_json::json!({ "dim": pi.dim(), "class": pi.class(), "entries": entries })
}
