//! Polynomial Poisson bivectors on V* and their brackets.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::hseries::{integer, HSeries};
use super::monomial::SymMonomial;
use super::poly::Basis;
use super::{NCPoly, SymPoly};
use crate::error::{Error, Result};

/// Degree class of a bivector: every nonzero entry homogeneous of degree
/// 0, 1 or 2 respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PoissonClass {
    Constant,
    Linear,
    Quadratic,
    General,
}

impl fmt::Display for PoissonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoissonClass::Constant => "constant",
            PoissonClass::Linear => "linear",
            PoissonClass::Quadratic => "quadratic",
            PoissonClass::General => "general",
        })
    }
}

/// An antisymmetric d×d matrix π_ij of polynomials with rational
/// coefficients.
///
/// π_ij is normalized so that the associated quantization satisfies
/// x_i ⋆ x_j − x_j ⋆ x_i = ħ π_ij + O(ħ²); as a bidifferential operator it
/// acts as Σ_{i<j} π_ij (∂_i ⊗ ∂_j − ∂_j ⊗ ∂_i) (see [`PoissonBivector::apply`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonBivector {
    dim: usize,
    // Order-0 polynomials; lifted to the working truncation on use.
    entries: Vec<Vec<SymPoly>>,
}

impl PoissonBivector {
    /// Builds π from its entries above the diagonal; the rest is filled in
    /// by antisymmetry. Entries must not depend on ħ.
    pub fn from_upper(
        dim: usize,
        upper: impl IntoIterator<Item = ((usize, usize), SymPoly)>,
    ) -> Result<Self> {
        let mut entries = vec![vec![SymPoly::zero(dim, 0); dim]; dim];
        for ((i, j), p) in upper {
            if i >= dim || j >= dim {
                return Err(Error::Invalid(format!(
                    "bivector index ({}, {}) out of range for dimension {dim}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                if p.is_zero() {
                    continue;
                }
                return Err(Error::Invalid(format!(
                    "diagonal entry pi_{}{} must vanish",
                    i + 1,
                    i + 1
                )));
            }
            if p.dim() != dim {
                return Err(Error::DimensionMismatch(p.dim(), dim));
            }
            if p.iter().any(|(_, c)| !c.is_constant()) {
                return Err(Error::Invalid(format!(
                    "entry pi_{}{} depends on h",
                    i + 1,
                    j + 1
                )));
            }
            let p = p.with_order(0);
            let (a, b, p) = if i < j { (i, j, p) } else { (j, i, -p) };
            if !entries[a][b].is_zero() {
                return Err(Error::Invalid(format!(
                    "entry pi_{}{} given twice",
                    a + 1,
                    b + 1
                )));
            }
            entries[b][a] = -&p;
            entries[a][b] = p;
        }
        Ok(PoissonBivector { dim, entries })
    }

    /// Builds π from a full matrix, checking antisymmetry.
    #[allow(clippy::needless_range_loop)]
    pub fn from_matrix(entries: Vec<Vec<SymPoly>>) -> Result<Self> {
        let dim = entries.len();
        let mut upper = Vec::new();
        for i in 0..dim {
            if entries[i].len() != dim {
                return Err(Error::Invalid("bivector matrix must be square".into()));
            }
            for j in 0..dim {
                let sum = &entries[i][j].with_order(0) + &entries[j][i].with_order(0);
                if !sum.is_zero() {
                    return Err(Error::Invalid(format!(
                        "matrix is not antisymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if i < j {
                    upper.push(((i, j), entries[i][j].clone()));
                }
            }
        }
        Self::from_upper(dim, upper)
    }

    /// Constant bivector from a rational matrix given above the diagonal.
    pub fn constant(dim: usize, upper: &[((usize, usize), BigRational)]) -> Result<Self> {
        Self::from_upper(
            dim,
            upper
                .iter()
                .map(|((i, j), c)| ((*i, *j), SymPoly::constant(dim, HSeries::constant(c.clone(), 0)))),
        )
    }

    /// Linear (Kirillov–Kostant) bivector π_ij = Σ_k f_ij^k x_k from
    /// structure constants `(i, j, k, f_ij^k)` with i < j.
    pub fn linear(dim: usize, constants: &[(usize, usize, usize, BigRational)]) -> Result<Self> {
        let mut upper: std::collections::BTreeMap<(usize, usize), SymPoly> = Default::default();
        for (i, j, k, c) in constants {
            if *k >= dim {
                return Err(Error::Invalid(format!("structure constant index {} out of range", k + 1)));
            }
            let (a, b, c) = if i < j { (*i, *j, c.clone()) } else { (*j, *i, -c.clone()) };
            let e = upper.entry((a, b)).or_insert_with(|| SymPoly::zero(dim, 0));
            e.add_term(SymMonomial::var(dim, *k), &HSeries::constant(c, 0));
        }
        Self::from_upper(dim, upper)
    }

    pub fn zero(dim: usize) -> Self {
        PoissonBivector {
            dim,
            entries: vec![vec![SymPoly::zero(dim, 0); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// π_ij at truncation order 0.
    pub fn entry(&self, i: usize, j: usize) -> &SymPoly {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(SymPoly::is_zero)
    }

    fn all_entries_homogeneous(&self, degree: usize) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|p| p.iter().all(|(m, _)| m.degree() == degree))
    }

    pub fn is_constant(&self) -> bool {
        self.all_entries_homogeneous(0)
    }

    pub fn is_linear(&self) -> bool {
        self.all_entries_homogeneous(1)
    }

    pub fn is_quadratic(&self) -> bool {
        self.all_entries_homogeneous(2)
    }

    /// The zero bivector classifies as constant.
    pub fn class(&self) -> PoissonClass {
        if self.is_constant() {
            PoissonClass::Constant
        } else if self.is_linear() {
            PoissonClass::Linear
        } else if self.is_quadratic() {
            PoissonClass::Quadratic
        } else {
            PoissonClass::General
        }
    }

    /// Coefficient of x_k in π_ij (the structure constant f_ij^k in the
    /// linear case).
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> BigRational {
        self.entries[i][j]
            .coeff(&SymMonomial::var(self.dim, k))
            .constant_term()
            .clone()
    }

    /// The scalar π_ij of a constant bivector.
    pub fn constant_entry(&self, i: usize, j: usize) -> BigRational {
        self.entries[i][j]
            .coeff(&SymMonomial::new(vec![0; self.dim]))
            .constant_term()
            .clone()
    }

    /// π as a bidifferential operator: Σ_{i,j} π_ij ∂_i f ∂_j g, which by
    /// antisymmetry equals Σ_{i<j} π_ij (∂_i f ∂_j g − ∂_j f ∂_i g).
    /// In particular `apply(x_i, x_j) = π_ij`.
    #[allow(clippy::needless_range_loop)]
    pub fn apply(&self, f: &SymPoly, g: &SymPoly) -> SymPoly {
        let order = f.order();
        let mut out = SymPoly::zero(self.dim, order);
        let df: Vec<SymPoly> = (0..self.dim).map(|i| f.partial(i)).collect();
        let dg: Vec<SymPoly> = (0..self.dim).map(|j| g.partial(j)).collect();
        for i in 0..self.dim {
            if df[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let p = &self.entries[i][j];
                if p.is_zero() || dg[j].is_zero() {
                    continue;
                }
                out = &out + &(&(&p.with_order(order) * &df[i]) * &dg[j]);
            }
        }
        out
    }

    /// The bracket obtained by reading π as Σ_{i,j} π_ij ∂_i ∧ ∂_j summed over
    /// all ordered pairs: π(f, g) = Σ_{i,j} π_ij (∂_i f ∂_j g − ∂_j f ∂_i g).
    /// This is twice [`PoissonBivector::apply`]; e.g. π(x_1, x_2) = 2π_12.
    pub fn poisson_bracket(&self, f: &SymPoly, g: &SymPoly) -> SymPoly {
        self.apply(f, g).scale_q(&integer(2))
    }

    /// Σ_l (π_il ∂_l π_jk + π_jl ∂_l π_ki + π_kl ∂_l π_ij).
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> SymPoly {
        let mut out = SymPoly::zero(self.dim, 0);
        let cyc = [(i, j, k), (j, k, i), (k, i, j)];
        for (a, b, c) in cyc {
            for l in 0..self.dim {
                let p = &self.entries[a][l];
                if p.is_zero() {
                    continue;
                }
                out = &out + &(p * &self.entries[b][c].partial(l));
            }
        }
        out
    }

    /// First triple (i < j < k) with a nonzero Jacobi defect.
    pub fn jacobi_violation(&self) -> Option<((usize, usize, usize), SymPoly)> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let d = self.jacobi_defect(i, j, k);
                    if !d.is_zero() {
                        return Some(((i, j, k), d));
                    }
                }
            }
        }
        None
    }

    pub fn is_poisson(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    pub fn check_poisson(&self) -> Result<()> {
        match self.jacobi_violation() {
            None => Ok(()),
            Some(((i, j, k), d)) => Err(Error::NotPoisson {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                defect: d.to_string(),
            }),
        }
    }

    /// ad x_i as a matrix: `(ad x_i)[k][j] = f_ij^k`.
    pub fn ad_matrix(&self, i: usize) -> Vec<Vec<BigRational>> {
        let mut m = vec![vec![BigRational::zero(); self.dim]; self.dim];
        for j in 0..self.dim {
            for (k, row) in m.iter_mut().enumerate() {
                row[j] = self.structure_constant(i, j, k);
            }
        }
        m
    }

    /// Symmetrized entry Sym(π_ij) ∈ T(V), at the given truncation order.
    pub fn symmetrized_entry(&self, i: usize, j: usize, order: usize) -> NCPoly {
        super::symmetrize(&self.entries[i][j].with_order(order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hseries::rational;
    use crate::catalog;

    fn var(d: usize, i: usize) -> SymPoly {
        SymPoly::var(d, 0, i)
    }

    #[test]
    fn bracket_of_generators_uses_ordered_pairs() {
        let pi = catalog::weyl(1).unwrap();
        let b = pi.poisson_bracket(&var(2, 0), &var(2, 1));
        assert_eq!(b, SymPoly::constant(2, HSeries::constant(integer(2), 0)));
        assert_eq!(
            pi.apply(&var(2, 0), &var(2, 1)),
            SymPoly::constant(2, HSeries::one(0))
        );
    }

    #[test]
    fn bracket_is_antisymmetric_on_equal_arguments() {
        let pi = catalog::sl2();
        let f = &(&var(3, 0) * &var(3, 1)) + &var(3, 2);
        assert!(pi.poisson_bracket(&f, &f).is_zero());
    }

    #[test]
    fn sl2_bracket_from_structure_constants() {
        let pi = catalog::sl2();
        assert_eq!(
            pi.poisson_bracket(&var(3, 0), &var(3, 1)),
            var(3, 2).scale_q(&integer(2))
        );
    }

    #[test]
    fn jacobi_vanishes_for_lie_algebras() {
        for pi in [catalog::heisenberg(), catalog::sl2(), catalog::solvable2()] {
            assert!(pi.is_poisson());
        }
        assert!(catalog::weyl(2).unwrap().is_poisson());
        assert!(catalog::quantum_plane().is_poisson());
    }

    #[test]
    fn jacobi_detects_broken_constants() {
        let pi = catalog::broken_jacobi();
        let d = pi.jacobi_defect(0, 1, 2);
        assert!(!d.is_zero());
        assert!(matches!(pi.check_poisson(), Err(Error::NotPoisson { .. })));
    }

    #[test]
    fn classification() {
        assert_eq!(catalog::weyl(1).unwrap().class(), PoissonClass::Constant);
        assert_eq!(catalog::heisenberg().class(), PoissonClass::Linear);
        assert_eq!(catalog::quantum_plane().class(), PoissonClass::Quadratic);
        assert_eq!(PoissonBivector::zero(3).class(), PoissonClass::Constant);
        let mixed = PoissonBivector::from_upper(
            2,
            [((0, 1), &var(2, 0) + &SymPoly::constant(2, HSeries::one(0)))],
        )
        .unwrap();
        assert_eq!(mixed.class(), PoissonClass::General);
    }

    #[test]
    fn from_matrix_rejects_non_antisymmetric() {
        let one = SymPoly::constant(2, HSeries::one(0));
        let z = SymPoly::zero(2, 0);
        let m = vec![vec![z.clone(), one.clone()], vec![one, z]];
        assert!(PoissonBivector::from_matrix(m).is_err());
    }

    #[test]
    fn structure_constants_round_trip() {
        let pi = catalog::solvable2();
        assert_eq!(pi.structure_constant(0, 1, 0), integer(1));
        assert_eq!(pi.structure_constant(1, 0, 0), integer(-1));
        assert_eq!(pi.structure_constant(0, 1, 1), rational(0, 1));
    }
}
