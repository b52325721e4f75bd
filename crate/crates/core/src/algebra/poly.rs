//! Finite linear combinations of basis monomials with [`HSeries`] coefficients.
//!
//! One container serves S(V), T(V), ∧(V*) and the cobar algebra; the basis
//! type decides how two monomials multiply.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::format::{push_term, Names};
use super::hseries::HSeries;
use crate::error::{Error, Result};

/// A multiplicative basis: products of basis elements are ± a basis element
/// or zero.
pub trait Basis: Ord + Clone + Hash + Debug {
    fn unit(dim: usize) -> Self;
    /// `None` for a vanishing product, otherwise `(negate, product)`.
    fn mul(&self, other: &Self) -> Option<(bool, Self)>;
    /// Polynomial degree (word length, |I|, ...).
    fn degree(&self) -> usize;
    fn render(&self, names: &Names) -> String;
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<B> {
    dim: usize,
    order: usize,
    terms: BTreeMap<B, HSeries>,
}

impl<B: Basis> Poly<B> {
    pub fn zero(dim: usize, order: usize) -> Self {
        Poly {
            dim,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize, order: usize) -> Self {
        Self::term(dim, B::unit(dim), HSeries::one(order))
    }

    pub fn constant(dim: usize, c: HSeries) -> Self {
        Self::term(dim, B::unit(dim), c)
    }

    pub fn term(dim: usize, basis: B, c: HSeries) -> Self {
        let mut p = Self::zero(dim, c.order());
        p.add_term(basis, &c);
        p
    }

    pub fn monomial(dim: usize, order: usize, basis: B) -> Self {
        Self::term(dim, basis, HSeries::one(order))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<B, HSeries> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &HSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, basis: &B) -> HSeries {
        self.terms
            .get(basis)
            .cloned()
            .unwrap_or_else(|| HSeries::zero(self.order))
    }

    /// Adds `c·basis`, dropping the entry if it cancels.
    pub fn add_term(&mut self, basis: B, c: &HSeries) {
        assert_eq!(c.order(), self.order, "truncation order mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(basis) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &Self, c: &HSeries) {
        for (b, x) in &other.terms {
            self.add_term(b.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &HSeries) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        out.add_scaled(self, c);
        out
    }

    pub fn scale_q(&self, c: &BigRational) -> Self {
        self.map_coeffs(|x| x.scale(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&HSeries) -> HSeries) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        for (b, x) in &self.terms {
            out.add_term(b.clone(), &f(x));
        }
        out
    }

    /// Evaluates ħ = 0 coefficientwise (keeping the truncation order).
    pub fn at_hbar_zero(&self) -> Self {
        self.map_coeffs(HSeries::at_zero)
    }

    pub fn with_order(&self, order: usize) -> Self {
        let mut out = Self::zero(self.dim, order);
        for (b, x) in &self.terms {
            out.add_term(b.clone(), &x.with_order(order));
        }
        out
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Basis::degree).max()
    }

    pub fn homogeneous_part(&self, degree: usize) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        for (b, x) in &self.terms {
            if b.degree() == degree {
                out.add_term(b.clone(), x);
            }
        }
        out
    }

    /// Largest basis element under the basis order, with its coefficient.
    pub fn leading(&self) -> Option<(&B, &HSeries)> {
        self.terms.iter().next_back()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (b, x) in &other.terms {
            out.add_term(b.clone(), x);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.dim, self.order);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((neg, ab)) = a.mul(b) {
                    let c = x * y;
                    out.add_term(ab, &if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.order != other.order {
            return Err(Error::TruncationMismatch(self.order, other.order));
        }
        Ok(())
    }

    /// Terms in display order: degree descending, basis order ascending
    /// within a degree, then increasing powers of ħ.
    pub fn render(&self, names: &Names) -> String {
        let mut keys: Vec<&B> = self.terms.keys().collect();
        keys.sort_by_key(|b| (Reverse(b.degree()), *b));
        let mut out = String::new();
        for b in keys {
            let mono = b.render(names);
            for (k, c) in self.terms[b].terms() {
                push_term(&mut out, c, k, &mono);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<B: Basis> fmt::Display for Poly<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Names::standard(self.dim)))
    }
}

impl<B: Basis> Add for &Poly<B> {
    type Output = Poly<B>;
    fn add(self, rhs: &Poly<B>) -> Poly<B> {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl<B: Basis> Add for Poly<B> {
    type Output = Poly<B>;
    fn add(self, rhs: Poly<B>) -> Poly<B> {
        &self + &rhs
    }
}

impl<B: Basis> Sub for &Poly<B> {
    type Output = Poly<B>;
    fn sub(self, rhs: &Poly<B>) -> Poly<B> {
        self.try_add(&-rhs).expect("polynomial subtraction")
    }
}

impl<B: Basis> Sub for Poly<B> {
    type Output = Poly<B>;
    fn sub(self, rhs: Poly<B>) -> Poly<B> {
        &self - &rhs
    }
}

impl<B: Basis> Neg for &Poly<B> {
    type Output = Poly<B>;
    fn neg(self) -> Poly<B> {
        self.map_coeffs(|c| -c)
    }
}

impl<B: Basis> Neg for Poly<B> {
    type Output = Poly<B>;
    fn neg(self) -> Poly<B> {
        -&self
    }
}

impl<B: Basis> Mul for &Poly<B> {
    type Output = Poly<B>;
    fn mul(self, rhs: &Poly<B>) -> Poly<B> {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl<B: Basis> Mul for Poly<B> {
    type Output = Poly<B>;
    fn mul(self, rhs: Poly<B>) -> Poly<B> {
        &self * &rhs
    }
}
