//! Exact arithmetic: the scalar ring ℚ[ħ]/ħ^{N+1}, the algebras S(V), T(V),
//! ∧(V*), and Poisson bivectors.

pub mod format;
pub mod hseries;
pub mod monomial;
pub mod poisson;
pub mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use format::Names;
pub use hseries::HSeries;
pub use monomial::{NCWord, Subset, SymMonomial};
pub use poisson::{PoissonBivector, PoissonClass};
pub use poly::{Basis, Poly};

/// Element of S(V)[ħ]/ħ^{N+1}.
pub type SymPoly = Poly<SymMonomial>;
/// Element of T(V)[ħ]/ħ^{N+1}.
pub type NCPoly = Poly<NCWord>;
/// Element of ∧(V*)[ħ]/ħ^{N+1}.
pub type ExtElement = Poly<Subset>;

impl SymPoly {
    /// The generator x_i (0-based).
    pub fn var(dim: usize, order: usize, i: usize) -> Self {
        Self::monomial(dim, order, SymMonomial::var(dim, i))
    }

    /// ∂/∂x_i.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim(), self.order());
        for (m, c) in self.iter() {
            if let Some((e, dm)) = m.derive(i) {
                out.add_term(dm, &c.scale(&BigRational::from_integer(BigInt::from(e))));
            }
        }
        out
    }
}

impl NCPoly {
    pub fn letter(dim: usize, order: usize, i: usize) -> Self {
        Self::monomial(dim, order, NCWord::letter(i))
    }
}

impl ExtElement {
    pub fn basis(dim: usize, order: usize, s: Subset) -> Self {
        Self::monomial(dim, order, s)
    }
}

/// Sym: S(V) → T(V), x^α ↦ (1/|α|!) Σ_{σ ∈ S_|α|} σ·(sorted word of α).
pub fn symmetrize(f: &SymPoly) -> NCPoly {
    let mut out = NCPoly::zero(f.dim(), f.order());
    for (m, c) in f.iter() {
        let n = m.degree();
        let weight = BigRational::new(m.factorial(), monomial::factorial(n));
        let c = c.scale(&weight);
        for w in multiset_permutations(m.sorted_letters()) {
            out.add_term(NCWord::new(w), &c);
        }
    }
    out
}

/// Distinct permutations of a sorted multiset, in lexicographic order.
pub fn multiset_permutations(mut v: Vec<u16>) -> Vec<Vec<u16>> {
    v.sort_unstable();
    let mut out = vec![v.clone()];
    loop {
        // next_permutation
        let n = v.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

/// The projection T(V) → S(V) sending a word to its commutative image.
pub fn abelianize(t: &NCPoly) -> SymPoly {
    let mut out = SymPoly::zero(t.dim(), t.order());
    for (w, c) in t.iter() {
        out.add_term(w.exponents(t.dim()), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::hseries::{integer, rational};
    use super::*;

    fn word(ls: &[u16]) -> NCWord {
        NCWord::new(ls.iter().map(|l| l - 1).collect())
    }

    #[test]
    fn symmetrize_degree_one() {
        let x1 = SymPoly::var(2, 0, 0);
        assert_eq!(symmetrize(&x1), NCPoly::monomial(2, 0, word(&[1])));
    }

    #[test]
    fn symmetrize_two_letters() {
        let f = &SymPoly::var(2, 0, 0) * &SymPoly::var(2, 0, 1);
        let half = HSeries::constant(rational(1, 2), 0);
        let mut expected = NCPoly::zero(2, 0);
        expected.add_term(word(&[1, 2]), &half);
        expected.add_term(word(&[2, 1]), &half);
        assert_eq!(symmetrize(&f), expected);
    }

    #[test]
    fn symmetrize_multiset() {
        let x1 = SymPoly::var(2, 0, 0);
        let f = &(&x1 * &x1) * &SymPoly::var(2, 0, 1);
        let third = HSeries::constant(rational(1, 3), 0);
        let mut expected = NCPoly::zero(2, 0);
        for w in [[1, 1, 2], [1, 2, 1], [2, 1, 1]] {
            expected.add_term(word(&w), &third);
        }
        assert_eq!(symmetrize(&f), expected);
    }

    #[test]
    fn abelianize_examples() {
        let t = NCPoly::monomial(2, 0, word(&[2, 1]));
        assert_eq!(abelianize(&t), &SymPoly::var(2, 0, 0) * &SymPoly::var(2, 0, 1));
        let comm = &NCPoly::monomial(2, 0, word(&[1, 2])) - &NCPoly::monomial(2, 0, word(&[2, 1]));
        assert!(abelianize(&comm).is_zero());
        let t = NCPoly::term(2, word(&[1, 1]), HSeries::hbar(2));
        let x1 = SymPoly::var(2, 2, 0);
        assert_eq!(abelianize(&t), (&x1 * &x1).scale(&HSeries::hbar(2)));
    }

    #[test]
    fn partial_derivative() {
        let x1 = SymPoly::var(2, 0, 0);
        let f = &(&x1 * &x1) * &x1;
        assert_eq!(f.partial(0), (&x1 * &x1).scale_q(&integer(3)));
        assert!(f.partial(1).is_zero());
    }

    #[test]
    fn permutations_of_multiset() {
        assert_eq!(multiset_permutations(vec![0, 0, 1]).len(), 3);
        assert_eq!(multiset_permutations(vec![0, 1, 2, 3]).len(), 24);
        assert_eq!(multiset_permutations(vec![]).len(), 1);
    }
}
