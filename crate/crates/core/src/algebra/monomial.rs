use std::cmp::{Ordering, Reverse};

use super::format::{render_letters, Names};
use super::poly::Basis;

/// Exponent vector of a commutative monomial x^α in S(V).
///
/// Ordered by degree, then so that the sorted words of equal-degree
/// monomials compare lexicographically (x1^2 < x1*x2 < x2^2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymMonomial(Vec<u32>);

impl SymMonomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        SymMonomial(exponents)
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        SymMonomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Letters of the monomial in nondecreasing order.
    pub fn sorted_letters(&self) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.degree());
        for (i, &e) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(i as u16, e as usize));
        }
        out
    }

    /// ∂_i x^α = α_i x^{α - e_i}; `None` if α_i = 0.
    pub fn derive(&self, i: usize) -> Option<(u32, SymMonomial)> {
        let e = self.0[i];
        if e == 0 {
            return None;
        }
        let mut m = self.0.clone();
        m[i] -= 1;
        Some((e, SymMonomial(m)))
    }

    /// α! = ∏ α_i!
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.0
            .iter()
            .map(|&e| factorial(e as usize))
            .fold(num_bigint::BigInt::from(1), |a, b| a * b)
    }

    /// All monomials of total degree exactly `degree` in `dim` variables.
    pub fn all_of_degree(dim: usize, degree: usize) -> Vec<SymMonomial> {
        fn rec(dim: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<SymMonomial>) {
            if cur.len() + 1 == dim {
                cur.push(left);
                out.push(SymMonomial(cur.clone()));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e);
                rec(dim, left - e, cur, out);
                cur.pop();
            }
        }
        if dim == 0 {
            return if degree == 0 {
                vec![SymMonomial(vec![])]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        rec(dim, degree as u32, &mut Vec::new(), &mut out);
        out
    }

    /// All monomials of degree at most `max_degree`, in basis order.
    pub fn all_up_to(dim: usize, max_degree: usize) -> Vec<SymMonomial> {
        let mut out: Vec<SymMonomial> = (0..=max_degree)
            .flat_map(|k| SymMonomial::all_of_degree(dim, k))
            .collect();
        out.sort();
        out
    }
}

pub fn factorial(n: usize) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::from(1), |a, b| a * b)
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

impl Ord for SymMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), Reverse(&self.0)).cmp(&(other.degree(), Reverse(&other.0)))
    }
}

impl PartialOrd for SymMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Basis for SymMonomial {
    fn unit(dim: usize) -> Self {
        SymMonomial(vec![0; dim])
    }

    fn mul(&self, other: &Self) -> Option<(bool, Self)> {
        Some((
            false,
            SymMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()),
        ))
    }

    fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn render(&self, names: &Names) -> String {
        render_letters(self.sorted_letters().into_iter().map(usize::from), names)
    }
}

/// A word in the free monoid on x_1..x_d (0-based letters).
///
/// Degree-lexicographic order with x_1 < ... < x_d.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NCWord(Vec<u16>);

impl NCWord {
    pub fn new(letters: Vec<u16>) -> Self {
        NCWord(letters)
    }

    pub fn empty() -> Self {
        NCWord(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        NCWord(vec![i as u16])
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &NCWord) -> NCWord {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        NCWord(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> NCWord {
        NCWord(self.0[range].to_vec())
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Commutative image.
    pub fn exponents(&self, dim: usize) -> SymMonomial {
        let mut e = vec![0; dim];
        for &l in &self.0 {
            e[l as usize] += 1;
        }
        SymMonomial(e)
    }

    /// Every word of the given length over `dim` letters, in lex order.
    pub fn all_of_length(dim: usize, len: usize) -> Vec<NCWord> {
        let mut out = vec![NCWord::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..dim).map(move |l| {
                        let mut v = w.0.clone();
                        v.push(l as u16);
                        NCWord(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl Ord for NCWord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for NCWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Basis for NCWord {
    fn unit(_dim: usize) -> Self {
        NCWord::empty()
    }

    fn mul(&self, other: &Self) -> Option<(bool, Self)> {
        Some((false, self.concat(other)))
    }

    fn degree(&self) -> usize {
        self.0.len()
    }

    fn render(&self, names: &Names) -> String {
        render_letters(self.0.iter().map(|&l| l as usize), names)
    }
}

/// A strictly increasing index set I ⊆ {1..d}, stored as a bit mask; the
/// basis element e_I of ∧(V*).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Subset(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// All 2^d subsets of {0..d}, in basis order.
    pub fn all(dim: usize) -> Vec<Subset> {
        let mut v: Vec<Subset> = (0..(1u32 << dim)).map(Subset).collect();
        v.sort();
        v
    }

    /// Sign of e_I ∧ e_J = ± e_{I∪J}; `None` when I ∩ J ≠ ∅.
    pub fn wedge_sign(self, other: Subset) -> Option<bool> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Count inversions: pairs (a ∈ I, b ∈ J) with a > b.
        let mut inversions = 0u32;
        for b in other.indices() {
            inversions += (self.0 >> (b + 1)).count_ones();
        }
        Some(inversions % 2 == 1)
    }
}

impl Ord for Subset {
    /// By size, then lexicographically on the sorted indices: among equal
    /// sizes, the set owning the lowest differing index is smaller.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Basis for Subset {
    fn unit(_dim: usize) -> Self {
        Subset::EMPTY
    }

    fn mul(&self, other: &Self) -> Option<(bool, Self)> {
        self.wedge_sign(*other).map(|neg| (neg, Subset(self.0 | other.0)))
    }

    fn degree(&self) -> usize {
        self.len()
    }

    fn render(&self, _names: &Names) -> String {
        if self.is_empty() {
            return String::new();
        }
        let idx: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        format!("e[{}]", idx.join(","))
    }
}
