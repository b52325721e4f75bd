//! Independent recomputations compared against the library.

use std::sync::Arc;

use defquant::ainfty::build_linear_instance;
use defquant::algebra::hseries::{integer, rational};
use defquant::algebra::monomial::{binomial, factorial};
use defquant::algebra::{HSeries, NCPoly, NCWord, SymMonomial, SymPoly};
use defquant::catalog;
use defquant::cobar::{cohomology_ranks, quadratic_relations, relations, DualDifferential};
use defquant::rewrite::build_system;
use defquant::starprod::{duflo_series, moyal_star, StarAlgebra};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_sym(rng: &mut ChaCha8Rng, dim: usize, order: usize, max_degree: usize) -> SymPoly {
    let mut p = SymPoly::zero(dim, order);
    for _ in 0..rng.gen_range(1..=3) {
        let mut e = vec![0u32; dim];
        for _ in 0..rng.gen_range(0..=max_degree) {
            e[rng.gen_range(0..dim)] += 1;
        }
        p.add_term(SymMonomial::new(e), &HSeries::constant(integer(rng.gen_range(-3..=3)), order));
    }
    p
}

fn word(letters: &[u16]) -> NCWord {
    NCWord::new(letters.to_vec())
}

/// Σ_k (c/2)^k/k! m((Σ_{ij} π_ij ∂_i ⊗ ∂_j)^k (f ⊗ g)) by iterating the
/// bidifferential operator on explicit tensor pairs. `coeff` multiplies each
/// application (ħ for Moyal, ħ·x3 for Heisenberg).
fn bidifferential_exp(
    f: &SymPoly,
    g: &SymPoly,
    pairs: &[(usize, usize, BigRational)],
    coeff: &SymPoly,
    order: usize,
) -> SymPoly {
    let mut tensors = vec![(f.clone(), g.clone())];
    let mut out = f * g;
    let mut power = SymPoly::one(f.dim(), order);
    for k in 1..=order {
        let mut next = Vec::new();
        for (a, b) in &tensors {
            for (i, j, c) in pairs {
                let da = a.partial(*i);
                let db = b.partial(*j);
                if !da.is_zero() && !db.is_zero() {
                    next.push((da.scale_q(c), db));
                }
            }
        }
        tensors = next;
        power = &power * coeff;
        let scale = BigRational::new(BigInt::one(), BigInt::from(2u32).pow(k as u32) * factorial(k));
        for (a, b) in &tensors {
            out = &out + &(&(a * b) * &power).scale_q(&scale);
        }
    }
    out
}

#[test]
fn moyal_matches_iterated_bidifferential_operator() {
    let pi = catalog::weyl(2).unwrap();
    let mut pairs = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let c = pi.constant_entry(i, j);
            if !c.is_zero() {
                pairs.push((i, j, c));
            }
        }
    }
    let hbar = SymPoly::constant(4, HSeries::hbar(4));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let f = random_sym(&mut rng, 4, 4, 4);
        let g = random_sym(&mut rng, 4, 4, 4);
        assert_eq!(moyal_star(&f, &g, &pi).unwrap(), bidifferential_exp(&f, &g, &pairs, &hbar, 4));
    }
}

#[test]
fn heisenberg_transport_is_moyal_over_the_center() {
    let pi = catalog::heisenberg();
    let star = StarAlgebra::gutt(&pi, 4, 8).unwrap();
    let pairs = vec![(0, 1, integer(1)), (1, 0, integer(-1))];
    let hx3 = &SymPoly::var(3, 4, 2) * &SymPoly::constant(3, HSeries::hbar(4));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let f = random_sym(&mut rng, 3, 4, 3);
        let g = random_sym(&mut rng, 3, 4, 3);
        assert_eq!(star.star(&f, &g).unwrap(), bidifferential_exp(&f, &g, &pairs, &hx3, 4));
    }
}

/// x2^m x1^n = Σ_k (−ħ)^k k! C(m,k) C(n,k) x1^{n−k} x2^{m−k} when x1x2 − x2x1 = ħ.
#[test]
fn weyl_normal_ordering_formula() {
    let pi = catalog::weyl(1).unwrap();
    let inst = defquant::ainfty::build_constant_instance(&pi, 6).unwrap();
    let rels: Vec<NCPoly> = relations(&inst).unwrap().into_iter().map(|(_, r)| r).collect();
    let sys = Arc::new(build_system(2, 6, &rels, 10).unwrap().complete(10).unwrap());
    for m in 0..=4usize {
        for n in 0..=4usize {
            let lhs: Vec<u16> = std::iter::repeat_n(1, m).chain(std::iter::repeat_n(0, n)).collect();
            let mut expected = NCPoly::zero(2, 6);
            for k in 0..=m.min(n) {
                let c = BigRational::from_integer(factorial(k)) * integer(binomial(m, k) as i64) * integer(binomial(n, k) as i64);
                let c = if k % 2 == 1 { -c } else { c };
                let w: Vec<u16> = std::iter::repeat_n(0, n - k).chain(std::iter::repeat_n(1, m - k)).collect();
                expected.add_term(word(&w), &HSeries::monomial(c, k, 6));
            }
            let got = sys.normal_form(&NCPoly::monomial(2, 6, word(&lhs))).unwrap();
            assert_eq!(got, expected, "x2^{m} x1^{n}");
        }
    }
}

/// NF(x2^b x1^a) = (1 − abħ) x1^a x2^b modulo ħ² for π_12 = x1 x2.
#[test]
fn quantum_plane_normal_ordering() {
    let rels: Vec<NCPoly> = quadratic_relations(&catalog::quantum_plane())
        .unwrap()
        .into_iter()
        .map(|(_, r)| r)
        .collect();
    let sys = Arc::new(build_system(2, 1, &rels, 8).unwrap().complete(10).unwrap());
    for a in 0..=4usize {
        for b in 0..=4usize {
            let lhs: Vec<u16> = std::iter::repeat_n(1, b).chain(std::iter::repeat_n(0, a)).collect();
            let rhs: Vec<u16> = std::iter::repeat_n(0, a).chain(std::iter::repeat_n(1, b)).collect();
            let c = HSeries::from_coeffs(vec![integer(1), integer(-((a * b) as i64))], 1);
            let expected = NCPoly::term(2, word(&rhs), c);
            assert_eq!(sys.normal_form(&NCPoly::monomial(2, 1, word(&lhs))).unwrap(), expected);
        }
    }
}

/// Counts irreducible words by enumerating all words of each length.
#[test]
fn hilbert_counts_by_enumeration() {
    for pi in [catalog::heisenberg(), catalog::sl2(), catalog::solvable2()] {
        let d = pi.dim();
        let inst = build_linear_instance(&pi, 2).unwrap();
        let rels: Vec<NCPoly> = relations(&inst).unwrap().into_iter().map(|(_, r)| r).collect();
        let sys = build_system(d, 2, &rels, 8).unwrap().complete(50).unwrap();
        let h = sys.hilbert(5);
        for n in 0..=5 {
            let count = NCWord::all_of_length(d, n).iter().filter(|w| sys.is_irreducible(w)).count() as u64;
            assert_eq!(h.counts[n], count);
            assert_eq!(count, binomial(n + d - 1, n));
        }
    }
}

/// Akiyama–Tanigawa Bernoulli numbers (B_1 = +1/2; even indices agree).
fn bernoulli_at(n: usize) -> BigRational {
    let mut a: Vec<BigRational> = Vec::new();
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            a[j - 1] = integer(j as i64) * (&a[j - 1] - &a[j]);
        }
    }
    a[0].clone()
}

#[test]
fn duflo_weights_match_bernoulli_numbers() {
    let s = duflo_series(10);
    assert_eq!(s.w1(), rational(-1, 4));
    for n in 1..=5 {
        let k = 2 * n;
        let expected = bernoulli_at(k) / BigRational::from_integer(BigInt::from(2 * k) * factorial(k));
        assert_eq!(s.b(k), expected, "b_{k}");
    }
    for k in [3, 5, 7, 9] {
        assert!(s.weight(k).is_zero());
    }
}

/// Σ_k (−1)^k dim C^k_w equals dim S^w(V) when the complex is acyclic off
/// degree 0; the cochain count is recomputed from compositions of w.
#[test]
fn koszul_euler_characteristic() {
    fn words(d: usize, w: usize, n: usize) -> u64 {
        if n == 0 {
            return u64::from(w == 0);
        }
        (1..=w.min(d)).map(|s| binomial(d, s) * words(d, w - s, n - 1)).sum()
    }
    for d in 1..=3 {
        let delta = DualDifferential::classical(d, 0);
        let t = cohomology_ranks(&delta, -3..=0, 4).unwrap();
        for w in 0..=4usize {
            let mut euler = 0i64;
            for k in -3i64..=0 {
                let n = (w as i64 + k) as usize;
                let cochains = if w as i64 + k < 0 { 0 } else { words(d, w, n) };
                assert_eq!(t.get(k, w).unwrap().cochains as u64, cochains);
                euler += if k % 2 == 0 { cochains as i64 } else { -(cochains as i64) };
            }
            assert_eq!(euler, binomial(w + d - 1, w) as i64, "d={d} w={w}");
        }
    }
}
