//! Star products on S(V)[ħ]/ħ^{N+1}: Moyal for constant π, the product
//! transported from the PBW quotient for linear π, the universal first-order
//! product, and the Duflo series.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ainfty::build_linear_instance;
use crate::algebra::hseries::rational;
use crate::algebra::monomial::factorial;
use crate::algebra::{Basis, HSeries, NCPoly, PoissonBivector, SymMonomial, SymPoly};
use crate::cobar::relations;
use crate::error::{Error, Result};
use crate::rewrite::{build_system, Reducer, RewriteSystem, DEFAULT_DEGREE_BOUND, DEFAULT_RULE_BUDGET};

fn require_dim(pi: &PoissonBivector, f: &SymPoly) -> Result<()> {
    if f.dim() != pi.dim() {
        return Err(Error::DimensionMismatch(f.dim(), pi.dim()));
    }
    Ok(())
}

/// m(exp(ħπ/2)(f ⊗ g)) for constant π, truncated at ħ^N.
///
/// Expanding the exponential over multisets m of ordered pairs (i, j):
/// Σ_m ħ^{|m|}/(2^{|m|} m!) ∏ π_ij^{m_ij} ∂^{row(m)} f ∂^{col(m)} g.
pub fn moyal_star(f: &SymPoly, g: &SymPoly, pi: &PoissonBivector) -> Result<SymPoly> {
    if !pi.is_constant() {
        return Err(Error::WrongClass {
            expected: "constant".into(),
            found: pi.class().to_string(),
        });
    }
    require_dim(pi, f)?;
    require_dim(pi, g)?;
    if f.order() != g.order() {
        return Err(Error::TruncationMismatch(f.order(), g.order()));
    }
    let d = pi.dim();
    let order = f.order();
    let pairs: Vec<(usize, usize, BigRational)> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, pi.constant_entry(i, j)))
        .filter(|(_, _, c)| !c.is_zero())
        .collect();
    let mut out = SymPoly::zero(d, order);
    // Enumerate multiplicities m_p for each pair, total ≤ N.
    let mut mult = vec![0usize; pairs.len()];
    fn rec(
        p: usize,
        left: usize,
        pairs: &[(usize, usize, BigRational)],
        mult: &mut Vec<usize>,
        f: &SymPoly,
        g: &SymPoly,
        out: &mut SymPoly,
    ) {
        if p == pairs.len() {
            let k: usize = mult.iter().sum();
            let mut coeff = BigRational::new(BigInt::one(), BigInt::from(2).pow(k as u32));
            let (mut df, mut dg) = (f.clone(), g.clone());
            for (m, (i, j, c)) in mult.iter().zip(pairs) {
                coeff *= BigRational::new(BigInt::one(), factorial(*m));
                for _ in 0..*m {
                    coeff *= c;
                    df = df.partial(*i);
                    dg = dg.partial(*j);
                }
            }
            if df.is_zero() || dg.is_zero() {
                return;
            }
            let term = (&df * &dg).scale(&HSeries::monomial(coeff, k, f.order()));
            *out = &*out + &term;
            return;
        }
        for m in 0..=left {
            mult[p] = m;
            rec(p + 1, left - m, pairs, mult, f, g, out);
        }
        mult[p] = 0;
    }
    rec(0, order, &pairs, &mut mult, f, g, &mut out);
    Ok(out)
}

/// fg + (ħ/2) π(f, g) with π read as Σ_{i,j} π_ij ∂_i ⊗ ∂_j; associative
/// modulo ħ² for Poisson π.
pub fn first_order_star(f: &SymPoly, g: &SymPoly, pi: &PoissonBivector) -> Result<SymPoly> {
    require_dim(pi, f)?;
    require_dim(pi, g)?;
    if f.order() != g.order() {
        return Err(Error::TruncationMismatch(f.order(), g.order()));
    }
    let half_h = HSeries::monomial(rational(1, 2), 1, f.order());
    Ok(&(f * g) + &pi.apply(f, g).scale(&half_h))
}

/// The quotient T(V)[ħ]/I presented by a completed rewriting system, with the
/// transport Φ = NF∘Sym from S(V) and its triangular inverse.
#[derive(Debug)]
pub struct QuotientAlgebra {
    reducer: Reducer,
    transport: HashMap<SymMonomial, NCPoly>,
}

impl QuotientAlgebra {
    pub fn new(sys: Arc<RewriteSystem>) -> Result<Self> {
        if sys.status() != crate::rewrite::Status::Completed {
            return Err(Error::NotCompleted(sys.status().to_string()));
        }
        Ok(QuotientAlgebra {
            reducer: Reducer::new(sys),
            transport: HashMap::new(),
        })
    }

    pub fn system(&self) -> &Arc<RewriteSystem> {
        self.reducer.system()
    }

    pub fn nf(&mut self, t: &NCPoly) -> Result<NCPoly> {
        self.reducer.nf(t)
    }

    /// NF(a·b).
    pub fn product(&mut self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
        self.nf(&(a * b))
    }

    /// T(α) = NF(Sym(x^α)) = (1/n) Σ_i α_i NF(x_i · T(α − e_i)).
    pub fn transport_monomial(&mut self, m: &SymMonomial) -> Result<NCPoly> {
        if let Some(t) = self.transport.get(m) {
            return Ok(t.clone());
        }
        let sys = self.system().clone();
        let (dim, order) = (sys.dim(), sys.order());
        let n = Basis::degree(m);
        if n > sys.degree_bound() {
            return Err(Error::DegreeOverflow {
                degree: n,
                bound: sys.degree_bound(),
            });
        }
        let result = if n == 0 {
            NCPoly::one(dim, order)
        } else {
            let mut acc = NCPoly::zero(dim, order);
            for i in 0..dim {
                if let Some((e, rest)) = m.derive(i) {
                    let tail = self.transport_monomial(&rest)?;
                    let x = NCPoly::letter(dim, order, i);
                    let p = self.product(&x, &tail)?;
                    acc.add_scaled(&p, &HSeries::constant(rational(e as i64, n as i64), order));
                }
            }
            acc
        };
        self.transport.insert(m.clone(), result.clone());
        Ok(result)
    }

    /// Φ(f) = NF(Sym f).
    pub fn transport(&mut self, f: &SymPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero(f.dim(), f.order());
        for (m, c) in f.iter() {
            let t = self.transport_monomial(m)?;
            out.add_scaled(&t, c);
        }
        Ok(out)
    }

    /// Φ⁻¹ on normal forms: peel off the leading (sorted) word, whose
    /// transport T(α) has leading term exactly that word.
    pub fn inverse_transport(&mut self, t: &NCPoly) -> Result<SymPoly> {
        let (dim, order) = (t.dim(), t.order());
        let mut rest = t.clone();
        let mut out = SymPoly::zero(dim, order);
        while let Some((w, c)) = rest.leading() {
            let (w, c) = (w.clone(), c.clone());
            if !w.is_sorted() {
                return Err(Error::Invalid(format!(
                    "normal form has the unsorted leading word {}; the quotient is not PBW",
                    NCPoly::monomial(dim, order, w)
                )));
            }
            let alpha = w.exponents(dim);
            let ta = self.transport_monomial(&alpha)?;
            match ta.leading() {
                Some((lw, lc)) if *lw == w && lc.is_one() => {}
                _ => {
                    return Err(Error::Invalid(format!(
                        "transport of {} is not unitriangular",
                        SymPoly::monomial(dim, order, alpha)
                    )))
                }
            }
            rest.add_scaled(&ta, &-&c);
            out.add_term(alpha, &c);
        }
        Ok(out)
    }
}

/// Which product a [`StarAlgebra`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StarKind {
    Moyal,
    GuttTransport,
    FirstOrder,
}

impl fmt::Display for StarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StarKind::Moyal => "moyal",
            StarKind::GuttTransport => "gutt_transport",
            StarKind::FirstOrder => "first_order",
        })
    }
}

#[derive(Debug)]
pub struct StarAlgebra {
    pi: PoissonBivector,
    kind: StarKind,
    order: usize,
    quotient: Option<Mutex<QuotientAlgebra>>,
}

impl StarAlgebra {
    pub fn moyal(pi: &PoissonBivector, order: usize) -> Result<Self> {
        if !pi.is_constant() {
            return Err(Error::WrongClass {
                expected: "constant".into(),
                found: pi.class().to_string(),
            });
        }
        Ok(StarAlgebra {
            pi: pi.clone(),
            kind: StarKind::Moyal,
            order,
            quotient: None,
        })
    }

    /// Transport of the product of T(V)[ħ]/(x_i x_j − x_j x_i − ħ Σ_k f_ij^k x_k)
    /// to S(V). Products of total degree up to `degree_bound` are supported.
    pub fn gutt(pi: &PoissonBivector, order: usize, degree_bound: usize) -> Result<Self> {
        pi.check_poisson()?;
        let inst = build_linear_instance(pi, order)?;
        let rels: Vec<NCPoly> = relations(&inst)?.into_iter().map(|(_, r)| r).collect();
        let bound = degree_bound.max(DEFAULT_DEGREE_BOUND);
        let sys = build_system(pi.dim(), order, &rels, bound)?.complete(DEFAULT_RULE_BUDGET)?;
        let quotient = QuotientAlgebra::new(Arc::new(sys))?;
        Ok(StarAlgebra {
            pi: pi.clone(),
            kind: StarKind::GuttTransport,
            order,
            quotient: Some(Mutex::new(quotient)),
        })
    }

    pub fn first_order(pi: &PoissonBivector, order: usize) -> Self {
        StarAlgebra {
            pi: pi.clone(),
            kind: StarKind::FirstOrder,
            order,
            quotient: None,
        }
    }

    /// The natural product for the class of π: Moyal for constant, Gutt for
    /// linear, first order otherwise.
    pub fn for_bivector(pi: &PoissonBivector, order: usize, degree_bound: usize) -> Result<Self> {
        if pi.is_constant() {
            Self::moyal(pi, order)
        } else if pi.is_linear() {
            Self::gutt(pi, order, degree_bound)
        } else {
            Ok(Self::first_order(pi, order))
        }
    }

    pub fn kind(&self) -> StarKind {
        self.kind
    }

    pub fn pi(&self) -> &PoissonBivector {
        &self.pi
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn system(&self) -> Option<Arc<RewriteSystem>> {
        self.quotient
            .as_ref()
            .map(|q| q.lock().expect("quotient lock").system().clone())
    }

    pub fn star(&self, f: &SymPoly, g: &SymPoly) -> Result<SymPoly> {
        for p in [f, g] {
            if p.order() != self.order {
                return Err(Error::TruncationMismatch(p.order(), self.order));
            }
        }
        match self.kind {
            StarKind::Moyal => moyal_star(f, g, &self.pi),
            StarKind::FirstOrder => first_order_star(f, g, &self.pi),
            StarKind::GuttTransport => {
                require_dim(&self.pi, f)?;
                require_dim(&self.pi, g)?;
                let mut q = self.quotient.as_ref().expect("quotient").lock().expect("quotient lock");
                let a = q.transport(f)?;
                let b = q.transport(g)?;
                let ab = q.product(&a, &b)?;
                q.inverse_transport(&ab)
            }
        }
    }

    /// Φ = NF∘Sym (only for the transported product).
    pub fn transport(&self, f: &SymPoly) -> Result<NCPoly> {
        match &self.quotient {
            Some(q) => q.lock().expect("quotient lock").transport(f),
            None => Err(Error::Invalid(format!("no quotient for the {} product", self.kind))),
        }
    }
}

/// gutt_star as a free function (builds the quotient on each call).
pub fn gutt_star(f: &SymPoly, g: &SymPoly, pi: &PoissonBivector) -> Result<SymPoly> {
    let bound = f.max_degree().unwrap_or(0) + g.max_degree().unwrap_or(0);
    StarAlgebra::gutt(pi, f.order(), bound)?.star(f, g)
}

/// Wheel weights: w_1 = −1/4 and b_{2n}, the Taylor coefficients of
/// ½ log(sinh(t/2)/(t/2)); odd weights beyond w_1 vanish.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DufloSeries {
    pub order: usize,
    /// Weight of c_n for n = 1..=order (index 0 unused and zero).
    #[serde(serialize_with = "crate::serial::serialize_rationals")]
    pub weights: Vec<BigRational>,
}

/// Power series ½ log(sinh(t/2)/(t/2)) up to t^order, via log(1+u) = Σ (−1)^{m+1} u^m/m.
fn half_log_sinhc(order: usize) -> Vec<BigRational> {
    let mut s = vec![BigRational::zero(); order + 1];
    for k in 1..=order / 2 {
        // (t/2)^{2k}/(2k+1)!
        s[2 * k] = BigRational::new(
            BigInt::one(),
            BigInt::from(2).pow(2 * k as u32) * factorial(2 * k + 1),
        );
    }
    let u = HSeries::from_coeffs(s, order);
    let mut log = HSeries::zero(order);
    let mut power = HSeries::one(order);
    for m in 1..=order {
        power = &power * &u;
        let c = rational(if m % 2 == 1 { 1 } else { -1 }, m as i64);
        log = &log + &power.scale(&c);
    }
    log.scale(&rational(1, 2)).coeffs().to_vec()
}

impl DufloSeries {
    pub fn new(order: usize) -> Self {
        let mut weights = half_log_sinhc(order);
        weights[0] = BigRational::zero();
        if order >= 1 {
            weights[1] = rational(-1, 4);
        }
        DufloSeries { order, weights }
    }

    pub fn w1(&self) -> BigRational {
        self.weight(1)
    }

    /// b_{2n} (zero beyond the computed order).
    pub fn b(&self, two_n: usize) -> BigRational {
        self.weight(two_n)
    }

    pub fn weight(&self, n: usize) -> BigRational {
        self.weights.get(n).cloned().unwrap_or_else(BigRational::zero)
    }
}

pub fn duflo_series(order: usize) -> DufloSeries {
    DufloSeries::new(order)
}

/// A constant-coefficient differential operator Σ_β a_β ∂^β, stored by its
/// symbol: the monomial ξ^β carries a_β.
pub type DiffOperator = SymPoly;

/// c_n = Σ_{i_1..i_n} tr(ad x_{i_1} ⋯ ad x_{i_n}) ∂_{i_1} ⋯ ∂_{i_n}, with
/// (ad x_i)[k][j] = f_ij^k.
pub fn wheel_operator(pi: &PoissonBivector, n: usize) -> DiffOperator {
    let d = pi.dim();
    let ads: Vec<Vec<Vec<BigRational>>> = (0..d).map(|i| pi.ad_matrix(i)).collect();
    let mut out = SymPoly::zero(d, 0);
    let identity: Vec<Vec<BigRational>> = (0..d)
        .map(|r| (0..d).map(|c| if r == c { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    fn rec(
        ads: &[Vec<Vec<BigRational>>],
        n: usize,
        prod: &[Vec<BigRational>],
        exps: &mut Vec<u32>,
        out: &mut SymPoly,
    ) {
        let d = ads.len();
        if n == 0 {
            let tr: BigRational = (0..d).map(|i| prod[i][i].clone()).sum();
            if !tr.is_zero() {
                out.add_term(SymMonomial::new(exps.clone()), &HSeries::constant(tr, 0));
            }
            return;
        }
        for (i, ad) in ads.iter().enumerate() {
            let next: Vec<Vec<BigRational>> = (0..d)
                .map(|r| {
                    (0..d)
                        .map(|c| (0..d).map(|k| &prod[r][k] * &ad[k][c]).sum())
                        .collect()
                })
                .collect();
            exps[i] += 1;
            rec(ads, n - 1, &next, exps, out);
            exps[i] -= 1;
        }
    }
    rec(&ads, n, &identity, &mut vec![0; d], &mut out);
    out
}

/// Applies Σ_β a_β ∂^β to f; the symbol's ħ-coefficients multiply through.
pub fn apply_operator(op: &DiffOperator, f: &SymPoly) -> SymPoly {
    let order = f.order();
    let mut out = SymPoly::zero(f.dim(), order);
    for (beta, a) in op.iter() {
        let mut g = f.clone();
        for (i, &e) in beta.exponents().iter().enumerate() {
            for _ in 0..e {
                g = g.partial(i);
            }
        }
        out.add_scaled(&g, &a.with_order(order));
    }
    out
}

/// exp(Σ_n w_n ħ^n c_n) f, truncated by ħ-order (each term carries ħ).
pub fn duflo_apply(series: &DufloSeries, pi: &PoissonBivector, f: &SymPoly) -> Result<SymPoly> {
    require_dim(pi, f)?;
    let order = f.order();
    let mut generator = SymPoly::zero(pi.dim(), order);
    for n in 1..=order.min(series.order) {
        let w = series.weight(n);
        if w.is_zero() {
            continue;
        }
        let c = wheel_operator(pi, n).with_order(order);
        generator = &generator + &c.scale(&HSeries::monomial(w, n, order));
    }
    let mut out = f.clone();
    let mut term = f.clone();
    for k in 1..=order {
        term = apply_operator(&generator, &term).scale_q(&rational(1, k as i64));
        if term.is_zero() {
            break;
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Associator (f⋆g)⋆h − f⋆(g⋆h).
pub fn associator(star: &StarAlgebra, f: &SymPoly, g: &SymPoly, h: &SymPoly) -> Result<SymPoly> {
    let left = star.star(&star.star(f, g)?, h)?;
    let right = star.star(f, &star.star(g, h)?)?;
    Ok(&left - &right)
}
