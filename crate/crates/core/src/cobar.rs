//! The cobar algebra T(B⁺[1]*): free on generators x_I (I ≠ ∅) of degree
//! 1 − |I| and weight |I|, with the differential dual to an A∞-structure.
//!
//! The coefficient of x_{J_1}⋯x_{J_n} in δ(x_I) is
//! (−1)^{1−|I|} κ(J) ⟨x_I, d^n(e_{J_1}|⋯|e_{J_n})⟩ with the Koszul sign
//! κ(J) = (−1)^{Σ_{s<r}(|J_s|−1)(|J_r|−1)}. Concatenation is the product, and
//! δ extends as a graded derivation.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::ainfty::{shifted_degree, AInftyInstance};
use crate::algebra::poly::Basis;
use crate::algebra::{symmetrize, HSeries, NCPoly, NCWord, Names, Poly, PoissonBivector, Subset};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};

/// A word in the generators x_I; each entry is a nonempty index set.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CobarWord(Vec<Subset>);

impl CobarWord {
    pub fn new(gens: Vec<Subset>) -> Self {
        assert!(gens.iter().all(|g| !g.is_empty()), "cobar generators are nonempty");
        CobarWord(gens)
    }

    pub fn generator(s: Subset) -> Self {
        Self::new(vec![s])
    }

    pub fn gens(&self) -> &[Subset] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cohomological degree Σ (1 − |I|).
    pub fn cdegree(&self) -> i64 {
        self.0.iter().map(|s| 1 - s.len() as i64).sum()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|s| s.len()).sum()
    }

    /// The word as an element of T(V), if it only involves singletons.
    pub fn to_ncword(&self) -> Option<NCWord> {
        self.0
            .iter()
            .map(|s| (s.len() == 1).then(|| s.indices()[0] as u16))
            .collect::<Option<Vec<_>>>()
            .map(NCWord::new)
    }
}

/// Name of the generator x_I: the variable name for singletons, otherwise
/// `x_{12}` (comma-separated when d > 9).
pub fn generator_name(s: Subset, names: &Names) -> String {
    let idx = s.indices();
    if idx.len() == 1 {
        return names.get(idx[0]).to_string();
    }
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    let sep = if names.len() > 9 { "," } else { "" };
    format!("x_{{{}}}", parts.join(sep))
}

impl Basis for CobarWord {
    fn unit(_dim: usize) -> Self {
        CobarWord(Vec::new())
    }

    fn mul(&self, other: &Self) -> Option<(bool, Self)> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Some((false, CobarWord(v)))
    }

    /// The weight.
    fn degree(&self) -> usize {
        self.weight()
    }

    fn render(&self, names: &Names) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            let name = generator_name(self.0[i], names);
            parts.push(if j - i == 1 { name } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }
}

pub type CobarElement = Poly<CobarWord>;

/// An element of T(V) viewed in the cobar algebra.
pub fn from_ncpoly(p: &NCPoly) -> CobarElement {
    let mut out = CobarElement::zero(p.dim(), p.order());
    for (w, c) in p.iter() {
        let gens = w.letters().iter().map(|&l| Subset::singleton(l as usize)).collect();
        out.add_term(CobarWord::new(gens), c);
    }
    out
}

/// The part of a cobar element living in T(V); `None` if some word involves a
/// generator of weight ≥ 2.
pub fn to_ncpoly(e: &CobarElement) -> Option<NCPoly> {
    let mut out = NCPoly::zero(e.dim(), e.order());
    for (w, c) in e.iter() {
        out.add_term(w.to_ncword()?, c);
    }
    Some(out)
}

fn koszul_sign(tuple: &[Subset]) -> bool {
    let mut odd_seen = 0u32;
    let mut sign = false;
    for s in tuple {
        if shifted_degree(*s) % 2 != 0 {
            if odd_seen % 2 == 1 {
                sign = !sign;
            }
            odd_seen += 1;
        }
    }
    sign
}

/// The differential of T(B⁺[1]*) dual to an A∞-structure, tabulated on
/// generators.
#[derive(Clone, Debug, PartialEq)]
pub struct DualDifferential {
    dim: usize,
    order: usize,
    on_generators: BTreeMap<Subset, CobarElement>,
    homogeneous: bool,
}

impl DualDifferential {
    pub fn new(inst: &AInftyInstance) -> Self {
        let (dim, order) = (inst.dim(), inst.order());
        let mut on_generators: BTreeMap<Subset, CobarElement> = Subset::all(dim)
            .into_iter()
            .filter(|s| !s.is_empty())
            .map(|s| (s, CobarElement::zero(dim, order)))
            .collect();
        let comps = inst.components();
        for arity in comps.arities() {
            for (tuple, value) in comps.table(arity).into_iter().flatten() {
                if tuple.iter().any(|s| s.is_empty()) {
                    continue;
                }
                let word = CobarWord::new(tuple.clone());
                let kappa = koszul_sign(tuple);
                for (s, c) in value.iter() {
                    if s.is_empty() {
                        continue;
                    }
                    // (−1)^{1−|I|} κ(J)
                    let neg = kappa ^ (s.len() % 2 == 0);
                    let c = if neg { -c } else { c.clone() };
                    on_generators
                        .get_mut(s)
                        .expect("generator")
                        .add_term(word.clone(), &c);
                }
            }
        }
        let homogeneous = on_generators
            .iter()
            .all(|(s, v)| v.iter().all(|(w, _)| w.weight() == s.len()));
        DualDifferential {
            dim,
            order,
            on_generators,
            homogeneous,
        }
    }

    /// δ₀, dual to the exterior product alone.
    pub fn classical(dim: usize, order: usize) -> Self {
        Self::new(&AInftyInstance::wedge(dim, order))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// True when δ preserves weight (no curvature or d¹ contributions).
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn on_generator(&self, s: Subset) -> &CobarElement {
        &self.on_generators[&s]
    }

    /// δ(x_{J_1}⋯x_{J_n}) = Σ_r (−1)^{deg(x_{J_1}⋯x_{J_{r−1}})} x_{J_1}⋯δ(x_{J_r})⋯x_{J_n}.
    pub fn apply_word(&self, w: &CobarWord) -> CobarElement {
        let mut out = CobarElement::zero(self.dim, self.order);
        let mut prefix_odd = false;
        for (r, g) in w.0.iter().enumerate() {
            let dg = &self.on_generators[g];
            for (mid, c) in dg.iter() {
                let mut gens = w.0[..r].to_vec();
                gens.extend_from_slice(&mid.0);
                gens.extend_from_slice(&w.0[r + 1..]);
                out.add_term(CobarWord(gens), &if prefix_odd { -c } else { c.clone() });
            }
            if (1 - g.len() as i64) % 2 != 0 {
                prefix_odd = !prefix_odd;
            }
        }
        out
    }

    pub fn apply(&self, e: &CobarElement) -> CobarElement {
        let mut out = CobarElement::zero(self.dim, self.order);
        for (w, c) in e.iter() {
            out.add_scaled(&self.apply_word(w), c);
        }
        out
    }
}

/// δ₀(x_I) for the classical cobar differential.
pub fn classical_delta(dim: usize, order: usize, gen: Subset) -> CobarElement {
    DualDifferential::classical(dim, order).on_generator(gen).clone()
}

/// δ_ħ(x_I) for the differential dual to `inst`.
pub fn deformed_delta(inst: &AInftyInstance, gen: Subset) -> CobarElement {
    DualDifferential::new(inst).on_generator(gen).clone()
}

/// The relations δ_ħ(x_ij) ∈ T(V), i < j, in index order.
pub fn relations(inst: &AInftyInstance) -> Result<Vec<((usize, usize), NCPoly)>> {
    let delta = DualDifferential::new(inst);
    let mut out = Vec::new();
    for i in 0..inst.dim() {
        for j in i + 1..inst.dim() {
            let r = delta.on_generator(Subset::from_indices(&[i, j]));
            let p = to_ncpoly(r).ok_or_else(|| {
                Error::Invalid(format!("δ(x_{{{}{}}}) leaves T(V)", i + 1, j + 1))
            })?;
            out.push(((i, j), p));
        }
    }
    Ok(out)
}

/// x_i x_j − x_j x_i − ħ Sym(π_ij), valid modulo ħ² (computed at order 1).
pub fn quadratic_first_order_relation(pi: &PoissonBivector, i: usize, j: usize) -> Result<NCPoly> {
    if !pi.is_quadratic() {
        return Err(Error::WrongClass {
            expected: "quadratic".into(),
            found: pi.class().to_string(),
        });
    }
    let d = pi.dim();
    if i >= d || j >= d {
        return Err(Error::Invalid(format!("index out of range for dimension {d}")));
    }
    let xi = NCPoly::letter(d, 1, i);
    let xj = NCPoly::letter(d, 1, j);
    let comm = &(&xi * &xj) - &(&xj * &xi);
    let sym = symmetrize(&pi.entry(i, j).with_order(1)).scale(&HSeries::hbar(1));
    Ok(&comm - &sym)
}

/// All quadratic first-order relations, i < j.
pub fn quadratic_relations(pi: &PoissonBivector) -> Result<Vec<((usize, usize), NCPoly)>> {
    let mut out = Vec::new();
    for i in 0..pi.dim() {
        for j in i + 1..pi.dim() {
            out.push(((i, j), quadratic_first_order_relation(pi, i, j)?));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaSquaredFailure {
    pub generator: String,
    #[serde(skip)]
    pub subset: Subset,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaSquaredReport {
    pub max_weight: usize,
    pub generators_checked: usize,
    pub failures: Vec<DeltaSquaredFailure>,
}

impl DeltaSquaredReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates δ² on every generator of weight ≤ max_weight.
pub fn check_delta_squared(delta: &DualDifferential, max_weight: usize) -> DeltaSquaredReport {
    let names = Names::standard(delta.dim);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (s, d1) in &delta.on_generators {
        if s.len() > max_weight {
            continue;
        }
        checked += 1;
        let d2 = delta.apply(d1);
        if !d2.is_zero() {
            failures.push(DeltaSquaredFailure {
                generator: generator_name(*s, &names),
                subset: *s,
                value: d2.render(&names),
            });
        }
    }
    DeltaSquaredReport {
        max_weight,
        generators_checked: checked,
        failures,
    }
}

/// Words of the given cohomological degree and weight: n = weight + degree
/// factors with sizes summing to the weight.
pub fn words(dim: usize, degree: i64, weight: usize) -> Vec<CobarWord> {
    let n = weight as i64 + degree;
    if n < 0 || (n == 0 && weight > 0) {
        return Vec::new();
    }
    let n = n as usize;
    let by_size: Vec<Vec<Subset>> = (0..=dim)
        .map(|k| Subset::all(dim).into_iter().filter(|s| s.len() == k).collect())
        .collect();
    let mut out = Vec::new();
    fn rec(
        by_size: &[Vec<Subset>],
        n: usize,
        left: usize,
        cur: &mut Vec<Subset>,
        out: &mut Vec<CobarWord>,
    ) {
        if cur.len() == n {
            if left == 0 {
                out.push(CobarWord(cur.clone()));
            }
            return;
        }
        let slots = n - cur.len() - 1;
        for size in 1..by_size.len().min(left + 1) {
            if left - size < slots {
                break;
            }
            for s in &by_size[size] {
                cur.push(*s);
                rec(by_size, n, left - size, cur, out);
                cur.pop();
            }
        }
    }
    rec(&by_size, n, weight, &mut Vec::new(), &mut out);
    out
}

/// Bound on the number of rational coordinates of a cochain space.
pub const MAX_COCHAIN_DIM: usize = 60_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologySlot {
    pub degree: i64,
    pub weight: usize,
    /// Dimension over ℚ of the cochain space (N+1 coordinates per word).
    pub cochains: usize,
    /// Rank of δ out of this slot.
    pub rank_out: usize,
    /// Rank of δ into this slot.
    pub rank_in: usize,
    /// cochains − rank_out − rank_in; negative only if δ² ≠ 0.
    pub cohomology: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyTable {
    pub dim: usize,
    pub order: usize,
    /// Slots are weight-w pieces when δ preserves weight, otherwise the
    /// filtration pieces of weight ≤ w.
    pub filtered: bool,
    pub slots: Vec<CohomologySlot>,
}

impl CohomologyTable {
    pub fn get(&self, degree: i64, weight: usize) -> Option<&CohomologySlot> {
        self.slots
            .iter()
            .find(|s| s.degree == degree && s.weight == weight)
    }
}

struct Space {
    index: BTreeMap<CobarWord, usize>,
}

impl Space {
    fn new(dim: usize, degree: i64, weights: impl Iterator<Item = usize>) -> Self {
        let mut index = BTreeMap::new();
        for w in weights {
            for word in words(dim, degree, w) {
                let k = index.len();
                index.insert(word, k);
            }
        }
        Space { index }
    }

    fn len(&self) -> usize {
        self.index.len()
    }
}

/// Rank over ℚ of δ from `src` to `dst`, each HSeries flattened into N+1
/// coordinates (basis word ⊗ ħ^m).
fn delta_rank(delta: &DualDifferential, src: &Space, dst: &Space) -> Result<usize> {
    let n1 = delta.order + 1;
    let mut ech = Echelon::new();
    for word in src.index.keys() {
        let image = delta.apply_word(word);
        for m in 0..n1 {
            let mut row = SparseRow::new();
            for (w, c) in image.iter() {
                let col = *dst.index.get(w).ok_or_else(|| {
                    Error::Invalid(format!("δ leaves the expected slot at {w:?}"))
                })?;
                for (k, q) in c.terms() {
                    if k + m < n1 {
                        row.insert(col * n1 + k + m, q.clone());
                    }
                }
            }
            ech.insert(row);
        }
    }
    Ok(ech.rank())
}

/// Cohomology dimensions over ℚ for degrees in `degrees` and weights
/// 0..=max_weight, by exact rank computations.
pub fn cohomology_ranks(
    delta: &DualDifferential,
    degrees: std::ops::RangeInclusive<i64>,
    max_weight: usize,
) -> Result<CohomologyTable> {
    let filtered = !delta.homogeneous;
    let n1 = delta.order + 1;
    let mut slots = Vec::new();
    for weight in 0..=max_weight {
        let space = |k: i64| {
            if filtered {
                Space::new(delta.dim, k, 0..=weight)
            } else {
                Space::new(delta.dim, k, weight..=weight)
            }
        };
        for degree in degrees.clone() {
            let here = space(degree);
            let below = space(degree - 1);
            let above = space(degree + 1);
            let largest = [&here, &below, &above].iter().map(|s| s.len()).max().unwrap_or(0) * n1;
            if largest > MAX_COCHAIN_DIM {
                return Err(Error::Infeasible(format!(
                    "cochain space of dimension {largest} at degree {degree}, weight {weight} exceeds {MAX_COCHAIN_DIM}"
                )));
            }
            let rank_out = delta_rank(delta, &here, &above)?;
            let rank_in = delta_rank(delta, &below, &here)?;
            let cochains = here.len() * n1;
            slots.push(CohomologySlot {
                degree,
                weight,
                cochains,
                rank_out,
                rank_in,
                cohomology: cochains as i64 - rank_out as i64 - rank_in as i64,
            });
        }
    }
    Ok(CohomologyTable {
        dim: delta.dim,
        order: delta.order,
        filtered,
        slots,
    })
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = if self.filtered { "weight<=" } else { "weight" };
        writeln!(f, "{:>7} {:>9} {:>9} {:>7} {:>7} {:>5}", "degree", label, "cochains", "rk_in", "rk_out", "H")?;
        for s in &self.slots {
            writeln!(
                f,
                "{:>7} {:>9} {:>9} {:>7} {:>7} {:>5}",
                s.degree, s.weight, s.cochains, s.rank_in, s.rank_out, s.cohomology
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{build_constant_instance, build_linear_instance};
    use crate::catalog;
    use crate::expr::parse_nc;

    fn e(ix: &[usize]) -> Subset {
        Subset::from_indices(&ix.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    #[test]
    fn classical_low_weight() {
        assert!(classical_delta(2, 0, e(&[1])).is_zero());
        let d = classical_delta(2, 0, e(&[1, 2]));
        assert_eq!(d.to_string(), "x1*x2 - x2*x1");
        let d3 = classical_delta(3, 0, e(&[1, 2, 3]));
        assert_eq!(d3.len(), 6);
        assert_eq!(
            d3.to_string(),
            "-x1*x_{23} + x2*x_{13} - x3*x_{12} + x_{12}*x3 - x_{13}*x2 + x_{23}*x1"
        );
    }

    #[test]
    fn weyl_relation() {
        let inst = build_constant_instance(&catalog::weyl(1).unwrap(), 4).unwrap();
        let rels = relations(&inst).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].1.to_string(), "x1*x2 - x2*x1 - h");
    }

    #[test]
    fn heisenberg_relation() {
        let inst = build_linear_instance(&catalog::heisenberg(), 4).unwrap();
        let rels = relations(&inst).unwrap();
        assert_eq!(rels[0].1.to_string(), "x1*x2 - x2*x1 - h*x3");
        assert_eq!(rels[1].1.to_string(), "x1*x3 - x3*x1");
    }

    #[test]
    fn delta_squared_vanishes() {
        for d in 1..=4 {
            assert!(check_delta_squared(&DualDifferential::classical(d, 0), 4).passed());
        }
        let inst = build_linear_instance(&catalog::sl2(), 2).unwrap();
        assert!(check_delta_squared(&DualDifferential::new(&inst), 3).passed());
    }

    #[test]
    fn singletons_are_cycles() {
        let inst = build_linear_instance(&catalog::sl2(), 2).unwrap();
        let delta = DualDifferential::new(&inst);
        for i in 0..3 {
            assert!(delta.on_generator(Subset::singleton(i)).is_zero());
        }
    }

    #[test]
    fn quadratic_relation_shapes() {
        let names = Names::standard(2);
        let r = quadratic_first_order_relation(&catalog::quantum_plane(), 0, 1).unwrap();
        assert_eq!(r, parse_nc("x1*x2 - x2*x1 - (h/2)*(x1*x2 + x2*x1)", &names, 1).unwrap());
        let r = quadratic_first_order_relation(&catalog::x1_squared(), 0, 1).unwrap();
        assert_eq!(r, parse_nc("x1*x2 - x2*x1 - h*x1^2", &names, 1).unwrap());
        assert!(quadratic_first_order_relation(&catalog::heisenberg(), 0, 1).is_err());
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(words(2, 0, 3).len(), 8);
        assert_eq!(words(2, -1, 2).len(), 1);
        assert_eq!(words(3, -1, 3).len(), 2 * 9);
        assert_eq!(words(3, -2, 3).len(), 1);
        assert_eq!(words(2, 0, 0).len(), 1);
        assert!(words(2, 1, 3).is_empty());
    }

    #[test]
    fn koszul_ranks_d2() {
        let t = cohomology_ranks(&DualDifferential::classical(2, 0), -1..=0, 4).unwrap();
        assert!(!t.filtered);
        for w in 0..=4 {
            assert_eq!(t.get(-1, w).unwrap().cohomology, 0);
            assert_eq!(t.get(0, w).unwrap().cohomology, w as i64 + 1);
        }
    }

    #[test]
    fn deformed_ranks_constant() {
        let inst = build_constant_instance(&catalog::weyl(1).unwrap(), 1).unwrap();
        let t = cohomology_ranks(&DualDifferential::new(&inst), -1..=0, 4).unwrap();
        assert!(t.filtered);
        let mut cumulative = 0;
        for w in 0..=4 {
            cumulative += w + 1;
            assert_eq!(t.get(-1, w).unwrap().cohomology, 0);
            assert_eq!(t.get(0, w).unwrap().cohomology, 2 * cumulative as i64);
        }
    }
}
