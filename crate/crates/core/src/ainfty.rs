//! Curved A∞-structures on B = ∧(V*) given by Taylor components
//! d^k: B[1]^{⊗k} → B[1].
//!
//! Each component is stored densely as a table from wedge-basis tuples to
//! its (nonzero) value; missing entries are zero. An element e_I ∈ ∧^{|I|}
//! has shifted degree |I| − 1, and every d^k has shifted degree +1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::poly::Basis;
use crate::algebra::{ExtElement, HSeries, Names, PoissonBivector, Subset};
use crate::error::{Error, Result};
use crate::serial::{terms_from_json, terms_to_json, TermJson};

/// A tuple of wedge-basis elements (the empty subset is the unit 1).
pub type BasisTuple = Vec<Subset>;

/// Shifted degree of e_I in B[1].
pub fn shifted_degree(s: Subset) -> i64 {
    s.len() as i64 - 1
}

fn render_tuple(t: &[Subset]) -> String {
    if t.is_empty() {
        return "()".to_string();
    }
    let parts: Vec<String> = t
        .iter()
        .map(|s| {
            if s.is_empty() {
                "1".to_string()
            } else {
                s.render(&Names::standard(0))
            }
        })
        .collect();
    format!("({})", parts.join(" | "))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaylorComponents {
    dim: usize,
    order: usize,
    tables: BTreeMap<usize, BTreeMap<BasisTuple, ExtElement>>,
}

impl TaylorComponents {
    pub fn new(dim: usize, order: usize) -> Self {
        TaylorComponents {
            dim,
            order,
            tables: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Arities with at least one nonzero entry.
    pub fn arities(&self) -> Vec<usize> {
        self.tables
            .iter()
            .filter(|(_, t)| !t.is_empty())
            .map(|(k, _)| *k)
            .collect()
    }

    pub fn max_arity(&self) -> usize {
        self.arities().into_iter().max().unwrap_or(0)
    }

    pub fn table(&self, arity: usize) -> Option<&BTreeMap<BasisTuple, ExtElement>> {
        self.tables.get(&arity)
    }

    /// Sets d^k(inputs) = value, checking that the value has the degree
    /// forced by d^k having shifted degree +1.
    pub fn set(&mut self, inputs: BasisTuple, value: ExtElement) -> Result<()> {
        if value.dim() != self.dim || value.order() != self.order {
            return Err(Error::Invalid(format!(
                "component value lives in dim {} / order {}, expected {} / {}",
                value.dim(),
                value.order(),
                self.dim,
                self.order
            )));
        }
        if let Some(bad) = inputs.iter().find(|s| s.mask() >> self.dim != 0) {
            return Err(Error::Invalid(format!(
                "input {} out of range for dimension {}",
                bad.render(&Names::standard(0)),
                self.dim
            )));
        }
        let expected = inputs.iter().map(|s| shifted_degree(*s)).sum::<i64>() + 2;
        if let Some((s, _)) = value.iter().find(|(s, _)| s.len() as i64 != expected) {
            return Err(Error::Invalid(format!(
                "d^{} on {} must land in wedge degree {expected}, got {}",
                inputs.len(),
                render_tuple(&inputs),
                s.len()
            )));
        }
        let arity = inputs.len();
        if value.is_zero() {
            if let Some(table) = self.tables.get_mut(&arity) {
                table.remove(&inputs);
                if table.is_empty() {
                    self.tables.remove(&arity);
                }
            }
        } else {
            self.tables.entry(arity).or_default().insert(inputs, value);
        }
        Ok(())
    }

    pub fn get(&self, inputs: &[Subset]) -> Option<&ExtElement> {
        self.tables.get(&inputs.len()).and_then(|t| t.get(inputs))
    }

    /// The curvature d^0(1), if nonzero.
    pub fn curvature(&self) -> Option<&ExtElement> {
        self.get(&[])
    }

    fn zero(&self) -> ExtElement {
        ExtElement::zero(self.dim, self.order)
    }

    /// Evaluates d^k multilinearly on arbitrary elements.
    pub fn apply(&self, args: &[&ExtElement]) -> ExtElement {
        let mut out = self.zero();
        let table = match self.tables.get(&args.len()) {
            Some(t) if !t.is_empty() => t,
            _ => return out,
        };
        let mut tuple = Vec::with_capacity(args.len());
        let coeff = HSeries::one(self.order);
        self.apply_rec(table, args, &mut tuple, coeff, &mut out);
        out
    }

    fn apply_rec(
        &self,
        table: &BTreeMap<BasisTuple, ExtElement>,
        args: &[&ExtElement],
        tuple: &mut BasisTuple,
        coeff: HSeries,
        out: &mut ExtElement,
    ) {
        if tuple.len() == args.len() {
            if let Some(v) = table.get(tuple) {
                out.add_scaled(v, &coeff);
            }
            return;
        }
        for (s, c) in args[tuple.len()].iter() {
            tuple.push(*s);
            self.apply_rec(table, args, tuple, &coeff * c, out);
            tuple.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceLabel {
    Constant,
    Linear,
    Custom,
}

/// A unital curved A∞-algebra structure on ∧(V*)[ħ].
#[derive(Clone, Debug, PartialEq)]
pub struct AInftyInstance {
    components: TaylorComponents,
    label: InstanceLabel,
    verified: bool,
}

/// The graded-commutative product in the shifted convention:
/// d²(b_1 | b_2) = (−1)^{|b_1|} b_1 ∧ b_2.
fn wedge_components(dim: usize, order: usize) -> TaylorComponents {
    let mut c = TaylorComponents::new(dim, order);
    for a in Subset::all(dim) {
        for b in Subset::all(dim) {
            if let Some(neg) = a.wedge_sign(b) {
                let sign = neg ^ (a.len() % 2 == 1);
                let one = HSeries::one(order);
                let coeff = if sign { -one } else { one };
                let v = ExtElement::term(dim, Subset::from_mask(a.mask() | b.mask()), coeff);
                c.set(vec![a, b], v).expect("wedge component");
            }
        }
    }
    c
}

impl AInftyInstance {
    /// The undeformed exterior algebra (only d² nonzero).
    pub fn wedge(dim: usize, order: usize) -> Self {
        AInftyInstance {
            components: wedge_components(dim, order),
            label: InstanceLabel::Custom,
            verified: true,
        }
    }

    /// Accepts arbitrary components; the instance is flagged unverified until
    /// [`AInftyInstance::mark_verified`] is given a clean Stasheff report.
    pub fn custom(components: TaylorComponents) -> Self {
        AInftyInstance {
            components,
            label: InstanceLabel::Custom,
            verified: false,
        }
    }

    pub fn components(&self) -> &TaylorComponents {
        &self.components
    }

    pub fn label(&self) -> InstanceLabel {
        self.label
    }

    pub fn dim(&self) -> usize {
        self.components.dim
    }

    pub fn order(&self) -> usize {
        self.components.order
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Flat iff the curvature d⁰ vanishes.
    pub fn is_flat(&self) -> bool {
        self.components.curvature().is_none()
    }

    pub fn mark_verified(&mut self, report: &StasheffReport) -> bool {
        self.verified = report.passed();
        self.verified
    }

    /// Replaces one table entry; used to seed defects in mutation tests.
    pub fn with_entry(mut self, inputs: BasisTuple, value: ExtElement) -> Result<Self> {
        self.components.set(inputs, value)?;
        self.verified = false;
        self.label = InstanceLabel::Custom;
        Ok(self)
    }

    /// Negates d^k on one basis tuple.
    pub fn with_flipped_sign(self, inputs: BasisTuple) -> Result<Self> {
        let v = self
            .components
            .get(&inputs)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("no entry at {}", render_tuple(&inputs))))?;
        self.with_entry(inputs, -v)
    }

    pub fn to_json(&self) -> ComponentsFile {
        let mut components = Vec::new();
        for (arity, table) in &self.components.tables {
            for (inputs, value) in table {
                components.push(ComponentEntry {
                    arity: *arity,
                    inputs: inputs
                        .iter()
                        .map(|s| s.indices().iter().map(|i| i + 1).collect())
                        .collect(),
                    output: terms_to_json(value),
                });
            }
        }
        ComponentsFile {
            dim: self.dim(),
            order: self.order(),
            components,
        }
    }

    pub fn from_json(file: &ComponentsFile) -> Result<Self> {
        let mut c = TaylorComponents::new(file.dim, file.order);
        for entry in &file.components {
            if entry.inputs.len() != entry.arity {
                return Err(Error::Invalid(format!(
                    "component of arity {} lists {} inputs",
                    entry.arity,
                    entry.inputs.len()
                )));
            }
            let inputs = entry
                .inputs
                .iter()
                .map(|ix| {
                    if ix.is_empty() {
                        Ok(Subset::EMPTY)
                    } else {
                        <Subset as crate::serial::BasisJson>::from_indices(ix, file.dim)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let value = terms_from_json(&entry.output, file.dim, file.order)?;
            if c.get(&inputs).is_some() {
                return Err(Error::Invalid(format!(
                    "duplicate component entry at {}",
                    render_tuple(&inputs)
                )));
            }
            c.set(inputs, value)?;
        }
        Ok(Self::custom(c))
    }
}

/// JSON schema for Taylor components: one entry per nonzero basis value.
/// Inputs are 1-based index sets (`[]` is the unit); outputs are term lists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentsFile {
    pub dim: usize,
    pub order: usize,
    pub components: Vec<ComponentEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub arity: usize,
    pub inputs: Vec<Vec<usize>>,
    pub output: Vec<TermJson>,
}

/// Constant π: d⁰(1) = ħπ = ħ Σ_{i<j} π_ij e_ij and d² the shifted wedge
/// product; every other component vanishes.
pub fn build_constant_instance(pi: &PoissonBivector, order: usize) -> Result<AInftyInstance> {
    if !pi.is_constant() {
        return Err(Error::WrongClass {
            expected: "constant".into(),
            found: pi.class().to_string(),
        });
    }
    let dim = pi.dim();
    let mut components = wedge_components(dim, order);
    let mut curvature = ExtElement::zero(dim, order);
    for i in 0..dim {
        for j in i + 1..dim {
            let c = pi.constant_entry(i, j);
            curvature.add_term(
                Subset::from_indices(&[i, j]),
                &HSeries::monomial(c, 1, order),
            );
        }
    }
    components.set(vec![], curvature)?;
    Ok(AInftyInstance {
        components,
        label: InstanceLabel::Constant,
        verified: true,
    })
}

/// The degree-one derivation of ∧(V*) with d¹(e_k) = ħ Σ_{i<j} f_ij^k e_ij,
/// i.e. the Chevalley–Eilenberg differential of the ħ-rescaled bracket (with
/// the sign that reproduces the relation x_i x_j − x_j x_i − ħ Σ_k f_ij^k x_k).
pub fn chevalley_eilenberg(pi: &PoissonBivector, order: usize) -> BTreeMap<Subset, ExtElement> {
    let dim = pi.dim();
    let mut on_generators = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut v = ExtElement::zero(dim, order);
        for i in 0..dim {
            for j in i + 1..dim {
                let f = pi.structure_constant(i, j, k);
                v.add_term(Subset::from_indices(&[i, j]), &HSeries::monomial(f, 1, order));
            }
        }
        on_generators.push(v);
    }
    let mut out = BTreeMap::new();
    for s in Subset::all(dim) {
        out.insert(s, derivation_on(s, &on_generators, dim, order));
    }
    out
}

/// Extends values on generators to e_I as a graded derivation of degree +1:
/// D(e_i ∧ e_rest) = D(e_i) ∧ e_rest − e_i ∧ D(e_rest).
fn derivation_on(s: Subset, gens: &[ExtElement], dim: usize, order: usize) -> ExtElement {
    let idx = s.indices();
    let Some((&first, rest)) = idx.split_first() else {
        return ExtElement::zero(dim, order);
    };
    let rest = Subset::from_indices(rest);
    let e_first = ExtElement::basis(dim, order, Subset::singleton(first));
    let e_rest = ExtElement::basis(dim, order, rest);
    let a = &gens[first] * &e_rest;
    let b = &e_first * &derivation_on(rest, gens, dim, order);
    &a - &b
}

/// Linear π: d¹ = Chevalley–Eilenberg differential, d² the shifted wedge.
pub fn build_linear_instance(pi: &PoissonBivector, order: usize) -> Result<AInftyInstance> {
    if !pi.is_linear() {
        return Err(Error::WrongClass {
            expected: "linear".into(),
            found: pi.class().to_string(),
        });
    }
    let mut components = wedge_components(pi.dim(), order);
    for (s, v) in chevalley_eilenberg(pi, order) {
        if !s.is_empty() {
            components.set(vec![s], v)?;
        }
    }
    Ok(AInftyInstance {
        components,
        label: InstanceLabel::Linear,
        verified: pi.is_poisson(),
    })
}

/// Builds the explicit instance for a constant or linear bivector.
pub fn build_instance(pi: &PoissonBivector, order: usize) -> Result<AInftyInstance> {
    if pi.is_constant() {
        build_constant_instance(pi, order)
    } else if pi.is_linear() {
        build_linear_instance(pi, order)
    } else {
        Err(Error::WrongClass {
            expected: "constant or linear".into(),
            found: pi.class().to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub arity: usize,
    pub tuple: String,
    #[serde(skip)]
    pub inputs: BasisTuple,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StasheffReport {
    pub max_n: usize,
    pub tuples_checked: usize,
    pub violations: Vec<Violation>,
}

impl StasheffReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Feasibility bound on the number of basis tuples a check may visit.
pub const MAX_TUPLES: usize = 2_000_000;

/// The n-th Stasheff expression Σ_{j+k+l=n} ± d^{j+1+l}(id^j ⊗ d^k ⊗ id^l)
/// evaluated on a basis tuple, with Koszul sign (−1)^{Σ_{r≤j} shifted |b_r|}.
pub fn stasheff_expression(inst: &AInftyInstance, tuple: &[Subset]) -> ExtElement {
    let comps = &inst.components;
    let n = tuple.len();
    let arities = comps.arities();
    let mut out = comps.zero();
    for &k in &arities {
        if k > n || !arities.contains(&(n - k + 1)) {
            continue;
        }
        let mut sign = false;
        for j in 0..=n - k {
            if j > 0 && shifted_degree(tuple[j - 1]) % 2 != 0 {
                sign = !sign;
            }
            let Some(inner) = comps.get(&tuple[j..j + k]) else {
                continue;
            };
            let mut args: Vec<ExtElement> = Vec::with_capacity(n - k + 1);
            for s in &tuple[..j] {
                args.push(ExtElement::basis(comps.dim, comps.order, *s));
            }
            args.push(inner.clone());
            for s in &tuple[j + k..] {
                args.push(ExtElement::basis(comps.dim, comps.order, *s));
            }
            let refs: Vec<&ExtElement> = args.iter().collect();
            let v = comps.apply(&refs);
            if sign {
                out = &out - &v;
            } else {
                out = &out + &v;
            }
        }
    }
    out
}

/// Checks all Stasheff relations for n = 0..=max_n on every tuple of
/// wedge-basis elements (unit included).
pub fn check_stasheff(inst: &AInftyInstance, max_n: usize) -> Result<StasheffReport> {
    let basis = Subset::all(inst.dim());
    let total: usize = (0..=max_n).map(|n| basis.len().pow(n as u32)).sum();
    if total > MAX_TUPLES {
        return Err(Error::Infeasible(format!(
            "Stasheff check up to arity {max_n} in dimension {} visits {total} tuples (bound {MAX_TUPLES})",
            inst.dim()
        )));
    }
    let mut violations = Vec::new();
    let mut checked = 0;
    for n in 0..=max_n {
        for_each_tuple(&basis, n, &mut |t| {
            checked += 1;
            let v = stasheff_expression(inst, t);
            if !v.is_zero() {
                violations.push(Violation {
                    arity: n,
                    tuple: render_tuple(t),
                    inputs: t.to_vec(),
                    value: v.to_string(),
                });
            }
        });
    }
    Ok(StasheffReport {
        max_n,
        tuples_checked: checked,
        violations,
    })
}

fn for_each_tuple(basis: &[Subset], n: usize, f: &mut impl FnMut(&[Subset])) {
    fn rec(basis: &[Subset], n: usize, cur: &mut Vec<Subset>, f: &mut impl FnMut(&[Subset])) {
        if cur.len() == n {
            f(cur);
            return;
        }
        for s in basis {
            cur.push(*s);
            rec(basis, n, cur, f);
            cur.pop();
        }
    }
    rec(basis, n, &mut Vec::with_capacity(n), f);
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnitalityReport {
    pub violations: Vec<Violation>,
}

impl UnitalityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// d²(s1, e_I) = e_I, d²(e_I, s1) = (−1)^{|I|} e_I, and every other component
/// vanishes when an argument is s1.
pub fn check_unitality(inst: &AInftyInstance) -> UnitalityReport {
    let comps = &inst.components;
    let (dim, order) = (comps.dim, comps.order);
    let mut violations = Vec::new();
    let mut report = |arity: usize, t: &[Subset], got: ExtElement, want: ExtElement| {
        let diff = &got - &want;
        if !diff.is_zero() {
            violations.push(Violation {
                arity,
                tuple: render_tuple(t),
                inputs: t.to_vec(),
                value: diff.to_string(),
            });
        }
    };
    for s in Subset::all(dim) {
        let b = ExtElement::basis(dim, order, s);
        let left = comps.get(&[Subset::EMPTY, s]).cloned().unwrap_or_else(|| comps.zero());
        report(2, &[Subset::EMPTY, s], left, b.clone());
        let right = comps.get(&[s, Subset::EMPTY]).cloned().unwrap_or_else(|| comps.zero());
        let want = if s.len() % 2 == 1 { -&b } else { b };
        report(2, &[s, Subset::EMPTY], right, want);
    }
    for (arity, table) in &comps.tables {
        if *arity == 2 {
            continue;
        }
        for (t, v) in table {
            if t.contains(&Subset::EMPTY) {
                report(*arity, t, v.clone(), comps.zero());
            }
        }
    }
    UnitalityReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hseries::integer;
    use crate::catalog;

    fn e(ix: &[usize]) -> Subset {
        Subset::from_indices(&ix.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    #[test]
    fn constant_instance_components() {
        let inst = build_constant_instance(&catalog::weyl(1).unwrap(), 4).unwrap();
        assert_eq!(inst.components().arities(), vec![0, 2]);
        assert_eq!(
            inst.components().curvature().unwrap(),
            &ExtElement::term(2, e(&[1, 2]), HSeries::hbar(4))
        );
        assert_eq!(
            inst.components().get(&[e(&[1]), e(&[2])]).unwrap(),
            &ExtElement::term(2, e(&[1, 2]), -HSeries::one(4))
        );
        assert!(inst.components().get(&[e(&[1]), e(&[1])]).is_none());
        assert!(!inst.is_flat());
    }

    #[test]
    fn zero_constant_instance_is_flat() {
        let inst = build_constant_instance(&catalog::abelian(2), 2).unwrap();
        assert!(inst.is_flat());
    }

    #[test]
    fn heisenberg_ce_differential() {
        let inst = build_linear_instance(&catalog::heisenberg(), 4).unwrap();
        let c = inst.components();
        assert_eq!(
            c.get(&[e(&[3])]).unwrap(),
            &ExtElement::term(3, e(&[1, 2]), HSeries::hbar(4))
        );
        assert!(c.get(&[e(&[1])]).is_none());
        assert!(c.get(&[e(&[2])]).is_none());
        assert!(inst.is_flat());
    }

    #[test]
    fn abelian_linear_instance_is_the_wedge_dga() {
        let inst = build_linear_instance(&catalog::abelian(3), 2).unwrap();
        assert_eq!(inst.components().arities(), vec![2]);
        assert_eq!(inst.components(), AInftyInstance::wedge(3, 2).components());
    }

    #[test]
    fn ce_squares_to_zero_iff_jacobi() {
        for (pi, jacobi) in [
            (catalog::sl2(), true),
            (catalog::heisenberg(), true),
            (catalog::broken_jacobi(), false),
        ] {
            let d = chevalley_eilenberg(&pi, 4);
            let mut all_zero = true;
            for v in d.values() {
                let mut dd = ExtElement::zero(3, 4);
                for (s, c) in v.iter() {
                    dd.add_scaled(&d[s], c);
                }
                all_zero &= dd.is_zero();
            }
            assert_eq!(all_zero, jacobi);
            assert_eq!(pi.is_poisson(), jacobi);
        }
    }

    #[test]
    fn wrong_class_is_rejected() {
        assert!(build_constant_instance(&catalog::heisenberg(), 2).is_err());
        assert!(build_linear_instance(&catalog::quantum_plane(), 2).is_err());
    }

    #[test]
    fn stasheff_small_cases() {
        let inst = build_constant_instance(&catalog::weyl(1).unwrap(), 4).unwrap();
        assert!(check_stasheff(&inst, 3).unwrap().passed());
        let inst = build_linear_instance(&catalog::heisenberg(), 2).unwrap();
        assert!(check_stasheff(&inst, 3).unwrap().passed());
    }

    #[test]
    fn corrupted_ce_entry_breaks_leibniz() {
        let inst = build_linear_instance(&catalog::sl2(), 2).unwrap();
        // an extra constant in d¹(e_1) alone, not propagated to ∧²
        let mut v = inst.components().get(&[e(&[1])]).unwrap().clone();
        v.add_term(e(&[1, 2]), &HSeries::hbar(2));
        let bad = inst.with_entry(vec![e(&[1])], v).unwrap();
        let report = check_stasheff(&bad, 3).unwrap();
        assert!(!report.passed());
        let first = report.violations.iter().map(|v| v.arity).min().unwrap();
        assert_eq!(first, 2);
    }

    #[test]
    fn unitality() {
        let inst = build_constant_instance(&catalog::weyl(1).unwrap(), 2).unwrap();
        assert!(check_unitality(&inst).passed());
        let lin = build_linear_instance(&catalog::sl2(), 2).unwrap();
        assert!(check_unitality(&lin).passed());
        assert!(lin.components().get(&[Subset::EMPTY]).is_none());
        let right = inst.components().get(&[e(&[1]), Subset::EMPTY]).unwrap();
        assert_eq!(right, &ExtElement::term(2, e(&[1]), -HSeries::one(2)));
        let bad = inst.with_flipped_sign(vec![Subset::EMPTY, e(&[2])]).unwrap();
        assert!(!check_unitality(&bad).passed());
    }

    #[test]
    fn set_rejects_wrong_degree() {
        let mut c = TaylorComponents::new(2, 1);
        let v = ExtElement::term(2, e(&[1]), HSeries::one(1));
        assert!(c.set(vec![e(&[1]), e(&[2])], v).is_err());
        let v = ExtElement::term(2, e(&[1, 2]), HSeries::constant(integer(3), 1));
        assert!(c.set(vec![], v).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let inst = build_linear_instance(&catalog::heisenberg(), 2).unwrap();
        let text = serde_json::to_string(&inst.to_json()).unwrap();
        let back: ComponentsFile = serde_json::from_str(&text).unwrap();
        let custom = AInftyInstance::from_json(&back).unwrap();
        assert_eq!(custom.components(), inst.components());
        assert!(!custom.is_verified());
        let mut custom = custom;
        let report = check_stasheff(&custom, 2).unwrap();
        assert!(custom.mark_verified(&report));
    }
}
