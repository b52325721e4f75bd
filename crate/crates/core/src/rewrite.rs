//! Rewriting presentation of T(V)[ħ]/I: oriented relations under deglex with
//! x_1 < … < x_d, completion over overlap ambiguities, normal forms and
//! Hilbert counts of irreducible words.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::monomial::binomial;
use crate::algebra::{HSeries, NCPoly, NCWord, Names};
use crate::error::{Error, Result};
use crate::serial::{terms_from_json, terms_to_json, BasisJson, TermJson};

pub const DEFAULT_DEGREE_BOUND: usize = 8;
pub const DEFAULT_RULE_BUDGET: usize = 500;

/// `lhs → rhs` with every word of `rhs` smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: NCWord,
    pub rhs: NCPoly,
}

impl RewriteRule {
    /// The relation `lhs − rhs` this rule encodes.
    pub fn relation(&self) -> NCPoly {
        &NCPoly::monomial(self.rhs.dim(), self.rhs.order(), self.lhs.clone()) - &self.rhs
    }

    pub fn render(&self, names: &Names) -> String {
        format!(
            "{} -> {}",
            NCPoly::monomial(self.rhs.dim(), self.rhs.order(), self.lhs.clone()).render(names),
            self.rhs.render(names)
        )
    }
}

/// Orients a relation: the largest word, with its coefficient normalized to
/// one. The leading coefficient must be a unit of ℚ[ħ]/ħ^{N+1}.
pub fn orient(rel: &NCPoly) -> Result<Option<RewriteRule>> {
    let Some((lw, lc)) = rel.leading() else {
        return Ok(None);
    };
    let inv = lc.inverse().ok_or_else(|| Error::NonUnitLeading {
        relation: rel.to_string(),
        coeff: lc.to_string(),
    })?;
    let lhs = lw.clone();
    let mut rhs = -&rel.scale(&inv);
    rhs.add_term(lhs.clone(), &HSeries::one(rel.order()));
    Ok(Some(RewriteRule { lhs, rhs }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Raw,
    Completed,
    Nonconfluent,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Raw => "raw",
            Status::Completed => "completed",
            Status::Nonconfluent => "nonconfluent",
        })
    }
}

/// An unresolvable ambiguity: the overlap word and the irreducible remainder
/// of its two reductions.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub overlap: NCWord,
    pub remainder: NCPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RewriteSystem {
    dim: usize,
    order: usize,
    degree_bound: usize,
    rules: BTreeMap<NCWord, NCPoly>,
    status: Status,
    witness: Option<Witness>,
    added_rules: usize,
}

/// Orients each relation, inter-reducing against the rules already built.
pub fn build_system(dim: usize, order: usize, relations: &[NCPoly], degree_bound: usize) -> Result<RewriteSystem> {
    let mut sys = RewriteSystem {
        dim,
        order,
        degree_bound,
        rules: BTreeMap::new(),
        status: Status::Raw,
        witness: None,
        added_rules: 0,
    };
    for rel in relations {
        if rel.dim() != dim {
            return Err(Error::DimensionMismatch(rel.dim(), dim));
        }
        if rel.order() != order {
            return Err(Error::TruncationMismatch(rel.order(), order));
        }
        if let Some(deg) = rel.max_degree().filter(|&d| d > degree_bound) {
            return Err(Error::DegreeOverflow {
                degree: deg,
                bound: degree_bound,
            });
        }
    }
    let mut pending: VecDeque<NCPoly> = relations.iter().cloned().collect();
    while let Some(rel) = pending.pop_front() {
        let r = sys.reduce_any(&rel);
        if let Some(rule) = orient(&r)? {
            pending.extend(sys.insert_rule(rule));
        }
    }
    Ok(sys)
}

impl RewriteSystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    /// Rules added by completion beyond the oriented input relations.
    pub fn added_rules(&self) -> usize {
        self.added_rules
    }

    pub fn rules(&self) -> Vec<RewriteRule> {
        self.rules
            .iter()
            .map(|(l, r)| RewriteRule {
                lhs: l.clone(),
                rhs: r.clone(),
            })
            .collect()
    }

    pub fn rule(&self, lhs: &NCWord) -> Option<&NCPoly> {
        self.rules.get(lhs)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Replaces the right-hand side of one rule (the lhs must exist); the
    /// result is marked raw. Used to seed defects in mutation tests.
    pub fn with_rule(&self, lhs: &NCWord, rhs: NCPoly) -> Result<Self> {
        if !self.rules.contains_key(lhs) {
            return Err(Error::Invalid(format!("no rule with lhs {lhs:?}")));
        }
        let mut s = self.clone();
        s.rules.insert(lhs.clone(), rhs);
        s.status = Status::Raw;
        Ok(s)
    }

    /// Drops one rule; the result is marked raw.
    pub fn without_rule(&self, lhs: &NCWord) -> Self {
        let mut s = self.clone();
        s.rules.remove(lhs);
        s.status = Status::Raw;
        s
    }

    /// Adds a rule, returning the relations of rules it made reducible.
    fn insert_rule(&mut self, rule: RewriteRule) -> Vec<NCPoly> {
        let mut displaced = Vec::new();
        let stale: Vec<NCWord> = self
            .rules
            .keys()
            .filter(|l| contains_subword(l, &rule.lhs))
            .cloned()
            .collect();
        for l in stale {
            let rhs = self.rules.remove(&l).expect("rule");
            displaced.push(&NCPoly::monomial(self.dim, self.order, l) - &rhs);
        }
        self.rules.insert(rule.lhs, rule.rhs);
        displaced
    }

    fn lengths(&self) -> BTreeSet<usize> {
        self.rules.keys().map(NCWord::len).collect()
    }

    /// Some irreducible representative (unique once completed).
    fn reduce_any(&self, p: &NCPoly) -> NCPoly {
        let mut r = Reducer::new(Arc::new(self.clone()));
        r.nf_unchecked(p)
    }

    /// True if no rule applies anywhere in `w`.
    pub fn is_irreducible(&self, w: &NCWord) -> bool {
        let lengths = self.lengths();
        let ls = w.letters();
        lengths.iter().all(|&k| {
            k > ls.len() || (0..=ls.len() - k).all(|i| !self.rules.contains_key(&NCWord::new(ls[i..i + k].to_vec())))
        })
    }

    /// All overlaps l1 = a·b, l2 = b·c (b ≠ ∅) with |a·b·c| ≤ D, as
    /// (overlap word, S-polynomial a·r2 − r1·c).
    fn overlaps(&self) -> Vec<(OverlapKey, NCWord, NCPoly)> {
        let mut out = Vec::new();
        for (l1, r1) in &self.rules {
            for (l2, r2) in &self.rules {
                let (s1, s2) = (l1.letters(), l2.letters());
                for k in 1..s1.len().min(s2.len()) + if l1 == l2 { 0 } else { 1 } {
                    if k == s1.len() || k == s2.len() {
                        // inclusion: excluded by inter-reduction
                        continue;
                    }
                    if s1[s1.len() - k..] != s2[..k] {
                        continue;
                    }
                    let a = NCWord::new(s1[..s1.len() - k].to_vec());
                    let c = NCWord::new(s2[k..].to_vec());
                    let word = a.concat(l2);
                    if word.len() > self.degree_bound {
                        continue;
                    }
                    let am = NCPoly::monomial(self.dim, self.order, a);
                    let cm = NCPoly::monomial(self.dim, self.order, c);
                    out.push(((l1.clone(), l2.clone(), k), word, &(&am * r2) - &(r1 * &cm)));
                }
            }
        }
        out
    }

    /// Resolves every overlap ambiguity of degree ≤ D, adding rules for
    /// nonzero remainders with unit leading coefficient. A remainder whose
    /// leading coefficient is not a unit leaves the system nonconfluent, with
    /// that overlap as witness.
    pub fn complete(&self, budget: usize) -> Result<RewriteSystem> {
        let mut sys = self.clone();
        sys.witness = None;
        let mut seen: HashSet<OverlapKey> = HashSet::new();
        loop {
            let mut pending: VecDeque<(NCWord, NCPoly)> = sys
                .overlaps()
                .into_iter()
                .filter(|(key, _, _)| seen.insert(key.clone()))
                .map(|(_, word, s)| (word, s))
                .collect();
            if pending.is_empty() {
                break;
            }
            let mut reducer = Reducer::new(Arc::new(sys.clone()));
            while let Some((word, s)) = pending.pop_front() {
                let r = reducer.nf_unchecked(&s);
                if r.is_zero() {
                    continue;
                }
                let rule = match orient(&r) {
                    Ok(rule) => rule.expect("nonzero"),
                    Err(Error::NonUnitLeading { .. }) => {
                        sys.status = Status::Nonconfluent;
                        sys.witness = Some(Witness {
                            overlap: word,
                            remainder: r,
                        });
                        return Ok(sys);
                    }
                    Err(e) => return Err(e),
                };
                if sys.rules.len() >= budget {
                    return Err(Error::CompletionBudget {
                        budget,
                        rules: sys.rules.len(),
                        pending: pending.len() + 1,
                    });
                }
                let mut displaced: VecDeque<NCPoly> = sys.insert_rule(rule).into();
                sys.added_rules += 1;
                while let Some(rel) = displaced.pop_front() {
                    let r = sys.reduce_any(&rel);
                    if r.is_zero() {
                        continue;
                    }
                    match orient(&r) {
                        Ok(rule) => displaced.extend(sys.insert_rule(rule.expect("nonzero"))),
                        Err(Error::NonUnitLeading { .. }) => {
                            sys.status = Status::Nonconfluent;
                            sys.witness = Some(Witness {
                                overlap: word.clone(),
                                remainder: r,
                            });
                            return Ok(sys);
                        }
                        Err(e) => return Err(e),
                    }
                }
                reducer = Reducer::new(Arc::new(sys.clone()));
            }
        }
        // Inter-reduce right-hand sides.
        let frozen = Arc::new(sys.clone());
        let mut reducer = Reducer::new(frozen);
        let rules: Vec<(NCWord, NCPoly)> = sys.rules.iter().map(|(l, r)| (l.clone(), r.clone())).collect();
        for (l, r) in rules {
            sys.rules.insert(l, reducer.nf_unchecked(&r));
        }
        sys.status = Status::Completed;
        Ok(sys)
    }

    fn check_degree(&self, t: &NCPoly) -> Result<()> {
        if t.dim() != self.dim {
            return Err(Error::DimensionMismatch(t.dim(), self.dim));
        }
        if t.order() != self.order {
            return Err(Error::TruncationMismatch(t.order(), self.order));
        }
        match t.max_degree() {
            Some(d) if d > self.degree_bound => Err(Error::DegreeOverflow {
                degree: d,
                bound: self.degree_bound,
            }),
            _ => Ok(()),
        }
    }

    fn require_completed(&self) -> Result<()> {
        match self.status {
            Status::Completed => Ok(()),
            s => Err(Error::NotCompleted(s.to_string())),
        }
    }

    /// The unique irreducible representative of `t`.
    pub fn normal_form(self: &Arc<Self>, t: &NCPoly) -> Result<NCPoly> {
        Reducer::new(self.clone()).nf(t)
    }

    /// Normal form by applying rules at randomly chosen positions until no
    /// rule applies. On a confluent system it agrees with `normal_form`.
    pub fn normal_form_random<R: Rng>(&self, t: &NCPoly, rng: &mut R) -> Result<NCPoly> {
        self.check_degree(t)?;
        let lengths = self.lengths();
        let mut cur = t.clone();
        loop {
            let mut sites: Vec<(NCWord, usize, usize)> = Vec::new();
            for (w, _) in cur.iter() {
                let ls = w.letters();
                for &k in &lengths {
                    if k > ls.len() {
                        continue;
                    }
                    for i in 0..=ls.len() - k {
                        if self.rules.contains_key(&NCWord::new(ls[i..i + k].to_vec())) {
                            sites.push((w.clone(), i, k));
                        }
                    }
                }
            }
            if sites.is_empty() {
                return Ok(cur);
            }
            let (w, i, k) = sites.swap_remove(rng.gen_range(0..sites.len()));
            let c = cur.coeff(&w);
            let ls = w.letters();
            let pre = NCPoly::monomial(self.dim, self.order, NCWord::new(ls[..i].to_vec()));
            let post = NCPoly::monomial(self.dim, self.order, NCWord::new(ls[i + k..].to_vec()));
            let rhs = &self.rules[&NCWord::new(ls[i..i + k].to_vec())];
            let replacement = &(&pre * rhs) * &post;
            cur.add_term(w, &-&c);
            cur.add_scaled(&replacement, &c);
        }
    }

    /// Counts of irreducible words in each degree 0..=max_degree.
    pub fn hilbert(&self, max_degree: usize) -> HilbertData {
        let lengths: Vec<usize> = self.lengths().into_iter().collect();
        let mut counts = vec![0u64; max_degree + 1];
        let mut stack: Vec<u16> = Vec::new();
        fn dfs(sys: &RewriteSystem, lengths: &[usize], stack: &mut Vec<u16>, counts: &mut [u64]) {
            counts[stack.len()] += 1;
            if stack.len() + 1 == counts.len() {
                return;
            }
            for l in 0..sys.dim as u16 {
                stack.push(l);
                let n = stack.len();
                let reducible = lengths
                    .iter()
                    .any(|&k| k <= n && sys.rules.contains_key(&NCWord::new(stack[n - k..].to_vec())));
                if !reducible {
                    dfs(sys, lengths, stack, counts);
                }
                stack.pop();
            }
        }
        dfs(self, &lengths, &mut stack, &mut counts);
        HilbertData {
            dim: self.dim,
            counts,
        }
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            dim: self.dim,
            order: self.order,
            degree_bound: self.degree_bound,
            status: self.status,
            rules: self
                .rules
                .iter()
                .map(|(l, r)| RuleJson {
                    lhs: l.to_indices(),
                    rhs: terms_to_json(r),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SystemJson) -> Result<Self> {
        let mut rules = BTreeMap::new();
        for r in &j.rules {
            let lhs = NCWord::from_indices(&r.lhs, j.dim)?;
            let rhs: NCPoly = terms_from_json(&r.rhs, j.dim, j.order)?;
            if let Some((w, _)) = rhs.leading() {
                if w >= &lhs {
                    return Err(Error::Invalid(format!(
                        "rule rhs contains a word not smaller than its lhs {:?}",
                        r.lhs
                    )));
                }
            }
            if rules.insert(lhs, rhs).is_some() {
                return Err(Error::Invalid(format!("duplicate rule lhs {:?}", r.lhs)));
            }
        }
        Ok(RewriteSystem {
            dim: j.dim,
            order: j.order,
            degree_bound: j.degree_bound,
            rules,
            status: j.status,
            witness: None,
            added_rules: 0,
        })
    }
}

type OverlapKey = (NCWord, NCWord, usize);

fn contains_subword(w: &NCWord, sub: &NCWord) -> bool {
    let (w, s) = (w.letters(), sub.letters());
    s.len() <= w.len() && w.windows(s.len()).any(|win| win == s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleJson {
    pub lhs: Vec<usize>,
    pub rhs: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub dim: usize,
    pub order: usize,
    pub degree_bound: usize,
    pub status: Status,
    pub rules: Vec<RuleJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub dim: usize,
    pub counts: Vec<u64>,
}

impl HilbertData {
    /// dim S^n(V) = C(n+d−1, n).
    pub fn symmetric(dim: usize, n: usize) -> u64 {
        if dim == 0 {
            return u64::from(n == 0);
        }
        binomial(n + dim - 1, n)
    }

    /// First degree whose count differs from dim S^n(V).
    pub fn first_mismatch(&self) -> Option<(usize, u64, u64)> {
        self.counts
            .iter()
            .enumerate()
            .map(|(n, &c)| (n, c, Self::symmetric(self.dim, n)))
            .find(|(_, c, e)| c != e)
    }

    pub fn is_flat(&self) -> bool {
        self.first_mismatch().is_none()
    }
}

/// Memoized normal forms over a frozen system.
///
/// NF(a·w) = NF(a·NF(w)); for a letter `a` and irreducible `v`, a rule can
/// only apply to `a·v` at position 0.
#[derive(Debug)]
pub struct Reducer {
    sys: Arc<RewriteSystem>,
    lengths: Vec<usize>,
    memo: HashMap<NCWord, NCPoly>,
}

impl Reducer {
    pub fn new(sys: Arc<RewriteSystem>) -> Self {
        let lengths = sys.lengths().into_iter().collect();
        Reducer {
            sys,
            lengths,
            memo: HashMap::new(),
        }
    }

    pub fn system(&self) -> &Arc<RewriteSystem> {
        &self.sys
    }

    /// Normal form; requires a completed system and degree ≤ D.
    pub fn nf(&mut self, t: &NCPoly) -> Result<NCPoly> {
        self.sys.require_completed()?;
        self.sys.check_degree(t)?;
        Ok(self.nf_unchecked(t))
    }

    pub(crate) fn nf_unchecked(&mut self, t: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero(self.sys.dim, self.sys.order);
        for (w, c) in t.iter() {
            let n = self.nf_word(w);
            out.add_scaled(&n, c);
        }
        out
    }

    pub fn nf_word(&mut self, w: &NCWord) -> NCPoly {
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let (dim, order) = (self.sys.dim, self.sys.order);
        let result = if w.len() <= 1 {
            // single letters are reducible only through a length-one rule
            match self.sys.rules.get(w) {
                Some(rhs) => {
                    let rhs = rhs.clone();
                    self.nf_unchecked(&rhs)
                }
                None => NCPoly::monomial(dim, order, w.clone()),
            }
        } else {
            let first = w.letters()[0];
            let rest = w.slice(1..w.len());
            let tail = self.nf_word(&rest);
            let mut out = NCPoly::zero(dim, order);
            for (v, c) in tail.iter() {
                let p = self.nf_letter_word(first, v);
                out.add_scaled(&p, c);
            }
            out
        };
        self.memo.insert(w.clone(), result.clone());
        result
    }

    fn nf_letter_word(&mut self, a: u16, v: &NCWord) -> NCPoly {
        let mut letters = Vec::with_capacity(v.len() + 1);
        letters.push(a);
        letters.extend_from_slice(v.letters());
        let w = NCWord::new(letters);
        if let Some(p) = self.memo.get(&w) {
            return p.clone();
        }
        let (dim, order) = (self.sys.dim, self.sys.order);
        let hit = self
            .lengths
            .iter()
            .copied()
            .find(|&k| k <= w.len() && self.sys.rules.contains_key(&w.slice(0..k)));
        let result = match hit {
            None => NCPoly::monomial(dim, order, w.clone()),
            Some(k) => {
                let rhs = self.sys.rules[&w.slice(0..k)].clone();
                let post = NCPoly::monomial(dim, order, w.slice(k..w.len()));
                let expanded = &rhs * &post;
                self.nf_unchecked(&expanded)
            }
        };
        self.memo.insert(w, result.clone());
        result
    }
}
