//! Cover-existence certification: recorded axioms, derivation rules, and
//! machine-checkable verdicts for which inertia classes of a quasi-p group
//! occur over the affine line.
//!
//! The unit of knowledge is a [`Fact`]: one group, one prime, one inertia
//! class, a set of certified lower jumps, and a provenance forest whose
//! leaves carry citation keys from the fact base. Derivation rules combine
//! facts into new facts; [`aic_status`] runs every rule to saturation and
//! condenses the result into a verdict, and [`replay`] re-checks a finished
//! report node by node without rerunning the search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::atlas::{self, CoverAxiom, FactBase};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::inertia::{self, CentMode, InertiaClass};
use crate::quasip::Method;
use crate::subgrp;

/// Citation key for the patching arguments behind the shift, patch, and
/// induction rules.
const PATCH_CITATION: &str = "MR2016596";

/// Citation key for the base fact that every quasi-p group admits a cover
/// with inertia a full Sylow p-subgroup.
const SYLOW_COVER_CITATION: &str = "MR1221836";

/// Default multiplier for the jump range searched during patch saturation.
pub const DEFAULT_PATCH_BUDGET: u64 = 8;

/// Strength of the statement `aic_status` certifies for one group and prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every inertia class is realized by a recorded or derived cover.
    Verified,
    /// Every inertia class splits off a realized class of a recorded
    /// subgroup, certifying all sufficiently large admissible jumps.
    AllButFinitelyMany,
    /// Some classes are realized, but at least one has no known cover.
    Partial,
    /// No class has a known cover.
    Unverified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Verified => "verified",
            Verdict::AllButFinitelyMany => "all-but-finitely-many",
            Verdict::Partial => "partial",
            Verdict::Unverified => "unverified",
        };
        f.write_str(s)
    }
}

/// Signature of an inertia class: complement order and action order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassKey {
    /// Order of the prime-to-p cyclic complement.
    pub m: u64,
    /// Order of the complement's conjugation action on the p-part.
    pub action_order: u64,
}

impl ClassKey {
    /// Signature of a catalog entry.
    pub fn of(cls: &InertiaClass) -> Self {
        let (m, action_order) = cls.signature();
        ClassKey { m, action_order }
    }

    /// Value `gcd(j, m)` every certified jump `j` must attain.
    pub fn gcd_target(&self) -> u64 {
        self.m / self.action_order
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m = {}, e = {})", self.m, self.action_order)
    }
}

/// Node in a derivation tree. Leaves carry citation keys; internal nodes
/// name the rule that combined their premises.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProvNode {
    /// Rule or leaf kind, e.g. "axiom", "same-group-patch".
    pub rule: String,
    /// Human-readable restatement of what this node certifies.
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    /// Concrete jump this node certifies, when it certifies one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jump: Option<u64>,
    /// Numeric side data consumed by `replay`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<ProvNode>,
}

impl ProvNode {
    fn leaf(rule: &str, statement: String, citation: &str) -> Self {
        ProvNode {
            rule: rule.to_string(),
            statement,
            citation: Some(citation.to_string()),
            jump: None,
            params: BTreeMap::new(),
            premises: Vec::new(),
        }
    }

    fn derived(rule: &str, statement: String, premises: Vec<ProvNode>) -> Self {
        ProvNode {
            rule: rule.to_string(),
            statement,
            citation: None,
            jump: None,
            params: BTreeMap::new(),
            premises,
        }
    }

    fn with_jump(mut self, j: u64) -> Self {
        self.jump = Some(j);
        self
    }

    fn with_citation(mut self, c: &str) -> Self {
        self.citation = Some(c.to_string());
        self
    }

    fn with_param(mut self, key: &str, value: u64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    fn param(&self, key: &str) -> Result<u64> {
        self.params.get(key).copied().ok_or_else(|| {
            Error::Inconsistent(format!("node '{}' lacks parameter '{key}'", self.rule))
        })
    }
}

/// Set of lower jumps certified for one inertia class.
///
/// `singles` are individually derived jumps. `progressions` map a residue
/// `r` mod `m` to a threshold `t`: every jump `j >= t` with `j = r` mod `m`
/// and `p` not dividing `j` is certified. `exists_unknown` records that a
/// cover exists without pinning its jump.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct JumpSet {
    pub exists_unknown: bool,
    pub singles: BTreeSet<u64>,
    pub progressions: BTreeMap<u64, u64>,
}

impl JumpSet {
    /// Whether any cover at all is certified.
    pub fn is_realized(&self) -> bool {
        self.exists_unknown || !self.singles.is_empty() || !self.progressions.is_empty()
    }

    /// Whether the concrete jump `j` is certified for a class with
    /// complement order `m` in characteristic `p`.
    pub fn contains(&self, j: u64, m: u64, p: u64) -> bool {
        if j % p == 0 {
            return false;
        }
        if self.singles.contains(&j) {
            return true;
        }
        match self.progressions.get(&(j % m)) {
            Some(&t) => j >= t,
            None => false,
        }
    }
}

/// One certified statement: a set of jumps known to occur for one inertia
/// class of one group, with a derivation forest justifying each entry.
#[derive(Clone, Debug, Serialize)]
pub struct Fact {
    pub group: String,
    pub prime: u64,
    pub class: ClassKey,
    pub jumps: JumpSet,
    /// One root per independently derived component of `jumps`.
    pub provenance: Vec<ProvNode>,
}

/// gcd with the convention `gcd(0, m) = m`, matching residues mod `m`.
fn residue_gcd(r: u64, m: u64) -> u64 {
    if r == 0 {
        m
    } else {
        r.gcd(&m)
    }
}

/// Validates the arithmetic every certified jump must satisfy: prime to p,
/// strictly above the complement order, and with the gcd forced by the
/// action order.
pub fn check_jump(class: &ClassKey, p: u64, j: u64) -> Result<()> {
    if j % p == 0 {
        return Err(Error::InvalidInput(format!(
            "jump {j} is divisible by p = {p}"
        )));
    }
    if j <= class.m {
        return Err(Error::InvalidInput(format!(
            "jump {j} does not exceed the complement order m = {}",
            class.m
        )));
    }
    if j.gcd(&class.m) != class.gcd_target() {
        return Err(Error::InvalidInput(format!(
            "gcd({j}, {}) = {} differs from the required value {}",
            class.m,
            j.gcd(&class.m),
            class.gcd_target()
        )));
    }
    Ok(())
}

/// Inertia catalog for a named group, replaying a recorded Sylow-normalizer
/// presentation when one exists and otherwise computing on the bundled
/// permutation representation.
pub fn catalog_for(fb: &FactBase, name: &str, p: u64) -> Result<(Vec<InertiaClass>, Method)> {
    let canon = fb.canonical_name(name);
    if fb.sylow_normalizer(&canon, p).is_ok() {
        let catalog = inertia::inertia_catalog_from_facts(fb, &canon, p)?;
        return Ok((catalog, Method::FactsDerived));
    }
    let g = atlas::load_builtin(&canon)?;
    Ok((inertia::inertia_catalog(&g, p)?, Method::Computed))
}

/// Finds the catalog entry whose subgroup is the full Sylow normalizer,
/// when that normalizer is itself metacyclic of order p times m. Returns
/// `None` when no bundled representation is available or no entry matches.
fn normalizer_class_index(catalog: &[InertiaClass], group: &str) -> Result<Option<usize>> {
    if catalog.is_empty() {
        return Ok(None);
    }
    let p = catalog[0].p;
    let g = match atlas::load_builtin(group) {
        Ok(g) => g,
        Err(Error::UnknownGroup(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let s = subgrp::sylow_p(&g, p)?;
    let n = subgrp::normalizer(&g, &s)?;
    let n_order = match n.order_u128() {
        Some(o) => o,
        None => return Ok(None),
    };
    let hits: Vec<usize> = (0..catalog.len())
        .filter(|&i| u128::from(catalog[i].order()) == n_order)
        .collect();
    match hits.as_slice() {
        [] => Ok(None),
        [i] => Ok(Some(*i)),
        _ => Err(Error::Inconsistent(format!(
            "several classes of {group} share the Sylow normalizer order {n_order}"
        ))),
    }
}

/// Converts every recorded cover axiom in the fact base into a seed `Fact`.
///
/// Jump axioms resolve their class by complement order inside the catalog
/// of the named group and must pass `check_jump`. Blanket existence axioms
/// yield one unspecified-jump fact per catalog class. Normalizer-cover
/// axioms yield a fact for the class of the Sylow normalizer when that
/// normalizer appears in the catalog.
pub fn load_axioms(fb: &FactBase) -> Result<Vec<Fact>> {
    let mut out = Vec::new();
    for ax in &fb.cover_axioms {
        fb.require_citation(ax.citation())?;
        let group = fb.canonical_name(ax.group());
        let p = ax.prime();
        let (catalog, _) = catalog_for(fb, &group, p)?;
        if catalog.is_empty() {
            return Err(Error::Inconsistent(format!(
                "cover axiom recorded for {group}, which is not quasi-{p}"
            )));
        }
        match ax {
            CoverAxiom::Jump {
                complement_order,
                jump,
                citation,
                ..
            } => {
                let hits: Vec<&InertiaClass> =
                    catalog.iter().filter(|c| c.m == *complement_order).collect();
                let cls = match hits.as_slice() {
                    [one] => *one,
                    [] => {
                        return Err(Error::Inconsistent(format!(
                            "no class of {group} has complement order {complement_order}"
                        )))
                    }
                    _ => {
                        return Err(Error::Inconsistent(format!(
                            "complement order {complement_order} does not pick a unique class of {group}"
                        )))
                    }
                };
                let key = ClassKey::of(cls);
                check_jump(&key, p, *jump)?;
                let node = ProvNode::leaf(
                    "axiom",
                    format!("a ({group}, {key})-cover with lower jump {jump} is recorded"),
                    citation,
                )
                .with_jump(*jump);
                let mut jumps = JumpSet::default();
                jumps.singles.insert(*jump);
                out.push(Fact {
                    group: group.clone(),
                    prime: p,
                    class: key,
                    jumps,
                    provenance: vec![node],
                });
            }
            CoverAxiom::Aic { citation, .. } => {
                for cls in &catalog {
                    let key = ClassKey::of(cls);
                    let node = ProvNode::leaf(
                        "aic-base",
                        format!(
                            "every inertia class of {group} at p = {p} is recorded as occurring; class {key}"
                        ),
                        citation,
                    );
                    out.push(Fact {
                        group: group.clone(),
                        prime: p,
                        class: key,
                        jumps: JumpSet {
                            exists_unknown: true,
                            ..JumpSet::default()
                        },
                        provenance: vec![node],
                    });
                }
            }
            CoverAxiom::NormalizerCover { citation, .. } => {
                if let Some(i) = normalizer_class_index(&catalog, &group)? {
                    let key = ClassKey::of(&catalog[i]);
                    let node = ProvNode::leaf(
                        "normalizer-cover",
                        format!(
                            "a ({group}, N)-cover with inertia the full Sylow normalizer is recorded; class {key}"
                        ),
                        citation,
                    );
                    out.push(Fact {
                        group: group.clone(),
                        prime: p,
                        class: key,
                        jumps: JumpSet {
                            exists_unknown: true,
                            ..JumpSet::default()
                        },
                        provenance: vec![node],
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Derivation tree justifying the concrete jump `j` inside `f`, either a
/// recorded root or a shift of one.
fn justification(f: &Fact, j: u64) -> Result<ProvNode> {
    if let Some(node) = f.provenance.iter().find(|n| n.jump == Some(j)) {
        return Ok(node.clone());
    }
    let m = f.class.m;
    let r = j % m;
    if let Some(&t) = f.jumps.progressions.get(&r) {
        if j >= t && f.jumps.contains(j, m, f.prime) {
            let base = justification(f, t)?;
            return Ok(ProvNode::derived(
                "jump-shift",
                format!("jump {j} lies in the certified progression {r} mod {m} above {t}"),
                vec![base],
            )
            .with_jump(j)
            .with_param("m", m)
            .with_param("residue", r)
            .with_param("threshold", t)
            .with_citation(PATCH_CITATION));
        }
    }
    Err(Error::MissingFact(format!(
        "jump {j} is not certified for class {} of {}",
        f.class, f.group
    )))
}

/// Closes every individually certified jump into the upward congruence
/// progression it generates: once `j` occurs, so does every admissible
/// jump congruent to `j` mod `m` and at least `j`.
pub fn rule_jump_shift(f: &Fact) -> Fact {
    let mut out = f.clone();
    for &j in &f.jumps.singles {
        let r = j % f.class.m;
        if let Some(&t) = out.jumps.progressions.get(&r) {
            if t <= j {
                continue;
            }
        }
        out.jumps.progressions.insert(r, j);
        let base = justification(f, j).unwrap_or_else(|_| {
            ProvNode::derived("axiom", format!("jump {j} recorded without provenance"), vec![])
                .with_jump(j)
        });
        out.provenance
            .retain(|n| !(n.rule == "jump-shift" && n.params.get("residue") == Some(&r)));
        out.provenance.push(
            ProvNode::derived(
                "jump-shift",
                format!(
                    "every admissible jump congruent to {r} mod {} and at least {j} occurs",
                    f.class.m
                ),
                vec![base],
            )
            .with_param("m", f.class.m)
            .with_param("residue", r)
            .with_param("threshold", j)
            .with_citation(PATCH_CITATION),
        );
    }
    out
}

/// Combines certified jumps `j1` of `f1` and `j2` of `f2`, two facts about
/// the same class, into the certified jump `j1 + j2`.
pub fn rule_same_group_patch(f1: &Fact, j1: u64, f2: &Fact, j2: u64) -> Result<Fact> {
    if f1.group != f2.group || f1.prime != f2.prime || f1.class != f2.class {
        return Err(Error::InvalidInput(
            "patching requires two facts about the same class of the same group".into(),
        ));
    }
    let (m, p) = (f1.class.m, f1.prime);
    if !f1.jumps.contains(j1, m, p) {
        return Err(Error::MissingFact(format!(
            "jump {j1} is not certified by the first fact"
        )));
    }
    if !f2.jumps.contains(j2, m, p) {
        return Err(Error::MissingFact(format!(
            "jump {j2} is not certified by the second fact"
        )));
    }
    let j = j1
        .checked_add(j2)
        .ok_or_else(|| Error::TooLarge("jump sum overflows".into()))?;
    check_jump(&f1.class, p, j)?;
    let mut out = f1.clone();
    if out.jumps.singles.insert(j) {
        let node = ProvNode::derived(
            "same-group-patch",
            format!("covers with jumps {j1} and {j2} glue to a cover with jump {j}"),
            vec![justification(f1, j1)?, justification(f2, j2)?],
        )
        .with_jump(j)
        .with_citation(PATCH_CITATION);
        out.provenance.push(node);
    }
    Ok(out)
}

/// Transports a fact along conjugacy of two inertia representatives inside
/// the ambient group, certifying the same jumps for the conjugate subgroup.
pub fn rule_conjugate_transport(
    f: &Fact,
    g: &PermGroup,
    from: &PermGroup,
    to: &PermGroup,
) -> Result<Fact> {
    let witness = subgrp::conjugacy_witness(g, from, to)?.ok_or_else(|| {
        Error::Inconsistent("the two subgroups are not conjugate in the ambient group".into())
    })?;
    let node = ProvNode::derived(
        "conjugate-transport",
        format!(
            "a conjugating element of order {} identifies the two inertia representatives",
            witness.order()
        ),
        f.provenance.clone(),
    );
    let mut out = f.clone();
    out.provenance = vec![node];
    Ok(out)
}

/// Pushes the certified jump `j` through the degree-`d` tame quotient of
/// the complement, landing in the class with complement order
/// `m / gcd(m, d)` and jump `j * d / gcd(m, d)`.
pub fn rule_quotient_scaling(f: &Fact, j: u64, d: u64, catalog: &[InertiaClass]) -> Result<Fact> {
    if d == 0 {
        return Err(Error::InvalidInput("scaling degree must be positive".into()));
    }
    let (m, p) = (f.class.m, f.prime);
    if d % p == 0 {
        return Err(Error::InvalidInput(format!(
            "scaling degree {d} is divisible by p = {p}"
        )));
    }
    if !f.jumps.contains(j, m, p) {
        return Err(Error::MissingFact(format!(
            "jump {j} is not certified for class {} of {}",
            f.class, f.group
        )));
    }
    if d == 1 {
        return Ok(f.clone());
    }
    let gd = m.gcd(&d);
    let m2 = m / gd;
    let j2 = j
        .checked_mul(d)
        .ok_or_else(|| Error::TooLarge("scaled jump overflows".into()))?
        / gd;
    if j2 % p == 0 {
        return Err(Error::InvalidInput(format!(
            "scaled jump {j2} is divisible by p = {p}"
        )));
    }
    let e = f.class.action_order;
    let e2 = e / e.gcd(&gd);
    let key2 = ClassKey {
        m: m2,
        action_order: e2,
    };
    let hits: Vec<&InertiaClass> = catalog
        .iter()
        .filter(|c| ClassKey::of(c) == key2)
        .collect();
    match hits.as_slice() {
        [_] => {}
        [] => {
            return Err(Error::MissingFact(format!(
                "no class {key2} in the supplied catalog"
            )))
        }
        _ => {
            return Err(Error::Inconsistent(format!(
                "class {key2} is ambiguous in the supplied catalog"
            )))
        }
    }
    check_jump(&key2, p, j2)?;
    let node = ProvNode::derived(
        "quotient-scaling",
        format!(
            "a cover for class {} with jump {j} pulls back along a degree-{d} tame cover to one for class {key2} with jump {j2}",
            f.class
        ),
        vec![justification(f, j)?],
    )
    .with_jump(j2)
    .with_param("d", d)
    .with_param("source_m", m)
    .with_citation(PATCH_CITATION);
    let mut jumps = JumpSet::default();
    jumps.singles.insert(j2);
    Ok(Fact {
        group: f.group.clone(),
        prime: p,
        class: key2,
        jumps,
        provenance: vec![node],
    })
}

/// Numerical side conditions accompanying a subgroup-induction step.
#[derive(Clone, Debug)]
pub struct InductionData {
    /// Ambient group name.
    pub group: String,
    /// Signature of the ambient class being certified.
    pub ambient_class: ClassKey,
    /// Order of the ambient group.
    pub group_order: BigUint,
    /// Order of the subgroup the fact lives in.
    pub subgroup_order: BigUint,
    /// Size of the ambient conjugacy class of inertia subgroups.
    pub class_size: BigUint,
    /// Size of the subgroup's conjugacy class of inertia subgroups.
    pub subgroup_class_size: BigUint,
    /// Both groups are generated by their p-elements.
    pub both_quasi_p: bool,
    /// p divides the ambient order exactly once.
    pub p_exact: bool,
    /// Citation for the recorded embedding.
    pub embedding_citation: String,
}

/// Induces cover existence from a subgroup: a cover of the subgroup with
/// this inertia class extends to a cover of the ambient group with the
/// same inertia, provided the signatures agree and the conjugation census
/// matches, so that every ambient class member meets the subgroup.
pub fn rule_subgroup_induction(fb: &FactBase, f: &Fact, data: &InductionData) -> Result<Fact> {
    if !data.both_quasi_p {
        return Err(Error::InvalidInput(
            "induction requires both groups to be quasi-p".into(),
        ));
    }
    if !data.p_exact {
        return Err(Error::InvalidInput(
            "induction requires the prime to divide the ambient order exactly once".into(),
        ));
    }
    if data.ambient_class != f.class {
        return Err(Error::InvalidInput(format!(
            "no compatible subgroup fact: ambient class {} differs from the fact's class {}",
            data.ambient_class, f.class
        )));
    }
    if !f.jumps.is_realized() {
        return Err(Error::MissingFact(
            "the subgroup fact certifies no cover".into(),
        ));
    }
    fb.require_citation(&data.embedding_citation)?;
    let induced =
        inertia::induced_census_orders(&data.group_order, &data.subgroup_order, &data.subgroup_class_size)?;
    if induced != data.class_size {
        return Err(Error::Inconsistent(format!(
            "normalizer census mismatch: inducing from {} predicts {induced} subgroups, but the ambient class has {}",
            f.group, data.class_size
        )));
    }
    let assumption = ProvNode::leaf(
        "assumption",
        "numerical patching conditions for the induction step".into(),
        PATCH_CITATION,
    );
    let embedding = ProvNode::leaf(
        "embedding",
        format!("{} embeds in {}", f.group, data.group),
        &data.embedding_citation,
    );
    let mut premises = f.provenance.clone();
    premises.push(assumption);
    premises.push(embedding);
    let node = ProvNode::derived(
        "subgroup-induction",
        format!(
            "covers for class {} of {} induce covers for the matching class of {}",
            f.class, f.group, data.group
        ),
        premises,
    );
    Ok(Fact {
        group: data.group.clone(),
        prime: f.prime,
        class: f.class,
        jumps: JumpSet {
            exists_unknown: true,
            ..JumpSet::default()
        },
        provenance: vec![node],
    })
}

/// Whether a cover-existence axiom (not merely a single-jump record) is
/// recorded for the named group at `p`.
pub fn axiom_present(fb: &FactBase, name: &str, p: u64) -> bool {
    fb.axioms_for(name, p)
        .iter()
        .any(|ax| !matches!(ax, CoverAxiom::Jump { .. }))
}

/// Whether one inertia class of the ambient catalog splits as a direct
/// product of an inner class drawn from `h_sigs` and a prime-to-p factor,
/// verified on the concrete representative.
fn class_splits_over(cls: &InertiaClass, h_sigs: &BTreeSet<(u64, u64)>) -> Result<bool> {
    let p = cls.p;
    let (m, e) = cls.signature();
    for &(mp, ep) in h_sigs {
        if ep != e || m % mp != 0 || mp.gcd(&(m / mp)) != 1 {
            continue;
        }
        let data = subgrp::metacyclic_data(&cls.representative, p)?;
        let mut gens = vec![data.tau.clone()];
        if mp > 1 {
            gens.push(data.beta.pow(u128::from(m / mp)));
        }
        let inner = PermGroup::from_generators(cls.representative.degree(), gens)?;
        if inner.order_u128() != Some(u128::from(p) * u128::from(mp)) {
            continue;
        }
        if mp > 1 && subgrp::metacyclic_data(&inner, p)?.action_order != ep {
            continue;
        }
        if subgrp::direct_factorization(&cls.representative, &inner)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Per-class outcomes of the product-decomposition criterion: for each
/// inertia class of `g` at `p`, whether it factors as an inertia class of
/// the subgroup `h` times a prime-to-p direct complement.
pub fn prop46_classes(fb: &FactBase, g: &str, h: &str, p: u64) -> Result<Vec<(ClassKey, bool)>> {
    let hname = fb.canonical_name(h);
    if !axiom_present(fb, &hname, p) {
        return Err(Error::MissingFact(format!(
            "no cover-existence axiom recorded for {hname} at p = {p}"
        )));
    }
    let (g_catalog, _) = catalog_for(fb, g, p)?;
    let hgrp = atlas::load_builtin(&hname)?;
    let h_catalog = inertia::inertia_catalog(&hgrp, p)?;
    if h_catalog.is_empty() {
        return Err(Error::Inconsistent(format!("{hname} is not quasi-{p}")));
    }
    let h_sigs: BTreeSet<(u64, u64)> = inertia::signatures(&h_catalog).into_iter().collect();
    let mut out = Vec::new();
    for cls in &g_catalog {
        out.push((ClassKey::of(cls), class_splits_over(cls, &h_sigs)?));
    }
    Ok(out)
}

/// Whether every inertia class of `g` at `p` splits off an inertia class
/// of the subgroup `h`, the hypothesis under which recorded covers of `h`
/// certify covers of `g` for all sufficiently large jumps.
pub fn check_prop46(fb: &FactBase, g: &str, h: &str, p: u64) -> Result<bool> {
    Ok(prop46_classes(fb, g, h, p)?.iter().all(|(_, ok)| *ok))
}

/// Per-class certification summary inside an [`AicStatus`].
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub class: ClassKey,
    pub normalizer_order: u64,
    pub class_size: String,
    pub realized: bool,
    pub jumps: JumpSet,
    /// Admissible jump quotients j/m below the certified thresholds.
    #[serde(serialize_with = "ser_ratio_set")]
    pub exceptions: BTreeSet<Ratio<u64>>,
    /// Induction routes that were tried and refused, with reasons.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub provenance: Vec<ProvNode>,
}

/// Outcome of the full certification pipeline for one group and prime.
#[derive(Clone, Debug, Serialize)]
pub struct AicStatus {
    pub group: String,
    pub prime: u64,
    pub method: Method,
    pub verdict: Verdict,
    /// Least common multiple of the class action orders.
    pub m_g: u64,
    pub classes: Vec<ClassReport>,
    /// Union of the per-class exception sets.
    #[serde(serialize_with = "ser_ratio_set")]
    pub exceptions: BTreeSet<Ratio<u64>>,
    /// Classes with no certified cover, one entry per catalog class.
    pub uncovered: Vec<ClassKey>,
    /// Subgroup through which the decomposition criterion certified the
    /// remaining classes, when the verdict is all-but-finitely-many.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prop46_route: Option<String>,
}

fn ser_ratio_set<S: serde::Serializer>(
    set: &BTreeSet<Ratio<u64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(set.iter().map(|r| r.to_string()))
}

/// Runs every derivation rule to saturation for one group and prime and
/// condenses the result into a verdict with per-class detail.
///
/// `budget` scales the jump range searched during patch saturation; the
/// default explores jumps up to roughly `8 * p * m` per class.
pub fn aic_status(fb: &FactBase, name: &str, p: u64, budget: Option<u64>) -> Result<AicStatus> {
    let group = fb.canonical_name(name);
    let (catalog, method) = catalog_for(fb, &group, p)?;
    if catalog.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{group} is not quasi-{p}: it has no inertia classes over the affine line"
        )));
    }
    let m_g = inertia::m_g(&catalog, CentMode::CentOfS)?;
    let budget = budget.unwrap_or(DEFAULT_PATCH_BUDGET).max(1);

    let mut facts: Vec<Fact> = catalog
        .iter()
        .map(|cls| Fact {
            group: group.clone(),
            prime: p,
            class: ClassKey::of(cls),
            jumps: JumpSet::default(),
            provenance: Vec::new(),
        })
        .collect();
    let mut notes: Vec<Vec<String>> = vec![Vec::new(); catalog.len()];

    // Base fact: a cover with inertia exactly a Sylow p-subgroup exists
    // for every quasi-p group.
    for (i, cls) in catalog.iter().enumerate() {
        if cls.signature() == (1, 1) {
            facts[i].jumps.exists_unknown = true;
            facts[i].provenance.push(ProvNode::leaf(
                "sylow-cover",
                format!("a ({group}, S)-cover with inertia a full Sylow p-subgroup exists"),
                SYLOW_COVER_CITATION,
            ));
        }
    }

    // Recorded axioms for this group and prime.
    for ax in fb.axioms_for(&group, p) {
        fb.require_citation(ax.citation())?;
        match ax {
            CoverAxiom::Jump {
                complement_order,
                jump,
                citation,
                ..
            } => {
                let hits: Vec<usize> = (0..catalog.len())
                    .filter(|&i| catalog[i].m == *complement_order)
                    .collect();
                let &[i] = hits.as_slice() else {
                    return Err(Error::Inconsistent(format!(
                        "complement order {complement_order} does not pick a unique class of {group}"
                    )));
                };
                check_jump(&facts[i].class, p, *jump)?;
                if facts[i].jumps.singles.insert(*jump) {
                    let key = facts[i].class;
                    facts[i].provenance.push(
                        ProvNode::leaf(
                            "axiom",
                            format!("a ({group}, {key})-cover with lower jump {jump} is recorded"),
                            citation,
                        )
                        .with_jump(*jump),
                    );
                }
            }
            CoverAxiom::Aic { citation, .. } => {
                for fact in &mut facts {
                    let key = fact.class;
                    fact.jumps.exists_unknown = true;
                    fact.provenance.push(ProvNode::leaf(
                        "aic-base",
                        format!(
                            "every inertia class of {group} at p = {p} is recorded as occurring; class {key}"
                        ),
                        citation,
                    ));
                }
            }
            CoverAxiom::NormalizerCover { citation, .. } => {
                if let Some(i) = normalizer_class_index(&catalog, &group)? {
                    facts[i].jumps.exists_unknown = true;
                    facts[i].provenance.push(ProvNode::leaf(
                        "normalizer-cover",
                        format!(
                            "a ({group}, N)-cover with inertia the full Sylow normalizer is recorded"
                        ),
                        citation,
                    ));
                }
            }
        }
    }

    // Shift closure and patch saturation, one class at a time.
    for fact in &mut facts {
        if fact.jumps.singles.is_empty() {
            continue;
        }
        *fact = rule_jump_shift(fact);
        let m = fact.class.m;
        let max_single = fact.jumps.singles.iter().max().copied().unwrap_or(0);
        let bound = budget
            .saturating_mul(p)
            .saturating_mul(m)
            .max(max_single.saturating_mul(4));
        loop {
            let realized: Vec<u64> = (1..=bound)
                .filter(|&j| fact.jumps.contains(j, m, p))
                .collect();
            let mut inserted = false;
            'pairs: for (ai, &a) in realized.iter().enumerate() {
                for &b in &realized[ai..] {
                    let c = a + b;
                    if c > bound || fact.jumps.contains(c, m, p) {
                        continue;
                    }
                    if c % p == 0 || c.gcd(&m) != fact.class.gcd_target() {
                        continue;
                    }
                    let other = fact.clone();
                    *fact = rule_same_group_patch(fact, a, &other, b)?;
                    *fact = rule_jump_shift(fact);
                    inserted = true;
                    break 'pairs;
                }
            }
            if !inserted {
                break;
            }
        }
    }

    // Push certified jumps through tame quotients of the complement.
    let keys: Vec<ClassKey> = facts.iter().map(|f| f.class).collect();
    for i in 0..facts.len() {
        if facts[i].jumps.singles.is_empty() {
            continue;
        }
        let m = keys[i].m;
        for d in 2..=m {
            if m % d != 0 {
                continue;
            }
            for j in facts[i].jumps.singles.clone() {
                let scaled = match rule_quotient_scaling(&facts[i], j, d, &catalog) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                let Some(t) = keys.iter().position(|k| *k == scaled.class) else {
                    continue;
                };
                let j2 = *scaled.jumps.singles.iter().next().expect("one scaled jump");
                if facts[t].jumps.contains(j2, scaled.class.m, p) {
                    continue;
                }
                facts[t].jumps.singles.insert(j2);
                facts[t].provenance.extend(scaled.provenance);
                let updated = rule_jump_shift(&facts[t]);
                facts[t] = updated;
            }
        }
    }

    // Subgroup induction for classes with no certified cover yet.
    for i in 0..facts.len() {
        if facts[i].jumps.is_realized() {
            continue;
        }
        'embeddings: for emb in fb.embeddings(&group) {
            let hname = fb.canonical_name(&emb.name);
            let aic_citation = fb.axioms_for(&hname, p).into_iter().find_map(|ax| match ax {
                CoverAxiom::Aic { citation, .. } => Some(citation.clone()),
                _ => None,
            });
            let Some(aic_citation) = aic_citation else {
                continue;
            };
            let hgrp = match atlas::load_builtin(&hname) {
                Ok(h) => h,
                Err(Error::UnknownGroup(_)) => continue,
                Err(e) => return Err(e),
            };
            if (hgrp.order() % BigUint::from(p)) != BigUint::zero() {
                continue;
            }
            let h_catalog = inertia::inertia_catalog(&hgrp, p)?;
            for hcls in &h_catalog {
                if ClassKey::of(hcls) != keys[i] {
                    continue;
                }
                let hfact = Fact {
                    group: hname.clone(),
                    prime: p,
                    class: keys[i],
                    jumps: JumpSet {
                        exists_unknown: true,
                        ..JumpSet::default()
                    },
                    provenance: vec![ProvNode::leaf(
                        "aic-base",
                        format!(
                            "every inertia class of {hname} at p = {p} is recorded as occurring; class {}",
                            keys[i]
                        ),
                        &aic_citation,
                    )],
                };
                let data = InductionData {
                    group: group.clone(),
                    ambient_class: keys[i],
                    group_order: catalog[i].group_order.clone(),
                    subgroup_order: hgrp.order().clone(),
                    class_size: catalog[i].class_size.clone(),
                    subgroup_class_size: hcls.class_size.clone(),
                    both_quasi_p: !h_catalog.is_empty(),
                    p_exact: true,
                    embedding_citation: emb.citation.clone(),
                };
                match rule_subgroup_induction(fb, &hfact, &data) {
                    Ok(induced) => {
                        facts[i].jumps.exists_unknown = true;
                        facts[i].provenance.extend(induced.provenance);
                        break 'embeddings;
                    }
                    Err(Error::Inconsistent(msg)) => {
                        notes[i].push(format!("induction via {hname} refused: {msg}"));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }

    // Verdict and decomposition route for whatever remains uncovered.
    let uncovered: Vec<ClassKey> = facts
        .iter()
        .filter(|f| !f.jumps.is_realized())
        .map(|f| f.class)
        .collect();
    let mut prop46_route = None;
    let verdict = if uncovered.is_empty() {
        Verdict::Verified
    } else {
        for emb in fb.embeddings(&group) {
            let hname = fb.canonical_name(&emb.name);
            if !axiom_present(fb, &hname, p) {
                continue;
            }
            match check_prop46(fb, &group, &hname, p) {
                Ok(true) => {
                    prop46_route = Some(hname);
                    break;
                }
                Ok(false) => continue,
                Err(Error::UnknownGroup(_))
                | Err(Error::PrimeDoesNotDivide { .. })
                | Err(Error::SylowNotCyclicOfOrderP { .. })
                | Err(Error::Inconsistent(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        if prop46_route.is_some() {
            Verdict::AllButFinitelyMany
        } else if facts.iter().any(|f| f.jumps.is_realized()) {
            Verdict::Partial
        } else {
            Verdict::Unverified
        }
    };

    // Exceptional jumps: enumerable once every admissible residue class of
    // jumps carries a certified threshold.
    let mut all_exceptions = BTreeSet::new();
    let mut classes = Vec::with_capacity(catalog.len());
    for ((cls, fact), class_notes) in catalog.iter().zip(facts).zip(notes) {
        let key = fact.class;
        let (m, target) = (key.m, key.gcd_target());
        let residues: Vec<u64> = (0..m).filter(|&r| residue_gcd(r, m) == target).collect();
        let mut exceptions = BTreeSet::new();
        if !fact.jumps.progressions.is_empty()
            && residues
                .iter()
                .all(|r| fact.jumps.progressions.contains_key(r))
        {
            for &r in &residues {
                let threshold = fact.jumps.progressions[&r];
                let mut j = m + 1;
                while j % m != r {
                    j += 1;
                }
                while j < threshold {
                    if j % p != 0 {
                        exceptions.insert(Ratio::new(j, m));
                    }
                    j += m;
                }
            }
        }
        all_exceptions.extend(exceptions.iter().copied());
        classes.push(ClassReport {
            class: key,
            normalizer_order: cls.normalizer_order,
            class_size: cls.class_size.to_string(),
            realized: fact.jumps.is_realized(),
            jumps: fact.jumps,
            exceptions,
            notes: class_notes,
            provenance: fact.provenance,
        });
    }

    Ok(AicStatus {
        group,
        prime: p,
        method,
        verdict,
        m_g,
        classes,
        exceptions: all_exceptions,
        uncovered,
        prop46_route,
    })
}

/// Re-checks a single fact's derivation forest against the fact base.
pub fn replay_fact(fb: &FactBase, f: &Fact) -> Result<()> {
    for node in &f.provenance {
        replay_node(fb, f.prime, Some(&f.class), node)?;
    }
    Ok(())
}

/// Re-checks every derivation recorded in a status report, node by node,
/// without rerunning the search that produced it.
pub fn replay(fb: &FactBase, status: &AicStatus) -> Result<()> {
    for report in &status.classes {
        for node in &report.provenance {
            replay_node(fb, status.prime, Some(&report.class), node)?;
        }
        if report.realized && !report.jumps.is_realized() {
            return Err(Error::Inconsistent(format!(
                "class {} is marked realized but certifies no cover",
                report.class
            )));
        }
    }
    Ok(())
}

fn replay_node(fb: &FactBase, p: u64, class: Option<&ClassKey>, node: &ProvNode) -> Result<()> {
    let fail = |msg: String| -> Result<()> { Err(Error::Inconsistent(msg)) };
    if let Some(citation) = &node.citation {
        fb.require_citation(citation)?;
    }
    match node.rule.as_str() {
        "axiom" | "aic-base" | "sylow-cover" | "normalizer-cover" | "assumption" | "embedding" => {
            if node.citation.is_none() {
                return fail(format!("leaf '{}' lacks a citation", node.rule));
            }
            if !node.premises.is_empty() {
                return fail(format!("leaf '{}' has premises", node.rule));
            }
            if node.rule == "axiom" {
                let Some(j) = node.jump else {
                    return fail("jump axiom without a jump".into());
                };
                if let Some(key) = class {
                    check_jump(key, p, j)?;
                }
            }
            Ok(())
        }
        "jump-shift" => {
            if node.premises.len() != 1 {
                return fail("jump-shift needs exactly one premise".into());
            }
            let m = node.param("m")?;
            let r = node.param("residue")?;
            let t = node.param("threshold")?;
            if t % m != r {
                return fail(format!("threshold {t} is not congruent to {r} mod {m}"));
            }
            let premise = &node.premises[0];
            if premise.jump != Some(t) {
                return fail(format!("shift premise does not certify the threshold {t}"));
            }
            if let Some(j) = node.jump {
                if j % m != r || j < t || j % p == 0 {
                    return fail(format!("shifted jump {j} violates the progression"));
                }
            }
            replay_node(fb, p, class, premise)
        }
        "same-group-patch" => {
            if node.premises.len() != 2 {
                return fail("patch needs exactly two premises".into());
            }
            let (Some(a), Some(b)) = (node.premises[0].jump, node.premises[1].jump) else {
                return fail("patch premises must certify concrete jumps".into());
            };
            let Some(j) = node.jump else {
                return fail("patch node without a jump".into());
            };
            if a + b != j {
                return fail(format!("patched jump {j} is not the sum of {a} and {b}"));
            }
            if let Some(key) = class {
                check_jump(key, p, j)?;
            } else if j % p == 0 {
                return fail(format!("patched jump {j} is divisible by p = {p}"));
            }
            replay_node(fb, p, class, &node.premises[0])?;
            replay_node(fb, p, class, &node.premises[1])
        }
        "quotient-scaling" => {
            if node.premises.len() != 1 {
                return fail("quotient-scaling needs exactly one premise".into());
            }
            let d = node.param("d")?;
            let m0 = node.param("source_m")?;
            let Some(j0) = node.premises[0].jump else {
                return fail("scaling premise must certify a concrete jump".into());
            };
            let Some(j) = node.jump else {
                return fail("scaling node without a jump".into());
            };
            if j != j0 * d / m0.gcd(&d) {
                return fail(format!("scaled jump {j} does not match {j0} * {d} / gcd"));
            }
            if j % p == 0 {
                return fail(format!("scaled jump {j} is divisible by p = {p}"));
            }
            // The premise lives in the source class, whose key is not
            // carried by the node; structural checks only.
            replay_node(fb, p, None, &node.premises[0])
        }
        "subgroup-induction" => {
            if node.premises.is_empty() {
                return fail("induction needs premises".into());
            }
            let kinds: Vec<&str> = node.premises.iter().map(|n| n.rule.as_str()).collect();
            if !kinds.contains(&"assumption") || !kinds.contains(&"embedding") {
                return fail("induction must record its assumption and embedding".into());
            }
            for premise in &node.premises {
                replay_node(fb, p, None, premise)?;
            }
            Ok(())
        }
        "conjugate-transport" => {
            if node.premises.is_empty() {
                return fail("transport needs premises".into());
            }
            for premise in &node.premises {
                replay_node(fb, p, class, premise)?;
            }
            Ok(())
        }
        other => fail(format!("unknown derivation rule '{other}'")),
    }
}
