//! Group data: a small text format for permutation groups, constructors for
//! standard families, bundled generator sets for the Mathieu groups, and a
//! JSON fact base recording orders, maximal subgroup tables, Sylow
//! normalizer presentations, containment and purity facts, and cover axioms
//! with literature citations.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::subgrp::{is_prime, mult_order_mod};

/// Largest permutation degree the loaders accept.
pub const MAX_DEGREE: usize = 1024;

const M11_GRP: &str = include_str!("../data/groups/m11.grp");
const M12_GRP: &str = include_str!("../data/groups/m12.grp");
const M22_GRP: &str = include_str!("../data/groups/m22.grp");
const M23_GRP: &str = include_str!("../data/groups/m23.grp");
const M24_GRP: &str = include_str!("../data/groups/m24.grp");

const BUNDLED_FACTS: &str = include_str!("../data/facts/atlas.json");

/// A parsed group file: header line `NAME DEGREE [ORDER]`, then one
/// generator per line in disjoint cycle notation on 1-based points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub declared_order: Option<BigUint>,
    pub generators: Vec<Permutation>,
}

/// Parses the group file format. Blank lines and `#` comments are ignored;
/// errors carry the 1-based line number.
pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let mut header: Option<(String, usize, Option<BigUint>, usize)> = None;
    let mut generators = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match &header {
            None => {
                let mut parts = line.split_whitespace();
                let name = parts
                    .next()
                    .ok_or_else(|| Error::GroupFile {
                        line: line_no,
                        message: "missing group name".into(),
                    })?
                    .to_string();
                let degree: usize = parts
                    .next()
                    .ok_or_else(|| Error::GroupFile {
                        line: line_no,
                        message: "missing degree".into(),
                    })?
                    .parse()
                    .map_err(|_| Error::GroupFile {
                        line: line_no,
                        message: "degree is not a number".into(),
                    })?;
                if degree == 0 || degree > MAX_DEGREE {
                    return Err(Error::GroupFile {
                        line: line_no,
                        message: format!("degree must be between 1 and {MAX_DEGREE}"),
                    });
                }
                let declared_order = match parts.next() {
                    None => None,
                    Some(tok) => Some(BigUint::parse_bytes(tok.as_bytes(), 10).ok_or_else(
                        || Error::GroupFile {
                            line: line_no,
                            message: "order is not a decimal number".into(),
                        },
                    )?),
                };
                if parts.next().is_some() {
                    return Err(Error::GroupFile {
                        line: line_no,
                        message: "unexpected extra tokens after NAME DEGREE ORDER".into(),
                    });
                }
                header = Some((name, degree, declared_order, line_no));
            }
            Some((_, degree, _, _)) => {
                let perm = Permutation::parse_cycles(line, *degree).map_err(|e| {
                    Error::GroupFile {
                        line: line_no,
                        message: e.to_string(),
                    }
                })?;
                generators.push(perm);
            }
        }
    }
    let (name, degree, declared_order, _) = header.ok_or_else(|| Error::GroupFile {
        line: 1,
        message: "file has no header line".into(),
    })?;
    Ok(GroupFile {
        name,
        degree,
        declared_order,
        generators,
    })
}

/// Renders a group file back to text; `parse_group_file` inverts this.
pub fn serialize_group_file(gf: &GroupFile) -> String {
    let mut out = String::new();
    out.push_str(&gf.name);
    out.push(' ');
    out.push_str(&gf.degree.to_string());
    if let Some(ord) = &gf.declared_order {
        out.push(' ');
        out.push_str(&ord.to_string());
    }
    out.push('\n');
    for g in &gf.generators {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

impl GroupFile {
    /// Builds the group and checks any declared order.
    pub fn to_group(&self) -> Result<PermGroup> {
        let g = PermGroup::from_generators(self.degree, self.generators.clone())?;
        if let Some(expected) = &self.declared_order {
            if g.order() != expected {
                return Err(Error::Inconsistent(format!(
                    "group {} has computed order {} but the file declares {}",
                    self.name,
                    g.order(),
                    expected
                )));
            }
        }
        Ok(g)
    }
}

/// The projective special linear group PSL(2, q) for prime q >= 5, acting
/// on the projective line: points 1..q are the residues 0..q-1 and point
/// q+1 is infinity. Generated by translation, scaling by a square, and the
/// negated inversion.
pub fn construct_psl2(q: u64) -> Result<PermGroup> {
    if !is_prime(q) || q < 5 {
        return Err(Error::InvalidInput(format!(
            "PSL2 parameter must be a prime at least 5, got {q}"
        )));
    }
    let degree = (q + 1) as usize;
    if degree > MAX_DEGREE {
        return Err(Error::TooLarge(format!("degree {degree} exceeds {MAX_DEGREE}")));
    }
    let n = q as usize;
    let inf = n; // index of the point at infinity

    let mut translate = vec![0usize; degree];
    for x in 0..n {
        translate[x] = (x + 1) % n;
    }
    translate[inf] = inf;

    let root = (2..q).find(|&g| mult_order_mod(g, q) == q - 1).expect("prime has a primitive root");
    let lambda = root * root % q;
    let mut scale = vec![0usize; degree];
    for x in 0..n {
        scale[x] = (x as u64 * lambda % q) as usize;
    }
    scale[inf] = inf;

    // x -> -1/x, exchanging 0 and infinity
    let mut invert = vec![0usize; degree];
    invert[0] = inf;
    invert[inf] = 0;
    for x in 1..n {
        let xinv = mod_inverse(x as u64, q);
        invert[x] = ((q - xinv) % q) as usize;
    }

    let gens = vec![
        Permutation::from_images(translate)?,
        Permutation::from_images(scale)?,
        Permutation::from_images(invert)?,
    ];
    let g = PermGroup::from_generators(degree, gens)?;
    let expected = BigUint::from(q) * BigUint::from(q * q - 1) / BigUint::from(2u32);
    if *g.order() != expected {
        return Err(Error::Inconsistent(format!(
            "PSL2({q}) construction has order {}, expected {}",
            g.order(),
            expected
        )));
    }
    Ok(g)
}

fn mod_inverse(x: u64, q: u64) -> u64 {
    // q is prime, so x^(q-2) inverts x
    let mut acc = 1u64;
    let mut base = x % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc
}

/// The alternating group on n points, n >= 3.
pub fn construct_alternating(n: usize) -> Result<PermGroup> {
    if !(3..=MAX_DEGREE).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "alternating degree must be between 3 and {MAX_DEGREE}, got {n}"
        )));
    }
    let three = Permutation::from_cycles(&[vec![0, 1, 2]], n)?;
    let big: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
    let cyc = Permutation::from_cycles(&[big], n)?;
    let g = PermGroup::from_generators(n, vec![three, cyc])?;
    if *g.order() != factorial(n) / BigUint::from(2u32) {
        return Err(Error::Inconsistent(format!("alternating({n}) construction failed")));
    }
    Ok(g)
}

/// The symmetric group on n points, n >= 1.
pub fn construct_symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::InvalidInput(format!(
            "symmetric degree must be between 1 and {MAX_DEGREE}, got {n}"
        )));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let swap = Permutation::from_cycles(&[vec![0, 1]], n)?;
    let cyc = Permutation::from_cycles(&[(0..n).collect()], n)?;
    let g = PermGroup::from_generators(n, vec![swap, cyc])?;
    if *g.order() != factorial(n) {
        return Err(Error::Inconsistent(format!("symmetric({n}) construction failed")));
    }
    Ok(g)
}

/// The cyclic group of order n as a single n-cycle.
pub fn construct_cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::InvalidInput(format!(
            "cyclic order must be between 1 and {MAX_DEGREE}, got {n}"
        )));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let cyc = Permutation::from_cycles(&[(0..n).collect()], n)?;
    PermGroup::from_generators(n, vec![cyc])
}

fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

/// Loads a group by name: the bundled Mathieu groups M11, M12, M22, M23,
/// M24; PSL2(q) (also written L2(q)); An, Sn, Cn or Zn; and "trivial".
pub fn load_builtin(name: &str) -> Result<PermGroup> {
    let trimmed = name.trim();
    let upper = trimmed.to_ascii_uppercase();
    match upper.as_str() {
        "M11" => return parse_group_file(M11_GRP)?.to_group(),
        "M12" => return parse_group_file(M12_GRP)?.to_group(),
        "M22" => return parse_group_file(M22_GRP)?.to_group(),
        "M23" => return parse_group_file(M23_GRP)?.to_group(),
        "M24" => return parse_group_file(M24_GRP)?.to_group(),
        "TRIVIAL" | "1" => return Ok(PermGroup::trivial(1)),
        _ => {}
    }
    for prefix in ["PSL2(", "L2(", "PSL(2,"] {
        if let Some(rest) = upper.strip_prefix(prefix) {
            if let Some(num) = rest.strip_suffix(')') {
                let q: u64 = num.trim().parse().map_err(|_| {
                    Error::UnknownGroup(format!("bad PSL2 parameter in {trimmed}"))
                })?;
                return construct_psl2(q);
            }
        }
    }
    if let Some(rest) = upper.strip_prefix('A') {
        if let Ok(n) = rest.parse::<usize>() {
            return construct_alternating(n);
        }
    }
    if let Some(rest) = upper.strip_prefix('S') {
        if let Ok(n) = rest.parse::<usize>() {
            return construct_symmetric(n);
        }
    }
    if let Some(rest) = upper.strip_prefix('C').or_else(|| upper.strip_prefix('Z')) {
        if let Ok(n) = rest.parse::<usize>() {
            return construct_cyclic(n);
        }
    }
    Err(Error::UnknownGroup(trimmed.to_string()))
}

/// One maximal subgroup class in a fact table.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MaximalEntry {
    pub name: String,
    pub order: String,
    #[serde(default = "one_u32")]
    pub classes: u32,
}

fn one_u32() -> u32 {
    1
}

impl MaximalEntry {
    pub fn order_value(&self) -> Result<BigUint> {
        parse_order(&self.order, &self.name)
    }
}

/// A recorded subgroup containment, with its literature citation.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Embedding {
    pub name: String,
    pub citation: String,
}

/// An explicit permutation presentation of a Sylow normalizer.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SylowNormalizerFact {
    pub degree: usize,
    pub order: String,
    pub generators: Vec<String>,
}

impl SylowNormalizerFact {
    /// Builds the recorded normalizer and checks its declared order.
    pub fn build(&self) -> Result<PermGroup> {
        let mut gens = Vec::new();
        for s in &self.generators {
            gens.push(Permutation::parse_cycles(s, self.degree)?);
        }
        let g = PermGroup::from_generators(self.degree, gens)?;
        let expected = parse_order(&self.order, "sylow normalizer")?;
        if *g.order() != expected {
            return Err(Error::Inconsistent(format!(
                "recorded normalizer generators give order {}, declared {}",
                g.order(),
                expected
            )));
        }
        Ok(g)
    }
}

/// A subgroup witness used in purity deductions.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PurityWitness {
    pub name: String,
    pub order: String,
    pub maximal: bool,
    pub simple: bool,
    pub citation: String,
}

impl PurityWitness {
    pub fn order_value(&self) -> Result<BigUint> {
        parse_order(&self.order, &self.name)
    }
}

/// A recorded purity claim with its supporting witnesses.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PurityFact {
    pub pure: bool,
    #[serde(default)]
    pub witnesses: Vec<PurityWitness>,
    pub citation: String,
}

/// Everything recorded about one group.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFacts {
    pub order: String,
    #[serde(default)]
    pub simple: bool,
    #[serde(default)]
    pub maximal_subgroups: Option<Vec<MaximalEntry>>,
    #[serde(default)]
    pub contains: Vec<Embedding>,
    #[serde(default)]
    pub sylow_normalizers: BTreeMap<u64, SylowNormalizerFact>,
    #[serde(default)]
    pub purity: BTreeMap<u64, PurityFact>,
}

impl GroupFacts {
    pub fn order_value(&self) -> Result<BigUint> {
        parse_order(&self.order, "group")
    }
}

/// A cover existence axiom from the literature.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "kebab-case")]
pub enum CoverAxiom {
    /// A cover with metacyclic inertia of order p times complement_order
    /// exists, with the given conductor jump.
    Jump {
        group: String,
        prime: u64,
        complement_order: u64,
        jump: u64,
        citation: String,
    },
    /// Every inertia class of the group is realized by some cover (no jump
    /// data).
    Aic {
        group: String,
        prime: u64,
        citation: String,
    },
    /// A cover whose inertia is the full Sylow normalizer exists.
    NormalizerCover {
        group: String,
        prime: u64,
        citation: String,
    },
}

impl CoverAxiom {
    pub fn group(&self) -> &str {
        match self {
            CoverAxiom::Jump { group, .. }
            | CoverAxiom::Aic { group, .. }
            | CoverAxiom::NormalizerCover { group, .. } => group,
        }
    }

    pub fn prime(&self) -> u64 {
        match self {
            CoverAxiom::Jump { prime, .. }
            | CoverAxiom::Aic { prime, .. }
            | CoverAxiom::NormalizerCover { prime, .. } => *prime,
        }
    }

    pub fn citation(&self) -> &str {
        match self {
            CoverAxiom::Jump { citation, .. }
            | CoverAxiom::Aic { citation, .. }
            | CoverAxiom::NormalizerCover { citation, .. } => citation,
        }
    }
}

/// The fact base: group records, cover axioms, and the citation registry
/// they must reference.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FactBase {
    pub schema_version: u32,
    pub citations: BTreeMap<String, String>,
    #[serde(default)]
    pub aliases: BTreeMap<String, String>,
    pub groups: BTreeMap<String, GroupFacts>,
    #[serde(default)]
    pub cover_axioms: Vec<CoverAxiom>,
}

fn parse_order(text: &str, what: &str) -> Result<BigUint> {
    BigUint::parse_bytes(text.as_bytes(), 10)
        .filter(|v| !v.is_zero())
        .ok_or_else(|| Error::FactFile(format!("bad order string {text:?} for {what}")))
}

impl FactBase {
    /// Parses and validates a fact file.
    pub fn from_json(text: &str) -> Result<FactBase> {
        let fb: FactBase =
            serde_json::from_str(text).map_err(|e| Error::FactFile(e.to_string()))?;
        fb.validate()?;
        Ok(fb)
    }

    /// The fact base bundled with the crate.
    pub fn bundled() -> FactBase {
        FactBase::from_json(BUNDLED_FACTS).expect("bundled fact file is valid")
    }

    /// Resolves aliases to the canonical group name.
    pub fn canonical_name(&self, name: &str) -> String {
        match self.aliases.get(name) {
            Some(target) => target.clone(),
            None => name.to_string(),
        }
    }

    pub fn group(&self, name: &str) -> Option<&GroupFacts> {
        self.groups.get(&self.canonical_name(name))
    }

    pub fn group_order(&self, name: &str) -> Result<BigUint> {
        let facts = self
            .group(name)
            .ok_or_else(|| Error::MissingFact(format!("no record for group {name}")))?;
        facts.order_value()
    }

    pub fn maximal_table(&self, name: &str) -> Option<&[MaximalEntry]> {
        self.group(name)?.maximal_subgroups.as_deref()
    }

    pub fn sylow_normalizer(&self, name: &str, p: u64) -> Result<&SylowNormalizerFact> {
        let facts = self
            .group(name)
            .ok_or_else(|| Error::MissingFact(format!("no record for group {name}")))?;
        facts.sylow_normalizers.get(&p).ok_or_else(|| {
            Error::MissingFact(format!("no Sylow {p}-normalizer recorded for {name}"))
        })
    }

    pub fn purity(&self, name: &str, p: u64) -> Option<&PurityFact> {
        self.group(name)?.purity.get(&p)
    }

    pub fn embeddings(&self, name: &str) -> &[Embedding] {
        self.group(name).map(|g| g.contains.as_slice()).unwrap_or(&[])
    }

    pub fn axioms_for(&self, group: &str, p: u64) -> Vec<&CoverAxiom> {
        let canonical = self.canonical_name(group);
        self.cover_axioms
            .iter()
            .filter(|a| self.canonical_name(a.group()) == canonical && a.prime() == p)
            .collect()
    }

    pub fn has_citation(&self, key: &str) -> bool {
        self.citations.contains_key(key)
    }

    pub fn require_citation(&self, key: &str) -> Result<()> {
        if self.has_citation(key) {
            Ok(())
        } else {
            Err(Error::UnknownCitation(key.to_string()))
        }
    }

    /// Structural validation: alias targets exist, orders parse, maximal
    /// orders divide the group order, recorded normalizers build to their
    /// declared order with the prime dividing it exactly once, and every
    /// cited key is registered.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != 1 {
            return Err(Error::FactFile(format!(
                "unsupported schema version {}",
                self.schema_version
            )));
        }
        for (alias, target) in &self.aliases {
            if !self.groups.contains_key(target) && load_builtin(target).is_err() {
                return Err(Error::FactFile(format!(
                    "alias {alias} points to unknown group {target}"
                )));
            }
        }
        for (name, facts) in &self.groups {
            let order = facts.order_value()?;
            if let Some(table) = &facts.maximal_subgroups {
                for entry in table {
                    let sub = entry.order_value()?;
                    if !(&order % &sub).is_zero() {
                        return Err(Error::FactFile(format!(
                            "maximal subgroup {} of {name} has order {} not dividing {}",
                            entry.name, sub, order
                        )));
                    }
                    if entry.classes == 0 {
                        return Err(Error::FactFile(format!(
                            "maximal subgroup {} of {name} has zero classes",
                            entry.name
                        )));
                    }
                }
            }
            for emb in &facts.contains {
                self.require_citation(&emb.citation)?;
            }
            for (&p, nf) in &facts.sylow_normalizers {
                if !is_prime(p) {
                    return Err(Error::FactFile(format!(
                        "normalizer key {p} for {name} is not prime"
                    )));
                }
                let n = nf.build()?;
                let bp = BigUint::from(p);
                if (n.order() % &bp) != BigUint::zero()
                    || (n.order() % (&bp * &bp)).is_zero()
                {
                    return Err(Error::FactFile(format!(
                        "recorded Sylow {p}-normalizer of {name} has order {}, not divisible by {p} exactly once",
                        n.order()
                    )));
                }
                if !(&order % n.order()).is_zero() {
                    return Err(Error::FactFile(format!(
                        "normalizer order {} does not divide the order of {name}",
                        n.order()
                    )));
                }
            }
            for (&p, pf) in &facts.purity {
                if !is_prime(p) {
                    return Err(Error::FactFile(format!(
                        "purity key {p} for {name} is not prime"
                    )));
                }
                self.require_citation(&pf.citation)?;
                for w in &pf.witnesses {
                    self.require_citation(&w.citation)?;
                    let wo = w.order_value()?;
                    if !(&order % &wo).is_zero() || wo == order {
                        return Err(Error::FactFile(format!(
                            "purity witness {} of {name} must be a proper subgroup by order",
                            w.name
                        )));
                    }
                    if !(&wo % BigUint::from(p)).is_zero() {
                        return Err(Error::FactFile(format!(
                            "purity witness {} of {name} has order not divisible by {p}",
                            w.name
                        )));
                    }
                }
            }
        }
        for axiom in &self.cover_axioms {
            self.require_citation(axiom.citation())?;
            if !is_prime(axiom.prime()) {
                return Err(Error::FactFile(format!(
                    "axiom prime {} is not prime",
                    axiom.prime()
                )));
            }
            if let CoverAxiom::Jump {
                prime,
                complement_order,
                jump,
                ..
            } = axiom
            {
                if *complement_order == 0 || *jump == 0 || jump % prime == 0 {
                    return Err(Error::FactFile(
                        "jump axiom needs a positive complement order and a positive jump prime to p".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}
