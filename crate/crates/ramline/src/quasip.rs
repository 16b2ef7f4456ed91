//! Predicates about generation by p-power elements: the p-generated subgroup
//! p(G), the purity subgroup G(S) built from a fixed Sylow p-subgroup, and
//! the minimal number of well-behaved subgroups needed to generate G.
//!
//! The purity subgroup is computed by a scan over the conjugates of S. For a
//! Sylow subgroup of prime order p, every nontrivial subgroup H with a Sylow
//! p-subgroup inside S contains S itself, and a quasi-p H is generated by its
//! Sylow p-subgroups, all conjugates of S. Hence
//!
//!   G(S) = < S^g : g in G, <S, S^g> != G >,
//!
//! which needs one two-generator closure per conjugate instead of a walk over
//! the full subgroup lattice. An exhaustive small-group oracle for the
//! lattice definition lives alongside the scan so the reduction stays
//! testable.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::atlas::FactBase;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::subgrp::{is_prime, normal_closure};

/// Default cap on the number of two-generator closures a purity scan or
/// weight search may build.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Fixed seed for the random p-element search in `p_part`.
const P_PART_SEED: u64 = 0x70_50_41_52;

/// Number of random draws `p_part` makes before giving up.
const P_PART_DRAWS: u64 = 200_000;

/// Conjugates are processed in parallel batches of this size, merged in
/// deterministic orbit order.
const SCAN_BATCH: usize = 1024;

/// Element count cap for the exhaustive subgroup enumeration oracle.
const ORACLE_LIMIT: usize = 5000;

/// Largest multiplicity of p in n, as an exponent.
fn p_valuation(n: &BigUint, p: u64) -> u32 {
    let bp = BigUint::from(p);
    let mut rest = n.clone();
    let mut v = 0;
    while (&rest % &bp).is_zero() {
        rest /= &bp;
        v += 1;
    }
    v
}

/// The p-power part of a single element: x raised to the prime-to-p part of
/// its order. Identity if p does not divide the order of x.
fn p_power_part(x: &Permutation, p: u64) -> Permutation {
    let mut ord = x.order();
    let p = p as u128;
    while ord % p == 0 {
        ord /= p;
    }
    x.pow(ord)
}

fn p_part_inner(g: &PermGroup, p: u64) -> Result<PermGroup> {
    let target = p_valuation(g.order(), p);
    if target == 0 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    // Seed with the p-power parts of the generators, then draw random
    // elements until the closure contains a full Sylow p-subgroup. A normal
    // subgroup with full p-valuation contains every Sylow p-subgroup and
    // therefore every p-power element of G; since it is generated by
    // conjugates of p-power elements it equals p(G) exactly.
    let mut seeds: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| p_power_part(x, p))
        .filter(|y| !y.is_identity())
        .collect();
    let mut k = if seeds.is_empty() {
        PermGroup::trivial(g.degree())
    } else {
        normal_closure(g, &PermGroup::from_generators(g.degree(), seeds.clone())?)?
    };
    let mut rng = ChaCha8Rng::seed_from_u64(P_PART_SEED ^ p);
    let mut draws = 0;
    while p_valuation(k.order(), p) < target {
        if draws >= P_PART_DRAWS {
            return Err(Error::BudgetExhausted {
                budget: P_PART_DRAWS,
                context: format!("p-element search for the {p}-generated subgroup"),
            });
        }
        draws += 1;
        let y = p_power_part(&g.random_element(&mut rng), p);
        if y.is_identity() || k.contains(&y) {
            continue;
        }
        seeds.push(y);
        k = normal_closure(g, &PermGroup::from_generators(g.degree(), seeds.clone())?)?;
    }
    Ok(k)
}

/// The subgroup of G generated by all elements of p-power order. Trivial
/// when p does not divide |G|.
pub fn p_part(g: &PermGroup, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let k = p_part_inner(g, p)?;
    // The construction is idempotent: recomputing inside the result must
    // change nothing, otherwise some closure step above was unsound.
    let again = p_part_inner(&k, p)?;
    if again.order() != k.order() {
        return Err(Error::Inconsistent(format!(
            "p-generated subgroup not idempotent at p = {p}: {} then {}",
            k.order(),
            again.order()
        )));
    }
    Ok(k)
}

/// True when G is generated by its elements of p-power order.
pub fn is_quasi_p(g: &PermGroup, p: u64) -> Result<bool> {
    Ok(p_part(g, p)?.order() == g.order())
}

/// Canonical representative for the cyclic group generated by `tau`: the
/// power with the lexicographically least image vector. Conjugate subgroups
/// get equal representatives exactly when they are equal.
fn canonical_generator(tau: &Permutation, p: u64) -> Permutation {
    let mut best = tau.clone();
    let mut cur = tau.clone();
    for _ in 2..p {
        cur = &cur * tau;
        if cur.images() < best.images() {
            best = cur.clone();
        }
    }
    best
}

fn key_of(perm: &Permutation) -> Vec<u8> {
    perm.images().iter().map(|&x| x as u8).collect()
}

/// Checks the preconditions shared by the conjugate scan entry points:
/// p prime, |S| = p, p exactly divides |G|, and S inside G.
fn check_scan_inputs(g: &PermGroup, s: &PermGroup, p: u64) -> Result<Permutation> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if g.degree() > 255 {
        return Err(Error::TooLarge(format!(
            "degree {} exceeds 255, the conjugate scan key limit",
            g.degree()
        )));
    }
    if *s.order() != BigUint::from(p) {
        return Err(Error::InvalidInput(format!(
            "expected a subgroup of order {p}, got order {}",
            s.order()
        )));
    }
    let bp = BigUint::from(p);
    if (g.order() % &bp) != BigUint::zero() {
        return Err(Error::PrimeDoesNotDivide { p });
    }
    if (g.order() % (&bp * &bp)).is_zero() {
        return Err(Error::SylowNotCyclicOfOrderP { p });
    }
    let tau = s
        .generators()
        .iter()
        .find(|t| !t.is_identity())
        .cloned()
        .ok_or_else(|| Error::InvalidInput("Sylow subgroup has no generator".into()))?;
    if !g.contains(&tau) {
        return Err(Error::NotASubgroup(
            "Sylow subgroup does not lie in the ambient group".into(),
        ));
    }
    Ok(canonical_generator(&tau, p))
}

/// Result of scanning the conjugates of a Sylow subgroup of order p.
struct ScanOutcome {
    /// Join of every conjugate whose pairwise closure with the base stays
    /// proper; this is the purity subgroup when the scan completed.
    span: PermGroup,
    /// True when the scan stopped because the span already reached G.
    hit_whole_group: bool,
    /// Canonical generators of the contributing conjugates.
    contributors: Vec<Permutation>,
}

/// Walks the conjugation orbit of S in breadth-first order, joining each
/// conjugate pairwise with S. Parallel within fixed-size batches; the merge
/// order is the deterministic orbit order. `early_exit` stops the walk once
/// the accumulated span is all of G (enough to answer purity, not enough to
/// return the exact subgroup for the contributors not yet seen).
fn conjugate_scan(
    g: &PermGroup,
    tau: &Permutation,
    p: u64,
    budget: u64,
    early_exit: bool,
) -> Result<ScanOutcome> {
    let degree = g.degree();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue: Vec<Permutation> = vec![tau.clone()];
    seen.insert(key_of(tau));
    let mut next = 0usize;
    let mut joins: u64 = 0;

    let mut span = PermGroup::trivial(degree);
    let mut contributors = Vec::new();
    let mut hit_whole_group = false;

    while next < queue.len() && !hit_whole_group {
        let end = (next + SCAN_BATCH).min(queue.len());
        joins += (end - next) as u64;
        if joins > budget {
            return Err(Error::BudgetExhausted {
                budget,
                context: format!("conjugate scan after {} of {} known conjugates", next, queue.len()),
            });
        }
        let batch: &[Permutation] = &queue[next..end];
        let proper: Vec<bool> = batch
            .par_iter()
            .map(|t| {
                let join = PermGroup::from_generators(degree, vec![tau.clone(), t.clone()])?;
                Ok(join.order() < g.order())
            })
            .collect::<Result<Vec<bool>>>()?;
        for (t, is_proper) in batch.iter().zip(proper) {
            if is_proper {
                if !span.contains(t) {
                    let mut gens = span.generators().to_vec();
                    gens.push(t.clone());
                    span = PermGroup::from_generators(degree, gens)?;
                }
                contributors.push(t.clone());
                if early_exit && span.order() == g.order() {
                    hit_whole_group = true;
                    break;
                }
            }
        }
        // Expand the frontier after judging it, so the queue grows in plain
        // breadth-first order.
        for i in next..end {
            let t = queue[i].clone();
            for gen in g.generators() {
                let c = canonical_generator(&t.conjugated_by(gen), p);
                let key = key_of(&c);
                if seen.insert(key) {
                    queue.push(c);
                }
            }
        }
        next = end;
    }
    Ok(ScanOutcome {
        span,
        hit_whole_group,
        contributors,
    })
}

/// The subgroup generated by all proper quasi-p subgroups of G whose Sylow
/// p-subgroup lies in S, for S a Sylow subgroup of prime order p.
pub fn g_of_s(g: &PermGroup, s: &PermGroup, p: u64) -> Result<PermGroup> {
    g_of_s_budgeted(g, s, p, DEFAULT_BUDGET)
}

/// As `g_of_s` with an explicit cap on closure computations.
pub fn g_of_s_budgeted(g: &PermGroup, s: &PermGroup, p: u64, budget: u64) -> Result<PermGroup> {
    let tau = check_scan_inputs(g, s, p)?;
    let out = conjugate_scan(g, &tau, p, budget, true)?;
    if out.hit_whole_group {
        // The contributors already generate G; the remaining conjugates can
        // only confirm that.
        return Ok(g.clone());
    }
    Ok(out.span)
}

/// True when the purity subgroup G(S) is proper in G.
pub fn is_p_pure(g: &PermGroup, s: &PermGroup, p: u64) -> Result<bool> {
    is_p_pure_budgeted(g, s, p, DEFAULT_BUDGET)
}

/// As `is_p_pure` with an explicit cap on closure computations.
pub fn is_p_pure_budgeted(g: &PermGroup, s: &PermGroup, p: u64, budget: u64) -> Result<bool> {
    Ok(g_of_s_budgeted(g, s, p, budget)?.order() < g.order())
}

/// Every subgroup of g, found by closing under single-element extensions.
/// Errors with `TooLarge` when |G| exceeds the oracle element cap.
pub fn enumerate_all_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    if g.degree() > 255 {
        return Err(Error::TooLarge(format!(
            "degree {} exceeds 255, the enumeration key limit",
            g.degree()
        )));
    }
    let all = g.elements_bounded(ORACLE_LIMIT)?;
    let mut found: HashSet<Vec<u8>> = HashSet::new();
    let mut out: Vec<PermGroup> = Vec::new();
    let mut queue: Vec<(PermGroup, Vec<Permutation>)> = Vec::new();

    let subgroup_key = |elements: &[Permutation]| -> Vec<u8> {
        let mut keys: Vec<Vec<u8>> = elements.iter().map(key_of).collect();
        keys.sort();
        keys.concat()
    };

    let trivial = PermGroup::trivial(g.degree());
    let trivial_elements = vec![Permutation::identity(g.degree())];
    found.insert(subgroup_key(&trivial_elements));
    queue.push((trivial.clone(), trivial_elements));
    out.push(trivial);

    let mut next = 0;
    while next < queue.len() {
        let (h, h_elements) = queue[next].clone();
        next += 1;
        if h.order() == g.order() {
            continue;
        }
        // Extensions <H, x> and <H, hx> agree, so one closure per coset of H
        // suffices.
        let mut coset_seen: HashSet<Vec<u8>> = h_elements.iter().map(key_of).collect();
        for x in &all {
            if !coset_seen.insert(key_of(x)) {
                continue;
            }
            for hh in &h_elements {
                coset_seen.insert(key_of(&(hh * x)));
            }
            let mut gens = h.generators().to_vec();
            gens.push(x.clone());
            let k = PermGroup::from_generators(g.degree(), gens)?;
            let k_elements = k.elements_bounded(ORACLE_LIMIT)?;
            if found.insert(subgroup_key(&k_elements)) {
                out.push(k.clone());
                queue.push((k, k_elements));
            }
        }
    }
    Ok(out)
}

/// The purity subgroup computed straight from its definition: enumerate
/// every subgroup, keep the proper quasi-p ones whose Sylow p-subgroup lies
/// in S, and join them. Small groups only; this is the oracle guarding the
/// conjugate scan.
pub fn g_of_s_literal(g: &PermGroup, s: &PermGroup, p: u64) -> Result<PermGroup> {
    let tau = check_scan_inputs(g, s, p)?;
    let bp = BigUint::from(p);
    let mut gens: Vec<Permutation> = Vec::new();
    for h in enumerate_all_subgroups(g)? {
        if h.order() == g.order() {
            continue;
        }
        // A Sylow p-subgroup of H lies in S exactly when either p does not
        // divide |H| (the trivial subgroup is the Sylow) or S itself is one,
        // which for |S| = p means S is a subgroup of H.
        let sylow_inside = if (h.order() % &bp).is_zero() {
            h.contains(&tau)
        } else {
            true
        };
        if sylow_inside && is_quasi_p(&h, p)? {
            gens.extend(h.generators().iter().cloned());
        }
    }
    if gens.is_empty() {
        return Ok(PermGroup::trivial(g.degree()));
    }
    PermGroup::from_generators(g.degree(), gens)
}

/// Reads a recorded purity verdict and replays the group-theoretic argument
/// justifying it from the witness data, rather than trusting the flag.
///
/// Both supported arguments produce "not pure". Each witness is a proper
/// subgroup whose order p divides, simple (hence generated by its p-power
/// elements, the subgroup they generate being normal and nontrivial), so
/// after conjugating its Sylow p-subgroup onto S it is a proper quasi-p
/// subgroup counted by G(S). Then:
///
/// - two maximal witnesses of distinct orders cannot be equal and a maximal
///   subgroup joined with anything outside it is all of G;
/// - a maximal witness K and a non-maximal witness H with |H| not dividing
///   |K| cannot nest by Lagrange, and the join of the maximal K with a
///   subgroup outside it is again all of G.
pub fn purity_from_facts(fb: &FactBase, name: &str, p: u64) -> Result<bool> {
    let fact = fb
        .purity(name, p)
        .ok_or_else(|| Error::MissingFact(format!("no purity record for {name} at p = {p}")))?;
    fb.require_citation(&fact.citation)?;
    if fact.pure {
        return Err(Error::MissingFact(format!(
            "no replayable argument for a recorded purity of {name} at p = {p}"
        )));
    }
    let g_order = fb.group_order(name)?;
    let bp = BigUint::from(p);
    for w in &fact.witnesses {
        fb.require_citation(&w.citation)?;
        let order = w.order_value()?;
        if !w.simple || (&order % &bp) != BigUint::zero() || order >= g_order {
            return Err(Error::Inconsistent(format!(
                "witness {} cannot stand in for a proper quasi-{p} subgroup of {name}",
                w.name
            )));
        }
    }
    let orders: Vec<BigUint> = fact
        .witnesses
        .iter()
        .map(|w| w.order_value())
        .collect::<Result<_>>()?;
    for (i, a) in fact.witnesses.iter().enumerate() {
        for (j, b) in fact.witnesses.iter().enumerate() {
            if i == j {
                continue;
            }
            let two_maximals = a.maximal && b.maximal && orders[i] != orders[j];
            let maximal_plus_outsider =
                a.maximal && !b.maximal && !(&orders[i] % &orders[j]).is_zero();
            if two_maximals || maximal_plus_outsider {
                return Ok(false);
            }
        }
    }
    Err(Error::Inconsistent(format!(
        "purity witnesses for {name} at p = {p} fit no replayable argument"
    )))
}

/// Minimal number of quasi-p, p-pure subgroups, each containing S as a Sylow
/// p-subgroup, needed to generate G. Best effort: candidates are seeded from
/// pairwise Sylow-conjugate closures and the search gives up (None) past
/// pairs of candidates or when the budget runs out.
pub fn p_weight(g: &PermGroup, s: &PermGroup, p: u64, budget: u64) -> Result<Option<u32>> {
    let tau = check_scan_inputs(g, s, p)?;
    if !is_quasi_p(g, p)? {
        // Any family of quasi-p subgroups generates a quasi-p group, so no
        // count exists.
        return Ok(None);
    }
    let scan = conjugate_scan(g, &tau, p, budget, false)?;
    if scan.span.order() < g.order() {
        // G itself is quasi-p and p-pure: one subgroup suffices.
        return Ok(Some(1));
    }

    // Candidate generators: the p-generated parts of the proper pairwise
    // closures. Each contains S, is quasi-p by idempotence, and is kept only
    // if p-pure.
    let mut candidates: Vec<PermGroup> = Vec::new();
    'outer: for t in &scan.contributors {
        if candidates.len() >= 64 {
            break;
        }
        let join = PermGroup::from_generators(g.degree(), vec![tau.clone(), t.clone()])?;
        let cand = p_part(&join, p)?;
        if cand.order() <= s.order() {
            continue;
        }
        for known in &candidates {
            if known.order() == cand.order() && known.contains_group(&cand) {
                continue 'outer;
            }
        }
        let cand_s = PermGroup::from_generators(g.degree(), vec![tau.clone()])?;
        if is_p_pure_budgeted(&cand, &cand_s, p, budget)? {
            candidates.push(cand);
        }
    }
    for i in 0..candidates.len() {
        for j in (i + 1)..candidates.len() {
            let mut gens = candidates[i].generators().to_vec();
            gens.extend(candidates[j].generators().iter().cloned());
            if PermGroup::from_generators(g.degree(), gens)?.order() == g.order() {
                return Ok(Some(2));
            }
        }
    }
    Ok(None)
}

/// How the figures in a `QuasiPReport` were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Permutation computation on the group itself.
    Computed,
    /// Replayed from recorded facts about a group too large to scan.
    FactsDerived,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Computed => write!(f, "computed"),
            Method::FactsDerived => write!(f, "facts-derived"),
        }
    }
}

/// Summary of the quasi-p and purity analysis of one group at one prime.
#[derive(Clone, Debug)]
pub struct QuasiPReport {
    pub group: String,
    pub p: u64,
    pub pg_order: BigUint,
    pub is_quasi_p: bool,
    pub gs_order: BigUint,
    pub is_p_pure: bool,
    pub p_weight: Option<u32>,
    pub method: Method,
}

impl QuasiPReport {
    /// Internal consistency checks tying the fields together.
    fn validate(&self, g_order: &BigUint) -> Result<()> {
        if self.is_quasi_p != (&self.pg_order == g_order) {
            return Err(Error::Inconsistent("quasi-p flag contradicts p(G) order".into()));
        }
        if self.is_p_pure && &self.gs_order >= g_order {
            return Err(Error::Inconsistent("purity flag contradicts G(S) order".into()));
        }
        if let Some(w) = self.p_weight {
            if (w == 1) != self.is_p_pure {
                return Err(Error::Inconsistent("weight 1 must match purity".into()));
            }
        }
        Ok(())
    }
}

/// Full analysis of a permutation group: p(G), G(S), purity, and weight.
pub fn analyze(g: &PermGroup, name: &str, p: u64, budget: u64) -> Result<QuasiPReport> {
    let pg = p_part(g, p)?;
    let s = crate::subgrp::sylow_p(g, p)?;
    let gs = g_of_s_budgeted(g, &s, p, budget)?;
    let report = QuasiPReport {
        group: name.to_string(),
        p,
        pg_order: pg.order().clone(),
        is_quasi_p: pg.order() == g.order(),
        gs_order: gs.order().clone(),
        is_p_pure: gs.order() < g.order(),
        p_weight: p_weight(g, &s, p, budget)?,
        method: Method::Computed,
    };
    report.validate(g.order())?;
    Ok(report)
}

/// Analysis replayed from recorded facts, for groups with no workable
/// permutation representation here. Quasi-p follows from simplicity with
/// p dividing the order; purity comes from `purity_from_facts`.
pub fn analyze_from_facts(fb: &FactBase, name: &str, p: u64) -> Result<QuasiPReport> {
    let facts = fb
        .group(name)
        .ok_or_else(|| Error::MissingFact(format!("no record for group {name}")))?;
    let g_order = facts.order_value()?;
    let bp = BigUint::from(p);
    if !facts.simple || (&g_order % &bp) != BigUint::zero() {
        return Err(Error::MissingFact(format!(
            "quasi-{p} status of {name} is not derivable from the recorded facts"
        )));
    }
    let pure = purity_from_facts(fb, name, p)?;
    let report = QuasiPReport {
        group: fb.canonical_name(name),
        p,
        pg_order: g_order.clone(),
        is_quasi_p: true,
        gs_order: if pure { BigUint::one() } else { g_order.clone() },
        is_p_pure: pure,
        p_weight: None,
        method: Method::FactsDerived,
    };
    report.validate(&g_order)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{construct_alternating, construct_cyclic, construct_psl2, load_builtin};
    use crate::subgrp::{normalizer, sylow_p};

    fn symmetric3() -> PermGroup {
        let a = Permutation::parse_cycles("(1,2,3)", 3).unwrap();
        let b = Permutation::parse_cycles("(1,2)", 3).unwrap();
        PermGroup::from_generators(3, vec![a, b]).unwrap()
    }

    #[test]
    fn p_part_small_examples() {
        let s3 = symmetric3();
        let p3 = p_part(&s3, 3).unwrap();
        assert_eq!(*p3.order(), BigUint::from(3u32));
        let p2 = p_part(&s3, 2).unwrap();
        assert_eq!(p2.order(), s3.order());

        let c6 = construct_cyclic(6).unwrap();
        assert_eq!(*p_part(&c6, 2).unwrap().order(), BigUint::from(2u32));
        assert_eq!(*p_part(&c6, 3).unwrap().order(), BigUint::from(3u32));
        assert_eq!(*p_part(&c6, 5).unwrap().order(), BigUint::from(1u32));

        assert!(p_part(&c6, 4).is_err());
    }

    #[test]
    fn quasi_p_flags() {
        let a5 = construct_alternating(5).unwrap();
        assert!(is_quasi_p(&a5, 5).unwrap());
        assert!(is_quasi_p(&a5, 3).unwrap());
        assert!(is_quasi_p(&a5, 2).unwrap());
        assert!(!is_quasi_p(&symmetric3(), 3).unwrap());
        let m11 = load_builtin("M11").unwrap();
        assert!(is_quasi_p(&m11, 11).unwrap());
    }

    #[test]
    fn subgroup_enumeration_counts() {
        assert_eq!(enumerate_all_subgroups(&symmetric3()).unwrap().len(), 6);
        let c6 = construct_cyclic(6).unwrap();
        assert_eq!(enumerate_all_subgroups(&c6).unwrap().len(), 4);
        let a5 = construct_alternating(5).unwrap();
        assert_eq!(enumerate_all_subgroups(&a5).unwrap().len(), 59);
    }

    #[test]
    fn purity_subgroup_on_a5() {
        let a5 = construct_alternating(5).unwrap();

        // At p = 5 the only proper subgroups counted are the Sylow itself
        // and the trivial group, so G(S) = S and A5 is 5-pure.
        let s5 = sylow_p(&a5, 5).unwrap();
        let gs5 = g_of_s(&a5, &s5, 5).unwrap();
        assert_eq!(*gs5.order(), BigUint::from(5u32));
        assert!(is_p_pure(&a5, &s5, 5).unwrap());
        assert_eq!(gs5.order(), g_of_s_literal(&a5, &s5, 5).unwrap().order());

        // At p = 3 the two tetrahedral subgroups through S join to all of
        // A5, so purity fails.
        let s3 = sylow_p(&a5, 3).unwrap();
        let gs3 = g_of_s(&a5, &s3, 3).unwrap();
        assert_eq!(gs3.order(), a5.order());
        assert!(!is_p_pure(&a5, &s3, 3).unwrap());
        assert_eq!(gs3.order(), g_of_s_literal(&a5, &s3, 3).unwrap().order());
    }

    #[test]
    fn purity_subgroup_on_psl2_11() {
        let g = construct_psl2(11).unwrap();
        let s = sylow_p(&g, 11).unwrap();
        let gs = g_of_s(&g, &s, 11).unwrap();
        assert_eq!(*gs.order(), BigUint::from(11u32));
        assert!(is_p_pure(&g, &s, 11).unwrap());
    }

    #[test]
    fn purity_scan_sanity_checks() {
        // G(S) contains the p-part of the Sylow normalizer and is normalized
        // by it.
        let a5 = construct_alternating(5).unwrap();
        let s = sylow_p(&a5, 3).unwrap();
        let gs = g_of_s(&a5, &s, 3).unwrap();
        let n = normalizer(&a5, &s).unwrap();
        let n_p = p_part(&n, 3).unwrap();
        assert!(gs.contains_group(&n_p));
        for gen in n.generators() {
            for t in gs.generators() {
                assert!(gs.contains(&t.conjugated_by(gen)));
            }
        }
    }

    #[test]
    fn weight_examples() {
        let a5 = construct_alternating(5).unwrap();
        let s5 = sylow_p(&a5, 5).unwrap();
        assert_eq!(p_weight(&a5, &s5, 5, DEFAULT_BUDGET).unwrap(), Some(1));

        // Two tetrahedral subgroups through a fixed Sylow 3-subgroup
        // generate A5, and each is quasi-3 and 3-pure.
        let s3 = sylow_p(&a5, 3).unwrap();
        assert_eq!(p_weight(&a5, &s3, 3, DEFAULT_BUDGET).unwrap(), Some(2));

        let g = construct_psl2(11).unwrap();
        let s = sylow_p(&g, 11).unwrap();
        assert_eq!(p_weight(&g, &s, 11, DEFAULT_BUDGET).unwrap(), Some(1));
    }

    #[test]
    fn facts_mode_purity() {
        let fb = FactBase::bundled();
        assert!(!purity_from_facts(&fb, "M24", 11).unwrap());
        assert!(!purity_from_facts(&fb, "M24", 23).unwrap());
        assert!(matches!(
            purity_from_facts(&fb, "M11", 11),
            Err(Error::MissingFact(_))
        ));

        let report = analyze_from_facts(&fb, "M24", 11).unwrap();
        assert!(report.is_quasi_p);
        assert!(!report.is_p_pure);
        assert_eq!(report.method, Method::FactsDerived);
    }

    #[test]
    fn computed_report_on_psl2_11() {
        let g = construct_psl2(11).unwrap();
        let report = analyze(&g, "PSL2(11)", 11, DEFAULT_BUDGET).unwrap();
        assert!(report.is_quasi_p);
        assert!(report.is_p_pure);
        assert_eq!(report.gs_order, BigUint::from(11u32));
        assert_eq!(report.p_weight, Some(1));
        assert_eq!(report.method, Method::Computed);
    }
}
