//! Subgroup algorithms: Sylow subgroups of prime order, normalizers,
//! centralizers, normal closures, conjugacy tests, and the metacyclic
//! structure of groups with a normal Sylow subgroup of prime order.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::atlas::FactBase;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Largest subgroup that element-by-element routines will enumerate.
const ELEMENT_LIMIT: usize = 200_000;

/// Fixed seed for the random element search in `sylow_p`.
const SYLOW_SEED: u64 = 0x53_59_4c_31;

/// Number of random draws `sylow_p` makes before giving up.
const SYLOW_DRAWS: u64 = 200_000;

/// True when every generator of `h` lies in `g`.
pub fn is_subgroup(g: &PermGroup, h: &PermGroup) -> bool {
    g.degree() == h.degree() && g.contains_group(h)
}

fn ensure_subgroup(g: &PermGroup, h: &PermGroup, what: &str) -> Result<()> {
    if is_subgroup(g, h) {
        Ok(())
    } else {
        Err(Error::NotASubgroup(format!(
            "{what}: generators do not all lie in the ambient group"
        )))
    }
}

/// Deterministic primality test for 64-bit inputs (trial division).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Multiplicative order of `a` modulo the prime `p`.
pub fn mult_order_mod(a: u64, p: u64) -> u64 {
    let a = a % p;
    assert!(a != 0, "order of 0 mod p is undefined");
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = x * a % p;
        k += 1;
    }
    k
}

/// A Sylow p-subgroup of `g`, for primes dividing the order exactly once.
///
/// The search draws seeded random elements and powers one with order
/// divisible by p up to an element of order exactly p, so repeated runs
/// return the same subgroup.
pub fn sylow_p(g: &PermGroup, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let bp = BigUint::from(p);
    if (g.order() % &bp) != BigUint::zero() {
        return Err(Error::PrimeDoesNotDivide { p });
    }
    if (g.order() % (&bp * &bp)).is_zero() {
        return Err(Error::SylowNotCyclicOfOrderP { p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SYLOW_SEED ^ p);
    for _ in 0..SYLOW_DRAWS {
        let x = g.random_element(&mut rng);
        let ord = x.order();
        if ord % (p as u128) == 0 {
            let tau = x.pow(ord / p as u128);
            debug_assert_eq!(tau.order(), p as u128);
            return PermGroup::from_generators(g.degree(), vec![tau]);
        }
    }
    Err(Error::BudgetExhausted {
        budget: SYLOW_DRAWS,
        context: format!("no element of order divisible by {p} found"),
    })
}

/// Canonical hashable fingerprint of a conjugated subgroup.
#[derive(Clone, PartialEq, Eq, Hash)]
enum SubKey {
    /// Minimal image vector over the nontrivial powers of a generator of a
    /// cyclic group of prime order.
    CyclicPrime(Vec<u8>),
    /// Sorted image vectors of every element.
    Elements(Vec<Vec<u8>>),
}

fn compress(images: &[u32]) -> Vec<u8> {
    images.iter().map(|&x| x as u8).collect()
}

/// Computes canonical keys for conjugates `t h t^-1` of a fixed subgroup.
struct Keyer {
    kind: KeyerKind,
}

enum KeyerKind {
    CyclicPrime { tau: Permutation, p: u64 },
    Elements(Vec<Permutation>),
}

/// Minimal image vector among `c, c^2, ..., c^(p-1)`.
fn min_power_key(c: &Permutation, p: u64) -> Vec<u8> {
    let mut best = compress(c.images());
    let mut acc = c.clone();
    for _ in 2..p {
        acc = &acc * c;
        let v = compress(acc.images());
        if v < best {
            best = v;
        }
    }
    best
}

impl Keyer {
    fn new(h: &PermGroup) -> Result<Keyer> {
        if h.degree() > 255 {
            return Err(Error::TooLarge(
                "conjugacy keys require degree at most 255".into(),
            ));
        }
        if let Some(p) = h.order().to_u64() {
            if is_prime(p) {
                let tau = h
                    .generators()
                    .iter()
                    .find(|x| !x.is_identity())
                    .cloned()
                    .expect("nontrivial group has a nontrivial generator");
                return Ok(Keyer {
                    kind: KeyerKind::CyclicPrime { tau, p },
                });
            }
        }
        let els = h.elements_bounded(ELEMENT_LIMIT)?;
        Ok(Keyer {
            kind: KeyerKind::Elements(els),
        })
    }

    /// Key of `t h t^-1`.
    fn key_of_conjugate(&self, t: &Permutation) -> SubKey {
        match &self.kind {
            KeyerKind::CyclicPrime { tau, p } => {
                SubKey::CyclicPrime(min_power_key(&tau.conjugated_by(t), *p))
            }
            KeyerKind::Elements(els) => {
                let mut v: Vec<Vec<u8>> =
                    els.iter().map(|e| compress(e.conjugated_by(t).images())).collect();
                v.sort_unstable();
                SubKey::Elements(v)
            }
        }
    }

    /// Key of an independently presented subgroup of the same order.
    fn key_of_group(&self, h: &PermGroup) -> Result<SubKey> {
        match &self.kind {
            KeyerKind::CyclicPrime { p, .. } => {
                let tau = h
                    .generators()
                    .iter()
                    .find(|x| !x.is_identity())
                    .ok_or_else(|| Error::InvalidInput("trivial group has no cyclic key".into()))?;
                Ok(SubKey::CyclicPrime(min_power_key(tau, *p)))
            }
            KeyerKind::Elements(_) => {
                let els = h.elements_bounded(ELEMENT_LIMIT)?;
                let mut v: Vec<Vec<u8>> = els.iter().map(|e| compress(e.images())).collect();
                v.sort_unstable();
                Ok(SubKey::Elements(v))
            }
        }
    }
}

/// The normalizer of `h` in `g`, by orbit-stabilizer over the conjugation
/// action on subgroups. Schreier generators that sift outside the running
/// stabilizer are added incrementally, so the chain is rebuilt at most
/// logarithmically many times.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    ensure_subgroup(g, h, "normalizer")?;
    if h.is_trivial() || h.order() == g.order() {
        return Ok(g.clone());
    }
    let keyer = Keyer::new(h)?;
    let mut stab_gens: Vec<Permutation> =
        h.generators().iter().filter(|x| !x.is_identity()).cloned().collect();
    let mut stab = h.clone();

    let identity = Permutation::identity(g.degree());
    let mut keys: HashMap<SubKey, usize> = HashMap::new();
    keys.insert(keyer.key_of_conjugate(&identity), 0);
    let mut reps: Vec<Permutation> = vec![identity];

    let mut i = 0;
    while i < reps.len() {
        for gen in g.generators() {
            let t2 = gen * &reps[i];
            let key = keyer.key_of_conjugate(&t2);
            match keys.get(&key) {
                None => {
                    keys.insert(key, reps.len());
                    reps.push(t2);
                }
                Some(&j) => {
                    let schreier = &reps[j].inverse() * &t2;
                    if !stab.contains(&schreier) {
                        stab_gens.push(schreier);
                        stab = PermGroup::from_generators(g.degree(), stab_gens.clone())?;
                    }
                }
            }
        }
        i += 1;
    }

    let orbit_len = BigUint::from(reps.len());
    if &orbit_len * stab.order() != *g.order() {
        return Err(Error::Inconsistent(format!(
            "orbit-stabilizer mismatch: orbit {} times stabilizer {} is not {}",
            reps.len(),
            stab.order(),
            g.order()
        )));
    }
    Ok(stab)
}

/// The centralizer of `h` in `g`, filtered out of the normalizer's elements.
pub fn centralizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    ensure_subgroup(g, h, "centralizer")?;
    let n = normalizer(g, h)?;
    let els = n.elements_bounded(ELEMENT_LIMIT)?;
    let mut cent = PermGroup::trivial(g.degree());
    let mut gens: Vec<Permutation> = Vec::new();
    for x in els {
        if cent.contains(&x) {
            continue;
        }
        if h.generators().iter().all(|hg| &(&x * hg) == &(hg * &x)) {
            gens.push(x);
            cent = PermGroup::from_generators(g.degree(), gens.clone())?;
        }
    }
    Ok(cent)
}

/// The smallest normal subgroup of `g` containing `h`.
pub fn normal_closure(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    ensure_subgroup(g, h, "normal closure")?;
    let mut gens: Vec<Permutation> =
        h.generators().iter().filter(|x| !x.is_identity()).cloned().collect();
    let mut closure = h.clone();
    let mut queue: Vec<Permutation> = gens.clone();
    while let Some(x) = queue.pop() {
        for gen in g.generators() {
            let y = x.conjugated_by(gen);
            if !closure.contains(&y) {
                gens.push(y.clone());
                closure = PermGroup::from_generators(g.degree(), gens.clone())?;
                queue.push(y);
            }
        }
    }
    Ok(closure)
}

/// Some `t` with `t h1 t^-1 = h2`, or None when the subgroups are not
/// conjugate in `g`. The conjugation orbit is walked breadth-first, so the
/// witness is deterministic.
pub fn conjugacy_witness(
    g: &PermGroup,
    h1: &PermGroup,
    h2: &PermGroup,
) -> Result<Option<Permutation>> {
    ensure_subgroup(g, h1, "conjugacy witness")?;
    ensure_subgroup(g, h2, "conjugacy witness")?;
    if h1.order() != h2.order() {
        return Ok(None);
    }
    if h1.is_trivial() {
        return Ok(Some(Permutation::identity(g.degree())));
    }
    let keyer = Keyer::new(h1)?;
    let target = keyer.key_of_group(h2)?;

    let identity = Permutation::identity(g.degree());
    let start = keyer.key_of_conjugate(&identity);
    if start == target {
        return Ok(Some(identity));
    }
    let mut keys: HashSet<SubKey> = HashSet::new();
    keys.insert(start);
    let mut reps: Vec<Permutation> = vec![identity];
    let mut i = 0;
    while i < reps.len() {
        for gen in g.generators() {
            let t2 = gen * &reps[i];
            let key = keyer.key_of_conjugate(&t2);
            if key == target {
                return Ok(Some(t2));
            }
            if keys.insert(key) {
                reps.push(t2);
            }
        }
        i += 1;
    }
    Ok(None)
}

/// Structure data for a group with normal Sylow p-subgroup of order p and a
/// cyclic complement.
#[derive(Clone, Debug)]
pub struct Metacyclic {
    /// Order of the cyclic complement.
    pub m: u64,
    /// Exponent `a` with `beta tau beta^-1 = tau^a`.
    pub exponent: u64,
    /// Multiplicative order of `a` mod p; divides `m`.
    pub action_order: u64,
    /// Canonical generator of the Sylow p-subgroup.
    pub tau: Permutation,
    /// Canonical generator of the complement.
    pub beta: Permutation,
}

/// Full structure of a metacyclic group of order `p * m` with `p` prime and
/// coprime to `m`: a normal subgroup generated by `tau` of order `p` and a
/// cyclic complement generated by `beta` of order `m`, acting by `tau ->
/// tau^a`. The exponent satisfies `a^m = 1 mod p`; its multiplicative order
/// can be a proper divisor of `m` when part of the complement centralizes.
pub fn metacyclic_data(i: &PermGroup, p: u64) -> Result<Metacyclic> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let order = i
        .order_u128()
        .ok_or_else(|| Error::TooLarge("metacyclic analysis needs a small group".into()))?;
    if order % p as u128 != 0 {
        return Err(Error::PrimeDoesNotDivide { p });
    }
    if order % (p as u128 * p as u128) == 0 {
        return Err(Error::SylowNotCyclicOfOrderP { p });
    }
    let m = (order / p as u128) as u64;

    let els = i.elements_bounded(ELEMENT_LIMIT)?;
    let tau = els
        .iter()
        .find(|e| e.order() == p as u128)
        .cloned()
        .expect("a group of order divisible by p has an element of order p");

    let mut sylow_elements = HashSet::new();
    let mut pw = Permutation::identity(i.degree());
    for _ in 0..p {
        sylow_elements.insert(pw.clone());
        pw = &pw * &tau;
    }
    for gen in i.generators() {
        if !sylow_elements.contains(&tau.conjugated_by(gen)) {
            return Err(Error::NotMetacyclic(
                "the Sylow p-subgroup is not normal".into(),
            ));
        }
    }

    if m == 1 {
        return Ok(Metacyclic {
            m: 1,
            exponent: 1,
            action_order: 1,
            tau,
            beta: Permutation::identity(i.degree()),
        });
    }

    let beta = els
        .iter()
        .find(|e| e.order() == m as u128)
        .cloned()
        .ok_or_else(|| {
            Error::NotMetacyclic(format!("no element of order {m}: the complement is not cyclic"))
        })?;

    let conj = tau.conjugated_by(&beta);
    let mut a = None;
    let mut pw = tau.clone();
    for k in 1..p {
        if pw == conj {
            a = Some(k);
            break;
        }
        pw = &pw * &tau;
    }
    let a = a.ok_or_else(|| Error::NotMetacyclic("complement does not normalize the Sylow".into()))?;
    let action_order = mult_order_mod(a, p);
    debug_assert_eq!(m % action_order, 0);
    Ok(Metacyclic {
        m,
        exponent: a,
        action_order,
        tau,
        beta,
    })
}

/// The pair `(m, a)` describing a metacyclic group of order `p * m`: the
/// complement order and the conjugation exponent on the normal subgroup.
pub fn metacyclic_structure(i: &PermGroup, p: u64) -> Result<(u64, u64)> {
    let data = metacyclic_data(i, p)?;
    Ok((data.m, data.exponent))
}

fn commutes(x: &Permutation, y: &Permutation) -> bool {
    &(x * y) == &(y * x)
}

/// A subgroup `d` of `i` with `i = iprime x d` as an internal direct
/// product, or None when no direct complement exists. Candidates are drawn
/// from the centralizer of `iprime`; since every subgroup of a metacyclic
/// group is generated by at most two elements, searching single elements
/// and pairs is exhaustive for the groups handled here.
pub fn direct_factorization(i: &PermGroup, iprime: &PermGroup) -> Result<Option<PermGroup>> {
    ensure_subgroup(i, iprime, "direct factorization")?;
    let oi = i
        .order_u128()
        .ok_or_else(|| Error::TooLarge("direct factorization needs a small group".into()))?;
    let op = iprime.order_u128().expect("subgroup of a small group is small");
    let k = oi / op;
    if k == 1 {
        return Ok(Some(PermGroup::trivial(i.degree())));
    }

    let els = i.elements_bounded(ELEMENT_LIMIT)?;
    let central: Vec<Permutation> = els
        .into_iter()
        .filter(|x| iprime.generators().iter().all(|h| commutes(x, h)))
        .collect();

    let check = |d: &PermGroup| -> Result<bool> {
        if d.order_u128() != Some(k) {
            return Ok(false);
        }
        for x in d.elements_bounded(ELEMENT_LIMIT)? {
            if !x.is_identity() && iprime.contains(&x) {
                return Ok(false);
            }
        }
        let mut gens = iprime.generators().to_vec();
        gens.extend_from_slice(d.generators());
        let join = PermGroup::from_generators(i.degree(), gens)?;
        Ok(join.order_u128() == Some(oi))
    };

    for x in &central {
        if x.order() != k as u128 {
            continue;
        }
        let d = PermGroup::from_generators(i.degree(), vec![x.clone()])?;
        if check(&d)? {
            return Ok(Some(d));
        }
    }
    for (ai, x) in central.iter().enumerate() {
        if x.is_identity() || k as u128 % x.order() != 0 {
            continue;
        }
        for y in central.iter().skip(ai + 1) {
            if y.is_identity() || k as u128 % y.order() != 0 {
                continue;
            }
            let d = PermGroup::from_generators(i.degree(), vec![x.clone(), y.clone()])?;
            if check(&d)? {
                return Ok(Some(d));
            }
        }
    }
    Ok(None)
}

/// All indices `[g : k]` of subgroup chains through recorded maximal
/// subgroup tables that land in the half-open window `[lo, hi)`. Descends a
/// table only when a strictly smaller subgroup could still produce an index
/// below `hi`; a needed table that is absent is an error naming the group.
pub fn indices_in_range(fb: &FactBase, name: &str, lo: u64, hi: u64) -> Result<BTreeSet<u64>> {
    if lo < 1 {
        return Err(Error::InvalidInput("index window must start at 1 or later".into()));
    }
    let mut out = BTreeSet::new();
    if hi <= lo {
        return Ok(out);
    }
    let canonical = fb.canonical_name(name);
    descend_indices(fb, &canonical, BigUint::one(), lo, hi, &mut out)?;
    Ok(out)
}

fn descend_indices(
    fb: &FactBase,
    name: &str,
    acc: BigUint,
    lo: u64,
    hi: u64,
    out: &mut BTreeSet<u64>,
) -> Result<()> {
    let big_hi = BigUint::from(hi);
    if acc >= big_hi {
        return Ok(());
    }
    if acc >= BigUint::from(lo) {
        out.insert(acc.to_u64().expect("index below hi fits in u64"));
    }
    if &acc * 2u32 >= big_hi {
        return Ok(());
    }
    let order = fb.group_order(name)?;
    let table = fb.maximal_table(name).ok_or_else(|| {
        Error::MissingFact(format!(
            "maximal subgroup table for {name} is required to enumerate indices below {hi}"
        ))
    })?;
    for entry in table {
        let sub_order = entry.order_value()?;
        let (index, rem) = order.div_rem(&sub_order);
        if !rem.is_zero() {
            return Err(Error::Inconsistent(format!(
                "order of {} does not divide the order of {name}",
                entry.name
            )));
        }
        let next = &acc * &index;
        if next < big_hi {
            let sub_name = fb.canonical_name(&entry.name);
            descend_indices(fb, &sub_name, next, lo, hi, out)?;
        }
    }
    Ok(())
}
