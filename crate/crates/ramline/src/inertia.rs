//! Catalogs of candidate wild inertia subgroups I = S ⋊ C with S of prime
//! order p and C cyclic of order coprime to p, together with the counting
//! and residue arithmetic built on them: ramification-point censuses,
//! admissible invariant sets, and the global denominator m_G.
//!
//! Every such I lies in the normalizer N of some Sylow p-subgroup, and S is
//! characteristic in I (the unique subgroup of order p), so N_G(I) and
//! Cent_G(I) are contained in N as well. The whole catalog is therefore
//! computed inside N, which also makes a recorded permutation presentation
//! of N sufficient when G itself is too large to represent.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use crate::atlas::FactBase;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::quasip::Method;
use crate::subgrp::{
    centralizer, conjugacy_witness, is_prime, is_subgroup, metacyclic_data, normal_closure,
    normalizer, sylow_p,
};

/// Element cap when expanding a Sylow normalizer; the recorded normalizers
/// all have a few thousand elements at most.
const NORMALIZER_LIMIT: usize = 4096;

/// Fixed seed for the targeted subgroup search in `subgroup_through`.
const SEARCH_SEED: u64 = 0x49_4e_45_52;

/// Which centralizer order fixes the gcd constraint on admissible jumps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CentMode {
    /// gcd target |Cent_G(I)| / p; can fail to be an integer.
    CentOfI,
    /// gcd target |Cent_I(S)| / p = m / e; always an integer.
    #[default]
    CentOfS,
}

impl std::fmt::Display for CentMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CentMode::CentOfI => write!(f, "cent-of-i"),
            CentMode::CentOfS => write!(f, "cent-of-s"),
        }
    }
}

impl std::str::FromStr for CentMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<CentMode> {
        match s.to_ascii_lowercase().as_str() {
            "cent-of-i" | "inertia" | "i" => Ok(CentMode::CentOfI),
            "cent-of-s" | "sylow" | "s" => Ok(CentMode::CentOfS),
            other => Err(Error::InvalidInput(format!(
                "unknown centralizer mode {other:?}; expected cent-of-i or cent-of-s"
            ))),
        }
    }
}

/// One conjugacy class of candidate inertia subgroups I = S ⋊ C.
///
/// The representative lives in the group the catalog was scanned in: G
/// itself for computed catalogs, the recorded normalizer presentation for
/// facts-derived ones. All numeric fields refer to the ambient G.
#[derive(Clone, Debug)]
pub struct InertiaClass {
    pub representative: PermGroup,
    pub p: u64,
    /// Order of the cyclic complement C.
    pub m: u64,
    /// Conjugation exponent of C on S, canonicalized as the least exponent
    /// over the generator choices of C.
    pub action_exponent: u64,
    /// Multiplicative order of the exponent mod p; divides m.
    pub action_order: u64,
    /// |N_G(I)|; small because N_G(I) lies in the Sylow normalizer.
    pub normalizer_order: u64,
    /// Number of G-conjugates of I, equal to |G| / |N_G(I)|.
    pub class_size: BigUint,
    /// |Cent_G(I)|.
    pub cent_i_order: u64,
    /// |Cent_I(S)| = p m / e.
    pub cent_s_order: u64,
    /// |G|.
    pub group_order: BigUint,
    pub method: Method,
}

impl InertiaClass {
    /// |I| = p m.
    pub fn order(&self) -> u64 {
        self.p * self.m
    }

    /// The isomorphism-type signature (m, action order).
    pub fn signature(&self) -> (u64, u64) {
        (self.m, self.action_order)
    }

    /// The gcd constraint on admissible jump numerators under the chosen
    /// centralizer mode. Errors when the centralizer order is not p times
    /// an integer, which signals the mode is inconsistent for this class.
    pub fn gcd_target(&self, mode: CentMode) -> Result<u64> {
        let cent = match mode {
            CentMode::CentOfI => self.cent_i_order,
            CentMode::CentOfS => self.cent_s_order,
        };
        if cent % self.p != 0 {
            return Err(Error::Inconsistent(format!(
                "{mode} target {cent}/{p} is not an integer for the class with m = {m}",
                p = self.p,
                m = self.m
            )));
        }
        Ok(cent / self.p)
    }
}

fn exact_div(n: &BigUint, d: &BigUint, what: &str) -> Result<BigUint> {
    if d.is_zero() || !(n % d).is_zero() {
        return Err(Error::Inconsistent(format!("{d} does not divide {n} ({what})")));
    }
    Ok(n / d)
}

fn small_order(g: &PermGroup, what: &str) -> Result<u64> {
    g.order_u128()
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::TooLarge(format!("{what} does not fit in 64 bits")))
}

/// Least conjugation exponent over the generator choices of the cyclic
/// complement: min of a^k mod p over k coprime to m.
fn canonical_exponent(a: u64, m: u64, p: u64) -> u64 {
    let mut best = a % p;
    let mut cur: u64 = 1;
    for k in 1..=m {
        cur = (cur as u128 * a as u128 % p as u128) as u64;
        if k.gcd(&m) == 1 && cur < best {
            best = cur;
        }
    }
    best
}

/// Builds the class record for one representative I inside the Sylow
/// normalizer n. N_G(I) = N_n(I) and Cent_G(I) = Cent_n(I) because both
/// normalize the characteristic Sylow subgroup of I.
fn class_from_subgroup(
    n: &PermGroup,
    i: PermGroup,
    p: u64,
    group_order: &BigUint,
    method: Method,
) -> Result<InertiaClass> {
    let data = metacyclic_data(&i, p)?;
    let n_i = normalizer(n, &i)?;
    let normalizer_order = small_order(&n_i, "inertia normalizer order")?;
    let class_size = exact_div(
        group_order,
        &BigUint::from(normalizer_order),
        "class size from the normalizer index",
    )?;
    let cent_i_order = small_order(&centralizer(n, &i)?, "inertia centralizer order")?;
    let s_sub = PermGroup::from_generators(n.degree(), vec![data.tau.clone()])?;
    let cent_s_order = small_order(&centralizer(&i, &s_sub)?, "Sylow centralizer order")?;
    if cent_s_order != p * data.m / data.action_order {
        return Err(Error::Inconsistent(format!(
            "|Cent_I(S)| = {cent_s_order} differs from pm/e = {}",
            p * data.m / data.action_order
        )));
    }
    Ok(InertiaClass {
        representative: i,
        p,
        m: data.m,
        action_exponent: canonical_exponent(data.exponent, data.m, p),
        action_order: data.action_order,
        normalizer_order,
        class_size,
        cent_i_order,
        cent_s_order,
        group_order: group_order.clone(),
        method,
    })
}

/// Enumerates the classes inside a Sylow normalizer presentation: one
/// candidate I = <S, c> per prime-to-p element c, deduplicated first as
/// subgroups and then up to conjugacy. Conjugacy in the normalizer agrees
/// with conjugacy in G, since a conjugator can be corrected by an element
/// of I to fix S.
fn catalog_in_normalizer(
    n: &PermGroup,
    p: u64,
    group_order: &BigUint,
    method: Method,
) -> Result<Vec<InertiaClass>> {
    let s = sylow_p(n, p)?;
    let tau = s.generators()[0].clone();
    let elements = n.elements_bounded(NORMALIZER_LIMIT)?;

    let mut seen: HashSet<Vec<Vec<u8>>> = HashSet::new();
    let mut candidates: Vec<PermGroup> = Vec::new();
    for c in &elements {
        if c.order() % p as u128 == 0 {
            continue;
        }
        let i = PermGroup::from_generators(n.degree(), vec![tau.clone(), c.clone()])?;
        let mut key: Vec<Vec<u8>> = i
            .elements_bounded(NORMALIZER_LIMIT)?
            .iter()
            .map(|e| e.images().iter().map(|&x| x as u8).collect())
            .collect();
        key.sort_unstable();
        if seen.insert(key) {
            candidates.push(i);
        }
    }

    let mut reps: Vec<PermGroup> = Vec::new();
    for cand in candidates {
        let mut duplicate = false;
        for rep in &reps {
            if conjugacy_witness(n, rep, &cand)?.is_some() {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            reps.push(cand);
        }
    }

    let mut classes = reps
        .into_iter()
        .map(|i| class_from_subgroup(n, i, p, group_order, method))
        .collect::<Result<Vec<_>>>()?;
    classes.sort_by_key(|c| (c.m, c.action_order, c.action_exponent));
    Ok(classes)
}

/// The catalog of candidate inertia classes of G at p, computed from a
/// fresh Sylow subgroup and its normalizer. Empty when G is not generated
/// by the conjugates of its Sylow p-subgroup, since then no candidate
/// satisfies the generation condition.
pub fn inertia_catalog(g: &PermGroup, p: u64) -> Result<Vec<InertiaClass>> {
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
    let s = sylow_p(g, p)?;
    if normal_closure(g, &s)?.order() != g.order() {
        return Ok(Vec::new());
    }
    let n = normalizer(g, &s)?;
    catalog_in_normalizer(&n, p, g.order(), Method::Computed)
}

/// The catalog derived from a recorded Sylow normalizer presentation. The
/// generation condition holds because the recorded group is simple with p
/// dividing its order, so the closure of a Sylow subgroup is a nontrivial
/// normal subgroup.
pub fn inertia_catalog_from_facts(fb: &FactBase, name: &str, p: u64) -> Result<Vec<InertiaClass>> {
    let facts = fb
        .group(name)
        .ok_or_else(|| Error::MissingFact(format!("no record for group {name}")))?;
    let group_order = facts.order_value()?;
    let bp = BigUint::from(p);
    if (&group_order % &bp) != BigUint::zero() {
        return Err(Error::PrimeDoesNotDivide { p });
    }
    if (&group_order % (&bp * &bp)).is_zero() {
        return Err(Error::SylowNotCyclicOfOrderP { p });
    }
    if !facts.simple {
        return Err(Error::MissingFact(format!(
            "cannot justify the Sylow generation condition for {name} from the recorded facts"
        )));
    }
    let n = fb.sylow_normalizer(name, p)?.build()?;
    catalog_in_normalizer(&n, p, &group_order, Method::FactsDerived)
}

/// The signatures (m, action order) of a catalog, in catalog order.
pub fn signatures(catalog: &[InertiaClass]) -> Vec<(u64, u64)> {
    catalog.iter().map(|c| c.signature()).collect()
}

/// The admissible ramification invariants of one class up to a bound: all
/// j/m with j > m, p not dividing j, and gcd(j, m) equal to the mode's
/// centralizer target.
#[derive(Clone, Debug)]
pub struct SigmaSet {
    pub m: u64,
    pub gcd_target: u64,
    pub excluded_prime: u64,
    pub limit: Ratio<u64>,
    /// Admissible numerators j in increasing order.
    pub numerators: Vec<u64>,
}

impl SigmaSet {
    /// The invariants j/m as exact rationals.
    pub fn elements(&self) -> Vec<Ratio<u64>> {
        self.numerators.iter().map(|&j| Ratio::new(j, self.m)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    /// Common reduced denominator of all elements: m / gcd_target.
    pub fn reduced_denominator(&self) -> u64 {
        self.m / self.gcd_target
    }
}

/// Enumerates the admissible invariant set of a class up to `limit`.
pub fn sigma_set(cls: &InertiaClass, mode: CentMode, limit: Ratio<u64>) -> Result<SigmaSet> {
    if limit <= Ratio::from_integer(1) {
        return Err(Error::InvalidInput(format!("limit {limit} must exceed 1")));
    }
    let target = cls.gcd_target(mode)?;
    // j/m <= limit, so j ranges up to floor(m * limit).
    let j_max = (Ratio::from_integer(cls.m) * limit).floor().to_integer();
    let mut numerators = Vec::new();
    for j in (cls.m + 1)..=j_max {
        if j % cls.p != 0 && j.gcd(&cls.m) == target {
            numerators.push(j);
        }
    }
    Ok(SigmaSet {
        m: cls.m,
        gcd_target: target,
        excluded_prime: cls.p,
        limit,
        numerators,
    })
}

/// The least common denominator of all admissible invariants across the
/// catalog: lcm over classes of m / gcd_target. Errors when the catalog is
/// empty or some class has an empty admissible set, which happens exactly
/// when its gcd target fails to divide m.
pub fn m_g(catalog: &[InertiaClass], mode: CentMode) -> Result<u64> {
    if catalog.is_empty() {
        return Err(Error::InvalidInput(
            "m_G needs a nonempty catalog of inertia classes".into(),
        ));
    }
    let mut acc: u64 = 1;
    for cls in catalog {
        let target = cls.gcd_target(mode)?;
        if cls.m % target != 0 {
            return Err(Error::Inconsistent(format!(
                "class with m = {} has an empty admissible set: gcd target {} does not divide m",
                cls.m, target
            )));
        }
        acc = acc.lcm(&(cls.m / target));
    }
    Ok(acc)
}

/// Point counts of the branch locus over the wild place: total points,
/// points per orbit of the normalizer action, and the number of orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamCensus {
    /// [G : I]
    pub num_points: BigUint,
    /// [N_G(I) : I]
    pub points_per_class: BigUint,
    /// [G : N_G(I)]
    pub num_classes: BigUint,
}

/// The census of a class from its stored orders.
pub fn ram_census_orders(cls: &InertiaClass) -> Result<RamCensus> {
    let i_order = BigUint::from(cls.order());
    let num_points = exact_div(&cls.group_order, &i_order, "index of I in G")?;
    let points_per_class = exact_div(
        &BigUint::from(cls.normalizer_order),
        &i_order,
        "index of I in its normalizer",
    )?;
    let num_classes = cls.class_size.clone();
    if num_points != &points_per_class * &num_classes {
        return Err(Error::Inconsistent(
            "census counts do not factor through the normalizer".into(),
        ));
    }
    Ok(RamCensus {
        num_points,
        points_per_class,
        num_classes,
    })
}

/// The census of a class of G, checking the class belongs to G.
pub fn ram_census(g: &PermGroup, cls: &InertiaClass) -> Result<RamCensus> {
    if *g.order() != cls.group_order {
        return Err(Error::Inconsistent(
            "inertia class does not belong to this group".into(),
        ));
    }
    ram_census_orders(cls)
}

/// Class count of the cover induced from a subgroup: [G1:G2] copies of the
/// [G2 : N_G2(I2)] classes downstairs.
pub fn induced_census(g1: &PermGroup, g2: &PermGroup, cls2: &InertiaClass) -> Result<BigUint> {
    if !is_subgroup(g1, g2) {
        return Err(Error::NotASubgroup(
            "induced census needs the second group inside the first".into(),
        ));
    }
    if *g2.order() != cls2.group_order {
        return Err(Error::Inconsistent(
            "inertia class does not belong to the subgroup".into(),
        ));
    }
    let index = exact_div(g1.order(), g2.order(), "subgroup index")?;
    Ok(index * &cls2.class_size)
}

/// As `induced_census` with plain orders, for groups known only by facts.
pub fn induced_census_orders(
    g1_order: &BigUint,
    g2_order: &BigUint,
    cls2_class_size: &BigUint,
) -> Result<BigUint> {
    let index = exact_div(g1_order, g2_order, "subgroup index")?;
    Ok(index * cls2_class_size)
}

/// Whether a cover of G2 with inertia class cls2, induced up to G1, has
/// boundary data matching a cover of G1 with inertia class cls1: the class
/// counts agree and the two normalizers are conjugate in G1.
pub fn patch_compatible(
    g1: &PermGroup,
    cls1: &InertiaClass,
    g2: &PermGroup,
    cls2: &InertiaClass,
) -> Result<bool> {
    if *g1.order() != cls1.group_order {
        return Err(Error::Inconsistent(
            "first inertia class does not belong to the first group".into(),
        ));
    }
    if !is_subgroup(g2, &cls2.representative) {
        return Err(Error::NotASubgroup(
            "second inertia class does not lie in the second group".into(),
        ));
    }
    if induced_census(g1, g2, cls2)? != cls1.class_size {
        return Ok(false);
    }
    let n1 = normalizer(g1, &cls1.representative)?;
    let n2 = normalizer(g1, &cls2.representative)?;
    Ok(conjugacy_witness(g1, &n1, &n2)?.is_some())
}

/// Whether jump numerator j is compatible with the class's tame action:
/// the stored exponent must be the j-th power of a faithful character of
/// the complement, which for exponent order e comes down to gcd(j, m) =
/// m/e. Multiples of p are never jumps.
pub fn jump_residue_check(cls: &InertiaClass, j: u64) -> bool {
    if j % cls.p == 0 {
        return false;
    }
    cls.m == 1 || j.gcd(&cls.m) == cls.m / cls.action_order
}

/// Seeded search for a subgroup of the given order containing the seed
/// elements: draws random elements of g and closes the seed with each
/// until the target order appears.
pub fn subgroup_through(
    g: &PermGroup,
    seed: &[Permutation],
    target_order: u64,
    max_draws: u64,
) -> Result<PermGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED ^ target_order);
    let target = BigUint::from(target_order);
    for _ in 0..max_draws {
        let x = g.random_element(&mut rng);
        let mut gens = seed.to_vec();
        gens.push(x);
        let h = PermGroup::from_generators(g.degree(), gens)?;
        if *h.order() == target {
            return Ok(h);
        }
    }
    Err(Error::BudgetExhausted {
        budget: max_draws,
        context: format!("no subgroup of order {target_order} through the seed found"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{construct_alternating, construct_cyclic, construct_psl2, load_builtin};
    use rand::Rng;

    fn ratio(n: u64, d: u64) -> Ratio<u64> {
        Ratio::new(n, d)
    }

    #[test]
    fn m11_catalog_and_sigma_sets() {
        let m11 = load_builtin("M11").unwrap();
        let cat = inertia_catalog(&m11, 11).unwrap();
        assert_eq!(signatures(&cat), vec![(1, 1), (5, 5)]);

        let fixed = &cat[0];
        assert_eq!(fixed.normalizer_order, 55);
        assert_eq!(fixed.class_size, BigUint::from(144u32));
        assert_eq!(fixed.cent_i_order, 11);
        assert_eq!(fixed.cent_s_order, 11);

        let twisted = &cat[1];
        assert_eq!(twisted.action_exponent, 3);
        assert_eq!(twisted.normalizer_order, 55);
        assert_eq!(twisted.class_size, BigUint::from(144u32));
        assert_eq!(twisted.cent_i_order, 1);
        assert_eq!(twisted.cent_s_order, 11);

        let sigma = sigma_set(twisted, CentMode::CentOfS, ratio(4, 1)).unwrap();
        assert_eq!(sigma.gcd_target, 1);
        assert_eq!(
            sigma.numerators,
            vec![6, 7, 8, 9, 12, 13, 14, 16, 17, 18, 19]
        );
        let small = sigma_set(fixed, CentMode::CentOfS, ratio(5, 1)).unwrap();
        assert_eq!(small.numerators, vec![2, 3, 4, 5]);

        // The literal centralizer-of-I reading has |Cent| = 1, not divisible
        // by 11, for the twisted class.
        assert!(matches!(
            sigma_set(twisted, CentMode::CentOfI, ratio(4, 1)),
            Err(Error::Inconsistent(_))
        ));

        assert_eq!(m_g(&cat, CentMode::CentOfS).unwrap(), 5);

        assert!(jump_residue_check(twisted, 8));
        assert!(!jump_residue_check(twisted, 10));
        assert!(!jump_residue_check(twisted, 22));
        assert!(jump_residue_check(fixed, 2));
    }

    #[test]
    fn m11_censuses() {
        let m11 = load_builtin("M11").unwrap();
        let cat = inertia_catalog(&m11, 11).unwrap();
        let fixed = ram_census(&m11, &cat[0]).unwrap();
        assert_eq!(fixed.num_points, BigUint::from(720u32));
        assert_eq!(fixed.points_per_class, BigUint::from(5u32));
        assert_eq!(fixed.num_classes, BigUint::from(144u32));
        let twisted = ram_census(&m11, &cat[1]).unwrap();
        assert_eq!(twisted.num_points, BigUint::from(144u32));
        assert_eq!(twisted.points_per_class, BigUint::from(1u32));
        assert_eq!(twisted.num_classes, BigUint::from(144u32));
    }

    #[test]
    fn psl2_11_catalog() {
        let g = construct_psl2(11).unwrap();
        let cat = inertia_catalog(&g, 11).unwrap();
        assert_eq!(signatures(&cat), vec![(1, 1), (5, 5)]);
        assert_eq!(cat[0].class_size, BigUint::from(12u32));
        assert_eq!(cat[1].class_size, BigUint::from(12u32));
    }

    #[test]
    fn cyclic_group_census_is_trivial() {
        let c5 = construct_cyclic(5).unwrap();
        let cat = inertia_catalog(&c5, 5).unwrap();
        assert_eq!(signatures(&cat), vec![(1, 1)]);
        let census = ram_census(&c5, &cat[0]).unwrap();
        assert_eq!(census.num_points, BigUint::from(1u32));
        assert_eq!(census.points_per_class, BigUint::from(1u32));
        assert_eq!(census.num_classes, BigUint::from(1u32));
    }

    #[test]
    fn non_quasi_p_catalog_is_empty() {
        let a = Permutation::parse_cycles("(1,2,3)", 3).unwrap();
        let b = Permutation::parse_cycles("(1,2)", 3).unwrap();
        let s3 = PermGroup::from_generators(3, vec![a, b]).unwrap();
        assert!(inertia_catalog(&s3, 3).unwrap().is_empty());
    }

    #[test]
    fn monster_facts_catalog() {
        let fb = FactBase::bundled();
        let cat = inertia_catalog_from_facts(&fb, "Monster", 71).unwrap();
        assert_eq!(
            signatures(&cat),
            vec![(1, 1), (5, 5), (7, 7), (35, 35)]
        );
        let expected = fb.group_order("M").unwrap() / BigUint::from(2485u32);
        for cls in &cat {
            assert_eq!(cls.normalizer_order, 2485);
            assert_eq!(cls.class_size, expected);
            assert_eq!(cls.method, Method::FactsDerived);
        }
    }

    #[test]
    fn table_row_catalogs_and_denominators() {
        let fb = FactBase::bundled();
        let cases: &[(&str, u64, Vec<(u64, u64)>, u64)] = &[
            (
                "J1",
                5,
                vec![(1, 1), (2, 1), (2, 2), (2, 2), (3, 1), (6, 2)],
                2,
            ),
            (
                "J3",
                5,
                vec![(1, 1), (2, 1), (2, 2), (2, 2), (3, 1), (6, 2)],
                2,
            ),
            ("M23", 7, vec![(1, 1), (2, 1), (3, 3), (6, 3)], 3),
            (
                "M24",
                7,
                vec![(1, 1), (2, 1), (3, 1), (3, 3), (3, 3), (6, 3)],
                3,
            ),
            ("McL", 7, vec![(1, 1), (2, 1), (3, 3), (6, 3)], 3),
            (
                "Ru",
                7,
                vec![(1, 1), (2, 1), (2, 2), (2, 2), (3, 3), (6, 6)],
                6,
            ),
            ("Co3", 11, vec![(1, 1), (2, 1), (5, 5), (10, 5)], 5),
            ("F22", 11, vec![(1, 1), (2, 1), (5, 5), (10, 5)], 5),
            ("M24", 11, vec![(1, 1), (2, 2), (5, 5), (10, 10)], 10),
        ];
        for (name, p, expected_sigs, expected_mg) in cases {
            let cat = inertia_catalog_from_facts(&fb, name, *p).unwrap();
            assert_eq!(signatures(&cat), *expected_sigs, "{name} at {p}");
            assert_eq!(
                m_g(&cat, CentMode::CentOfS).unwrap(),
                *expected_mg,
                "{name} at {p}"
            );
        }
    }

    #[test]
    fn m23_computed_matches_facts() {
        let fb = FactBase::bundled();
        let m23 = load_builtin("M23").unwrap();
        let computed = inertia_catalog(&m23, 7).unwrap();
        let derived = inertia_catalog_from_facts(&fb, "M23", 7).unwrap();
        assert_eq!(computed.len(), derived.len());
        for (c, d) in computed.iter().zip(&derived) {
            assert_eq!(c.signature(), d.signature());
            assert_eq!(c.action_exponent, d.action_exponent);
            assert_eq!(c.normalizer_order, d.normalizer_order);
            assert_eq!(c.class_size, d.class_size);
            assert_eq!(c.cent_i_order, d.cent_i_order);
            assert_eq!(c.cent_s_order, d.cent_s_order);
        }
    }

    #[test]
    fn induced_census_and_patching() {
        let m11 = load_builtin("M11").unwrap();
        let cat11 = inertia_catalog(&m11, 11).unwrap();
        let tau = sylow_p(&m11, 11).unwrap().generators()[0].clone();
        let h = subgroup_through(&m11, &[tau], 660, 50_000).unwrap();
        let cath = inertia_catalog(&h, 11).unwrap();
        assert_eq!(signatures(&cath), vec![(1, 1), (5, 5)]);

        assert_eq!(
            induced_census(&m11, &h, &cath[1]).unwrap(),
            BigUint::from(144u32)
        );
        assert!(patch_compatible(&m11, &cat11[1], &h, &cath[1]).unwrap());

        // Identity case: a class patches with itself over the full group.
        assert!(patch_compatible(&m11, &cat11[0], &m11, &cat11[0]).unwrap());

        // Census mismatch: inducing from a stabilizer subgroup of A5 gives
        // 20 classes against 10.
        let a5 = construct_alternating(5).unwrap();
        let a4 = a5.point_stabilizer(4).unwrap();
        let cat5 = inertia_catalog(&a5, 3).unwrap();
        let cat4 = inertia_catalog(&a4, 3).unwrap();
        assert_eq!(
            induced_census(&a5, &a4, &cat4[0]).unwrap(),
            BigUint::from(20u32)
        );
        assert!(!patch_compatible(&a5, &cat5[0], &a4, &cat4[0]).unwrap());
    }

    #[test]
    fn normalizer_label_equivalence() {
        // Conjugating an inertia subgroup by two elements yields the same
        // normalizer exactly when the elements differ by a normalizer
        // element.
        let m11 = load_builtin("M11").unwrap();
        let cat = inertia_catalog(&m11, 11).unwrap();
        let i = &cat[1].representative;
        let n_i = normalizer(&m11, i).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..6 {
            let g1 = m11.random_element(&mut rng);
            let g2 = if rng.gen::<bool>() {
                &g1 * &n_i.random_element(&mut rng)
            } else {
                m11.random_element(&mut rng)
            };
            let conj = |g: &Permutation| {
                let gens = i.generators().iter().map(|x| x.conjugated_by(g)).collect();
                PermGroup::from_generators(m11.degree(), gens).unwrap()
            };
            let n1 = normalizer(&m11, &conj(&g1)).unwrap();
            let n2 = normalizer(&m11, &conj(&g2)).unwrap();
            let same_normalizer = n1.order() == n2.order() && n1.contains_group(&n2);
            let same_label = n_i.contains(&(&g2.inverse() * &g1));
            assert_eq!(same_normalizer, same_label);
        }
    }

    #[test]
    fn sigma_set_invariants() {
        let fb = FactBase::bundled();
        let cat = inertia_catalog_from_facts(&fb, "Ru", 7).unwrap();
        for cls in &cat {
            let sigma = sigma_set(cls, CentMode::CentOfS, ratio(6, 1)).unwrap();
            for &j in &sigma.numerators {
                assert!(j > cls.m);
                assert!(j % cls.p != 0);
                assert_eq!(j.gcd(&cls.m), sigma.gcd_target);
                assert!(jump_residue_check(cls, j));
            }
            assert!(!sigma.is_empty());
            assert_eq!(sigma.reduced_denominator(), cls.m / sigma.gcd_target);
        }
    }
}
