//! Randomized property suites, runnable standalone:
//! `cargo test -p ramline --test properties`.

use num_integer::Integer;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ramline::atlas::{load_builtin, FactBase};
use ramline::certify;
use ramline::group::PermGroup;
use ramline::inertia::{self, CentMode};
use ramline::subgrp;

/// Every constructible group of order at most 5000 used by the order
/// cross-check.
const SMALL_GROUPS: [&str; 17] = [
    "C2", "C3", "C6", "C30", "S3", "S4", "S5", "S6", "A4", "A5", "A6", "A7", "PSL2(7)",
    "PSL2(11)", "PSL2(13)", "PSL2(17)", "PSL2(19)",
];

#[test]
fn chain_orders_match_brute_force_enumeration() {
    for name in SMALL_GROUPS {
        let g = load_builtin(name).expect(name);
        let order = u64::try_from(g.order()).expect("order fits u64");
        assert!(order <= 5000, "{name} is too large for the brute-force cap");
        let elements = g
            .elements_bounded(order as usize)
            .expect("enumeration within the cap");
        assert_eq!(elements.len() as u64, order, "order mismatch for {name}");
    }
}

fn closure_hosts() -> Vec<PermGroup> {
    ["A5", "S4", "PSL2(7)", "S6"]
        .into_iter()
        .map(|name| load_builtin(name).expect(name))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The normal closure of a random cyclic subgroup contains its seed and
    /// is fixed by conjugation by every generator of the ambient group.
    #[test]
    fn normal_closure_is_normal(seed in 0u64..5000, host in 0usize..4) {
        let g = &closure_hosts()[host];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_element(&mut rng);
        let h = PermGroup::from_generators(g.degree(), vec![x]).unwrap();
        let closure = subgrp::normal_closure(g, &h).unwrap();
        prop_assert!(closure.contains_group(&h));
        prop_assert!(g.contains_group(&closure));
        for gen in g.generators() {
            for c in closure.generators() {
                prop_assert!(closure.contains(&c.conjugated_by(gen)));
            }
        }
    }

    /// A subgroup generated by random elements has stabilizer-chain order
    /// equal to its brute-force element count.
    #[test]
    fn random_subgroup_orders_match_enumeration(seed in 0u64..5000, gens in 1usize..=3) {
        let s6 = load_builtin("S6").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let generators: Vec<_> = (0..gens).map(|_| s6.random_element(&mut rng)).collect();
        let h = PermGroup::from_generators(6, generators).unwrap();
        let order = u64::try_from(h.order()).unwrap();
        let elements = h.elements_bounded(720).unwrap();
        prop_assert_eq!(elements.len() as u64, order);
    }

    /// Potential-invariant sets contain exactly the admissible quotients
    /// j/m up to the limit: j prime to p, above m, with the forced gcd.
    #[test]
    fn sigma_set_membership_conditions(limit_num in 2u64..=8) {
        let m11 = load_builtin("M11").unwrap();
        let catalog = inertia::inertia_catalog(&m11, 11).unwrap();
        let limit = Ratio::new(limit_num, 1);
        for cls in &catalog {
            let target = cls.gcd_target(CentMode::CentOfS).unwrap();
            let sigma = inertia::sigma_set(cls, CentMode::CentOfS, limit).unwrap();
            let elements = sigma.elements();
            for s in &elements {
                let j = s * Ratio::from_integer(cls.m);
                prop_assert!(j.is_integer());
                let j = j.to_integer();
                prop_assert!(j > cls.m);
                prop_assert!(j % 11 != 0);
                prop_assert_eq!(j.gcd(&cls.m), target);
                prop_assert!(*s <= limit);
            }
            for j in (cls.m + 1)..=(limit_num * cls.m) {
                let admissible = j % 11 != 0 && j.gcd(&cls.m) == target;
                let present = elements.contains(&Ratio::new(j, cls.m));
                prop_assert_eq!(admissible, present, "jump {} for m = {}", j, cls.m);
            }
        }
    }

    /// Certification is deterministic and replayable at every budget, and
    /// the exception set does not depend on the budget.
    #[test]
    fn certificate_replay_determinism(budget in 1u64..=12) {
        let fb = FactBase::bundled();
        let first = certify::aic_status(&fb, "M11", 11, Some(budget)).unwrap();
        let second = certify::aic_status(&fb, "M11", 11, Some(budget)).unwrap();
        certify::replay(&fb, &first).unwrap();
        prop_assert_eq!(
            serde_json::to_string(&first).unwrap(),
            serde_json::to_string(&second).unwrap()
        );
        let reference = certify::aic_status(&fb, "M11", 11, None).unwrap();
        prop_assert_eq!(&first.exceptions, &reference.exceptions);
        prop_assert_eq!(first.verdict, reference.verdict);
    }
}

/// Corrupting a certificate node makes replay fail.
#[test]
fn replay_rejects_corrupted_certificates() {
    let fb = FactBase::bundled();
    let status = certify::aic_status(&fb, "M11", 11, None).unwrap();

    let mut unknown_rule = status.clone();
    unknown_rule.classes[0].provenance[0].rule = "made-up-rule".into();
    assert!(certify::replay(&fb, &unknown_rule).is_err());

    let mut bad_citation = status.clone();
    let mut stack: Vec<&mut certify::ProvNode> = bad_citation
        .classes
        .iter_mut()
        .flat_map(|c| c.provenance.iter_mut())
        .collect();
    let mut poisoned = false;
    while let Some(node) = stack.pop() {
        if node.citation.is_some() && !poisoned {
            node.citation = Some("no-such-citation".into());
            poisoned = true;
        }
        stack.extend(node.premises.iter_mut());
    }
    assert!(poisoned);
    assert!(certify::replay(&fb, &bad_citation).is_err());
}
