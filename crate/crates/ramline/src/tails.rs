//! Combinatorial bookkeeping for degenerations of three-point covers: the
//! vanishing-cycles identity, enumeration of the possible new-tail
//! multisets, per-tail genus sums, and the resulting minimal set of
//! ramification invariants.
//!
//! A "tail" carries a rational invariant sigma = j/m with sigma > 1; the
//! admissible configurations are exactly the multisets whose invariants
//! satisfy sum (sigma - 1) = 1.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::One;

use crate::error::{Error, Result};
use crate::genus::genus_from_jump;

/// A candidate multiset of new tails, each carrying an invariant
/// sigma = j/m strictly greater than 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailConfig {
    /// The tail invariants sigma = j/m, sorted ascending.
    pub new_tails: Vec<Ratio<u64>>,
    /// Common denominator of the invariants: the tame multiplicity of the
    /// wild inertia acting over each tail.
    pub m: u64,
    /// Number of primitive tails (one per branch point downstairs).
    pub primitive_count: u64,
    /// Whether purity forces the cover to stay connected over one tail.
    pub p_pure_connected: bool,
}

impl TailConfig {
    /// Builds a configuration from the integer jumps j with invariants
    /// j/m. Every jump must exceed m so that every invariant exceeds 1.
    pub fn from_jumps(jumps: &[u64], m: u64) -> Result<TailConfig> {
        if m == 0 {
            return Err(Error::InvalidInput("the tame multiplicity m must be positive".into()));
        }
        let mut sorted = jumps.to_vec();
        sorted.sort_unstable();
        if sorted.first().is_some_and(|&j| j <= m) {
            return Err(Error::InvalidInput(format!(
                "every tail invariant must exceed 1, but a jump of {} with m = {m} does not",
                sorted[0]
            )));
        }
        Ok(TailConfig {
            new_tails: sorted.iter().map(|&j| Ratio::new(j, m)).collect(),
            m,
            primitive_count: 3,
            p_pure_connected: false,
        })
    }

    /// The integer jumps j = sigma * m, in ascending order.
    pub fn jumps(&self) -> Result<Vec<u64>> {
        let m = Ratio::from_integer(self.m);
        self.new_tails
            .iter()
            .map(|s| {
                let j = s * m;
                if j.is_integer() {
                    Ok(j.to_integer())
                } else {
                    Err(Error::Inconsistent(format!(
                        "invariant {s} times m = {} is not an integer jump",
                        self.m
                    )))
                }
            })
            .collect()
    }
}

impl fmt::Display for TailConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.new_tails.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Summary of a degenerate model: one distinguished original component, a
/// list of candidate tail configurations, and optionally the genus of a
/// quotient curve the original component must dominate.
#[derive(Clone, Debug)]
pub struct StableModelSummary {
    /// Label of the unique original component.
    pub original_component: String,
    pub configs: Vec<TailConfig>,
    pub dominated_quotient_genus: Option<u64>,
}

impl StableModelSummary {
    pub fn new(original_component: impl Into<String>, configs: Vec<TailConfig>) -> StableModelSummary {
        StableModelSummary {
            original_component: original_component.into(),
            configs,
            dominated_quotient_genus: None,
        }
    }

    pub fn with_dominated_genus(mut self, genus: u64) -> StableModelSummary {
        self.dominated_quotient_genus = Some(genus);
        self
    }

    /// The configurations compatible with the domination constraint, or
    /// all of them when no constraint is recorded.
    pub fn viable_configs(&self, d: u64, t: u64) -> Result<Vec<TailConfig>> {
        match self.dominated_quotient_genus {
            Some(g) => filter_by_quotient_genus(&self.configs, d, t, g),
            None => Ok(self.configs.clone()),
        }
    }
}

/// Checks the vanishing-cycles identity sum (sigma - 1) = 1 exactly. Only
/// available with three primitive tails; other counts are rejected.
pub fn vc_check(cfg: &TailConfig) -> Result<bool> {
    if cfg.primitive_count != 3 {
        return Err(Error::InvalidInput(format!(
            "the vanishing-cycles identity is only asserted for 3 primitive tails, got {}",
            cfg.primitive_count
        )));
    }
    let one = Ratio::one();
    let sum: Ratio<u64> = cfg.new_tails.iter().map(|s| s - one).sum();
    Ok(sum == one)
}

/// Enumerates every multiset of jumps from `admissible_j` satisfying
/// sum (j/m - 1) = 1, i.e. sum (j - m) = m. Values of j not exceeding m
/// cannot appear in a valid configuration (their invariants would not
/// exceed 1) and are ignored. Output is sorted by length, then
/// lexicographically by jumps.
pub fn enumerate_configs(admissible_j: &[u64], m: u64) -> Vec<TailConfig> {
    if m == 0 {
        return Vec::new();
    }
    let mut js: Vec<u64> = admissible_j.iter().copied().filter(|&j| j > m).collect();
    js.sort_unstable();
    js.dedup();

    fn extend(js: &[u64], start: usize, remaining: u64, m: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for idx in start..js.len() {
            let weight = js[idx] - m;
            if weight <= remaining {
                current.push(js[idx]);
                extend(js, idx, remaining - weight, m, current, out);
                current.pop();
            }
        }
    }

    let mut jump_sets = Vec::new();
    extend(&js, 0, m, m, &mut Vec::new(), &mut jump_sets);
    jump_sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    jump_sets
        .iter()
        .map(|jumps| TailConfig::from_jumps(jumps, m).expect("jumps exceed m by construction"))
        .collect()
}

/// Sum over the tails of the genus each jump forces on a degree-d image
/// curve with t extra tame orbits.
pub fn config_genus_sum(cfg: &TailConfig, d: u64, t: u64) -> Result<u64> {
    let mut sum = 0;
    for j in cfg.jumps()? {
        sum += genus_from_jump(j, d, t)?;
    }
    Ok(sum)
}

/// Keeps the configurations containing at least one tail whose single-tail
/// genus is at least `g`: when purity forces connectedness over one tail,
/// a curve of genus g can only degenerate onto a tail of genus >= g.
pub fn filter_by_quotient_genus(
    cfgs: &[TailConfig],
    d: u64,
    t: u64,
    g: u64,
) -> Result<Vec<TailConfig>> {
    let mut kept = Vec::new();
    for cfg in cfgs {
        let mut viable = false;
        for j in cfg.jumps()? {
            if genus_from_jump(j, d, t)? >= g {
                viable = true;
                break;
            }
        }
        if viable {
            kept.push(cfg.clone());
        }
    }
    Ok(kept)
}

/// The set of invariants a single tail of a valid configuration can carry:
/// {j/m : m < j <= 2m}. Only derivable when the group action is p-pure.
pub fn minimal_invariant_set(p_pure: bool, m: u64) -> Result<BTreeSet<Ratio<u64>>> {
    if !p_pure {
        return Err(Error::InvalidInput(
            "the minimal invariant set is only derived for p-pure actions".into(),
        ));
    }
    if m == 0 {
        return Err(Error::InvalidInput("the tame multiplicity m must be positive".into()));
    }
    Ok(((m + 1)..=(2 * m)).map(|j| Ratio::new(j, m)).collect())
}
