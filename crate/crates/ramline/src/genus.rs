//! Genus arithmetic for branched covers: global Riemann–Hurwitz for a
//! Galois cover, the intermediate-quotient genus formula, a cycle-type
//! oracle for the same quotient, and the closed form tying a single wild
//! jump to the genus of a degree-d image curve.
//!
//! Everything is computed in exact rationals and converted to an integer
//! genus at the end, so a malformed configuration surfaces as an error
//! instead of a rounded value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Converts an exact rational genus to u64, rejecting fractional or
/// negative values.
fn genus_to_integer(g: &BigRational, what: &str) -> Result<u64> {
    if !g.is_integer() {
        return Err(Error::Inconsistent(format!("{what} gives the fractional genus {g}")));
    }
    if g.is_negative() {
        return Err(Error::Inconsistent(format!("{what} gives the negative genus {g}")));
    }
    g.to_integer()
        .to_u64()
        .ok_or_else(|| Error::TooLarge(format!("{what} overflows a 64-bit genus")))
}

/// One branch point of a degree-d map: the inertia order upstairs and the
/// cycle type of the local monodromy downstairs.
#[derive(Clone, Debug)]
pub struct BranchPoint {
    pub inertia_order: u64,
    pub cycle_type: Vec<u64>,
}

/// Branch data of a cover: the list of branch points.
#[derive(Clone, Debug, Default)]
pub struct BranchData {
    pub points: Vec<BranchPoint>,
}

/// Genus of the total space of a Galois cover of a genus-g base, branched
/// tamely at points with the given inertia orders:
/// 2 g(Y) − 2 = |G| (2 g_base − 2) + |G| Σ (1 − 1/|I_i|).
pub fn rh_cover_genus(order_g: u64, base_genus: u64, inertia_orders: &[u64]) -> Result<u64> {
    if order_g == 0 {
        return Err(Error::InvalidInput("group order must be positive".into()));
    }
    let og = rat(order_g);
    let mut two_g_minus_2 = &og * (rat(2) * rat(base_genus) - rat(2));
    for &i in inertia_orders {
        if i == 0 {
            return Err(Error::InvalidInput("inertia orders must be positive".into()));
        }
        two_g_minus_2 += &og * (rat(i) - rat(1)) / rat(i);
    }
    genus_to_integer(&((two_g_minus_2 + rat(2)) / rat(2)), "the Galois cover formula")
}

/// Per-branch-point orders entering the intermediate genus formula.
#[derive(Clone, Debug)]
pub struct IntermediatePoint {
    /// |I_i|
    pub inertia_order: u64,
    /// |N_G(I_i)|
    pub normalizer_in_g: u64,
    /// |N_H(I_i)|
    pub normalizer_in_h: u64,
    /// |H ∩ I_i|
    pub intersection_order: u64,
}

/// Input to the intermediate genus formula for X = Y/H under Y -> Y/G.
#[derive(Clone, Debug)]
pub struct IntermediateGenusInput {
    /// [G : H]
    pub index_gh: u64,
    /// [N_G(H) : H]
    pub index_nh: u64,
    pub points: Vec<IntermediatePoint>,
}

impl IntermediateGenusInput {
    fn validate(&self) -> Result<()> {
        if self.index_gh == 0 || self.index_nh == 0 {
            return Err(Error::InvalidInput("subgroup indices must be positive".into()));
        }
        for pt in &self.points {
            if pt.inertia_order == 0
                || pt.normalizer_in_g == 0
                || pt.normalizer_in_h == 0
                || pt.intersection_order == 0
            {
                return Err(Error::InvalidInput("all orders must be positive".into()));
            }
            if pt.inertia_order % pt.intersection_order != 0 {
                return Err(Error::InvalidInput(format!(
                    "intersection order {} does not divide the inertia order {}",
                    pt.intersection_order, pt.inertia_order
                )));
            }
        }
        Ok(())
    }
}

/// The exact rational value of the intermediate genus formula:
/// g = 1 − [G:H] + ([G:H]/2) Σ (1 − 1/|I_i|)
///       − ([N_G(H):H]/2) Σ (|N_G(I_i)| / |N_H(I_i)|) (1 − 1/|H∩I_i|).
fn intermediate_genus_value(inp: &IntermediateGenusInput) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut g = BigRational::one() - rat(inp.index_gh);
    for pt in &inp.points {
        g += &half * rat(inp.index_gh) * (rat(pt.inertia_order) - rat(1)) / rat(pt.inertia_order);
        g -= &half
            * rat(inp.index_nh)
            * (rat(pt.normalizer_in_g) / rat(pt.normalizer_in_h))
            * (rat(pt.intersection_order) - rat(1))
            / rat(pt.intersection_order);
    }
    g
}

/// Genus of the quotient X = Y/H, from the subgroup indices and the
/// per-point normalizer and intersection orders.
pub fn intermediate_genus(inp: &IntermediateGenusInput) -> Result<u64> {
    inp.validate()?;
    genus_to_integer(&intermediate_genus_value(inp), "the intermediate genus formula")
}

/// Independent oracle for the quotient genus: ordinary Riemann–Hurwitz on
/// the degree-d map from the cycle types of the local monodromy,
/// 2g − 2 = −2d + Σ_points Σ_cycles (length − 1).
pub fn quotient_genus_cycletypes(d: u64, branch: &BranchData) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidInput("the map degree must be positive".into()));
    }
    let mut two_g_minus_2 = BigRational::zero() - rat(2) * rat(d);
    for pt in &branch.points {
        if pt.inertia_order == 0 {
            return Err(Error::InvalidInput("inertia orders must be positive".into()));
        }
        let total: u64 = pt.cycle_type.iter().sum();
        if total != d || pt.cycle_type.iter().any(|&c| c == 0) {
            return Err(Error::InvalidInput(format!(
                "cycle type {:?} is not a partition of {d}",
                pt.cycle_type
            )));
        }
        for &len in &pt.cycle_type {
            two_g_minus_2 += rat(len) - rat(1);
        }
    }
    genus_to_integer(&((two_g_minus_2 + rat(2)) / rat(2)), "the cycle-type formula")
}

/// Genus of a degree-d image curve with one wild jump j and t extra tame
/// orbits: (2j − t − d + 1) / 2.
pub fn genus_from_jump(j: u64, d: u64, t: u64) -> Result<u64> {
    let value = 2 * (j as i128) - (t as i128) - (d as i128) + 1;
    if value < 0 {
        return Err(Error::Inconsistent(format!(
            "jump {j} with degree {d} and {t} tame orbits gives a negative genus"
        )));
    }
    if value % 2 != 0 {
        return Err(Error::Inconsistent(format!(
            "jump {j} with degree {d} and {t} tame orbits violates genus parity"
        )));
    }
    Ok((value / 2) as u64)
}

/// The number of orbits of the complement action: the parts of theta's
/// cycle type on the d − p points away from the wild orbit.
pub fn orbit_count_t(theta_cycle_type: &[u64], d: u64, p: u64) -> Result<u64> {
    if p > d {
        return Err(Error::InvalidInput(format!(
            "the wild orbit size {p} exceeds the degree {d}"
        )));
    }
    let total: u64 = theta_cycle_type.iter().sum();
    if total != d - p || theta_cycle_type.iter().any(|&c| c == 0) {
        return Err(Error::InvalidInput(format!(
            "cycle type {theta_cycle_type:?} is not a partition of {}",
            d - p
        )));
    }
    Ok(theta_cycle_type.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn prop56_input() -> IntermediateGenusInput {
        IntermediateGenusInput {
            index_gh: 12,
            index_nh: 1,
            points: vec![
                IntermediatePoint {
                    inertia_order: 11,
                    normalizer_in_g: 55,
                    normalizer_in_h: 55,
                    intersection_order: 11,
                };
                3
            ],
        }
    }

    #[test]
    fn galois_cover_genus_examples() {
        assert_eq!(rh_cover_genus(7920, 0, &[11, 11, 11]).unwrap(), 2881);
        assert_eq!(rh_cover_genus(660, 0, &[11, 11, 11]).unwrap(), 241);
        assert_eq!(rh_cover_genus(1, 0, &[]).unwrap(), 0);
        // 2g-2 = -2*6 + 6*(1/2 + 2/3) = -5 is odd times half: fractional.
        assert!(rh_cover_genus(6, 0, &[2, 3]).is_err());
    }

    #[test]
    fn intermediate_genus_on_the_degree_12_triple() {
        assert_eq!(intermediate_genus(&prop56_input()).unwrap(), 4);
    }

    #[test]
    fn intermediate_genus_degenerate_quotient() {
        let inp = IntermediateGenusInput {
            index_gh: 1,
            index_nh: 1,
            points: vec![
                IntermediatePoint {
                    inertia_order: 11,
                    normalizer_in_g: 55,
                    normalizer_in_h: 55,
                    intersection_order: 11,
                };
                3
            ],
        };
        assert_eq!(intermediate_genus(&inp).unwrap(), 0);
    }

    #[test]
    fn cycletype_oracle_examples() {
        let triple = BranchData {
            points: (0..3)
                .map(|_| BranchPoint {
                    inertia_order: 11,
                    cycle_type: vec![11, 1],
                })
                .collect(),
        };
        assert_eq!(quotient_genus_cycletypes(12, &triple).unwrap(), 4);
        assert_eq!(
            quotient_genus_cycletypes(1, &BranchData::default()).unwrap(),
            0
        );
        let eleven = BranchData {
            points: (0..3)
                .map(|_| BranchPoint {
                    inertia_order: 11,
                    cycle_type: vec![11],
                })
                .collect(),
        };
        assert_eq!(quotient_genus_cycletypes(11, &eleven).unwrap(), 5);
        assert_eq!(
            intermediate_genus(&prop56_input()).unwrap(),
            quotient_genus_cycletypes(12, &triple).unwrap()
        );
    }

    #[test]
    fn quotient_formula_matches_the_two_global_formulas() {
        // Eliminating g(Y) from the two global formulas
        //   2g(Y)-2 = |G|(-2) + |G| sum (1 - 1/|I_i|)
        //   2g(Y)-2 = |H|(2g-2) + |N_G(H)| sum (|N_G(I_i)|/|N_H(I_i)|)(1 - 1/|H cap I_i|)
        // must reproduce the quotient formula identically, whatever the
        // orders are.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let order_h: u64 = rng.gen_range(1..50);
            let index_gh: u64 = rng.gen_range(1..50);
            let index_nh: u64 = rng.gen_range(1..8);
            let order_g = order_h * index_gh;
            let order_ngh = order_h * index_nh;
            let points: Vec<IntermediatePoint> = (0..rng.gen_range(0..4))
                .map(|_| IntermediatePoint {
                    inertia_order: rng.gen_range(1..30),
                    normalizer_in_g: rng.gen_range(1..100),
                    normalizer_in_h: rng.gen_range(1..100),
                    intersection_order: rng.gen_range(1..30),
                })
                .collect();

            let mut two_gy_minus_2 = rat(order_g) * (BigRational::zero() - rat(2));
            for pt in &points {
                two_gy_minus_2 += rat(order_g) * (rat(pt.inertia_order) - rat(1)) / rat(pt.inertia_order);
            }
            let mut wild_side = two_gy_minus_2;
            for pt in &points {
                wild_side -= rat(order_ngh)
                    * (rat(pt.normalizer_in_g) / rat(pt.normalizer_in_h))
                    * (rat(pt.intersection_order) - rat(1))
                    / rat(pt.intersection_order);
            }
            let g_eliminated = (wild_side / rat(order_h) + rat(2)) / rat(2);

            let inp = IntermediateGenusInput {
                index_gh,
                index_nh,
                points,
            };
            assert_eq!(intermediate_genus_value(&inp), g_eliminated);
        }
    }

    #[test]
    fn jump_genus_closed_form() {
        assert_eq!(genus_from_jump(8, 11, 0).unwrap(), 3);
        assert_eq!(genus_from_jump(10, 12, 1).unwrap(), 4);
        assert_eq!(genus_from_jump(6, 12, 1).unwrap(), 0);
        assert!(genus_from_jump(5, 12, 1).is_err());
        assert!(genus_from_jump(8, 12, 0).is_err());
        for j in 6..40 {
            let a = genus_from_jump(j, 11, 0).unwrap();
            let b = genus_from_jump(j, 12, 1).unwrap();
            assert_eq!(a - b, 1);
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(orbit_count_t(&[], 11, 11).unwrap(), 0);
        assert_eq!(orbit_count_t(&[1], 12, 11).unwrap(), 1);
        assert_eq!(orbit_count_t(&[3, 2, 2], 18, 11).unwrap(), 3);
        assert!(orbit_count_t(&[2], 12, 11).is_err());
        assert!(orbit_count_t(&[], 10, 11).is_err());
    }
}
