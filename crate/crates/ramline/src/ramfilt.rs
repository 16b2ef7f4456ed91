//! Higher ramification filtrations in lower numbering, stored as the chain
//! of subgroup orders, with the exact piecewise-linear change of numbering
//! and the jump data read off from it.
//!
//! Only the orders matter: every formula here depends on the indices
//! [G_0 : G_i] alone. All arithmetic is exact rational; the jumps feed into
//! certificates and must never pass through floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A ramification filtration G_{-1} ⊇ G_0 ⊇ G_1 ⊇ ... stored by orders.
/// The internal vector holds (|G_{-1}|, |G_0|, |G_1|, ...) with trailing
/// trivial entries trimmed; groups beyond the stored range are trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamFiltration {
    orders: Vec<u64>,
}

fn is_prime_power(mut n: u64) -> bool {
    if n == 1 {
        return true;
    }
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            while n % q == 0 {
                n /= q;
            }
            return n == 1;
        }
        q += 1;
    }
    true
}

fn rational(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RamFiltration {
    /// Builds a filtration from the full order sequence starting at G_{-1}.
    pub fn from_orders(orders: Vec<u64>) -> Result<RamFiltration> {
        if orders.len() < 2 {
            return Err(Error::InvalidInput(
                "a filtration needs at least the orders of G_{-1} and G_0".into(),
            ));
        }
        for pair in orders.windows(2) {
            if pair[0] == 0 || pair[1] == 0 || pair[0] % pair[1] != 0 {
                return Err(Error::InvalidInput(format!(
                    "consecutive orders {} and {} are not a subgroup step",
                    pair[0], pair[1]
                )));
            }
        }
        let wild = orders.get(2).copied().unwrap_or(1);
        if !is_prime_power(wild) {
            return Err(Error::InvalidInput(format!(
                "|G_1| = {wild} is not a prime power, so the wild part is malformed"
            )));
        }
        let mut orders = orders;
        while orders.len() > 2 && *orders.last().unwrap() == 1 {
            orders.pop();
        }
        Ok(RamFiltration { orders })
    }

    /// Builds a filtration from (|G_0|, |G_1|, ...), taking G_{-1} = G_0.
    pub fn from_orders_g0(orders: &[u64]) -> Result<RamFiltration> {
        let first = *orders.first().ok_or_else(|| {
            Error::InvalidInput("a filtration needs at least the order of G_0".into())
        })?;
        let mut full = Vec::with_capacity(orders.len() + 1);
        full.push(first);
        full.extend_from_slice(orders);
        RamFiltration::from_orders(full)
    }

    /// The filtration of a group of order p·m with a single wild jump at j:
    /// G_{-1} = G_0 of order p·m, G_1 through G_j of order p.
    pub fn from_inertia(p: u64, m: u64, j: u64) -> Result<RamFiltration> {
        if !crate::subgrp::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if m == 0 || m % p == 0 {
            return Err(Error::InvalidInput(format!(
                "complement order {m} must be nonzero and coprime to {p}"
            )));
        }
        if j == 0 || j % p == 0 {
            return Err(Error::InvalidInput(format!(
                "a single wild jump at {j} is impossible: j must be positive and prime to {p}"
            )));
        }
        let mut orders = vec![p * m, p * m];
        orders.extend(std::iter::repeat(p).take(j as usize));
        RamFiltration::from_orders(orders)
    }

    /// |G_i| for any i ≥ -1; trivial beyond the stored range.
    pub fn order_at(&self, i: i64) -> u64 {
        if i < -1 {
            return 1;
        }
        let idx = (i + 1) as usize;
        self.orders.get(idx).copied().unwrap_or(1)
    }

    /// |G_0|.
    pub fn g0(&self) -> u64 {
        self.orders[1]
    }

    /// True when the wild part G_1 is nontrivial.
    pub fn is_wild(&self) -> bool {
        self.order_at(1) > 1
    }

    /// The largest index i ≥ 0 with G_i nontrivial, if any.
    pub fn last_nontrivial(&self) -> Option<u64> {
        (0..self.orders.len() as i64 - 1)
            .rev()
            .find(|&i| self.order_at(i) > 1)
            .map(|i| i as u64)
    }
}

/// The change-of-numbering value t = H(s): the integral from 0 to s of
/// dx / [G_0 : G_x], with G_x read at the ceiling of x.
pub fn herbrand_phi(f: &RamFiltration, s: &BigRational) -> Result<BigRational> {
    if s.is_negative() {
        return Err(Error::InvalidInput(format!("H is only defined for s >= 0, got {s}")));
    }
    let g0 = rational(f.g0());
    let mut acc = BigRational::zero();
    let mut i: i64 = 1;
    let mut prev = BigRational::zero();
    loop {
        let here = rational(i as u64);
        let slope = rational(f.order_at(i)) / &g0;
        if *s <= here {
            return Ok(acc + (s - prev) * slope);
        }
        if f.order_at(i) == 1 {
            // Constant slope 1/|G_0| from here on.
            return Ok(acc + (s - prev) * slope);
        }
        acc += (&here - &prev) * slope;
        prev = here;
        i += 1;
    }
}

/// The inverse change of numbering: the unique s ≥ 0 with H(s) = t.
pub fn herbrand_psi(f: &RamFiltration, t: &BigRational) -> Result<BigRational> {
    if t.is_negative() {
        return Err(Error::InvalidInput(format!(
            "the inverse map is only defined for t >= 0, got {t}"
        )));
    }
    let g0 = rational(f.g0());
    let mut acc = BigRational::zero();
    let mut prev = BigRational::zero();
    let mut i: i64 = 1;
    loop {
        let here = rational(i as u64);
        let slope = rational(f.order_at(i)) / &g0;
        let next_acc = &acc + (&here - &prev) * &slope;
        if *t <= next_acc || f.order_at(i) == 1 {
            return Ok(&prev + (t - &acc) / slope);
        }
        acc = next_acc;
        prev = here;
        i += 1;
    }
}

/// The graph of H as breakpoints: (0, 0) followed by one vertex at every
/// integer where the slope changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HerbrandFn {
    pub breakpoints: Vec<(BigRational, BigRational)>,
}

/// The breakpoint form of the change of numbering for a filtration.
pub fn herbrand_fn(f: &RamFiltration) -> Result<HerbrandFn> {
    let mut breakpoints = vec![(BigRational::zero(), BigRational::zero())];
    if let Some(n) = f.last_nontrivial() {
        for i in 1..=n as i64 {
            if f.order_at(i) > f.order_at(i + 1) {
                let s = rational(i as u64);
                let t = herbrand_phi(f, &s)?;
                breakpoints.push((s, t));
            }
        }
    }
    Ok(HerbrandFn { breakpoints })
}

/// The upper-numbering jumps: H(i) for every index i ≥ 0 where the
/// filtration drops, including the tame jump at 0 when G_0 exceeds G_1.
pub fn upper_jumps(f: &RamFiltration) -> Result<Vec<BigRational>> {
    let mut jumps = Vec::new();
    let last = f.last_nontrivial().map(|n| n as i64).unwrap_or(-1);
    for i in 0..=last {
        if f.order_at(i) > f.order_at(i + 1) {
            jumps.push(herbrand_phi(f, &rational(i as u64))?);
        }
    }
    Ok(jumps)
}

/// The largest upper jump. With a wild part present the largest jump is
/// the wild one; a tame filtration is an error since its only jump carries
/// no invariant.
pub fn ram_invariant(f: &RamFiltration) -> Result<BigRational> {
    if !f.is_wild() {
        return Err(Error::InvalidInput(
            "a tame filtration has no ramification invariant".into(),
        ));
    }
    upper_jumps(f)?
        .into_iter()
        .max()
        .ok_or_else(|| Error::InvalidInput("no jumps in the filtration".into()))
}

/// The last nontrivial lower index, which the inverse map sends the
/// ramification invariant back to.
pub fn inertia_jump(f: &RamFiltration) -> Result<u64> {
    if !f.is_wild() {
        return Err(Error::InvalidInput(
            "a tame filtration has no inertia jump".into(),
        ));
    }
    Ok(f.last_nontrivial().expect("wild filtration has a nontrivial index"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn phi_on_the_order_55_example() {
        let f = RamFiltration::from_inertia(11, 5, 8).unwrap();
        assert_eq!(herbrand_phi(&f, &rat(8, 1)).unwrap(), rat(8, 5));
        assert_eq!(herbrand_phi(&f, &rat(0, 1)).unwrap(), rat(0, 1));
        // Beyond the last nontrivial index the slope is 1/55.
        assert_eq!(
            herbrand_phi(&f, &rat(19, 1)).unwrap(),
            rat(8, 5) + rat(11, 55)
        );
        assert!(herbrand_phi(&f, &rat(-1, 1)).is_err());
    }

    #[test]
    fn phi_is_the_identity_for_trivial_action() {
        let f = RamFiltration::from_inertia(11, 1, 7).unwrap();
        assert_eq!(herbrand_phi(&f, &rat(7, 1)).unwrap(), rat(7, 1));
        assert_eq!(herbrand_phi(&f, &rat(13, 2)).unwrap(), rat(13, 2));
    }

    #[test]
    fn psi_inverts_phi() {
        let f = RamFiltration::from_inertia(11, 5, 8).unwrap();
        assert_eq!(herbrand_psi(&f, &rat(8, 5)).unwrap(), rat(8, 1));
        assert_eq!(herbrand_psi(&f, &rat(0, 1)).unwrap(), rat(0, 1));
        for (n, d) in [(1, 3), (7, 5), (8, 5), (12, 7), (95, 11)] {
            let s = rat(n, d);
            let t = herbrand_phi(&f, &s).unwrap();
            assert_eq!(herbrand_psi(&f, &t).unwrap(), s);
        }
    }

    #[test]
    fn jumps_of_single_break_filtrations() {
        let f = RamFiltration::from_inertia(11, 5, 8).unwrap();
        assert_eq!(upper_jumps(&f).unwrap(), vec![rat(0, 1), rat(8, 5)]);
        assert_eq!(ram_invariant(&f).unwrap(), rat(8, 5));
        assert_eq!(inertia_jump(&f).unwrap(), 8);
        assert_eq!(
            herbrand_psi(&f, &ram_invariant(&f).unwrap()).unwrap(),
            rat(8, 1)
        );

        let g = RamFiltration::from_orders_g0(&[11, 11, 11]).unwrap();
        assert_eq!(upper_jumps(&g).unwrap(), vec![rat(2, 1)]);
        assert_eq!(ram_invariant(&g).unwrap(), rat(2, 1));
        assert_eq!(inertia_jump(&g).unwrap(), 2);

        let h = RamFiltration::from_inertia(11, 5, 10).unwrap();
        assert_eq!(ram_invariant(&h).unwrap(), rat(2, 1));
        assert_eq!(inertia_jump(&h).unwrap(), 10);

        let six = RamFiltration::from_inertia(11, 5, 6).unwrap();
        assert_eq!(inertia_jump(&six).unwrap(), 6);
    }

    #[test]
    fn tame_and_trivial_filtrations() {
        let trivial = RamFiltration::from_orders(vec![1, 1]).unwrap();
        assert!(upper_jumps(&trivial).unwrap().is_empty());
        assert!(ram_invariant(&trivial).is_err());

        let tame = RamFiltration::from_orders(vec![5, 5]).unwrap();
        assert_eq!(upper_jumps(&tame).unwrap(), vec![rat(0, 1)]);
        assert!(ram_invariant(&tame).is_err());
        assert!(inertia_jump(&tame).is_err());
    }

    #[test]
    fn breakpoints_are_concave_and_increasing() {
        let f = RamFiltration::from_orders_g0(&[168, 7, 7, 7, 7, 7]).unwrap();
        let h = herbrand_fn(&f).unwrap();
        assert_eq!(h.breakpoints[0], (rat(0, 1), rat(0, 1)));
        let mut last_slope: Option<BigRational> = None;
        for pair in h.breakpoints.windows(2) {
            let (s0, t0) = &pair[0];
            let (s1, t1) = &pair[1];
            assert!(s1 > s0 && t1 > t0);
            let slope = (t1 - t0) / (s1 - s0);
            if let Some(prev) = last_slope {
                assert!(slope <= prev);
            }
            last_slope = Some(slope);
        }
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(RamFiltration::from_orders(vec![55]).is_err());
        assert!(RamFiltration::from_orders(vec![55, 7]).is_err());
        assert!(RamFiltration::from_orders(vec![55, 55, 6]).is_err());
        assert!(RamFiltration::from_inertia(11, 5, 11).is_err());
        assert!(RamFiltration::from_inertia(11, 22, 8).is_err());
        assert!(RamFiltration::from_inertia(12, 5, 8).is_err());
    }
}
