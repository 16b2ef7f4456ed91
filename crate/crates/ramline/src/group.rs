//! Permutation groups backed by a deterministic stabilizer chain.
//!
//! The chain is built with the classical Schreier-Sims procedure, processing
//! every Schreier generator, so the resulting base and strong generating set
//! is certified without randomization. [`PermGroup::verify_chain`] re-checks
//! the closure property independently and is exercised by the test suite.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// One level of the stabilizer chain: the subgroup fixing the base prefix,
/// its orbit of `base_point`, and a transversal of coset representatives.
#[derive(Clone, Debug)]
struct ChainLevel {
    base_point: usize,
    /// Generators of this level's subgroup (they fix all earlier base points).
    gens: Vec<Permutation>,
    /// `transversal[p]` maps `base_point` to `p` when `p` is in the orbit.
    transversal: Vec<Option<Permutation>>,
    /// Orbit points in BFS discovery order.
    orbit: Vec<usize>,
}

impl ChainLevel {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Permutation::identity(degree));
        ChainLevel {
            base_point,
            gens: Vec::new(),
            transversal,
            orbit: vec![base_point],
        }
    }
}

/// A finite permutation group on `0..degree` with a stabilizer chain.
///
/// Immutable once built; cheap to share across threads.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<ChainLevel>,
    order: BigUint,
}

impl PermGroup {
    /// Builds the group generated by `gens`.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::with_base_hint(degree, gens, &[])
    }

    /// Builds the group, forcing the base to start with the given points.
    ///
    /// Useful for reading off point stabilizers: after building with base
    /// hint `[p]`, the strong generators below level 0 generate the
    /// stabilizer of `p`.
    pub fn with_base_hint(degree: usize, gens: Vec<Permutation>, hint: &[usize]) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(g.degree(), degree));
            }
        }
        let mut levels: Vec<ChainLevel> = hint
            .iter()
            .map(|&p| ChainLevel::new(p, degree))
            .collect();
        let mut builder = ChainBuilder {
            degree,
            levels: &mut levels,
        };
        for g in &gens {
            builder.insert(g.clone());
        }
        let mut order = BigUint::one();
        for lvl in levels.iter() {
            order *= BigUint::from(lvl.orbit.len());
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            levels,
            order,
        })
    }

    /// Trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: BigUint::one(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generators the group was built from.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Group order as an unbounded integer.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Group order as `u128`, when it fits.
    pub fn order_u128(&self) -> Option<u128> {
        u128::try_from(&self.order).ok()
    }

    /// Base points of the stabilizer chain.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Membership test by sifting through the chain.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        match self.sift(p) {
            Some(residue) => residue.is_identity(),
            None => false,
        }
    }

    /// Sift `p` through the chain; `None` if it falls outside an orbit,
    /// otherwise the residue after dividing out all levels.
    fn sift(&self, p: &Permutation) -> Option<Permutation> {
        let mut cur = p.clone();
        for lvl in &self.levels {
            let image = cur.apply(lvl.base_point);
            if image == lvl.base_point {
                continue;
            }
            let rep = lvl.transversal[image].as_ref()?;
            cur = &rep.inverse() * &cur;
        }
        Some(cur)
    }

    /// Whether `other`'s generators all lie in this group.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Uniformly random element, deterministic for a fixed RNG state.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for lvl in &self.levels {
            let pick = lvl.orbit[rng.gen_range(0..lvl.orbit.len())];
            let rep = lvl.transversal[pick].as_ref().expect("orbit point has rep");
            acc = &acc * rep;
        }
        acc
    }

    /// Orbit of a point under the whole group, in BFS order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(&self.generators, self.degree, point)
    }

    /// All orbits, each in BFS order, sorted by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let orb = self.orbit(p);
            for &q in &orb {
                seen[q] = true;
            }
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).len() == self.degree
    }

    /// Generators of the stabilizer of `point`.
    ///
    /// Rebuilds the chain with `point` forced first, then collects the strong
    /// generators of deeper levels.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        let rebased = PermGroup::with_base_hint(self.degree, self.generators.clone(), &[point])?;
        let mut gens: Vec<Permutation> = Vec::new();
        for lvl in rebased.levels.iter().skip(1) {
            for g in &lvl.gens {
                if !gens.contains(g) {
                    gens.push(g.clone());
                }
            }
        }
        PermGroup::from_generators(self.degree, gens)
    }

    /// All elements in a canonical order. Errors if the order exceeds `limit`.
    pub fn elements_bounded(&self, limit: usize) -> Result<Vec<Permutation>> {
        if self.order > BigUint::from(limit) {
            return Err(Error::TooLarge(format!(
                "group of order {} exceeds element enumeration limit {limit}",
                self.order
            )));
        }
        let mut out = vec![Permutation::identity(self.degree)];
        // Left-coset products rep * tail, built from the deepest level out,
        // so every element factors uniquely and the order is deterministic.
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for rep_point in &lvl.orbit {
                let rep = lvl.transversal[*rep_point].as_ref().unwrap();
                for tail in &out {
                    next.push(rep * tail);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Independent check that the chain is closed and complete.
    pub fn verify_chain(&self) -> bool {
        for (i, lvl) in self.levels.iter().enumerate() {
            for g in &lvl.gens {
                // strong generators must fix all earlier base points
                if self.levels[..i].iter().any(|up| g.apply(up.base_point) != up.base_point) {
                    return false;
                }
            }
            for &u in &lvl.orbit {
                let tu = lvl.transversal[u].as_ref().unwrap();
                if tu.apply(lvl.base_point) != u {
                    return false;
                }
                for s in &lvl.gens {
                    let v = s.apply(u);
                    let tv = match lvl.transversal[v].as_ref() {
                        Some(t) => t,
                        None => return false,
                    };
                    let schreier = &(&tv.inverse() * s) * tu;
                    match self.sift_from(i + 1, schreier) {
                        Some(res) if res.is_identity() => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    fn sift_from(&self, start: usize, p: Permutation) -> Option<Permutation> {
        let mut cur = p;
        for lvl in &self.levels[start.min(self.levels.len())..] {
            let image = cur.apply(lvl.base_point);
            if image == lvl.base_point {
                continue;
            }
            let rep = lvl.transversal[image].as_ref()?;
            cur = &rep.inverse() * &cur;
        }
        Some(cur)
    }
}

/// Incremental Schreier-Sims construction state.
///
/// Generator sets are kept nested: an element known to fix the base prefix of
/// levels `0..low` is added to the generator list of every level from `low`
/// down to the deepest level whose base prefix it fixes. This keeps each
/// level's generators spanning the full prefix stabilizer, which is what the
/// orbit-size product formula for the order relies on.
struct ChainBuilder<'a> {
    degree: usize,
    levels: &'a mut Vec<ChainLevel>,
}

impl ChainBuilder<'_> {
    fn insert(&mut self, p: Permutation) {
        if p.is_identity() {
            return;
        }
        self.add_from(0, p);
    }

    /// Adds `g`, already known to fix the base points of levels `0..low`.
    fn add_from(&mut self, low: usize, g: Permutation) {
        let mut j = low;
        while j < self.levels.len() && g.apply(self.levels[j].base_point) == self.levels[j].base_point
        {
            j += 1;
        }
        if j == self.levels.len() {
            let b = g.first_moved_point().expect("non-identity");
            self.levels.push(ChainLevel::new(b, self.degree));
        }
        for k in low..=j {
            self.add_generator_at(k, g.clone());
        }
    }

    /// Pushes `g` onto level `k` and restores the Schreier condition for the
    /// new orbit/generator pairs this creates.
    fn add_generator_at(&mut self, k: usize, g: Permutation) {
        if self.levels[k].gens.contains(&g) {
            return;
        }
        self.levels[k].gens.push(g);
        let new_gen_idx = self.levels[k].gens.len() - 1;
        let mut pair_queue: Vec<(usize, usize)> = self.levels[k]
            .orbit
            .iter()
            .map(|&u| (u, new_gen_idx))
            .collect();
        let mut qi = 0;
        while qi < pair_queue.len() {
            let (u, gi) = pair_queue[qi];
            qi += 1;
            let s = self.levels[k].gens[gi].clone();
            let v = s.apply(u);
            let tu = self.levels[k].transversal[u].clone().expect("orbit point");
            if self.levels[k].transversal[v].is_none() {
                // new orbit point: record its rep, queue fresh pairs
                self.levels[k].transversal[v] = Some(&s * &tu);
                self.levels[k].orbit.push(v);
                for gj in 0..self.levels[k].gens.len() {
                    pair_queue.push((v, gj));
                }
                continue;
            }
            let tv = self.levels[k].transversal[v].clone().unwrap();
            let schreier = &(&tv.inverse() * &s) * &tu;
            if let Some(res) = self.sift_residue(k + 1, schreier) {
                self.add_from(k + 1, res);
            }
        }
    }

    /// Divides by transversal reps from `start` on; `None` when reduced away.
    fn sift_residue(&self, start: usize, p: Permutation) -> Option<Permutation> {
        let mut cur = p;
        for lvl in &self.levels[start.min(self.levels.len())..] {
            if cur.is_identity() {
                return None;
            }
            let image = cur.apply(lvl.base_point);
            if image == lvl.base_point {
                continue;
            }
            match lvl.transversal[image].as_ref() {
                Some(rep) => cur = &rep.inverse() * &cur,
                None => break,
            }
        }
        if cur.is_identity() {
            None
        } else {
            Some(cur)
        }
    }
}

/// Orbit of `point` under a generator list, in BFS order.
pub fn orbit_of(gens: &[Permutation], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut qi = 0;
    while qi < orbit.len() {
        let u = orbit[qi];
        qi += 1;
        for g in gens {
            let v = g.apply(u);
            if !seen[v] {
                seen[v] = true;
                orbit.push(v);
            }
        }
    }
    orbit
}
