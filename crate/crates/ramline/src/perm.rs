//! Permutations of the points `0..degree`.
//!
//! A [`Permutation`] stores its image vector. Multiplication is function
//! composition: `(p * q)` maps `x` to `p(q(x))`, so products apply right to
//! left. Cycle notation in text form is 1-based (points `1..=degree`), which
//! matches the group data files; everything in memory is 0-based.

use std::fmt;

use crate::error::Error;

/// A permutation of `0..degree` as an explicit image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Identity permutation on `degree` points.
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image vector, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(Error::InvalidPermutation(format!(
                    "image vector {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[im] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation of `0..degree` from disjoint cycles of 0-based points.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self, Error> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle point {} out of range for degree {degree}",
                        pt + 1
                    )));
                }
                if touched[pt] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears twice in cycle list",
                        pt + 1
                    )));
                }
                touched[pt] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[pt] = next as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based disjoint cycle notation like `(1,2)(3,4,5)`; `()` is the identity.
    ///
    /// # Errors
    ///
    /// Reports the byte column of the first offending character, so callers
    /// embedding this in a file parser can produce line/column diagnostics.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, Error> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut num: Option<usize> = None;
        for (col, ch) in text.char_indices() {
            let fail = |msg: String| Error::CycleSyntax {
                column: col + 1,
                message: msg,
            };
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(fail("nested '(' in cycle".into()));
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    let mut cyc = current
                        .take()
                        .ok_or_else(|| fail("')' without matching '('".into()))?;
                    if let Some(n) = num.take() {
                        cyc.push(n);
                    } else if !cyc.is_empty() {
                        return Err(fail("trailing ',' in cycle".into()));
                    }
                    if !cyc.is_empty() {
                        cycles.push(cyc);
                    }
                }
                ',' => {
                    let cyc = current
                        .as_mut()
                        .ok_or_else(|| fail("',' outside cycle".into()))?;
                    let n = num.take().ok_or_else(|| fail("',' without a point".into()))?;
                    cyc.push(n);
                }
                '0'..='9' => {
                    if current.is_none() {
                        return Err(fail("digit outside parentheses".into()));
                    }
                    let d = ch as usize - '0' as usize;
                    let v = num.take().unwrap_or(0) * 10 + d;
                    num = Some(v);
                }
                c if c.is_whitespace() => {
                    if num.is_some() {
                        return Err(fail("whitespace inside a point number".into()));
                    }
                }
                other => return Err(fail(format!("unexpected character {other:?}"))),
            }
            if let Some(v) = num {
                if v > degree {
                    return Err(Error::CycleSyntax {
                        column: col + 1,
                        message: format!("point {v} exceeds degree {degree}"),
                    });
                }
            }
        }
        if current.is_some() {
            return Err(Error::CycleSyntax {
                column: text.len(),
                message: "unclosed '('".into(),
            });
        }
        for cyc in &mut cycles {
            for pt in cyc.iter_mut() {
                if *pt == 0 {
                    return Err(Error::CycleSyntax {
                        column: 0,
                        message: "points are 1-based; 0 is not a point".into(),
                    });
                }
                *pt -= 1;
            }
        }
        Self::from_cycles(&cycles, degree)
    }

    /// Number of points acted on (including fixed ones).
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a single point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Raw image vector.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// Smallest moved point, or `None` for the identity.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &im)| *i as u32 != im)
            .map(|(i, _)| i)
    }

    /// Points not fixed by the permutation.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &im)| *i as u32 != im)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g * self * g^-1`, the conjugate acting as `self` does on `g`-images.
    pub fn conjugated_by(&self, g: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), g.degree());
        let mut images = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[im as usize];
        }
        Permutation { images }
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u128 {
        let mut ord: u128 = 1;
        for cycle in self.cycles() {
            let len = cycle.len() as u128;
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// `self` raised to the `k`-th power (`k` may be 0).
    pub fn pow(&self, k: u128) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &base * &acc;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its least point, sorted by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle type as a sorted list of cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat(1).take(self.degree() - moved));
        lens.sort_unstable();
        lens
    }

    /// Re-labels a permutation that fixes every point >= `degree` down to `degree` points.
    pub fn restricted(&self, degree: usize) -> Result<Permutation, Error> {
        for pt in degree..self.degree() {
            if self.apply(pt) != pt {
                return Err(Error::InvalidPermutation(format!(
                    "point {} is moved, cannot restrict to degree {degree}",
                    pt + 1
                )));
            }
        }
        if self.images[..degree].iter().any(|&im| im as usize >= degree) {
            return Err(Error::InvalidPermutation(format!(
                "support crosses the degree-{degree} boundary"
            )));
        }
        Ok(Permutation {
            images: self.images[..degree].to_vec(),
        })
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    /// Function composition: `(p * q)(x) = p(q(x))`.
    fn mul(self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        let images = rhs
            .images
            .iter()
            .map(|&im| self.images[im as usize])
            .collect();
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (k, pt) in cyc.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
