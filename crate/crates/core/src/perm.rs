//! Permutations of `{0..n-1}` and closure of permutation sets into groups.

use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

/// A bijection of `{0..n-1}`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Permutation {
    images: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("image list is not a permutation of 0..{0}")]
    NotBijective(usize),
    #[error("group closure exceeded {limit} elements")]
    ClosureLimitExceeded { limit: usize },
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u32).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijective(n));
            }
            seen[i] = true;
        }
        Ok(Self { images: images.into_iter().map(|i| i as u32).collect() })
    }

    /// Builds `i ↦ f(i)`; the caller guarantees bijectivity.
    pub(crate) fn from_fn_unchecked(n: usize, f: impl Fn(usize) -> usize) -> Self {
        Self { images: (0..n).map(|i| f(i) as u32).collect() }
    }

    /// Cycle notation with the given offset: `[[0, 1]]` over 3 points is `(0 1)`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (k, &p) in c.iter().enumerate() {
                if p >= n {
                    return Err(PermError::NotBijective(n));
                }
                images[p] = c[(k + 1) % c.len()];
            }
        }
        Self::new(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    /// `self` followed by `other`: `i ↦ other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Self { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = alloc::vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &j)| i as u32 == j).count()
    }

    /// Cycle lengths in non-increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.apply(s) == s {
                seen[s] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Is this a single cycle moving every point (the identity on one point counts)?
    pub fn is_full_cycle(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return false;
        }
        let mut x = 0;
        for k in 1..=n {
            x = self.apply(x);
            if x == 0 {
                return k == n;
            }
        }
        false
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// The group generated by `gens` (all of the same degree), as an element
/// list in breadth-first discovery order starting from the identity.
///
/// For a finite set of permutations closure under composition already
/// contains all inverses.
pub fn closure(degree: usize, gens: &[Permutation], limit: usize) -> Result<Vec<Permutation>, PermError> {
    let id = Permutation::identity(degree);
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elems = alloc::vec![id.clone()];
    index.insert(id, 0);
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        head += 1;
        for g in gens {
            let next = cur.then(g);
            if !index.contains_key(&next) {
                if elems.len() >= limit {
                    return Err(PermError::ClosureLimitExceeded { limit });
                }
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
    }
    Ok(elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_type_and_inverse() {
        let p = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.cycle_type(), alloc::vec![3, 2]);
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.fixed_points(), 0);
        assert!(!p.is_full_cycle());
        assert!(Permutation::from_cycles(3, &[&[0, 2, 1]]).unwrap().is_full_cycle());
    }

    #[test]
    fn rejects_non_bijection() {
        assert_eq!(Permutation::new(alloc::vec![0, 0]), Err(PermError::NotBijective(2)));
        assert!(Permutation::new(alloc::vec![2, 0]).is_err());
    }

    #[test]
    fn closure_of_s3_generators() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let g = closure(3, &[a.clone(), b], 100).unwrap();
        assert_eq!(g.len(), 6);
        assert!(closure(3, &[a], 1).is_err());
    }
}
