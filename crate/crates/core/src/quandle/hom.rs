//! Backtracking search for homomorphisms between finite quandle-like
//! operations, with constraint propagation through `*` and `*⁻¹`.

use alloc::vec::Vec;

use super::{FiniteQuandle, QuandleError};
use crate::fingroup::FiniteGroup;

/// Default node budget for isomorphism and homomorphism searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

/// Anything with a quandle-shaped operation on `0..size()`.
pub(crate) trait Magma {
    fn size(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> usize;
    fn op_inv(&self, a: usize, b: usize) -> usize;
}

impl Magma for FiniteQuandle {
    fn size(&self) -> usize {
        self.order()
    }
    fn op(&self, a: usize, b: usize) -> usize {
        FiniteQuandle::op(self, a, b)
    }
    fn op_inv(&self, a: usize, b: usize) -> usize {
        FiniteQuandle::op_inv(self, a, b)
    }
}

/// `Conj(G)` without materialising its table: `a * b = b⁻¹ a b`.
pub(crate) struct ConjOf<'a>(pub &'a FiniteGroup);

impl Magma for ConjOf<'_> {
    fn size(&self) -> usize {
        self.0.order()
    }
    fn op(&self, a: usize, b: usize) -> usize {
        self.0.conjugate(a, b)
    }
    fn op_inv(&self, a: usize, b: usize) -> usize {
        self.0.conjugate(a, self.0.inv(b))
    }
}

const UNSET: usize = usize::MAX;

pub(crate) struct HomSearch<'a, S: Magma, T: Magma> {
    src: &'a S,
    dst: &'a T,
    injective: bool,
    allowed: Option<Vec<bool>>,
    budget: u64,
    nodes: u64,
    map: Vec<usize>,
    preimage: Vec<usize>,
    trail: Vec<usize>,
    order: Vec<usize>,
}

/// Largest source for which generators are picked by trying every
/// candidate.
const GREEDY_LIMIT: usize = 64;

/// Adds `g` to the subquandle marked by `inside` and closes it again.
fn absorb<S: Magma>(src: &S, inside: &mut [bool], members: &mut Vec<usize>, g: usize) {
    if inside[g] {
        return;
    }
    inside[g] = true;
    members.push(g);
    let mut k = 0;
    while k < members.len() {
        let x = members[k];
        k += 1;
        for j in 0..k {
            let y = members[j];
            for z in [src.op(x, y), src.op(y, x), src.op_inv(x, y), src.op_inv(y, x)] {
                if !inside[z] {
                    inside[z] = true;
                    members.push(z);
                }
            }
        }
    }
}

/// Elements in branching order: a greedy generating sequence first, then
/// everything else. Each pick is the element that enlarges the generated
/// subquandle most (the smallest outside element for large sources). Once
/// the generators are fixed, propagation decides the rest.
fn branching_order<S: Magma>(src: &S) -> Vec<usize> {
    let n = src.size();
    let mut inside = alloc::vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut order = Vec::new();
    while let Some(first_out) = (0..n).find(|&x| !inside[x]) {
        let mut pick = first_out;
        if n <= GREEDY_LIMIT {
            let mut best = 0;
            for g in (0..n).filter(|&x| !inside[x]) {
                let (mut trial, mut trial_members) = (inside.clone(), members.clone());
                absorb(src, &mut trial, &mut trial_members, g);
                if trial_members.len() > best {
                    (best, pick) = (trial_members.len(), g);
                }
            }
        }
        order.push(pick);
        absorb(src, &mut inside, &mut members, pick);
    }
    let mut rest: Vec<usize> = (0..n).filter(|x| !order.contains(x)).collect();
    order.append(&mut rest);
    order
}

impl<'a, S: Magma, T: Magma> HomSearch<'a, S, T> {
    pub(crate) fn new(src: &'a S, dst: &'a T, budget: u64) -> Self {
        Self {
            src,
            dst,
            injective: false,
            allowed: None,
            budget,
            nodes: 0,
            map: alloc::vec![UNSET; src.size()],
            preimage: alloc::vec![UNSET; dst.size()],
            trail: Vec::new(),
            order: branching_order(src),
        }
    }

    pub(crate) fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Restricts `x ↦ a` to pairs with `allow(x, a)`.
    pub(crate) fn restrict(mut self, allow: impl Fn(usize, usize) -> bool) -> Self {
        let (n, m) = (self.src.size(), self.dst.size());
        let mut mask = alloc::vec![false; n * m];
        for x in 0..n {
            for a in 0..m {
                mask[x * m + a] = allow(x, a);
            }
        }
        self.allowed = Some(mask);
        self
    }

    /// The source element branched on first.
    pub(crate) fn first_branch(&self) -> Option<usize> {
        self.order.first().copied()
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Visits complete homomorphisms in search order until `visit` returns
    /// `false`. Returns `Ok(true)` if the search ran to completion.
    pub(crate) fn run(&mut self, mut visit: impl FnMut(&[usize]) -> bool) -> Result<bool, QuandleError> {
        let mut stop = false;
        self.descend(&mut visit, &mut stop)?;
        Ok(!stop)
    }

    fn descend(&mut self, visit: &mut impl FnMut(&[usize]) -> bool, stop: &mut bool) -> Result<(), QuandleError> {
        let Some(x) = self.order.iter().copied().find(|&x| self.map[x] == UNSET) else {
            if !visit(&self.map) {
                *stop = true;
            }
            return Ok(());
        };
        for a in 0..self.dst.size() {
            if !self.permitted(x, a) || (self.injective && self.preimage[a] != UNSET) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(QuandleError::SearchLimitExceeded { budget: self.budget });
            }
            let mark = self.trail.len();
            if self.assign(x, a) {
                self.descend(visit, stop)?;
            }
            self.undo(mark);
            if *stop {
                break;
            }
        }
        Ok(())
    }

    fn permitted(&self, x: usize, a: usize) -> bool {
        match &self.allowed {
            Some(mask) => mask[x * self.dst.size() + a],
            None => true,
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail above mark");
            let a = self.map[x];
            self.map[x] = UNSET;
            if self.preimage[a] == x {
                self.preimage[a] = UNSET;
            }
        }
    }

    fn set(&mut self, x: usize, a: usize, work: &mut Vec<usize>) -> bool {
        let cur = self.map[x];
        if cur != UNSET {
            return cur == a;
        }
        if !self.permitted(x, a) || (self.injective && self.preimage[a] != UNSET) {
            return false;
        }
        self.map[x] = a;
        if self.preimage[a] == UNSET {
            self.preimage[a] = x;
        }
        self.trail.push(x);
        work.push(x);
        true
    }

    fn assign(&mut self, x: usize, a: usize) -> bool {
        let mut work = Vec::new();
        if !self.set(x, a, &mut work) {
            return false;
        }
        while let Some(x) = work.pop() {
            let fx = self.map[x];
            let mut k = 0;
            while k < self.trail.len() {
                let y = self.trail[k];
                let fy = self.map[y];
                k += 1;
                let pairs = [
                    (self.src.op(x, y), self.dst.op(fx, fy)),
                    (self.src.op(y, x), self.dst.op(fy, fx)),
                    (self.src.op_inv(x, y), self.dst.op_inv(fx, fy)),
                    (self.src.op_inv(y, x), self.dst.op_inv(fy, fx)),
                ];
                for (s, t) in pairs {
                    if !self.set(s, t, &mut work) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// An isomorphism, as the image list `map[x]` of each source element.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IsoWitness {
    pub map: Vec<usize>,
}

impl IsoWitness {
    pub fn inverse(&self) -> IsoWitness {
        let mut inv = alloc::vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        IsoWitness { map: inv }
    }
}

/// Per-element isomorphism invariants: orbit size, cycle type of `S_x`,
/// and the number of `y` with `x * y = x`.
fn element_signatures(q: &FiniteQuandle) -> Vec<(usize, Vec<usize>, usize)> {
    let orbit_index = q.orbit_index();
    let mut orbit_sizes = alloc::vec![0usize; q.order()];
    for &k in &orbit_index {
        orbit_sizes[k] += 1;
    }
    (0..q.order())
        .map(|x| {
            let fixers = (0..q.order()).filter(|&y| q.op(x, y) == x).count();
            (orbit_sizes[orbit_index[x]], q.inner_symmetry(x).cycle_type(), fixers)
        })
        .collect()
}

impl FiniteQuandle {
    /// All homomorphisms `self → target`, in search order.
    pub fn homomorphisms(&self, target: &FiniteQuandle) -> Result<Vec<Vec<usize>>, QuandleError> {
        self.homomorphisms_with_budget(target, DEFAULT_SEARCH_BUDGET)
    }

    pub fn homomorphisms_with_budget(&self, target: &FiniteQuandle, budget: u64) -> Result<Vec<Vec<usize>>, QuandleError> {
        let mut out = Vec::new();
        HomSearch::new(self, target, budget).run(|m| {
            out.push(m.to_vec());
            true
        })?;
        Ok(out)
    }

    /// An isomorphism `self → other`, or `None`.
    pub fn is_isomorphic(&self, other: &FiniteQuandle) -> Result<Option<IsoWitness>, QuandleError> {
        self.is_isomorphic_with_budget(other, DEFAULT_SEARCH_BUDGET)
    }

    pub fn is_isomorphic_with_budget(&self, other: &FiniteQuandle, budget: u64) -> Result<Option<IsoWitness>, QuandleError> {
        if self.order() != other.order() {
            return Ok(None);
        }
        let (sa, sb) = (element_signatures(self), element_signatures(other));
        let (mut ma, mut mb) = (sa.clone(), sb.clone());
        ma.sort();
        mb.sort();
        if ma != mb {
            return Ok(None);
        }
        let mut found = None;
        HomSearch::new(self, other, budget).injective().restrict(|x, a| sa[x] == sb[a]).run(|m| {
            found = Some(IsoWitness { map: m.to_vec() });
            false
        })?;
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use alloc::vec;

    fn dihedral(n: usize) -> FiniteQuandle {
        FiniteQuandle::from_fn(n, |i, j| (2 * j + 2 * n - i) % n).unwrap()
    }

    fn trivial(n: usize) -> FiniteQuandle {
        FiniteQuandle::from_fn(n, |i, _| i).unwrap()
    }

    fn brute_isomorphic(a: &FiniteQuandle, b: &FiniteQuandle) -> bool {
        fn rec(a: &FiniteQuandle, b: &FiniteQuandle, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            if map.len() == a.order() {
                return a.is_homomorphism(b, map);
            }
            for v in 0..b.order() {
                if !used[v] {
                    used[v] = true;
                    map.push(v);
                    if rec(a, b, map, used) {
                        return true;
                    }
                    map.pop();
                    used[v] = false;
                }
            }
            false
        }
        a.order() == b.order() && rec(a, b, &mut Vec::new(), &mut vec![false; b.order()])
    }

    #[test]
    fn relabelled_copy_is_found() {
        let r3 = dihedral(3);
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let copy = r3.relabel(&p).unwrap();
        let w = r3.is_isomorphic(&copy).unwrap().unwrap();
        assert!(r3.is_homomorphism(&copy, &w.map));
        assert!(copy.is_homomorphism(&r3, &w.inverse().map));
    }

    #[test]
    fn invariant_mismatch() {
        assert_eq!(dihedral(3).is_isomorphic(&trivial(3)).unwrap(), None);
        assert_eq!(dihedral(3).is_isomorphic(&trivial(4)).unwrap(), None);
    }

    #[test]
    fn hom_counts() {
        // homs into T₁ are unique; homs T₂ → R₃ are arbitrary pairs of
        // elements whose images fix each other, i.e. equal ones only
        assert_eq!(dihedral(3).homomorphisms(&trivial(1)).unwrap().len(), 1);
        assert_eq!(trivial(2).homomorphisms(&dihedral(3)).unwrap().len(), 3);
        assert_eq!(trivial(2).homomorphisms(&trivial(2)).unwrap().len(), 4);
        assert_eq!(dihedral(3).homomorphisms(&dihedral(3)).unwrap().len(), 3 + 6);
    }

    #[test]
    fn agrees_with_brute_force_on_small_tables() {
        let qs = [trivial(4), dihedral(4), dihedral(4).relabel(&Permutation::new(vec![1, 0, 3, 2]).unwrap()).unwrap()];
        for a in &qs {
            for b in &qs {
                assert_eq!(a.is_isomorphic(b).unwrap().is_some(), brute_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = dihedral(3).homomorphisms_with_budget(&dihedral(3), 2).unwrap_err();
        assert_eq!(err, QuandleError::SearchLimitExceeded { budget: 2 });
    }
}
