use alloc::vec::Vec;

use hashbrown::HashSet;

use super::{FiniteQuandle, QuandleError};
use crate::util::DisjointSets;

/// Congruence enumeration and simplicity are restricted to this order.
pub const CONGRUENCE_ORDER_LIMIT: usize = 12;

/// A partition compatible with `*` on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Congruence {
    /// Blocks, each ascending, ordered by smallest member.
    pub blocks: Vec<Vec<usize>>,
}

impl Congruence {
    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() == 1
    }

    fn labels(&self, n: usize) -> Vec<usize> {
        let mut l = alloc::vec![0; n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                l[x] = k;
            }
        }
        l
    }
}

impl FiniteQuandle {
    /// Smallest congruence containing `ds`, computed by saturating
    /// `a ≡ a′ ⟹ a*b ≡ a′*b, b*a ≡ b*a′`.
    fn close_congruence(&self, mut ds: DisjointSets) -> Congruence {
        let n = self.order();
        loop {
            let mut changed = false;
            for a in 0..n {
                let r = ds.find(a);
                if r == a {
                    continue;
                }
                for b in 0..n {
                    changed |= ds.union(self.op(a, b), self.op(r, b));
                    changed |= ds.union(self.op(b, a), self.op(b, r));
                }
            }
            if !changed {
                return Congruence { blocks: ds.blocks() };
            }
        }
    }

    /// The congruence generated by identifying `a` and `b`.
    pub fn principal_congruence(&self, a: usize, b: usize) -> Result<Congruence, QuandleError> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut ds = DisjointSets::new(self.order());
        ds.union(a, b);
        Ok(self.close_congruence(ds))
    }

    /// Is `partition` compatible with the operation?
    pub fn is_congruence(&self, partition: &Congruence) -> bool {
        let l = partition.labels(self.order());
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|a2| {
                l[a] != l[a2] || (0..n).all(|b| l[self.op(a, b)] == l[self.op(a2, b)] && l[self.op(b, a)] == l[self.op(b, a2)])
            })
        })
    }

    /// Every congruence, as joins of principal ones, sorted.
    ///
    /// Trivial quandles have every partition as a congruence, so the lattice
    /// can be large even at order 12; `limit` bounds the list.
    pub fn congruences(&self, limit: usize) -> Result<Vec<Congruence>, QuandleError> {
        let n = self.order();
        if n > CONGRUENCE_ORDER_LIMIT {
            return Err(QuandleError::OrderLimitExceeded { order: n, limit: CONGRUENCE_ORDER_LIMIT });
        }
        let mut principal: Vec<Congruence> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let c = self.principal_congruence(a, b)?;
                if !principal.contains(&c) {
                    principal.push(c);
                }
            }
        }
        let discrete = Congruence { blocks: (0..n).map(|x| alloc::vec![x]).collect() };
        let mut seen: HashSet<Congruence> = HashSet::new();
        seen.insert(discrete.clone());
        let mut all = alloc::vec![discrete];
        let mut head = 0;
        while head < all.len() {
            let cur = all[head].clone();
            head += 1;
            for p in &principal {
                let mut ds = DisjointSets::new(n);
                for b in cur.blocks.iter().chain(&p.blocks) {
                    for w in b.windows(2) {
                        ds.union(w[0], w[1]);
                    }
                }
                let joined = self.close_congruence(ds);
                if seen.insert(joined.clone()) {
                    if all.len() >= limit {
                        return Err(QuandleError::SearchLimitExceeded { budget: limit as u64 });
                    }
                    all.push(joined);
                }
            }
        }
        all.sort();
        Ok(all)
    }

    /// Simple means the only congruences are the discrete and the full
    /// partition, i.e. every principal congruence is full.
    pub fn is_simple(&self) -> Result<bool, QuandleError> {
        let n = self.order();
        if n > CONGRUENCE_ORDER_LIMIT {
            return Err(QuandleError::OrderLimitExceeded { order: n, limit: CONGRUENCE_ORDER_LIMIT });
        }
        for a in 0..n {
            for b in a + 1..n {
                if !self.principal_congruence(a, b)?.is_full() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn dihedral(n: usize) -> FiniteQuandle {
        FiniteQuandle::from_fn(n, |i, j| (2 * j + 2 * n - i) % n).unwrap()
    }

    fn trivial(n: usize) -> FiniteQuandle {
        FiniteQuandle::from_fn(n, |i, _| i).unwrap()
    }

    /// Every partition of `0..n` (restricted growth strings).
    fn all_partitions(n: usize) -> Vec<Congruence> {
        fn rec(n: usize, rgs: &mut Vec<usize>, out: &mut Vec<Congruence>) {
            if rgs.len() == n {
                let k = rgs.iter().max().map_or(0, |m| m + 1);
                let mut blocks = vec![Vec::new(); k];
                for (x, &b) in rgs.iter().enumerate() {
                    blocks[b].push(x);
                }
                out.push(Congruence { blocks });
                return;
            }
            let top = rgs.iter().max().map_or(0, |m| m + 1);
            for b in 0..=top {
                rgs.push(b);
                rec(n, rgs, out);
                rgs.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn simplicity() {
        assert_eq!(dihedral(3).is_simple(), Ok(true));
        assert_eq!(dihedral(5).is_simple(), Ok(true));
        assert_eq!(dihedral(4).is_simple(), Ok(false));
        // the lattice of T₂ is {discrete, full}
        assert_eq!(trivial(2).congruences(100).unwrap().len(), 2);
        assert_eq!(trivial(2).is_simple(), Ok(true));
        assert!(dihedral(13).is_simple().is_err());
    }

    #[test]
    fn parity_congruence_of_r4() {
        let r4 = dihedral(4);
        let c = r4.principal_congruence(0, 2).unwrap();
        assert_eq!(c.blocks, vec![vec![0, 2], vec![1], vec![3]]);
        assert!(r4.is_congruence(&Congruence { blocks: vec![vec![0, 2], vec![1, 3]] }));
        assert!(!r4.is_congruence(&Congruence { blocks: vec![vec![0, 1], vec![2, 3]] }));
    }

    #[test]
    fn lattice_matches_partition_filter() {
        for q in [dihedral(4), dihedral(6), trivial(4), dihedral(3)] {
            let mut brute: Vec<Congruence> = all_partitions(q.order()).into_iter().filter(|p| q.is_congruence(p)).collect();
            brute.sort();
            assert_eq!(q.congruences(10_000).unwrap(), brute);
        }
        assert_eq!(trivial(5).congruences(52).unwrap().len(), 52);
        assert!(trivial(5).congruences(10).is_err());
    }
}
