//! Finite quandles as Cayley tables: validation, inner automorphisms,
//! orbits, predicates, products and subquandles.

mod congruence;
mod hom;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use congruence::{Congruence, CONGRUENCE_ORDER_LIMIT};
pub(crate) use hom::{ConjOf, HomSearch};
pub use hom::{IsoWitness, DEFAULT_SEARCH_BUDGET};

use crate::perm::{self, Permutation};
use crate::util::DisjointSets;

/// Largest table any constructor accepts.
pub const MAX_QUANDLE_ORDER: usize = 4096;

/// Default bound on `|Inn(Q)|`.
pub const DEFAULT_CLOSURE_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Axiom {
    /// Every right translation `S_x` is a bijection.
    R1,
    /// `(x*y)*z = (x*z)*(y*z)`.
    R2,
    /// `x*x = x`.
    Q1,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::R1 => "r1",
            Axiom::R2 => "r2",
            Axiom::Q1 => "q1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QuandleError {
    #[error("empty table")]
    Empty,
    #[error("order {order} exceeds the limit {limit}")]
    SizeOverflow { order: usize, limit: usize },
    #[error("row {row} has {len} entries, expected a square table")]
    NotSquare { row: usize, len: usize },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    /// For `r1` the witness is `[column, x, y]` with `x*column = y*column`;
    /// for `r2` it is the triple `[x, y, z]`; for `q1` the element itself.
    #[error("axiom {axiom} fails at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },
    #[error("expected {expected} names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("Inn closure exceeded {limit} elements")]
    ClosureLimitExceeded { limit: usize },
    #[error("order {order} exceeds the limit {limit} for this operation")]
    OrderLimitExceeded { order: usize, limit: usize },
    #[error("search budget of {budget} nodes exhausted")]
    SearchLimitExceeded { budget: u64 },
    #[error("subset is not closed: {0} * {1} leaves it")]
    NotASubquandle(usize, usize),
}

impl QuandleError {
    /// True for the violations that make a table not even a rack.
    pub fn is_rack_violation(&self) -> bool {
        matches!(self, QuandleError::AxiomViolation { axiom: Axiom::R1 | Axiom::R2, .. })
    }
}

/// A finite quandle; `table[i][j] = i * j`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    order: usize,
    table: Vec<u32>,
    inv_table: Vec<u32>,
    names: Option<Vec<String>>,
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("FiniteQuandle");
        d.field("order", &self.order).field("table", &self.table());
        if let Some(names) = &self.names {
            d.field("names", names);
        }
        d.finish()
    }
}

/// The boolean predicates reported by [`FiniteQuandle::predicates`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Predicates {
    pub is_commutative: bool,
    pub is_latin: bool,
    pub is_trivial: bool,
    pub is_connected: bool,
    /// `x*y = x` implies `y*x = y` for all pairs; every `(G,A)`-quandle
    /// has this property.
    pub ga_obstruction_pass: bool,
}

/// `Inn(Q)` as an explicit element list.
#[derive(Clone, Debug)]
pub struct InnGroup {
    pub elements: Vec<Permutation>,
    /// `generators[x]` is the position of `S_x` in `elements`.
    pub generators: Vec<usize>,
}

impl FiniteQuandle {
    /// Validates `(r1)`, then `(r2)`, then `(q1)`, reporting the first failure.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, QuandleError> {
        let n = rows.len();
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        if n > MAX_QUANDLE_ORDER {
            return Err(QuandleError::SizeOverflow { order: n, limit: MAX_QUANDLE_ORDER });
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(QuandleError::NotSquare { row: r, len: row.len() });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(QuandleError::EntryOutOfRange { row: r, col: c, value: v });
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(n, table)
    }

    /// Builds and validates the table `i * j = f(i, j)`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, QuandleError> {
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        if n > MAX_QUANDLE_ORDER {
            return Err(QuandleError::SizeOverflow { order: n, limit: MAX_QUANDLE_ORDER });
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                if v >= n {
                    return Err(QuandleError::EntryOutOfRange { row: i, col: j, value: v });
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<u32>) -> Result<Self, QuandleError> {
        let at = |i: usize, j: usize| table[i * n + j] as usize;
        // r1: columns are permutations
        let mut inv_table = alloc::vec![u32::MAX; n * n];
        for j in 0..n {
            for i in 0..n {
                let v = at(i, j);
                let slot = &mut inv_table[v * n + j];
                if *slot != u32::MAX {
                    return Err(QuandleError::AxiomViolation { axiom: Axiom::R1, witness: alloc::vec![j, *slot as usize, i] });
                }
                *slot = i as u32;
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = at(x, y);
                for z in 0..n {
                    if at(xy, z) != at(at(x, z), at(y, z)) {
                        return Err(QuandleError::AxiomViolation { axiom: Axiom::R2, witness: alloc::vec![x, y, z] });
                    }
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| at(x, x) != x) {
            return Err(QuandleError::AxiomViolation { axiom: Axiom::Q1, witness: alloc::vec![x] });
        }
        Ok(Self { order: n, table, inv_table, names: None })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, QuandleError> {
        if names.len() != self.order {
            return Err(QuandleError::NameCount { expected: self.order, got: names.len() });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => alloc::format!("{x}"),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// `x * y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    /// `x *⁻¹ y = S_y⁻¹(x)`.
    #[inline]
    pub fn op_inv(&self, x: usize, y: usize) -> usize {
        self.inv_table[x * self.order + y] as usize
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|i| (0..self.order).map(|j| self.op(i, j)).collect()).collect()
    }

    pub fn check_element(&self, x: usize) -> Result<usize, QuandleError> {
        if x < self.order {
            Ok(x)
        } else {
            Err(QuandleError::ElementOutOfRange(x))
        }
    }

    /// `S_x : y ↦ y * x`.
    pub fn inner_symmetry(&self, x: usize) -> Permutation {
        Permutation::from_fn_unchecked(self.order, |y| self.op(y, x))
    }

    pub fn inn_group(&self) -> Result<InnGroup, QuandleError> {
        self.inn_group_with_limit(DEFAULT_CLOSURE_LIMIT)
    }

    pub fn inn_group_with_limit(&self, limit: usize) -> Result<InnGroup, QuandleError> {
        let gens: Vec<Permutation> = (0..self.order).map(|x| self.inner_symmetry(x)).collect();
        let elements = perm::closure(self.order, &gens, limit).map_err(|_| QuandleError::ClosureLimitExceeded { limit })?;
        let generators = gens
            .iter()
            .map(|g| elements.iter().position(|e| e == g).expect("generators lie in their closure"))
            .collect();
        Ok(InnGroup { elements, generators })
    }

    /// Orbits of the `Inn(Q)` action, each ascending, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut ds = DisjointSets::new(self.order);
        for y in 0..self.order {
            for x in 0..self.order {
                ds.union(y, self.op(y, x));
            }
        }
        ds.blocks()
    }

    /// `orbit_index()[x]` is the position of the orbit containing `x` in [`Self::orbits`].
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = alloc::vec![0; self.order];
        for (k, o) in self.orbits().iter().enumerate() {
            for &x in o {
                idx[x] = k;
            }
        }
        idx
    }

    pub fn is_connected(&self) -> bool {
        self.orbits().len() == 1
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.op(x, y) == x))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|x| (x + 1..self.order).all(|y| self.op(x, y) == self.op(y, x)))
    }

    /// Every left translation `z ↦ y * z` is a bijection.
    pub fn is_latin(&self) -> bool {
        let mut seen = alloc::vec![usize::MAX; self.order];
        for y in 0..self.order {
            for z in 0..self.order {
                let v = self.op(y, z);
                if seen[v] == y {
                    return false;
                }
                seen[v] = y;
            }
        }
        true
    }

    pub fn ga_obstruction_pass(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.op(x, y) != x || self.op(y, x) == y))
    }

    pub fn predicates(&self) -> Predicates {
        Predicates {
            is_commutative: self.is_commutative(),
            is_latin: self.is_latin(),
            is_trivial: self.is_trivial(),
            is_connected: self.is_connected(),
            ga_obstruction_pass: self.ga_obstruction_pass(),
        }
    }

    /// Is `x ↦ S_x` injective?
    pub fn symmetries_injective(&self) -> bool {
        let cols: Vec<Permutation> = (0..self.order).map(|x| self.inner_symmetry(x)).collect();
        (0..self.order).all(|a| (a + 1..self.order).all(|b| cols[a] != cols[b]))
    }

    /// Componentwise product; `(a, x)` has index `a·|P| + x`.
    pub fn direct_product(&self, other: &FiniteQuandle) -> Result<FiniteQuandle, QuandleError> {
        let m = other.order;
        let order = self.order.checked_mul(m).unwrap_or(usize::MAX);
        if order > MAX_QUANDLE_ORDER {
            return Err(QuandleError::SizeOverflow { order, limit: MAX_QUANDLE_ORDER });
        }
        Self::from_fn(order, |p, q| self.op(p / m, q / m) * m + other.op(p % m, q % m))
    }

    pub fn is_subquandle(&self, subset: &[usize]) -> Result<bool, QuandleError> {
        let mask = self.mask(subset)?;
        Ok(subset.iter().all(|&p| subset.iter().all(|&q| mask[self.op(p, q)] && mask[self.op_inv(p, q)])))
    }

    /// `P` is normal when `p * q ∈ P` for every `p ∈ P` and every `q ∈ Q`.
    pub fn is_normal_subquandle(&self, subset: &[usize]) -> Result<bool, QuandleError> {
        let mask = self.mask(subset)?;
        for &p in subset {
            for &q in subset {
                if !mask[self.op(p, q)] {
                    return Err(QuandleError::NotASubquandle(p, q));
                }
            }
        }
        Ok(subset.iter().all(|&p| (0..self.order).all(|q| mask[self.op(p, q)])))
    }

    /// The subquandle on `subset` (which must be closed), relabelled to
    /// `0..subset.len()` in the given order.
    pub fn subquandle(&self, subset: &[usize]) -> Result<FiniteQuandle, QuandleError> {
        let mut pos = alloc::vec![usize::MAX; self.order];
        for (k, &x) in subset.iter().enumerate() {
            self.check_element(x)?;
            pos[x] = k;
        }
        for &p in subset {
            for &q in subset {
                if pos[self.op(p, q)] == usize::MAX {
                    return Err(QuandleError::NotASubquandle(p, q));
                }
            }
        }
        Self::from_fn(subset.len(), |i, j| pos[self.op(subset[i], subset[j])])
    }

    /// Relabels by `perm`: the new table satisfies `perm(x) * perm(y) = perm(x * y)`.
    pub fn relabel(&self, perm: &Permutation) -> Result<FiniteQuandle, QuandleError> {
        let inv = perm.inverse();
        Self::from_fn(self.order, |i, j| perm.apply(self.op(inv.apply(i), inv.apply(j))))
    }

    /// Is `map` a homomorphism `self → target`?
    pub fn is_homomorphism(&self, target: &FiniteQuandle, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&v| v < target.order)
            && (0..self.order).all(|x| (0..self.order).all(|y| map[self.op(x, y)] == target.op(map[x], map[y])))
    }

    /// Is `perm` an automorphism of `self`?
    pub fn is_automorphism(&self, perm: &Permutation) -> bool {
        perm.degree() == self.order && self.is_homomorphism(self, &perm.images())
    }

    fn mask(&self, subset: &[usize]) -> Result<Vec<bool>, QuandleError> {
        let mut mask = alloc::vec![false; self.order];
        for &x in subset {
            mask[self.check_element(x)?] = true;
        }
        Ok(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn r3() -> FiniteQuandle {
        FiniteQuandle::from_table(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap()
    }

    fn dihedral(n: usize) -> FiniteQuandle {
        FiniteQuandle::from_fn(n, |i, j| (2 * j + 2 * n - i) % n).unwrap()
    }

    fn trivial(n: usize) -> FiniteQuandle {
        FiniteQuandle::from_fn(n, |i, _| i).unwrap()
    }

    #[test]
    fn axiom_reports() {
        assert!(FiniteQuandle::from_table(&[vec![0, 0], vec![1, 1]]).is_ok());
        let err = FiniteQuandle::from_table(&[vec![1, 1], vec![0, 0]]).unwrap_err();
        assert_eq!(err, QuandleError::AxiomViolation { axiom: Axiom::Q1, witness: vec![0] });
        assert!(!err.is_rack_violation());
        let err = FiniteQuandle::from_table(&[vec![0, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, QuandleError::AxiomViolation { axiom: Axiom::R1, .. }));
        assert!(err.is_rack_violation());
        // columns are permutations but self-distributivity fails
        let err = FiniteQuandle::from_table(&[vec![0, 1, 2], vec![2, 1, 0], vec![1, 2, 2]]);
        assert!(matches!(err, Err(QuandleError::AxiomViolation { .. })));
        assert!(matches!(FiniteQuandle::from_table(&[vec![0, 5], vec![1, 1]]), Err(QuandleError::EntryOutOfRange { .. })));
    }

    #[test]
    fn op_and_inverse() {
        let q = r3();
        assert_eq!(q.op(0, 1), 2);
        assert_eq!(q.op_inv(2, 1), 0);
        for x in 0..3 {
            assert_eq!(q.op(x, x), x);
            for y in 0..3 {
                assert_eq!(q.op_inv(q.op(x, y), y), x);
            }
        }
        let t = trivial(4);
        assert!((0..4).all(|x| (0..4).all(|y| t.op(x, y) == x)));
    }

    #[test]
    fn inner_groups() {
        assert_eq!(trivial(3).inn_group().unwrap().elements.len(), 1);
        assert_eq!(r3().inn_group().unwrap().elements.len(), 6);
        assert_eq!(dihedral(4).inn_group().unwrap().elements.len(), 4);
        assert_eq!(r3().inn_group_with_limit(3).unwrap_err(), QuandleError::ClosureLimitExceeded { limit: 3 });
    }

    #[test]
    fn orbit_partitions() {
        assert_eq!(dihedral(4).orbits(), vec![vec![0, 2], vec![1, 3]]);
        assert!(r3().is_connected());
        assert_eq!(trivial(3).orbits().len(), 3);
    }

    #[test]
    fn predicate_values() {
        let p = r3().predicates();
        assert!(p.is_commutative && p.is_latin && p.ga_obstruction_pass && !p.is_trivial);
        assert!(!dihedral(4).is_latin());
        // x0 = 0, y0 = 1, y1 = 2 in U(1,2)
        let u12 = FiniteQuandle::from_table(&[vec![0, 0, 0], vec![2, 1, 1], vec![1, 2, 2]]).unwrap();
        assert!(!u12.ga_obstruction_pass());
    }

    #[test]
    fn products_and_subquandles() {
        let p = r3().direct_product(&r3()).unwrap();
        assert_eq!(p.order(), 9);
        assert_eq!(trivial(1).direct_product(&r3()).unwrap(), r3());
        assert_eq!(r3().direct_product(&trivial(2)).unwrap().orbits().len(), 2);

        let r4 = dihedral(4);
        assert_eq!(r4.is_normal_subquandle(&[0, 2]), Ok(true));
        assert_eq!(r3().is_normal_subquandle(&[0]), Ok(false));
        assert_eq!(r3().is_normal_subquandle(&[0, 1]), Err(QuandleError::NotASubquandle(0, 1)));
        for o in r4.orbits() {
            assert_eq!(r4.is_normal_subquandle(&o), Ok(true));
        }
        assert_eq!(r4.subquandle(&[1, 3]).unwrap(), trivial(2));
    }
}
