//! Named quandle constructions.
//!
//! Numbering: `trivial`, `dihedral_quandle` and the group quandles use the
//! natural indices; `union` and `u_quandle` put the first block first, so
//! `U(n, m)` has `x_i = i` and `y_r = n + r`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::fingroup::{FiniteGroup, GroupError};
use crate::perm::Permutation;
use crate::quandle::{FiniteQuandle, QuandleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnionCondition {
    /// Some `σ(y)` is not an automorphism of the second quandle.
    SigmaNotAutomorphism,
    TauNotAutomorphism,
    /// `σ(x*y) ≠ σ(y)∘σ(x)∘σ(y)⁻¹`.
    SigmaNotHomomorphism,
    TauNotHomomorphism,
    /// `τ(z)(x) * y ≠ τ(σ(y)(z))(x * y)`.
    Condition1,
    /// `σ(z)(x) ∘ y ≠ σ(τ(y)(z))(x ∘ y)`.
    Condition2,
}

impl fmt::Display for UnionCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnionCondition::SigmaNotAutomorphism => "sigma is not automorphism-valued",
            UnionCondition::TauNotAutomorphism => "tau is not automorphism-valued",
            UnionCondition::SigmaNotHomomorphism => "sigma is not a homomorphism",
            UnionCondition::TauNotHomomorphism => "tau is not a homomorphism",
            UnionCondition::Condition1 => "condition 1",
            UnionCondition::Condition2 => "condition 2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("the group is not abelian: {0}·{1} ≠ {1}·{0}")]
    NotAbelian(usize, usize),
    #[error("union rejected ({which}) at {witness:?}")]
    UnionConditionViolated { which: UnionCondition, witness: Vec<usize> },
    #[error("{what}: expected {expected}, got {got}")]
    SizeMismatch { what: &'static str, expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// `T_n`: `x * y = x`.
pub fn trivial(n: usize) -> Result<FiniteQuandle, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::InvalidParameter(String::from("trivial quandle of order 0")));
    }
    Ok(FiniteQuandle::from_fn(n, |x, _| x)?)
}

/// `R_n`: `x_i * x_j = x_{2j−i mod n}`.
pub fn dihedral_quandle(n: usize) -> Result<FiniteQuandle, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::InvalidParameter(String::from("dihedral quandle of order 0")));
    }
    let q = FiniteQuandle::from_fn(n, |i, j| (2 * j + 2 * n - i) % n)?;
    Ok(q.with_names(indexed_names("x", n))?)
}

/// `T(H)` for abelian `H`: `x * y = 2y − x`, i.e. `y·y·x⁻¹`.
pub fn takasaki(h: &FiniteGroup) -> Result<FiniteQuandle, ConstructionError> {
    for a in 0..h.order() {
        for b in a + 1..h.order() {
            if !h.commutes(a, b) {
                return Err(ConstructionError::NotAbelian(a, b));
            }
        }
    }
    let q = FiniteQuandle::from_fn(h.order(), |x, y| h.product([y, y, h.inv(x)]))?;
    with_group_labels(q, h)
}

/// `Conj(G)`: `x * y = y⁻¹ x y`.
pub fn conj(g: &FiniteGroup) -> Result<FiniteQuandle, ConstructionError> {
    let q = FiniteQuandle::from_fn(g.order(), |x, y| g.conjugate(x, y))?;
    with_group_labels(q, g)
}

/// `Conj₋₁(G)`: `x * y = y x y⁻¹`.
pub fn conj_inv(g: &FiniteGroup) -> Result<FiniteQuandle, ConstructionError> {
    let q = FiniteQuandle::from_fn(g.order(), |x, y| g.conjugate(x, g.inv(y)))?;
    with_group_labels(q, g)
}

/// `Core(G)`: `x * y = y x⁻¹ y`.
pub fn core(g: &FiniteGroup) -> Result<FiniteQuandle, ConstructionError> {
    let q = FiniteQuandle::from_fn(g.order(), |x, y| g.product([y, g.inv(x), y]))?;
    with_group_labels(q, g)
}

fn with_group_labels(q: FiniteQuandle, g: &FiniteGroup) -> Result<FiniteQuandle, ConstructionError> {
    match g.labels() {
        Some(l) => Ok(q.with_names(l.to_vec())?),
        None => Ok(q),
    }
}

/// The union `Q₁ ⊔_{σ,τ} Q₂`.
///
/// `sigma[y]` (for `y ∈ Q₁`) is the permutation of `Q₂` by which `y` acts,
/// `tau[z]` (for `z ∈ Q₂`) the permutation of `Q₁`. Both maps must be
/// automorphism-valued homomorphisms into `Conj₋₁` of the automorphism
/// groups, and both compatibility conditions are checked on every triple.
pub fn union(
    q1: &FiniteQuandle,
    q2: &FiniteQuandle,
    sigma: &[Permutation],
    tau: &[Permutation],
) -> Result<FiniteQuandle, ConstructionError> {
    let (n1, n2) = (q1.order(), q2.order());
    if sigma.len() != n1 {
        return Err(ConstructionError::SizeMismatch { what: "sigma entries", expected: n1, got: sigma.len() });
    }
    if tau.len() != n2 {
        return Err(ConstructionError::SizeMismatch { what: "tau entries", expected: n2, got: tau.len() });
    }
    if let Some(p) = sigma.iter().find(|p| p.degree() != n2) {
        return Err(ConstructionError::SizeMismatch { what: "sigma degree", expected: n2, got: p.degree() });
    }
    if let Some(p) = tau.iter().find(|p| p.degree() != n1) {
        return Err(ConstructionError::SizeMismatch { what: "tau degree", expected: n1, got: p.degree() });
    }
    let violated = |which, witness: Vec<usize>| Err(ConstructionError::UnionConditionViolated { which, witness });

    if let Some(y) = (0..n1).find(|&y| !q2.is_automorphism(&sigma[y])) {
        return violated(UnionCondition::SigmaNotAutomorphism, alloc::vec![y]);
    }
    if let Some(z) = (0..n2).find(|&z| !q1.is_automorphism(&tau[z])) {
        return violated(UnionCondition::TauNotAutomorphism, alloc::vec![z]);
    }
    for x in 0..n1 {
        for y in 0..n1 {
            let expect = sigma[y].inverse().then(&sigma[x]).then(&sigma[y]);
            if sigma[q1.op(x, y)] != expect {
                return violated(UnionCondition::SigmaNotHomomorphism, alloc::vec![x, y]);
            }
        }
    }
    for x in 0..n2 {
        for y in 0..n2 {
            let expect = tau[y].inverse().then(&tau[x]).then(&tau[y]);
            if tau[q2.op(x, y)] != expect {
                return violated(UnionCondition::TauNotHomomorphism, alloc::vec![x, y]);
            }
        }
    }
    for x in 0..n1 {
        for y in 0..n1 {
            for z in 0..n2 {
                if q1.op(tau[z].apply(x), y) != tau[sigma[y].apply(z)].apply(q1.op(x, y)) {
                    return violated(UnionCondition::Condition1, alloc::vec![x, y, z]);
                }
            }
        }
    }
    for x in 0..n2 {
        for y in 0..n2 {
            for z in 0..n1 {
                if q2.op(sigma[z].apply(x), y) != sigma[tau[y].apply(z)].apply(q2.op(x, y)) {
                    return violated(UnionCondition::Condition2, alloc::vec![x, y, z]);
                }
            }
        }
    }
    let q = FiniteQuandle::from_fn(n1 + n2, |x, y| match (x < n1, y < n1) {
        (true, true) => q1.op(x, y),
        (false, false) => n1 + q2.op(x - n1, y - n1),
        (true, false) => tau[y - n1].apply(x),
        (false, true) => n1 + sigma[y].apply(x - n1),
    })?;
    Ok(q)
}

/// `U(n, m)`: `x_i * y_r = x_{i+1}`, `y_r * x_i = y_{r+1}`, and each block
/// is a trivial subquandle.
pub fn u_quandle(n: usize, m: usize) -> Result<FiniteQuandle, ConstructionError> {
    if n == 0 || m == 0 {
        return Err(ConstructionError::InvalidParameter(format!("U({n}, {m})")));
    }
    let q = FiniteQuandle::from_fn(n + m, |a, b| match (a < n, b < n) {
        (true, true) | (false, false) => a,
        (true, false) => (a + 1) % n,
        (false, true) => n + (a - n + 1) % m,
    })?;
    let mut names = indexed_names("x", n);
    names.extend(indexed_names("y", m));
    Ok(q.with_names(names)?)
}

/// The `σ, τ` data presenting `U(n, m)` as `T_n ⊔ T_m`.
pub fn u_union_data(n: usize, m: usize) -> (Vec<Permutation>, Vec<Permutation>) {
    let f = Permutation::from_fn_unchecked(m, |r| (r + 1) % m);
    let g = Permutation::from_fn_unchecked(n, |i| (i + 1) % n);
    (alloc::vec![f; n], alloc::vec![g; m])
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_tables() {
        assert_eq!(trivial(1).unwrap().table(), vec![vec![0]]);
        assert_eq!(trivial(3).unwrap().table(), vec![vec![0; 3], vec![1; 3], vec![2; 3]]);
        assert_eq!(dihedral_quandle(3).unwrap().table(), vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]);
        assert_eq!(dihedral_quandle(2).unwrap().table(), trivial(2).unwrap().table());
        assert_eq!(dihedral_quandle(4).unwrap().orbits(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn takasaki_quandles() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(takasaki(&z3).unwrap().table(), dihedral_quandle(3).unwrap().table());
        let v4 = FiniteGroup::abelian(&[2, 2]).unwrap();
        assert_eq!(takasaki(&v4).unwrap().table(), trivial(4).unwrap().table());
        // |H : 2H| orbits
        let h = FiniteGroup::abelian(&[2, 4]).unwrap();
        assert_eq!(takasaki(&h).unwrap().orbits().len(), 4);
        assert!(matches!(takasaki(&FiniteGroup::symmetric(3).unwrap()), Err(ConstructionError::NotAbelian(..))));
    }

    #[test]
    fn group_quandles() {
        let z5 = FiniteGroup::cyclic(5).unwrap();
        assert_eq!(conj(&z5).unwrap().table(), trivial(5).unwrap().table());
        assert_eq!(core(&z5).unwrap().table(), dihedral_quandle(5).unwrap().table());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let c = conj(&s3).unwrap();
        assert_eq!(c.orbits(), s3.conjugacy_classes());
        let ci = conj_inv(&s3).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(ci.op(x, y), c.op_inv(x, y));
            }
        }
        assert!(core(&s3).is_ok());
    }

    #[test]
    fn unions() {
        let t1 = trivial(1).unwrap();
        let t2 = trivial(2).unwrap();
        let id1 = Permutation::identity(1);
        let u = union(&t1, &t1, &[id1.clone()], &[id1.clone()]).unwrap();
        assert_eq!(u.table(), t2.table());

        let swap = Permutation::new(vec![1, 0]).unwrap();
        let cs4 = union(&t1, &t2, &[swap.clone()], &[id1.clone(), id1]).unwrap();
        assert_eq!(cs4.table(), u_quandle(1, 2).unwrap().table());
    }

    #[test]
    fn union_rejects_bad_actions() {
        let t2 = trivial(2).unwrap();
        let (id, swap) = (Permutation::identity(2), Permutation::new(vec![1, 0]).unwrap());
        // σ swaps while τ is not constant on σ-orbits
        let err = union(&t2, &t2, &[swap.clone(), swap.clone()], &[id.clone(), swap.clone()]).unwrap_err();
        assert!(matches!(err, ConstructionError::UnionConditionViolated { which: UnionCondition::Condition1, .. }));
        let r3 = dihedral_quandle(3).unwrap();
        let a = Permutation::new(vec![1, 0, 2]).unwrap();
        let b = Permutation::new(vec![0, 2, 1]).unwrap();
        let err = union(&t2, &r3, &[a, b], &[id.clone(), id.clone(), id.clone()]).unwrap_err();
        assert!(matches!(err, ConstructionError::UnionConditionViolated { which: UnionCondition::SigmaNotHomomorphism, .. }), "{err:?}");
        assert!(matches!(union(&t2, &t2, &[id.clone()], &[id.clone(), id]), Err(ConstructionError::SizeMismatch { .. })));
    }

    #[test]
    fn u_quandles() {
        assert_eq!(u_quandle(1, 1).unwrap().table(), trivial(2).unwrap().table());
        for (n, m) in [(1, 2), (2, 2), (2, 3), (3, 5)] {
            let q = u_quandle(n, m).unwrap();
            let (s, t) = u_union_data(n, m);
            let via_union = union(&trivial(n).unwrap(), &trivial(m).unwrap(), &s, &t).unwrap();
            assert_eq!(q.table(), via_union.table());
            let orbits = q.orbits();
            assert_eq!(orbits.len(), 2);
            assert_eq!((orbits[0].len(), orbits[1].len()), (n, m));
        }
    }
}
