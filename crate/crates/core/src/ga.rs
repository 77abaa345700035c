//! The `(G, A)`-quandle of a finite group.
//!
//! Elements are classes `[(a, u)]` with `a ∈ A`, `u ∈ G`, where
//! `(a, u) ~ (a, c·u)` for `c ∈ C_G(a)`, and
//! `[(a, u)] * [(b, v)] = [(a, u v⁻¹ b v)]`. Each class is stored by its
//! smallest member `u`. Quandle indices run over `A` in the given order and,
//! within one `a`, over coset representatives in ascending order.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::constructions::{self, ConstructionError};
use crate::fingroup::{FiniteGroup, GroupError};
use crate::perm::Permutation;
use crate::quandle::{FiniteQuandle, IsoWitness, QuandleError, MAX_QUANDLE_ORDER};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GaError {
    #[error("the base set A is empty")]
    EmptyBase,
    #[error("element {0} occurs twice in A")]
    DuplicateBaseElement(usize),
    #[error("Q(G,A) would have {order} elements, over the limit {limit}")]
    SizeOverflow { order: usize, limit: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("ι_{0} is not an automorphism")]
    NotAnAutomorphism(usize),
}

/// The class `[(A[a_index], coset_rep)]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GaElement {
    pub a_index: usize,
    pub coset_rep: usize,
}

#[derive(Clone, Debug)]
pub struct GaQuandle {
    group: FiniteGroup,
    base: Vec<usize>,
    quandle: FiniteQuandle,
    labels: Vec<GaElement>,
    /// `lookup[k][u]` is the quandle index of `[(A[k], u)]`.
    lookup: Vec<Vec<usize>>,
}

/// Builds `Q(G, A)`.
pub fn ga_quandle(group: &FiniteGroup, base: &[usize]) -> Result<GaQuandle, GaError> {
    if base.is_empty() {
        return Err(GaError::EmptyBase);
    }
    for (k, &a) in base.iter().enumerate() {
        group.check_element(a)?;
        if base[..k].contains(&a) {
            return Err(GaError::DuplicateBaseElement(a));
        }
    }
    let n = group.order();
    let mut labels = Vec::new();
    let mut lookup = Vec::with_capacity(base.len());
    for (k, &a) in base.iter().enumerate() {
        let cent = group.centralizer(a);
        let rep_of: Vec<usize> = (0..n).map(|u| cent.iter().map(|&c| group.mul(c, u)).min().expect("identity centralizes")).collect();
        let mut pos = alloc::vec![usize::MAX; n];
        for u in 0..n {
            if rep_of[u] == u {
                pos[u] = labels.len();
                labels.push(GaElement { a_index: k, coset_rep: u });
            }
        }
        lookup.push((0..n).map(|u| pos[rep_of[u]]).collect::<Vec<_>>());
        if labels.len() > MAX_QUANDLE_ORDER {
            return Err(GaError::SizeOverflow { order: labels.len(), limit: MAX_QUANDLE_ORDER });
        }
    }
    let quandle = FiniteQuandle::from_fn(labels.len(), |p, q| {
        let (x, y) = (labels[p], labels[q]);
        let b = base[y.a_index];
        lookup[x.a_index][group.mul(x.coset_rep, group.conjugate(b, y.coset_rep))]
    })?;
    let names = labels.iter().map(|e| format!("({}, {})", group.label(base[e.a_index]), group.label(e.coset_rep))).collect();
    let quandle = quandle.with_names(names)?;
    Ok(GaQuandle { group: group.clone(), base: base.to_vec(), quandle, labels, lookup })
}

/// Diagnostics from [`GaQuandle::augmentation_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AugmentationReport {
    pub failures: Vec<String>,
}

impl AugmentationReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

impl GaQuandle {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    pub fn into_quandle(self) -> FiniteQuandle {
        self.quandle
    }

    pub fn labels(&self) -> &[GaElement] {
        &self.labels
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    /// Quandle index of `[(A[a_index], u)]`.
    pub fn element(&self, a_index: usize, u: usize) -> usize {
        self.lookup[a_index][u]
    }

    /// `[(a, u)] *⁻¹ [(b, v)] = [(a, u v⁻¹ b⁻¹ v)]`, straight from the formula.
    pub fn op_inv_formula(&self, p: usize, q: usize) -> usize {
        let (x, y) = (self.labels[p], self.labels[q]);
        let b = self.base[y.a_index];
        self.element(x.a_index, self.group.mul(x.coset_rep, self.group.conjugate(self.group.inv(b), y.coset_rep)))
    }

    /// The augmentation `ε(a, u) = u⁻¹ a u`.
    pub fn epsilon(&self, q: usize) -> usize {
        let e = self.labels[q];
        self.group.conjugate(self.base[e.a_index], e.coset_rep)
    }

    /// The right action `(a, u)·h = (a, u h)`.
    pub fn act(&self, q: usize, h: usize) -> usize {
        let e = self.labels[q];
        self.element(e.a_index, self.group.mul(e.coset_rep, h))
    }

    /// `ι_g : (a, u) ↦ (a, u g)`, checked to be an automorphism.
    pub fn iota(&self, g: usize) -> Result<Permutation, GaError> {
        self.group.check_element(g)?;
        let p = Permutation::from_fn_unchecked(self.order(), |q| self.act(q, g));
        if !self.quandle.is_automorphism(&p) {
            return Err(GaError::NotAnAutomorphism(g));
        }
        Ok(p)
    }

    /// Checks the augmented-quandle structure: (AQ1) `q·ε(q) = q`,
    /// (AQ2) `ε(q·x) = x⁻¹ ε(q) x`, `p * q = p·ε(q)`, and that `ε` is a
    /// homomorphism into `Conj(G)`.
    pub fn augmentation_check(&self) -> AugmentationReport {
        let g = &self.group;
        let mut failures = Vec::new();
        for q in 0..self.order() {
            if self.act(q, self.epsilon(q)) != q {
                failures.push(format!("AQ1 fails at {q}"));
            }
            for x in 0..g.order() {
                if self.epsilon(self.act(q, x)) != g.conjugate(self.epsilon(q), x) {
                    failures.push(format!("AQ2 fails at ({q}, {x})"));
                }
            }
            for p in 0..self.order() {
                if self.quandle.op(p, q) != self.act(p, self.epsilon(q)) {
                    failures.push(format!("p * q ≠ p·ε(q) at ({p}, {q})"));
                }
                if self.epsilon(self.quandle.op(p, q)) != g.conjugate(self.epsilon(p), self.epsilon(q)) {
                    failures.push(format!("ε is not a homomorphism at ({p}, {q})"));
                }
            }
        }
        AugmentationReport { failures }
    }
}

/// The subquandle of `Conj(G)` on the union of the classes of `A`, with
/// the group elements it uses (ascending).
pub fn conjugation_union_subquandle(group: &FiniteGroup, base: &[usize]) -> Result<(FiniteQuandle, Vec<usize>), GaError> {
    let mut hit = alloc::vec![false; group.order()];
    for &a in base {
        for x in group.conjugacy_class(group.check_element(a)?) {
            hit[x] = true;
        }
    }
    let elems: Vec<usize> = (0..group.order()).filter(|&x| hit[x]).collect();
    let conj = constructions::conj(group)?;
    Ok((conj.subquandle(&elems)?, elems))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaComparison {
    pub isomorphic: bool,
    /// Map from `Q(G,A)` indices to subquandle indices.
    pub witness: Option<IsoWitness>,
    pub pairwise_nonconjugate: bool,
    pub ga_orbits: usize,
    pub conj_orbits: usize,
}

/// Compares `Q(G, A)` with the union of the classes of `A` inside `Conj(G)`.
pub fn compare_with_ga(group: &FiniteGroup, base: &[usize]) -> Result<GaComparison, GaError> {
    let ga = ga_quandle(group, base)?;
    let (sub, _) = conjugation_union_subquandle(group, base)?;
    let witness = ga.quandle().is_isomorphic(&sub)?;
    let pairwise_nonconjugate =
        base.iter().enumerate().all(|(k, &a)| base[..k].iter().all(|&b| !group.conjugacy_class(a).contains(&b)));
    Ok(GaComparison {
        isomorphic: witness.is_some(),
        witness,
        pairwise_nonconjugate,
        ga_orbits: ga.quandle().orbits().len(),
        conj_orbits: sub.orbits().len(),
    })
}
