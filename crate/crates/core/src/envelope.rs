//! Enveloping groups as finite presentations.
//!
//! `G_Q` is generated by the elements of `Q` subject to `x * y = y⁻¹ x y`.
//! It is always infinite, so instead of coset enumeration everything here
//! works by evaluating presentations in finite groups: abelianization via
//! Smith normal form, assignments into catalog groups, and injectivity
//! certificates for the natural map `θ : Q → G_Q`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::constructions::{dihedral_quandle, u_quandle, ConstructionError};
use crate::fingroup::{make_heisenberg_model, FiniteGroup, GroupError};
use crate::ga::{ga_quandle, GaError};
use crate::quandle::{ConjOf, FiniteQuandle, HomSearch, IsoWitness, QuandleError};
use crate::snf::{cokernel_invariants, AbelianInvariants, IntMatrix};
use crate::util::{disjoint_names, gcd};
use crate::word::FreeWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FailureReason {
    Relator,
    Collision,
    NotHom,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Relator => "relator",
            Self::Collision => "collision",
            Self::NotHom => "not_hom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EnvelopeError {
    #[error("relator {relator} uses generator {gen}, but there are only {num_generators}")]
    GeneratorOutOfRange { relator: usize, gen: usize, num_generators: usize },
    #[error("{got} generator images given, {expected} expected")]
    ArityMismatch { expected: usize, got: usize },
    #[error("certificate failed ({reason}) at {witness:?}")]
    CertificateFailed { reason: FailureReason, witness: Vec<usize> },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("could not find a fresh name for `{0}`")]
    NameClash(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Ga(#[from] GaError),
}

/// `⟨a₀, …, a_{n−1} | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GroupPresentation {
    pub names: Vec<String>,
    pub relators: Vec<FreeWord>,
}

impl GroupPresentation {
    /// Reduces each relator and checks generator indices.
    pub fn new(names: Vec<String>, relators: Vec<FreeWord>) -> Result<Self, EnvelopeError> {
        let n = names.len();
        let relators: Vec<FreeWord> = relators.into_iter().map(|w| FreeWord::reduce(w.letters().iter().copied())).collect();
        for (k, r) in relators.iter().enumerate() {
            if let Some(l) = r.letters().iter().find(|l| l.gen >= n) {
                return Err(EnvelopeError::GeneratorOutOfRange { relator: k, gen: l.gen, num_generators: n });
            }
        }
        Ok(Self { names, relators })
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    /// Rows are relator exponent sums.
    pub fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(self.num_generators())).collect();
        if rows.is_empty() {
            return IntMatrix::zeros(0, self.num_generators());
        }
        IntMatrix::from_rows(&rows).expect("rows share a length")
    }

    /// Generators of `other` follow those of `self` (renamed as in
    /// `presentation_free_product`), and so do its relators.
    pub fn disjoint_union(&self, other: &GroupPresentation) -> Result<GroupPresentation, EnvelopeError> {
        let mut names = self.names.clone();
        names.extend(disjoint_names(&self.names, &other.names).map_err(EnvelopeError::NameClash)?);
        let offset = self.num_generators();
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().map(|r| r.shifted(offset)));
        Ok(GroupPresentation { names, relators })
    }

    pub fn render_relator(&self, r: &FreeWord) -> String {
        r.render(&|g| self.names[g].clone())
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.render_relator(r)).collect();
        write!(f, "⟨{} | {}⟩", self.names.join(", "), rels.join(", "))
    }
}

/// Whether relators that reduce to the empty word are kept.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EmptyRelators {
    #[default]
    Drop,
    Keep,
}

fn generator_names(q: &FiniteQuandle) -> Vec<String> {
    match q.names() {
        Some(n) => n.to_vec(),
        None => (0..q.order()).map(|i| format!("a{i}")).collect(),
    }
}

/// The relator `y⁻¹ x y (x*y)⁻¹`.
pub fn relator(q: &FiniteQuandle, x: usize, y: usize) -> FreeWord {
    let (gx, gy, gxy) = (FreeWord::gen(x), FreeWord::gen(y), FreeWord::gen(q.op(x, y)));
    gx.conjugate_by(&gy).mul(&gxy.inverse())
}

/// The presentation of `G_Q`, relators in `(x, y)` row-major order.
pub fn presentation_of(q: &FiniteQuandle) -> GroupPresentation {
    presentation_of_with(q, EmptyRelators::Drop)
}

pub fn presentation_of_with(q: &FiniteQuandle, empty: EmptyRelators) -> GroupPresentation {
    let n = q.order();
    let relators = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| relator(q, x, y))
        .filter(|r| empty == EmptyRelators::Keep || !r.is_empty())
        .collect();
    GroupPresentation { names: generator_names(q), relators }
}

pub fn abelianization(p: &GroupPresentation) -> AbelianInvariants {
    cokernel_invariants(&p.relation_matrix())
}

/// Generator images in a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub target: FiniteGroup,
    pub images: Vec<usize>,
}

impl Assignment {
    pub fn new(target: FiniteGroup, images: Vec<usize>) -> Result<Self, EnvelopeError> {
        for &g in &images {
            target.check_element(g)?;
        }
        Ok(Self { target, images })
    }

    /// The same images conjugated by `g`.
    pub fn conjugated(&self, g: usize) -> Result<Assignment, EnvelopeError> {
        self.target.check_element(g)?;
        let images = self.images.iter().map(|&x| self.target.conjugate(x, g)).collect();
        Ok(Assignment { target: self.target.clone(), images })
    }

    /// Do the images generate the target?
    pub fn is_surjective(&self) -> bool {
        self.target.generates(&self.images)
    }
}

/// Index of the first relator that does not evaluate to the identity.
pub fn first_failing_relator(p: &GroupPresentation, asg: &Assignment) -> Result<Option<usize>, EnvelopeError> {
    if asg.images.len() != p.num_generators() {
        return Err(EnvelopeError::ArityMismatch { expected: p.num_generators(), got: asg.images.len() });
    }
    let e = asg.target.identity();
    Ok(p.relators.iter().position(|r| r.eval(&asg.target, &asg.images) != e))
}

/// Does every relator evaluate to the identity?
pub fn eval_assignment(p: &GroupPresentation, asg: &Assignment) -> Result<bool, EnvelopeError> {
    Ok(first_failing_relator(p, asg)?.is_none())
}

/// A finite group and generator images showing `θ : Q → G_Q` is injective:
/// the images satisfy every relator, are pairwise distinct, and form a
/// quandle homomorphism `Q → Conj(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub group: FiniteGroup,
    pub images: Vec<usize>,
}

impl Certificate {
    pub fn assignment(&self) -> Assignment {
        Assignment { target: self.group.clone(), images: self.images.clone() }
    }
}

/// Checks, in order: relators, pairwise distinctness, the homomorphism
/// property. Witnesses are `[x, y]` for a failing relator or a failing
/// pair, and the two colliding elements for a collision.
pub fn injectivity_certificate(q: &FiniteQuandle, asg: &Assignment) -> Result<Certificate, EnvelopeError> {
    let n = q.order();
    let p = presentation_of_with(q, EmptyRelators::Keep);
    if let Some(k) = first_failing_relator(&p, asg)? {
        return Err(EnvelopeError::CertificateFailed { reason: FailureReason::Relator, witness: alloc::vec![k / n, k % n] });
    }
    let f = &asg.images;
    for x in 0..n {
        if let Some(y) = (x + 1..n).find(|&y| f[x] == f[y]) {
            return Err(EnvelopeError::CertificateFailed { reason: FailureReason::Collision, witness: alloc::vec![x, y] });
        }
    }
    let g = &asg.target;
    for x in 0..n {
        if let Some(y) = (0..n).find(|&y| f[q.op(x, y)] != g.conjugate(f[x], f[y])) {
            return Err(EnvelopeError::CertificateFailed { reason: FailureReason::NotHom, witness: alloc::vec![x, y] });
        }
    }
    Ok(Certificate { group: asg.target.clone(), images: f.clone() })
}

/// Cyclic groups of order 2..=24, dihedral groups of order 4..=24, then
/// `S₃` and `S₄`.
pub fn default_catalog() -> Vec<FiniteGroup> {
    let mut out = Vec::new();
    out.extend((2..=24).map(|k| FiniteGroup::cyclic(k).expect("small cyclic group")));
    out.extend((2..=12).map(|k| FiniteGroup::dihedral(k).expect("small dihedral group")));
    out.extend((3..=4).map(|k| FiniteGroup::symmetric(k).expect("small symmetric group")));
    out
}

/// Runs a homomorphism search `Q → Conj(G)` for each catalog group in turn
/// and returns the first map accepted by `accept`, with the catalog index.
/// `budget` caps the total number of search nodes.
///
/// The first element branched on is only sent to the smallest member of
/// each conjugacy class,
/// so `accept` must not change its answer when every image is conjugated
/// by the same element.
pub fn search_conj_homs(
    q: &FiniteQuandle,
    catalog: &[FiniteGroup],
    injective: bool,
    budget: u64,
    mut accept: impl FnMut(&FiniteGroup, &[usize]) -> bool,
) -> Result<Option<(usize, Vec<usize>)>, EnvelopeError> {
    let mut used = 0u64;
    for (k, g) in catalog.iter().enumerate() {
        if injective && g.order() < q.order() {
            continue;
        }
        let conj = ConjOf(g);
        let mut class_min = alloc::vec![false; g.order()];
        for class in g.conjugacy_classes() {
            class_min[class.iter().copied().min().expect("classes are non-empty")] = true;
        }
        let mut search = HomSearch::new(q, &conj, budget - used);
        let first = search.first_branch();
        search = search.restrict(|x, a| Some(x) != first || class_min[a]);
        if injective {
            search = search.injective();
        }
        let mut found = None;
        search
            .run(|m| {
                if accept(g, m) {
                    found = Some(m.to_vec());
                    false
                } else {
                    true
                }
            })
            .map_err(|_| EnvelopeError::BudgetExhausted { budget })?;
        used += search.nodes();
        if let Some(m) = found {
            return Ok(Some((k, m)));
        }
    }
    Ok(None)
}

/// First injectivity certificate over `catalog`, in catalog order and then
/// search order. `Ok(None)` means the search completed without finding one,
/// which proves nothing about `θ`.
pub fn search_certificate(q: &FiniteQuandle, catalog: &[FiniteGroup], budget: u64) -> Result<Option<Certificate>, EnvelopeError> {
    let hit = search_conj_homs(q, catalog, true, budget, |g, m| {
        injectivity_certificate(q, &Assignment { target: g.clone(), images: m.to_vec() }).is_ok()
    })?;
    Ok(hit.map(|(k, images)| Certificate { group: catalog[k].clone(), images }))
}

/// `⟨x₀, y₀ | [x₀,c], [y₀,c], cⁿ, cᵐ⟩` with `c = [x₀, y₀]`.
pub fn u_reduced_presentation(n: usize, m: usize) -> GroupPresentation {
    let (x, y) = (FreeWord::gen(0), FreeWord::gen(1));
    let c = FreeWord::commutator(&x, &y);
    let relators = alloc::vec![FreeWord::commutator(&x, &c), FreeWord::commutator(&y, &c), c.pow(n as i64), c.pow(m as i64)];
    GroupPresentation { names: alloc::vec!["x0".into(), "y0".into()], relators }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UReductionReport {
    pub n: usize,
    pub m: usize,
    pub model_order: usize,
    /// Every relator of `presentation_of(U(n,m))` holds under
    /// `x_i ↦ x₀cⁱ`, `y_r ↦ y₀c⁻ʳ`.
    pub full_relators_hold: bool,
    pub reduced_relators_hold: bool,
    /// Same check with `y_r ↦ y₀cʳ`; this only holds when `c² = 1`.
    pub y_plus_substitution_holds: bool,
    pub images_generate: bool,
    pub model_abelian: bool,
    pub coprime: bool,
}

impl UReductionReport {
    pub fn passes(&self) -> bool {
        self.full_relators_hold && self.reduced_relators_hold && self.images_generate && self.model_abelian == self.coprime
    }
}

/// Checks the two-generator presentation of `G_{U(n,m)}` in the finite
/// model `make_heisenberg_model(n, m)`.
pub fn verify_u_reduction(n: usize, m: usize) -> Result<UReductionReport, EnvelopeError> {
    let model = make_heisenberg_model(n, m)?;
    let g = &model.group;
    let c = model.commutator();
    let uq = u_quandle(n, m)?;
    let full = presentation_of(&uq);
    let images = |sign: i64| -> Vec<usize> {
        let xs = (0..n).map(|i| g.mul(model.x0, g.pow(c, i as i64)));
        let ys = (0..m).map(|r| g.mul(model.y0, g.pow(c, sign * r as i64)));
        xs.chain(ys).collect()
    };
    let minus = Assignment { target: g.clone(), images: images(-1) };
    let plus = Assignment { target: g.clone(), images: images(1) };
    let reduced = Assignment { target: g.clone(), images: alloc::vec![model.x0, model.y0] };
    Ok(UReductionReport {
        n,
        m,
        model_order: g.order(),
        full_relators_hold: eval_assignment(&full, &minus)?,
        reduced_relators_hold: eval_assignment(&u_reduced_presentation(n, m), &reduced)?,
        y_plus_substitution_holds: eval_assignment(&full, &plus)?,
        images_generate: minus.is_surjective(),
        model_abelian: g.is_abelian(),
        coprime: gcd(n, m) == 1,
    })
}

/// `⟨a₀, a₁ | [a₀,a₁²], [a₀²,a₁], [a₀,(a₀a₁)ⁿ], [a₁,(a₀a₁)ⁿ]⟩`.
pub fn r2n_presentation(n: usize) -> GroupPresentation {
    let (a0, a1) = (FreeWord::gen(0), FreeWord::gen(1));
    let t = a0.mul(&a1).pow(n as i64);
    let relators = alloc::vec![
        FreeWord::commutator(&a0, &a1.pow(2)),
        FreeWord::commutator(&a0.pow(2), &a1),
        FreeWord::commutator(&a0, &t),
        FreeWord::commutator(&a1, &t),
    ];
    GroupPresentation { names: alloc::vec!["a0".into(), "a1".into()], relators }
}

/// `a_{2r+ε} = a_ε^{(a₀a₁)^r}` as words in `a₀, a₁`, for `i < 2n`.
pub fn r2n_derived_words(n: usize) -> Vec<FreeWord> {
    let t = FreeWord::gen(0).mul(&FreeWord::gen(1));
    (0..2 * n).map(|i| FreeWord::gen(i % 2).conjugate_by(&t.pow((i / 2) as i64))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct R2nReport {
    pub n: usize,
    pub defining_relators_hold: bool,
    /// Images of `a₀, …, a_{2n−1}` in the dihedral group of order `4n`.
    pub derived_images: Vec<usize>,
    pub derived_distinct: bool,
    /// The derived image of `a_i` is the reflection `s·rⁱ`.
    pub derived_are_reflections: bool,
    pub relation_count: usize,
    pub relations_hold: bool,
    pub certificate: bool,
}

impl R2nReport {
    pub fn passes(&self) -> bool {
        self.defining_relators_hold
            && self.derived_distinct
            && self.derived_are_reflections
            && self.relation_count == 4 * self.n * self.n
            && self.relations_hold
            && self.certificate
    }
}

/// Evaluates the two-generator presentation of `G_{R_{2n}}` in the dihedral
/// group of order `4n` with `a₀ ↦ s`, `a₁ ↦ s·r`.
pub fn verify_r2n(n: usize) -> Result<R2nReport, EnvelopeError> {
    if n == 0 {
        return Err(ConstructionError::InvalidParameter("n must be positive".into()).into());
    }
    let k = 2 * n;
    let g = FiniteGroup::dihedral(k)?;
    let gens = Assignment { target: g.clone(), images: alloc::vec![k, k + 1] };
    let derived: Vec<usize> = r2n_derived_words(n).iter().map(|w| w.eval(&g, &gens.images)).collect();
    let mut sorted = derived.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let r2n = dihedral_quandle(k)?;
    let justrel = presentation_of_with(&r2n, EmptyRelators::Keep);
    let asg = Assignment { target: g, images: derived.clone() };
    Ok(R2nReport {
        n,
        defining_relators_hold: eval_assignment(&r2n_presentation(n), &gens)?,
        derived_distinct: sorted.len() == k,
        derived_are_reflections: derived.iter().enumerate().all(|(i, &x)| x == k + i),
        relation_count: justrel.relators.len(),
        relations_hold: eval_assignment(&justrel, &asg)?,
        certificate: injectivity_certificate(&r2n, &asg).is_ok(),
        derived_images: derived,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructReport {
    /// Image of the smallest element of each orbit.
    pub base: Vec<usize>,
    pub ga_order: usize,
    pub isomorphic: bool,
    /// Map from `Q` to `Q(G, A)`.
    pub witness: Option<IsoWitness>,
}

/// Compares `Q` with `Q(G, A)`, `A` the certificate images of one element
/// per orbit. A negative answer is only reported.
pub fn reconstruct_check(q: &FiniteQuandle, cert: &Certificate) -> Result<ReconstructReport, EnvelopeError> {
    if cert.images.len() != q.order() {
        return Err(EnvelopeError::ArityMismatch { expected: q.order(), got: cert.images.len() });
    }
    let base: Vec<usize> = q.orbits().iter().map(|o| cert.images[o[0]]).collect();
    let ga = ga_quandle(&cert.group, &base)?;
    let witness = q.is_isomorphic(ga.quandle())?;
    Ok(ReconstructReport { base, ga_order: ga.order(), isomorphic: witness.is_some(), witness })
}
