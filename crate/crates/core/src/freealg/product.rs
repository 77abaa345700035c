//! `G₁ * G₂` for finite `G₁`, `G₂`, in syllable normal form, and the
//! `(G₁ * G₂, A)`-quandle on top of it.

use alloc::vec::Vec;

use super::FreeAlgError;
use crate::fingroup::FiniteGroup;

/// A non-identity element of factor `factor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Syllable {
    pub factor: usize,
    pub elem: usize,
}

/// Alternating non-identity syllables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FreeProductWord {
    syllables: Vec<Syllable>,
}

impl FreeProductWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct FreeProduct {
    factors: [FiniteGroup; 2],
}

impl FreeProduct {
    pub fn new(g1: FiniteGroup, g2: FiniteGroup) -> Self {
        Self { factors: [g1, g2] }
    }

    pub fn factor(&self, i: usize) -> &FiniteGroup {
        &self.factors[i]
    }

    fn check(&self, factor: usize, elem: usize) -> Result<(), FreeAlgError> {
        if factor > 1 {
            return Err(FreeAlgError::FactorOutOfRange(factor));
        }
        self.factors[factor].check_element(elem)?;
        Ok(())
    }

    /// The image of `elem ∈ G_factor`.
    pub fn embed(&self, factor: usize, elem: usize) -> Result<FreeProductWord, FreeAlgError> {
        self.check(factor, elem)?;
        Ok(self.normalize([Syllable { factor, elem }]))
    }

    /// Normal form of an arbitrary syllable sequence (elements in range).
    pub fn normalize(&self, syllables: impl IntoIterator<Item = Syllable>) -> FreeProductWord {
        let mut out: Vec<Syllable> = Vec::new();
        for s in syllables {
            let g = &self.factors[s.factor];
            if s.elem == g.identity() {
                continue;
            }
            match out.last() {
                Some(top) if top.factor == s.factor => {
                    let merged = g.mul(top.elem, s.elem);
                    out.pop();
                    if merged != g.identity() {
                        out.push(Syllable { factor: s.factor, elem: merged });
                    }
                }
                _ => out.push(s),
            }
        }
        FreeProductWord { syllables: out }
    }

    /// Builds a word from `(factor, elem)` pairs, validating each.
    pub fn word(&self, syllables: &[(usize, usize)]) -> Result<FreeProductWord, FreeAlgError> {
        for &(f, e) in syllables {
            self.check(f, e)?;
        }
        Ok(self.normalize(syllables.iter().map(|&(factor, elem)| Syllable { factor, elem })))
    }

    pub fn nf_mult(&self, a: &FreeProductWord, b: &FreeProductWord) -> FreeProductWord {
        self.normalize(a.syllables.iter().chain(&b.syllables).copied())
    }

    pub fn nf_inv(&self, w: &FreeProductWord) -> FreeProductWord {
        FreeProductWord {
            syllables: w.syllables.iter().rev().map(|s| Syllable { factor: s.factor, elem: self.factors[s.factor].inv(s.elem) }).collect(),
        }
    }

    /// Is `w` in `C_{G_factor}(a)`? A non-identity element of a factor has
    /// its whole centralizer inside that factor.
    pub fn in_factor_centralizer(&self, w: &FreeProductWord, factor: usize, a: usize) -> bool {
        match w.syllables.as_slice() {
            [] => true,
            [s] => s.factor == factor && self.factors[factor].commutes(s.elem, a),
            _ => false,
        }
    }
}

/// `[(a, u)]` with `a = A[a_index]` and `u` the canonical coset member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GaFreeElement {
    pub a_index: usize,
    pub word: FreeProductWord,
}

/// `Q(G₁ * G₂, A)` for `A ⊆ G₁ ∪ G₂`, an infinite quandle handled lazily.
#[derive(Clone, Debug)]
pub struct GaFree {
    product: FreeProduct,
    base: Vec<Syllable>,
    /// Right cosets of `N_i`, the normal closure of `A ∩ G_i` in `G_i`:
    /// `coset[i][g]` is the smallest member of `N_i g`.
    coset: [Vec<usize>; 2],
}

impl GaFree {
    pub fn new(product: FreeProduct, base: &[(usize, usize)]) -> Result<Self, FreeAlgError> {
        let mut syl = Vec::with_capacity(base.len());
        for (k, &(f, e)) in base.iter().enumerate() {
            product.check(f, e)?;
            if e == product.factor(f).identity() {
                return Err(FreeAlgError::IdentityBaseElement(k));
            }
            syl.push(Syllable { factor: f, elem: e });
        }
        let coset = [0, 1].map(|i| {
            let g = product.factor(i);
            let mut gens: Vec<usize> = Vec::new();
            for s in syl.iter().filter(|s| s.factor == i) {
                gens.extend(g.conjugacy_class(s.elem));
            }
            let n = g.generated_subgroup(&gens);
            (0..g.order()).map(|x| n.iter().map(|&h| g.mul(h, x)).min().expect("subgroup has the identity")).collect()
        });
        Ok(Self { product, base: syl, coset })
    }

    pub fn product(&self) -> &FreeProduct {
        &self.product
    }

    pub fn base(&self) -> &[Syllable] {
        &self.base
    }

    /// Canonical representative of `[(A[a_index], u)]`: a leading syllable
    /// `g` from the factor of `a` becomes the smallest element of
    /// `C(a)·g`, and is dropped when that is the identity.
    pub fn element(&self, a_index: usize, u: &FreeProductWord) -> GaFreeElement {
        let a = self.base[a_index];
        let mut syl = u.syllables.clone();
        if let Some(first) = syl.first().copied() {
            if first.factor == a.factor {
                let g = self.product.factor(a.factor);
                let rep = g.centralizer(a.elem).into_iter().map(|c| g.mul(c, first.elem)).min().expect("centralizer is non-empty");
                if rep == g.identity() {
                    syl.remove(0);
                } else {
                    syl[0].elem = rep;
                }
            }
        }
        GaFreeElement { a_index, word: FreeProductWord { syllables: syl } }
    }

    pub fn generator(&self, a_index: usize) -> GaFreeElement {
        GaFreeElement { a_index, word: FreeProductWord::empty() }
    }

    fn op_sign(&self, p: &GaFreeElement, q: &GaFreeElement, inverse: bool) -> GaFreeElement {
        let pr = &self.product;
        let b = self.base[q.a_index];
        let b = if inverse { Syllable { factor: b.factor, elem: pr.factor(b.factor).inv(b.elem) } } else { b };
        let bw = pr.normalize([b]);
        let u = pr.nf_mult(&pr.nf_mult(&pr.nf_mult(&p.word, &pr.nf_inv(&q.word)), &bw), &q.word);
        self.element(p.a_index, &u)
    }

    /// `(a, u) * (b, v) = (a, u v⁻¹ b v)`.
    pub fn op(&self, p: &GaFreeElement, q: &GaFreeElement) -> GaFreeElement {
        self.op_sign(p, q, false)
    }

    pub fn op_inv(&self, p: &GaFreeElement, q: &GaFreeElement) -> GaFreeElement {
        self.op_sign(p, q, true)
    }

    /// `(a, u) = (a′, v)` iff `a = a′` and `u v⁻¹ ∈ C(a)`.
    pub fn equal(&self, p: &GaFreeElement, q: &GaFreeElement) -> bool {
        let a = self.base[p.a_index];
        p.a_index == q.a_index
            && self.product.in_factor_centralizer(&self.product.nf_mult(&p.word, &self.product.nf_inv(&q.word)), a.factor, a.elem)
    }

    /// Every normal-form word with at most `max_syllables` syllables.
    fn words_up_to(&self, max_syllables: usize) -> Vec<FreeProductWord> {
        let mut out = alloc::vec![FreeProductWord::empty()];
        let mut layer = out.clone();
        for _ in 0..max_syllables {
            let mut next = Vec::new();
            for w in &layer {
                for f in 0..2 {
                    if w.syllables.last().is_some_and(|s| s.factor == f) {
                        continue;
                    }
                    let g = self.product.factor(f);
                    for e in (0..g.order()).filter(|&e| e != g.identity()) {
                        let mut s = w.syllables.clone();
                        s.push(Syllable { factor: f, elem: e });
                        next.push(FreeProductWord { syllables: s });
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Is `w` in the normal closure of `A`, i.e. trivial in
    /// `G₁/N₁ * G₂/N₂`?
    fn in_inner_subgroup(&self, w: &FreeProductWord) -> bool {
        let mut quotient: Vec<Syllable> = Vec::new();
        for s in &w.syllables {
            let g = self.product.factor(s.factor);
            let c = &self.coset[s.factor];
            match quotient.last_mut() {
                Some(top) if top.factor == s.factor => {
                    top.elem = c[g.mul(top.elem, s.elem)];
                    if c[top.elem] == c[g.identity()] {
                        quotient.pop();
                    }
                }
                _ => {
                    if c[s.elem] != c[g.identity()] {
                        quotient.push(Syllable { factor: s.factor, elem: c[s.elem] });
                    }
                }
            }
        }
        quotient.is_empty()
    }

    /// The part of the orbit of `x` whose elements have a representative
    /// with at most `depth` syllables, sorted.
    ///
    /// `Inn` acts on `(a, u)` by right multiplication with the normal
    /// closure `N` of `A`, so `(a, v)` is in the orbit iff `u⁻¹v ∈ N`.
    pub fn orbit_of(&self, x: &GaFreeElement, depth: usize) -> Vec<GaFreeElement> {
        let pr = &self.product;
        let inv_u = pr.nf_inv(&x.word);
        let mut out: Vec<GaFreeElement> = self
            .words_up_to(depth)
            .into_iter()
            .filter(|v| self.in_inner_subgroup(&pr.nf_mult(&inv_u, v)))
            .map(|v| self.element(x.a_index, &v))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `ℤ₂ * ℤ₂ = ⟨a⟩ * ⟨b⟩`.
    fn infinite_dihedral() -> FreeProduct {
        FreeProduct::new(FiniteGroup::cyclic(2).unwrap(), FiniteGroup::cyclic(2).unwrap())
    }

    #[test]
    fn normal_forms() {
        let p = FreeProduct::new(FiniteGroup::cyclic(3).unwrap(), FiniteGroup::cyclic(2).unwrap());
        let left = p.word(&[(0, 1), (1, 1)]).unwrap();
        let right = p.word(&[(1, 1), (0, 1)]).unwrap();
        assert_eq!(p.nf_mult(&left, &right), p.word(&[(0, 2)]).unwrap());
        let right = p.word(&[(1, 1), (0, 2)]).unwrap();
        assert!(p.nf_mult(&left, &right).is_empty());
        let w = p.word(&[(0, 1), (1, 1), (0, 2), (1, 1)]).unwrap();
        assert!(p.nf_mult(&w, &p.nf_inv(&w)).is_empty());
        assert_eq!(p.word(&[(0, 0), (1, 0)]).unwrap(), FreeProductWord::empty());
    }

    #[test]
    fn centralizers_in_z2_star_z2() {
        let p = infinite_dihedral();
        let abab = p.word(&[(0, 1), (1, 1), (0, 1), (1, 1)]).unwrap();
        assert_eq!(abab.len(), 4);
        let a = p.embed(0, 1).unwrap();
        assert!(p.in_factor_centralizer(&a, 0, 1));
        let bab = p.word(&[(1, 1), (0, 1), (1, 1)]).unwrap();
        assert!(!p.in_factor_centralizer(&bab, 0, 1));
        // brute force: words up to 6 syllables commuting with a are 1 and a
        let gf = GaFree::new(p.clone(), &[(0, 1)]).unwrap();
        let commuting: Vec<_> =
            gf.words_up_to(6).into_iter().filter(|w| p.nf_mult(w, &a) == p.nf_mult(&a, w)).collect();
        assert_eq!(commuting.len(), 2);
        assert!(commuting.iter().all(|w| p.in_factor_centralizer(w, 0, 1)));
    }

    #[test]
    fn ga_free_basics() {
        let p = infinite_dihedral();
        let gf = GaFree::new(p.clone(), &[(0, 1), (1, 1)]).unwrap();
        let (a, b) = (gf.generator(0), gf.generator(1));
        assert_eq!(gf.op(&a, &b).word, p.word(&[(1, 1)]).unwrap());
        let x = GaFreeElement { a_index: 0, word: p.word(&[(1, 1), (0, 1), (1, 1)]).unwrap() };
        let y = GaFreeElement { a_index: 0, word: p.word(&[(0, 1), (1, 1), (0, 1), (1, 1)]).unwrap() };
        assert!(gf.equal(&x, &y));
        assert_eq!(gf.element(0, &y.word), gf.element(0, &x.word));
        assert_eq!(gf.op(&a, &a), a);
        assert!(GaFree::new(p, &[(0, 0)]).is_err());
    }

    #[test]
    fn orbits_grow() {
        let p = infinite_dihedral();
        let gf = GaFree::new(p.clone(), &[(0, 1), (1, 1)]).unwrap();
        let a = gf.generator(0);
        let sizes: Vec<usize> = (0..5).map(|d| gf.orbit_of(&a, d).len()).collect();
        assert_eq!(sizes, [1, 2, 3, 4, 5]);
        let two = gf.orbit_of(&a, 2);
        assert!(two.contains(&gf.element(0, &p.word(&[(1, 1), (0, 1)]).unwrap())));
        // with A = {a}, Inn only multiplies by the normal closure of a,
        // so b never appears
        let ga = GaFree::new(p.clone(), &[(0, 1)]).unwrap();
        let orbit = ga.orbit_of(&ga.generator(0), 3);
        assert_eq!(orbit.len(), 2);
        assert!(!orbit.contains(&ga.element(0, &p.word(&[(1, 1)]).unwrap())));
    }
}
