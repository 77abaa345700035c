//! Bounded rewriting for quandle presentations.
//!
//! Every quandle word equals a left-normed word
//! `((g₀ *^{ε₁} g₁) *^{ε₂} g₂) … *^{εₖ} gₖ`, written `(g₀; g₁^{ε₁} … gₖ^{εₖ})`.
//! Cancelling `(x * y) *⁻¹ y = x` makes the tail a reduced free-group word,
//! so the candidates are free rack elements. The closure merges them with
//! the idempotency rule, the relations, right multiplication and operand
//! substitution inside a finite universe of slightly longer words. Merges
//! are always sound, so the class count is an upper bound; finite models
//! (or the free quandle itself when there are no relations) separate words
//! and give a lower bound.

use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{fq_canonicalize, FreeAlgError, FreeRackElement, QuandlePresentation};
use crate::classify::{enumerate_quandles, Filters};
use crate::quandle::FiniteQuandle;
use crate::util::DisjointSets;
use crate::word::{FreeWord, Letter};

pub const MAX_CLOSURE_DEPTH: usize = 4;
const UNIVERSE_LIMIT: usize = 300_000;
const MODEL_ORDER: usize = 4;
const ASSIGNMENT_LIMIT: usize = 100_000;

/// Bounds on the number of distinct elements among left-normed words with
/// at most `depth` operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureEstimate {
    pub depth: usize,
    /// Reduced left-normed words, by base, then length, then letters.
    pub words: Vec<FreeRackElement>,
    /// Merged classes (indices into `words`), ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    pub lower: usize,
    pub upper: usize,
    /// Model assignments that satisfied every relation.
    pub models_used: usize,
}

impl ClosureEstimate {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

/// Reduced words of length `≤ max_len` over `n` generators, by length then
/// letters.
fn reduced_words(n: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = (0..n).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut out = alloc::vec![Vec::new()];
    let mut layer: Vec<Vec<Letter>> = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() != Some(&l.inv()) {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn universe_size(n: usize, len: usize) -> u128 {
    let n = n as u128;
    let mut total: u128 = 1;
    let mut layer: u128 = 2 * n;
    for _ in 0..len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul((2 * n).saturating_sub(1));
    }
    total.saturating_mul(n)
}

struct Universe {
    elems: Vec<FreeRackElement>,
    index: HashMap<FreeRackElement, usize>,
}

impl Universe {
    fn get(&self, e: &FreeRackElement) -> Option<usize> {
        self.index.get(e).copied()
    }
}

fn evaluate(q: &FiniteQuandle, images: &[usize], w: &FreeRackElement) -> usize {
    w.word.letters().iter().fold(images[w.base], |v, l| if l.inverse { q.op_inv(v, images[l.gen]) } else { q.op(v, images[l.gen]) })
}

pub fn bounded_closure(p: &QuandlePresentation, depth: usize) -> Result<ClosureEstimate, FreeAlgError> {
    if depth > MAX_CLOSURE_DEPTH {
        return Err(FreeAlgError::DepthExceeded { depth, limit: MAX_CLOSURE_DEPTH });
    }
    let n = p.num_generators();
    let mut len = depth + 2;
    while universe_size(n, len) > UNIVERSE_LIMIT as u128 && len > depth {
        len -= 1;
    }
    if universe_size(n, len) > UNIVERSE_LIMIT as u128 {
        return Err(FreeAlgError::SizeOverflow { count: universe_size(n, len), limit: UNIVERSE_LIMIT });
    }
    let tails = reduced_words(n, len);
    let elems: Vec<FreeRackElement> =
        (0..n).flat_map(|b| tails.iter().map(move |t| FreeRackElement::new(b, FreeWord::reduce(t.iter().copied())))).collect();
    let index = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let uni = Universe { elems, index };
    let mut ds = DisjointSets::new(uni.elems.len());

    // idempotency: (a; a^{±1} w) ~ (a; w)
    for (i, e) in uni.elems.iter().enumerate() {
        if e.word.letters().first().is_some_and(|l| l.gen == e.base) {
            let rest = FreeRackElement::new(e.base, FreeWord::reduce(e.word.letters()[1..].iter().copied()));
            if let Some(j) = uni.get(&rest) {
                ds.union(i, j);
            }
        }
    }
    for (a, b) in &p.relations {
        if let (Some(i), Some(j)) = (uni.get(&a.flatten()), uni.get(&b.flatten())) {
            ds.union(i, j);
        }
    }
    let letters: Vec<Letter> = (0..n).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    loop {
        let mut changed = false;
        // right multiplication: e ~ r ⟹ e·l ~ r·l
        for i in 0..uni.elems.len() {
            let r = ds.find(i);
            if r == i {
                continue;
            }
            for &l in &letters {
                if let (Some(x), Some(y)) = (uni.get(&uni.elems[i].act(l)), uni.get(&uni.elems[r].act(l))) {
                    changed |= ds.union(x, y);
                }
            }
        }
        // operand substitution: q ~ r ⟹ e *^{±1} q ~ e *^{±1} r
        for i in 0..uni.elems.len() {
            let r = ds.find(i);
            let q = &uni.elems[i];
            if r == i || 2 * q.word.len() + 1 > len {
                continue;
            }
            let qr = &uni.elems[r];
            for inverse in [false, true] {
                let sq = FreeWord::reduce([Letter { gen: q.base, inverse }]).conjugate_by(&q.word);
                let sr = FreeWord::reduce([Letter { gen: qr.base, inverse }]).conjugate_by(&qr.word);
                for e in &uni.elems {
                    let x = FreeRackElement::new(e.base, e.word.mul(&sq));
                    let y = FreeRackElement::new(e.base, e.word.mul(&sr));
                    if let (Some(x), Some(y)) = (uni.get(&x), uni.get(&y)) {
                        changed |= ds.union(x, y);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let word_ids: Vec<usize> = (0..uni.elems.len()).filter(|&i| uni.elems[i].word.len() <= depth).collect();
    let words: Vec<FreeRackElement> = word_ids.iter().map(|&i| uni.elems[i].clone()).collect();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, &i) in word_ids.iter().enumerate() {
        let root = ds.find(i);
        let s = *slot.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[s].push(k);
    }

    let (lower, models_used) = if p.relations.is_empty() {
        let mut forms: Vec<_> = words.iter().map(fq_canonicalize).collect();
        forms.sort();
        forms.dedup();
        (forms.len(), 0)
    } else {
        separate_by_models(p, &words)
    };
    let upper = classes.len();
    debug_assert!(lower <= upper, "model separation exceeds the rewriting classes");
    Ok(ClosureEstimate { depth, words, classes, lower, upper, models_used })
}

/// Number of distinct value vectors of `words` over every assignment into
/// every quandle of order `≤ MODEL_ORDER` satisfying the relations.
fn separate_by_models(p: &QuandlePresentation, words: &[FreeRackElement]) -> (usize, usize) {
    let n = p.num_generators();
    let mut signatures: Vec<Vec<u8>> = alloc::vec![Vec::new(); words.len()];
    let mut used = 0;
    for order in 1..=MODEL_ORDER {
        let count = (order as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if count > ASSIGNMENT_LIMIT as u128 {
            continue;
        }
        let models = enumerate_quandles(order, &Filters::default()).unwrap_or_default();
        for q in &models {
            let mut images = alloc::vec![0usize; n];
            for code in 0..count as usize {
                let mut c = code;
                for img in images.iter_mut() {
                    *img = c % order;
                    c /= order;
                }
                if !p.satisfied_by(q, &images) {
                    continue;
                }
                used += 1;
                for (s, w) in signatures.iter_mut().zip(words) {
                    s.push(evaluate(q, &images, w) as u8);
                }
            }
        }
    }
    signatures.sort();
    signatures.dedup();
    (signatures.len(), used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{free_quandle_elements, QWord};
    use alloc::string::ToString;
    use alloc::vec;

    fn names(v: &[&str]) -> Vec<alloc::string::String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn free_quandle_on_two_generators() {
        let p = QuandlePresentation::new(names(&["x", "y"]), vec![]).unwrap();
        for d in 0..=2 {
            let est = bounded_closure(&p, d).unwrap();
            let expected = free_quandle_elements(2, d).unwrap().len();
            assert_eq!((est.lower, est.upper), (expected, expected), "depth {d}");
        }
    }

    #[test]
    fn redundant_idempotency() {
        let free = QuandlePresentation::new(names(&["x"]), vec![]).unwrap();
        let red = QuandlePresentation::new(names(&["x"]), vec![(QWord::op(QWord::Gen(0), QWord::Gen(0)), QWord::Gen(0))]).unwrap();
        for d in 0..=3 {
            let (a, b) = (bounded_closure(&free, d).unwrap(), bounded_closure(&red, d).unwrap());
            assert_eq!(a.exact(), Some(1));
            assert_eq!(b.exact(), Some(1));
        }
    }

    #[test]
    fn cs4_stabilizes_at_three() {
        let p = QuandlePresentation::parse(
            names(&["x", "y", "z"]),
            &[("(op x y)", "z"), ("(op x z)", "x"), ("(op z x)", "z"), ("(op z y)", "x"), ("(op y x)", "y"), ("(op y z)", "y")],
        )
        .unwrap();
        for d in 0..=2 {
            let est = bounded_closure(&p, d).unwrap();
            assert_eq!(est.exact(), Some(3), "depth {d}: {:?}", (est.lower, est.upper));
            assert!(est.models_used > 0);
        }
    }

    #[test]
    fn depth_limit() {
        let p = QuandlePresentation::new(names(&["x"]), vec![]).unwrap();
        assert_eq!(bounded_closure(&p, 5).unwrap_err(), FreeAlgError::DepthExceeded { depth: 5, limit: 4 });
    }
}
