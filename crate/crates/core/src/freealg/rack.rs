use alloc::vec::Vec;

use super::{FreeAlgError, MAX_ENUMERATION};
use crate::word::{FreeWord, Letter};

/// `(a, u)` in `FR(X) = X × F(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FreeRackElement {
    pub base: usize,
    pub word: FreeWord,
}

impl FreeRackElement {
    pub fn new(base: usize, word: FreeWord) -> Self {
        Self { base, word }
    }

    pub fn generator(a: usize) -> Self {
        Self { base: a, word: FreeWord::empty() }
    }

    /// Applies `S_b^{±1}` for the generator `b`: appends one letter.
    pub fn act(&self, l: Letter) -> Self {
        Self { base: self.base, word: self.word.mul(&FreeWord::reduce([l])) }
    }
}

fn rack_op(p: &FreeRackElement, q: &FreeRackElement, inverse: bool) -> FreeRackElement {
    let b = FreeWord::reduce([Letter { gen: q.base, inverse }]);
    FreeRackElement { base: p.base, word: p.word.mul(&b.conjugate_by(&q.word)) }
}

/// `(a, u) * (b, v) = (a, u v⁻¹ b v)`.
pub fn fr_op(p: &FreeRackElement, q: &FreeRackElement) -> FreeRackElement {
    rack_op(p, q, false)
}

/// `(a, u) *⁻¹ (b, v) = (a, u v⁻¹ b⁻¹ v)`.
pub fn fr_op_inv(p: &FreeRackElement, q: &FreeRackElement) -> FreeRackElement {
    rack_op(p, q, true)
}

/// An element of `FQ(X)`: the word never starts with `base^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FreeQuandleElement {
    base: usize,
    word: FreeWord,
}

impl FreeQuandleElement {
    pub fn generator(a: usize) -> Self {
        Self { base: a, word: FreeWord::empty() }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn word(&self) -> &FreeWord {
        &self.word
    }

    pub fn to_rack(&self) -> FreeRackElement {
        FreeRackElement { base: self.base, word: self.word.clone() }
    }
}

/// Strips leading powers of the base generator.
pub fn fq_canonicalize(p: &FreeRackElement) -> FreeQuandleElement {
    FreeQuandleElement { base: p.base, word: p.word.strip_leading(p.base) }
}

pub fn fq_op(p: &FreeQuandleElement, q: &FreeQuandleElement) -> FreeQuandleElement {
    fq_canonicalize(&fr_op(&p.to_rack(), &q.to_rack()))
}

pub fn fq_op_inv(p: &FreeQuandleElement, q: &FreeQuandleElement) -> FreeQuandleElement {
    fq_canonicalize(&fr_op_inv(&p.to_rack(), &q.to_rack()))
}

/// Equality in `FQ(X)` of two free rack elements.
pub fn fq_equal(p: &FreeRackElement, q: &FreeRackElement) -> bool {
    fq_canonicalize(p) == fq_canonicalize(q)
}

/// Every element of `FQ(X)`, `|X| = num_generators`, whose word has at most
/// `max_word_length` letters. Ordered by base, then length, then letters
/// (generator index first, positive before negative).
pub fn free_quandle_elements(num_generators: usize, max_word_length: usize) -> Result<Vec<FreeQuandleElement>, FreeAlgError> {
    let n = num_generators as u128;
    let mut per_base: u128 = 1;
    if n >= 2 {
        let mut layer: u128 = 2 * (n - 1);
        for _ in 0..max_word_length {
            per_base = per_base.saturating_add(layer);
            layer = layer.saturating_mul(2 * n - 1);
        }
    }
    let total = per_base.saturating_mul(n);
    if total > MAX_ENUMERATION as u128 {
        return Err(FreeAlgError::SizeOverflow { count: total, limit: MAX_ENUMERATION });
    }
    let letters: Vec<Letter> = (0..num_generators).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut out = Vec::with_capacity(total as usize);
    for a in 0..num_generators {
        let mut layer = alloc::vec![Vec::<Letter>::new()];
        for len in 0..=max_word_length {
            if len > 0 {
                let mut next = Vec::new();
                for w in &layer {
                    for &l in &letters {
                        let ok = match w.last() {
                            None => l.gen != a,
                            Some(&prev) => l != prev.inv(),
                        };
                        if ok {
                            let mut w2 = w.clone();
                            w2.push(l);
                            next.push(w2);
                        }
                    }
                }
                layer = next;
            }
            out.extend(layer.iter().map(|w| FreeQuandleElement { base: a, word: FreeWord::reduce(w.iter().copied()) }));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: usize = 0;
    const Y: usize = 1;

    fn w(p: &[(usize, i64)]) -> FreeWord {
        FreeWord::from_powers(p)
    }

    #[test]
    fn rack_formulas() {
        let (x, y) = (FreeRackElement::generator(X), FreeRackElement::generator(Y));
        assert_eq!(fr_op(&x, &y), FreeRackElement::new(X, w(&[(Y, 1)])));
        assert_eq!(fr_op(&x, &x), FreeRackElement::new(X, w(&[(X, 1)])));
        let xy = FreeRackElement::new(X, w(&[(Y, 1)]));
        assert_eq!(fr_op_inv(&xy, &y), x);
        assert_eq!(fr_op_inv(&fr_op(&xy, &xy), &xy), xy);
    }

    #[test]
    fn canonical_forms() {
        let p = FreeRackElement::new(X, w(&[(X, 2), (Y, 1)]));
        assert_eq!(fq_canonicalize(&p).word(), &w(&[(Y, 1)]));
        assert!(fq_canonicalize(&FreeRackElement::new(X, w(&[(X, -1)]))).word().is_empty());
        let x = FreeQuandleElement::generator(X);
        assert_eq!(fq_op(&x, &x), x);
        assert!(fq_equal(&p, &FreeRackElement::new(X, w(&[(X, -3), (Y, 1)]))));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(free_quandle_elements(2, 0).unwrap().len(), 2);
        assert_eq!(free_quandle_elements(2, 1).unwrap().len(), 6);
        assert_eq!(free_quandle_elements(2, 2).unwrap().len(), 18);
        assert_eq!(free_quandle_elements(1, 5).unwrap().len(), 1);
        assert_eq!(free_quandle_elements(3, 1).unwrap().len(), 3 * 5);
        assert!(free_quandle_elements(4, 12).is_err());
        let six = free_quandle_elements(2, 1).unwrap();
        assert_eq!(six[1].word(), &w(&[(Y, 1)]));
        assert_eq!(six[2].word(), &w(&[(Y, -1)]));
    }
}
