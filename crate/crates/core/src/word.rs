//! Freely reduced words in a free group.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::fingroup::FiniteGroup;

/// A generator or its inverse. Ordered by generator, positive first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(gen: usize) -> Self {
        Self { gen, inverse: false }
    }

    pub const fn neg(gen: usize) -> Self {
        Self { gen, inverse: true }
    }

    #[inline]
    pub fn inv(self) -> Self {
        Self { gen: self.gen, inverse: !self.inverse }
    }

    /// `+1` or `-1`.
    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word: no letter is adjacent to its inverse.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn gen(g: usize) -> Self {
        Self { letters: alloc::vec![Letter::pos(g)] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    /// From `(generator, ±1)` pairs; other exponents are expanded.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        Self::reduce(powers.iter().flat_map(|&(g, e)| {
            let l = if e < 0 { Letter::neg(g) } else { Letter::pos(g) };
            core::iter::repeat(l).take(e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        Self::reduce(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        Self { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `g⁻¹ w g`.
    pub fn conjugate_by(&self, g: &FreeWord) -> FreeWord {
        g.inverse().mul(self).mul(g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Largest generator index used, plus one.
    pub fn generator_bound(&self) -> usize {
        self.letters.iter().map(|l| l.gen + 1).max().unwrap_or(0)
    }

    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut v = alloc::vec![0i64; num_generators];
        for l in &self.letters {
            v[l.gen] += l.exponent();
        }
        v
    }

    /// Letters as 1-based signed indices: `k` for generator `k - 1`, `-k`
    /// for its inverse.
    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| (l.gen as i64 + 1) * l.exponent()).collect()
    }

    /// Inverse of [`to_signed`](Self::to_signed); `None` if an entry is 0.
    pub fn from_signed(letters: &[i64]) -> Option<FreeWord> {
        letters
            .iter()
            .map(|&k| match k {
                0 => None,
                k if k > 0 => Some(Letter::pos(k as usize - 1)),
                k => Some(Letter::neg(k.unsigned_abs() as usize - 1)),
            })
            .collect::<Option<Vec<_>>>()
            .map(Self::reduce)
    }

    /// Renames generator `g` to `g + offset`.
    pub fn shifted(&self, offset: usize) -> FreeWord {
        Self { letters: self.letters.iter().map(|l| Letter { gen: l.gen + offset, inverse: l.inverse }).collect() }
    }

    /// Drops every leading `g^{±1}`.
    pub fn strip_leading(&self, g: usize) -> FreeWord {
        let k = self.letters.iter().take_while(|l| l.gen == g).count();
        Self { letters: self.letters[k..].to_vec() }
    }

    /// Evaluates in `group` with `images[g]` for generator `g`.
    pub fn eval(&self, group: &FiniteGroup, images: &[usize]) -> usize {
        self.letters.iter().fold(group.identity(), |acc, l| {
            let x = images[l.gen];
            group.mul(acc, if l.inverse { group.inv(x) } else { x })
        })
    }

    /// Renders with the given generator names, e.g. `x y^-1`.
    pub fn render(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.letters.is_empty() {
            return String::from("1");
        }
        let mut s = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let run = self.letters[i..].iter().take_while(|&&m| m == l).count();
            if !s.is_empty() {
                s.push(' ');
            }
            s.push_str(&names(l.gen));
            let e = run as i64 * l.exponent();
            if e != 1 {
                s.push_str(&alloc::format!("^{e}"));
            }
            i += run;
        }
        s
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|g| alloc::format!("a{g}")))
    }
}

impl FromIterator<Letter> for FreeWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Self::reduce(iter)
    }
}
