//! Exact integer matrices and their Smith normal form.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense `rows × cols` matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: alloc::vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// `None` if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Option<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Some(Self { rows: rows.len(), cols, data })
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.data[i * cols + i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `None` on a shape mismatch.
    pub fn mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * other.get(k, j);
                    out.data[i * other.cols + j] += v;
                }
            }
        }
        Some(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination; `None` if not square.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return Some(BigInt::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Some(sign * a.get(n - 1, n - 1))
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_some_and(|d| d.abs().is_one())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = k * self.get(src, j);
            self.data[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += k · col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = k * self.get(i, src);
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// The `min(rows, cols)` diagonal entries of `D`.
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn d(&self) -> IntMatrix {
        IntMatrix::diagonal(self.u.rows(), self.v.cols(), &self.diagonal)
    }

    /// Recomputes `U·M·V` and compares it with `D`.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let prod = self.u.mul(m).and_then(|um| um.mul(&self.v));
        prod.as_ref() == Some(&self.d())
            && self.u.is_unimodular()
            && self.v.is_unimodular()
            && self.diagonal.windows(2).all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])))
    }
}

/// Smallest non-zero `|a[i][j]|` with `i, j ≥ t`.
fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_pivot(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                // a remainder is now smaller than the pivot
                let (pi, pj) = min_pivot_in_cross(&a, t);
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(a.get(t, t))));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let diagonal = (0..r.min(c)).map(|i| a.get(i, i).clone()).collect();
    SmithForm { diagonal, u, v }
}

/// Smallest non-zero entry in row `t` or column `t` from `(t, t)` on.
fn min_pivot_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let cands = (t..a.rows()).map(|i| (i, t)).chain((t + 1..a.cols()).map(|j| (t, j)));
    cands.filter(|&(i, j)| !a.get(i, j).is_zero()).min_by_key(|&(i, j)| a.get(i, j).abs()).expect("non-zero remainder")
}

/// Abelian group `ℤ^free_rank ⊕ ⨁ ℤ/tᵢ`, with `t₁ | t₂ | …` and every `tᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Invariants of `ℤ^cols / rowspace(m)`.
pub fn cokernel_invariants(m: &IntMatrix) -> AbelianInvariants {
    let snf = smith_normal_form(m);
    let nonzero = snf.diagonal.iter().filter(|d| !d.is_zero()).count();
    AbelianInvariants {
        free_rank: m.cols() - nonzero,
        torsion: snf.diagonal.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
    }
}
