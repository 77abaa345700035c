//! Finite groups stored as full multiplication tables.
//!
//! Element `identity()` is whatever the table says it is; every standard
//! constructor puts the identity at index 0. Products are read left to
//! right, so for the symmetric groups `a·b` means "apply `a`, then `b`".

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::perm::Permutation;
use crate::util::gcd;

/// Largest order any constructor accepts.
pub const MAX_GROUP_ORDER: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group order {order} exceeds the limit {limit}")]
    SizeOverflow { order: usize, limit: usize },
    #[error("empty multiplication table")]
    Empty,
    #[error("row {row} has {len} entries, expected a square table")]
    NotSquare { row: usize, len: usize },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("row or column {0} is not a permutation")]
    NotLatin(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("({0}·{1})·{2} ≠ {0}·({1}·{2})")]
    NotAssociative(usize, usize, usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("element {index} is out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
}

/// A finite group given by its Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u16>,
    identity: usize,
    inv: Vec<u16>,
    labels: Option<Vec<String>>,
}

impl core::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).finish_non_exhaustive()
    }
}

/// Named groups understood by [`FiniteGroup::standard`].
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GroupSpec {
    Cyclic(usize),
    /// Symmetries of a regular `k`-gon, order `2k`.
    Dihedral(usize),
    /// `ℤ_{d₁} × … × ℤ_{d_r}`.
    Abelian(Vec<usize>),
    Symmetric(usize),
    Alternating(usize),
    /// The class-2 model of [`make_heisenberg_model`].
    Heisenberg(usize, usize),
    Product(alloc::boxed::Box<GroupSpec>, alloc::boxed::Box<GroupSpec>),
}

impl GroupSpec {
    /// Parses `cyclic:6`, `dihedral:4`, `abelian:2,4`, `symmetric:3`, `alternating:4`,
    /// `heisenberg:2,4`, and products joined with ` x `.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::InvalidSpec(String::from(text));
        let parts: Vec<&str> = text.split(" x ").collect();
        if parts.len() > 1 {
            let mut it = parts.into_iter().map(Self::parse);
            let mut acc = it.next().ok_or_else(bad)??;
            for next in it {
                acc = GroupSpec::Product(acc.into(), next?.into());
            }
            return Ok(acc);
        }
        let (kind, args) = text.trim().split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        let one = |v: &[usize]| if v.len() == 1 { Ok(v[0]) } else { Err(bad()) };
        match kind.trim() {
            "cyclic" | "Z" => Ok(GroupSpec::Cyclic(one(&nums)?)),
            "dihedral" | "D" => Ok(GroupSpec::Dihedral(one(&nums)?)),
            "symmetric" | "S" => Ok(GroupSpec::Symmetric(one(&nums)?)),
            "alternating" | "A" => Ok(GroupSpec::Alternating(one(&nums)?)),
            "abelian" => Ok(GroupSpec::Abelian(nums)),
            "heisenberg" if nums.len() == 2 => Ok(GroupSpec::Heisenberg(nums[0], nums[1])),
            _ => Err(bad()),
        }
    }

    /// Inverse of [`GroupSpec::parse`].
    pub fn to_text(&self) -> String {
        match self {
            GroupSpec::Cyclic(k) => format!("cyclic:{k}"),
            GroupSpec::Dihedral(k) => format!("dihedral:{k}"),
            GroupSpec::Symmetric(k) => format!("symmetric:{k}"),
            GroupSpec::Alternating(k) => format!("alternating:{k}"),
            GroupSpec::Abelian(ds) => {
                let parts: Vec<String> = ds.iter().map(|d| format!("{d}")).collect();
                format!("abelian:{}", parts.join(","))
            }
            GroupSpec::Heisenberg(n, m) => format!("heisenberg:{n},{m}"),
            GroupSpec::Product(a, b) => format!("{} x {}", a.to_text(), b.to_text()),
        }
    }
}

impl FiniteGroup {
    /// Validates a multiplication table: identity, latin rows and columns,
    /// two-sided inverses, and associativity.
    ///
    /// Associativity uses Light's test on a greedily chosen generating set,
    /// which is exhaustive: the elements `a` with `x(ay) = (xa)y` for all
    /// `x, y` are closed under products.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::SizeOverflow { order: n, limit: MAX_GROUP_ORDER });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: r, len: row.len() });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { row: r, col: c, value: v });
                }
                mul.push(v as u16);
            }
        }
        Self::from_flat(n, mul)
    }

    pub(crate) fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::SizeOverflow { order: n, limit: MAX_GROUP_ORDER });
        }
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(f(a, b) as u16);
            }
        }
        Self::from_flat(n, mul)
    }

    fn from_flat(n: usize, mul: Vec<u16>) -> Result<Self, GroupError> {
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut seen = alloc::vec![0u32; n];
        for a in 0..n {
            let stamp = 2 * a as u32 + 1;
            for b in 0..n {
                let v = at(a, b);
                if seen[v] == stamp {
                    return Err(GroupError::NotLatin(a));
                }
                seen[v] = stamp;
            }
            for b in 0..n {
                let v = at(b, a);
                if seen[v] == stamp + 1 {
                    return Err(GroupError::NotLatin(a));
                }
                seen[v] = stamp + 1;
            }
        }
        let mut inv = alloc::vec![0u16; n];
        for a in 0..n {
            let b = (0..n).find(|&b| at(a, b) == identity).ok_or(GroupError::NoInverse(a))?;
            if at(b, a) != identity {
                return Err(GroupError::NoInverse(a));
            }
            inv[a] = b as u16;
        }
        let g = Self { order: n, mul, identity, inv, labels: None };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order;
        for s in self.greedy_generators() {
            for x in 0..n {
                let xs = self.mul(x, s);
                for y in 0..n {
                    if self.mul(x, self.mul(s, y)) != self.mul(xs, y) {
                        return Err(GroupError::NotAssociative(x, s, y));
                    }
                }
            }
        }
        Ok(())
    }

    /// Generators whose left-normed products cover the table.
    fn greedy_generators(&self) -> Vec<usize> {
        let n = self.order;
        let mut gens: Vec<usize> = Vec::new();
        let mut reached = alloc::vec![false; n];
        reached[self.identity] = true;
        let mut members = alloc::vec![self.identity];
        for cand in 0..n {
            if reached[cand] {
                continue;
            }
            gens.push(cand);
            let mut queue: Vec<usize> = members.iter().map(|&c| self.mul(c, cand)).collect();
            queue.push(cand);
            while let Some(x) = queue.pop() {
                if reached[x] {
                    continue;
                }
                reached[x] = true;
                members.push(x);
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !reached[y] {
                        queue.push(y);
                    }
                }
            }
        }
        gens
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GroupError> {
        if labels.len() != self.order {
            return Err(GroupError::LabelCount { expected: self.order, got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Builds a standard group.
    pub fn standard(spec: &GroupSpec) -> Result<Self, GroupError> {
        match spec {
            GroupSpec::Cyclic(k) => Self::cyclic(*k),
            GroupSpec::Dihedral(k) => Self::dihedral(*k),
            GroupSpec::Abelian(ds) => Self::abelian(ds),
            GroupSpec::Symmetric(k) => Self::symmetric(*k),
            GroupSpec::Alternating(k) => Self::alternating(*k),
            GroupSpec::Heisenberg(n, m) => Ok(make_heisenberg_model(*n, *m)?.group),
            GroupSpec::Product(a, b) => Self::standard(a)?.direct_product(&Self::standard(b)?),
        }
    }

    pub fn cyclic(k: usize) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::InvalidSpec(String::from("cyclic:0")));
        }
        let g = Self::from_fn(k, |a, b| (a + b) % k)?;
        let labels = (0..k).map(|i| format!("{i}")).collect();
        g.with_labels(labels)
    }

    /// Elements `0..k` are the rotations `r^i`, elements `k..2k` are the
    /// reflections `s·r^i`, and `s r s = r⁻¹`.
    pub fn dihedral(k: usize) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::InvalidSpec(String::from("dihedral:0")));
        }
        let split = |x: usize| (x / k, x % k);
        let g = Self::from_fn(2 * k, |x, y| {
            let (a, i) = split(x);
            let (b, j) = split(y);
            // (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
            let rot = if b == 0 { (i + j) % k } else { (k - i + j) % k };
            ((a + b) % 2) * k + rot
        })?;
        let labels = (0..2 * k)
            .map(|x| {
                let (a, i) = split(x);
                match (a, i) {
                    (0, 0) => String::from("e"),
                    (0, i) => format!("r^{i}"),
                    (_, 0) => String::from("s"),
                    (_, i) => format!("s r^{i}"),
                }
            })
            .collect();
        g.with_labels(labels)
    }

    /// `ℤ_{d₁} × … × ℤ_{d_r}` with mixed-radix indexing, last factor fastest.
    pub fn abelian(factors: &[usize]) -> Result<Self, GroupError> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(GroupError::InvalidSpec(format!("abelian:{factors:?}")));
        }
        let order = factors.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
        let order = match order {
            Some(o) if o <= MAX_GROUP_ORDER => o,
            _ => return Err(GroupError::SizeOverflow { order: usize::MAX, limit: MAX_GROUP_ORDER }),
        };
        let digits = |mut x: usize| {
            let mut out = alloc::vec![0; factors.len()];
            for (slot, &d) in out.iter_mut().zip(factors).rev() {
                *slot = x % d;
                x /= d;
            }
            out
        };
        let g = Self::from_fn(order, |x, y| {
            let (dx, dy) = (digits(x), digits(y));
            factors.iter().enumerate().fold(0, |acc, (i, &d)| acc * d + (dx[i] + dy[i]) % d)
        })?;
        let labels = (0..order)
            .map(|x| {
                let parts: Vec<String> = digits(x).iter().map(|v| format!("{v}")).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        g.with_labels(labels)
    }

    /// `S_k` for `k ≤ 5`. Elements are the permutations of `0..k` in
    /// lexicographic order of their image lists; labels are 1-based cycle
    /// notation such as `(1 2 3)`.
    pub fn symmetric(k: usize) -> Result<Self, GroupError> {
        if k == 0 || k > 5 {
            return Err(GroupError::InvalidSpec(format!("symmetric:{k}")));
        }
        let perms = lex_permutations(k);
        let index = |p: &Permutation| perms.binary_search(p).expect("closed under products");
        let g = Self::from_fn(perms.len(), |a, b| index(&perms[a].then(&perms[b])))?;
        let labels = perms.iter().map(one_based_cycles).collect();
        g.with_labels(labels)
    }

    /// `A_k` for `k ≤ 5`: the even permutations, ordered and labelled as in
    /// [`FiniteGroup::symmetric`].
    pub fn alternating(k: usize) -> Result<Self, GroupError> {
        if k == 0 || k > 5 {
            return Err(GroupError::InvalidSpec(format!("alternating:{k}")));
        }
        let perms: Vec<Permutation> = lex_permutations(k)
            .into_iter()
            .filter(|p| p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0)
            .collect();
        let index = |p: &Permutation| perms.binary_search(p).expect("closed under products");
        let g = Self::from_fn(perms.len(), |a, b| index(&perms[a].then(&perms[b])))?;
        let labels = perms.iter().map(one_based_cycles).collect();
        g.with_labels(labels)
    }

    /// `G × H` with index `g·|H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<Self, GroupError> {
        let order = self.order.checked_mul(other.order).unwrap_or(usize::MAX);
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::SizeOverflow { order, limit: MAX_GROUP_ORDER });
        }
        let m = other.order;
        let g = Self::from_fn(order, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })?;
        let labels = (0..order).map(|x| format!("({}, {})", self.label(x / m), other.label(x % m))).collect();
        g.with_labels(labels)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("{a}"),
        }
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn check_element(&self, a: usize) -> Result<usize, GroupError> {
        if a < self.order {
            Ok(a)
        } else {
            Err(GroupError::ElementOutOfRange { index: a, order: self.order })
        }
    }

    /// Product of a sequence, read left to right.
    pub fn product(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let (mut acc, mut sq) = (self.identity, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.product([self.inv(a), self.inv(b), a, b])
    }

    #[inline]
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `C_G(a)`, ascending.
    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.order).filter(|&x| self.commutes(x, a)).collect()
    }

    /// The class `{g⁻¹ a g}`, ascending.
    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let mut hit = alloc::vec![false; self.order];
        for g in 0..self.order {
            hit[self.conjugate(a, g)] = true;
        }
        (0..self.order).filter(|&x| hit[x]).collect()
    }

    /// Conjugacy classes ordered by their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut done = alloc::vec![false; self.order];
        let mut out = Vec::new();
        for a in 0..self.order {
            if done[a] {
                continue;
            }
            let class = self.conjugacy_class(a);
            for &x in &class {
                done[x] = true;
            }
            out.push(class);
        }
        out
    }

    /// The subgroup generated by `gens`, ascending.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut hit = alloc::vec![false; self.order];
        hit[self.identity] = true;
        let mut stack = alloc::vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !hit[y] {
                    hit[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| hit[x]).collect()
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.generated_subgroup(gens).len() == self.order
    }
}

fn lex_permutations(k: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        let k = used.len();
        if prefix.len() == k {
            out.push(Permutation::new(prefix.clone()).expect("built as a bijection"));
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut alloc::vec![false; k], &mut out);
    out
}

fn one_based_cycles(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return String::from("()");
    }
    let mut s = String::new();
    for c in cycles {
        let parts: Vec<String> = c.iter().map(|x| format!("{}", x + 1)).collect();
        s.push('(');
        s.push_str(&parts.join(" "));
        s.push(')');
    }
    s
}

/// A finite class-2 nilpotent group with distinguished generators.
#[derive(Clone, Debug)]
pub struct HeisenbergModel {
    pub group: FiniteGroup,
    pub x0: usize,
    pub y0: usize,
    /// Modulus of the two outer coordinates.
    pub modulus: usize,
    /// Order of the central coordinate.
    pub center: usize,
}

impl HeisenbergModel {
    /// `[x₀, y₀]`.
    pub fn commutator(&self) -> usize {
        self.group.commutator(self.x0, self.y0)
    }
}

/// Finite model of `⟨x₀, y₀ | [x₀,[x₀,y₀]], [y₀,[x₀,y₀]], [x₀,y₀]^n, [x₀,y₀]^m⟩`.
///
/// Triples `(p, q, c)` with `p, q` mod `n·m` and `c` mod `gcd(n, m)`,
/// multiplied by `(p,q,c)(p′,q′,c′) = (p+p′, q+q′, c+c′+q·p′)`. The order is
/// `(nm)²·gcd(n,m)`.
pub fn make_heisenberg_model(n: usize, m: usize) -> Result<HeisenbergModel, GroupError> {
    if n == 0 || m == 0 {
        return Err(GroupError::InvalidSpec(format!("heisenberg:{n},{m}")));
    }
    heisenberg_group(n * m, gcd(n, m))
}

/// The same cocycle construction with an arbitrary modulus `p` and central
/// order `d`; requires `d | p`.
pub fn heisenberg_group(p: usize, d: usize) -> Result<HeisenbergModel, GroupError> {
    if p == 0 || d == 0 || p % d != 0 {
        return Err(GroupError::InvalidSpec(format!("heisenberg modulus {p}, center {d}")));
    }
    let order = p
        .checked_mul(p)
        .and_then(|x| x.checked_mul(d))
        .filter(|&o| o <= MAX_GROUP_ORDER)
        .ok_or(GroupError::SizeOverflow { order: p.saturating_mul(p).saturating_mul(d), limit: MAX_GROUP_ORDER })?;
    let split = |x: usize| (x / (p * d), (x / d) % p, x % d);
    let join = |a: usize, b: usize, c: usize| (a * p + b) * d + c;
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b, c) = split(x);
        for y in 0..order {
            let (a2, b2, c2) = split(y);
            mul.push(join((a + a2) % p, (b + b2) % p, (c + c2 + b * a2) % d) as u16);
        }
    }
    let group = FiniteGroup::from_flat(order, mul)?;
    let labels = (0..order)
        .map(|x| {
            let (a, b, c) = split(x);
            format!("({a},{b},{c})")
        })
        .collect();
    let group = group.with_labels(labels)?;
    Ok(HeisenbergModel { group, x0: join(1 % p, 0, 0), y0: join(0, 1 % p, 0), modulus: p, center: d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3).unwrap()
    }

    fn el(g: &FiniteGroup, l: &str) -> usize {
        g.element_by_label(l).unwrap()
    }

    #[test]
    fn alternating_groups() {
        let a4 = FiniteGroup::alternating(4).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(!a4.is_abelian());
        assert_eq!(a4.conjugacy_classes().len(), 4);
        assert_eq!(FiniteGroup::alternating(5).unwrap().order(), 60);
        assert!(FiniteGroup::alternating(6).is_err());
    }

    #[test]
    fn standard_orders() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        assert!(!d3.is_abelian());
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroup::abelian(&[2, 3]).unwrap().order(), 6);
        assert!(FiniteGroup::symmetric(6).is_err());
        assert!(FiniteGroup::cyclic(0).is_err());
    }

    #[test]
    fn dihedral_convention() {
        let k = 5;
        let d = FiniteGroup::dihedral(k).unwrap();
        let (r, s) = (1, k);
        assert_eq!(d.mul(d.mul(s, r), s), d.inv(r));
        for i in 0..k {
            assert_eq!(d.mul(s, d.pow(r, i as i64)), k + i);
            assert_eq!(d.element_order(k + i), 2);
        }
    }

    #[test]
    fn centralizers() {
        let g = s3();
        let t = el(&g, "(1 2)");
        assert_eq!(g.centralizer(t), alloc::vec![g.identity(), t]);
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert!((0..6).all(|a| c6.centralizer(a).len() == 6));
        // r² in the order-8 dihedral group is central (brute-force scan)
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.centralizer(2).len(), 8);
        assert_eq!(d4.centralizer(1).len(), 4);
    }

    #[test]
    fn class_sizes() {
        let sizes = |g: &FiniteGroup| {
            let mut v: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(sizes(&s3()), alloc::vec![1, 2, 3]);
        assert_eq!(sizes(&FiniteGroup::dihedral(3).unwrap()), alloc::vec![1, 2, 3]);
        assert_eq!(sizes(&FiniteGroup::abelian(&[2, 2]).unwrap()), alloc::vec![1, 1, 1, 1]);
        let g = s3();
        assert_eq!(g.conjugacy_classes()[0], alloc::vec![g.identity()]);
    }

    #[test]
    fn conjugation_in_s3() {
        let g = s3();
        assert_eq!(g.conjugate(el(&g, "(1 2)"), el(&g, "(1 2 3)")), el(&g, "(2 3)"));
        for x in 0..6 {
            for h in 0..6 {
                assert_eq!(g.conjugate(g.conjugate(x, h), g.inv(h)), x);
            }
            assert_eq!(g.conjugate(g.identity(), x), g.identity());
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(FiniteGroup::from_table(&[]), Err(GroupError::Empty));
        assert!(matches!(FiniteGroup::from_table(&[alloc::vec![0, 1], alloc::vec![1]]), Err(GroupError::NotSquare { .. })));
        assert_eq!(FiniteGroup::from_table(&[alloc::vec![1, 0], alloc::vec![0, 0]]), Err(GroupError::NoIdentity));
        // a latin square with identity that is not associative (order 5 loop)
        let loop5 = [
            alloc::vec![0, 1, 2, 3, 4],
            alloc::vec![1, 0, 3, 4, 2],
            alloc::vec![2, 4, 0, 1, 3],
            alloc::vec![3, 2, 4, 0, 1],
            alloc::vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&loop5), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn heisenberg_models() {
        let h = make_heisenberg_model(2, 3).unwrap();
        assert_eq!(h.group.order(), 36);
        assert!(h.group.is_abelian());
        let h = make_heisenberg_model(2, 4).unwrap();
        assert_eq!(h.group.order(), 128);
        assert!(!h.group.is_abelian());
        let c = h.commutator();
        assert_eq!(h.group.element_order(c), 2);
        assert!(h.group.commutes(c, h.x0) && h.group.commutes(c, h.y0));
        assert!(h.group.generates(&[h.x0, h.y0]));
        let h = make_heisenberg_model(1, 1).unwrap();
        assert_eq!(h.group.order(), 1);
        assert_eq!(h.x0, h.y0);
    }

    #[test]
    fn spec_text_round_trip() {
        for t in ["cyclic:6", "dihedral:4", "abelian:2,4", "symmetric:3", "heisenberg:2,4", "cyclic:2 x dihedral:3"] {
            assert_eq!(GroupSpec::parse(t).unwrap().to_text(), t);
        }
        assert!(GroupSpec::parse("klein").is_err());
        let g = FiniteGroup::standard(&GroupSpec::parse("cyclic:2 x dihedral:3").unwrap()).unwrap();
        assert_eq!(g.order(), 12);
    }
}
