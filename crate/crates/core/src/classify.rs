//! Small quandles up to isomorphism, recognition of `U(n, m)`, and a scan
//! of two-orbit quandles for enveloping groups other than `ℤ²`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::constructions::{u_quandle, ConstructionError};
use crate::envelope::{abelianization, presentation_of, search_conj_homs, EnvelopeError};
use crate::fingroup::{heisenberg_group, FiniteGroup, GroupError};
use crate::quandle::{FiniteQuandle, IsoWitness, QuandleError, DEFAULT_SEARCH_BUDGET};
use crate::snf::AbelianInvariants;
use crate::util::gcd;

/// Unfiltered enumeration goes up to this order.
pub const ENUMERATION_LIMIT: usize = 6;
/// Filtered enumeration goes up to this order.
pub const FILTERED_ENUMERATION_LIMIT: usize = 8;
/// Node budget of the table search.
pub const ENUMERATION_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("order {order} is over the limit {limit}")]
    OrderLimitExceeded { order: usize, limit: usize },
    #[error("search budget of {budget} nodes exhausted")]
    SearchLimitExceeded { budget: u64 },
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Filters {
    pub orbit_count: Option<usize>,
    pub connected: Option<bool>,
}

impl Filters {
    fn accepts(&self, q: &FiniteQuandle) -> bool {
        let orbits = q.orbits().len();
        self.orbit_count.is_none_or(|k| k == orbits) && self.connected.is_none_or(|c| c == (orbits == 1))
    }

    fn is_empty(&self) -> bool {
        self.orbit_count.is_none() && self.connected.is_none()
    }
}

const UNSET: u8 = u8::MAX;

/// Column search: `cols[j]` is the permutation `S_j` as an image list.
struct TableSearch {
    n: usize,
    cols: Vec<Vec<u8>>,
    nodes: u64,
    budget: u64,
}

impl TableSearch {
    fn compose_conj(&self, z: usize, y: usize) -> Vec<u8> {
        // S_z S_y S_z⁻¹ as maps: x ↦ S_z(S_y(S_z⁻¹(x)))
        let (sz, sy) = (&self.cols[z], &self.cols[y]);
        let mut inv = alloc::vec![0u8; self.n];
        for (x, &v) in sz.iter().enumerate() {
            inv[v as usize] = x as u8;
        }
        (0..self.n).map(|x| sz[sy[inv[x] as usize] as usize]).collect()
    }

    /// Forces `S_{S_z(y)} = S_z S_y S_z⁻¹` until stable, pushing the
    /// columns it sets onto `trail`. `false` on a contradiction.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for z in 0..self.n {
                if self.cols[z][0] == UNSET {
                    continue;
                }
                for y in 0..self.n {
                    if self.cols[y][0] == UNSET {
                        continue;
                    }
                    let w = self.cols[z][y] as usize;
                    let want = self.compose_conj(z, y);
                    if self.cols[w][0] == UNSET {
                        if want[w] as usize != w {
                            return false;
                        }
                        self.cols[w] = want;
                        trail.push(w);
                        changed = true;
                    } else if self.cols[w] != want {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, out: &mut impl FnMut(&[Vec<u8>])) -> Result<(), ClassifyError> {
        let Some(j) = (0..self.n).find(|&j| self.cols[j][0] == UNSET) else {
            out(&self.cols);
            return Ok(());
        };
        let others: Vec<u8> = (0..self.n as u8).filter(|&x| x as usize != j).collect();
        let mut perm = others.clone();
        loop {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(ClassifyError::SearchLimitExceeded { budget: self.budget });
            }
            let mut col = alloc::vec![0u8; self.n];
            col[j] = j as u8;
            for (k, &x) in others.iter().enumerate() {
                col[x as usize] = perm[k];
            }
            self.cols[j] = col;
            let mut trail = alloc::vec![j];
            if self.propagate(&mut trail) {
                self.run(out)?;
            }
            for &t in &trail {
                self.cols[t] = alloc::vec![UNSET; self.n];
            }
            if !next_permutation(&mut perm) {
                return Ok(());
            }
        }
    }
}

/// Lexicographic successor; `false` after the last permutation.
fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("a larger element exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Isomorphism invariant used to bucket tables before the iso search.
fn invariant_key(q: &FiniteQuandle) -> Vec<(usize, Vec<usize>, usize)> {
    let orbit_index = q.orbit_index();
    let mut sizes = alloc::vec![0usize; q.order()];
    for &k in &orbit_index {
        sizes[k] += 1;
    }
    let mut key: Vec<_> = (0..q.order())
        .map(|x| {
            let fixers = (0..q.order()).filter(|&y| q.op(x, y) == x).count();
            (sizes[orbit_index[x]], q.inner_symmetry(x).cycle_type(), fixers)
        })
        .collect();
    key.sort();
    key
}

/// Quandles of the given order up to isomorphism, in discovery order: the
/// first table found in each class is its representative.
pub fn enumerate_quandles(order: usize, filters: &Filters) -> Result<Vec<FiniteQuandle>, ClassifyError> {
    let limit = if filters.is_empty() { ENUMERATION_LIMIT } else { FILTERED_ENUMERATION_LIMIT };
    if order > limit {
        return Err(ClassifyError::OrderLimitExceeded { order, limit });
    }
    if order == 0 {
        return Ok(Vec::new());
    }
    let mut search = TableSearch { n: order, cols: alloc::vec![alloc::vec![UNSET; order]; order], nodes: 0, budget: ENUMERATION_BUDGET };
    let mut reps: Vec<FiniteQuandle> = Vec::new();
    let mut buckets: HashMap<Vec<(usize, Vec<usize>, usize)>, Vec<usize>> = HashMap::new();
    let mut failure: Option<ClassifyError> = None;
    search.run(&mut |cols: &[Vec<u8>]| {
        if failure.is_some() {
            return;
        }
        let q = match FiniteQuandle::from_fn(order, |i, j| cols[j][i] as usize) {
            Ok(q) => q,
            Err(e) => {
                failure = Some(e.into());
                return;
            }
        };
        if !filters.accepts(&q) {
            return;
        }
        let bucket = buckets.entry(invariant_key(&q)).or_default();
        for &k in bucket.iter() {
            match reps[k].is_isomorphic(&q) {
                Ok(Some(_)) => return,
                Ok(None) => {}
                Err(e) => {
                    failure = Some(e.into());
                    return;
                }
            }
        }
        bucket.push(reps.len());
        reps.push(q);
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(reps),
    }
}

/// `Q ≅ U(n, m)` with `n ≤ m`, and an isomorphism `Q → U(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UDetection {
    pub n: usize,
    pub m: usize,
    pub witness: IsoWitness,
}

/// Recognizes `U(n, m)`: two orbits, each a trivial subquandle, each
/// orbit acting on the other by one full cycle. Confirmed by an explicit
/// isomorphism.
pub fn detect_u(q: &FiniteQuandle) -> Result<Option<UDetection>, ClassifyError> {
    let orbits = q.orbits();
    if orbits.len() != 2 {
        return Ok(None);
    }
    for (own, other) in [(&orbits[0], &orbits[1]), (&orbits[1], &orbits[0])] {
        if own.iter().any(|&x| own.iter().any(|&y| q.op(x, y) != x)) {
            return Ok(None);
        }
        // every element of `own` must act on `other` by the same full cycle
        let action = |y: usize| -> Vec<usize> { other.iter().map(|&x| q.op(x, y)).collect() };
        let first = action(own[0]);
        if own.iter().any(|&y| action(y) != first) {
            return Ok(None);
        }
        let mut x = other[0];
        for step in 1..=other.len() {
            x = q.op(x, own[0]);
            if (x == other[0]) != (step == other.len()) {
                return Ok(None);
            }
        }
    }
    let (n, m) = {
        let (a, b) = (orbits[0].len(), orbits[1].len());
        (a.min(b), a.max(b))
    };
    let u = u_quandle(n, m)?;
    Ok(q.is_isomorphic(&u)?.map(|witness| UDetection { n, m, witness }))
}

/// Non-abelian groups searched for surjections `G_Q → G`: Heisenberg-type
/// groups `heisenberg_group(p, d)` with `d > 1`, `d | p`, `p²d ≤ 128`, then
/// dihedral groups of degree 3..=12, then `S₃`, `S₄`, `A₄`.
pub fn quotient_catalog() -> Vec<(String, FiniteGroup)> {
    let mut out = Vec::new();
    for d in 2..=6 {
        for p in (d..=12).step_by(d) {
            if p * p * d <= 128 {
                let h = heisenberg_group(p, d).expect("catalog sizes are small");
                out.push((format!("heisenberg({p},{d})"), h.group));
            }
        }
    }
    out.sort_by_key(|(_, g)| g.order());
    for k in 3..=12 {
        out.push((format!("dihedral:{k}"), FiniteGroup::dihedral(k).expect("small dihedral group")));
    }
    for k in 3..=4 {
        out.push((format!("symmetric:{k}"), FiniteGroup::symmetric(k).expect("small symmetric group")));
    }
    out.push(("alternating:4".to_string(), FiniteGroup::alternating(4).expect("small alternating group")));
    out
}

/// A surjection `G_Q → G` onto a non-abelian group, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientWitness {
    pub group_name: String,
    pub group: FiniteGroup,
    pub images: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanStatus {
    /// The search agrees with the theorem.
    Consistent,
    /// The theorem predicts `G_Q ≠ ℤ²`, but no witness was found.
    Unresolved,
    /// The theorem predicts `G_Q = ℤ²`, but a witness says otherwise.
    Contradiction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub order: usize,
    /// Position in `enumerate_quandles(order, 2 orbits)`.
    pub index: usize,
    pub quandle: FiniteQuandle,
    pub abelianization: AbelianInvariants,
    pub u: Option<(usize, usize)>,
    /// The theorem's prediction: `G_Q = ℤ²` iff `Q ≅ U(n, m)`, `gcd(n,m) = 1`.
    pub predicts_z2: bool,
    pub quotient: Option<QuotientWitness>,
    pub status: ScanStatus,
}

impl ScanEntry {
    /// `G_Q ≠ ℤ²` is certified by the abelianization or by a quotient.
    pub fn certified_not_z2(&self) -> bool {
        !abelianization_is_z2(&self.abelianization) || self.quotient.is_some()
    }
}

fn abelianization_is_z2(a: &AbelianInvariants) -> bool {
    a.free_rank == 2 && a.torsion.is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub max_order: usize,
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn contradictions(&self) -> usize {
        self.entries.iter().filter(|e| e.status == ScanStatus::Contradiction).count()
    }

    pub fn unresolved(&self) -> impl Iterator<Item = &ScanEntry> {
        self.entries.iter().filter(|e| e.status == ScanStatus::Unresolved)
    }
}

/// Every two-orbit quandle of order `≤ max_order`, checked against the
/// characterization of quandles with `G_Q = ℤ²`.
pub fn abenvel_scan(max_order: usize) -> Result<ScanReport, ClassifyError> {
    abenvel_scan_with_budget(max_order, DEFAULT_SEARCH_BUDGET)
}

pub fn abenvel_scan_with_budget(max_order: usize, budget: u64) -> Result<ScanReport, ClassifyError> {
    if max_order > ENUMERATION_LIMIT {
        return Err(ClassifyError::OrderLimitExceeded { order: max_order, limit: ENUMERATION_LIMIT });
    }
    let catalog = quotient_catalog();
    let groups: Vec<FiniteGroup> = catalog.iter().map(|(_, g)| g.clone()).collect();
    let mut entries = Vec::new();
    for order in 2..=max_order {
        let two = enumerate_quandles(order, &Filters { orbit_count: Some(2), connected: None })?;
        for (index, q) in two.into_iter().enumerate() {
            let ab = abelianization(&presentation_of(&q));
            let u = detect_u(&q)?.map(|d| (d.n, d.m));
            let predicts_z2 = u.is_some_and(|(n, m)| gcd(n, m) == 1);
            let hit = search_conj_homs(&q, &groups, false, budget, |g, m| !g.is_abelian() && g.generates(m))?;
            let quotient = hit.map(|(k, images)| QuotientWitness { group_name: catalog[k].0.clone(), group: catalog[k].1.clone(), images });
            let certified = !abelianization_is_z2(&ab) || quotient.is_some();
            let status = match (predicts_z2, certified) {
                (true, true) => ScanStatus::Contradiction,
                (false, false) => ScanStatus::Unresolved,
                _ => ScanStatus::Consistent,
            };
            entries.push(ScanEntry { order, index, quandle: q, abelianization: ab, u, predicts_z2, quotient, status });
        }
    }
    Ok(ScanReport { max_order, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::dihedral_quandle;

    #[test]
    fn permutation_successor() {
        let mut v = [0u8, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(v, [2, 1, 0]);
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_quandles(n, &Filters::default()).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 3, 7]);
        let connected = Filters { orbit_count: None, connected: Some(true) };
        assert_eq!(enumerate_quandles(3, &connected).unwrap().len(), 1);
        assert!(enumerate_quandles(7, &Filters::default()).is_err());
    }

    #[test]
    fn u_detection() {
        assert_eq!(detect_u(&dihedral_quandle(4).unwrap()).unwrap().map(|d| (d.n, d.m)), Some((2, 2)));
        assert_eq!(detect_u(&u_quandle(3, 1).unwrap()).unwrap().map(|d| (d.n, d.m)), Some((1, 3)));
        assert_eq!(detect_u(&dihedral_quandle(6).unwrap()).unwrap(), None);
        assert_eq!(detect_u(&dihedral_quandle(3).unwrap()).unwrap(), None);
    }

    #[test]
    fn catalog_is_non_abelian() {
        let cat = quotient_catalog();
        assert_eq!(cat[0].0, "heisenberg(2,2)");
        assert!(cat.iter().all(|(_, g)| !g.is_abelian() && g.order() <= 128));
    }
}
