use alloc::string::String;
use alloc::vec::Vec;

/// Union-find over `0..n`. The root of every block is its smallest member.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns `true` when two distinct blocks were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Blocks sorted internally and ordered by their smallest element.
    pub(crate) fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = alloc::vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    num_integer::Integer::gcd(&a, &b)
}

/// Names for `second` that avoid `first` and each other, by appending `'`.
/// Errors with the offending name after eight attempts.
pub(crate) fn disjoint_names(first: &[String], second: &[String]) -> Result<Vec<String>, String> {
    let mut taken: Vec<String> = first.to_vec();
    let mut out = Vec::with_capacity(second.len());
    for name in second {
        let mut cand = name.clone();
        let mut tries = 0;
        while taken.contains(&cand) {
            tries += 1;
            if tries > 8 {
                return Err(name.clone());
            }
            cand.push('\'');
        }
        taken.push(cand.clone());
        out.push(cand);
    }
    Ok(out)
}
