//! Small shared helpers.

/// Union-find with path halving; the root of a class is its smallest member.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn push(&mut self) -> usize {
        let i = self.parent.len();
        self.parent.push(i);
        i
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn partition(&mut self) -> Partition {
        let roots: Vec<usize> = (0..self.len()).map(|i| self.find(i)).collect();
        Partition::from_labels(&roots)
    }
}

/// Equivalence relation on `0..n`, classes numbered by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    pub class_of: Vec<usize>,
    pub count: usize,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition { class_of: (0..n).collect(), count: n }
    }

    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for l in labels {
            let next = seen.len();
            class_of.push(*seen.entry(l.clone()).or_insert(next));
        }
        Partition { count: seen.len(), class_of }
    }

    /// Smallest member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.count];
        for (i, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = i;
            }
        }
        reps
    }

    pub fn is_discrete(&self) -> bool {
        self.count == self.class_of.len()
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// True when every class of `self` lies in a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut img = vec![usize::MAX; self.count];
        for (i, &c) in self.class_of.iter().enumerate() {
            let o = other.class_of[i];
            if img[c] == usize::MAX {
                img[c] = o;
            } else if img[c] != o {
                return false;
            }
        }
        true
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let labels: Vec<(usize, usize)> = self.class_of.iter().zip(&other.class_of).map(|(&a, &b)| (a, b)).collect();
        Partition::from_labels(&labels)
    }
}

/// All subsets of `0..n` as bitmasks, in increasing order.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Read a bound override from `MONOIDKIT_BOUND`.
pub fn env_bound(default: usize) -> usize {
    std::env::var("MONOIDKIT_BOUND").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

pub const DEFAULT_CARRIER_BOUND: usize = 12;
pub const DEFAULT_DEGREE_BOUND: usize = 8;
pub const DEFAULT_ENUM_BOUND: usize = 8;
