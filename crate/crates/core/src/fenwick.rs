//! Growable Fenwick tree over integer weights, used for weighted sampling.

#[inline]
fn lsb(i: usize) -> usize {
    i & i.wrapping_neg()
}

/// Prefix sums over `u64` weights with `O(log n)` update, append and
/// inverse-prefix search.
#[derive(Clone, Debug, Default)]
pub struct Fenwick {
    // 1-based; tree[0] is unused.
    tree: Vec<u64>,
    total: u64,
}

impl Fenwick {
    pub fn new() -> Self {
        Self {
            tree: vec![0],
            total: 0,
        }
    }

    pub fn from_weights(weights: impl IntoIterator<Item = u64>) -> Self {
        let mut tree = vec![0];
        tree.extend(weights);
        let len = tree.len() - 1;
        for i in 1..=len {
            let j = i + lsb(i);
            if j <= len {
                tree[j] += tree[i];
            }
        }
        let mut f = Self { tree, total: 0 };
        f.total = f.prefix(len);
        f
    }

    pub fn len(&self) -> usize {
        self.tree.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Sum of the first `count` weights.
    pub fn prefix(&self, count: usize) -> u64 {
        let mut i = count;
        let mut sum = 0;
        while i > 0 {
            sum += self.tree[i];
            i -= lsb(i);
        }
        sum
    }

    pub fn get(&self, index: usize) -> u64 {
        self.prefix(index + 1) - self.prefix(index)
    }

    /// Adds `delta` to the weight at `index` (0-based).
    pub fn add(&mut self, index: usize, delta: u64) {
        let mut i = index + 1;
        let len = self.len();
        while i <= len {
            self.tree[i] += delta;
            i += lsb(i);
        }
        self.total += delta;
    }

    /// Appends a new weight at index `len()`.
    pub fn push(&mut self, weight: u64) {
        let i = self.len() + 1;
        let covered = self.prefix(i - 1) - self.prefix(i - lsb(i));
        self.tree.push(weight + covered);
        self.total += weight;
    }

    /// The index `i` with `prefix(i) <= target < prefix(i + 1)`.
    ///
    /// Panics if `target >= total()`.
    pub fn find(&self, target: u64) -> usize {
        assert!(
            target < self.total,
            "target {target} beyond total {}",
            self.total
        );
        let len = self.len();
        let mut pos = 0;
        let mut rem = target;
        let mut step = if len == 0 {
            0
        } else {
            1 << (usize::BITS - 1 - len.leading_zeros())
        };
        while step > 0 {
            let next = pos + step;
            if next <= len && self.tree[next] <= rem {
                pos = next;
                rem -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}
