use std::cmp::Ordering;
use std::fmt;

/// Weakly decreasing tuple of positive integers.
///
/// `Partition([n1, ..., nk])` labels the basis vector
/// `L_{-n1} ... L_{-nk} v0`; the empty partition is the highest weight
/// vector itself.
///
/// Ordering: by weight, then descending lexicographic within a weight, so
/// level 2 reads `[2], [1, 1]` and level 4 reads `[4], [3, 1], [2, 2], ...`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts into weakly decreasing order. Panics on a zero part.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// The partition with its largest part removed.
    pub fn tail(&self) -> Partition {
        Partition(self.0.get(1..).unwrap_or_default().to_vec())
    }

    /// Prepends a part that is at least as large as every existing part.
    pub(crate) fn prepend(&self, part: u32) -> Partition {
        debug_assert!(self.first().is_none_or(|f| part >= f));
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(part);
        v.extend_from_slice(&self.0);
        Partition(v)
    }

    pub fn min_part(&self) -> Option<u32> {
        self.0.last().copied()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "v0");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "v_{{{}}}", parts.join(","))
    }
}

impl From<Vec<u32>> for Partition {
    fn from(parts: Vec<u32>) -> Self {
        Partition::new(parts)
    }
}

/// All partitions of `n`, largest first part first.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    partitions_with_min_part(n, 1)
}

/// Partitions of `n` whose parts are all at least `min_part`, in canonical
/// order. With `min_part = 2` these index the vacuum module basis.
pub fn partitions_with_min_part(n: u32, min_part: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (min..=max.min(n)).rev() {
            prefix.push(p);
            go(n - p, p, min, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, min_part.max(1), &mut Vec::new(), &mut out);
    out
}

/// `P(n)`, the number of partitions of `n`.
pub fn partition_count(n: u32) -> usize {
    let n = n as usize;
    let mut table = vec![0usize; n + 1];
    table[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            table[total] += table[total - part];
        }
    }
    table[n]
}
