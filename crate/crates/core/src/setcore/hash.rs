use std::fmt;

use rustc_hash::FxHashSet;

use super::{SetKind, VertexId, VertexSet};

/// Hash-table set. Iteration order is unspecified but deterministic for a
/// given insertion history, since the hasher is unseeded.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HashVertexSet {
    elems: FxHashSet<VertexId>,
}

impl fmt::Debug for HashVertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.to_sorted_vec()).finish()
    }
}

impl VertexSet for HashVertexSet {
    type Iter<'a> = std::iter::Copied<std::collections::hash_set::Iter<'a, VertexId>>;

    const KIND: SetKind = SetKind::Hash;

    fn from_sorted(sorted: &[VertexId]) -> Self {
        Self::from_unsorted(sorted.iter().copied())
    }

    fn from_unsorted<I: IntoIterator<Item = VertexId>>(items: I) -> Self {
        HashVertexSet { elems: items.into_iter().collect() }
    }

    fn iter(&self) -> Self::Iter<'_> {
        self.elems.iter().copied()
    }

    fn cardinality(&self) -> usize {
        self.elems.len()
    }

    fn contains(&self, v: VertexId) -> bool {
        self.elems.contains(&v)
    }

    fn intersect(&self, other: &Self) -> Self {
        let (small, large) = if self.elems.len() <= other.elems.len() {
            (&self.elems, &other.elems)
        } else {
            (&other.elems, &self.elems)
        };
        HashVertexSet { elems: small.iter().copied().filter(|v| large.contains(v)).collect() }
    }

    fn intersect_count(&self, other: &Self) -> usize {
        let (small, large) = if self.elems.len() <= other.elems.len() {
            (&self.elems, &other.elems)
        } else {
            (&other.elems, &self.elems)
        };
        small.iter().filter(|v| large.contains(v)).count()
    }

    fn union(&self, other: &Self) -> Self {
        let (small, large) = if self.elems.len() <= other.elems.len() {
            (&self.elems, &other.elems)
        } else {
            (&other.elems, &self.elems)
        };
        let mut elems = large.clone();
        elems.extend(small.iter().copied());
        HashVertexSet { elems }
    }

    fn diff(&self, other: &Self) -> Self {
        HashVertexSet { elems: self.elems.iter().copied().filter(|v| !other.elems.contains(v)).collect() }
    }

    fn intersect_inplace(&mut self, other: &Self) {
        self.elems.retain(|v| other.elems.contains(v));
    }

    fn union_inplace(&mut self, other: &Self) {
        self.elems.extend(other.elems.iter().copied());
    }

    fn diff_inplace(&mut self, other: &Self) {
        if other.elems.len() < self.elems.len() {
            for v in &other.elems {
                self.elems.remove(v);
            }
        } else {
            self.elems.retain(|v| !other.elems.contains(v));
        }
    }

    fn add(&mut self, v: VertexId) {
        self.elems.insert(v);
    }

    fn remove(&mut self, v: VertexId) {
        self.elems.remove(&v);
    }

    /// Estimated as buckets x (element + one control byte), with the bucket
    /// count derived from capacity at the 7/8 load factor.
    fn heap_bytes(&self) -> usize {
        let cap = self.elems.capacity();
        if cap == 0 {
            return 0;
        }
        let buckets = (cap * 8 / 7).next_power_of_two();
        buckets * (std::mem::size_of::<VertexId>() + 1)
    }
}
