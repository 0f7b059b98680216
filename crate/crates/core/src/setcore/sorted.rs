use std::cmp::Ordering;
use std::fmt;

use super::{SetKind, VertexId, VertexSet};

/// Size ratio above which intersection switches from merging to galloping.
const MERGE_RATIO_MAX: usize = 32;

/// A strictly ascending array of vertex IDs.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SortedArraySet {
    elems: Vec<VertexId>,
}

impl SortedArraySet {
    pub fn as_slice(&self) -> &[VertexId] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.elems
    }
}

impl fmt::Debug for SortedArraySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elems.iter()).finish()
    }
}

fn merge_ok(a: usize, b: usize) -> bool {
    let (small, large) = if a <= b { (a, b) } else { (b, a) };
    large <= small.saturating_mul(MERGE_RATIO_MAX)
}

/// Index of the first element `>= target` in `s[from..]`, found by
/// exponential search starting at `from`.
pub(crate) fn gallop<T: Ord + Copy>(s: &[T], from: usize, target: T) -> usize {
    let mut lo = from;
    let mut step = 1;
    let mut hi = from;
    while hi < s.len() && s[hi] < target {
        lo = hi + 1;
        hi += step;
        step <<= 1;
    }
    let hi = hi.min(s.len());
    lo + s[lo..hi].partition_point(|&x| x < target)
}

pub(crate) fn intersect_slices<T: Ord + Copy>(a: &[T], b: &[T], out: &mut Vec<T>) {
    if merge_ok(a.len(), b.len()) {
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
    } else {
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut pos = 0;
        for &x in small {
            pos = gallop(large, pos, x);
            if pos == large.len() {
                break;
            }
            if large[pos] == x {
                out.push(x);
                pos += 1;
            }
        }
    }
}

pub(crate) fn intersect_count_slices<T: Ord + Copy>(a: &[T], b: &[T]) -> usize {
    let mut count = 0;
    if merge_ok(a.len(), b.len()) {
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
    } else {
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut pos = 0;
        for &x in small {
            pos = gallop(large, pos, x);
            if pos == large.len() {
                break;
            }
            if large[pos] == x {
                count += 1;
                pos += 1;
            }
        }
    }
    count
}

pub(crate) fn union_slices<T: Ord + Copy>(a: &[T], b: &[T], out: &mut Vec<T>) {
    out.reserve(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

pub(crate) fn diff_slices<T: Ord + Copy>(a: &[T], b: &[T], out: &mut Vec<T>) {
    if merge_ok(a.len(), b.len()) || a.len() > b.len() {
        let mut j = 0;
        for &x in a {
            while j < b.len() && b[j] < x {
                j += 1;
            }
            if j == b.len() || b[j] != x {
                out.push(x);
            }
        }
    } else {
        let mut pos = 0;
        for &x in a {
            pos = gallop(b, pos, x);
            if pos == b.len() || b[pos] != x {
                out.push(x);
            }
        }
    }
}

impl VertexSet for SortedArraySet {
    type Iter<'a> = std::iter::Copied<std::slice::Iter<'a, VertexId>>;

    const KIND: SetKind = SetKind::Sorted;

    fn from_sorted(sorted: &[VertexId]) -> Self {
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]), "input not strictly ascending");
        SortedArraySet { elems: sorted.to_vec() }
    }

    fn from_unsorted<I: IntoIterator<Item = VertexId>>(items: I) -> Self {
        let mut elems: Vec<VertexId> = items.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        elems.shrink_to_fit();
        SortedArraySet { elems }
    }

    fn iter(&self) -> Self::Iter<'_> {
        self.elems.iter().copied()
    }

    fn cardinality(&self) -> usize {
        self.elems.len()
    }

    fn contains(&self, v: VertexId) -> bool {
        self.elems.binary_search(&v).is_ok()
    }

    fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.elems.len().min(other.elems.len()));
        intersect_slices(&self.elems, &other.elems, &mut out);
        SortedArraySet { elems: out }
    }

    fn intersect_count(&self, other: &Self) -> usize {
        intersect_count_slices(&self.elems, &other.elems)
    }

    fn union(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        union_slices(&self.elems, &other.elems, &mut out);
        SortedArraySet { elems: out }
    }

    fn diff(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.elems.len());
        diff_slices(&self.elems, &other.elems, &mut out);
        SortedArraySet { elems: out }
    }

    fn intersect_inplace(&mut self, other: &Self) {
        let mut j = 0;
        let b = &other.elems;
        self.elems.retain(|&x| {
            j = gallop(b, j, x);
            j < b.len() && b[j] == x
        });
    }

    fn diff_inplace(&mut self, other: &Self) {
        let mut j = 0;
        let b = &other.elems;
        self.elems.retain(|&x| {
            j = gallop(b, j, x);
            !(j < b.len() && b[j] == x)
        });
    }

    fn add(&mut self, v: VertexId) {
        if let Err(pos) = self.elems.binary_search(&v) {
            self.elems.insert(pos, v);
        }
    }

    fn remove(&mut self, v: VertexId) {
        if let Ok(pos) = self.elems.binary_search(&v) {
            self.elems.remove(pos);
        }
    }

    fn heap_bytes(&self) -> usize {
        self.elems.capacity() * std::mem::size_of::<VertexId>()
    }

    fn to_sorted_vec(&self) -> Vec<VertexId> {
        self.elems.clone()
    }
}
