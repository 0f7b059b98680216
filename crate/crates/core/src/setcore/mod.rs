//! Set algebra over vertex IDs.
//!
//! Every mining kernel in this crate is written against [`VertexSet`]. Three
//! representations implement it:
//!
//! - [`SortedArraySet`]: a strictly ascending `Vec<u32>`, the CSR layout.
//! - [`HybridBitmapSet`]: 2^16-element chunks stored either as a sorted array
//!   of low halves or as a dense bitmap, depending on chunk cardinality.
//! - [`HashVertexSet`]: a hash table of IDs.
//!
//! Binary operations take an operand of the same representation and return a
//! new set in that representation. The `*_any` variants accept any other
//! representation and still return the left operand's type.

mod hash;
mod hybrid;
mod sorted;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use hash::HashVertexSet;
pub use hybrid::{ContainerKind, HybridBitmapSet, ARRAY_CONTAINER_MAX, CHUNK_BITS};
pub use sorted::SortedArraySet;

/// Dense vertex identifier in `[0, n)`.
pub type VertexId = u32;

/// Behavioral contract shared by every set representation.
///
/// Sets never hold duplicates, and `iter` yields each member exactly once.
/// Only [`SortedArraySet`] and [`HybridBitmapSet`] iterate in ascending order;
/// use [`VertexSet::to_sorted_vec`] when order matters.
pub trait VertexSet: Clone + Default + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Iter<'a>: Iterator<Item = VertexId> + 'a
    where
        Self: 'a;

    /// Which representation this is.
    const KIND: SetKind;

    /// Builds a set from a strictly ascending slice.
    fn from_sorted(sorted: &[VertexId]) -> Self;

    /// Builds a set from arbitrary IDs, collapsing duplicates.
    fn from_unsorted<I: IntoIterator<Item = VertexId>>(items: I) -> Self {
        let mut v: Vec<VertexId> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self::from_sorted(&v)
    }

    fn singleton(v: VertexId) -> Self {
        Self::from_sorted(&[v])
    }

    /// The set `{0, 1, ..., bound - 1}`.
    fn range(bound: VertexId) -> Self {
        let v: Vec<VertexId> = (0..bound).collect();
        Self::from_sorted(&v)
    }

    fn iter(&self) -> Self::Iter<'_>;
    fn cardinality(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.cardinality() == 0
    }

    fn contains(&self, v: VertexId) -> bool;

    fn intersect(&self, other: &Self) -> Self;
    fn intersect_count(&self, other: &Self) -> usize;
    fn union(&self, other: &Self) -> Self;
    fn diff(&self, other: &Self) -> Self;

    fn union_count(&self, other: &Self) -> usize {
        self.cardinality() + other.cardinality() - self.intersect_count(other)
    }

    fn diff_count(&self, other: &Self) -> usize {
        self.cardinality() - self.intersect_count(other)
    }

    fn intersect_inplace(&mut self, other: &Self) {
        *self = self.intersect(other);
    }

    fn union_inplace(&mut self, other: &Self) {
        *self = self.union(other);
    }

    fn diff_inplace(&mut self, other: &Self) {
        *self = self.diff(other);
    }

    fn add(&mut self, v: VertexId);

    /// Removes `v`; a no-op when `v` is absent.
    fn remove(&mut self, v: VertexId);

    /// Heap bytes owned by this set, excluding `size_of::<Self>()`.
    fn heap_bytes(&self) -> usize;

    fn to_sorted_vec(&self) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self.iter().collect();
        if !Self::KIND.iterates_sorted() {
            v.sort_unstable();
        }
        v
    }

    fn convert<B: VertexSet>(other: &B) -> Self {
        Self::from_sorted(&other.to_sorted_vec())
    }

    fn intersect_any<B: VertexSet>(&self, other: &B) -> Self {
        self.filter_members(|v| other.contains(v))
    }

    fn intersect_count_any<B: VertexSet>(&self, other: &B) -> usize {
        self.iter().filter(|&v| other.contains(v)).count()
    }

    fn union_any<B: VertexSet>(&self, other: &B) -> Self {
        let mut out = self.clone();
        for v in other.iter() {
            out.add(v);
        }
        out
    }

    fn diff_any<B: VertexSet>(&self, other: &B) -> Self {
        self.filter_members(|v| !other.contains(v))
    }

    #[doc(hidden)]
    fn filter_members<F: Fn(VertexId) -> bool>(&self, keep: F) -> Self {
        if Self::KIND.iterates_sorted() {
            let v: Vec<VertexId> = self.iter().filter(|&v| keep(v)).collect();
            Self::from_sorted(&v)
        } else {
            Self::from_unsorted(self.iter().filter(|&v| keep(v)))
        }
    }
}

/// Runtime selector for a set representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Sorted,
    Hybrid,
    Hash,
}

impl SetKind {
    pub const ALL: [SetKind; 3] = [SetKind::Sorted, SetKind::Hybrid, SetKind::Hash];

    pub fn iterates_sorted(self) -> bool {
        !matches!(self, SetKind::Hash)
    }

    pub fn name(self) -> &'static str {
        match self {
            SetKind::Sorted => "sorted",
            SetKind::Hybrid => "hybrid",
            SetKind::Hash => "hash",
        }
    }
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown set implementation `{0}` (expected sorted, hybrid or hash)")]
pub struct UnknownSetKind(pub String);

impl FromStr for SetKind {
    type Err = UnknownSetKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sorted" => Ok(SetKind::Sorted),
            "hybrid" | "roaring" => Ok(SetKind::Hybrid),
            "hash" => Ok(SetKind::Hash),
            _ => Err(UnknownSetKind(s.to_string())),
        }
    }
}

/// Dispatches a generic expression over the set representation chosen at
/// runtime.
///
/// ```
/// use setminer::setcore::{SetKind, VertexSet};
/// use setminer::with_set_kind;
/// let n = with_set_kind!(SetKind::Hash, S => S::range(10).cardinality());
/// assert_eq!(n, 10);
/// ```
#[macro_export]
macro_rules! with_set_kind {
    ($kind:expr, $s:ident => $body:expr) => {
        match $kind {
            $crate::setcore::SetKind::Sorted => {
                type $s = $crate::setcore::SortedArraySet;
                $body
            }
            $crate::setcore::SetKind::Hybrid => {
                type $s = $crate::setcore::HybridBitmapSet;
                $body
            }
            $crate::setcore::SetKind::Hash => {
                type $s = $crate::setcore::HashVertexSet;
                $body
            }
        }
    };
}
