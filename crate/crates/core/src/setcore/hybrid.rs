use std::fmt;

use super::sorted::{diff_slices, intersect_count_slices, intersect_slices, union_slices};
use super::{SetKind, VertexId, VertexSet};

/// Number of low bits addressed inside one chunk.
pub const CHUNK_BITS: u32 = 16;

/// A chunk holding at most this many elements is stored as a sorted array;
/// above it, as a dense bitmap.
pub const ARRAY_CONTAINER_MAX: usize = 4096;

const BITMAP_WORDS: usize = 1 << (CHUNK_BITS - 6);
const LOW_MASK: u32 = (1 << CHUNK_BITS) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContainerKind {
    Array,
    Bitmap,
}

#[derive(Clone, PartialEq, Eq)]
struct Bitmap {
    words: Box<[u64; BITMAP_WORDS]>,
    len: usize,
}

impl Bitmap {
    fn empty() -> Self {
        Bitmap { words: Box::new([0; BITMAP_WORDS]), len: 0 }
    }

    fn from_lows(lows: &[u16]) -> Self {
        let mut b = Bitmap::empty();
        for &x in lows {
            b.words[(x >> 6) as usize] |= 1 << (x & 63);
        }
        b.len = lows.len();
        b
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    fn contains(&self, x: u16) -> bool {
        self.words[(x >> 6) as usize] & (1 << (x & 63)) != 0
    }

    fn insert(&mut self, x: u16) {
        let w = &mut self.words[(x >> 6) as usize];
        let bit = 1 << (x & 63);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
        }
    }

    fn remove(&mut self, x: u16) {
        let w = &mut self.words[(x >> 6) as usize];
        let bit = 1 << (x & 63);
        if *w & bit != 0 {
            *w &= !bit;
            self.len -= 1;
        }
    }

    fn to_lows(&self) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.len);
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push((i as u16) << 6 | w.trailing_zeros() as u16);
                w &= w - 1;
            }
        }
        out
    }

    fn zip_with(&self, other: &Bitmap, f: impl Fn(u64, u64) -> u64) -> Bitmap {
        let mut words = Box::new([0u64; BITMAP_WORDS]);
        for (o, (a, b)) in words.iter_mut().zip(self.words.iter().zip(other.words.iter())) {
            *o = f(*a, *b);
        }
        let mut out = Bitmap { words, len: 0 };
        out.recount();
        out
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Container {
    Array(Vec<u16>),
    Bitmap(Bitmap),
}

impl Container {
    fn from_lows(lows: &[u16]) -> Container {
        if lows.len() > ARRAY_CONTAINER_MAX {
            Container::Bitmap(Bitmap::from_lows(lows))
        } else {
            Container::Array(lows.to_vec())
        }
    }

    fn kind(&self) -> ContainerKind {
        match self {
            Container::Array(_) => ContainerKind::Array,
            Container::Bitmap(_) => ContainerKind::Bitmap,
        }
    }

    fn len(&self) -> usize {
        match self {
            Container::Array(a) => a.len(),
            Container::Bitmap(b) => b.len,
        }
    }

    /// Restores the kind/threshold rule; `None` for an empty container.
    fn normalized(self) -> Option<Container> {
        match self {
            Container::Array(a) if a.is_empty() => None,
            Container::Array(a) if a.len() > ARRAY_CONTAINER_MAX => {
                Some(Container::Bitmap(Bitmap::from_lows(&a)))
            }
            Container::Bitmap(b) if b.len == 0 => None,
            Container::Bitmap(b) if b.len <= ARRAY_CONTAINER_MAX => Some(Container::Array(b.to_lows())),
            c => Some(c),
        }
    }

    fn contains(&self, x: u16) -> bool {
        match self {
            Container::Array(a) => a.binary_search(&x).is_ok(),
            Container::Bitmap(b) => b.contains(x),
        }
    }

    fn and(&self, other: &Container) -> Option<Container> {
        use Container::*;
        let c = match (self, other) {
            (Array(a), Array(b)) => {
                let mut out = Vec::with_capacity(a.len().min(b.len()));
                intersect_slices(a, b, &mut out);
                Array(out)
            }
            (Array(a), Bitmap(b)) | (Bitmap(b), Array(a)) => {
                Array(a.iter().copied().filter(|&x| b.contains(x)).collect())
            }
            (Bitmap(a), Bitmap(b)) => Bitmap(a.zip_with(b, |x, y| x & y)),
        };
        c.normalized()
    }

    fn and_count(&self, other: &Container) -> usize {
        use Container::*;
        match (self, other) {
            (Array(a), Array(b)) => intersect_count_slices(a, b),
            (Array(a), Bitmap(b)) | (Bitmap(b), Array(a)) => {
                a.iter().filter(|&&x| b.contains(x)).count()
            }
            (Bitmap(a), Bitmap(b)) => a
                .words
                .iter()
                .zip(b.words.iter())
                .map(|(x, y)| (x & y).count_ones() as usize)
                .sum(),
        }
    }

    fn or(&self, other: &Container) -> Container {
        use Container::*;
        let c = match (self, other) {
            (Array(a), Array(b)) => {
                let mut out = Vec::new();
                union_slices(a, b, &mut out);
                Array(out)
            }
            (Array(a), Bitmap(b)) | (Bitmap(b), Array(a)) => {
                let mut out = b.clone();
                for &x in a {
                    out.insert(x);
                }
                Bitmap(out)
            }
            (Bitmap(a), Bitmap(b)) => Bitmap(a.zip_with(b, |x, y| x | y)),
        };
        c.normalized().expect("union of non-empty containers is non-empty")
    }

    fn andnot(&self, other: &Container) -> Option<Container> {
        use Container::*;
        let c = match (self, other) {
            (Array(a), Array(b)) => {
                let mut out = Vec::with_capacity(a.len());
                diff_slices(a, b, &mut out);
                Array(out)
            }
            (Array(a), Bitmap(b)) => Array(a.iter().copied().filter(|&x| !b.contains(x)).collect()),
            (Bitmap(a), Array(b)) => {
                let mut out = a.clone();
                for &x in b {
                    out.remove(x);
                }
                Bitmap(out)
            }
            (Bitmap(a), Bitmap(b)) => Bitmap(a.zip_with(b, |x, y| x & !y)),
        };
        c.normalized()
    }

    fn heap_bytes(&self) -> usize {
        match self {
            Container::Array(a) => a.capacity() * std::mem::size_of::<u16>(),
            Container::Bitmap(_) => BITMAP_WORDS * std::mem::size_of::<u64>(),
        }
    }

    fn iter(&self, key: u16) -> ContainerIter<'_> {
        let base = u32::from(key) << CHUNK_BITS;
        match self {
            Container::Array(a) => ContainerIter::Array { base, lows: a.iter() },
            Container::Bitmap(b) => ContainerIter::Bitmap {
                base,
                words: &b.words[..],
                idx: 0,
                cur: b.words[0],
            },
        }
    }
}

enum ContainerIter<'a> {
    Array { base: u32, lows: std::slice::Iter<'a, u16> },
    Bitmap { base: u32, words: &'a [u64], idx: usize, cur: u64 },
}

impl Iterator for ContainerIter<'_> {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        match self {
            ContainerIter::Array { base, lows } => lows.next().map(|&x| *base | u32::from(x)),
            ContainerIter::Bitmap { base, words, idx, cur } => {
                while *cur == 0 {
                    *idx += 1;
                    if *idx >= words.len() {
                        return None;
                    }
                    *cur = words[*idx];
                }
                let bit = cur.trailing_zeros();
                *cur &= *cur - 1;
                Some(*base | (*idx as u32) << 6 | bit)
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
struct Chunk {
    key: u16,
    container: Container,
}

/// Roaring-style compressed set: IDs are split into 2^16-wide chunks keyed by
/// their high bits, and each chunk is an array or bitmap container.
///
/// A container is a bitmap exactly when it holds more than
/// [`ARRAY_CONTAINER_MAX`] elements, and empty chunks are never stored. Every
/// mutation restores this rule.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HybridBitmapSet {
    chunks: Vec<Chunk>,
}

impl HybridBitmapSet {
    pub fn chunk_count(&self) -> usize {
        self.chunks.len()
    }

    /// `(key, kind, cardinality)` for every stored chunk, in key order.
    pub fn containers(&self) -> impl Iterator<Item = (u16, ContainerKind, usize)> + '_ {
        self.chunks.iter().map(|c| (c.key, c.container.kind(), c.container.len()))
    }

    /// Checks the structural invariants: ascending non-empty chunks, each
    /// container kind matching its cardinality, and sorted array contents.
    pub fn is_normalized(&self) -> bool {
        let keys_ok = self.chunks.windows(2).all(|w| w[0].key < w[1].key);
        keys_ok
            && self.chunks.iter().all(|c| match &c.container {
                Container::Array(a) => {
                    !a.is_empty()
                        && a.len() <= ARRAY_CONTAINER_MAX
                        && a.windows(2).all(|w| w[0] < w[1])
                }
                Container::Bitmap(b) => {
                    let pop: usize = b.words.iter().map(|w| w.count_ones() as usize).sum();
                    b.len > ARRAY_CONTAINER_MAX && pop == b.len
                }
            })
    }

    fn find(&self, key: u16) -> Result<usize, usize> {
        self.chunks.binary_search_by_key(&key, |c| c.key)
    }
}

fn split(v: VertexId) -> (u16, u16) {
    ((v >> CHUNK_BITS) as u16, (v & LOW_MASK) as u16)
}

impl fmt::Debug for HybridBitmapSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct HybridIter<'a> {
    chunks: std::slice::Iter<'a, Chunk>,
    cur: Option<ContainerIter<'a>>,
}

impl Iterator for HybridIter<'_> {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        loop {
            if let Some(it) = &mut self.cur {
                if let Some(v) = it.next() {
                    return Some(v);
                }
            }
            let chunk = self.chunks.next()?;
            self.cur = Some(chunk.container.iter(chunk.key));
        }
    }
}

impl VertexSet for HybridBitmapSet {
    type Iter<'a> = HybridIter<'a>;

    const KIND: SetKind = SetKind::Hybrid;

    fn from_sorted(sorted: &[VertexId]) -> Self {
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]), "input not strictly ascending");
        let mut chunks = Vec::new();
        let mut lows: Vec<u16> = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let key = split(sorted[i]).0;
            lows.clear();
            while i < sorted.len() && split(sorted[i]).0 == key {
                lows.push(split(sorted[i]).1);
                i += 1;
            }
            chunks.push(Chunk { key, container: Container::from_lows(&lows) });
        }
        HybridBitmapSet { chunks }
    }

    fn iter(&self) -> Self::Iter<'_> {
        HybridIter { chunks: self.chunks.iter(), cur: None }
    }

    fn cardinality(&self) -> usize {
        self.chunks.iter().map(|c| c.container.len()).sum()
    }

    fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }

    fn contains(&self, v: VertexId) -> bool {
        let (key, low) = split(v);
        match self.find(key) {
            Ok(i) => self.chunks[i].container.contains(low),
            Err(_) => false,
        }
    }

    fn intersect(&self, other: &Self) -> Self {
        let mut chunks = Vec::new();
        let (a, b) = (&self.chunks, &other.chunks);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].key.cmp(&b[j].key) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if let Some(container) = a[i].container.and(&b[j].container) {
                        chunks.push(Chunk { key: a[i].key, container });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        HybridBitmapSet { chunks }
    }

    fn intersect_count(&self, other: &Self) -> usize {
        let (a, b) = (&self.chunks, &other.chunks);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].key.cmp(&b[j].key) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += a[i].container.and_count(&b[j].container);
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    fn union(&self, other: &Self) -> Self {
        let mut chunks = Vec::with_capacity(self.chunks.len().max(other.chunks.len()));
        let (a, b) = (&self.chunks, &other.chunks);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].key.cmp(&b[j].key) {
                std::cmp::Ordering::Less => {
                    chunks.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    chunks.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    chunks.push(Chunk { key: a[i].key, container: a[i].container.or(&b[j].container) });
                    i += 1;
                    j += 1;
                }
            }
        }
        chunks.extend_from_slice(&a[i..]);
        chunks.extend_from_slice(&b[j..]);
        HybridBitmapSet { chunks }
    }

    fn diff(&self, other: &Self) -> Self {
        let mut chunks = Vec::with_capacity(self.chunks.len());
        let b = &other.chunks;
        let mut j = 0;
        for chunk in &self.chunks {
            while j < b.len() && b[j].key < chunk.key {
                j += 1;
            }
            if j < b.len() && b[j].key == chunk.key {
                if let Some(container) = chunk.container.andnot(&b[j].container) {
                    chunks.push(Chunk { key: chunk.key, container });
                }
            } else {
                chunks.push(chunk.clone());
            }
        }
        HybridBitmapSet { chunks }
    }

    fn add(&mut self, v: VertexId) {
        let (key, low) = split(v);
        match self.find(key) {
            Ok(i) => {
                let container = &mut self.chunks[i].container;
                match container {
                    Container::Array(a) => {
                        if let Err(pos) = a.binary_search(&low) {
                            a.insert(pos, low);
                            if a.len() > ARRAY_CONTAINER_MAX {
                                *container = Container::Bitmap(Bitmap::from_lows(a));
                            }
                        }
                    }
                    Container::Bitmap(b) => b.insert(low),
                }
            }
            Err(i) => self.chunks.insert(i, Chunk { key, container: Container::Array(vec![low]) }),
        }
    }

    fn remove(&mut self, v: VertexId) {
        let (key, low) = split(v);
        let Ok(i) = self.find(key) else { return };
        let container = &mut self.chunks[i].container;
        match container {
            Container::Array(a) => {
                if let Ok(pos) = a.binary_search(&low) {
                    a.remove(pos);
                }
            }
            Container::Bitmap(b) => {
                b.remove(low);
                if b.len <= ARRAY_CONTAINER_MAX {
                    *container = Container::Array(b.to_lows());
                }
            }
        }
        if container.len() == 0 {
            self.chunks.remove(i);
        }
    }

    fn heap_bytes(&self) -> usize {
        self.chunks.capacity() * std::mem::size_of::<Chunk>()
            + self.chunks.iter().map(|c| c.container.heap_bytes()).sum::<usize>()
    }
}
