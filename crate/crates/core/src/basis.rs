//! Closed-form additive basis of the MW-motivic cohomology of `V_k(A^n)`.
//!
//! The index set `N_{n,k} = {n-k, ..., n-1}` is tiled by free blocks. For a
//! subset `I`, the union of blocks contained in `I` is its free part; the rest
//! is its torsion part, and the parity of the largest torsion element decides
//! whether the summand carries η-cokernel or η-kernel coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bigraded::{Bidegree, CoeffAtom, FormalSum, RingKind};
use crate::error::{Error, Result};

/// Largest ambient dimension accepted. Subsets are stored as `u64` bitmasks.
pub const MAX_N: u32 = 63;

/// Largest `k` for which the `2^k` basis elements are enumerated.
pub const MAX_ENUM_K: u32 = 20;

/// `(n, k)` naming the Stiefel variety `V_k(A^n)`, with `1 <= k <= n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StiefelIndex {
    n: u32,
    k: u32,
}

impl StiefelIndex {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::TooLarge { n, max: MAX_N });
        }
        if k < 1 || k >= n {
            return Err(Error::Domain { n, k });
        }
        Ok(StiefelIndex { n, k })
    }

    /// Rejects indices whose full basis would exceed `2^MAX_ENUM_K` elements.
    pub fn enumerable(self) -> Result<Self> {
        if self.k > MAX_ENUM_K {
            return Err(Error::TooManyAtoms { k: self.k, max: MAX_ENUM_K });
        }
        Ok(self)
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn k(self) -> u32 {
        self.k
    }

    /// Smallest element of `N_{n,k}`.
    pub fn lo(self) -> u32 {
        self.n - self.k
    }

    /// Largest element of `N_{n,k}`.
    pub fn hi(self) -> u32 {
        self.n - 1
    }

    pub fn elements(self) -> impl DoubleEndedIterator<Item = u32> {
        self.lo()..=self.hi()
    }

    /// `N_{n,k}` as a subset.
    pub fn full_set(self) -> Subset {
        Subset::from_elements(self.elements())
    }

    pub fn contains(self, i: u32) -> bool {
        (self.lo()..=self.hi()).contains(&i)
    }

    /// All valid indices with `n <= n_max`, ordered by `n` then `k`.
    pub fn range(n_max: u32) -> Vec<StiefelIndex> {
        (2..=n_max.min(MAX_N)).flat_map(|n| (1..n).map(move |k| StiefelIndex { n, k })).collect()
    }
}

impl fmt::Display for StiefelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V_{}(A^{})", self.k, self.n)
    }
}

/// A set of non-negative integers below 64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn from_elements(elements: impl IntoIterator<Item = u32>) -> Self {
        Subset(elements.into_iter().fold(0, |acc, i| acc | 1u64 << i))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn contains(self, i: u32) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub const fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl DoubleEndedIterator<Item = u32> {
        (0..64u32).filter(move |&i| self.contains(i))
    }

    /// `(sum (2i + 1), sum (i + 1))` over the elements.
    pub fn degree(self) -> Bidegree {
        self.iter().fold(Bidegree::ZERO, |d, i| d + generator_degree(i))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (j, i) in self.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Bidegree of the generator `α_i`: `(2i + 1, i + 1)`.
pub const fn generator_degree(i: u32) -> Bidegree {
    Bidegree::new(2 * i as i64 + 1, i as i64 + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// `{n-1}`, present when `n` is even.
    TopSingleton,
    /// `{i, i-1}` with `i` even.
    EvenPair,
    /// `{n-k}`, present when `n-k` is even.
    BottomSingleton,
}

/// One free block of `N_{n,k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FreeBlock {
    pub kind: BlockKind,
    /// Largest element of the block.
    pub top: u32,
}

impl FreeBlock {
    pub fn elements(self) -> Subset {
        match self.kind {
            BlockKind::EvenPair => Subset::from_elements([self.top, self.top - 1]),
            _ => Subset::from_elements([self.top]),
        }
    }

    /// Generator name: `β_{i,i-1}` or `β_{m}`.
    pub fn label(self) -> String {
        match self.kind {
            BlockKind::EvenPair => format!("β_{{{},{}}}", self.top, self.top - 1),
            _ => format!("β_{{{}}}", self.top),
        }
    }
}

impl fmt::Display for FreeBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.elements().fmt(f)
    }
}

/// Free blocks of `N_{n,k}`, in descending order of their top element.
pub fn free_blocks(idx: StiefelIndex) -> Vec<FreeBlock> {
    let (n, lo, hi) = (idx.n(), idx.lo(), idx.hi());
    let mut blocks = Vec::new();
    if n % 2 == 0 {
        blocks.push(FreeBlock { kind: BlockKind::TopSingleton, top: hi });
    }
    for i in (lo..=hi).rev() {
        if i % 2 == 0 && i > lo {
            blocks.push(FreeBlock { kind: BlockKind::EvenPair, top: i });
        }
    }
    if lo % 2 == 0 {
        blocks.push(FreeBlock { kind: BlockKind::BottomSingleton, top: lo });
    }
    blocks
}

/// Classification of one subset `I ⊆ N_{n,k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetBasis {
    pub subset: Subset,
    pub free: Subset,
    pub torsion: Subset,
    pub degree: Bidegree,
    pub ring: RingKind,
    pub label: String,
}

impl SubsetBasis {
    pub fn atom(&self) -> CoeffAtom {
        CoeffAtom::labeled(self.ring, self.degree, self.label.clone())
    }
}

/// Precomputed block data for repeated classification.
#[derive(Debug, Clone)]
pub struct Classifier {
    idx: StiefelIndex,
    blocks: Vec<FreeBlock>,
}

impl Classifier {
    pub fn new(idx: StiefelIndex) -> Self {
        Classifier { idx, blocks: free_blocks(idx) }
    }

    pub fn index(&self) -> StiefelIndex {
        self.idx
    }

    pub fn blocks(&self) -> &[FreeBlock] {
        &self.blocks
    }

    pub fn classify(&self, subset: Subset) -> Result<SubsetBasis> {
        if let Some(bad) = subset.iter().find(|&i| !self.idx.contains(i)) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                n: self.idx.n(),
                k: self.idx.k(),
                lo: self.idx.lo(),
                hi: self.idx.hi(),
            });
        }
        Ok(self.classify_unchecked(subset))
    }

    fn classify_unchecked(&self, subset: Subset) -> SubsetBasis {
        let contained: Vec<FreeBlock> =
            self.blocks.iter().copied().filter(|b| b.elements().is_subset_of(subset)).collect();
        let free = contained.iter().fold(Subset::EMPTY, |acc, b| acc.union(b.elements()));
        let torsion = subset.minus(free);
        let ring = match torsion.max() {
            None => RingKind::Mw,
            Some(m) if m % 2 == 0 => RingKind::M,
            Some(_) => RingKind::EtaM,
        };

        let mut factors: Vec<(u32, String)> = contained.iter().map(|b| (b.top, b.label())).collect();
        factors.extend(torsion.iter().map(|i| (i, format!("α_{{{i}}}"))));
        factors.sort_by_key(|f| std::cmp::Reverse(f.0));
        let label = if factors.is_empty() { "1".to_string() } else { factors.into_iter().map(|(_, s)| s).collect() };

        SubsetBasis { subset, free, torsion, degree: subset.degree(), ring, label }
    }

    /// Classifications of every subset of `N_{n,k}`, in canonical atom order.
    pub fn all(&self) -> Vec<SubsetBasis> {
        let lo = self.idx.lo();
        let mut rows: Vec<SubsetBasis> =
            (0..1u64 << self.idx.k()).map(|bits| self.classify_unchecked(Subset::from_bits(bits << lo))).collect();
        rows.sort_by_key(|r| (r.degree, r.ring, r.subset));
        rows
    }
}

pub fn classify_subset(idx: StiefelIndex, subset: Subset) -> Result<SubsetBasis> {
    Classifier::new(idx).classify(subset)
}

/// One labeled atom per subset of `N_{n,k}`: `2^k` atoms in total.
pub fn closed_form(idx: StiefelIndex) -> FormalSum {
    Classifier::new(idx).all().iter().map(SubsetBasis::atom).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: u32, k: u32) -> StiefelIndex {
        StiefelIndex::new(n, k).unwrap()
    }

    fn block_sets(n: u32, k: u32) -> Vec<Vec<u32>> {
        free_blocks(idx(n, k)).iter().map(|b| b.elements().iter().rev().collect()).collect()
    }

    #[test]
    fn block_examples() {
        assert_eq!(block_sets(7, 4), vec![vec![6, 5], vec![4, 3]]);
        assert_eq!(block_sets(8, 5), vec![vec![7], vec![6, 5], vec![4, 3]]);
        assert_eq!(block_sets(8, 4), vec![vec![7], vec![6, 5], vec![4]]);
    }

    #[test]
    fn domain_guard() {
        assert_eq!(StiefelIndex::new(3, 3), Err(Error::Domain { n: 3, k: 3 }));
        assert_eq!(StiefelIndex::new(3, 0), Err(Error::Domain { n: 3, k: 0 }));
        assert!(matches!(StiefelIndex::new(64, 2), Err(Error::TooLarge { .. })));
        assert!(idx(63, 20).enumerable().is_ok());
        assert!(matches!(idx(63, 21).enumerable(), Err(Error::TooManyAtoms { k: 21, max: 20 })));
    }

    #[test]
    fn classify_examples() {
        let b = classify_subset(idx(7, 4), Subset::from_elements([4, 5])).unwrap();
        assert_eq!(b.free, Subset::EMPTY);
        assert_eq!(b.torsion, Subset::from_elements([4, 5]));
        assert_eq!(b.degree, Bidegree::new(20, 11));
        assert_eq!(b.ring, RingKind::EtaM);
        assert_eq!(b.label, "α_{5}α_{4}");

        let b = classify_subset(idx(5, 2), Subset::from_elements([4])).unwrap();
        assert_eq!(b.torsion, Subset::from_elements([4]));
        assert_eq!(b.degree, Bidegree::new(9, 5));
        assert_eq!(b.ring, RingKind::M);

        let b = classify_subset(idx(9, 5), Subset::EMPTY).unwrap();
        assert_eq!(b.degree, Bidegree::ZERO);
        assert_eq!(b.ring, RingKind::Mw);
        assert_eq!(b.label, "1");
    }

    #[test]
    fn labels_descend() {
        let c = Classifier::new(idx(7, 4));
        let b = c.classify(Subset::from_elements([3, 4, 6])).unwrap();
        assert_eq!(b.label, "α_{6}β_{4,3}");
        let b = c.classify(Subset::from_elements([3, 4, 5, 6])).unwrap();
        assert_eq!(b.label, "β_{6,5}β_{4,3}");
        let b = classify_subset(idx(8, 4), Subset::from_elements([7, 4])).unwrap();
        assert_eq!(b.label, "β_{7}β_{4}");
    }

    #[test]
    fn out_of_range_element() {
        let err = classify_subset(idx(7, 4), Subset::from_elements([2, 5])).unwrap_err();
        assert!(matches!(err, Error::ElementOutOfRange { element: 2, .. }));
    }

    #[test]
    fn subset_degree_excess_is_element_sum() {
        let s = Subset::from_elements([3, 5, 6]);
        assert_eq!(s.degree().excess(), 14);
    }
}
