//! Bag predicates.
//!
//! A set `B` is a *bag* of `D` when every three distinct vertices outside
//! `B` have a common neighbor (in either direction) inside `B`; a bag is
//! *poor* when every member has a restricted in- or out-neighborhood that
//! fails to be a bag. Non-bags split into three pieces of strictly smaller
//! independence number along their violating triple.
//!
//! Bag-ness is always relative to the ambient digraph, not to the subset
//! being inspected. The engine evaluates the predicate on many overlapping
//! sets, so a per-digraph memoizing context caches the violating triple
//! (or its absence) per set.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::coloring::ColorError;
use crate::digraph::{Digraph, VertexSet};

/// The lexicographically least triple outside `b` with no common neighbor
/// in `b`, or `None` when `b` is a bag.
pub fn bag_violation(d: &Digraph, b: &VertexSet) -> Option<(u32, u32, u32)> {
    let outside: Vec<u32> = b.complement().iter().collect();
    let m = outside.len();
    if m < 3 {
        return None;
    }
    // covers[i]: members of b adjacent to outside[i]
    let covers: Vec<VertexSet> = outside.iter().map(|&x| d.neighbors(x).intersection(b)).collect();
    for xi in 0..m - 2 {
        for yi in xi + 1..m - 1 {
            let pair = covers[xi].intersection(&covers[yi]);
            if pair.is_empty() {
                // any third vertex completes a violating triple
                return Some((outside[xi], outside[yi], outside[yi + 1]));
            }
            // a witness for one z usually works for the next few
            let mut witness = pair.first();
            for zi in yi + 1..m {
                if let Some(w) = witness {
                    if covers[zi].contains(w) {
                        continue;
                    }
                }
                match pair.first_common(&covers[zi]) {
                    Some(w) => witness = Some(w),
                    None => return Some((outside[xi], outside[yi], outside[zi])),
                }
            }
        }
    }
    None
}

/// True iff every triple outside `b` has a common neighbor in `b`
/// (vacuously true when fewer than three vertices lie outside).
pub fn is_bag(d: &Digraph, b: &VertexSet) -> bool {
    bag_violation(d, b).is_none()
}

/// True iff the bag `b` is poor: every member `v` has `in(v) & b` or
/// `out(v) & b` failing to be a bag. Errors when `b` itself is not a bag.
pub fn is_poor_bag(d: &Digraph, b: &VertexSet) -> Result<bool, ColorError> {
    let mut ctx = BagCtx::new(d);
    ctx.is_poor_bag(b)
}

/// Splits a non-bag `s` into three disjoint parts, each contained in the
/// non-neighborhood of one vertex of the violating triple, hence each of
/// independence number at most `alpha(D) - 1`. Members belonging to
/// several non-neighborhoods go to the earliest triple vertex.
pub fn split_non_bag(
    d: &Digraph,
    s: &VertexSet,
) -> Result<(VertexSet, VertexSet, VertexSet), ColorError> {
    match bag_violation(d, s) {
        None => Err(ColorError::IsABag),
        Some(triple) => Ok(split_along(d, s, triple)),
    }
}

/// Greedy split of `s` along a violating triple `(x, y, z)`.
pub(crate) fn split_along(
    d: &Digraph,
    s: &VertexSet,
    (x, y, z): (u32, u32, u32),
) -> (VertexSet, VertexSet, VertexSet) {
    let s1 = d.non_neighbors(x).intersection(s);
    let mut s2 = d.non_neighbors(y).intersection(s);
    s2.remove_all(&s1);
    let mut s3 = d.non_neighbors(z).intersection(s);
    s3.remove_all(&s1);
    s3.remove_all(&s2);
    (s1, s2, s3)
}

/// Bag-predicate evaluations memoized per ambient digraph.
///
/// The map stores the violating triple (or `None` for bags) keyed by the
/// queried set, so chain search, zone re-partitioning and the poor-bag
/// colorer share work across the run of one level.
pub(crate) struct BagCtx<'a> {
    pub(crate) d: &'a Digraph,
    memo: BTreeMap<VertexSet, Option<(u32, u32, u32)>>,
    pub(crate) evaluations: u64,
}

impl<'a> BagCtx<'a> {
    pub(crate) fn new(d: &'a Digraph) -> Self {
        BagCtx { d, memo: BTreeMap::new(), evaluations: 0 }
    }

    pub(crate) fn violation(&mut self, b: &VertexSet) -> Option<(u32, u32, u32)> {
        if let Some(v) = self.memo.get(b) {
            return *v;
        }
        self.evaluations += 1;
        let v = bag_violation(self.d, b);
        self.memo.insert(b.clone(), v);
        v
    }

    pub(crate) fn is_bag(&mut self, b: &VertexSet) -> bool {
        self.violation(b).is_none()
    }

    /// The two restricted neighborhoods of `v` inside `b`.
    pub(crate) fn halves(&self, v: u32, b: &VertexSet) -> (VertexSet, VertexSet) {
        (self.d.in_neighbors(v).intersection(b), self.d.out_neighbors(v).intersection(b))
    }

    pub(crate) fn is_poor_bag(&mut self, b: &VertexSet) -> Result<bool, ColorError> {
        if let Some(triple) = self.violation(b) {
            return Err(ColorError::NotABag { triple });
        }
        for v in b.iter() {
            let (in_half, out_half) = self.halves(v, b);
            if self.is_bag(&in_half) && self.is_bag(&out_half) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
