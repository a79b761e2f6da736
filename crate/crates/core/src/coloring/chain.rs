//! Chains of poor bags and the zone partition around them.
//!
//! `find_chain` is the literal recursion: if some `v` in the working set
//! has both restricted neighborhoods being bags, recurse on the in-side,
//! emit `v` as a separator, recurse on the out-side; otherwise the set
//! itself is the single result. On a bag input every emitted bag is poor;
//! the separator's non-neighbors inside the working set fall outside all
//! bags and are kept alongside the separator (the colorer reuses the
//! separator's palette for them).
//!
//! A non-bag input can never recurse: a violating triple outside the set
//! is outside both halves of every member as well, so neither half can be
//! a bag. `find_chain` therefore returns such inputs unchanged, matching
//! the single-set contract.

use alloc::vec::Vec;

use crate::coloring::bags::BagCtx;
use crate::digraph::{Digraph, VertexSet};

/// Whether `find_chain` recursed at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainKind {
    /// The input came back unchanged: a poor bag or not a bag at all.
    Single,
    /// A proper chain of two or more poor bags.
    Chain,
}

/// Output of [`find_chain`]: bags `B_1, .., B_t` alternating with
/// separators `v_1, .., v_{t-1}`.
///
/// On a chain, consecutive bags satisfy `B_{i+1}` inside `out(v_i)` and
/// `B_i` inside `in(v_i)`, and no arc runs from `B_{i+1}` back to `B_i`.
/// `dropped[i]` records the vertices non-adjacent to `v_i` that left the
/// recursion at `v_i`'s node; bags, separators and dropped sets together
/// partition the input set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainResult {
    kind: ChainKind,
    bags: Vec<VertexSet>,
    separators: Vec<u32>,
    dropped: Vec<VertexSet>,
}

impl ChainResult {
    fn single(b: VertexSet) -> Self {
        ChainResult { kind: ChainKind::Single, bags: alloc::vec![b], separators: Vec::new(), dropped: Vec::new() }
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn is_chain(&self) -> bool {
        matches!(self.kind, ChainKind::Chain)
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn separators(&self) -> &[u32] {
        &self.separators
    }

    /// Per separator, the vertices it dropped from the recursion (all
    /// non-adjacent to it).
    pub fn dropped(&self) -> &[VertexSet] {
        &self.dropped
    }

    pub fn into_bags(self) -> Vec<VertexSet> {
        self.bags
    }
}

/// Runs the chain search on `b` against the ambient digraph `d`.
pub fn find_chain(d: &Digraph, b: &VertexSet) -> ChainResult {
    let mut ctx = BagCtx::new(d);
    find_chain_ctx(&mut ctx, b)
}

pub(crate) fn find_chain_ctx(ctx: &mut BagCtx<'_>, b: &VertexSet) -> ChainResult {
    for v in b.iter() {
        let (in_half, out_half) = ctx.halves(v, b);
        if ctx.is_bag(&in_half) && ctx.is_bag(&out_half) {
            let left = find_chain_ctx(ctx, &in_half);
            let right = find_chain_ctx(ctx, &out_half);
            let mut dropped_here = ctx.d.non_neighbors(v);
            dropped_here.intersect_with(b);

            let mut bags = left.bags;
            bags.extend(right.bags);
            let mut separators = left.separators;
            separators.push(v);
            separators.extend(right.separators);
            let mut dropped = left.dropped;
            dropped.push(dropped_here);
            dropped.extend(right.dropped);
            return ChainResult { kind: ChainKind::Chain, bags, separators, dropped };
        }
    }
    ChainResult::single(b.clone())
}

/// The zone partition of the vertices outside a chain.
///
/// Zone `i >= 1` holds the vertices whose highest-indexed in-neighbor bag
/// is `B_i`; vertices seen by no bag vertex land in zone 0. Zones are
/// indexed `0..=t` for a chain of `t` bags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZonePartition {
    zones: Vec<VertexSet>,
}

impl ZonePartition {
    pub fn zones(&self) -> &[VertexSet] {
        &self.zones
    }

    pub fn zone_count(&self) -> usize {
        self.zones.len()
    }

    /// Zone index of `v`, or `None` for chain vertices.
    pub fn assignment(&self, v: u32) -> Option<usize> {
        self.zones.iter().position(|z| z.contains(v))
    }
}

/// Partitions everything outside the chain's bags into zones by the
/// largest-index rule.
pub fn assign_zones(d: &Digraph, chain: &[VertexSet]) -> ZonePartition {
    let mut in_chain = VertexSet::new(d.n());
    for b in chain {
        in_chain.union_with(b);
    }
    let mut zones: Vec<VertexSet> = (0..=chain.len()).map(|_| VertexSet::new(d.n())).collect();
    for v in in_chain.complement().iter() {
        let mut zone = 0;
        for (j, bag) in chain.iter().enumerate().rev() {
            if d.in_neighbors(v).first_common(bag).is_some() {
                zone = j + 1;
                break;
            }
        }
        zones[zone].insert(v);
    }
    ZonePartition { zones }
}

/// Replaces the two bags at and before zone `i` with a fresh chain found
/// inside that zone: bags `B_{i-1}, B_i` leave, `new_bags` take their
/// place, `B_{i+1}..` keep their positions.
pub(crate) fn splice_chain(
    chain: Vec<VertexSet>,
    zone_index: usize,
    new_bags: Vec<VertexSet>,
) -> Vec<VertexSet> {
    let t = chain.len();
    let prefix_len = zone_index.saturating_sub(2);
    let suffix_start = zone_index.min(t);
    let mut out = Vec::with_capacity(prefix_len + new_bags.len() + t - suffix_start);
    out.extend_from_slice(&chain[..prefix_len]);
    out.extend(new_bags);
    out.extend_from_slice(&chain[suffix_start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::bags::is_poor_bag;
    use crate::structure::transitive_tournament;

    #[test]
    fn poor_bag_comes_back_single() {
        // three isolated vertices: the full set is a bag (nothing
        // outside) and poor (each vertex's halves are empty, and with
        // three vertices outside the empty set is not a bag)
        let iso = Digraph::new(3, &[]).unwrap();
        let full = VertexSet::full(3);
        assert_eq!(is_poor_bag(&iso, &full), Ok(true));
        let r = find_chain(&iso, &full);
        assert_eq!(r.kind(), ChainKind::Single);
        assert_eq!(r.bags().len(), 1);
        assert_eq!(r.bags()[0], full);
    }

    #[test]
    fn tiny_universe_recursion_is_literal() {
        // below three vertices every set (even the empty one) is
        // vacuously a bag, so the recursion fires and emits empty bags;
        // the colorer never consults find_chain in this regime (such
        // digraphs are acyclic) but the literal contract stands
        let single = Digraph::new(1, &[]).unwrap();
        let r = find_chain(&single, &VertexSet::full(1));
        assert_eq!(r.kind(), ChainKind::Chain);
        assert_eq!(r.separators(), &[0]);
        assert!(r.bags().iter().all(VertexSet::is_empty));
    }

    #[test]
    fn non_poor_bag_yields_a_chain() {
        // T_4: the full set is a bag (nothing outside); vertex halves are
        // bags too (still nothing outside beyond 2 vertices), so the full
        // set is not poor and the recursion must fire.
        let t4 = transitive_tournament(4).unwrap();
        let full = VertexSet::full(4);
        assert_eq!(is_poor_bag(&t4, &full), Ok(false));
        let r = find_chain(&t4, &full);
        assert!(r.is_chain());
        assert!(r.bags().len() >= 2);

        // reconstruction: bags + separators + dropped partition the input
        let mut seen = VertexSet::new(4);
        for b in r.bags() {
            assert!(seen.is_disjoint(b));
            seen.union_with(b);
        }
        for &s in r.separators() {
            assert!(!seen.contains(s));
            seen.insert(s);
        }
        for dr in r.dropped() {
            assert!(seen.is_disjoint(dr));
            seen.union_with(dr);
        }
        assert_eq!(seen, full);
    }

    #[test]
    fn chains_have_no_back_arcs() {
        let t6 = transitive_tournament(6).unwrap();
        let r = find_chain(&t6, &VertexSet::full(6));
        assert!(r.is_chain());
        for i in 0..r.bags().len() {
            for j in (i + 1)..r.bags().len() {
                for u in r.bags()[j].iter() {
                    assert!(t6.out_neighbors(u).first_common(&r.bags()[i]).is_none());
                }
            }
        }
        // separator containments
        for (i, &v) in r.separators().iter().enumerate() {
            assert!(r.bags()[i].is_subset_of(t6.in_neighbors(v)));
            assert!(r.bags()[i + 1].is_subset_of(t6.out_neighbors(v)));
        }
    }

    #[test]
    fn zones_follow_the_largest_index_rule() {
        // chain of two singleton bags {0}, {1} in a path 0 -> 2, 1 -> 3
        let d = Digraph::new(5, &[(0, 2), (1, 3), (1, 2)]).unwrap();
        let chain = [VertexSet::singleton(5, 0), VertexSet::singleton(5, 1)];
        let zp = assign_zones(&d, &chain);
        assert_eq!(zp.zone_count(), 3);
        // 2 is seen by 0 (bag 1) and 1 (bag 2): highest index wins
        assert_eq!(zp.assignment(2), Some(2));
        assert_eq!(zp.assignment(3), Some(2));
        // 4 is seen by nobody
        assert_eq!(zp.assignment(4), Some(0));
        assert_eq!(zp.assignment(0), None);
    }

    #[test]
    fn splice_index_arithmetic() {
        let n = 10;
        let bag = |v: u32| VertexSet::singleton(n, v);
        let chain = alloc::vec![bag(0), bag(1), bag(2), bag(3)];
        let fresh = alloc::vec![bag(7), bag(8), bag(9)];

        // zone 0: nothing dropped, fresh bags lead
        let c0 = splice_chain(chain.clone(), 0, fresh.clone());
        assert_eq!(c0, alloc::vec![bag(7), bag(8), bag(9), bag(0), bag(1), bag(2), bag(3)]);

        // zone 1: B_1 dropped
        let c1 = splice_chain(chain.clone(), 1, fresh.clone());
        assert_eq!(c1, alloc::vec![bag(7), bag(8), bag(9), bag(1), bag(2), bag(3)]);

        // zone 2: B_1, B_2 dropped
        let c2 = splice_chain(chain.clone(), 2, fresh.clone());
        assert_eq!(c2, alloc::vec![bag(7), bag(8), bag(9), bag(2), bag(3)]);

        // zone t: last two dropped
        let c4 = splice_chain(chain, 4, fresh);
        assert_eq!(c4, alloc::vec![bag(0), bag(1), bag(7), bag(8), bag(9)]);
    }
}
