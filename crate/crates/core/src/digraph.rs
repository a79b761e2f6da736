//! The digraph data model and elementary queries.
//!
//! Digraphs are simple and loop-free: between two vertices there is at most
//! one arc, never a pair of anti-parallel arcs. Vertices are dense labels
//! `0..n-1`. A [`Digraph`] is immutable after construction and all queries
//! are pure, so values can be shared freely across threads.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Errors from digraph construction and vertex-indexed queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphError {
    /// Vertex `v` is not a vertex of a digraph on `n` vertices.
    OutOfRange { v: u32, n: u32 },
    /// A loop arc `(v, v)` was supplied.
    LoopArc { v: u32 },
    /// The arc `(u, v)` appears twice in the input.
    DuplicateArc { u: u32, v: u32 },
    /// Both `(u, v)` and `(v, u)` were supplied; a simple digraph carries
    /// at most one arc per vertex pair.
    AntiParallelPair { u: u32, v: u32 },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphError::OutOfRange { v, n } => {
                write!(f, "vertex {v} out of range for a digraph on {n} vertices")
            }
            GraphError::LoopArc { v } => write!(f, "loop arc ({v}, {v}) rejected"),
            GraphError::DuplicateArc { u, v } => write!(f, "duplicate arc ({u}, {v})"),
            GraphError::AntiParallelPair { u, v } => {
                write!(f, "anti-parallel pair ({u}, {v}) and ({v}, {u})")
            }
        }
    }
}

const WORD_BITS: usize = 64;

fn words_for(n: u32) -> usize {
    (n as usize + WORD_BITS - 1) / WORD_BITS
}

/// A subset of the vertices `0..n-1` of a digraph, stored as a bitset.
///
/// Every set is tied to the vertex count `n` of the digraph it was built
/// against; binary operations require both operands to share that capacity.
/// Equality, ordering and hashing are purely structural, so sets can key
/// ordered maps.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet {
    n: u32,
    words: Vec<u64>,
}

impl VertexSet {
    /// The empty set over `0..n-1`.
    pub fn new(n: u32) -> Self {
        VertexSet { n, words: vec![0; words_for(n)] }
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: u32) -> Self {
        let mut s = Self::new(n);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.mask_tail();
        s
    }

    /// A one-element set. Panics if `v >= n`.
    pub fn singleton(n: u32, v: u32) -> Self {
        let mut s = Self::new(n);
        s.insert(v);
        s
    }

    /// Builds a set from members; out-of-range members panic.
    pub fn from_members<I: IntoIterator<Item = u32>>(n: u32, members: I) -> Self {
        let mut s = Self::new(n);
        for v in members {
            s.insert(v);
        }
        s
    }

    fn mask_tail(&mut self) {
        let used = self.n as usize % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        if self.n == 0 {
            self.words.clear();
        }
    }

    /// Capacity `n` of the universe this set ranges over.
    pub fn capacity(&self) -> u32 {
        self.n
    }

    pub fn contains(&self, v: u32) -> bool {
        debug_assert!(v < self.n);
        self.words[v as usize / WORD_BITS] >> (v as usize % WORD_BITS) & 1 == 1
    }

    pub fn insert(&mut self, v: u32) {
        assert!(v < self.n, "vertex {v} out of range (capacity {})", self.n);
        self.words[v as usize / WORD_BITS] |= 1 << (v as usize % WORD_BITS);
    }

    pub fn remove(&mut self, v: u32) {
        assert!(v < self.n, "vertex {v} out of range (capacity {})", self.n);
        self.words[v as usize / WORD_BITS] &= !(1 << (v as usize % WORD_BITS));
    }

    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Least member, if any.
    pub fn first(&self) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((i * WORD_BITS) as u32 + w.trailing_zeros());
            }
        }
        None
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Members<'_> {
        Members { set: self, word: 0, bits: self.words.first().copied().unwrap_or(0) }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.zip_assign(other, |a, b| a & b);
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.zip_assign(other, |a, b| a | b);
    }

    pub fn remove_all(&mut self, other: &VertexSet) {
        self.zip_assign(other, |a, b| a & !b);
    }

    pub fn complement(&self) -> VertexSet {
        let mut s = VertexSet { n: self.n, words: self.words.iter().map(|w| !w).collect() };
        s.mask_tail();
        s
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Least member of `self & other` without allocating the intersection.
    pub fn first_common(&self, other: &VertexSet) -> Option<u32> {
        debug_assert_eq!(self.n, other.n);
        for (i, (&a, &b)) in self.words.iter().zip(&other.words).enumerate() {
            let w = a & b;
            if w != 0 {
                return Some((i * WORD_BITS) as u32 + w.trailing_zeros());
            }
        }
        None
    }

    fn zip_with(&self, other: &VertexSet, op: impl Fn(u64, u64) -> u64) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
        VertexSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    fn zip_assign(&mut self, other: &VertexSet, op: impl Fn(u64, u64) -> u64) {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
        for (a, &b) in self.words.iter_mut().zip(&other.words) {
            *a = op(*a, b);
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
pub struct Members<'a> {
    set: &'a VertexSet,
    word: usize,
    bits: u64,
}

impl Iterator for Members<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.bits != 0 {
                let bit = self.bits.trailing_zeros();
                self.bits &= self.bits - 1;
                return Some((self.word * WORD_BITS) as u32 + bit);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

/// Outcome of an acyclicity test: a witness either way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acyclicity {
    /// The lexicographically least topological order.
    Acyclic { order: Vec<u32> },
    /// A directed cycle `c[0] -> c[1] -> .. -> c[0]`, rotated so that the
    /// least vertex comes first.
    Cyclic { cycle: Vec<u32> },
}

/// A simple loop-free digraph on vertices `0..n-1`, immutable after
/// construction.
///
/// Adjacency is stored as one out-row and one in-row bitset per vertex, so
/// both neighborhood directions answer in `O(n/64)` words and set-algebraic
/// queries (common neighbors, induced restrictions) are word-parallel.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: u32,
    m: u64,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

impl Digraph {
    /// Builds a digraph from an arc list.
    ///
    /// Rejects out-of-range endpoints, loops, duplicate arcs and
    /// anti-parallel pairs, each with an error naming the offending pair.
    pub fn new(n: u32, arcs: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = Digraph {
            n,
            m: 0,
            out: (0..n).map(|_| VertexSet::new(n)).collect(),
            inn: (0..n).map(|_| VertexSet::new(n)).collect(),
        };
        for &(u, v) in arcs {
            if u >= n {
                return Err(GraphError::OutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::OutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::LoopArc { v });
            }
            if g.out[u as usize].contains(v) {
                return Err(GraphError::DuplicateArc { u, v });
            }
            if g.out[v as usize].contains(u) {
                return Err(GraphError::AntiParallelPair { u, v });
            }
            g.out[u as usize].insert(v);
            g.inn[v as usize].insert(u);
            g.m += 1;
        }
        Ok(g)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn arc_count(&self) -> u64 {
        self.m
    }

    /// True iff the arc `u -> v` is present ("u sees v").
    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.out[u as usize].contains(v)
    }

    /// Out-neighbors of `v`: the vertices `v` sees.
    pub fn out_neighbors(&self, v: u32) -> &VertexSet {
        &self.out[v as usize]
    }

    /// In-neighbors of `v`: the vertices seeing `v`.
    pub fn in_neighbors(&self, v: u32) -> &VertexSet {
        &self.inn[v as usize]
    }

    /// Vertices adjacent to `v` in either direction.
    pub fn neighbors(&self, v: u32) -> VertexSet {
        self.out[v as usize].union(&self.inn[v as usize])
    }

    /// Vertices non-adjacent to `v` (excluding `v` itself).
    pub fn non_neighbors(&self, v: u32) -> VertexSet {
        let mut s = self.neighbors(v).complement();
        s.remove(v);
        s
    }

    /// The partition `(N+(v), N-(v), No(v))` of `V \ {v}` into
    /// out-neighbors, in-neighbors and non-adjacent vertices.
    pub fn neighborhoods(&self, v: u32) -> Result<(VertexSet, VertexSet, VertexSet), GraphError> {
        if v >= self.n {
            return Err(GraphError::OutOfRange { v, n: self.n });
        }
        Ok((self.out[v as usize].clone(), self.inn[v as usize].clone(), self.non_neighbors(v)))
    }

    /// Vertices seen by *all* of `xs` (`M+`). By the empty-intersection
    /// convention, `common_out` of the empty set is all of `V`.
    pub fn common_out(&self, xs: &VertexSet) -> VertexSet {
        let mut acc = VertexSet::full(self.n);
        for v in xs.iter() {
            acc.intersect_with(&self.out[v as usize]);
        }
        acc
    }

    /// Vertices seeing *all* of `xs` (`M-`); full set for empty `xs`.
    pub fn common_in(&self, xs: &VertexSet) -> VertexSet {
        let mut acc = VertexSet::full(self.n);
        for v in xs.iter() {
            acc.intersect_with(&self.inn[v as usize]);
        }
        acc
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u as usize].iter().map(move |v| (u, v)))
    }

    /// The digraph with every arc reversed. An involution.
    pub fn reverse(&self) -> Digraph {
        Digraph { n: self.n, m: self.m, out: self.inn.clone(), inn: self.out.clone() }
    }

    /// The subgraph induced by `s`, on vertices `0..|s|-1`, together with
    /// the map from new labels back to the originals (ascending).
    pub fn induced(&self, s: &VertexSet) -> (Digraph, Vec<u32>) {
        assert_eq!(s.capacity(), self.n, "vertex set over a different universe");
        let map: Vec<u32> = s.iter().collect();
        let k = map.len() as u32;
        let mut out: Vec<VertexSet> = (0..k).map(|_| VertexSet::new(k)).collect();
        let mut inn: Vec<VertexSet> = (0..k).map(|_| VertexSet::new(k)).collect();
        let mut m = 0;
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate() {
                if i != j && self.has_arc(u, v) {
                    out[i].insert(j as u32);
                    inn[j].insert(i as u32);
                    m += 1;
                }
            }
        }
        (Digraph { n: k, m, out, inn }, map)
    }

    /// Tests acyclicity, yielding a topological order or a directed cycle.
    ///
    /// The order is produced by repeatedly removing the least remaining
    /// source, so it is deterministic. The cycle witness is the cycle found
    /// by walking least in-neighbors inside the peeled core, rotated to its
    /// least vertex.
    pub fn acyclicity(&self) -> Acyclicity {
        let n = self.n as usize;
        let mut indeg: Vec<u32> = (0..n).map(|v| self.inn[v].len()).collect();
        let mut removed = VertexSet::new(self.n);
        let mut order = Vec::with_capacity(n);
        loop {
            let mut source = None;
            for v in 0..self.n {
                if !removed.contains(v) && indeg[v as usize] == 0 {
                    source = Some(v);
                    break;
                }
            }
            let Some(v) = source else { break };
            order.push(v);
            removed.insert(v);
            for w in self.out[v as usize].iter() {
                if !removed.contains(w) {
                    indeg[w as usize] -= 1;
                }
            }
        }
        if order.len() == n {
            return Acyclicity::Acyclic { order };
        }

        // Every vertex of the peeled core keeps an in-neighbor inside the
        // core; walking least in-neighbors must revisit a vertex.
        let core = removed.complement();
        let start = core.first().expect("non-empty core");
        let mut pos: Vec<Option<usize>> = vec![None; n];
        let mut path = vec![start];
        pos[start as usize] = Some(0);
        loop {
            let cur = *path.last().expect("non-empty path");
            let pred = self.inn[cur as usize]
                .first_common(&core)
                .expect("core vertex has an in-neighbor in the core");
            if let Some(i) = pos[pred as usize] {
                // path[k+1] -> path[k] are arcs; reversed tail is the cycle.
                let mut cycle: Vec<u32> = path[i..].iter().rev().copied().collect();
                let least = cycle
                    .iter()
                    .enumerate()
                    .min_by_key(|&(_, &v)| v)
                    .map(|(i, _)| i)
                    .expect("non-empty cycle");
                cycle.rotate_left(least);
                return Acyclicity::Cyclic { cycle };
            }
            pos[pred as usize] = Some(path.len());
            path.push(pred);
        }
    }

    pub fn is_acyclic(&self) -> bool {
        matches!(self.acyclicity(), Acyclicity::Acyclic { .. })
    }

    /// Least triple of vertices inducing a directed triangle, reported in
    /// arc order starting from the least vertex, or `None`.
    pub fn find_directed_triangle(&self) -> Option<(u32, u32, u32)> {
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let uv = self.has_arc(u, v);
                let vu = self.has_arc(v, u);
                if !uv && !vu {
                    continue;
                }
                for w in (v + 1)..self.n {
                    if uv && self.has_arc(v, w) && self.has_arc(w, u) {
                        return Some((u, v, w));
                    }
                    if vu && self.has_arc(u, w) && self.has_arc(w, v) {
                        return Some((u, w, v));
                    }
                }
            }
        }
        None
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs=[", self.n)?;
        for (i, (u, v)) in self.arcs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        write!(f, "])")
    }
}
