//! Deterministic, seeded test-instance generators.
//!
//! Byte-determinism contract (frozen): all randomness comes from a
//! `ChaCha8Rng` seeded with `SeedableRng::seed_from_u64(seed)` and consumed
//! exclusively through [`SeededRng`]'s three derived samplers, in the draw
//! order documented on each generator. ChaCha8's stream is specified
//! independently of platform and endianness, and the samplers below are
//! implemented here so the discipline cannot drift:
//!
//! - `below(k)`: rejection sampling on `next_u64` (values above the largest
//!   multiple of `k` are redrawn), then reduced mod `k`;
//! - `bernoulli(p)`: the top 53 bits of `next_u64` compared against
//!   `floor(p * 2^53)`;
//! - `shuffle`: Fisher-Yates from the high index down, partner drawn with
//!   `below(i + 1)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Digraph, VertexSet};

/// The frozen random source: ChaCha8 plus the three samplers all
/// generators share.
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw from `0..k`, unbiased by rejection. `k` must be
    /// nonzero.
    pub fn below(&mut self, k: u64) -> u64 {
        debug_assert!(k > 0);
        let reject_from = u64::MAX - (u64::MAX % k + 1) % k;
        loop {
            let x = self.next_u64();
            if x <= reject_from {
                return x % k;
            }
        }
    }

    /// True with probability `p` (clamped to `[0, 1]`), using 53 bits of
    /// one draw.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        const SCALE: f64 = 9_007_199_254_740_992.0; // 2^53
        let threshold = (p.clamp(0.0, 1.0) * SCALE) as u64;
        (self.next_u64() >> 11) < threshold
    }

    /// Fisher-Yates shuffle, one `below` draw per position from the top.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// Parameter errors from the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceError {
    ZeroVertices,
    BadProbability { p_milli: i64 },
    BadAlpha { alpha: u32, n: u32 },
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            InstanceError::ZeroVertices => write!(f, "generators need at least one vertex"),
            InstanceError::BadProbability { p_milli } => {
                write!(f, "arc probability {}.{:03} outside [0, 1]", p_milli / 1000, (p_milli % 1000).abs())
            }
            InstanceError::BadAlpha { alpha, n } => {
                write!(f, "alpha = {alpha} infeasible for n = {n} (need 1 <= alpha <= n)")
            }
        }
    }
}

fn check_probability(p: f64) -> Result<(), InstanceError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(InstanceError::BadProbability { p_milli: (p * 1000.0) as i64 });
    }
    Ok(())
}

/// A uniformly oriented tournament: for each pair `i < j` in lexicographic
/// order, one `below(2)` draw picks the orientation (`0` means `i -> j`).
pub fn gen_random_tournament(n: u32, seed: u64) -> Result<Digraph, InstanceError> {
    if n == 0 {
        return Err(InstanceError::ZeroVertices);
    }
    let mut rng = SeededRng::new(seed);
    let mut arcs = Vec::with_capacity(n as usize * (n as usize - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.below(2) == 0 {
                arcs.push((i, j));
            } else {
                arcs.push((j, i));
            }
        }
    }
    Ok(Digraph::new(n, &arcs).expect("one arc per pair is simple"))
}

/// Each unordered pair independently carries an arc with probability `p`;
/// when it does, one `below(2)` draw picks the orientation. Pairs are
/// visited in lexicographic order; the orientation draw happens only for
/// pairs that got an arc.
pub fn gen_random_digraph(n: u32, p: f64, seed: u64) -> Result<Digraph, InstanceError> {
    if n == 0 {
        return Err(InstanceError::ZeroVertices);
    }
    check_probability(p)?;
    let mut rng = SeededRng::new(seed);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.bernoulli(p) {
                if rng.below(2) == 0 {
                    arcs.push((i, j));
                } else {
                    arcs.push((j, i));
                }
            }
        }
    }
    Ok(Digraph::new(n, &arcs).expect("at most one arc per pair is simple"))
}

/// Arc-presence builder used by the triangle-avoiding generators.
struct ArcBuilder {
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
    arcs: Vec<(u32, u32)>,
}

impl ArcBuilder {
    fn new(n: u32) -> Self {
        ArcBuilder {
            out: (0..n).map(|_| VertexSet::new(n)).collect(),
            inn: (0..n).map(|_| VertexSet::new(n)).collect(),
            arcs: Vec::new(),
        }
    }

    fn adjacent(&self, u: u32, v: u32) -> bool {
        self.out[u as usize].contains(v) || self.out[v as usize].contains(u)
    }

    /// Would `u -> v` close a directed triangle `u -> v -> w -> u`?
    fn closes_triangle(&self, u: u32, v: u32) -> bool {
        self.out[v as usize].first_common(&self.inn[u as usize]).is_some()
    }

    fn add(&mut self, u: u32, v: u32) {
        self.out[u as usize].insert(v);
        self.inn[v as usize].insert(u);
        self.arcs.push((u, v));
    }

    fn finish(self, n: u32) -> Digraph {
        Digraph::new(n, &self.arcs).expect("builder maintains simplicity")
    }
}

/// A triangle-free digraph with independence number at most `alpha` by
/// construction: vertices split into `alpha` contiguous parts (larger
/// parts first), each part a transitive tournament, so any `alpha + 1`
/// vertices meet some part twice and are adjacent.
///
/// Cross-part arcs: all ordered cross pairs are collected in lexicographic
/// order and shuffled once; each candidate in shuffled order is skipped
/// without a draw if its pair is already adjacent, otherwise one
/// `bernoulli(p)` draw decides whether to attempt it, and an attempted arc
/// is added unless it would close a directed triangle against the arcs
/// present so far. The output is re-verified triangle-free.
pub fn gen_c3free_layered(n: u32, alpha: u32, p: f64, seed: u64) -> Result<Digraph, InstanceError> {
    if n == 0 {
        return Err(InstanceError::ZeroVertices);
    }
    if alpha == 0 || alpha > n {
        return Err(InstanceError::BadAlpha { alpha, n });
    }
    check_probability(p)?;

    let mut part_of = Vec::with_capacity(n as usize);
    let base = n / alpha;
    let extra = n % alpha;
    for part in 0..alpha {
        let size = base + u32::from(part < extra);
        part_of.extend(core::iter::repeat(part).take(size as usize));
    }

    let mut builder = ArcBuilder::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if part_of[i as usize] == part_of[j as usize] {
                builder.add(i, j);
            }
        }
    }

    let mut candidates: Vec<(u32, u32)> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && part_of[u as usize] != part_of[v as usize] {
                candidates.push((u, v));
            }
        }
    }
    let mut rng = SeededRng::new(seed);
    rng.shuffle(&mut candidates);
    for (u, v) in candidates {
        if builder.adjacent(u, v) {
            continue;
        }
        if !rng.bernoulli(p) {
            continue;
        }
        if !builder.closes_triangle(u, v) {
            builder.add(u, v);
        }
    }

    let d = builder.finish(n);
    assert!(d.find_directed_triangle().is_none(), "layered construction stays triangle-free");
    Ok(d)
}

/// Deletes one seeded-chosen arc per remaining directed triangle until none
/// is left. The result's arc set is a subset of the input's.
pub fn repair_to_c3_free(d: &Digraph, seed: u64) -> Digraph {
    let mut rng = SeededRng::new(seed);
    let mut builder = ArcBuilder::new(d.n());
    for (u, v) in d.arcs() {
        builder.add(u, v);
    }
    let mut current = builder.finish(d.n());
    while let Some((u, v, w)) = current.find_directed_triangle() {
        let victim = rng.below(3);
        let drop = [(u, v), (v, w), (w, u)][victim as usize];
        let arcs: Vec<(u32, u32)> = current.arcs().filter(|&a| a != drop).collect();
        current = Digraph::new(d.n(), &arcs).expect("arc removal preserves simplicity");
    }
    current
}

/// The instance families the generators cover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// The transitive tournament on `n` vertices.
    Transitive,
    /// Uniformly oriented tournament.
    RandomTournament,
    /// Arc per pair with probability `p`, uniform orientation.
    RandomDigraph { p: f64 },
    /// Triangle-free with independence number at most `alpha` by
    /// construction.
    C3FreeLayered { alpha: u32, p: f64 },
}

/// A fully deterministic instance description: same spec, same bytes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: u32,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn generate(&self) -> Result<Digraph, InstanceError> {
        match self.family {
            Family::Transitive => {
                if self.n == 0 {
                    return Err(InstanceError::ZeroVertices);
                }
                Ok(crate::structure::transitive_tournament(self.n)
                    .expect("n >= 1 checked above"))
            }
            Family::RandomTournament => gen_random_tournament(self.n, self.seed),
            Family::RandomDigraph { p } => gen_random_digraph(self.n, p, self.seed),
            Family::C3FreeLayered { alpha, p } => {
                gen_c3free_layered(self.n, alpha, p, self.seed)
            }
        }
    }

    /// Independence-number bound known from the construction, if any.
    pub fn alpha_bound(&self) -> Option<u32> {
        match self.family {
            Family::Transitive | Family::RandomTournament => Some(1),
            Family::RandomDigraph { .. } => None,
            Family::C3FreeLayered { alpha, .. } => Some(alpha),
        }
    }

    /// Stable identifier used in reports and file names.
    pub fn id(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        match self.family {
            Family::Transitive => {
                let _ = write!(s, "transitive-n{}", self.n);
            }
            Family::RandomTournament => {
                let _ = write!(s, "random-tournament-n{}-s{}", self.n, self.seed);
            }
            Family::RandomDigraph { p } => {
                let _ = write!(s, "random-digraph-n{}-p{:.3}-s{}", self.n, p, self.seed);
            }
            Family::C3FreeLayered { alpha, p } => {
                let _ = write!(
                    s,
                    "c3free-layered-n{}-a{}-p{:.3}-s{}",
                    self.n, alpha, p, self.seed
                );
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{independence_number, OracleConfig};

    #[test]
    fn tournaments_are_tournaments() {
        assert_eq!(gen_random_tournament(0, 1), Err(InstanceError::ZeroVertices));
        let t1 = gen_random_tournament(1, 7).unwrap();
        assert_eq!((t1.n(), t1.arc_count()), (1, 0));
        let t2 = gen_random_tournament(2, 7).unwrap();
        assert_eq!(t2.arc_count(), 1);
        for seed in 0..50 {
            let t = gen_random_tournament(9, seed).unwrap();
            assert_eq!(t.arc_count() as usize, 9 * 8 / 2);
        }
    }

    #[test]
    fn random_digraph_extremes() {
        let empty = gen_random_digraph(8, 0.0, 3).unwrap();
        assert_eq!(empty.arc_count(), 0);
        let full = gen_random_digraph(8, 1.0, 3).unwrap();
        assert_eq!(full.arc_count() as usize, 8 * 7 / 2);
        assert!(gen_random_digraph(8, 1.5, 3).is_err());
    }

    #[test]
    fn layered_instances_meet_their_contract() {
        let cfg = OracleConfig::default();
        let d = gen_c3free_layered(12, 2, 0.5, 7).unwrap();
        assert_eq!(d.find_directed_triangle(), None);
        assert!(independence_number(&d, &cfg).unwrap().value <= 2);

        // alpha = 1: one part, a transitive tournament
        let t = gen_c3free_layered(6, 1, 0.9, 1).unwrap();
        assert!(t.is_acyclic());
        assert_eq!(t.arc_count() as usize, 6 * 5 / 2);

        // alpha = n, p = 0: no arcs at all
        let e = gen_c3free_layered(5, 5, 0.0, 1).unwrap();
        assert_eq!(e.arc_count(), 0);

        assert!(gen_c3free_layered(4, 9, 0.5, 1).is_err());
    }

    #[test]
    fn seeds_are_deterministic() {
        for seed in [0u64, 1, 42, u64::MAX] {
            let a = gen_c3free_layered(14, 3, 0.4, seed).unwrap();
            let b = gen_c3free_layered(14, 3, 0.4, seed).unwrap();
            assert_eq!(a, b);
            let t = gen_random_tournament(10, seed).unwrap();
            assert_eq!(t, gen_random_tournament(10, seed).unwrap());
        }
    }

    #[test]
    fn repair_deletes_until_triangle_free() {
        let c3 = Digraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let fixed = repair_to_c3_free(&c3, 11);
        assert_eq!(fixed.arc_count(), 2);
        assert_eq!(fixed.find_directed_triangle(), None);

        let t = gen_random_tournament(8, 5).unwrap();
        let fixed = repair_to_c3_free(&t, 5);
        assert_eq!(fixed.find_directed_triangle(), None);
        // arc subset of the input
        for (u, v) in fixed.arcs() {
            assert!(t.has_arc(u, v));
        }

        // already triangle-free inputs come back unchanged
        let t5 = crate::structure::transitive_tournament(5).unwrap();
        assert_eq!(repair_to_c3_free(&t5, 9), t5);
    }

    #[test]
    fn spec_ids_are_stable() {
        let spec = InstanceSpec { family: Family::C3FreeLayered { alpha: 2, p: 0.3 }, n: 50, seed: 7 };
        assert_eq!(spec.id(), "c3free-layered-n50-a2-p0.300-s7");
        assert_eq!(spec.alpha_bound(), Some(2));
        let spec = InstanceSpec { family: Family::Transitive, n: 5, seed: 0 };
        assert_eq!(spec.id(), "transitive-n5");
        assert_eq!(spec.alpha_bound(), Some(1));
    }
}
