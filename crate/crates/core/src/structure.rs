//! Constructors and detectors for the structural objects behind the
//! coloring bounds: transitive tournaments, the arrow and triangle
//! compositions, thick arcs, (r,s)-cliques and r-mountains.
//!
//! The recursive definitions: every vertex is a 1-mountain; an arc
//! `u -> v` is r-thick if the common set `in(u) & out(v)` contains an
//! r-mountain (that mountain is the arc's certificate); an (r,s)-clique is
//! an s-set of vertices pairwise joined by r-thick arcs; and an
//! (r,r+1)-clique together with one certificate per pair, flattened, is an
//! (r+1)-mountain. Detection cost explodes with the level, so every
//! detector is guarded by configurable caps; exceeding a cap is an error,
//! never a silent miss.

use alloc::vec::Vec;
use core::fmt;

use crate::digraph::{Digraph, GraphError, VertexSet};

/// Caps on detector recursion depth and clique size.
#[derive(Debug, Clone, Copy)]
pub struct DetectConfig {
    /// Largest `r` accepted by [`is_r_thick`].
    pub thick_level_cap: u32,
    /// Largest `r` accepted by [`find_rs_clique`].
    pub clique_level_cap: u32,
    /// Largest `s` accepted by [`find_rs_clique`].
    pub clique_size_cap: u32,
    /// Largest `r` accepted by [`find_mountain`].
    pub mountain_level_cap: u32,
}

impl Default for DetectConfig {
    fn default() -> Self {
        DetectConfig {
            thick_level_cap: 3,
            clique_level_cap: 2,
            clique_size_cap: 4,
            mountain_level_cap: 3,
        }
    }
}

/// Errors from the structural detectors and constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureError {
    /// Tournament size or mountain/clique level must be at least 1.
    ZeroParameter,
    /// A detector parameter exceeds its configured cap.
    CapExceeded { what: &'static str, value: u32, cap: u32 },
    /// `(u, v)` is not an arc of the digraph.
    NotAnArc { u: u32, v: u32 },
    /// A vertex argument is out of range.
    Graph(GraphError),
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StructureError::ZeroParameter => write!(f, "parameter must be at least 1"),
            StructureError::CapExceeded { what, value, cap } => {
                write!(f, "{what} {value} exceeds cap {cap}")
            }
            StructureError::NotAnArc { u, v } => write!(f, "({u}, {v}) is not an arc"),
            StructureError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl From<GraphError> for StructureError {
    fn from(e: GraphError) -> Self {
        StructureError::Graph(e)
    }
}

/// The acyclic tournament on `k` vertices: arc `i -> j` iff `i < j`.
pub fn transitive_tournament(k: u32) -> Result<Digraph, StructureError> {
    if k == 0 {
        return Err(StructureError::ZeroParameter);
    }
    let mut arcs = Vec::with_capacity((k as usize) * (k as usize - 1) / 2);
    for i in 0..k {
        for j in (i + 1)..k {
            arcs.push((i, j));
        }
    }
    Ok(Digraph::new(k, &arcs).expect("transitive tournament is simple"))
}

/// Disjoint union of `h1` and `h2` plus all arcs from `h1` to `h2`.
/// Vertices of `h2` are shifted by `|h1|`.
pub fn compose_arrow(h1: &Digraph, h2: &Digraph) -> Digraph {
    compose(&[h1, h2], &[(0, 1)])
}

/// Disjoint union of three digraphs plus complete arcs `h1 -> h2`,
/// `h2 -> h3` and `h3 -> h1`.
pub fn compose_delta(h1: &Digraph, h2: &Digraph, h3: &Digraph) -> Digraph {
    compose(&[h1, h2, h3], &[(0, 1), (1, 2), (2, 0)])
}

fn compose(blocks: &[&Digraph], interfaces: &[(usize, usize)]) -> Digraph {
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut n = 0;
    for b in blocks {
        offsets.push(n);
        n += b.n();
    }
    let mut arcs = Vec::new();
    for (b, &off) in blocks.iter().zip(&offsets) {
        arcs.extend(b.arcs().map(|(u, v)| (u + off, v + off)));
    }
    for &(from, to) in interfaces {
        for u in 0..blocks[from].n() {
            for v in 0..blocks[to].n() {
                arcs.push((u + offsets[from], v + offsets[to]));
            }
        }
    }
    Digraph::new(n, &arcs).expect("block composition of simple digraphs is simple")
}

/// Recursive witness that a digraph contains an r-mountain.
///
/// For `r = 1` this is a single vertex. For `r >= 2` it is an
/// (r-1,r)-clique plus, per clique pair, the arc orientation and an
/// (r-1)-mountain certificate living inside `in(tail) & out(head)`;
/// `vertices` is the flattened union. Certificates for distinct pairs may
/// overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MountainCertificate {
    r: u32,
    clique: VertexSet,
    pair_certs: Vec<(u32, u32, MountainCertificate)>,
    vertices: VertexSet,
}

impl MountainCertificate {
    pub fn level(&self) -> u32 {
        self.r
    }

    pub fn clique(&self) -> &VertexSet {
        &self.clique
    }

    /// Per clique pair: the arc `(u, v)` and the sub-certificate of its
    /// (r-1)-thickness.
    pub fn pair_certs(&self) -> &[(u32, u32, MountainCertificate)] {
        &self.pair_certs
    }

    /// All vertices of the mountain, deduplicated.
    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    fn single(n: u32, v: u32) -> Self {
        let s = VertexSet::singleton(n, v);
        MountainCertificate { r: 1, clique: s.clone(), pair_certs: Vec::new(), vertices: s }
    }

    /// Rebuilds the certificate in the labeling of a parent digraph on
    /// `n` vertices, `map[i]` being the parent label of local vertex `i`.
    fn relabel(&self, map: &[u32], n: u32) -> Self {
        MountainCertificate {
            r: self.r,
            clique: VertexSet::from_members(n, self.clique.iter().map(|v| map[v as usize])),
            pair_certs: self
                .pair_certs
                .iter()
                .map(|(u, v, c)| (map[*u as usize], map[*v as usize], c.relabel(map, n)))
                .collect(),
            vertices: VertexSet::from_members(n, self.vertices.iter().map(|v| map[v as usize])),
        }
    }
}

/// Ways a [`MountainCertificate`] can fail independent re-validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateError {
    ZeroLevel,
    WrongCliqueSize { level: u32, expected: u32, found: u32 },
    SingletonHasSubCerts,
    PairNotAdjacent { u: u32, v: u32 },
    NotAnArc { u: u32, v: u32 },
    MissingPairCert { u: u32, v: u32 },
    WrongSubLevel { expected: u32, found: u32 },
    /// A sub-certificate is not contained in `in(u) & out(v)` of its arc.
    SubCertOutsideWindow { u: u32, v: u32 },
    FlattenedMismatch,
    /// `|vertices| > (r!)^2`.
    TooLarge { size: u32, max: u64 },
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::ZeroLevel => write!(f, "certificate level 0"),
            CertificateError::WrongCliqueSize { level, expected, found } => {
                write!(f, "level-{level} certificate needs a clique of {expected}, found {found}")
            }
            CertificateError::SingletonHasSubCerts => {
                write!(f, "1-mountain carries sub-certificates")
            }
            CertificateError::PairNotAdjacent { u, v } => {
                write!(f, "clique pair ({u}, {v}) is non-adjacent")
            }
            CertificateError::NotAnArc { u, v } => {
                write!(f, "certificate oriented along missing arc ({u}, {v})")
            }
            CertificateError::MissingPairCert { u, v } => {
                write!(f, "no certificate for clique pair ({u}, {v})")
            }
            CertificateError::WrongSubLevel { expected, found } => {
                write!(f, "sub-certificate level {found}, expected {expected}")
            }
            CertificateError::SubCertOutsideWindow { u, v } => {
                write!(f, "sub-certificate for ({u}, {v}) leaves in({u}) & out({v})")
            }
            CertificateError::FlattenedMismatch => {
                write!(f, "flattened vertex set does not match the union")
            }
            CertificateError::TooLarge { size, max } => {
                write!(f, "{size} vertices exceeds the (r!)^2 bound {max}")
            }
        }
    }
}

fn factorial_squared(r: u32) -> u64 {
    let mut f: u64 = 1;
    for i in 2..=r as u64 {
        f = f.saturating_mul(i);
    }
    f.saturating_mul(f)
}

/// Re-validates a certificate bottom-up against `d`: clique size, pair
/// adjacency, per-pair containment in the arc's window, the flattened
/// union, and the `(r!)^2` size bound.
pub fn check_mountain(d: &Digraph, cert: &MountainCertificate) -> Result<(), CertificateError> {
    let r = cert.r;
    if r == 0 {
        return Err(CertificateError::ZeroLevel);
    }
    if r == 1 {
        if cert.clique.len() != 1 {
            return Err(CertificateError::WrongCliqueSize {
                level: 1,
                expected: 1,
                found: cert.clique.len(),
            });
        }
        if !cert.pair_certs.is_empty() {
            return Err(CertificateError::SingletonHasSubCerts);
        }
        if cert.vertices != cert.clique {
            return Err(CertificateError::FlattenedMismatch);
        }
        return Ok(());
    }
    if cert.clique.len() != r {
        return Err(CertificateError::WrongCliqueSize {
            level: r,
            expected: r,
            found: cert.clique.len(),
        });
    }
    let members: Vec<u32> = cert.clique.iter().collect();
    let mut flattened = cert.clique.clone();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let (u, v) = if d.has_arc(a, b) {
                (a, b)
            } else if d.has_arc(b, a) {
                (b, a)
            } else {
                return Err(CertificateError::PairNotAdjacent { u: a, v: b });
            };
            let sub = cert
                .pair_certs
                .iter()
                .find(|(cu, cv, _)| *cu == u && *cv == v)
                .map(|(_, _, c)| c)
                .ok_or(CertificateError::MissingPairCert { u, v })?;
            if sub.r != r - 1 {
                return Err(CertificateError::WrongSubLevel { expected: r - 1, found: sub.r });
            }
            let window = d.in_neighbors(u).intersection(d.out_neighbors(v));
            if !sub.vertices.is_subset_of(&window) {
                return Err(CertificateError::SubCertOutsideWindow { u, v });
            }
            check_mountain(d, sub)?;
            flattened.union_with(&sub.vertices);
        }
    }
    for (u, v, _) in &cert.pair_certs {
        if !d.has_arc(*u, *v) {
            return Err(CertificateError::NotAnArc { u: *u, v: *v });
        }
    }
    if flattened != cert.vertices {
        return Err(CertificateError::FlattenedMismatch);
    }
    let max = factorial_squared(r);
    if cert.vertices.len() as u64 > max {
        return Err(CertificateError::TooLarge { size: cert.vertices.len(), max });
    }
    Ok(())
}

/// Tests whether the arc `u -> v` is r-thick, returning a certificate
/// (an r-mountain inside `in(u) & out(v)`) when it is.
pub fn is_r_thick(
    d: &Digraph,
    u: u32,
    v: u32,
    r: u32,
    cfg: &DetectConfig,
) -> Result<Option<MountainCertificate>, StructureError> {
    if u >= d.n() {
        return Err(GraphError::OutOfRange { v: u, n: d.n() }.into());
    }
    if v >= d.n() {
        return Err(GraphError::OutOfRange { v, n: d.n() }.into());
    }
    if r == 0 {
        return Err(StructureError::ZeroParameter);
    }
    if r > cfg.thick_level_cap {
        return Err(StructureError::CapExceeded {
            what: "thickness level",
            value: r,
            cap: cfg.thick_level_cap,
        });
    }
    if !d.has_arc(u, v) {
        return Err(StructureError::NotAnArc { u, v });
    }
    thickness_certificate(d, u, v, r, cfg)
}

/// Uncapped inner thickness test: the window of arc `u -> v` is the set of
/// vertices seeing `u` and seen by `v`.
fn thickness_certificate(
    d: &Digraph,
    u: u32,
    v: u32,
    r: u32,
    cfg: &DetectConfig,
) -> Result<Option<MountainCertificate>, StructureError> {
    let window = d.in_neighbors(u).intersection(d.out_neighbors(v));
    let (sub, map) = d.induced(&window);
    Ok(find_mountain(&sub, r, cfg)?.map(|c| c.relabel(&map, d.n())))
}

/// Searches for an (r,s)-clique: `s` vertices pairwise joined by r-thick
/// arcs, with one certificate per pair. The lexicographically least such
/// vertex set is returned.
pub fn find_rs_clique(
    d: &Digraph,
    r: u32,
    s: u32,
    cfg: &DetectConfig,
) -> Result<Option<(VertexSet, Vec<(u32, u32, MountainCertificate)>)>, StructureError> {
    if r == 0 || s == 0 {
        return Err(StructureError::ZeroParameter);
    }
    if r > cfg.clique_level_cap {
        return Err(StructureError::CapExceeded {
            what: "clique thickness level",
            value: r,
            cap: cfg.clique_level_cap,
        });
    }
    if s > cfg.clique_size_cap {
        return Err(StructureError::CapExceeded {
            what: "clique size",
            value: s,
            cap: cfg.clique_size_cap,
        });
    }
    if d.n() < s {
        return Ok(None);
    }
    // Thickness of each candidate arc is evaluated lazily and memoized:
    // None in the map means "tested, not thick".
    let mut memo: alloc::collections::BTreeMap<(u32, u32), Option<MountainCertificate>> =
        alloc::collections::BTreeMap::new();
    let mut chosen: Vec<u32> = Vec::with_capacity(s as usize);
    if clique_search(d, r, s, 0, &mut chosen, &mut memo, cfg)? {
        let set = VertexSet::from_members(d.n(), chosen.iter().copied());
        let mut certs = Vec::new();
        for (i, &a) in chosen.iter().enumerate() {
            for &b in &chosen[i + 1..] {
                let (u, v) = if d.has_arc(a, b) { (a, b) } else { (b, a) };
                let cert = memo.get(&(u, v)).and_then(|c| c.clone()).expect("verified pair");
                certs.push((u, v, cert));
            }
        }
        Ok(Some((set, certs)))
    } else {
        Ok(None)
    }
}

fn clique_search(
    d: &Digraph,
    r: u32,
    s: u32,
    from: u32,
    chosen: &mut Vec<u32>,
    memo: &mut alloc::collections::BTreeMap<(u32, u32), Option<MountainCertificate>>,
    cfg: &DetectConfig,
) -> Result<bool, StructureError> {
    if chosen.len() == s as usize {
        return Ok(true);
    }
    let remaining = s as usize - chosen.len();
    for w in from..d.n() {
        if (d.n() - w) < remaining as u32 {
            break;
        }
        let mut joined = true;
        for &a in chosen.iter() {
            let (u, v) = if d.has_arc(a, w) {
                (a, w)
            } else if d.has_arc(w, a) {
                (w, a)
            } else {
                joined = false;
                break;
            };
            if !memo.contains_key(&(u, v)) {
                let cert = thickness_certificate(d, u, v, r, cfg)?;
                memo.insert((u, v), cert);
            }
            if memo[&(u, v)].is_none() {
                joined = false;
                break;
            }
        }
        if joined {
            chosen.push(w);
            if clique_search(d, r, s, w + 1, chosen, memo, cfg)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}

/// Searches for an r-mountain of `d`.
///
/// A 1-mountain is any vertex (the least is returned); for `r >= 2` the
/// search looks for an (r-1,r)-clique and flattens it with its
/// certificates.
pub fn find_mountain(
    d: &Digraph,
    r: u32,
    cfg: &DetectConfig,
) -> Result<Option<MountainCertificate>, StructureError> {
    if r == 0 {
        return Err(StructureError::ZeroParameter);
    }
    if r > cfg.mountain_level_cap {
        return Err(StructureError::CapExceeded {
            what: "mountain level",
            value: r,
            cap: cfg.mountain_level_cap,
        });
    }
    if r == 1 {
        return Ok(if d.n() > 0 { Some(MountainCertificate::single(d.n(), 0)) } else { None });
    }
    match find_rs_clique(d, r - 1, r, cfg)? {
        None => Ok(None),
        Some((clique, pair_certs)) => {
            let mut vertices = clique.clone();
            for (_, _, c) in &pair_certs {
                vertices.union_with(&c.vertices);
            }
            Ok(Some(MountainCertificate { r, clique, pair_certs, vertices }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Digraph {
        Digraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn transitive_tournaments() {
        assert_eq!(transitive_tournament(0), Err(StructureError::ZeroParameter));
        let t1 = transitive_tournament(1).unwrap();
        assert_eq!((t1.n(), t1.arc_count()), (1, 0));
        let t3 = transitive_tournament(3).unwrap();
        assert!(t3.is_acyclic());
        assert_eq!(t3.arc_count(), 3);
    }

    #[test]
    fn arrow_composition() {
        let t1 = transitive_tournament(1).unwrap();
        let t2 = compose_arrow(&t1, &t1);
        assert_eq!((t2.n(), t2.arc_count()), (2, 1));
        assert!(t2.has_arc(0, 1));

        let d = compose_arrow(&c3(), &c3());
        assert_eq!((d.n(), d.arc_count()), (6, 15));

        // T_a => T_b is the transitive tournament on a+b vertices
        let t5 = compose_arrow(&transitive_tournament(2).unwrap(), &transitive_tournament(3).unwrap());
        assert_eq!(t5, transitive_tournament(5).unwrap());
    }

    #[test]
    fn delta_composition() {
        let t1 = transitive_tournament(1).unwrap();
        let tri = compose_delta(&t1, &t1, &t1);
        assert_eq!(tri, c3());

        let d = compose_delta(&c3(), &t1, &t1);
        assert_eq!(d.n(), 5);
        // a tournament: every pair adjacent
        assert_eq!(d.arc_count() as usize, 5 * 4 / 2);
    }

    #[test]
    fn thickness_on_c3() {
        let cfg = DetectConfig::default();
        let cert = is_r_thick(&c3(), 0, 1, 1, &cfg).unwrap().unwrap();
        assert_eq!(cert.vertices().iter().collect::<Vec<_>>(), vec![2]);
        check_mountain(&c3(), &cert).unwrap();

        // single arc: window empty
        let arc = Digraph::new(2, &[(0, 1)]).unwrap();
        assert!(is_r_thick(&arc, 0, 1, 1, &cfg).unwrap().is_none());

        assert_eq!(is_r_thick(&c3(), 1, 0, 1, &cfg), Err(StructureError::NotAnArc { u: 1, v: 0 }));
        assert!(matches!(
            is_r_thick(&c3(), 0, 1, 9, &cfg),
            Err(StructureError::CapExceeded { .. })
        ));
    }

    #[test]
    fn thickness_vanishes_on_acyclic_digraphs() {
        // a thick arc closes a directed triangle, so no arc of a
        // transitive tournament is thick at any level
        let cfg = DetectConfig::default();
        let t5 = transitive_tournament(5).unwrap();
        for (u, v) in t5.arcs() {
            assert!(is_r_thick(&t5, u, v, 1, &cfg).unwrap().is_none());
        }
        assert!(find_rs_clique(&t5, 1, 2, &cfg).unwrap().is_none());
    }

    #[test]
    fn rs_cliques() {
        let cfg = DetectConfig::default();
        // s = 1: vacuous pair condition, least vertex
        let (s1, certs) = find_rs_clique(&c3(), 1, 1, &cfg).unwrap().unwrap();
        assert_eq!(s1.iter().collect::<Vec<_>>(), vec![0]);
        assert!(certs.is_empty());

        // any arc of C3 is 1-thick
        let (s2, certs) = find_rs_clique(&c3(), 1, 2, &cfg).unwrap().unwrap();
        assert_eq!(s2.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(certs.len(), 1);

        assert!(matches!(
            find_rs_clique(&c3(), 1, 9, &cfg),
            Err(StructureError::CapExceeded { .. })
        ));
    }

    #[test]
    fn mountains() {
        let cfg = DetectConfig::default();
        let m1 = find_mountain(&c3(), 1, &cfg).unwrap().unwrap();
        assert_eq!(m1.vertices().iter().collect::<Vec<_>>(), vec![0]);
        check_mountain(&c3(), &m1).unwrap();

        // C3 is a 2-mountain: a (1,2)-clique plus the third vertex
        let m2 = find_mountain(&c3(), 2, &cfg).unwrap().unwrap();
        assert_eq!(m2.vertices().len(), 3);
        check_mountain(&c3(), &m2).unwrap();

        // no C3 means no 2-mountain
        assert!(find_mountain(&transitive_tournament(6).unwrap(), 2, &cfg).unwrap().is_none());

        assert!(find_mountain(&Digraph::new(0, &[]).unwrap(), 1, &cfg).unwrap().is_none());
    }

    #[test]
    fn checker_rejects_mutants() {
        let cfg = DetectConfig::default();
        let m2 = find_mountain(&c3(), 2, &cfg).unwrap().unwrap();

        let mut wrong_level = m2.clone();
        wrong_level.r = 3;
        assert!(check_mountain(&c3(), &wrong_level).is_err());

        let mut wrong_flat = m2.clone();
        wrong_flat.vertices = VertexSet::singleton(3, 0);
        assert_eq!(check_mountain(&c3(), &wrong_flat), Err(CertificateError::FlattenedMismatch));

        let mut no_certs = m2;
        no_certs.pair_certs.clear();
        assert!(matches!(
            check_mountain(&c3(), &no_certs),
            Err(CertificateError::MissingPairCert { .. })
        ));
    }
}
