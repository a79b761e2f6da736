//! Exact, desk-scale reference solvers.
//!
//! These are exponential-time searches used to validate everything the
//! fast code claims: dichromatic number by iterative deepening,
//! independence number and largest acyclic set by branch and bound,
//! induced-subgraph search, and t-locality. Every search is metered by a
//! node budget; exhausting it yields an explicit [`OracleError::BudgetExhausted`],
//! never a wrong number.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::digraph::{Acyclicity, Digraph, VertexSet};

/// An assignment of one color to every vertex, with color ids contiguous
/// from zero.
///
/// Validity (every color class inducing an acyclic subgraph) is a property
/// of a coloring *against a digraph* and is checked by [`verify_coloring`],
/// not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    num_colors: u32,
}

/// Defects in the shape of a coloring (not its validity).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringDefect {
    /// Color `c` is never used although some color above it is.
    SkippedColor { c: u32 },
}

impl fmt::Display for ColoringDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ColoringDefect::SkippedColor { c } => write!(f, "color {c} is skipped"),
        }
    }
}

impl Coloring {
    /// Wraps a per-vertex color vector, requiring the used colors to be
    /// exactly `0..k` for some `k`.
    pub fn new(colors: Vec<u32>) -> Result<Self, ColoringDefect> {
        let num_colors = colors.iter().copied().max().map_or(0, |c| c + 1);
        let mut used = vec![false; num_colors as usize];
        for &c in &colors {
            used[c as usize] = true;
        }
        if let Some(c) = used.iter().position(|&u| !u) {
            return Err(ColoringDefect::SkippedColor { c: c as u32 });
        }
        Ok(Coloring { colors, num_colors })
    }

    /// All of `n` vertices in one class (zero classes when `n == 0`).
    pub fn monochrome(n: u32) -> Self {
        Coloring { colors: vec![0; n as usize], num_colors: if n == 0 { 0 } else { 1 } }
    }

    pub fn color(&self, v: u32) -> u32 {
        self.colors[v as usize]
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.colors
    }

    /// The vertices of one color class.
    pub fn class(&self, c: u32, n: u32) -> VertexSet {
        let mut s = VertexSet::new(n);
        for (v, &cv) in self.colors.iter().enumerate() {
            if cv == c {
                s.insert(v as u32);
            }
        }
        s
    }
}

/// Outcome of checking a coloring against a digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringCheck {
    Valid,
    /// Some color class induces a directed cycle; the first offending class
    /// (by color id) and its cycle witness.
    Invalid { color: u32, cycle: Vec<u32> },
}

impl ColoringCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ColoringCheck::Valid)
    }
}

/// The coloring does not cover the digraph's vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UncoloredVertex {
    pub expected: u32,
    pub found: u32,
}

impl fmt::Display for UncoloredVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coloring covers {} vertices, digraph has {}", self.found, self.expected)
    }
}

/// Checks that every color class of `c` induces an acyclic subgraph of `d`.
pub fn verify_coloring(d: &Digraph, c: &Coloring) -> Result<ColoringCheck, UncoloredVertex> {
    if c.len() != d.n() as usize {
        return Err(UncoloredVertex { expected: d.n(), found: c.len() as u32 });
    }
    for color in 0..c.num_colors() {
        let class = c.class(color, d.n());
        let (sub, map) = d.induced(&class);
        if let Acyclicity::Cyclic { cycle } = sub.acyclicity() {
            let cycle = cycle.into_iter().map(|v| map[v as usize]).collect();
            return Ok(ColoringCheck::Invalid { color, cycle });
        }
    }
    Ok(ColoringCheck::Valid)
}

/// Search limits for the exact solvers.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Maximum number of search nodes per call.
    pub node_budget: u64,
    /// Largest pattern accepted by [`find_induced_copy`].
    pub pattern_cap: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { node_budget: 10_000_000, pattern_cap: 8 }
    }
}

/// Why an oracle call could not produce an answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    /// The search was cut off; the instance is undecided at this budget.
    BudgetExhausted { explored: u64 },
    /// The pattern digraph exceeds the configured size cap.
    PatternTooLarge { size: u32, cap: u32 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OracleError::BudgetExhausted { explored } => {
                write!(f, "undecided at budget: {explored} search nodes explored")
            }
            OracleError::PatternTooLarge { size, cap } => {
                write!(f, "pattern on {size} vertices exceeds cap {cap}")
            }
        }
    }
}

/// An exact value with its certifying witness and search-effort telemetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult<W> {
    pub value: u32,
    pub witness: W,
    pub explored: u64,
}

struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    fn new(limit: u64) -> Self {
        Meter { used: 0, limit }
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.used += 1;
        if self.used > self.limit {
            Err(OracleError::BudgetExhausted { explored: self.used })
        } else {
            Ok(())
        }
    }
}

/// One color class under construction, kept acyclic incrementally.
///
/// `reach[u]` is the set of vertices reachable from `u` by a nonempty
/// directed path inside the class; rows are maintained as a full closure so
/// that inserting a vertex is a pure set computation and never re-walks the
/// class.
struct AcyclicClass {
    members: VertexSet,
    reach: Vec<VertexSet>,
}

struct ClassUndo {
    v: u32,
    rows: Vec<(u32, VertexSet)>,
}

impl AcyclicClass {
    fn new(n: u32) -> Self {
        AcyclicClass {
            members: VertexSet::new(n),
            reach: (0..n).map(|_| VertexSet::new(n)).collect(),
        }
    }

    /// Inserts `v` if the class stays acyclic, returning undo state;
    /// `None` means inserting `v` would close a directed cycle.
    fn try_insert(&mut self, d: &Digraph, v: u32) -> Option<ClassUndo> {
        let succs = d.out_neighbors(v).intersection(&self.members);
        let preds = d.in_neighbors(v).intersection(&self.members);
        let mut down = succs.clone();
        for w in succs.iter() {
            down.union_with(&self.reach[w as usize]);
        }
        if !down.is_disjoint(&preds) {
            return None; // v -> .. -> p -> v would be a cycle
        }
        let mut add = down.clone();
        add.insert(v);
        let mut rows = Vec::new();
        for u in self.members.iter() {
            if preds.contains(u) || !self.reach[u as usize].is_disjoint(&preds) {
                rows.push((u, self.reach[u as usize].clone()));
                self.reach[u as usize].union_with(&add);
            }
        }
        self.reach[v as usize] = down;
        self.members.insert(v);
        Some(ClassUndo { v, rows })
    }

    fn undo(&mut self, undo: ClassUndo) {
        self.members.remove(undo.v);
        self.reach[undo.v as usize] = VertexSet::new(self.members.capacity());
        for (u, row) in undo.rows {
            self.reach[u as usize] = row;
        }
    }
}

/// Exact dichromatic number with an optimal witness coloring.
///
/// Iterative deepening over `k = 1, 2, ..`; within a depth, vertices are
/// colored in index order with vertex 0 pinned to color 0 and new colors
/// introduced in increasing order, so the witness is deterministic.
pub fn dichromatic_number(
    d: &Digraph,
    cfg: &OracleConfig,
) -> Result<OracleResult<Coloring>, OracleError> {
    if d.n() == 0 {
        return Ok(OracleResult { value: 0, witness: Coloring::monochrome(0), explored: 0 });
    }
    let mut meter = Meter::new(cfg.node_budget);
    for k in 1..=d.n() {
        let mut classes: Vec<AcyclicClass> = (0..k).map(|_| AcyclicClass::new(d.n())).collect();
        let mut assignment = vec![0u32; d.n() as usize];
        if color_search(d, 0, k, 0, &mut classes, &mut assignment, &mut meter)? {
            let witness = Coloring::new(assignment).expect("search introduces colors in order");
            return Ok(OracleResult { value: k, witness, explored: meter.used });
        }
    }
    unreachable!("k = n always admits a coloring")
}

fn color_search(
    d: &Digraph,
    v: u32,
    k: u32,
    introduced: u32,
    classes: &mut [AcyclicClass],
    assignment: &mut [u32],
    meter: &mut Meter,
) -> Result<bool, OracleError> {
    if v == d.n() {
        return Ok(true);
    }
    let cap = (introduced + 1).min(k);
    for c in 0..cap {
        meter.tick()?;
        if let Some(undo) = classes[c as usize].try_insert(d, v) {
            assignment[v as usize] = c;
            let introduced = introduced.max(c + 1);
            if color_search(d, v + 1, k, introduced, classes, assignment, meter)? {
                return Ok(true);
            }
            classes[c as usize].undo(undo);
        }
    }
    Ok(false)
}

/// Exact independence number of the underlying graph, by branch and bound
/// over a candidate bitset.
pub fn independence_number(
    d: &Digraph,
    cfg: &OracleConfig,
) -> Result<OracleResult<VertexSet>, OracleError> {
    let n = d.n();
    let adjacent: Vec<VertexSet> = (0..n).map(|v| d.neighbors(v)).collect();
    let mut meter = Meter::new(cfg.node_budget);
    let mut best = VertexSet::new(n);
    let mut cur = VertexSet::new(n);
    mis_search(&adjacent, VertexSet::full(n), &mut cur, &mut best, &mut meter)?;
    Ok(OracleResult { value: best.len(), witness: best, explored: meter.used })
}

fn mis_search(
    adjacent: &[VertexSet],
    cand: VertexSet,
    cur: &mut VertexSet,
    best: &mut VertexSet,
    meter: &mut Meter,
) -> Result<(), OracleError> {
    meter.tick()?;
    if cur.len() + cand.len() <= best.len() {
        return Ok(());
    }
    let Some(v) = cand.first() else {
        *best = cur.clone(); // strictly larger, by the bound above
        return Ok(());
    };
    // include v
    let mut with_v = cand.difference(&adjacent[v as usize]);
    with_v.remove(v);
    cur.insert(v);
    mis_search(adjacent, with_v, cur, best, meter)?;
    cur.remove(v);
    // exclude v
    let mut without_v = cand;
    without_v.remove(v);
    mis_search(adjacent, without_v, cur, best, meter)
}

/// Largest acyclic vertex subset (beta), by branch and bound with the
/// incremental acyclic-class structure.
pub fn max_acyclic_set(
    d: &Digraph,
    cfg: &OracleConfig,
) -> Result<OracleResult<VertexSet>, OracleError> {
    let mut meter = Meter::new(cfg.node_budget);
    let mut class = AcyclicClass::new(d.n());
    let mut best = VertexSet::new(d.n());
    beta_search(d, 0, &mut class, &mut best, &mut meter)?;
    Ok(OracleResult { value: best.len(), witness: best, explored: meter.used })
}

fn beta_search(
    d: &Digraph,
    v: u32,
    class: &mut AcyclicClass,
    best: &mut VertexSet,
    meter: &mut Meter,
) -> Result<(), OracleError> {
    meter.tick()?;
    if class.members.len() + (d.n() - v) <= best.len() {
        return Ok(());
    }
    if v == d.n() {
        *best = class.members.clone();
        return Ok(());
    }
    if let Some(undo) = class.try_insert(d, v) {
        beta_search(d, v + 1, class, best, meter)?;
        class.undo(undo);
    }
    beta_search(d, v + 1, class, best, meter)
}

/// Searches for an induced copy of `h` in `d`: an injection preserving
/// arcs *and* non-adjacency exactly. Vertices of `h` are mapped in index
/// order to the least feasible targets, so the result is deterministic.
pub fn find_induced_copy(
    d: &Digraph,
    h: &Digraph,
    cfg: &OracleConfig,
) -> Result<Option<Vec<u32>>, OracleError> {
    if h.n() > cfg.pattern_cap {
        return Err(OracleError::PatternTooLarge { size: h.n(), cap: cfg.pattern_cap });
    }
    let mut map = Vec::with_capacity(h.n() as usize);
    if embed(d, h, &mut map) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn embed(d: &Digraph, h: &Digraph, map: &mut Vec<u32>) -> bool {
    let i = map.len() as u32;
    if i == h.n() {
        return true;
    }
    'targets: for u in 0..d.n() {
        if map.contains(&u) {
            continue;
        }
        for (j, &w) in map.iter().enumerate() {
            let j = j as u32;
            if d.has_arc(w, u) != h.has_arc(j, i) || d.has_arc(u, w) != h.has_arc(i, j) {
                continue 'targets;
            }
        }
        map.push(u);
        if embed(d, h, map) {
            return true;
        }
        map.pop();
    }
    false
}

/// Outcome of a t-locality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TLocalCheck {
    Holds,
    /// `vertex` has an out-neighborhood of dichromatic number `chi > t`.
    Violated { vertex: u32, chi: u32 },
}

impl TLocalCheck {
    pub fn holds(&self) -> bool {
        matches!(self, TLocalCheck::Holds)
    }
}

/// Checks whether every out-neighborhood has dichromatic number at most
/// `t`. The node budget applies per neighborhood.
pub fn is_t_local(d: &Digraph, t: u32, cfg: &OracleConfig) -> Result<TLocalCheck, OracleError> {
    for v in 0..d.n() {
        let (sub, _) = d.induced(d.out_neighbors(v));
        let r = dichromatic_number(&sub, cfg)?;
        if r.value > t {
            return Ok(TLocalCheck::Violated { vertex: v, chi: r.value });
        }
    }
    Ok(TLocalCheck::Holds)
}
