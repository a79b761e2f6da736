//! Dominating-set constructions.
//!
//! A set dominates when every outside vertex is seen by some member.
//! Three nested constructions: acyclic digraphs get a *stable* dominating
//! set (peel a source, recurse on its non-neighbors); arbitrary digraphs
//! get an *acyclic* dominating set (pick a vertex, recurse away from its
//! out-neighbors); and triangle-free digraphs get a small out-quasi
//! dominating set `Y` with `V = Y + No(Y) + N+(Y)`, obtained by stabilizing
//! an acyclic dominating set.

use crate::coloring::ColorError;
use crate::digraph::{Acyclicity, Digraph, VertexSet};

/// A dominating set of an acyclic digraph that is also stable, hence of
/// size at most the independence number.
///
/// Construction: take the least source `v` (no in-neighbors), recurse on
/// the subgraph induced by `No(v)`, add `v`.
pub fn stable_dominating_set(d: &Digraph) -> Result<VertexSet, ColorError> {
    if let Acyclicity::Cyclic { cycle } = d.acyclicity() {
        return Err(ColorError::NotAcyclic { cycle });
    }
    Ok(stable_rec(d, &VertexSet::full(d.n())))
}

fn stable_rec(d: &Digraph, within: &VertexSet) -> VertexSet {
    if within.is_empty() {
        return VertexSet::new(d.n());
    }
    let v = within
        .iter()
        .find(|&v| d.in_neighbors(v).first_common(within).is_none())
        .expect("acyclic induced subgraph has a source");
    let rest = d.non_neighbors(v).intersection(within);
    let mut s = stable_rec(d, &rest);
    s.insert(v);
    s
}

/// A dominating set inducing an acyclic subgraph. Defined for every
/// digraph.
///
/// Construction: take the least vertex `v`, recurse on
/// `No(v) + N-(v)`, add `v`; `v` sees nothing in the recursive set, so
/// acyclicity is preserved.
pub fn acyclic_dominating_set(d: &Digraph) -> VertexSet {
    acyclic_rec(d, &VertexSet::full(d.n()))
}

fn acyclic_rec(d: &Digraph, within: &VertexSet) -> VertexSet {
    let Some(v) = within.first() else {
        return VertexSet::new(d.n());
    };
    let mut rest = d.non_neighbors(v).union(d.in_neighbors(v));
    rest.intersect_with(within);
    let mut s = acyclic_rec(d, &rest);
    s.insert(v);
    s
}

/// A set `Y` with `|Y| <= alpha(D)` and `V(D) = Y + No(Y) + N+(Y)`:
/// every vertex is in `Y`, non-adjacent to some member, or seen by some
/// member. Requires a triangle-free input (checked; the witness triangle
/// is returned otherwise).
pub fn out_quasi_dominating_set(d: &Digraph) -> Result<VertexSet, ColorError> {
    if let Some(triangle) = d.find_directed_triangle() {
        return Err(ColorError::ContainsTriangle { triangle });
    }
    Ok(quasi_dominating_unchecked(d))
}

/// Inner construction, sound whenever `d` is triangle-free: stabilize an
/// acyclic dominating set.
pub(crate) fn quasi_dominating_unchecked(d: &Digraph) -> VertexSet {
    let s = acyclic_dominating_set(d);
    let (sub, map) = d.induced(&s);
    let y_local = stable_rec(&sub, &VertexSet::full(sub.n()));
    VertexSet::from_members(d.n(), y_local.iter().map(|v| map[v as usize]))
}

/// True iff every vertex outside `s` is seen by some member of `s`.
pub(crate) fn dominates(d: &Digraph, s: &VertexSet) -> bool {
    s.complement().iter().all(|v| d.in_neighbors(v).first_common(s).is_some())
}

/// True iff no two members of `s` are adjacent.
pub(crate) fn is_stable(d: &Digraph, s: &VertexSet) -> bool {
    s.iter().all(|v| d.neighbors(v).first_common(s).is_none())
}

/// The quasi-domination identity: `V = Y + No(Y) + N+(Y)`.
pub(crate) fn quasi_dominates(d: &Digraph, y: &VertexSet) -> bool {
    let mut covered = y.clone();
    for v in y.iter() {
        covered.union_with(&d.non_neighbors(v));
        covered.union_with(d.out_neighbors(v));
    }
    covered == VertexSet::full(d.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{independence_number, OracleConfig};
    use crate::structure::transitive_tournament;
    use alloc::vec::Vec;

    fn c3() -> Digraph {
        Digraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn stable_dominating_examples() {
        let single = Digraph::new(1, &[]).unwrap();
        let s = stable_dominating_set(&single).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0]);

        let t5 = transitive_tournament(5).unwrap();
        let s = stable_dominating_set(&t5).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0]);

        let path = Digraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = stable_dominating_set(&path).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert!(dominates(&path, &s) && is_stable(&path, &s));

        assert!(matches!(stable_dominating_set(&c3()), Err(ColorError::NotAcyclic { .. })));
    }

    #[test]
    fn stable_dominating_size_bound() {
        let cfg = OracleConfig::default();
        let path = Digraph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let s = stable_dominating_set(&path).unwrap();
        let alpha = independence_number(&path, &cfg).unwrap().value;
        assert!(s.len() <= alpha);
    }

    #[test]
    fn acyclic_dominating_examples() {
        let d = c3();
        let s = acyclic_dominating_set(&d);
        assert!(dominates(&d, &s));
        let (sub, _) = d.induced(&s);
        assert!(sub.is_acyclic());

        // a cyclic tournament: 5-cycle completed arbitrarily
        let t = Digraph::new(4, &[(0, 1), (1, 2), (2, 0), (3, 0), (1, 3), (2, 3)]).unwrap();
        let s = acyclic_dominating_set(&t);
        assert!(dominates(&t, &s));
        let (sub, _) = t.induced(&s);
        assert!(sub.is_acyclic());

        // acyclic input: still dominating and acyclic
        let t4 = transitive_tournament(4).unwrap();
        let s = acyclic_dominating_set(&t4);
        assert!(dominates(&t4, &s));
    }

    #[test]
    fn quasi_dominating_examples() {
        let single = Digraph::new(1, &[]).unwrap();
        let y = out_quasi_dominating_set(&single).unwrap();
        assert_eq!(y.iter().collect::<Vec<_>>(), vec![0]);

        let t3 = transitive_tournament(3).unwrap();
        let y = out_quasi_dominating_set(&t3).unwrap();
        assert!(quasi_dominates(&t3, &y));
        assert!(is_stable(&t3, &y));

        assert_eq!(
            out_quasi_dominating_set(&c3()),
            Err(ColorError::ContainsTriangle { triangle: (0, 1, 2) })
        );
    }
}
