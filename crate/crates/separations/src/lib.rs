//! Directed separations: construction, order, uncrossing and range separations.

use graph_core::{reach, Digraph, VertexSet};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SepError {
    #[error("sides do not cover the vertex set (missing {0})")]
    Cover(usize),
    #[error("edge {0}->{1} runs from the bottom to the top side")]
    BottomToTop(usize, usize),
    #[error("vertex {0} lies both in the separator and in the range sources")]
    SourceInSeparator(usize),
}

/// A pair `(a -> b)` with `a ∪ b = V` and no edge from `b∖a` into `a∖b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Separation {
    a: VertexSet,
    b: VertexSet,
}

impl Separation {
    /// Builds a separation without checking it. Callers are expected to
    /// validate later (e.g. through [`make_separation`] or an S-DAG report).
    pub fn new_unchecked(a: VertexSet, b: VertexSet) -> Self {
        Separation { a, b }
    }

    /// `(∅ -> V)`, the least separation.
    pub fn minimum(n: usize) -> Self {
        Separation { a: VertexSet::new(), b: VertexSet::full(n) }
    }

    /// `(V -> ∅)`, the greatest separation.
    pub fn maximum(n: usize) -> Self {
        Separation { a: VertexSet::full(n), b: VertexSet::new() }
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    pub fn top(&self) -> VertexSet {
        self.a.difference(&self.b)
    }

    pub fn separator(&self) -> VertexSet {
        self.a.intersection(&self.b)
    }

    pub fn bottom(&self) -> VertexSet {
        self.b.difference(&self.a)
    }

    pub fn order(&self) -> usize {
        self.separator().len()
    }

    /// Re-checks the invariants against `d`.
    pub fn validate(&self, d: &Digraph) -> Result<(), SepError> {
        if let Some(v) = VertexSet::full(d.vertex_count()).difference(&self.a.union(&self.b)).first() {
            return Err(SepError::Cover(v));
        }
        let top = self.top();
        for u in &self.bottom() {
            if let Some(v) = d.successors(u).intersection(&top).first() {
                return Err(SepError::BottomToTop(u, v));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} -> {})", self.a, self.b)
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn make_separation(d: &Digraph, a: VertexSet, b: VertexSet) -> Result<Separation, SepError> {
    let s = Separation { a, b };
    s.validate(d)?;
    Ok(s)
}

pub fn sep_leq(s1: &Separation, s2: &Separation) -> bool {
    s1.a.is_subset(&s2.a) && s1.b.is_superset(&s2.b)
}

pub fn crosses(s1: &Separation, s2: &Separation) -> bool {
    !sep_leq(s1, s2) && !sep_leq(s2, s1)
}

/// Lower uncrossing `(a1∩a2 -> b1∪b2)`.
pub fn meet(s1: &Separation, s2: &Separation) -> Separation {
    Separation { a: s1.a.intersection(&s2.a), b: s1.b.union(&s2.b) }
}

/// Upper uncrossing `(a1∪a2 -> b1∩b2)`.
pub fn join(s1: &Separation, s2: &Separation) -> Separation {
    Separation { a: s1.a.union(&s2.a), b: s1.b.intersection(&s2.b) }
}

/// Meet of all given separations; `(V -> ∅)` for an empty input.
pub fn meet_all<'a>(n: usize, seps: impl IntoIterator<Item = &'a Separation>) -> Separation {
    seps.into_iter().fold(Separation::maximum(n), |acc, s| meet(&acc, s))
}

/// Join of all given separations; `(∅ -> V)` for an empty input.
pub fn join_all<'a>(n: usize, seps: impl IntoIterator<Item = &'a Separation>) -> Separation {
    seps.into_iter().fold(Separation::minimum(n), |acc, s| join(&acc, s))
}

/// `(V ∖ R -> s ∪ R)` with `R = Reach_{D∖s}(x)`.
pub fn range_sep(d: &Digraph, s: &VertexSet, x: &VertexSet) -> Result<Separation, SepError> {
    if let Some(v) = s.intersection(x).first() {
        return Err(SepError::SourceInSeparator(v));
    }
    let r = reach(d, s, x).expect("sources are disjoint from the separator");
    Ok(Separation { a: VertexSet::full(d.vertex_count()).difference(&r), b: s.union(&r) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn vs(x: &[usize]) -> VertexSet {
        VertexSet::from_slice(x)
    }

    #[test]
    fn construction() {
        let d = c3();
        let s = make_separation(&d, vs(&[1, 2]), vs(&[0, 1])).unwrap();
        assert_eq!((s.top(), s.separator(), s.bottom()), (vs(&[2]), vs(&[1]), vs(&[0])));
        assert_eq!(s.order(), 1);
        assert!(make_separation(&d, vs(&[]), vs(&[0, 1, 2])).is_ok());
        assert_eq!(make_separation(&d, vs(&[2]), vs(&[0, 1])), Err(SepError::BottomToTop(1, 2)));
        assert_eq!(make_separation(&d, vs(&[2]), vs(&[0])), Err(SepError::Cover(1)));
    }

    #[test]
    fn order_and_crossing() {
        let d = c3();
        let s = range_sep(&d, &vs(&[1]), &vs(&[0])).unwrap();
        assert!(sep_leq(&Separation::minimum(3), &s));
        assert!(sep_leq(&s, &s));
        assert!(!sep_leq(&s, &Separation::minimum(3)));
        assert!(!crosses(&s, &s));
        let e = Digraph::empty(2);
        let s1 = make_separation(&e, vs(&[0]), vs(&[1])).unwrap();
        let s2 = make_separation(&e, vs(&[1]), vs(&[0])).unwrap();
        assert!(crosses(&s1, &s2));
    }

    #[test]
    fn uncrossing_and_range() {
        let d = c3();
        let s1 = range_sep(&d, &vs(&[1]), &vs(&[0])).unwrap();
        assert_eq!(s1, Separation::new_unchecked(vs(&[1, 2]), vs(&[0, 1])));
        let s2 = range_sep(&d, &vs(&[1]), &vs(&[2])).unwrap();
        assert_eq!(s2, Separation::new_unchecked(vs(&[1]), vs(&[0, 1, 2])));
        assert_eq!(meet(&s1, &s2), s2);
        assert_eq!(meet(&s1, &s1), s1);
        assert_eq!(meet(&Separation::minimum(3), &s1), Separation::minimum(3));
        let empty = range_sep(&d, &vs(&[1]), &vs(&[])).unwrap();
        assert_eq!(empty, Separation::new_unchecked(vs(&[0, 1, 2]), vs(&[1])));
        assert!(range_sep(&d, &vs(&[1]), &vs(&[1])).is_err());
    }
}
