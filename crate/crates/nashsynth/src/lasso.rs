//! Lassos (finitely represented ultimately periodic plays) and simple
//! segment decompositions of lassos.

use std::fmt;

use crate::arena::Vertex;

/// A play of the form `prefix · cycle^ω`. The cycle is never empty.
///
/// [`Lasso::new`] canonicalises to the unique minimal representation: the
/// shortest prefix realising the play and the minimal period. Two lassos
/// denote the same play iff they are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    prefix: Vec<Vertex>,
    cycle: Vec<Vertex>,
}

impl Lasso {
    pub fn new(prefix: Vec<Vertex>, cycle: Vec<Vertex>) -> Lasso {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        let mut lasso = Lasso { prefix, cycle };
        lasso.canonicalize();
        lasso
    }

    pub fn prefix(&self) -> &[Vertex] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Vertex] {
        &self.cycle
    }

    /// Vertices at positions `0..prefix.len()+cycle.len()`, covering every
    /// distinct position of the play once.
    pub fn positions(&self) -> Vec<Vertex> {
        let mut out = self.prefix.clone();
        out.extend_from_slice(&self.cycle);
        out
    }

    /// Vertex at play position `pos` (cycle positions wrap around).
    pub fn vertex_at(&self, pos: usize) -> Vertex {
        if pos < self.prefix.len() {
            self.prefix[pos]
        } else {
            self.cycle[(pos - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn first(&self) -> Vertex {
        *self.prefix.first().unwrap_or(&self.cycle[0])
    }

    /// Set of vertices occurring in the play.
    pub fn vertex_set(&self) -> std::collections::BTreeSet<Vertex> {
        self.positions().into_iter().collect()
    }

    /// The play from position `pos` on, as a lasso.
    pub fn suffix_from(&self, pos: usize) -> Lasso {
        if pos <= self.prefix.len() {
            Lasso::new(self.prefix[pos..].to_vec(), self.cycle.clone())
        } else {
            let shift = (pos - self.prefix.len()) % self.cycle.len();
            let mut cycle = self.cycle[shift..].to_vec();
            cycle.extend_from_slice(&self.cycle[..shift]);
            Lasso::new(Vec::new(), cycle)
        }
    }

    /// Whether `prefix · cycle` repeats no vertex.
    pub fn is_simple(&self) -> bool {
        let positions = self.positions();
        let set: std::collections::BTreeSet<_> = positions.iter().collect();
        set.len() == positions.len()
    }

    fn canonicalize(&mut self) {
        // 1. minimal period: the smallest divisor d of |cycle| such that the
        //    cycle is a power of its first d vertices.
        let m = self.cycle.len();
        for d in 1..=m {
            if m % d == 0 && (d..m).all(|i| self.cycle[i] == self.cycle[i - d]) {
                self.cycle.truncate(d);
                break;
            }
        }
        // 2. minimal preperiod: fold matching prefix tail into the cycle.
        while let Some(&last) = self.prefix.last() {
            if last == *self.cycle.last().expect("nonempty") {
                self.prefix.pop();
                let tail = self.cycle.pop().expect("nonempty");
                self.cycle.insert(0, tail);
            } else {
                break;
            }
        }
    }
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |vs: &[Vertex]| {
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}|{}", join(&self.prefix), join(&self.cycle))
    }
}

/// A finite simple segment decomposition of a lasso: simple nontrivial
/// history segments chained endpoint to endpoint, followed by an infinite
/// tail segment which is a simple lasso.
///
/// Consecutive elements share their endpoint: `last(segments[j]) ==
/// first(segments[j+1])` and the first tail vertex equals the last segment
/// endpoint. Concatenating all elements reproduces exactly the decomposed
/// play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub segments: Vec<Vec<Vertex>>,
    pub tail: Lasso,
}

impl Decomposition {
    /// Number of elements: finite segments plus the tail.
    pub fn element_count(&self) -> usize {
        self.segments.len() + 1
    }

    /// Vertices of element `j` (0-based; the last element is the tail).
    pub fn element_vertices(&self, j: usize) -> std::collections::BTreeSet<Vertex> {
        if j < self.segments.len() {
            self.segments[j].iter().copied().collect()
        } else {
            self.tail.vertex_set()
        }
    }

    /// Reconstructs the decomposed play as a canonical lasso.
    pub fn to_lasso(&self) -> Lasso {
        let mut prefix = Vec::new();
        for seg in &self.segments {
            // drop the shared junction vertex
            prefix.extend_from_slice(&seg[..seg.len() - 1]);
        }
        prefix.extend_from_slice(self.tail.prefix());
        Lasso::new(prefix, self.tail.cycle().to_vec())
    }

    /// Structural invariants: segments simple and nontrivial, endpoints
    /// chained, tail simple.
    pub fn check_well_formed(&self) -> bool {
        for seg in &self.segments {
            if seg.len() < 2 {
                return false;
            }
            let set: std::collections::BTreeSet<_> = seg.iter().collect();
            if set.len() != seg.len() {
                return false;
            }
        }
        for w in self.segments.windows(2) {
            if w[0].last() != w[1].first() {
                return false;
            }
        }
        if let Some(last_seg) = self.segments.last() {
            if *last_seg.last().expect("nonempty") != self.tail.first() {
                return false;
            }
        }
        self.tail.is_simple()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_reduces_period_and_preperiod() {
        // a (b a b a)^ω = (a b)^ω
        let lasso = Lasso::new(vec![0], vec![1, 0, 1, 0]);
        assert_eq!(lasso.prefix(), &[] as &[usize]);
        assert_eq!(lasso.cycle(), &[0, 1]);
    }

    #[test]
    fn purely_periodic_play_keeps_its_phase() {
        // (2 1)^ω and (1 2)^ω are different plays
        let a = Lasso::new(vec![5], vec![2, 1]);
        assert_eq!(a.prefix(), &[5]);
        assert_eq!(a.cycle(), &[2, 1]);
        assert_ne!(
            Lasso::new(vec![], vec![2, 1]),
            Lasso::new(vec![], vec![1, 2])
        );
        // a simple lasso stays recognisably simple in canonical form
        assert!(Lasso::new(vec![], vec![4, 2]).is_simple());
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let raws = [
            (vec![0usize, 1, 3], vec![4usize]),
            (vec![], vec![3, 1, 2]),
            (vec![7, 7, 7], vec![7]),
            (vec![2, 9, 4, 9], vec![4, 9]),
        ];
        for (p, c) in raws {
            let once = Lasso::new(p, c);
            let twice = Lasso::new(once.prefix().to_vec(), once.cycle().to_vec());
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn representations_of_same_play_collide() {
        // 0 1 (2 0 1)^ω written three ways
        let a = Lasso::new(vec![0, 1], vec![2, 0, 1]);
        let b = Lasso::new(vec![0, 1, 2], vec![0, 1, 2]);
        let c = Lasso::new(vec![0, 1, 2, 0, 1], vec![2, 0, 1, 2, 0, 1]);
        assert_eq!(a, b);
        assert_eq!(b, c);
    }

    #[test]
    fn suffix_of_lasso() {
        let lasso = Lasso::new(vec![9, 8], vec![1, 2, 3]);
        assert_eq!(lasso.suffix_from(1), Lasso::new(vec![8], vec![1, 2, 3]));
        assert_eq!(lasso.suffix_from(3), Lasso::new(vec![], vec![2, 3, 1]));
        assert_eq!(lasso.suffix_from(6), Lasso::new(vec![], vec![2, 3, 1]));
    }

    #[test]
    fn decomposition_replays_exactly() {
        let d = Decomposition {
            segments: vec![vec![0, 1, 2], vec![2, 4]],
            tail: Lasso::new(vec![4, 5], vec![6, 7]),
        };
        assert!(d.check_well_formed());
        assert_eq!(d.to_lasso(), Lasso::new(vec![0, 1, 2, 4, 5], vec![6, 7]));
        assert_eq!(d.element_count(), 3);
    }
}
