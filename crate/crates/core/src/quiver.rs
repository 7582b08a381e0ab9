//! Finite acyclic quivers, path enumeration, and the path-count matrix.
//!
//! Vertices are 1-indexed. Paths compose right to left: in `p = q.then(r)`
//! the path `q` is traversed first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

/// A path, stored as the sequence of arrow indices in traversal order
/// (the first entry is traversed first). The empty sequence is the trivial
/// path at `source`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: vec![] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountMatrix {
    /// counts[j-1][i-1] = number of paths from j to i.
    counts: Vec<Vec<usize>>,
}

impl PathCountMatrix {
    pub fn count(&self, from: usize, to: usize) -> usize {
        self.counts[from - 1][to - 1]
    }

    /// Total number of paths, i.e. dim kQ.
    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Quiver> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver("quiver needs at least one vertex".into()));
        }
        for a in &arrows {
            if a.from < 1 || a.from > vertex_count || a.to < 1 || a.to > vertex_count {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {}->{} out of range 1..={vertex_count}",
                    a.from, a.to
                )));
            }
            if a.from == a.to {
                return Err(Error::InvalidQuiver(format!("loop at vertex {}", a.from)));
            }
        }
        let q = Quiver { vertex_count, arrows };
        q.topological_order()?; // rejects cycles
        Ok(q)
    }

    /// The A_n quiver with arrows n -> n-1 -> ... -> 1.
    pub fn linear(n: usize) -> Quiver {
        let arrows = (1..n).map(|i| Arrow { from: i + 1, to: i }).collect();
        Quiver::new(n, arrows).unwrap()
    }

    /// Two parallel arrows 2 -> 1.
    pub fn kronecker() -> Quiver {
        Quiver::new(2, vec![Arrow { from: 2, to: 1 }, Arrow { from: 2, to: 1 }]).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Indices of arrows ending at `v`, in arrow order.
    pub fn arrows_into(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].to == v).collect()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.to != v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.from != v)
    }

    /// Deterministic topological order (smallest admissible vertex first);
    /// every arrow's target precedes its source. Errors on a cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.vertex_count;
        let mut remaining: Vec<usize> = (1..=n).collect();
        let mut order = Vec::with_capacity(n);
        while !remaining.is_empty() {
            // admissible: every arrow out of v already has its target placed
            let pos = remaining.iter().position(|&v| {
                self.arrows.iter().all(|a| a.from != v || order.contains(&a.to))
            });
            match pos {
                Some(p) => order.push(remaining.remove(p)),
                None => {
                    return Err(Error::InvalidQuiver("oriented cycle detected".into()));
                }
            }
        }
        Ok(order)
    }

    /// All paths, ordered by (position of end vertex in the topological
    /// order, start vertex, lexicographic arrow sequence). This order is the
    /// basis order of the path algebra.
    pub fn paths(&self) -> Vec<Path> {
        let mut all: Vec<Path> = self.vertices().map(Path::trivial).collect();
        let mut frontier: Vec<Path> = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.from == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { source: p.source, target: a.to, arrows });
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        let topo = self.topological_order().unwrap();
        let rank = |v: usize| topo.iter().position(|&x| x == v).unwrap();
        all.sort_by(|p, q| {
            (rank(p.target), p.source, &p.arrows).cmp(&(rank(q.target), q.source, &q.arrows))
        });
        all
    }

    /// Composition p2 after p1 (traverse p1 first); None when endpoints
    /// mismatch.
    pub fn compose(&self, p1: &Path, p2: &Path) -> Option<Path> {
        if p1.target != p2.source {
            return None;
        }
        let mut arrows = p1.arrows.clone();
        arrows.extend_from_slice(&p2.arrows);
        Some(Path { source: p1.source, target: p2.target, arrows })
    }

    pub fn path_count_matrix(&self) -> PathCountMatrix {
        let n = self.vertex_count;
        let mut counts = vec![vec![0usize; n]; n];
        for p in self.paths() {
            counts[p.source - 1][p.target - 1] += 1;
        }
        PathCountMatrix { counts }
    }
}
