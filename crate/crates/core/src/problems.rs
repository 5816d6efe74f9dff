//! Hitting Set and Node Steiner Tree instances, the source and target
//! problems of the hardness reductions.

use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::solution::{Verdict, Violation};

/// Elements of a hitting set universe, `0..universe_size`.
pub type ElementSet = VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    universe_size: usize,
    sets: Vec<Vec<usize>>,
}

impl HittingSetInstance {
    /// Rejects empty sets and out-of-range elements; members are sorted and deduplicated.
    pub fn new(universe_size: usize, sets: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut clean = Vec::with_capacity(sets.len());
        for (i, mut s) in sets.into_iter().enumerate() {
            if s.is_empty() {
                return Err(GraphError::Precondition(format!("set {i} is empty")));
            }
            if let Some(&x) = s.iter().find(|&&x| x >= universe_size) {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: universe_size,
                });
            }
            s.sort_unstable();
            s.dedup();
            clean.push(s);
        }
        Ok(Self {
            universe_size,
            sets: clean,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Index of the first set missed by `y`, if any.
    pub fn first_unhit(&self, y: &ElementSet) -> Option<usize> {
        self.sets
            .iter()
            .position(|s| !s.iter().any(|&x| y.contains(x)))
    }

    pub fn check(&self, y: &ElementSet) -> Result<Verdict, GraphError> {
        if let Some(x) = y.max().filter(|&x| x >= self.universe_size) {
            return Err(GraphError::VertexOutOfRange {
                vertex: x,
                n: self.universe_size,
            });
        }
        Ok(match self.first_unhit(y) {
            Some(i) => Err(Violation::SetMissed(i)),
            None => Ok(()),
        })
    }
}

/// Node Steiner Tree: connect `terminals` using as few other vertices as possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerInstance {
    pub graph: Graph,
    pub terminals: VertexSet,
}

impl SteinerInstance {
    pub fn new(graph: Graph, terminals: VertexSet) -> Result<Self, GraphError> {
        graph.check_set(&terminals)?;
        Ok(Self { graph, terminals })
    }

    pub fn non_terminals(&self) -> VertexSet {
        self.graph.all_vertices().difference(&self.terminals)
    }

    /// `x` must avoid the terminals and make `G[X ∪ T]` connected.
    pub fn check(&self, x: &VertexSet) -> Result<Verdict, GraphError> {
        self.graph.check_set(x)?;
        if let Some(t) = x.intersection(&self.terminals).first() {
            return Ok(Err(Violation::NotAllowed(t)));
        }
        let all = x.union(&self.terminals);
        if self.graph.is_connected_within(&all) {
            return Ok(Ok(()));
        }
        let unreachable = first_unreachable(&self.graph, &all);
        Ok(Err(Violation::Disconnected(unreachable)))
    }
}

fn first_unreachable(g: &Graph, set: &VertexSet) -> Vertex {
    let start = set.first().expect("non-empty");
    let mut seen = VertexSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if set.contains(w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    set.difference(&seen).first().expect("disconnected set")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hitting_set_checks() {
        let hs = HittingSetInstance::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(hs.check(&ElementSet::from([1, 2])).unwrap(), Ok(()));
        assert_eq!(
            hs.check(&ElementSet::from([0])).unwrap(),
            Err(Violation::SetMissed(1))
        );
        assert!(HittingSetInstance::new(3, vec![vec![]]).is_err());
        assert!(HittingSetInstance::new(2, vec![vec![2]]).is_err());
    }

    #[test]
    fn steiner_checks() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let st = SteinerInstance::new(g, VertexSet::from([0, 3])).unwrap();
        assert_eq!(st.check(&VertexSet::from([1, 2])).unwrap(), Ok(()));
        assert_eq!(
            st.check(&VertexSet::from([1])).unwrap(),
            Err(Violation::Disconnected(3))
        );
        assert_eq!(st.non_terminals(), VertexSet::from([1, 2]));
    }
}
