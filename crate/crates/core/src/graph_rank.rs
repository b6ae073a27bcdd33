//! Reduced rank and maximal essential edge sets of finite multigraphs.
//!
//! Graphs are directed, loops and multi-edges allowed; connectivity ignores
//! direction. Edge ids are positions in the input edge list.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl FiniteGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(s, t)) = edges
            .iter()
            .find(|&&(s, t)| s >= vertex_count || t >= vertex_count)
        {
            return Err(Error::InvalidParameter(format!(
                "edge ({s}, {t}) references a vertex outside 0..{vertex_count}"
            )));
        }
        Ok(FiniteGraph {
            vertex_count,
            edges,
        })
    }

    /// One vertex with `petals` loops.
    pub fn rose(petals: usize) -> Self {
        FiniteGraph {
            vertex_count: 1,
            edges: vec![(0, 0); petals],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Disjoint union; `other`'s vertices and edges are renumbered after ours.
    pub fn disjoint_union(&self, other: &FiniteGraph) -> FiniteGraph {
        let shift = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(s, t)| (s + shift, t + shift)));
        FiniteGraph {
            vertex_count: shift + other.vertex_count,
            edges,
        }
    }

    /// The graph with `removed` deleted; surviving edges keep their relative order.
    pub fn without(&self, removed: &BTreeSet<EdgeId>) -> FiniteGraph {
        FiniteGraph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(i, _)| !removed.contains(&EdgeId(*i)))
                .map(|(_, &e)| e)
                .collect(),
        }
    }

    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, &(s, t)) in self.edges.iter().enumerate() {
            inc[s].push(i);
            if t != s {
                inc[t].push(i);
            }
        }
        inc
    }

    /// Breadth-first spanning forest. Each tree is rooted at its lowest vertex
    /// and incident edges are scanned in ascending id. Returns, per component,
    /// its vertices, its edges and which of those edges are tree edges.
    fn spanning_forest(&self) -> Vec<Component> {
        let inc = self.incidence();
        let mut seen = vec![false; self.vertex_count];
        let mut edge_seen = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for root in 0..self.vertex_count {
            if seen[root] {
                continue;
            }
            let mut comp = Component::default();
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                comp.vertices += 1;
                for &e in &inc[v] {
                    if edge_seen[e] {
                        continue;
                    }
                    edge_seen[e] = true;
                    let (s, t) = self.edges[e];
                    let u = if s == v { t } else { s };
                    if seen[u] {
                        comp.non_tree.push(e);
                    } else {
                        seen[u] = true;
                        comp.tree.push(e);
                        queue.push_back(u);
                    }
                }
            }
            comp.non_tree.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `χ(K) = |V(K)| − |E(K)|` for each component, ordered by lowest vertex.
    pub fn component_euler_characteristics(&self) -> Vec<i64> {
        self.spanning_forest()
            .iter()
            .map(|c| c.vertices as i64 - (c.tree.len() + c.non_tree.len()) as i64)
            .collect()
    }

    /// `Σ_K max(0, −χ(K))`.
    pub fn reduced_rank(&self) -> usize {
        self.component_euler_characteristics()
            .into_iter()
            .map(|chi| (-chi).max(0) as usize)
            .sum()
    }

    /// A maximal essential set: per component, every non-tree edge except the
    /// lowest-id one. What remains of each component is a tree or has a single
    /// cycle.
    pub fn max_essential_set(&self) -> BTreeSet<EdgeId> {
        self.spanning_forest()
            .into_iter()
            .flat_map(|c| c.non_tree.into_iter().skip(1))
            .map(EdgeId)
            .collect()
    }
}

#[derive(Default)]
struct Component {
    vertices: usize,
    tree: Vec<usize>,
    non_tree: Vec<usize>,
}
