//! Stallings core graphs of finitely generated subgroups of `F_k`.
//!
//! Every [`CoreGraph`] is kept in a canonical form: the base is vertex 0,
//! vertices are numbered breadth-first from the base with letters taken in
//! `(generator, sign)` order, and edges are sorted by `(source, generator)`.
//! Two core graphs are isomorphic as based labeled graphs iff they are equal.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::fold::{self, Folded, RawEdge};
use crate::graph_rank::FiniteGraph;
use crate::word::{Letter, Word};

/// A directed edge `source --x_generator--> target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub generator: usize,
}

/// Index of a subgroup in the ambient free group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreGraph {
    rank: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
    // out[v][g - 1], inc[v][g - 1]: edge ids
    out: Vec<Vec<Option<usize>>>,
    inc: Vec<Vec<Option<usize>>>,
}

impl CoreGraph {
    /// The one-vertex graph of the trivial subgroup.
    pub fn trivial(rank: usize) -> Self {
        CoreGraph::from_folded(rank, &fold::fold(rank, 1, 1, 0, Vec::new(), &[]))
    }

    /// The bouquet of `rank` loops, i.e. the whole of `F_rank`.
    pub fn bouquet(rank: usize) -> Self {
        let gens: Vec<Word> = (1..=rank)
            .map(|g| Word::generator(rank, g).expect("generator in range"))
            .collect();
        CoreGraph::fold_from_generators(&gens, rank).expect("ranks agree")
    }

    /// Folds the wedge of petals spelling `gens` into the core graph of `⟨gens⟩`.
    pub fn fold_from_generators(gens: &[Word], rank: usize) -> Result<Self> {
        let mut edges = Vec::new();
        let mut next = 1;
        for w in gens {
            if w.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: w.rank(),
                });
            }
            fold::petal(w.letters(), 0, 1, &mut next, &mut edges);
        }
        Ok(CoreGraph::from_folded(
            rank,
            &fold::fold(rank, 1, next, 0, edges, &[]),
        ))
    }

    /// Builds the core graph of the based component of an arbitrary labeled
    /// graph, folding and coring as needed.
    pub fn from_edges(rank: usize, vertex_count: usize, base: usize, edges: &[Edge]) -> Result<Self> {
        if base >= vertex_count {
            return Err(Error::InvalidParameter(format!(
                "base {base} out of range for {vertex_count} vertices"
            )));
        }
        let mut raw = Vec::with_capacity(edges.len());
        for e in edges {
            if e.generator == 0 || e.generator > rank {
                return Err(Error::GeneratorOutOfRange {
                    index: e.generator as i64,
                    rank,
                });
            }
            if e.source >= vertex_count || e.target >= vertex_count {
                return Err(Error::InvalidParameter(format!(
                    "edge endpoint out of range for {vertex_count} vertices"
                )));
            }
            raw.push(RawEdge {
                source: e.source,
                target: e.target,
                generator: e.generator,
                voltage: 0,
            });
        }
        Ok(CoreGraph::from_folded(
            rank,
            &fold::fold(rank, 1, vertex_count, base, raw, &[]),
        ))
    }

    pub(crate) fn from_folded(rank: usize, folded: &Folded) -> Self {
        let n = folded.vertex_count;
        let edges: Vec<Edge> = folded
            .edges
            .iter()
            .map(|e| Edge {
                source: e.source,
                target: e.target,
                generator: e.generator,
            })
            .collect();
        let mut out = vec![vec![None; rank]; n];
        let mut inc = vec![vec![None; rank]; n];
        for (i, e) in edges.iter().enumerate() {
            out[e.source][e.generator - 1] = Some(i);
            inc[e.target][e.generator - 1] = Some(i);
        }
        CoreGraph {
            rank,
            vertex_count: n,
            edges,
            out,
            inc,
        }
    }

    /// Ambient rank `k` of `F_k`.
    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn base(&self) -> usize {
        0
    }

    /// Edge id leaving `v` along `letter` (an inverse letter walks an edge backwards).
    pub fn edge_along(&self, v: usize, letter: Letter) -> Option<usize> {
        let g = letter.generator() - 1;
        if letter.is_inverse() {
            self.inc[v][g]
        } else {
            self.out[v][g]
        }
    }

    /// Vertex reached from `v` by reading `letter`.
    pub fn step(&self, v: usize, letter: Letter) -> Option<usize> {
        self.edge_along(v, letter).map(|e| {
            if letter.is_inverse() {
                self.edges[e].source
            } else {
                self.edges[e].target
            }
        })
    }

    /// Endpoint of the path spelling `w` from the base, if it exists.
    pub fn read(&self, w: &Word) -> Option<usize> {
        self.read_from(self.base(), w.letters())
    }

    pub(crate) fn read_from(&self, start: usize, letters: &[Letter]) -> Option<usize> {
        letters.iter().try_fold(start, |v, &l| self.step(v, l))
    }

    /// Whether `w` lies in the subgroup: it spells a closed path at the base.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: w.rank(),
            });
        }
        Ok(self.read(w) == Some(self.base()))
    }

    /// Free rank of the subgroup, `|E| − |V| + 1`.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    pub fn index(&self) -> Index {
        let complete = (0..self.vertex_count).all(|v| {
            self.out[v].iter().all(Option::is_some) && self.inc[v].iter().all(Option::is_some)
        });
        if complete {
            Index::Finite(self.vertex_count)
        } else {
            Index::Infinite
        }
    }

    /// Breadth-first spanning tree from the base, letters in `(generator, sign)`
    /// order. Returns, per vertex, the word labelling the tree path from the
    /// base and a flag per edge marking tree edges.
    pub fn spanning_tree(&self) -> (Vec<Word>, Vec<bool>) {
        let mut path: Vec<Option<Word>> = vec![None; self.vertex_count];
        let mut tree = vec![false; self.edges.len()];
        path[0] = Some(Word::identity(self.rank));
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let here = path[v].clone().expect("visited");
            for l in Letter::all(self.rank) {
                let Some(e) = self.edge_along(v, l) else {
                    continue;
                };
                let u = self.step(v, l).expect("edge exists");
                if path[u].is_none() {
                    tree[e] = true;
                    path[u] = Some(here.push(l));
                    queue.push_back(u);
                }
            }
        }
        (path.into_iter().map(|p| p.expect("connected")).collect(), tree)
    }

    /// Free basis: one word per non-tree edge, in edge order.
    pub fn basis(&self) -> Vec<Word> {
        let (path, tree) = self.spanning_tree();
        self.edges
            .iter()
            .zip(&tree)
            .filter(|(_, &t)| !t)
            .map(|(e, _)| {
                path[e.source]
                    .push(Letter::pos(e.generator))
                    .mul_unchecked(&path[e.target].inv())
            })
            .collect()
    }

    /// Core graph of `A ∩ B`: the based component of the product graph, cored.
    pub fn fiber_product(&self, other: &CoreGraph) -> Result<CoreGraph> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut ids: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
        let mut pairs = vec![(0usize, 0usize)];
        let mut edges = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (a, b) = pairs[head];
            let here = head;
            head += 1;
            for l in Letter::all(self.rank) {
                let (Some(a2), Some(b2)) = (self.step(a, l), other.step(b, l)) else {
                    continue;
                };
                let next = *ids.entry((a2, b2)).or_insert_with(|| {
                    pairs.push((a2, b2));
                    pairs.len() - 1
                });
                if !l.is_inverse() {
                    edges.push(Edge {
                        source: here,
                        target: next,
                        generator: l.generator(),
                    });
                }
            }
        }
        CoreGraph::from_edges(self.rank, pairs.len(), 0, &edges)
    }

    /// Underlying unlabeled multigraph, edge ids preserved.
    pub fn to_finite_graph(&self) -> FiniteGraph {
        FiniteGraph::new(
            self.vertex_count,
            self.edges.iter().map(|e| (e.source, e.target)).collect(),
        )
        .expect("endpoints in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ix: &[i64]) -> Word {
        Word::from_signed(ix, 2).unwrap()
    }

    fn sub(gens: &[&[i64]]) -> CoreGraph {
        let gens: Vec<Word> = gens.iter().map(|g| w(g)).collect();
        CoreGraph::fold_from_generators(&gens, 2).unwrap()
    }

    #[test]
    fn fold_examples() {
        let b = sub(&[&[1], &[2]]);
        assert_eq!((b.vertex_count(), b.edges().len()), (1, 2));

        let a = sub(&[&[1, 1], &[2], &[1, 2, -1]]);
        assert_eq!((a.vertex_count(), a.edges().len()), (2, 4));
        assert_eq!(a.rank(), 3);
        assert_eq!(a.index(), Index::Finite(2));

        let c = sub(&[&[1, 2, -1, -2]]);
        assert_eq!((c.vertex_count(), c.edges().len(), c.rank()), (4, 4, 1));
    }

    #[test]
    fn fold_of_nothing_is_trivial() {
        let t = CoreGraph::fold_from_generators(&[], 2).unwrap();
        assert_eq!(t, CoreGraph::trivial(2));
        assert_eq!((t.vertex_count(), t.rank()), (1, 0));
        assert_eq!(t.index(), Index::Infinite);
        assert!(t.basis().is_empty());
    }

    #[test]
    fn coring_keeps_base_on_a_conjugate() {
        // x y x⁻¹: the base hangs off the loop at the end of an x-edge
        let g = sub(&[&[1, 2, -1]]);
        assert_eq!((g.vertex_count(), g.edges().len()), (2, 2));
        assert!(g.contains(&w(&[1, 2, 2, -1])).unwrap());
        assert!(!g.contains(&w(&[2])).unwrap());
    }

    #[test]
    fn membership_examples() {
        let g = sub(&[&[1, 1], &[2]]);
        assert!(g.contains(&w(&[1, 1])).unwrap());
        assert!(!g.contains(&w(&[1])).unwrap());
        assert!(g.contains(&Word::identity(2)).unwrap());
        assert!(g.contains(&Word::identity(3)).is_err());
    }

    #[test]
    fn index_examples() {
        assert_eq!(sub(&[&[1]]).index(), Index::Infinite);
        assert_eq!(CoreGraph::bouquet(2).index(), Index::Finite(1));
    }

    #[test]
    fn fiber_product_examples() {
        let a = sub(&[&[1, 1], &[2]]);
        let b = sub(&[&[1], &[2, 2]]);
        let ab = a.fiber_product(&b).unwrap();
        assert_eq!((ab.vertex_count(), ab.edges().len(), ab.rank()), (3, 4, 2));
        assert_eq!(ab, sub(&[&[1, 1], &[2, 2]]));

        assert_eq!(a.fiber_product(&a).unwrap(), a);
        let t = sub(&[&[1]]).fiber_product(&sub(&[&[2]])).unwrap();
        assert_eq!(t.rank(), 0);
        assert!(a.fiber_product(&CoreGraph::trivial(3)).is_err());
    }

    #[test]
    fn basis_examples() {
        assert_eq!(CoreGraph::bouquet(2).basis(), vec![w(&[1]), w(&[2])]);
        let g = sub(&[&[1, 1], &[2]]);
        let basis = g.basis();
        assert_eq!(basis.len(), g.rank());
        assert!(basis.iter().all(|b| g.contains(b).unwrap()));
        assert_eq!(basis, vec![w(&[2]), w(&[1, 1])]);
    }

    #[test]
    fn from_edges_takes_based_component() {
        let edges = [
            Edge { source: 0, target: 0, generator: 1 },
            Edge { source: 1, target: 1, generator: 2 },
        ];
        let g = CoreGraph::from_edges(2, 2, 0, &edges).unwrap();
        assert_eq!(g, sub(&[&[1]]));
    }

    #[test]
    fn folding_detects_full_group() {
        // ⟨x y, y⟩ = F₂
        assert_eq!(sub(&[&[1, 2], &[2]]), CoreGraph::bouquet(2));
    }
}
