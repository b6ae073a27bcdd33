//! Finite windows onto the Cayley tree of `F_k` and onto the forest of `n`
//! copies on which `G = F_k × Z/n` acts.
//!
//! Every tree edge is `g·e_i` with `e_i = {1, x_i}`; `g` is its *anchor*.
//! Edges of one copy are totally ordered by
//! `g·e_i < h·e_j  ⇔  g < h in the Magnus order, or g = h and i < j`,
//! which is invariant under left multiplication since `(zg)⁻¹(zh) = g⁻¹h`.
//! Edges of different copies are incomparable.
//!
//! `(w, c) ∈ G` sends `(copy j, vertex g)` to `(copy j + c, vertex w·g)`:
//! the induced action with coset representatives `{(1, j)}`.
//!
//! A ball only shows words of length ≤ radius. Acting subgroups are handled
//! through their voltage graphs, so "is there an element of `H` carrying
//! `p` to `q`" is a membership query and orbit relations between visible
//! vertices and edges are exact. Anything that may continue past the ball
//! boundary is flagged.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::magnus;
use crate::voltage::VoltageGraph;
use crate::word::{Letter, Word};

/// An element `(word, shift)` of `F_k × Z/n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub word: Word,
    pub shift: u64,
}

impl GroupElement {
    pub fn new(word: Word, shift: u64) -> Self {
        GroupElement { word, shift }
    }

    pub fn identity(rank: usize) -> Self {
        GroupElement::new(Word::identity(rank), 0)
    }

    pub fn mul(&self, other: &GroupElement, modulus: u64) -> Result<GroupElement> {
        Ok(GroupElement::new(
            self.word.mul(&other.word)?,
            (self.shift + other.shift) % modulus.max(1),
        ))
    }

    pub fn inv(&self, modulus: u64) -> GroupElement {
        let n = modulus.max(1);
        GroupElement::new(self.word.inv(), (n - self.shift % n) % n)
    }
}

impl From<Word> for GroupElement {
    fn from(word: Word) -> Self {
        GroupElement::new(word, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallVertex {
    pub copy: usize,
    pub local: usize,
}

/// Edge `local` of the single-copy edge list, placed in tree `copy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallEdge {
    pub copy: usize,
    pub local: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct LocalEdge {
    anchor: usize,
    generator: usize,
    tip: usize,
}

#[derive(Clone, Debug)]
pub struct ForestBall {
    rank: usize,
    radius: usize,
    copies: usize,
    action_modulus: u64,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    edges: Vec<LocalEdge>,
    // edge_at[anchor][generator - 1]
    edge_at: Vec<Vec<Option<usize>>>,
    neighbors: Vec<Vec<(usize, usize)>>,
    order_rank: Vec<usize>,
}

/// `(A·R') ∩ ball` for the seed forest `R'` built from a finite vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubForest {
    pub vertices: BTreeSet<BallVertex>,
    pub edges: BTreeSet<BallEdge>,
    /// Some visible part of the invariant forest continues past the boundary.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCount {
    pub orbits: usize,
    /// Smallest edge of each orbit, in ascending order.
    pub representatives: Vec<BallEdge>,
    /// Longest word of any group element that can move one visible edge to
    /// another (`2 · radius`); orbit identification is exact up to it.
    pub word_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub depth: usize,
    pub certified: Vec<BallEdge>,
    pub orbits: OrbitCount,
    pub subforest: SubForest,
}

impl ForestBall {
    /// Ball of radius `radius` about the identity in the Cayley tree of `F_rank`.
    pub fn build(rank: usize, radius: usize) -> Result<Self> {
        if rank == 0 || radius == 0 {
            return Err(Error::InvalidParameter(format!(
                "ball needs rank ≥ 1 and radius ≥ 1 (got {rank}, {radius})"
            )));
        }
        let words = Word::all_up_to(rank, radius);
        let index: HashMap<Word, usize> =
            words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut edges = Vec::new();
        let mut edge_at = vec![vec![None; rank]; words.len()];
        let mut neighbors = vec![Vec::new(); words.len()];
        for (v, w) in words.iter().enumerate() {
            for g in 1..=rank {
                let tip = w.push(Letter::pos(g));
                if tip.len() > radius {
                    continue;
                }
                let tip = index[&tip];
                let id = edges.len();
                edges.push(LocalEdge {
                    anchor: v,
                    generator: g,
                    tip,
                });
                edge_at[v][g - 1] = Some(id);
                neighbors[v].push((tip, id));
                neighbors[tip].push((v, id));
            }
        }

        // anchors sorted by the group order, then edges by (anchor, generator)
        let mut anchors: Vec<usize> = (0..words.len()).collect();
        anchors.sort_by(|&a, &b| magnus::compare(&words[a], &words[b]).expect("same rank"));
        let mut anchor_rank = vec![0; words.len()];
        for (r, &a) in anchors.iter().enumerate() {
            anchor_rank[a] = r;
        }
        let mut by_order: Vec<usize> = (0..edges.len()).collect();
        by_order.sort_by_key(|&e| (anchor_rank[edges[e].anchor], edges[e].generator));
        let mut order_rank = vec![0; edges.len()];
        for (r, &e) in by_order.iter().enumerate() {
            order_rank[e] = r;
        }

        Ok(ForestBall {
            rank,
            radius,
            copies: 1,
            action_modulus: 0,
            words,
            index,
            edges,
            edge_at,
            neighbors,
            order_rank,
        })
    }

    /// `n` copies with the induced action of `F_k × Z/n`.
    pub fn induce(&self, n: usize) -> Result<ForestBall> {
        if self.copies != 1 {
            return Err(Error::InvalidParameter(
                "induce expects a single-copy ball".into(),
            ));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("number of copies must be ≥ 1".into()));
        }
        let mut out = self.clone();
        out.copies = n;
        out.action_modulus = n as u64;
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// `n` of `Z/n`; 0 for a plain ball with no extension.
    pub fn action_modulus(&self) -> u64 {
        self.action_modulus
    }

    fn modulus(&self) -> u64 {
        self.copies as u64
    }

    pub fn vertices_per_copy(&self) -> usize {
        self.words.len()
    }

    pub fn edges_per_copy(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.words.len() * self.copies
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() * self.copies
    }

    pub fn vertices(&self) -> impl Iterator<Item = BallVertex> + '_ {
        (0..self.copies)
            .flat_map(move |copy| (0..self.words.len()).map(move |local| BallVertex { copy, local }))
    }

    pub fn edges(&self) -> impl Iterator<Item = BallEdge> + '_ {
        (0..self.copies)
            .flat_map(move |copy| (0..self.edges.len()).map(move |local| BallEdge { copy, local }))
    }

    pub fn word(&self, v: BallVertex) -> &Word {
        &self.words[v.local]
    }

    pub fn vertex(&self, copy: usize, w: &Word) -> Option<BallVertex> {
        if copy >= self.copies {
            return None;
        }
        self.index.get(w).map(|&local| BallVertex { copy, local })
    }

    /// Edge `anchor·e_generator` in tree `copy`, if visible.
    pub fn edge(&self, copy: usize, anchor: &Word, generator: usize) -> Option<BallEdge> {
        let v = self.vertex(copy, anchor)?;
        let local = (*self.edge_at[v.local].get(generator.checked_sub(1)?)?)?;
        Some(BallEdge { copy, local })
    }

    pub fn anchor(&self, e: BallEdge) -> &Word {
        &self.words[self.edges[e.local].anchor]
    }

    pub fn generator(&self, e: BallEdge) -> usize {
        self.edges[e.local].generator
    }

    /// `(anchor, anchor·x_i)` as vertices.
    pub fn endpoints(&self, e: BallEdge) -> (BallVertex, BallVertex) {
        let le = self.edges[e.local];
        (
            BallVertex {
                copy: e.copy,
                local: le.anchor,
            },
            BallVertex {
                copy: e.copy,
                local: le.tip,
            },
        )
    }

    /// Position of the edge in its copy's total order.
    pub fn order_rank(&self, e: BallEdge) -> usize {
        self.order_rank[e.local]
    }

    pub fn on_boundary(&self, v: BallVertex) -> bool {
        self.words[v.local].len() == self.radius
    }

    /// `None` when the edges lie in different copies.
    pub fn edge_cmp(&self, e: BallEdge, f: BallEdge) -> Option<Ordering> {
        (e.copy == f.copy).then(|| self.order_rank[e.local].cmp(&self.order_rank[f.local]))
    }

    fn check_vertex(&self, v: BallVertex) -> Result<()> {
        if v.copy < self.copies && v.local < self.words.len() {
            Ok(())
        } else {
            Err(Error::OutsideBall)
        }
    }

    fn check_edge(&self, e: BallEdge) -> Result<()> {
        if e.copy < self.copies && e.local < self.edges.len() {
            Ok(())
        } else {
            Err(Error::OutsideBall)
        }
    }

    fn shifted(&self, copy: usize, shift: u64) -> usize {
        ((copy as u64 + shift) % self.modulus()) as usize
    }

    /// Image of a vertex, if it stays in the ball.
    pub fn act_vertex(&self, g: &GroupElement, v: BallVertex) -> Option<BallVertex> {
        let w = g.word.mul(&self.words[v.local]).ok()?;
        self.vertex(self.shifted(v.copy, g.shift), &w)
    }

    /// Image of an edge, if both endpoints stay in the ball.
    pub fn act_edge(&self, g: &GroupElement, e: BallEdge) -> Option<BallEdge> {
        let anchor = g.word.mul(self.anchor(e)).ok()?;
        self.edge(self.shifted(e.copy, g.shift), &anchor, self.generator(e))
    }

    /// The subgroup generated by `gens`, with residues read mod the number of copies.
    pub fn acting_subgroup(&self, gens: &[GroupElement]) -> Result<VoltageGraph> {
        let pairs: Vec<(Word, u64)> = gens
            .iter()
            .map(|g| (g.word.clone(), g.shift % self.modulus()))
            .collect();
        VoltageGraph::fold(&pairs, self.rank, self.modulus())
    }

    /// Whether some element of `h` carries `(from_copy, from)` to `(to_copy, to)`.
    fn carries(&self, h: &VoltageGraph, from_copy: usize, from: &Word, to_copy: usize, to: &Word) -> bool {
        let n = self.modulus();
        let shift = (to_copy as u64 + n - from_copy as u64) % n;
        h.contains(&to.mul_unchecked(&from.inv()), shift)
            .expect("ranks agree")
    }

    /// Subforest invariant under `⟨gens⟩`, containing `seeds`, intersected
    /// with the ball.
    ///
    /// In each copy `T` meeting the seeds, the seed points `P` are joined
    /// together with their translates `s^{±1}P` for generators `s` of the
    /// copy's stabiliser (`H ∩ (F_k × {0})`); the convex hull `R'` of all of
    /// these is then spread by the whole subgroup. Membership in `H·R'` is
    /// decided exactly for each visible vertex and edge.
    pub fn invariant_subforest(&self, gens: &[GroupElement], seeds: &[BallVertex]) -> Result<SubForest> {
        if seeds.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        for &v in seeds {
            self.check_vertex(v)?;
        }
        let h = self.acting_subgroup(gens)?;
        let stabiliser = h.kernel().basis();

        let mut hull_vertices: Vec<(usize, Word)> = Vec::new();
        let mut hull_edges: Vec<(usize, Word, usize)> = Vec::new();
        for copy in 0..self.copies {
            let points: Vec<Word> = seeds
                .iter()
                .filter(|v| v.copy == copy)
                .map(|&v| self.words[v.local].clone())
                .collect();
            if points.is_empty() {
                continue;
            }
            let mut all = points.clone();
            for s in &stabiliser {
                for t in [s.clone(), s.inv()] {
                    all.extend(points.iter().map(|p| t.mul_unchecked(p)));
                }
            }
            let hull = convex_hull(&all);
            for w in &hull {
                for g in 1..=self.rank {
                    let tip = w.push(Letter::pos(g));
                    if hull.contains(&tip) {
                        hull_edges.push((copy, w.clone(), g));
                    }
                }
            }
            hull_vertices.extend(hull.into_iter().map(|w| (copy, w)));
        }

        let in_orbit_vertex = |copy: usize, w: &Word| {
            hull_vertices
                .iter()
                .any(|(c, u)| self.carries(&h, *c, u, copy, w))
        };
        let vertices: BTreeSet<BallVertex> = self
            .vertices()
            .filter(|&v| in_orbit_vertex(v.copy, &self.words[v.local]))
            .collect();
        let edges: BTreeSet<BallEdge> = self
            .edges()
            .filter(|&e| {
                let g = self.generator(e);
                hull_edges
                    .iter()
                    .any(|(c, u, gg)| *gg == g && self.carries(&h, *c, u, e.copy, self.anchor(e)))
            })
            .collect();

        let truncated = vertices.iter().any(|&v| {
            self.on_boundary(v) && {
                let w = &self.words[v.local];
                Letter::all(self.rank)
                    .map(|l| w.push(l))
                    .filter(|u| u.len() > self.radius)
                    .any(|u| in_orbit_vertex(v.copy, &u))
            }
        });

        Ok(SubForest {
            vertices,
            edges,
            truncated,
        })
    }

    /// Number of `⟨gens⟩`-orbits meeting `edge_set`. Two visible edges share
    /// an orbit iff some subgroup element carries one onto the other.
    pub fn count_orbits(&self, gens: &[GroupElement], edge_set: &BTreeSet<BallEdge>) -> Result<OrbitCount> {
        let h = self.acting_subgroup(gens)?;
        self.count_orbits_in(&h, edge_set)
    }

    fn count_orbits_in(&self, h: &VoltageGraph, edge_set: &BTreeSet<BallEdge>) -> Result<OrbitCount> {
        let mut reps: Vec<Vec<BallEdge>> = vec![Vec::new(); self.rank];
        for &e in edge_set {
            self.check_edge(e)?;
            let g = self.generator(e);
            let seen = reps[g - 1]
                .iter()
                .any(|&r| self.carries(h, r.copy, self.anchor(r), e.copy, self.anchor(e)));
            if !seen {
                reps[g - 1].push(e);
            }
        }
        let mut representatives: Vec<BallEdge> = reps.into_iter().flatten().collect();
        representatives.sort_unstable();
        Ok(OrbitCount {
            orbits: representatives.len(),
            representatives,
            word_bound: 2 * self.radius,
        })
    }

    /// Finite-depth certificate for order-essential edges.
    ///
    /// Works inside the `⟨gens⟩`-invariant subforest seeded by the identity
    /// vertex of every copy. An edge `e` is certified when, from each of its
    /// endpoints, a path of `depth` further edges leads away from `e` using
    /// only subforest edges smaller than `e`, so `e` sits in the middle of a
    /// simple path of `2·depth + 1` edges none exceeding `e`. Certification
    /// is necessary for order-essentiality, not sufficient.
    pub fn certify_order_essential(&self, gens: &[GroupElement], depth: usize) -> Result<Certificate> {
        if depth == 0 {
            return Err(Error::InvalidParameter("depth must be ≥ 1".into()));
        }
        if depth > self.radius {
            return Err(Error::DepthExceedsRadius {
                depth,
                radius: self.radius,
            });
        }
        let seeds: Vec<BallVertex> = (0..self.copies).map(|copy| BallVertex { copy, local: 0 }).collect();
        let subforest = self.invariant_subforest(gens, &seeds)?;
        let ne = self.edges.len();
        let mut present = vec![false; ne * self.copies];
        for e in &subforest.edges {
            present[e.copy * ne + e.local] = true;
        }
        let certified: Vec<BallEdge> = subforest
            .edges
            .iter()
            .copied()
            .filter(|&e| {
                let le = self.edges[e.local];
                let bound = self.order_rank[e.local];
                let here = &present[e.copy * ne..(e.copy + 1) * ne];
                self.descends(here, le.anchor, e.local, bound, depth)
                    && self.descends(here, le.tip, e.local, bound, depth)
            })
            .collect();
        let h = self.acting_subgroup(gens)?;
        let orbits = self.count_orbits_in(&h, &certified.iter().copied().collect())?;
        Ok(Certificate {
            depth,
            certified,
            orbits,
            subforest,
        })
    }

    /// Whether a non-backtracking walk of `depth` edges starts at `v`,
    /// avoids `came_by`, and uses only present edges ranked below `bound`.
    fn descends(&self, present: &[bool], v: usize, came_by: usize, bound: usize, depth: usize) -> bool {
        if depth == 0 {
            return true;
        }
        self.neighbors[v].iter().any(|&(u, e)| {
            e != came_by
                && present[e]
                && self.order_rank[e] < bound
                && self.descends(present, u, e, bound, depth - 1)
        })
    }
}

/// Vertex set of the smallest subtree of the Cayley tree containing `points`.
pub fn convex_hull(points: &[Word]) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let Some(root) = points.first() else {
        return out;
    };
    for p in points {
        let c = root.common_prefix_len(p);
        for len in c..=root.len() {
            out.insert(root.prefix(len));
        }
        for len in c..=p.len() {
            out.insert(p.prefix(len));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ix: &[i64]) -> Word {
        Word::from_signed(ix, 2).unwrap()
    }

    fn el(ix: &[i64], shift: u64) -> GroupElement {
        GroupElement::new(w(ix), shift)
    }

    #[test]
    fn ball_sizes() {
        let b = ForestBall::build(2, 1).unwrap();
        assert_eq!((b.vertex_count(), b.edge_count()), (5, 4));
        let b = ForestBall::build(2, 2).unwrap();
        assert_eq!((b.vertex_count(), b.edge_count()), (17, 16));
        let b = ForestBall::build(1, 3).unwrap();
        assert_eq!((b.vertex_count(), b.edge_count()), (7, 6));
        for (k, r) in [(2usize, 4u32), (3, 3)] {
            let b = ForestBall::build(k, r as usize).unwrap();
            let q = 2 * k - 1;
            assert_eq!(b.vertex_count(), 1 + 2 * k * (q.pow(r) - 1) / (q - 1));
        }
        assert!(ForestBall::build(0, 1).is_err());
        assert!(ForestBall::build(2, 0).is_err());
    }

    #[test]
    fn edge_order_examples() {
        let b = ForestBall::build(2, 2).unwrap().induce(2).unwrap();
        let id = Word::identity(2);
        let ex = b.edge(0, &id, 1).unwrap();
        let ey = b.edge(0, &id, 2).unwrap();
        assert_eq!(b.edge_cmp(ex, ey), Some(Ordering::Less));
        assert_eq!(b.edge_cmp(ex, ex), Some(Ordering::Equal));
        let ex1 = b.edge(1, &id, 1).unwrap();
        assert_eq!(b.edge_cmp(ex, ex1), None);
    }

    #[test]
    fn induced_action_examples() {
        let b = ForestBall::build(2, 2).unwrap().induce(3).unwrap();
        let one = b.vertex(0, &Word::identity(2)).unwrap();
        let image = b.act_vertex(&el(&[1], 1), one).unwrap();
        assert_eq!(image, b.vertex(1, &w(&[1])).unwrap());
        for v in b.vertices() {
            assert_eq!(b.act_vertex(&GroupElement::identity(2), v), Some(v));
        }
        let plain = ForestBall::build(2, 2).unwrap();
        let once = plain.induce(1).unwrap();
        assert_eq!(once.vertex_count(), plain.vertex_count());
        assert_eq!(once.order_rank, plain.order_rank);
        assert!(b.induce(2).is_err());
    }

    #[test]
    fn subforest_of_a_cyclic_subgroup_is_its_axis() {
        let b = ForestBall::build(2, 3).unwrap();
        let one = b.vertex(0, &Word::identity(2)).unwrap();
        let y = b.invariant_subforest(&[el(&[1], 0)], &[one]).unwrap();
        let expected: BTreeSet<BallVertex> = (-3..=3)
            .map(|k| b.vertex(0, &w(&[1]).pow(k)).unwrap())
            .collect();
        assert_eq!(y.vertices, expected);
        assert_eq!(y.edges.len(), 6);
        assert!(y.truncated);
    }

    #[test]
    fn subforest_trivial_and_full() {
        let b = ForestBall::build(2, 2).unwrap();
        let v = b.vertex(0, &w(&[1, 2])).unwrap();
        let y = b.invariant_subforest(&[], &[v]).unwrap();
        assert_eq!(y.vertices, BTreeSet::from([v]));
        assert!(y.edges.is_empty());
        assert!(!y.truncated);

        let all: Vec<BallVertex> = b.vertices().collect();
        let y = b.invariant_subforest(&[], &all).unwrap();
        assert_eq!(y.vertices.len(), b.vertex_count());
        assert_eq!(y.edges.len(), b.edge_count());
        assert!(!y.truncated);

        assert_eq!(b.invariant_subforest(&[], &[]), Err(Error::EmptyVertexSet));
    }

    #[test]
    fn orbit_count_examples() {
        let b = ForestBall::build(2, 3).unwrap();
        let all: BTreeSet<BallEdge> = b.edges().collect();
        let f2 = [el(&[1], 0), el(&[2], 0)];
        assert_eq!(b.count_orbits(&f2, &all).unwrap().orbits, 2);
        assert_eq!(b.count_orbits(&f2, &BTreeSet::new()).unwrap().orbits, 0);

        let b3 = b.induce(3).unwrap();
        let all3: BTreeSet<BallEdge> = b3.edges().collect();
        let g = [el(&[1], 0), el(&[2], 0), el(&[], 1)];
        assert_eq!(b3.count_orbits(&g, &all3).unwrap().orbits, 2);
        assert_eq!(b3.count_orbits(&f2, &all3).unwrap().orbits, 6);
    }

    #[test]
    fn certification_examples() {
        let b = ForestBall::build(2, 4).unwrap();
        for depth in 2..=4 {
            let c = b.certify_order_essential(&[el(&[1], 0)], depth).unwrap();
            assert!(c.certified.is_empty());
        }
        let f2 = [el(&[1], 0), el(&[2], 0)];
        let c = b.certify_order_essential(&f2, 2).unwrap();
        assert_eq!(c.orbits.orbits, 1);
        // the y-edges are the essential ones
        assert!(c.certified.iter().all(|&e| b.generator(e) == 2));

        let c = b.certify_order_essential(&[], 2).unwrap();
        assert_eq!(c.orbits.orbits, c.certified.len());

        assert!(matches!(
            b.certify_order_essential(&f2, 5),
            Err(Error::DepthExceedsRadius { depth: 5, radius: 4 })
        ));
    }

    #[test]
    fn hull_of_two_points() {
        let h = convex_hull(&[w(&[1, 2]), w(&[1, -2, -1])]);
        let expected: BTreeSet<Word> =
            [w(&[1, 2]), w(&[1]), w(&[1, -2]), w(&[1, -2, -1])].into_iter().collect();
        assert_eq!(h, expected);
    }
}
