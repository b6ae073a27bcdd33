//! Subgroups of `G = F_k × Z/n` as voltage-decorated core graphs.
//!
//! A subgroup `H ≤ G` is stored as the core graph of its projection to `F_k`,
//! a residue on every edge, and the defect `H ∩ ({1} × Z/n)`. A closed base
//! path spelling `w` with accumulated voltage `c` means `(w, c + D) ⊆ H`.
//! The defect is a cyclic subgroup `dZ/nZ`, stored as the divisor `d`;
//! `d = n` means `H` meets the torsion factor trivially, i.e. `H` is free.

use crate::error::{Error, Result};
use crate::fold::{self, Folded, RawEdge};
use crate::stallings::{CoreGraph, Edge, Index};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageGraph {
    modulus: u64,
    underlying: CoreGraph,
    // per underlying edge id, reduced mod `defect`; spanning-tree edges are 0
    voltages: Vec<u64>,
    defect: u64,
}

impl VoltageGraph {
    /// Folds the petals of `(word, residue)` generators.
    pub fn fold(gens: &[(Word, u64)], rank: usize, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be ≥ 1".into()));
        }
        let mut edges = Vec::new();
        let mut defect_gens = Vec::new();
        let mut next = 1;
        for (w, c) in gens {
            if w.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: w.rank(),
                });
            }
            if w.is_empty() {
                defect_gens.push(c % modulus);
            } else {
                fold::petal(w.letters(), c % modulus, modulus, &mut next, &mut edges);
            }
        }
        let folded = fold::fold(rank, modulus, next, 0, edges, &defect_gens);
        Ok(VoltageGraph::from_folded(rank, modulus, &folded))
    }

    /// `A × {0}` for a subgroup `A ≤ F_k`.
    pub fn from_core_graph(g: &CoreGraph, modulus: u64) -> Result<Self> {
        VoltageGraph::fold(
            &g.basis().into_iter().map(|w| (w, 0)).collect::<Vec<_>>(),
            g.ambient_rank(),
            modulus,
        )
    }

    fn from_folded(rank: usize, modulus: u64, folded: &Folded) -> Self {
        VoltageGraph {
            modulus,
            underlying: CoreGraph::from_folded(rank, folded),
            voltages: folded.edges.iter().map(|e| e.voltage).collect(),
            defect: folded.defect,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.underlying.ambient_rank()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Core graph of the projection of the subgroup to `F_k`.
    pub fn underlying(&self) -> &CoreGraph {
        &self.underlying
    }

    pub fn voltages(&self) -> &[u64] {
        &self.voltages
    }

    /// Divisor `d` with defect subgroup `dZ/nZ`.
    pub fn defect_divisor(&self) -> u64 {
        self.defect
    }

    /// Order of the defect subgroup, `n / d`.
    pub fn defect_order(&self) -> u64 {
        self.modulus / self.defect
    }

    pub fn is_free(&self) -> bool {
        self.defect == self.modulus
    }

    /// Free rank when the subgroup is free (it is then isomorphic to its projection).
    pub fn rank(&self) -> Result<usize> {
        if self.is_free() {
            Ok(self.underlying.rank())
        } else {
            Err(Error::NotFree {
                defect_order: self.defect_order(),
            })
        }
    }

    /// Index in `F_k × Z/n`: the projection's index in `F_k` times `d`, since
    /// `H` meets `{1} × Z/n` in a subgroup of index `d`.
    pub fn index(&self) -> Index {
        match self.underlying.index() {
            Index::Finite(m) => Index::Finite(m * self.defect as usize),
            Index::Infinite => Index::Infinite,
        }
    }

    /// Endpoint and accumulated voltage (mod the defect divisor) of the path
    /// spelling `w` from the base.
    pub fn read(&self, w: &Word) -> Option<(usize, u64)> {
        let d = self.defect;
        w.letters().iter().try_fold((0usize, 0u64), |(v, c), &l| {
            let e = self.underlying.edge_along(v, l)?;
            let u = self.underlying.step(v, l)?;
            let volt = self.voltages[e];
            let c = if l.is_inverse() {
                (c + d - volt) % d
            } else {
                (c + volt) % d
            };
            Some((u, c))
        })
    }

    pub fn contains(&self, w: &Word, residue: u64) -> Result<bool> {
        if w.rank() != self.ambient_rank() {
            return Err(Error::RankMismatch {
                left: self.ambient_rank(),
                right: w.rank(),
            });
        }
        Ok(match self.read(w) {
            Some((0, c)) => (residue % self.modulus) % self.defect == c,
            _ => false,
        })
    }

    /// Generating set: a free basis of the projection, each word paired with
    /// its residue, plus `(1, d)` when the defect is nontrivial.
    pub fn generators(&self) -> Vec<(Word, u64)> {
        let (_, tree) = self.underlying.spanning_tree();
        let mut out: Vec<(Word, u64)> = self
            .underlying
            .basis()
            .into_iter()
            .zip(
                tree.iter()
                    .zip(&self.voltages)
                    .filter(|(&t, _)| !t)
                    .map(|(_, &c)| c),
            )
            .collect();
        if !self.is_free() {
            out.push((Word::identity(self.ambient_rank()), self.defect));
        }
        out
    }

    /// Core graph of `H ∩ (F_k × {0})`: the derived cover over `Z/d`, based
    /// component, cored.
    pub fn kernel(&self) -> CoreGraph {
        let d = self.defect as usize;
        let nv = self.underlying.vertex_count();
        let edges: Vec<Edge> = self
            .underlying
            .edges()
            .iter()
            .zip(&self.voltages)
            .flat_map(|(e, &c)| {
                (0..d).map(move |r| Edge {
                    source: e.source * d + r,
                    target: e.target * d + (r + c as usize) % d,
                    generator: e.generator,
                })
            })
            .collect();
        CoreGraph::from_edges(self.ambient_rank(), nv * d, 0, &edges).expect("well-formed cover")
    }

    /// Voltage graph of `A ∩ B` for free `A`, `B` in the same `F_k × Z/n`.
    ///
    /// Product vertices are `(v_a, v_b, r)` with `r` the accumulated
    /// difference `voltage_b − voltage_a`; a closed base path returns to
    /// `r = 0`, i.e. both factors assign its word the same residue.
    pub fn fiber_product(&self, other: &VoltageGraph) -> Result<VoltageGraph> {
        self.check_compatible(other)?;
        for g in [self, other] {
            if !g.is_free() {
                return Err(Error::NotFree {
                    defect_order: g.defect_order(),
                });
            }
        }
        let n = self.modulus;
        let rank = self.ambient_rank();
        let (a, b) = (&self.underlying, &other.underlying);
        let mut ids = std::collections::HashMap::from([((0usize, 0usize, 0u64), 0usize)]);
        let mut states = vec![(0usize, 0usize, 0u64)];
        let mut edges = Vec::new();
        let mut head = 0;
        while head < states.len() {
            let (va, vb, r) = states[head];
            let here = head;
            head += 1;
            for l in Letter::all(rank) {
                let (Some(ea), Some(eb)) = (a.edge_along(va, l), b.edge_along(vb, l)) else {
                    continue;
                };
                let (ca, cb) = (self.voltages[ea], other.voltages[eb]);
                let delta = (cb + n - ca) % n;
                let r2 = if l.is_inverse() {
                    (r + n - delta) % n
                } else {
                    (r + delta) % n
                };
                let key = (
                    a.step(va, l).expect("edge"),
                    b.step(vb, l).expect("edge"),
                    r2,
                );
                let next = *ids.entry(key).or_insert_with(|| {
                    states.push(key);
                    states.len() - 1
                });
                if !l.is_inverse() {
                    edges.push(RawEdge {
                        source: here,
                        target: next,
                        generator: l.generator(),
                        voltage: ca,
                    });
                }
            }
        }
        let folded = fold::fold(rank, n, states.len(), 0, edges, &[]);
        Ok(VoltageGraph::from_folded(rank, n, &folded))
    }

    fn check_compatible(&self, other: &VoltageGraph) -> Result<()> {
        if self.ambient_rank() != other.ambient_rank() {
            return Err(Error::RankMismatch {
                left: self.ambient_rank(),
                right: other.ambient_rank(),
            });
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }
}

/// The pair `(A, B)` in `F_2 × Z/n` with `A = α⁻¹((k−1)Z) × {0}` and
/// `B = {(b, β(b)/(l−1)) : b ∈ β⁻¹((l−1)Z)}`, where `α`, `β` are the
/// exponent sums of `x` and `y`.
pub fn extremal_family(k: usize, l: usize, n: u64) -> Result<(VoltageGraph, VoltageGraph)> {
    if k < 2 || l < 2 || n < 1 {
        return Err(Error::InvalidParameter(format!(
            "extremal family needs k ≥ 2, l ≥ 2, n ≥ 1 (got k = {k}, l = {l}, n = {n})"
        )));
    }
    let x = Word::generator(2, 1)?;
    let y = Word::generator(2, 2)?;
    let mut a = vec![(x.pow(k as i64 - 1), 0)];
    for i in 0..=(k as i64 - 2) {
        a.push((x.pow(i).mul(&y)?.mul(&x.pow(-i))?, 0));
    }
    let mut b = vec![(y.pow(l as i64 - 1), 1 % n)];
    for j in 0..=(l as i64 - 2) {
        b.push((y.pow(j).mul(&x)?.mul(&y.pow(-j))?, 0));
    }
    Ok((VoltageGraph::fold(&a, 2, n)?, VoltageGraph::fold(&b, 2, n)?))
}

/// Comparison of `rank(A ∩ B) − 1` against the product bound and two
/// earlier bounds, for free nontrivial `A`, `B ≤ F_k × Z/n` (`|G:F| = n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub modulus: u64,
    pub rank_a: u64,
    pub rank_b: u64,
    pub rank_intersection: u64,
    /// `max(0, rank(A ∩ B) − 1)`
    pub lhs: u64,
    /// `n · (rank A − 1)(rank B − 1)`
    pub rhs_theorem1: u64,
    /// `6 n (rank A − 1)(rank B − 1)`
    pub rhs_za14: u64,
    /// `n² (rank A − 1)(rank B − 1) + n − 1`
    pub rhs_ass15: u64,
    pub equality: bool,
    pub holds: bool,
}

impl BoundReport {
    pub fn from_ranks(modulus: u64, rank_a: u64, rank_b: u64, rank_intersection: u64) -> Self {
        let n = modulus;
        let product = (rank_a - 1) * (rank_b - 1);
        let lhs = rank_intersection.saturating_sub(1);
        let rhs_theorem1 = n * product;
        BoundReport {
            modulus,
            rank_a,
            rank_b,
            rank_intersection,
            lhs,
            rhs_theorem1,
            rhs_za14: 6 * rhs_theorem1,
            rhs_ass15: n * n * product + n - 1,
            equality: lhs == rhs_theorem1,
            holds: lhs <= rhs_theorem1,
        }
    }
}

pub fn verify_bound(a: &VoltageGraph, b: &VoltageGraph) -> Result<BoundReport> {
    a.check_compatible(b)?;
    let rank_a = a.rank()?;
    let rank_b = b.rank()?;
    if rank_a == 0 || rank_b == 0 {
        return Err(Error::TrivialSubgroup);
    }
    let ab = a.fiber_product(b)?;
    let rank_ab = ab.rank()?;
    Ok(BoundReport::from_ranks(
        a.modulus(),
        rank_a as u64,
        rank_b as u64,
        rank_ab as u64,
    ))
}
