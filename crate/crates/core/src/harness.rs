//! Seeded random subgroups and batch verification of the rank bound.
//!
//! Instance `i` of a batch draws from a ChaCha8 stream selected by `i` under
//! the batch seed, so results do not depend on scheduling and reruns with
//! the same seed are byte-identical.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::stallings::CoreGraph;
use crate::voltage::{verify_bound, BoundReport, VoltageGraph};
use crate::word::{Letter, Word};

/// Draws per instance before giving up.
pub const MAX_ATTEMPTS: usize = 10_000;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A uniformly random reduced word of length `len`.
pub fn random_word_of_len<R: Rng + ?Sized>(rng: &mut R, rank: usize, len: usize) -> Word {
    let letters: Vec<Letter> = Letter::all(rank).collect();
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = *letters.choose(rng).expect("rank ≥ 1");
        if out.last() != Some(&l.inverse()) {
            out.push(l);
        }
    }
    Word::reduce(out, rank).expect("letters in range")
}

/// A random reduced word with length uniform in `1..=max_len`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    random_word_of_len(rng, rank, len)
}

/// 2–4 generators of length ≤ 6 with uniform residues mod `modulus`.
pub fn random_generators<R: Rng + ?Sized>(rng: &mut R, rank: usize, modulus: u64) -> Vec<(Word, u64)> {
    let count = rng.gen_range(2..=4);
    (0..count)
        .map(|_| (random_word(rng, rank, 6), rng.gen_range(0..modulus)))
        .collect()
}

/// Random subgroup of `F_rank` from 2–4 generators of length ≤ 6.
pub fn random_subgroup<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> CoreGraph {
    let gens: Vec<Word> = random_generators(rng, rank, 1).into_iter().map(|(w, _)| w).collect();
    CoreGraph::fold_from_generators(&gens, rank).expect("ranks agree")
}

/// Random complete (finite-index) core graph: `size` vertices, each generator
/// acting by a uniform random permutation, restricted to the based component.
pub fn random_complete_graph<R: Rng + ?Sized>(rng: &mut R, rank: usize, size: usize) -> CoreGraph {
    let mut edges = Vec::with_capacity(rank * size);
    for g in 1..=rank {
        let mut perm: Vec<usize> = (0..size).collect();
        perm.shuffle(rng);
        for (v, &u) in perm.iter().enumerate() {
            edges.push(crate::stallings::Edge {
                source: v,
                target: u,
                generator: g,
            });
        }
    }
    CoreGraph::from_edges(rank, size, 0, &edges).expect("well-formed")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub index: u64,
    pub gens_a: Vec<(Word, u64)>,
    pub gens_b: Vec<(Word, u64)>,
    /// Rejected draws before this one was accepted.
    pub discarded: usize,
    pub report: BoundReport,
}

/// Draws pairs until both are free and their intersection has rank ≥ 1.
pub fn random_instance(rank: usize, modulus: u64, seed: u64, index: u64) -> Result<Instance> {
    let mut rng = rng_for(seed, index);
    for discarded in 0..MAX_ATTEMPTS {
        let gens_a = random_generators(&mut rng, rank, modulus);
        let gens_b = random_generators(&mut rng, rank, modulus);
        let a = VoltageGraph::fold(&gens_a, rank, modulus)?;
        let b = VoltageGraph::fold(&gens_b, rank, modulus)?;
        if !a.is_free() || !b.is_free() {
            continue;
        }
        let report = verify_bound(&a, &b)?;
        if report.rank_intersection == 0 {
            continue;
        }
        return Ok(Instance {
            index,
            gens_a,
            gens_b,
            discarded,
            report,
        });
    }
    Err(Error::InvalidParameter(format!(
        "no informative instance after {MAX_ATTEMPTS} draws (rank {rank}, modulus {modulus})"
    )))
}

/// `count` instances in parallel, returned in index order.
pub fn verify_random(rank: usize, modulus: u64, seed: u64, count: u64) -> Result<Vec<Instance>> {
    (0..count)
        .into_par_iter()
        .map(|i| random_instance(rank, modulus, seed, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::Index;

    #[test]
    fn batches_are_reproducible() {
        let a = verify_random(2, 2, 7, 20).unwrap();
        let b = verify_random(2, 2, 7, 20).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|i| i.report.holds));
        assert!(a.iter().enumerate().all(|(i, inst)| inst.index == i as u64));
    }

    #[test]
    fn words_are_reduced_and_bounded() {
        let mut rng = rng_for(1, 0);
        for _ in 0..200 {
            let w = random_word(&mut rng, 3, 6);
            assert!((1..=6).contains(&w.len()));
        }
    }

    #[test]
    fn complete_graphs_are_complete() {
        let mut rng = rng_for(3, 0);
        for _ in 0..50 {
            let g = random_complete_graph(&mut rng, 2, 6);
            assert!(matches!(g.index(), Index::Finite(m) if m <= 6));
        }
    }
}
