mod common;

use common::{is_nielsen_reduced, products_up_to, to_word};
use hnrank::harness::{random_complete_graph, random_subgroup, random_word, rng_for};
use hnrank::{CoreGraph, Index, Word};
use rand::seq::SliceRandom;
use rand::Rng;

fn random_nielsen_gens<R: Rng>(rng: &mut R, rank: usize) -> Vec<Vec<i64>> {
    loop {
        let count = rng.gen_range(1..=3);
        let gens: Vec<Vec<i64>> = (0..count)
            .map(|_| random_word(rng, rank, 4).to_signed())
            .collect();
        if is_nielsen_reduced(&gens) {
            return gens;
        }
    }
}

fn fold(gens: &[Vec<i64>], rank: usize) -> CoreGraph {
    let words: Vec<Word> = gens.iter().map(|g| to_word(g, rank)).collect();
    CoreGraph::fold_from_generators(&words, rank).unwrap()
}

#[test]
fn membership_matches_brute_force() {
    let mut rng = rng_for(11, 0);
    let words = Word::all_up_to(2, 6);
    for _ in 0..40 {
        let gens = random_nielsen_gens(&mut rng, 2);
        let g = fold(&gens, 2);
        let members = products_up_to(&gens, 6, 6);
        for w in &words {
            assert_eq!(
                g.contains(w).unwrap(),
                members.contains(&w.to_signed()),
                "gens {gens:?}, word {w}"
            );
        }
    }
}

#[test]
fn membership_is_sound_for_arbitrary_generators() {
    let mut rng = rng_for(12, 0);
    for _ in 0..60 {
        let gens: Vec<Vec<i64>> = (0..rng.gen_range(2..=4))
            .map(|_| random_word(&mut rng, 2, 6).to_signed())
            .collect();
        let g = fold(&gens, 2);
        for p in products_up_to(&gens, 4, 12) {
            assert!(g.contains(&to_word(&p, 2)).unwrap(), "gens {gens:?}, product {p:?}");
        }
    }
}

#[test]
fn fiber_product_example_against_brute_force() {
    // ⟨x², y⟩ ∩ ⟨x, y²⟩ = ⟨x², y²⟩
    let a = vec![vec![1, 1], vec![2]];
    let b = vec![vec![1], vec![2, 2]];
    assert!(is_nielsen_reduced(&a) && is_nielsen_reduced(&b));
    let ab = fold(&a, 2).fiber_product(&fold(&b, 2)).unwrap();
    assert_eq!((ab.vertex_count(), ab.edges().len(), ab.rank()), (3, 4, 2));
    let (ma, mb) = (products_up_to(&a, 8, 8), products_up_to(&b, 8, 8));
    for w in Word::all_up_to(2, 8) {
        let s = w.to_signed();
        assert_eq!(ab.contains(&w).unwrap(), ma.contains(&s) && mb.contains(&s), "{w}");
    }
    let basis = ab.basis();
    assert_eq!(basis.len(), 2);
    let expected: Vec<Word> = [vec![1, 1], vec![2, 2]].iter().map(|g| to_word(g, 2)).collect();
    for w in &expected {
        assert!(basis.contains(w));
    }
}

#[test]
fn folding_is_confluent() {
    let mut rng = rng_for(13, 0);
    for _ in 0..200 {
        let rank = rng.gen_range(2..=3);
        let mut gens: Vec<Word> = (0..rng.gen_range(1..=5))
            .map(|_| random_word(&mut rng, rank, 7))
            .collect();
        let g = CoreGraph::fold_from_generators(&gens, rank).unwrap();
        gens.shuffle(&mut rng);
        let inverted: Vec<Word> = gens.iter().map(|w| w.inv()).collect();
        assert_eq!(CoreGraph::fold_from_generators(&gens, rank).unwrap(), g);
        assert_eq!(CoreGraph::fold_from_generators(&inverted, rank).unwrap(), g);
    }
}

#[test]
fn basis_regenerates_and_is_free() {
    let mut rng = rng_for(14, 0);
    for _ in 0..200 {
        let rank = rng.gen_range(2..=3);
        let g = random_subgroup(&mut rng, rank);
        let basis = g.basis();
        assert_eq!(basis.len(), g.rank());
        assert!(basis.iter().all(|b| g.contains(b).unwrap()));
        assert_eq!(CoreGraph::fold_from_generators(&basis, rank).unwrap(), g);
    }
}

#[test]
fn schreier_identity() {
    let mut rng = rng_for(15, 0);
    for _ in 0..200 {
        let rank = rng.gen_range(2..=3);
        let size = rng.gen_range(1..=9);
        let g = random_complete_graph(&mut rng, rank, size);
        let Index::Finite(index) = g.index() else {
            panic!("complete graph reported infinite index");
        };
        assert_eq!(g.rank() - 1, index * (rank - 1));
    }
}

#[test]
fn hanna_neumann_inequality_in_free_groups() {
    let mut rng = rng_for(16, 0);
    for _ in 0..300 {
        let rank = rng.gen_range(2..=3);
        let a = random_subgroup(&mut rng, rank);
        let b = random_subgroup(&mut rng, rank);
        if a.rank() == 0 || b.rank() == 0 {
            continue;
        }
        let ab = a.fiber_product(&b).unwrap();
        let lhs = ab.rank() as i64 - 1;
        let rhs = (a.rank() as i64 - 1) * (b.rank() as i64 - 1);
        assert!(lhs <= rhs, "rank {} vs {} · {}", ab.rank(), a.rank(), b.rank());
    }
}

#[test]
fn fiber_product_with_self_and_trivial() {
    let mut rng = rng_for(17, 0);
    for _ in 0..50 {
        let a = random_subgroup(&mut rng, 2);
        assert_eq!(a.fiber_product(&a).unwrap(), a);
        assert_eq!(a.fiber_product(&CoreGraph::bouquet(2)).unwrap(), a);
        assert_eq!(a.fiber_product(&CoreGraph::trivial(2)).unwrap(), CoreGraph::trivial(2));
    }
}
