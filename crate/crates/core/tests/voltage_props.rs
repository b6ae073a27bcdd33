mod common;

use common::product;
use hnrank::harness::{random_instance, rng_for};
use hnrank::stallings::Index;
use hnrank::voltage::{extremal_family, verify_bound};
use hnrank::{CoreGraph, Word};
use rand::Rng;

#[test]
fn extremal_family_is_sharp() {
    for k in 2..=3 {
        for l in 2..=3 {
            for n in 1..=3u64 {
                let (a, b) = extremal_family(k, l, n).unwrap();
                let r = verify_bound(&a, &b).unwrap();
                let expected = n * (k as u64 - 1) * (l as u64 - 1);
                assert_eq!((r.rank_a, r.rank_b), (k as u64, l as u64));
                assert_eq!(r.rank_intersection, expected + 1);
                assert_eq!((r.lhs, r.rhs_theorem1), (expected, expected));
                assert!(r.equality && r.holds);
            }
        }
    }
}

#[test]
fn extremal_index_bookkeeping() {
    for (k, l, n) in [(2, 2, 1), (3, 2, 2), (2, 4, 3), (3, 3, 2)] {
        let (a, b) = extremal_family(k, l, n).unwrap();
        assert_eq!(a.underlying().index(), Index::Finite(k - 1));
        assert_eq!(b.underlying().index(), Index::Finite(l - 1));
        let ab = a.fiber_product(&b).unwrap();
        assert_eq!(ab.underlying().index(), Index::Finite(n as usize * (k - 1) * (l - 1)));
    }
}

#[test]
fn projection_of_extremal_b_is_b0() {
    for l in 2..=4i64 {
        let (x, y) = (Word::generator(2, 1).unwrap(), Word::generator(2, 2).unwrap());
        let mut gens = vec![y.pow(l - 1)];
        gens.extend((0..l - 1).map(|j| y.pow(j).mul(&x).unwrap().mul(&y.pow(-j)).unwrap()));
        let b0 = CoreGraph::fold_from_generators(&gens, 2).unwrap();
        for n in 1..=4 {
            let (_, b) = extremal_family(2, l as usize, n).unwrap();
            assert_eq!(b.underlying(), &b0);
            assert_eq!(b.rank().unwrap(), b0.rank());
        }
    }
}

#[test]
fn bound_ordering_on_random_instances() {
    for n in 1..=3 {
        for i in 0..40 {
            let r = random_instance(2, n, 41, i).unwrap().report;
            assert!(r.holds);
            assert!(r.rhs_theorem1 <= r.rhs_za14);
            assert_eq!(r.rhs_za14, 6 * r.rhs_theorem1);
            assert_eq!(r.rhs_ass15, n * n * (r.rank_a - 1) * (r.rank_b - 1) + n - 1);
        }
    }
}

#[test]
fn membership_consistency_for_extremal_b() {
    let mut rng = rng_for(42, 0);
    for n in 2..=4u64 {
        let (_, b) = extremal_family(2, 3, n).unwrap();
        let gens = [(vec![2, 2], 1u64), (vec![1], 0), (vec![2, 1, -2], 0)];
        for _ in 0..200 {
            let mut word: Vec<i64> = Vec::new();
            let mut residue = 0u64;
            for _ in 0..rng.gen_range(0..=5) {
                let (g, c) = &gens[rng.gen_range(0..gens.len())];
                if rng.gen_bool(0.5) {
                    word = product(&[&word, g]);
                    residue = (residue + c) % n;
                } else {
                    word = product(&[&word, &common::inverse(g)]);
                    residue = (residue + n - c) % n;
                }
            }
            let w = Word::from_signed(&word, 2).unwrap();
            assert!(b.contains(&w, residue).unwrap());
            if n > 1 {
                assert!(!b.contains(&w, (residue + 1) % n).unwrap());
            }
        }
    }
}

#[test]
fn non_free_inputs_are_rejected() {
    let x = Word::generator(2, 1).unwrap();
    let a = hnrank::VoltageGraph::fold(&[(x.clone(), 0), (x, 1)], 2, 2).unwrap();
    assert!(!a.is_free());
    assert!(verify_bound(&a, &a).is_err());
}
