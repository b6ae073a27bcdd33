//! Independent oracles shared by the integration and acceptance tests.
//! Nothing here calls folding, fiber products or the Magnus coefficient DP.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use hnrank::Word;

/// Free reduction on signed indices, written out separately from `Word`.
pub fn reduce(letters: impl IntoIterator<Item = i64>) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse(w: &[i64]) -> Vec<i64> {
    w.iter().rev().map(|l| -l).collect()
}

pub fn product(parts: &[&[i64]]) -> Vec<i64> {
    reduce(parts.iter().flat_map(|p| p.iter().copied()))
}

/// Nielsen conditions N0–N2 on a generating set (checked over `X ∪ X⁻¹`).
pub fn is_nielsen_reduced(gens: &[Vec<i64>]) -> bool {
    if gens.iter().any(|g| g.is_empty()) {
        return false;
    }
    let mut sym: Vec<Vec<i64>> = Vec::new();
    for g in gens {
        sym.push(g.clone());
        sym.push(inverse(g));
    }
    // distinct generators must not coincide or be mutually inverse
    for i in 0..sym.len() {
        for j in 0..sym.len() {
            if i / 2 != j / 2 && sym[i] == sym[j] {
                return false;
            }
        }
    }
    for u in &sym {
        for v in &sym {
            let uv = product(&[u, v]);
            if uv.is_empty() {
                continue;
            }
            if uv.len() < u.len() || uv.len() < v.len() {
                return false;
            }
            for w in &sym {
                if product(&[v, w]).is_empty() {
                    continue;
                }
                let uvw = product(&[u, v, w]);
                if uvw.len() as i64 <= u.len() as i64 - v.len() as i64 + w.len() as i64 {
                    return false;
                }
            }
        }
    }
    true
}

/// Every element obtained as a reduced product of at most `factors`
/// generators or inverses, restricted to length `≤ max_len`.
pub fn products_up_to(gens: &[Vec<i64>], factors: usize, max_len: usize) -> HashSet<Vec<i64>> {
    let mut sym: Vec<(usize, Vec<i64>)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        sym.push((2 * i, g.clone()));
        sym.push((2 * i + 1, inverse(g)));
    }
    let mut out = HashSet::from([Vec::new()]);
    // (last factor id, value)
    let mut layer: Vec<(Option<usize>, Vec<i64>)> = vec![(None, Vec::new())];
    for _ in 0..factors {
        let mut next = Vec::new();
        for (last, value) in &layer {
            for (id, s) in &sym {
                if let Some(l) = last {
                    if l ^ 1 == *id {
                        continue;
                    }
                }
                let v = product(&[value, s]);
                if v.len() <= max_len {
                    out.insert(v.clone());
                }
                next.push((Some(*id), v));
            }
        }
        layer = next;
    }
    out
}

pub fn to_word(w: &[i64], rank: usize) -> Word {
    Word::from_signed(w, rank).unwrap()
}

/// Truncated Magnus image of a word, by brute-force expansion of the
/// product of the letter series (all choices of one term per letter).
pub fn magnus_oracle(w: &[i64], degree: usize) -> BTreeMap<Vec<usize>, i64> {
    let mut acc: BTreeMap<Vec<usize>, i64> = BTreeMap::from([(Vec::new(), 1)]);
    for &l in w {
        let g = l.unsigned_abs() as usize;
        let series: Vec<(usize, i64)> = if l > 0 {
            vec![(0, 1), (1, 1)]
        } else {
            (0..=degree).map(|k| (k, if k % 2 == 0 { 1 } else { -1 })).collect()
        };
        let mut next: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (m, c) in &acc {
            for &(k, s) in &series {
                if m.len() + k > degree {
                    continue;
                }
                let mut m2 = m.clone();
                m2.extend(std::iter::repeat_n(g, k));
                *next.entry(m2).or_insert(0) += c * s;
            }
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc
}

/// Sign of the deg-lex smallest non-constant term of the oracle expansion.
pub fn magnus_sign_oracle(w: &[i64]) -> i64 {
    let poly = magnus_oracle(w, w.len().max(1));
    let mut terms: Vec<(&Vec<usize>, &i64)> = poly.iter().filter(|(m, _)| !m.is_empty()).collect();
    terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
    terms.first().map(|(_, c)| c.signum()).unwrap_or(0)
}

/// One orbit-intersection trial: random free `A`, `B ≤ F_2 × Z/n` acting on
/// `ball`, `A`-invariant `Y` and `B`-invariant `Z` grown from random seeds.
/// Returns `(orbits of A∩B on Y∩Z, orbits of A on Y, orbits of B on Z)`.
#[allow(dead_code)]
pub fn orbit_intersection_trial<R: rand::Rng>(
    rng: &mut R,
    ball: &hnrank::ForestBall,
) -> (usize, usize, usize) {
    use hnrank::harness::random_generators;
    use hnrank::{BallVertex, GroupElement, VoltageGraph};
    use std::collections::BTreeSet;

    let n = ball.action_modulus();
    let free_subgroup = |rng: &mut R| loop {
        let gens = random_generators(rng, 2, n);
        let gens: Vec<(hnrank::Word, u64)> = gens
            .into_iter()
            .map(|(w, c)| {
                let short = w.prefix(w.len().min(3));
                (if short.is_empty() { w } else { short }, c)
            })
            .collect();
        let v = VoltageGraph::fold(&gens, 2, n).unwrap();
        if v.is_free() {
            return (v, gens);
        }
    };
    let elements = |gens: &[(hnrank::Word, u64)]| -> Vec<GroupElement> {
        gens.iter().map(|(w, c)| GroupElement::new(w.clone(), *c)).collect()
    };
    let seeds = |rng: &mut R| -> Vec<BallVertex> {
        let all: Vec<BallVertex> = ball.vertices().filter(|v| ball.word(*v).len() <= 2).collect();
        (0..rng.gen_range(1..=3)).map(|_| all[rng.gen_range(0..all.len())]).collect()
    };
    let (a, gens_a) = free_subgroup(rng);
    let (b, gens_b) = free_subgroup(rng);
    let (ga, gb) = (elements(&gens_a), elements(&gens_b));
    let gab = elements(&a.fiber_product(&b).unwrap().generators());
    let y = ball.invariant_subforest(&ga, &seeds(rng)).unwrap();
    let z = ball.invariant_subforest(&gb, &seeds(rng)).unwrap();
    let yz: BTreeSet<_> = y.edges.intersection(&z.edges).copied().collect();
    (
        ball.count_orbits(&gab, &yz).unwrap().orbits,
        ball.count_orbits(&ga, &y.edges).unwrap().orbits,
        ball.count_orbits(&gb, &z.edges).unwrap().orbits,
    )
}
