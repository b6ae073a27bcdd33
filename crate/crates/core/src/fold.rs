//! Stallings folding with `Z/n` voltages.
//!
//! A plain core graph is the `n = 1` case. Vertices are merged with a
//! weighted union-find whose weights are gauge shifts, so two parallel edges
//! with different voltages either merge their far endpoints (after
//! re-gauging one side) or, when the far endpoints already coincide,
//! contribute their voltage difference to the defect subgroup.

use std::collections::{BTreeMap, VecDeque};

use num_integer::Integer;

use crate::word::Letter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct RawEdge {
    pub source: usize,
    pub target: usize,
    pub generator: usize,
    pub voltage: u64,
}

/// Canonical output: base is vertex 0, vertices numbered in breadth-first
/// order (letters in [`Letter`] order), edges sorted by `(source, generator)`,
/// BFS-tree edges carry voltage 0 and all voltages are reduced mod `defect`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Folded {
    pub vertex_count: usize,
    pub edges: Vec<RawEdge>,
    /// Divisor `d` of the modulus; the defect subgroup is `dZ/nZ`.
    pub defect: u64,
}

struct Folder {
    modulus: u64,
    defect: u64,
    parent: Vec<usize>,
    // pot(x) = off[x] + pot(parent[x]); roots have pot 0
    off: Vec<u64>,
    size: Vec<usize>,
    edges: Vec<RawEdge>,
    alive: Vec<bool>,
    adj: Vec<BTreeMap<Letter, Vec<usize>>>,
}

impl Folder {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b % self.modulus) % self.modulus
    }

    fn find(&mut self, x: usize) -> (usize, u64) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (root, pp) = self.find(p);
        let pot = self.add(self.off[x], pp);
        self.parent[x] = root;
        self.off[x] = pot;
        (root, pot)
    }

    fn effective(&mut self, e: usize) -> (usize, usize, u64) {
        let RawEdge {
            source,
            target,
            voltage,
            ..
        } = self.edges[e];
        let (rs, ps) = self.find(source);
        let (rt, pt) = self.find(target);
        let v = self.sub(self.add(voltage, ps), pt);
        (rs, rt, v)
    }

    /// Merges root `b` into root `a`, with `pot(b) = shift` relative to `a`.
    fn union(&mut self, a: usize, b: usize, shift: u64) -> usize {
        let (keep, gone, s) = if self.size[a] >= self.size[b] {
            (a, b, shift)
        } else {
            (b, a, self.sub(0, shift))
        };
        self.parent[gone] = keep;
        self.off[gone] = s;
        self.size[keep] += self.size[gone];
        let moved = std::mem::take(&mut self.adj[gone]);
        for (letter, mut list) in moved {
            self.adj[keep].entry(letter).or_default().append(&mut list);
        }
        keep
    }

    fn first_conflict(&mut self, r: usize) -> Option<(Letter, usize, usize)> {
        let alive = &self.alive;
        for (&letter, list) in self.adj[r].iter_mut() {
            list.retain(|&e| alive[e]);
            if list.len() >= 2 {
                return Some((letter, list[0], list[1]));
            }
        }
        None
    }

    fn fold_pair(&mut self, letter: Letter, e1: usize, e2: usize) -> usize {
        let (s1, t1, c1) = self.effective(e1);
        let (s2, t2, c2) = self.effective(e2);
        self.alive[e2] = false;
        // outgoing pair: far ends are targets; incoming pair: sources
        let (f1, f2, shift) = if letter.is_inverse() {
            (s1, s2, self.sub(c1, c2))
        } else {
            (t1, t2, self.sub(c2, c1))
        };
        if f1 == f2 {
            let diff = self.sub(c1, c2);
            self.defect = self.defect.gcd(&diff);
            f1
        } else {
            self.union(f1, f2, shift)
        }
    }
}

pub(crate) fn fold(
    rank: usize,
    modulus: u64,
    vertex_count: usize,
    base: usize,
    edges: Vec<RawEdge>,
    defect_generators: &[u64],
) -> Folded {
    assert!(modulus >= 1);
    let mut defect = modulus;
    for &c in defect_generators {
        defect = defect.gcd(&(c % modulus));
    }
    let mut f = Folder {
        modulus,
        defect,
        parent: (0..vertex_count).collect(),
        off: vec![0; vertex_count],
        size: vec![1; vertex_count],
        alive: vec![true; edges.len()],
        adj: vec![BTreeMap::new(); vertex_count],
        edges,
    };
    for (i, e) in f.edges.iter().enumerate() {
        f.adj[e.source].entry(Letter::pos(e.generator)).or_default().push(i);
        f.adj[e.target].entry(Letter::neg(e.generator)).or_default().push(i);
    }

    let mut queue: VecDeque<usize> = (0..vertex_count).collect();
    while let Some(v) = queue.pop_front() {
        let mut r = f.find(v).0;
        while let Some((letter, e1, e2)) = f.first_conflict(r) {
            let merged = f.fold_pair(letter, e1, e2);
            queue.push_back(merged);
            r = f.find(r).0;
        }
    }

    let base = f.find(base).0;
    let mut live: Vec<(usize, usize, usize, u64)> = Vec::new();
    for e in 0..f.edges.len() {
        if f.alive[e] {
            let (s, t, v) = f.effective(e);
            live.push((s, t, f.edges[e].generator, v));
        }
    }
    canonicalize(rank, vertex_count, base, &live, f.defect)
}

/// Cores (keeping `base`), restricts to the based component, renumbers in BFS
/// order and gauge-fixes voltages. Input must already be folded.
fn canonicalize(
    rank: usize,
    vertex_count: usize,
    base: usize,
    edges: &[(usize, usize, usize, u64)],
    defect: u64,
) -> Folded {
    let mut alive = vec![true; edges.len()];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    let mut degree = vec![0usize; vertex_count];
    for (i, &(s, t, _, _)) in edges.iter().enumerate() {
        incident[s].push(i);
        incident[t].push(i);
        degree[s] += 1;
        degree[t] += 1;
    }
    let mut stack: Vec<usize> = (0..vertex_count)
        .filter(|&v| v != base && degree[v] == 1)
        .collect();
    while let Some(v) = stack.pop() {
        if degree[v] != 1 {
            continue;
        }
        let Some(&e) = incident[v].iter().find(|&&e| alive[e]) else {
            continue;
        };
        alive[e] = false;
        let (s, t, _, _) = edges[e];
        degree[s] -= 1;
        degree[t] -= 1;
        let other = if s == v { t } else { s };
        if other != base && degree[other] == 1 {
            stack.push(other);
        }
    }

    // adjacency of the cored graph, by letter
    let mut step: Vec<BTreeMap<Letter, (usize, usize)>> = vec![BTreeMap::new(); vertex_count];
    for (i, &(s, t, g, _)) in edges.iter().enumerate() {
        if alive[i] {
            step[s].insert(Letter::pos(g), (t, i));
            step[t].insert(Letter::neg(g), (s, i));
        }
    }

    let mut new_id = vec![usize::MAX; vertex_count];
    let mut potential = vec![0u64; vertex_count];
    let mut order = vec![base];
    new_id[base] = 0;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for l in Letter::all(rank) {
            let Some(&(u, e)) = step[v].get(&l) else {
                continue;
            };
            if new_id[u] != usize::MAX {
                continue;
            }
            new_id[u] = order.len();
            order.push(u);
            let c = edges[e].3 % defect;
            potential[u] = if l.is_inverse() {
                (potential[v] + defect - c) % defect
            } else {
                (potential[v] + c) % defect
            };
        }
    }

    let mut out: Vec<RawEdge> = edges
        .iter()
        .enumerate()
        .filter(|&(i, &(s, _, _, _))| alive[i] && new_id[s] != usize::MAX)
        .map(|(_, &(s, t, g, c))| RawEdge {
            source: new_id[s],
            target: new_id[t],
            generator: g,
            voltage: (c % defect + potential[s] + defect - potential[t]) % defect,
        })
        .collect();
    out.sort_by_key(|e| (e.source, e.generator, e.target, e.voltage));
    Folded {
        vertex_count: order.len(),
        edges: out,
        defect,
    }
}

/// Petal edges for a closed path at vertex 0 spelling `letters`; the first
/// edge carries `voltage`. New vertices are numbered from `next_vertex`.
pub(crate) fn petal(
    letters: &[Letter],
    voltage: u64,
    modulus: u64,
    next_vertex: &mut usize,
    edges: &mut Vec<RawEdge>,
) {
    let mut prev = 0;
    for (i, l) in letters.iter().enumerate() {
        let next = if i + 1 == letters.len() {
            0
        } else {
            *next_vertex += 1;
            *next_vertex - 1
        };
        let c = if i == 0 { voltage % modulus } else { 0 };
        let (source, target) = if l.is_inverse() { (next, prev) } else { (prev, next) };
        // a voltage on an inverse letter is traversed backwards
        let stored = if l.is_inverse() { (modulus - c) % modulus } else { c };
        edges.push(RawEdge {
            source,
            target,
            generator: l.generator(),
            voltage: stored,
        });
        prev = next;
    }
}
