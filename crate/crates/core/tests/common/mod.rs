//! Generators and independent oracles shared by the integration tests.
//!
//! Nothing here calls into the library's linear algebra or cover search;
//! the oracles are deliberately naive so they can check those routines.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use raag_genus::{validate_diagram, Graph, HomologyClass, OrientedGraph, Slot, Square, VanKampenDiagram, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Zero-padded so that sorted order matches index order.
pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i:02}")).collect()
}

pub fn graph(vertices: &[String], edges: &[(usize, usize)]) -> Graph {
    Graph::new(vertices.iter().cloned(), edges.iter().map(|&(a, b)| (vertices[a].clone(), vertices[b].clone())))
        .expect("generated graphs are simple")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    graph(&names("k", n), &edges)
}

/// `K_{n,m}` with parts `a00..` and `b00..`.
pub fn complete_bipartite(n: usize, m: usize) -> Graph {
    let mut vs = names("a", n);
    vs.extend(names("b", m));
    let edges: Vec<_> = (0..n).flat_map(|i| (0..m).map(move |j| (i, n + j))).collect();
    graph(&vs, &edges)
}

/// Each vertex after the first joins a random earlier vertex with
/// probability 0.8, so some trees split into several components.
pub fn random_forest(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for k in 1..n {
        if rng.gen_bool(0.8) {
            let parent = order[rng.gen_range(0..k)];
            edges.push((parent.min(order[k]), parent.max(order[k])));
        }
    }
    graph(&names("t", n), &edges)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    graph(&names("g", n), &edges)
}

/// A class from labels `l(vertex_i, vertex_j)` keyed by vertex indices.
pub fn class(g: &Graph, labels: &[((usize, usize), i64)]) -> HomologyClass {
    let oriented = Arc::new(OrientedGraph::lexicographic(g.clone()));
    let vs = g.vertices();
    HomologyClass::new(oriented, labels.iter().map(|&((i, j), l)| (vs[i].as_str(), vs[j].as_str(), BigInt::from(l))))
        .expect("labels sit on edges")
}

/// Labels as a dense skew matrix, read one edge at a time through `label_at`.
pub fn dense_labels(c: &HomologyClass) -> Vec<Vec<i64>> {
    let n = c.graph().vertex_count();
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if let Some(l) = c.label_at(i, j) {
                *x = i64::try_from(l).expect("test labels are small");
            }
        }
    }
    m
}

const P: i128 = (1 << 61) - 1;

/// Rank over `Z / (2^61 - 1)`. Agrees with the rational rank whenever every
/// minor is below `2^61` in absolute value, which Hadamard's bound
/// guarantees for the matrix sizes and entry ranges used here.
pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| (x as i128).rem_euclid(P)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        let inv = pow_mod(a[rank][c], P - 2);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % P;
                for k in c..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k] % P).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i128, mut e: i128) -> i128 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// Minimum vertex cover of the support by trying every vertex subset.
pub fn brute_force_cover(c: &HomologyClass) -> usize {
    let n = c.graph().vertex_count();
    assert!(n <= 16, "subset enumeration is exponential");
    let m = dense_labels(c);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| m[i][j] != 0).collect();
    (0u32..1 << n)
        .filter(|s| edges.iter().all(|&(i, j)| s & (1 << i) != 0 || s & (1 << j) != 0))
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

/// Complete multipartite: non-adjacency is an equivalence relation. Checked
/// on the vertices touched by the support, within the support graph.
pub fn support_is_multipartite(c: &HomologyClass) -> bool {
    let m = dense_labels(c);
    let vs: Vec<usize> = (0..m.len()).filter(|&i| m[i].iter().any(|&x| x != 0)).collect();
    let adj = |i: usize, j: usize| m[i][j] != 0;
    vs.iter().all(|&x| {
        vs.iter().all(|&y| vs.iter().all(|&z| x == y || y == z || x == z || adj(x, y) || adj(y, z) || !adj(x, z)))
    })
}

/// A random valid diagram with `squares` squares. Each square is a
/// commutator of a random edge (or of a generator with itself); sides are
/// glued by a random bijection between the `+` and `-` slots of each
/// generator.
pub fn random_diagram(rng: &mut ChaCha8Rng, g: &Graph, squares: usize) -> VanKampenDiagram {
    let vs = g.vertices();
    let mut sqs = Vec::new();
    for _ in 0..squares {
        let (v, w) = if g.edge_count() == 0 || rng.gen_bool(0.1) {
            let v = rng.gen_range(0..vs.len());
            (v, v)
        } else {
            let (a, b) = g.edges()[rng.gen_range(0..g.edge_count())];
            if rng.gen_bool(0.5) {
                (a, b)
            } else {
                (b, a)
            }
        };
        let sign = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { 1 } else { -1 };
        let (e, f) = (sign(rng), sign(rng));
        sqs.push(Square::commutator(vs[v].clone(), e, vs[w].clone(), f));
    }
    let mut slots: BTreeMap<(&VertexId, i8), Vec<Slot>> = BTreeMap::new();
    for (q, sq) in sqs.iter().enumerate() {
        for (k, side) in sq.sides.iter().enumerate() {
            slots.entry((&side.generator, side.sign)).or_default().push((q, k));
        }
    }
    let mut gluing = Vec::new();
    for ((generator, sign), plus) in &slots {
        if *sign != 1 {
            continue;
        }
        let mut minus = slots[&(*generator, -1)].clone();
        minus.shuffle(rng);
        gluing.extend(plus.iter().copied().zip(minus));
    }
    validate_diagram(g.clone(), sqs, &gluing).expect("generated diagrams are valid")
}

/// Genus from the rotation around each corner: crossing side `k` of square
/// `q` lands on side `k'` of `q'`, and corner `k` of `q` is corner `k' + 1`
/// of `q'`. Vertices are the orbits, `chi = V - E + F` with `E = 2F`.
pub fn rotation_genus(d: &VanKampenDiagram) -> usize {
    let gluing = d.gluing();
    let f = d.squares().len();
    let mut partner = vec![[(0, 0); 4]; f];
    for &(a, b) in &gluing {
        partner[a.0][a.1] = b;
        partner[b.0][b.1] = a;
    }
    // Components by depth-first search over squares.
    let mut comp = vec![usize::MAX; f];
    let mut count = 0;
    for s in 0..f {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = count;
        while let Some(q) = stack.pop() {
            for &(p, _) in &partner[q] {
                if comp[p] == usize::MAX {
                    comp[p] = count;
                    stack.push(p);
                }
            }
        }
        count += 1;
    }
    let mut faces = vec![0i64; count];
    for &c in &comp {
        faces[c] += 1;
    }
    let mut verts = vec![0i64; count];
    let mut seen = vec![[false; 4]; f];
    for q in 0..f {
        for k in 0..4 {
            if seen[q][k] {
                continue;
            }
            verts[comp[q]] += 1;
            let (mut a, mut b) = (q, k);
            while !seen[a][b] {
                seen[a][b] = true;
                let (p, j) = partner[a][b];
                (a, b) = (p, (j + 1) % 4);
            }
        }
    }
    (0..count)
        .map(|c| {
            let chi = verts[c] - faces[c];
            assert!(chi <= 2 && chi % 2 == 0, "orientable closed surface");
            ((2 - chi) / 2) as usize
        })
        .sum()
}

/// Induced labels by summing `s0 * s1` onto `l(gen0, gen1)` for each square.
pub fn induced_labels(d: &VanKampenDiagram) -> Vec<Vec<i64>> {
    let g = d.ambient();
    let n = g.vertex_count();
    let mut m = vec![vec![0i64; n]; n];
    for sq in d.squares() {
        let i = g.index_of(sq.sides[0].generator.as_str()).unwrap();
        let j = g.index_of(sq.sides[1].generator.as_str()).unwrap();
        if i != j {
            let s = i64::from(sq.sides[0].sign * sq.sides[1].sign);
            m[i][j] += s;
            m[j][i] -= s;
        }
    }
    m
}

pub fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("small integer")
}
