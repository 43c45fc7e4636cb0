//! Exact minimum vertex cover.
//!
//! Branch and bound on a maximum-degree vertex (take it, or take all of its
//! neighbours), with pendant-vertex reduction, a greedy initial incumbent and a
//! maximal-matching lower bound. Only strict improvements replace the
//! incumbent, so the result is deterministic.

use crate::graph::{Graph, GraphError};

/// Default upper limit on the vertex count of one component.
pub const DEFAULT_BUDGET: usize = 64;

/// Minimum cover of `g` as sorted vertex indices, solved per component.
pub(crate) fn minimum_cover(g: &Graph, budget: usize) -> Result<Vec<usize>, GraphError> {
    let (count, label) = g.component_labels();
    let mut members = vec![Vec::new(); count];
    for (v, &c) in label.iter().enumerate() {
        members[c].push(v);
    }
    let mut cover = Vec::new();
    for m in members.iter().filter(|m| m.len() > 1) {
        if m.len() > budget {
            return Err(GraphError::SizeLimitExceeded { size: m.len(), budget });
        }
        let sub = g.induced(m);
        cover.extend(branch_and_bound_cover(&sub).into_iter().map(|v| m[v]));
    }
    cover.sort_unstable();
    Ok(cover)
}

/// Exact cover of the whole graph with no size limit.
pub fn branch_and_bound_cover(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut search = Search { best: greedy_cover(&adj), adj };
    let mut alive = vec![true; n];
    let mut chosen = Vec::new();
    search.run(&mut alive, &mut chosen);
    let mut best = search.best;
    best.sort_unstable();
    best
}

fn degree(adj: &[Vec<usize>], alive: &[bool], v: usize) -> usize {
    adj[v].iter().filter(|&&w| alive[w]).count()
}

/// Repeatedly takes a maximum-degree vertex (smallest index on ties).
fn greedy_cover(adj: &[Vec<usize>]) -> Vec<usize> {
    let mut alive = vec![true; adj.len()];
    let mut cover = Vec::new();
    loop {
        let pick = (0..adj.len())
            .filter(|&v| alive[v])
            .map(|v| (degree(adj, &alive, v), v))
            .filter(|&(d, _)| d > 0)
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match pick {
            Some((_, v)) => {
                alive[v] = false;
                cover.push(v);
            }
            None => return cover,
        }
    }
}

struct Search {
    adj: Vec<Vec<usize>>,
    best: Vec<usize>,
}

impl Search {
    fn degree(&self, alive: &[bool], v: usize) -> usize {
        degree(&self.adj, alive, v)
    }

    /// Pendant rule: a degree-one vertex never needs to be in the cover, its
    /// neighbour can always replace it. An isolated edge takes its smaller end.
    fn pendant_pick(&self, alive: &[bool]) -> Option<usize> {
        let n = self.adj.len();
        let neighbour = |v: usize| self.adj[v].iter().copied().find(|&w| alive[w]);
        let mut isolated_edge = None;
        for v in (0..n).filter(|&v| alive[v]) {
            if self.degree(alive, v) != 1 {
                continue;
            }
            let w = neighbour(v)?;
            if self.degree(alive, w) >= 2 {
                return Some(w);
            }
            isolated_edge.get_or_insert(v.min(w));
        }
        isolated_edge
    }

    /// Size of a greedy maximal matching on the remaining edges.
    fn matching_bound(&self, alive: &[bool]) -> usize {
        let mut used = vec![false; self.adj.len()];
        let mut size = 0;
        for v in 0..self.adj.len() {
            if !alive[v] || used[v] {
                continue;
            }
            if let Some(&w) = self.adj[v].iter().find(|&&w| alive[w] && !used[w]) {
                used[v] = true;
                used[w] = true;
                size += 1;
            }
        }
        size
    }

    fn run(&mut self, alive: &mut [bool], chosen: &mut Vec<usize>) {
        let mut trail = Vec::new();
        while let Some(v) = self.pendant_pick(alive) {
            alive[v] = false;
            chosen.push(v);
            trail.push(v);
        }
        self.branch(alive, chosen);
        for v in trail {
            alive[v] = true;
            chosen.pop();
        }
    }

    fn branch(&mut self, alive: &mut [bool], chosen: &mut Vec<usize>) {
        let pick = (0..self.adj.len())
            .filter(|&v| alive[v])
            .map(|v| (self.degree(alive, v), v))
            .filter(|&(d, _)| d > 0)
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((_, v)) = pick else {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        };
        if chosen.len() + self.matching_bound(alive) >= self.best.len() {
            return;
        }

        alive[v] = false;
        chosen.push(v);
        self.run(alive, chosen);
        chosen.pop();

        let neighbours: Vec<usize> = self.adj[v].iter().copied().filter(|&w| alive[w]).collect();
        if chosen.len() + neighbours.len() < self.best.len() {
            for &w in &neighbours {
                alive[w] = false;
                chosen.push(w);
            }
            self.run(alive, chosen);
            for &w in &neighbours {
                alive[w] = true;
                chosen.pop();
            }
        }
        alive[v] = true;
    }
}

/// Minimum vertex cover size of a forest by tree dynamic programming.
/// Returns `None` when `g` has a cycle.
pub fn forest_cover_size(g: &Graph) -> Option<usize> {
    if !g.is_forest() {
        return None;
    }
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in g.neighbors(v) {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
    }
    // (v excluded, v included)
    let mut dp = vec![(0usize, 1usize); n];
    let mut total = 0;
    for &v in order.iter().rev() {
        let (out, inc) = dp[v];
        if parent[v] == usize::MAX {
            total += out.min(inc);
        } else {
            let p = parent[v];
            dp[p].0 += inc;
            dp[p].1 += out.min(inc);
        }
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force_size(g: &Graph) -> usize {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|mask| g.edges().iter().all(|&(i, j)| mask >> i & 1 == 1 || mask >> j & 1 == 1))
            .map(u32::count_ones)
            .min()
            .unwrap() as usize
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let names: Vec<String> = (0..n).map(|i| format!("x{i:02}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        Graph::new(names.clone(), edges).unwrap()
    }

    #[test]
    fn brute_force_oracle_small_cases() {
        let p4 = Graph::new(["v1", "v2", "v3", "v4"], [("v1", "v2"), ("v2", "v3"), ("v3", "v4")]).unwrap();
        assert_eq!(brute_force_size(&p4), 2);
        let c5 = Graph::new(
            ["v1", "v2", "v3", "v4", "v5"],
            [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v1")],
        )
        .unwrap();
        assert_eq!(brute_force_size(&c5), 3);
        assert_eq!(branch_and_bound_cover(&p4), vec![1, 2]);
        assert_eq!(branch_and_bound_cover(&c5).len(), 3);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=16);
            let p = rng.gen_range(0.1..0.7);
            let g = random_graph(&mut rng, n, p);
            let cover = minimum_cover(&g, DEFAULT_BUDGET).unwrap();
            assert!(g.edges().iter().all(|(i, j)| cover.contains(i) || cover.contains(j)));
            assert_eq!(cover.len(), brute_force_size(&g));
            assert_eq!(cover, minimum_cover(&g, DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn forest_dp_agrees_with_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=30);
            let names: Vec<String> = (0..n).map(|i| format!("t{i:02}")).collect();
            let mut edges = Vec::new();
            for v in 1..n {
                if rng.gen_bool(0.85) {
                    let p = rng.gen_range(0..v);
                    edges.push((names[p].clone(), names[v].clone()));
                }
            }
            let g = Graph::new(names.clone(), edges).unwrap();
            assert_eq!(forest_cover_size(&g), Some(branch_and_bound_cover(&g).len()));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let names: Vec<String> = (0..10).map(|i| format!("p{i}")).collect();
        let edges: Vec<_> = (0..9).map(|i| (names[i].clone(), names[i + 1].clone())).collect();
        let g = Graph::new(names.clone(), edges).unwrap();
        assert!(matches!(minimum_cover(&g, 5), Err(GraphError::SizeLimitExceeded { size: 10, budget: 5 })));
        assert_eq!(minimum_cover(&g, 10).unwrap().len(), 5);
    }
}
