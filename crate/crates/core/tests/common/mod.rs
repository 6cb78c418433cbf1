#![allow(dead_code)]

use std::collections::BTreeSet;

use hourglass::{DependencyNetwork, VertexClass};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random DAG on `n` vertices: each forward pair of a random permutation gets an edge
/// with probability `p`. Vertex ids are `v00`, `v01`, ...
pub fn random_dag(n: usize, p: f64, seed: u64) -> DependencyNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((order[i], order[j]));
            }
        }
    }
    let ids = (0..n).map(|i| format!("v{i:02}")).collect();
    DependencyNetwork::from_edges(ids, edges).unwrap()
}

/// Random digraph as name pairs; cycles and self-loops allowed.
pub fn random_digraph(n: usize, m: usize, seed: u64) -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            (format!("x{u}"), format!("x{v}"))
        })
        .collect()
}

/// Every ST-path of `g` as its vertex sequence, found by plain depth-first search.
pub fn st_paths(g: &DependencyNetwork) -> Vec<Vec<usize>> {
    fn walk(g: &DependencyNetwork, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if g.class(v) == VertexClass::Target {
            out.push(path.clone());
            return;
        }
        for &w in g.successors(v) {
            path.push(w);
            walk(g, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        if g.class(s) == VertexClass::Source {
            walk(g, &mut vec![s], &mut out);
        }
    }
    out
}

/// Number of source-to-`v` prefixes and `v`-to-target suffixes of all ST-paths, counted
/// as distinct vertex sequences.
pub fn enumerated_counts(g: &DependencyNetwork, paths: &[Vec<usize>]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let n = g.vertex_count();
    let mut prefixes = vec![BTreeSet::new(); n];
    let mut suffixes = vec![BTreeSet::new(); n];
    let mut through = vec![0u64; n];
    for path in paths {
        for (i, &v) in path.iter().enumerate() {
            prefixes[v].insert(path[..=i].to_vec());
            suffixes[v].insert(path[i..].to_vec());
            through[v] += 1;
        }
    }
    let ps = prefixes.iter().map(|s| s.len() as u64).collect();
    let pt = suffixes.iter().map(|s| s.len() as u64).collect();
    (ps, pt, through)
}

/// Paths hit by the vertex set `r`.
pub fn covered_by(paths: &[Vec<usize>], r: &[usize]) -> usize {
    paths.iter().filter(|p| p.iter().any(|v| r.contains(v))).count()
}

pub fn ids(g: &DependencyNetwork, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.id(v).to_owned()).collect()
}

/// Independent acyclicity check by repeated removal of zero-in-degree vertices.
pub fn is_acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n];
    let mut succ = vec![Vec::new(); n];
    for &(u, v) in edges {
        indeg[v] += 1;
        succ[u].push(v);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == n
}
