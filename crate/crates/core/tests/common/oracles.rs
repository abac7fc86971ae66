//! Brute-force graph references shared by the graph tests.

use num_rational::Ratio;
use querynet::{Edge, GraphNode, QueryGraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn graph(n: u32, edges: &[(u32, u32, f64)]) -> QueryGraph<f64> {
    let nodes = (0..n)
        .map(|id| GraphNode {
            id,
            text: format!("q{id}"),
        })
        .collect();
    let edges = edges
        .iter()
        .map(|&(a, b, weight)| Edge { a, b, weight })
        .collect();
    QueryGraph::from_edges(nodes, edges).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: u32, p: f64) -> QueryGraph<f64> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b, rng.gen_range(1..=8) as f64 / 8.0));
            }
        }
    }
    graph(n, &edges)
}

/// Betweenness by enumerating every shortest path between every pair.
pub fn brute_betweenness(g: &QueryGraph<f64>) -> Vec<Ratio<i64>> {
    let n = g.node_count();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|p| g.neighbors(p).map(|(q, _)| q).collect())
        .collect();
    let mut out = vec![Ratio::from_integer(0); n];
    for s in 0..n {
        for t in s + 1..n {
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut frontier = vec![vec![s]];
            while paths.is_empty() && !frontier.is_empty() {
                let mut next = Vec::new();
                for path in &frontier {
                    for &w in &adj[*path.last().unwrap()] {
                        if path.contains(&w) {
                            continue;
                        }
                        let mut p = path.clone();
                        p.push(w);
                        if w == t {
                            paths.push(p);
                        } else {
                            next.push(p);
                        }
                    }
                }
                frontier = next;
            }
            let total = paths.len() as i64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    out[v] += Ratio::new(1, total);
                }
            }
        }
    }
    out
}

/// Newman modularity from the pairwise definition, independent of the
/// per-community bookkeeping in the library.
pub fn pairwise_modularity(g: &QueryGraph<f64>, assignment: &[usize]) -> f64 {
    let n = g.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for e in g.edges() {
        let (x, y) = (g.position(e.a).unwrap(), g.position(e.b).unwrap());
        a[x][y] = e.weight;
        a[y][x] = e.weight;
    }
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if assignment[i] == assignment[j] {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Every set partition of `0..n` as restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for c in 0..=next {
            prefix.push(c);
            grow(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), n, &mut out);
    out
}

pub fn best_modularity(g: &QueryGraph<f64>) -> f64 {
    partitions(g.node_count())
        .iter()
        .map(|p| pairwise_modularity(g, p))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: u32, extra: f64) -> QueryGraph<f64> {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v, 1.0));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !edges.iter().any(|&(x, y, _)| (x, y) == (a, b)) && rng.gen_bool(extra) {
                edges.push((a, b, 1.0));
            }
        }
    }
    graph(n, &edges)
}
