use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::QueryGraph;
use crate::error::Error;
use crate::scalar::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClusterMethod {
    Components,
    /// Agglomerative greedy modularity maximization.
    Modularity,
}

impl ClusterMethod {
    pub fn name(self) -> &'static str {
        match self {
            ClusterMethod::Components => "components",
            ClusterMethod::Modularity => "modularity",
        }
    }
}

impl fmt::Display for ClusterMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClusterMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "components" => Ok(ClusterMethod::Components),
            "modularity" => Ok(ClusterMethod::Modularity),
            other => Err(Error::Config(format!(
                "unknown cluster method {other:?} (expected components or modularity)"
            ))),
        }
    }
}

/// Cluster labels per node position. Labels are dense and numbered in order
/// of each cluster's smallest query id.
#[derive(Clone, Debug, PartialEq)]
pub struct Clustering<T> {
    pub assignment: Vec<usize>,
    pub method: ClusterMethod,
    pub modularity_score: T,
}

impl<T> Clustering<T> {
    pub fn cluster_count(&self) -> usize {
        self.assignment.iter().max().map_or(0, |&m| m + 1)
    }

    /// Node positions of each cluster, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cluster_count()];
        for (pos, &c) in self.assignment.iter().enumerate() {
            out[c].push(pos);
        }
        out
    }
}

pub fn clusters<T: Weight>(g: &QueryGraph<T>, method: ClusterMethod) -> Clustering<T> {
    let labels = match method {
        ClusterMethod::Components => components(g),
        ClusterMethod::Modularity => greedy_modularity(g),
    };
    let assignment = densify(&labels);
    let modularity_score = modularity(g, &assignment);
    Clustering {
        assignment,
        method,
        modularity_score,
    }
}

/// Weighted Newman modularity of `assignment` (one label per node position).
/// Zero for a graph without edges.
pub fn modularity<T: Weight>(g: &QueryGraph<T>, assignment: &[usize]) -> T {
    let total: T = g.edges().iter().map(|e| e.weight).sum();
    if total <= T::zero() {
        return T::zero();
    }
    let k = assignment.iter().max().map_or(0, |&m| m + 1);
    let mut inside = vec![T::zero(); k];
    let mut strength = vec![T::zero(); k];
    for e in g.edges() {
        let ca = assignment[g.position(e.a).expect("edge endpoint")];
        let cb = assignment[g.position(e.b).expect("edge endpoint")];
        if ca == cb {
            inside[ca] += e.weight;
        }
        strength[ca] += e.weight;
        strength[cb] += e.weight;
    }
    let two_total = total + total;
    inside
        .into_iter()
        .zip(strength)
        .map(|(i, s)| i / total - (s / two_total) * (s / two_total))
        .sum()
}

fn densify(labels: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

fn components<T: Weight>(g: &QueryGraph<T>) -> Vec<usize> {
    let n = g.node_count();
    let mut label = vec![usize::MAX; n];
    let mut queue = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = start;
        queue.clear();
        queue.push(start);
        while let Some(v) = queue.pop() {
            for &(w, _) in &g.adjacency()[v] {
                if label[w] == usize::MAX {
                    label[w] = start;
                    queue.push(w);
                }
            }
        }
    }
    label
}

type Candidate<T> = (T, (usize, usize));

fn better<T: Weight>(x: &Candidate<T>, best: &Option<Candidate<T>>) -> bool {
    match best {
        None => true,
        Some(b) => x.0 > b.0 || (x.0 == b.0 && x.1 < b.1),
    }
}

/// Starts from singletons and repeatedly merges the pair of adjacent
/// communities with the largest modularity gain, until no merge has a
/// positive gain. Equal gains go to the pair with the lexicographically
/// smallest `(smaller id, larger id)`, where a community's id is its smallest
/// node position.
fn greedy_modularity<T: Weight>(g: &QueryGraph<T>) -> Vec<usize> {
    let n = g.node_count();
    let total: T = g.edges().iter().map(|e| e.weight).sum();
    let mut label: Vec<usize> = (0..n).collect();
    if total <= T::zero() {
        return label;
    }
    let two_total = total + total;
    let two = T::one() + T::one();

    let mut links: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); n];
    let mut share = vec![T::zero(); n];
    for e in g.edges() {
        let pa = g.position(e.a).expect("edge endpoint");
        let pb = g.position(e.b).expect("edge endpoint");
        *links[pa].entry(pb).or_insert_with(T::zero) += e.weight;
        *links[pb].entry(pa).or_insert_with(T::zero) += e.weight;
        share[pa] += e.weight / two_total;
        share[pb] += e.weight / two_total;
    }
    let mut members: Vec<Vec<usize>> = (0..n).map(|p| vec![p]).collect();

    let gain = |share: &[T], c: usize, e: usize, w: T| {
        let (lo, hi) = (c.min(e), c.max(e));
        w / total - two * share[lo] * share[hi]
    };
    let best_of = |links: &[BTreeMap<usize, T>], share: &[T], c: usize| {
        let mut best: Option<Candidate<T>> = None;
        for (&e, &w) in &links[c] {
            let cand = (gain(share, c, e, w), (c.min(e), c.max(e)));
            if better(&cand, &best) {
                best = Some(cand);
            }
        }
        best
    };
    let mut best: Vec<Option<Candidate<T>>> = (0..n).map(|c| best_of(&links, &share, c)).collect();

    loop {
        let mut pick: Option<Candidate<T>> = None;
        for cand in best.iter().flatten() {
            if better(cand, &pick) {
                pick = Some(*cand);
            }
        }
        let Some((dq, (c, d))) = pick else { break };
        if dq <= T::zero() {
            break;
        }

        let from_d = std::mem::take(&mut links[d]);
        for (e, w) in from_d {
            if e == c {
                continue;
            }
            *links[c].entry(e).or_insert_with(T::zero) += w;
            links[e].remove(&d);
            *links[e].entry(c).or_insert_with(T::zero) += w;
        }
        links[c].remove(&d);
        share[c] = share[c] + share[d];
        share[d] = T::zero();
        let moved = std::mem::take(&mut members[d]);
        members[c].extend(moved);
        best[d] = None;

        best[c] = best_of(&links, &share, c);
        let neighbors: Vec<usize> = links[c].keys().copied().collect();
        for e in neighbors {
            best[e] = best_of(&links, &share, e);
        }
    }

    for (c, m) in members.iter().enumerate() {
        for &p in m {
            label[p] = c;
        }
    }
    label
}
