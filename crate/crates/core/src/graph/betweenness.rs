use num_traits::Num;
use rayon::prelude::*;

use super::QueryGraph;
use crate::scalar::Weight;

/// Sources per parallel work unit. Fixed so that the summation order, and
/// therefore floating-point results, do not depend on the thread count.
const SOURCES_PER_CHUNK: usize = 16;

/// `n` as a `C`, built by binary doubling so that any numeric type works.
fn from_count<C: Num + Clone>(mut n: usize) -> C {
    let mut out = C::zero();
    let mut unit = C::one();
    while n > 0 {
        if n & 1 == 1 {
            out = out + unit.clone();
        }
        unit = unit.clone() + unit;
        n >>= 1;
    }
    out
}

/// Unweighted shortest-path betweenness (Brandes), counting each unordered
/// pair of endpoints once. With `normalize`, values are divided by
/// `(n - 1)(n - 2) / 2`, the number of pairs excluding the node itself.
///
/// Generic over the accumulator so tests can run it in exact rationals.
pub fn betweenness_centrality<C, T>(g: &QueryGraph<T>, normalize: bool) -> Vec<C>
where
    C: Num + Clone + Send + Sync,
    T: Weight,
{
    let n = g.node_count();
    let adjacency = g.adjacency();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<C>> = sources
        .par_chunks(SOURCES_PER_CHUNK)
        .map(|chunk| {
            let mut acc = vec![C::zero(); n];
            let mut scratch = Scratch::new(n);
            for &s in chunk {
                scratch.accumulate(adjacency, s, &mut acc);
            }
            acc
        })
        .collect();

    let mut total = vec![C::zero(); n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t = t.clone() + p;
        }
    }

    let two = C::one() + C::one();
    let scale = if normalize && n > 2 {
        two * from_count::<C>((n - 1) * (n - 2) / 2)
    } else {
        two
    };
    total.into_iter().map(|x| x / scale.clone()).collect()
}

struct Scratch<C> {
    dist: Vec<i64>,
    sigma: Vec<C>,
    delta: Vec<C>,
    order: Vec<usize>,
}

impl<C: Num + Clone> Scratch<C> {
    fn new(n: usize) -> Self {
        Scratch {
            dist: vec![-1; n],
            sigma: vec![C::zero(); n],
            delta: vec![C::zero(); n],
            order: Vec::with_capacity(n),
        }
    }

    fn accumulate(&mut self, adjacency: &[Vec<(usize, usize)>], s: usize, acc: &mut [C]) {
        for &v in &self.order {
            self.dist[v] = -1;
            self.sigma[v] = C::zero();
            self.delta[v] = C::zero();
        }
        self.order.clear();

        self.dist[s] = 0;
        self.sigma[s] = C::one();
        self.order.push(s);
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            for &(w, _) in &adjacency[v] {
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.order.push(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] = self.sigma[w].clone() + self.sigma[v].clone();
                }
            }
        }

        for &w in self.order.iter().rev() {
            let coeff = (C::one() + self.delta[w].clone()) / self.sigma[w].clone();
            for &(v, _) in &adjacency[w] {
                if self.dist[v] == self.dist[w] - 1 {
                    self.delta[v] = self.delta[v].clone() + self.sigma[v].clone() * coeff.clone();
                }
            }
            if w != s {
                acc[w] = acc[w].clone() + self.delta[w].clone();
            }
        }
    }
}
