use std::fmt;
use std::str::FromStr;

use super::{NodeMetrics, QueryGraph};
use crate::error::{Error, Result};
use crate::scalar::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankKey {
    Betweenness,
    Degree,
}

impl RankKey {
    pub fn name(self) -> &'static str {
        match self {
            RankKey::Betweenness => "betweenness",
            RankKey::Degree => "degree",
        }
    }
}

impl fmt::Display for RankKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RankKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "betweenness" => Ok(RankKey::Betweenness),
            "degree" => Ok(RankKey::Degree),
            other => Err(Error::Config(format!(
                "unknown ranking key {other:?} (expected betweenness or degree)"
            ))),
        }
    }
}

/// Node positions ranked by `key`, highest first; ties go to the smaller id.
pub fn rank_nodes<T: Weight>(metrics: &NodeMetrics<T>, key: RankKey) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..metrics.degree.len()).collect();
    match key {
        RankKey::Degree => {
            order.sort_by(|&x, &y| metrics.degree[y].cmp(&metrics.degree[x]).then(x.cmp(&y)))
        }
        RankKey::Betweenness => {
            let bc = metrics.betweenness.as_ref().ok_or_else(|| {
                Error::Config("betweenness was not computed for these metrics".into())
            })?;
            order.sort_by(|&x, &y| bc[y].partial_cmp(&bc[x]).expect("finite").then(x.cmp(&y)));
        }
    }
    Ok(order)
}

/// Subgraph induced by the `k` top-ranked nodes. With `k` at or above the
/// node count the whole graph comes back.
pub fn top_k_subgraph<T: Weight>(
    g: &QueryGraph<T>,
    metrics: &NodeMetrics<T>,
    key: RankKey,
    k: usize,
) -> Result<QueryGraph<T>> {
    let mut order = rank_nodes(metrics, key)?;
    order.truncate(k);
    order.sort_unstable();
    Ok(g.induced(&order))
}
