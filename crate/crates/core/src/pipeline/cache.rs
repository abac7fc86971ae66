//! Flat CSV cache of pair scores.
//!
//! ```text
//! # querynet score cache v1
//! # queries sha256:<hex>
//! # params sha256:<hex>
//! # q<TAB>0<TAB>first query
//! # q<TAB>1<TAB>second query
//! a,b,noun_weight,verb_weight,total
//! 0,1,0.500000000,0.000000000,0.500000000
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::GraphNode;
use crate::scalar::{fmt9, parse_weight, Weight};
use crate::similarity::{PairScore, ScoringParams};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_HEADER: &str = "a,b,noun_weight,verb_weight,total";

#[derive(Clone, Debug, PartialEq)]
pub struct ScoreCache<T> {
    pub version: u32,
    pub query_digest: String,
    pub params_digest: String,
    pub queries: Vec<GraphNode>,
    pub scores: Vec<PairScore<T>>,
}

impl<T> ScoreCache<T> {
    /// Errors unless the cache was produced from these inputs.
    pub fn check_inputs(&self, path: &Path, query_digest: &str, params_digest: &str) -> Result<()> {
        let stale = |reason: &str| {
            Err(Error::StaleCache {
                path: path.into(),
                reason: reason.into(),
            })
        };
        if self.query_digest != query_digest {
            return stale("it was built from a different query list");
        }
        if self.params_digest != params_digest {
            return stale("it was built with different scoring parameters");
        }
        Ok(())
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Digest of the ordered `(id, text)` query list.
pub fn query_digest(queries: &[GraphNode]) -> String {
    let mut h = Sha256::new();
    for q in queries {
        h.update(format!("{}\t{}\n", q.id, q.text));
    }
    hex(&h.finalize())
}

/// Digest of everything that changes a score: bonus parameters and the
/// scalar type. The edge threshold is applied later and is not included.
pub fn params_digest<T: Weight>(params: &ScoringParams<T>) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "bonus_cutoff={}\nbonus_value={}\nscalar={}\n",
        params.bonus_cutoff,
        fmt9(params.bonus_value),
        std::any::type_name::<T>()
    ));
    hex(&h.finalize())
}

/// Writes `scores` (which must be sorted by `(a, b)`) to `w`.
pub fn write_cache_to<T: Weight, W: Write>(
    mut w: W,
    queries: &[GraphNode],
    params: &ScoringParams<T>,
    scores: &[PairScore<T>],
) -> std::io::Result<()> {
    writeln!(w, "# querynet score cache v{CACHE_VERSION}")?;
    writeln!(w, "# queries sha256:{}", query_digest(queries))?;
    writeln!(w, "# params sha256:{}", params_digest(params))?;
    for q in queries {
        writeln!(w, "# q\t{}\t{}", q.id, q.text)?;
    }
    writeln!(w, "{CACHE_HEADER}")?;
    for s in scores {
        writeln!(
            w,
            "{},{},{},{},{}",
            s.a,
            s.b,
            fmt9(s.noun_weight),
            fmt9(s.verb_weight),
            fmt9(s.total)
        )?;
    }
    w.flush()
}

pub fn write_edge_cache<T: Weight>(
    path: &Path,
    queries: &[GraphNode],
    params: &ScoringParams<T>,
    scores: &[PairScore<T>],
) -> Result<()> {
    if let Some(w) = scores
        .windows(2)
        .find(|w| (w[0].a, w[0].b) >= (w[1].a, w[1].b))
    {
        return Err(Error::Config(format!(
            "scores must be strictly sorted by (a, b); ({}, {}) is followed by ({}, {})",
            w[0].a, w[0].b, w[1].a, w[1].b
        )));
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_cache_to(BufWriter::new(file), queries, params, scores).map_err(|e| Error::io(path, e))
}

fn header_value<'a>(line: &'a str, prefix: &str) -> Option<&'a str> {
    line.strip_prefix(prefix)
}

/// Reads a cache written by [`write_edge_cache`]. The query list must match
/// its recorded digest and rows must be strictly sorted by `(a, b)`.
pub fn read_edge_cache<T: Weight>(path: &Path) -> Result<ScoreCache<T>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_cache_from(BufReader::new(file), path)
}

pub fn read_cache_from<T: Weight, R: BufRead>(r: R, path: &Path) -> Result<ScoreCache<T>> {
    let name = path.display().to_string();
    let fail = |line: usize, msg: String| Error::parse(&name, line, msg);

    let mut version = None;
    let mut query_digest_field = None;
    let mut params_digest_field = None;
    let mut queries = Vec::new();
    let mut scores: Vec<PairScore<T>> = Vec::new();
    let mut in_body = false;

    for (i, line) in r.lines().enumerate() {
        let n = i + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if !in_body {
            if let Some(v) = header_value(line, "# querynet score cache v") {
                let v: u32 = v
                    .parse()
                    .map_err(|_| fail(n, format!("bad version {v:?}")))?;
                if v != CACHE_VERSION {
                    return Err(Error::StaleCache {
                        path: path.into(),
                        reason: format!("format version {v} is not {CACHE_VERSION}"),
                    });
                }
                version = Some(v);
            } else if let Some(d) = header_value(line, "# queries sha256:") {
                query_digest_field = Some(d.to_string());
            } else if let Some(d) = header_value(line, "# params sha256:") {
                params_digest_field = Some(d.to_string());
            } else if let Some(q) = header_value(line, "# q\t") {
                let (id, text) = q
                    .split_once('\t')
                    .ok_or_else(|| fail(n, "query line needs an id and a text".into()))?;
                let id = id
                    .parse()
                    .map_err(|_| fail(n, format!("bad query id {id:?}")))?;
                queries.push(GraphNode {
                    id,
                    text: text.to_string(),
                });
            } else if line == CACHE_HEADER {
                in_body = true;
            } else if !line.starts_with('#') {
                return Err(fail(n, format!("expected header line, found {line:?}")));
            }
            continue;
        }

        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(fail(
                n,
                format!("expected 5 fields, found {}", fields.len()),
            ));
        }
        let id = |k: usize| -> Result<u32> {
            fields[k]
                .parse()
                .map_err(|_| fail(n, format!("bad query id {:?}", fields[k])))
        };
        let weight = |k: usize| -> Result<T> {
            parse_weight(fields[k]).ok_or_else(|| fail(n, format!("bad weight {:?}", fields[k])))
        };
        let score = PairScore {
            a: id(0)?,
            b: id(1)?,
            noun_weight: weight(2)?,
            verb_weight: weight(3)?,
            total: weight(4)?,
            jaccard: None,
        };
        if score.a >= score.b {
            return Err(fail(
                n,
                format!("pair ({}, {}) is not ordered", score.a, score.b),
            ));
        }
        if let Some(prev) = scores.last() {
            if (prev.a, prev.b) >= (score.a, score.b) {
                return Err(fail(
                    n,
                    format!("rows are not strictly sorted at ({}, {})", score.a, score.b),
                ));
            }
        }
        scores.push(score);
    }

    let missing = |what: &str| fail(0, format!("missing {what} header"));
    if !in_body {
        return Err(missing("column"));
    }
    let version = version.ok_or_else(|| missing("version"))?;
    let query_digest_field = query_digest_field.ok_or_else(|| missing("query digest"))?;
    let params_digest_field = params_digest_field.ok_or_else(|| missing("parameter digest"))?;
    if query_digest(&queries) != query_digest_field {
        return Err(Error::StaleCache {
            path: path.into(),
            reason: "its query list does not match its recorded digest".into(),
        });
    }
    Ok(ScoreCache {
        version,
        query_digest: query_digest_field,
        params_digest: params_digest_field,
        queries,
        scores,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn queries() -> Vec<GraphNode> {
        ["dog", "cat food", "hot dog"]
            .iter()
            .enumerate()
            .map(|(i, t)| GraphNode {
                id: i as u32,
                text: t.to_string(),
            })
            .collect()
    }

    fn score(a: u32, b: u32, n: f64, v: f64) -> PairScore<f64> {
        PairScore {
            a,
            b,
            noun_weight: n,
            verb_weight: v,
            total: n + v,
            jaccard: None,
        }
    }

    fn write(scores: &[PairScore<f64>]) -> Vec<u8> {
        let mut buf = Vec::new();
        write_cache_to(&mut buf, &queries(), &ScoringParams::default(), scores).unwrap();
        buf
    }

    fn read(bytes: &[u8]) -> Result<ScoreCache<f64>> {
        read_cache_from(bytes, Path::new("scores.csv"))
    }

    #[test]
    fn round_trip() {
        let scores = [
            score(0, 1, 0.25, 0.0),
            score(0, 2, 0.7, 0.1),
            score(1, 2, 1.0 / 3.0, 0.0),
        ];
        let cache = read(&write(&scores)).unwrap();
        assert_eq!(cache.queries, queries());
        assert_eq!(cache.scores.len(), 3);
        for (a, b) in cache.scores.iter().zip(&scores) {
            assert_eq!((a.a, a.b), (b.a, b.b));
            assert!((a.total - b.total).abs() <= 1e-9);
        }
        cache
            .check_inputs(
                Path::new("x"),
                &query_digest(&queries()),
                &params_digest(&ScoringParams::<f64>::default()),
            )
            .unwrap();
    }

    #[test]
    fn empty_score_list_is_valid() {
        let cache = read(&write(&[])).unwrap();
        assert!(cache.scores.is_empty());
    }

    #[test]
    fn digest_mismatches_are_stale() {
        let cache = read(&write(&[])).unwrap();
        let mut other = queries();
        other[0].text = "dogs".into();
        let stale = cache.check_inputs(
            Path::new("x"),
            &query_digest(&other),
            &params_digest(&ScoringParams::<f64>::default()),
        );
        assert!(matches!(stale, Err(Error::StaleCache { .. })));
        let params = ScoringParams {
            bonus_cutoff: 1,
            bonus_value: 0.2,
        };
        let stale = cache.check_inputs(
            Path::new("x"),
            &query_digest(&queries()),
            &params_digest(&params),
        );
        assert!(matches!(stale, Err(Error::StaleCache { .. })));
    }

    #[test]
    fn tampered_query_list_is_stale() {
        let text = String::from_utf8(write(&[]))
            .unwrap()
            .replace("cat food", "cat toys");
        assert!(matches!(
            read(text.as_bytes()),
            Err(Error::StaleCache { .. })
        ));
    }

    #[test]
    fn unsorted_and_malformed_rows_are_rejected() {
        let text =
            String::from_utf8(write(&[score(0, 2, 0.1, 0.0), score(1, 2, 0.1, 0.0)])).unwrap();
        let swapped = text
            .replace("0,2,", "9,9,")
            .replace("1,2,", "0,2,")
            .replace("9,9,", "1,2,");
        let err = read(swapped.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 9, .. }), "{err}");
        let broken = text.replace("1,2,0.100000000", "1,2,oops");
        assert!(matches!(
            read(broken.as_bytes()),
            Err(Error::Parse { line: 9, .. })
        ));
        assert!(read(b"0,1,0,0,0\n").is_err());
    }
}
