#![allow(dead_code)]

pub mod oracles;

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use querynet::wordnet::WORDNET_DIR_ENV;
use querynet::{Pos, WordNetDb};
use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Locations probed when `QUERYNET_WORDNET_DIR` is unset.
const FALLBACK_DIRS: &[&str] = &[
    "/opt/wordnet/3.0",
    "/usr/share/wordnet",
    "/usr/local/share/wordnet",
];

pub fn wordnet_dir() -> PathBuf {
    if let Ok(dir) = std::env::var(WORDNET_DIR_ENV) {
        return PathBuf::from(dir);
    }
    FALLBACK_DIRS
        .iter()
        .map(PathBuf::from)
        .find(|d| d.join("data.noun").is_file())
        .unwrap_or_else(|| {
            panic!(
                "WordNet 3.0 database not found; set {WORDNET_DIR_ENV} to the directory \
                 holding index.noun, data.noun, ... (see README)"
            )
        })
}

pub fn wordnet() -> &'static WordNetDb {
    static DB: OnceLock<WordNetDb> = OnceLock::new();
    DB.get_or_init(|| WordNetDb::load(wordnet_dir()).expect("load WordNet"))
}

pub fn data_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

/// Tab-separated fixture rows, skipping `#` comments.
pub fn fixture_rows(name: &str) -> Vec<Vec<String>> {
    std::fs::read_to_string(data_path(name))
        .unwrap_or_else(|e| panic!("read fixture {name}: {e}"))
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

pub fn reference_value(key: &str) -> String {
    fixture_rows("reference_values.tsv")
        .into_iter()
        .find(|r| r[0] == key)
        .unwrap_or_else(|| panic!("no reference value {key}"))[1]
        .clone()
}

/// The query count of the reference dataset.
pub const REFERENCE_QUERY_COUNT: usize = 4496;

fn plain_lemmas(db: &WordNetDb, pos: Pos, limit: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    let all: Vec<String> = db
        .synsets()
        .filter(|s| s.id.pos == pos)
        .flat_map(|s| s.lemmas.iter())
        .filter(|l| (3..=10).contains(&l.len()) && l.bytes().all(|b| b.is_ascii_lowercase()))
        .filter(|l| seen.insert(l.to_string()))
        .cloned()
        .collect();
    all.choose_multiple(rng, limit).cloned().collect()
}

/// `n` distinct synthetic queries drawn from WordNet lemmas with Zipf-like
/// word frequencies, as in real query logs. No URLs; about 3% carry a year.
pub fn synthetic_queries(db: &WordNetDb, n: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nouns = plain_lemmas(db, Pos::Noun, 2500, &mut rng);
    let verbs = plain_lemmas(db, Pos::Verb, 400, &mut rng);
    let zipf = |len: usize| WeightedIndex::new((1..=len).map(|r| 1.0 / r as f64)).unwrap();
    let (noun_dist, verb_dist) = (zipf(nouns.len()), zipf(verbs.len()));

    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut words: Vec<&str> = Vec::new();
        if rng.gen_bool(0.25) {
            words.push(&verbs[verb_dist.sample(&mut rng)]);
        }
        for _ in 0..rng.gen_range(1..=3) {
            words.push(&nouns[noun_dist.sample(&mut rng)]);
        }
        let mut q = words.join(" ");
        if rng.gen_bool(0.03) {
            q = format!("{q} {}", rng.gen_range(1990..=2009));
        }
        if seen.insert(q.clone()) {
            out.push(q);
        }
    }
    out
}

pub type GexfNodes = Vec<(u32, String)>;
pub type GexfEdges = Vec<(u32, u32, String)>;

/// Nodes `(id, label)` and edges `(source, target, weight)` of a GEXF file,
/// read back with a real XML parser.
pub fn parse_gexf(path: &Path) -> (GexfNodes, GexfEdges) {
    use xml::reader::{EventReader, XmlEvent};
    let file = std::fs::File::open(path).expect("open gexf");
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for event in EventReader::new(std::io::BufReader::new(file)) {
        if let XmlEvent::StartElement {
            name, attributes, ..
        } = event.expect("well-formed gexf")
        {
            let attr = |key: &str| {
                attributes
                    .iter()
                    .find(|a| a.name.local_name == key)
                    .map(|a| a.value.clone())
                    .unwrap_or_else(|| panic!("{} without {key}", name.local_name))
            };
            match name.local_name.as_str() {
                "node" => nodes.push((attr("id").parse().unwrap(), attr("label"))),
                "edge" => edges.push((
                    attr("source").parse().unwrap(),
                    attr("target").parse().unwrap(),
                    attr("weight"),
                )),
                _ => {}
            }
        }
    }
    (nodes, edges)
}

/// Header labels and numeric body of an adjacency CSV.
pub fn read_adjacency(path: &Path) -> (Vec<String>, Vec<String>, Vec<Vec<f64>>) {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_path(path)
        .expect("open adjacency csv");
    let mut rows = reader.records().map(|r| r.expect("csv row"));
    let header: Vec<String> = rows
        .next()
        .expect("header row")
        .iter()
        .skip(1)
        .map(String::from)
        .collect();
    let mut labels = Vec::new();
    let mut body = Vec::new();
    for row in rows {
        labels.push(row[0].to_string());
        body.push(row.iter().skip(1).map(|c| c.parse().unwrap()).collect());
    }
    (header, labels, body)
}
