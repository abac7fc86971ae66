//! GEXF, DOT, adjacency CSV and JSON report writers.
//!
//! Visual encodings: node size grows with degree, node color runs from green
//! (lowest betweenness) to red (highest), edge thickness grows with weight.
//! Every real number is printed with 9 decimals so files are byte-stable.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use super::{GraphAnalysis, RunConfig};
use crate::error::{Error, Result};
use crate::graph::{rank_nodes, QueryGraph, RankKey};
use crate::scalar::{fmt9, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorRgb {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl ColorRgb {
    /// Linear green-to-red ramp over `t` in `[0, 1]`.
    pub fn ramp<T: Weight>(t: T) -> Self {
        let t = t.to_f64_lossy().clamp(0.0, 1.0);
        ColorRgb {
            r: (255.0 * t).round() as u8,
            g: (255.0 * (1.0 - t)).round() as u8,
            b: 0,
        }
    }

    pub fn hex(self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.r, self.g, self.b)
    }
}

/// Min-max scales `values` into `range`; all-equal input maps to the midpoint.
fn scale_into<T: Weight>(values: &[T], (lo, hi): (T, T)) -> Vec<T> {
    let min = values.iter().copied().fold(T::infinity(), T::min);
    let max = values.iter().copied().fold(T::neg_infinity(), T::max);
    let two = T::one() + T::one();
    values
        .iter()
        .map(|&x| {
            if max > min {
                lo + (x - min) / (max - min) * (hi - lo)
            } else {
                (lo + hi) / two
            }
        })
        .collect()
}

struct Encodings<T> {
    size: Vec<T>,
    color: Vec<ColorRgb>,
    thickness: Vec<T>,
}

fn encodings<T: Weight>(a: &GraphAnalysis<T>, config: &RunConfig<T>) -> Encodings<T> {
    let degree: Vec<T> = a.metrics.degree.iter().map(|&d| T::from_count(d)).collect();
    let unit = (T::zero(), T::one());
    let weights: Vec<T> = a.graph.edges().iter().map(|e| e.weight).collect();
    Encodings {
        size: scale_into(&degree, config.size_range),
        color: scale_into(a.betweenness(), unit)
            .into_iter()
            .map(ColorRgb::ramp)
            .collect(),
        thickness: scale_into(&weights, config.edge_width_range),
    }
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// GEXF 1.2 with the `viz` extension. Node ids are query ids.
pub fn write_gexf<T: Weight, W: Write>(
    w: &mut W,
    a: &GraphAnalysis<T>,
    config: &RunConfig<T>,
) -> io::Result<()> {
    let enc = encodings(a, config);
    let betweenness = a.betweenness();
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        w,
        r#"<gexf xmlns="http://www.gexf.net/1.2draft" xmlns:viz="http://www.gexf.net/1.2draft/viz" version="1.2">"#
    )?;
    writeln!(w, "  <meta>")?;
    writeln!(w, "    <creator>querynet</creator>")?;
    writeln!(w, "    <description>query relatedness graph</description>")?;
    writeln!(w, "  </meta>")?;
    writeln!(w, r#"  <graph mode="static" defaultedgetype="undirected">"#)?;
    writeln!(w, r#"    <attributes class="node">"#)?;
    writeln!(
        w,
        r#"      <attribute id="degree" title="degree" type="integer"/>"#
    )?;
    writeln!(
        w,
        r#"      <attribute id="weighted_degree" title="weighted_degree" type="double"/>"#
    )?;
    writeln!(
        w,
        r#"      <attribute id="betweenness" title="betweenness" type="double"/>"#
    )?;
    writeln!(
        w,
        r#"      <attribute id="cluster" title="cluster" type="integer"/>"#
    )?;
    writeln!(w, "    </attributes>")?;
    writeln!(w, "    <nodes>")?;
    for (p, node) in a.graph.nodes().iter().enumerate() {
        let c = enc.color[p];
        writeln!(
            w,
            r#"      <node id="{}" label="{}">"#,
            node.id,
            xml_escape(&node.text)
        )?;
        writeln!(w, "        <attvalues>")?;
        writeln!(
            w,
            r#"          <attvalue for="degree" value="{}"/>"#,
            a.metrics.degree[p]
        )?;
        writeln!(
            w,
            r#"          <attvalue for="weighted_degree" value="{}"/>"#,
            fmt9(a.metrics.weighted_degree[p])
        )?;
        writeln!(
            w,
            r#"          <attvalue for="betweenness" value="{}"/>"#,
            fmt9(betweenness[p])
        )?;
        writeln!(
            w,
            r#"          <attvalue for="cluster" value="{}"/>"#,
            a.clustering.assignment[p]
        )?;
        writeln!(w, "        </attvalues>")?;
        writeln!(w, r#"        <viz:size value="{}"/>"#, fmt9(enc.size[p]))?;
        writeln!(
            w,
            r#"        <viz:color r="{}" g="{}" b="{}"/>"#,
            c.r, c.g, c.b
        )?;
        writeln!(w, "      </node>")?;
    }
    writeln!(w, "    </nodes>")?;
    writeln!(w, "    <edges>")?;
    for (k, e) in a.graph.edges().iter().enumerate() {
        writeln!(
            w,
            r#"      <edge id="{k}" source="{}" target="{}" weight="{}">"#,
            e.a,
            e.b,
            fmt9(e.weight)
        )?;
        writeln!(
            w,
            r#"        <viz:thickness value="{}"/>"#,
            fmt9(enc.thickness[k])
        )?;
        writeln!(w, "      </edge>")?;
    }
    writeln!(w, "    </edges>")?;
    writeln!(w, "  </graph>")?;
    writeln!(w, "</gexf>")?;
    Ok(())
}

fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Graphviz DOT with the same encodings: `width` in inches (size / 72),
/// `fillcolor` from betweenness and `penwidth` from weight.
pub fn write_dot<T: Weight, W: Write>(
    w: &mut W,
    a: &GraphAnalysis<T>,
    config: &RunConfig<T>,
) -> io::Result<()> {
    let enc = encodings(a, config);
    let points_per_inch = T::from_count(72);
    writeln!(w, "graph querynet {{")?;
    writeln!(w, "  node [shape=circle, style=filled, fixedsize=true];")?;
    for (p, node) in a.graph.nodes().iter().enumerate() {
        writeln!(
            w,
            "  n{} [label={}, width=\"{}\", fillcolor=\"{}\", cluster=\"{}\"];",
            node.id,
            dot_quote(&node.text),
            fmt9(enc.size[p] / points_per_inch),
            enc.color[p].hex(),
            a.clustering.assignment[p]
        )?;
    }
    for (k, e) in a.graph.edges().iter().enumerate() {
        writeln!(
            w,
            "  n{} -- n{} [weight=\"{}\", penwidth=\"{}\"];",
            e.a,
            e.b,
            fmt9(e.weight),
            fmt9(enc.thickness[k])
        )?;
    }
    writeln!(w, "}}")?;
    Ok(())
}

/// Square matrix of edge weights; the first row and column hold query texts.
pub fn write_adjacency_csv<T: Weight, W: Write>(w: &mut W, g: &QueryGraph<T>) -> io::Result<()> {
    let n = g.node_count();
    let mut out = csv::Writer::from_writer(w);
    let mut header = Vec::with_capacity(n + 1);
    header.push("");
    header.extend(g.nodes().iter().map(|q| q.text.as_str()));
    out.write_record(&header)?;
    let zero = fmt9(T::zero());
    let mut row = vec![zero.clone(); n];
    for p in 0..n {
        row.iter_mut().for_each(|c| c.clone_from(&zero));
        for (q, weight) in g.neighbors(p) {
            row[q] = fmt9(weight);
        }
        out.write_field(&g.nodes()[p].text)?;
        out.write_record(&row)?;
    }
    out.flush()
}

fn num<T: Weight>(x: T) -> Value {
    Value::Number(
        fmt9(x)
            .parse()
            .expect("fixed-point rendering is a JSON number"),
    )
}

/// Summary report: config echo, counts, clusters (members by degree,
/// highest first) and the ten most central nodes.
pub fn report_json<T: Weight>(a: &GraphAnalysis<T>, config: &RunConfig<T>) -> Value {
    let g = &a.graph;
    let degree = &a.metrics.degree;
    let betweenness = a.betweenness();

    let clusters: Vec<Value> = a
        .clustering
        .members()
        .into_iter()
        .enumerate()
        .map(|(id, mut members)| {
            members.sort_by(|&x, &y| degree[y].cmp(&degree[x]).then(x.cmp(&y)));
            let texts: Vec<&str> = members
                .iter()
                .map(|&p| g.nodes()[p].text.as_str())
                .collect();
            json!({ "id": id, "size": members.len(), "members": texts })
        })
        .collect();

    let top: Vec<Value> = rank_nodes(&a.metrics, RankKey::Betweenness)
        .expect("analysis always computes betweenness")
        .into_iter()
        .take(10)
        .map(|p| {
            json!({
                "id": g.nodes()[p].id,
                "text": g.nodes()[p].text,
                "betweenness": num(betweenness[p]),
                "degree": degree[p],
            })
        })
        .collect();

    let mut cfg = Map::new();
    cfg.insert("threshold".into(), num(config.threshold));
    cfg.insert("bonus_cutoff".into(), json!(config.bonus_cutoff));
    cfg.insert("bonus_value".into(), num(config.bonus_value));
    cfg.insert("cluster_method".into(), json!(config.cluster_method.name()));
    cfg.insert(
        "normalize_betweenness".into(),
        json!(config.normalize_betweenness),
    );
    cfg.insert(
        "size_range".into(),
        json!([num(config.size_range.0), num(config.size_range.1)]),
    );
    cfg.insert(
        "edge_width_range".into(),
        json!([
            num(config.edge_width_range.0),
            num(config.edge_width_range.1)
        ]),
    );
    cfg.insert("top_k".into(), json!(config.top_k));
    cfg.insert("top_k_by".into(), json!(config.top_k_by.name()));

    json!({
        "config": cfg,
        "node_count": g.node_count(),
        "edge_count": g.edge_count(),
        "cluster_count": a.clustering.cluster_count(),
        "modularity": num(a.clustering.modularity_score),
        "clusters": clusters,
        "top_betweenness": top,
    })
}

pub(super) fn write_file(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>,
) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w)
        .and_then(|()| w.flush())
        .map_err(|e| Error::io(path, e))
}

/// The report as pretty-printed JSON with a trailing newline.
pub fn report_string<T: Weight>(a: &GraphAnalysis<T>, config: &RunConfig<T>) -> String {
    let mut text = serde_json::to_string_pretty(&report_json(a, config))
        .expect("report values always serialize");
    text.push('\n');
    text
}

pub fn write_report<T: Weight>(
    path: &Path,
    a: &GraphAnalysis<T>,
    config: &RunConfig<T>,
) -> Result<()> {
    write_file(path, |w| w.write_all(report_string(a, config).as_bytes()))
}
