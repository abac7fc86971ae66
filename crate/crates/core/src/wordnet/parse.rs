//! Line parsers for `index.*`, `data.*` and `*.exc` files.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::{Pos, SynsetId};
use crate::error::{Error, Result};

pub(super) struct RawSynset {
    pub id: SynsetId,
    pub satellite: bool,
    pub lemmas: Vec<String>,
    pub hypernyms: Vec<SynsetId>,
    pub gloss: String,
    pub file: String,
    pub line: usize,
}

pub(super) fn file_names(pos: Pos) -> [String; 3] {
    let s = pos.file_suffix();
    [
        format!("index.{s}"),
        format!("data.{s}"),
        format!("{s}.exc"),
    ]
}

fn read(dir: &Path, name: &str) -> Result<String> {
    let path = dir.join(name);
    if !path.is_file() {
        return Err(Error::MissingFile {
            dir: dir.to_path_buf(),
            name: name.to_string(),
        });
    }
    fs::read_to_string(&path).map_err(|e| Error::io(path, e))
}

/// Yields `(1-based line number, line)` for every non-comment, non-empty line.
/// Tolerates CRLF line endings.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.starts_with("  ") && !l.trim().is_empty())
}

struct Fields<'a> {
    it: std::str::SplitAsciiWhitespace<'a>,
    file: &'a str,
    line: usize,
}

impl<'a> Fields<'a> {
    fn new(text: &'a str, file: &'a str, line: usize) -> Self {
        Fields {
            it: text.split_ascii_whitespace(),
            file,
            line,
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        self.it
            .next()
            .ok_or_else(|| Error::parse(self.file, self.line, format!("missing {what}")))
    }

    fn int(&mut self, what: &str, radix: u32) -> Result<u32> {
        let tok = self.next(what)?;
        u32::from_str_radix(tok, radix)
            .map_err(|_| Error::parse(self.file, self.line, format!("bad {what} {tok:?}")))
    }
}

pub(super) fn read_index(dir: &Path, pos: Pos) -> Result<HashMap<String, Vec<SynsetId>>> {
    let file = format!("index.{}", pos.file_suffix());
    let text = read(dir, &file)?;
    let mut out = HashMap::new();
    for (line_no, line) in content_lines(&text) {
        let (lemma, ids) = parse_index_line(line, pos, &file, line_no)?;
        out.insert(lemma, ids);
    }
    Ok(out)
}

/// `lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt tagsense_cnt offset...`
pub(super) fn parse_index_line(
    line: &str,
    pos: Pos,
    file: &str,
    line_no: usize,
) -> Result<(String, Vec<SynsetId>)> {
    let mut f = Fields::new(line, file, line_no);
    let lemma = f.next("lemma")?.to_string();
    let tag = f.next("part of speech")?;
    if Pos::from_tag(tag) != Some(pos) {
        return Err(Error::parse(
            file,
            line_no,
            format!("part of speech {tag:?} does not match the file"),
        ));
    }
    let synset_cnt = f.int("synset count", 10)?;
    let p_cnt = f.int("pointer count", 10)?;
    for _ in 0..p_cnt {
        f.next("pointer symbol")?;
    }
    f.int("sense count", 10)?;
    f.int("tagged sense count", 10)?;
    let mut ids = Vec::with_capacity(synset_cnt as usize);
    for _ in 0..synset_cnt {
        ids.push(SynsetId::new(pos, f.int("synset offset", 10)?));
    }
    if let Some(extra) = f.it.next() {
        return Err(Error::parse(
            file,
            line_no,
            format!("unexpected trailing field {extra:?}"),
        ));
    }
    Ok((lemma, ids))
}

pub(super) fn read_data(dir: &Path, pos: Pos) -> Result<Vec<RawSynset>> {
    let file = format!("data.{}", pos.file_suffix());
    let text = read(dir, &file)?;
    content_lines(&text)
        .map(|(line_no, line)| parse_data_line(line, pos, &file, line_no))
        .collect()
}

/// `offset lex_filenum ss_type w_cnt (word lex_id)... p_cnt (ptr)... [frames] | gloss`
///
/// Only `@` and `@i` pointers are kept.
pub(super) fn parse_data_line(
    line: &str,
    pos: Pos,
    file: &str,
    line_no: usize,
) -> Result<RawSynset> {
    let (fields, gloss) = match line.split_once('|') {
        Some((fields, gloss)) => (fields, gloss.trim()),
        None => (line, ""),
    };
    let mut f = Fields::new(fields, file, line_no);
    let offset = f.int("synset offset", 10)?;
    f.int("lexicographer file number", 10)?;
    let ss_type = f.next("synset type")?;
    if Pos::from_tag(ss_type) != Some(pos) {
        return Err(Error::parse(
            file,
            line_no,
            format!("synset type {ss_type:?} does not match the file"),
        ));
    }
    let w_cnt = f.int("word count", 16)?;
    let mut lemmas = Vec::with_capacity(w_cnt as usize);
    for _ in 0..w_cnt {
        lemmas.push(f.next("word")?.to_string());
        f.int("lex id", 16)?;
    }
    let p_cnt = f.int("pointer count", 10)?;
    let mut hypernyms = Vec::new();
    for _ in 0..p_cnt {
        let symbol = f.next("pointer symbol")?;
        let target = f.int("pointer offset", 10)?;
        let target_tag = f.next("pointer part of speech")?;
        let source_target = f.next("pointer source/target")?;
        if source_target.len() != 4 || u16::from_str_radix(source_target, 16).is_err() {
            return Err(Error::parse(
                file,
                line_no,
                format!("bad pointer source/target {source_target:?}"),
            ));
        }
        if symbol == "@" || symbol == "@i" {
            let target_pos = Pos::from_tag(target_tag).ok_or_else(|| {
                Error::parse(
                    file,
                    line_no,
                    format!("bad pointer part of speech {target_tag:?}"),
                )
            })?;
            hypernyms.push(SynsetId::new(target_pos, target));
        }
    }
    // Verb frames (and anything else before the gloss) carry nothing we use.
    Ok(RawSynset {
        id: SynsetId::new(pos, offset),
        satellite: ss_type == "s",
        lemmas,
        hypernyms,
        gloss: gloss.to_string(),
        file: file.to_string(),
        line: line_no,
    })
}

pub(super) fn read_exceptions(dir: &Path, file: &str) -> Result<HashMap<String, Vec<String>>> {
    let text = read(dir, file)?;
    let mut out: HashMap<String, Vec<String>> = HashMap::new();
    for (line_no, line) in content_lines(&text) {
        let mut f = Fields::new(line, file, line_no);
        let form = f.next("inflected form")?.to_string();
        let bases: Vec<String> = f.it.map(str::to_string).collect();
        if bases.is_empty() {
            return Err(Error::parse(file, line_no, "exception without base form"));
        }
        out.entry(form).or_default().extend(bases);
    }
    Ok(out)
}
