//! Read-only access to the WordNet 3.0 database files.
//!
//! The database is loaded once into memory and never mutated afterwards, so a
//! single [`WordNetDb`] can be shared by reference across scoring threads.
//! Depths are precomputed at load time.

mod morphy;
mod parse;
mod wup;

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

pub use self::wup::Subsumer;

/// Environment variable consulted when no WordNet directory is given
/// explicitly.
pub const WORDNET_DIR_ENV: &str = "QUERYNET_WORDNET_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl Pos {
    pub const ALL: [Pos; 4] = [Pos::Noun, Pos::Verb, Pos::Adjective, Pos::Adverb];

    /// Suffix used by the database file names (`index.noun`, `noun.exc`, ...).
    pub fn file_suffix(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
            Pos::Adjective => "adj",
            Pos::Adverb => "adv",
        }
    }

    pub fn tag(self) -> char {
        match self {
            Pos::Noun => 'n',
            Pos::Verb => 'v',
            Pos::Adjective => 'a',
            Pos::Adverb => 'r',
        }
    }

    /// Parses a synset type character. Adjective satellites (`s`) fold into
    /// [`Pos::Adjective`].
    pub fn from_tag(tag: &str) -> Option<Pos> {
        match tag {
            "n" => Some(Pos::Noun),
            "v" => Some(Pos::Verb),
            "a" | "s" => Some(Pos::Adjective),
            "r" => Some(Pos::Adverb),
            _ => None,
        }
    }

    fn rank(self) -> usize {
        self as usize
    }
}

/// A synset address: part of speech plus the byte offset printed in the
/// data file. Orders by part of speech first, then offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SynsetId {
    pub pos: Pos,
    pub offset: u32,
}

impl SynsetId {
    pub fn new(pos: Pos, offset: u32) -> Self {
        SynsetId { pos, offset }
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08}-{}", self.offset, self.pos.tag())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Synset {
    pub id: SynsetId,
    /// Canonical `lemma.pos.NN` name, e.g. `dog.n.01`.
    pub name: String,
    pub satellite: bool,
    pub lemmas: Vec<String>,
    /// Hypernym and instance-hypernym targets, in file order.
    pub hypernyms: Vec<SynsetId>,
    pub gloss: String,
}

/// In-memory WordNet database.
#[derive(Debug)]
pub struct WordNetDb {
    synsets: Vec<Synset>,
    slots: HashMap<SynsetId, u32>,
    /// Dense hypernym adjacency mirroring `Synset::hypernyms`.
    parents: Vec<Vec<u32>>,
    max_depth: Vec<u32>,
    min_depth: Vec<u32>,
    index: [HashMap<String, Vec<SynsetId>>; 4],
    exceptions: [HashMap<String, Vec<String>>; 4],
}

/// Loads the database found in `dir`.
pub fn load_wordnet(dir: impl AsRef<Path>) -> Result<WordNetDb> {
    WordNetDb::load(dir)
}

impl WordNetDb {
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let mut index: [HashMap<String, Vec<SynsetId>>; 4] = Default::default();
        let mut exceptions: [HashMap<String, Vec<String>>; 4] = Default::default();
        let mut raw = Vec::new();

        // Check every file up front so the error names the first missing one
        // rather than whatever happens to be parsed first.
        for pos in Pos::ALL {
            for name in parse::file_names(pos) {
                if !dir.join(&name).is_file() {
                    return Err(Error::MissingFile {
                        dir: dir.to_path_buf(),
                        name,
                    });
                }
            }
        }

        for pos in Pos::ALL {
            let suffix = pos.file_suffix();
            index[pos.rank()] = parse::read_index(dir, pos)?;
            exceptions[pos.rank()] = parse::read_exceptions(dir, &format!("{suffix}.exc"))?;
            raw.extend(parse::read_data(dir, pos)?);
        }

        Self::assemble(raw, index, exceptions)
    }

    fn assemble(
        raw: Vec<parse::RawSynset>,
        index: [HashMap<String, Vec<SynsetId>>; 4],
        exceptions: [HashMap<String, Vec<String>>; 4],
    ) -> Result<Self> {
        let mut slots = HashMap::with_capacity(raw.len());
        for (slot, r) in raw.iter().enumerate() {
            if slots.insert(r.id, slot as u32).is_some() {
                return Err(Error::parse(
                    r.file.clone(),
                    r.line,
                    format!("duplicate synset offset {}", r.id.offset),
                ));
            }
        }

        let mut parents = Vec::with_capacity(raw.len());
        for r in &raw {
            let mut ps = Vec::with_capacity(r.hypernyms.len());
            for h in &r.hypernyms {
                if h.pos != r.id.pos {
                    return Err(Error::parse(
                        r.file.clone(),
                        r.line,
                        format!("hypernym {h} crosses part of speech"),
                    ));
                }
                match slots.get(h) {
                    Some(&slot) => ps.push(slot),
                    None => {
                        return Err(Error::parse(
                            r.file.clone(),
                            r.line,
                            format!("hypernym target {h} does not resolve"),
                        ))
                    }
                }
            }
            parents.push(ps);
        }

        for pos in Pos::ALL {
            let file = format!("index.{}", pos.file_suffix());
            for (lemma, ids) in &index[pos.rank()] {
                if let Some(id) = ids.iter().find(|id| !slots.contains_key(id)) {
                    return Err(Error::parse(
                        file.clone(),
                        0,
                        format!("lemma {lemma:?} points at missing synset {id}"),
                    ));
                }
            }
        }

        let (max_depth, min_depth) = depths(&raw, &parents)?;

        let mut synsets = Vec::with_capacity(raw.len());
        for r in raw {
            let name = canonical_name(&r, &index[r.id.pos.rank()])?;
            synsets.push(Synset {
                id: r.id,
                name,
                satellite: r.satellite,
                lemmas: r.lemmas,
                hypernyms: r.hypernyms,
                gloss: r.gloss,
            });
        }

        Ok(WordNetDb {
            synsets,
            slots,
            parents,
            max_depth,
            min_depth,
            index,
            exceptions,
        })
    }

    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        self.slot(id).map(|s| &self.synsets[s as usize])
    }

    /// Looks a synset up by its canonical `lemma.pos.NN` name.
    pub fn synset_by_name(&self, name: &str) -> Option<&Synset> {
        let mut parts = name.rsplitn(3, '.');
        let sense: usize = parts.next()?.parse().ok()?;
        let pos = Pos::from_tag(parts.next()?)?;
        let lemma = parts.next()?;
        let id = *self.index_entry(pos, lemma).get(sense.checked_sub(1)?)?;
        self.synset(id)
    }

    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.iter()
    }

    pub fn synset_count(&self, pos: Pos) -> usize {
        self.synsets.iter().filter(|s| s.id.pos == pos).count()
    }

    /// Synsets listed for `lemma` in the index file of `pos`, in sense order.
    pub fn index_entry(&self, pos: Pos, lemma: &str) -> &[SynsetId] {
        self.index[pos.rank()]
            .get(lemma)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn contains_lemma(&self, pos: Pos, lemma: &str) -> bool {
        self.index[pos.rank()].contains_key(lemma)
    }

    pub fn exception_bases(&self, pos: Pos, form: &str) -> &[String] {
        self.exceptions[pos.rank()]
            .get(form)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Synsets for `word` across all parts of speech: noun, verb, adjective
    /// then adverb, each expanded over the morphological base forms of the
    /// lowercased word.
    pub fn synsets_for(&self, word: &str) -> Vec<SynsetId> {
        let word = word.to_lowercase();
        let mut out = Vec::new();
        for pos in Pos::ALL {
            for base in self.morphy(&word, pos) {
                out.extend_from_slice(self.index_entry(pos, &base));
            }
        }
        out
    }

    /// First element of [`WordNetDb::synsets_for`], without building the
    /// whole list.
    pub fn first_sense(&self, word: &str) -> Option<SynsetId> {
        let word = word.to_lowercase();
        Pos::ALL.into_iter().find_map(|pos| {
            self.morphy(&word, pos)
                .iter()
                .find_map(|base| self.index_entry(pos, base).first().copied())
        })
    }

    /// Length of the longest hypernym path from `id` to a root.
    ///
    /// # Panics
    /// If `id` is not in the database.
    pub fn hypernym_depth(&self, id: SynsetId) -> usize {
        self.max_depth[self.expect_slot(id) as usize] as usize
    }

    /// Length of the shortest hypernym path from `id` to a root.
    pub fn min_depth(&self, id: SynsetId) -> usize {
        self.min_depth[self.expect_slot(id) as usize] as usize
    }

    fn slot(&self, id: SynsetId) -> Option<u32> {
        self.slots.get(&id).copied()
    }

    fn expect_slot(&self, id: SynsetId) -> u32 {
        self.slot(id)
            .unwrap_or_else(|| panic!("synset {id} is not in the database"))
    }
}

fn depths(raw: &[parse::RawSynset], parents: &[Vec<u32>]) -> Result<(Vec<u32>, Vec<u32>)> {
    const UNSEEN: u32 = u32::MAX;
    const ACTIVE: u32 = u32::MAX - 1;

    let n = parents.len();
    let mut max_d = vec![UNSEEN; n];
    let mut min_d = vec![UNSEEN; n];

    for start in 0..n {
        if max_d[start] != UNSEEN {
            continue;
        }
        // Iterative post-order walk; `ACTIVE` marks nodes on the stack.
        let mut stack = vec![(start, false)];
        while let Some((node, expanded)) = stack.pop() {
            if expanded {
                let ps = &parents[node];
                if ps.is_empty() {
                    max_d[node] = 0;
                    min_d[node] = 0;
                } else {
                    max_d[node] = 1 + ps.iter().map(|&p| max_d[p as usize]).max().unwrap();
                    min_d[node] = 1 + ps.iter().map(|&p| min_d[p as usize]).min().unwrap();
                }
                continue;
            }
            match max_d[node] {
                UNSEEN => {}
                ACTIVE => {
                    let r = &raw[node];
                    return Err(Error::parse(
                        r.file.clone(),
                        r.line,
                        format!("hypernym cycle through {}", r.id),
                    ));
                }
                _ => continue,
            }
            max_d[node] = ACTIVE;
            stack.push((node, true));
            for &p in &parents[node] {
                match max_d[p as usize] {
                    UNSEEN => stack.push((p as usize, false)),
                    ACTIVE => {
                        let r = &raw[p as usize];
                        return Err(Error::parse(
                            r.file.clone(),
                            r.line,
                            format!("hypernym cycle through {}", r.id),
                        ));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok((max_d, min_d))
}

/// `lemma.pos.NN`, where `lemma` is the first lemma lowercased and stripped of
/// any syntactic marker, and `NN` is the synset's 1-based position in that
/// lemma's index entry.
fn canonical_name(r: &parse::RawSynset, index: &HashMap<String, Vec<SynsetId>>) -> Result<String> {
    let first = r
        .lemmas
        .first()
        .ok_or_else(|| Error::parse(r.file.clone(), r.line, "synset without lemmas"))?;
    let lemma = strip_marker(first).to_lowercase();
    let sense = index
        .get(&lemma)
        .and_then(|ids| ids.iter().position(|&id| id == r.id))
        .ok_or_else(|| {
            Error::parse(
                r.file.clone(),
                r.line,
                format!("lemma {lemma:?} of synset {} missing from the index", r.id),
            )
        })?;
    let tag = if r.satellite { 's' } else { r.id.pos.tag() };
    Ok(format!("{lemma}.{tag}.{:02}", sense + 1))
}

/// Drops an adjective position marker such as `(a)`, `(p)` or `(ip)`.
fn strip_marker(lemma: &str) -> &str {
    match lemma.find('(') {
        Some(i) if lemma.ends_with(')') => &lemma[..i],
        _ => lemma,
    }
}
