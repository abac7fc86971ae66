//! Wu-Palmer similarity over the hypernym hierarchy.
//!
//! Subsumer selection and path lengths follow the conventions of the widely
//! used NLTK implementation, so scores are comparable with that toolkit:
//!
//! * a synset is its own subsumer and scores exactly 1 against itself;
//! * otherwise candidates are the common members of both hypernym closures (each
//!   closure includes the synset itself), plus a virtual root when
//!   `simulate_root` is set;
//! * the winner has the greatest *shortest* distance to a root; remaining ties
//!   go to the lexicographically smallest canonical name, with the virtual
//!   root named `*ROOT*`, except that either synset of the pair wins if it is
//!   tied. NLTK only lets the first argument win, which makes its score
//!   order-dependent when one synset is an ancestor of the other;
//! * the subsumer's depth is its *longest* root path plus one;
//! * each synset's distance to the subsumer is the shortest path through any
//!   common ancestor of the two, and the virtual root sits one edge above the
//!   farthest ancestor reached by breadth-first search.

use super::{Pos, SynsetId, WordNetDb};
use crate::scalar::Weight;

const VIRTUAL_ROOT_NAME: &str = "*ROOT*";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subsumer {
    Synset(SynsetId),
    /// Synthetic node placed above every root of a part of speech.
    VirtualRoot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Slot(u32),
    Root,
}

type Distances = Vec<(Node, u32)>;

impl WordNetDb {
    /// Breadth-first hypernym distances from `slot`, starting with itself at 0.
    fn shortest_paths(&self, slot: u32, simulate_root: bool) -> Distances {
        let mut out: Distances = vec![(Node::Slot(slot), 0)];
        let mut head = 0;
        while head < out.len() {
            let (node, d) = out[head];
            head += 1;
            let Node::Slot(s) = node else { continue };
            for &p in &self.parents[s as usize] {
                if !out.iter().any(|&(n, _)| n == Node::Slot(p)) {
                    out.push((Node::Slot(p), d + 1));
                }
            }
        }
        if simulate_root {
            let far = out.iter().map(|&(_, d)| d).max().unwrap_or(0);
            out.push((Node::Root, far + 1));
        }
        out
    }

    fn node_name(&self, node: Node) -> &str {
        match node {
            Node::Slot(s) => &self.synsets[s as usize].name,
            Node::Root => VIRTUAL_ROOT_NAME,
        }
    }

    fn node_min_depth(&self, node: Node) -> u32 {
        match node {
            Node::Slot(s) => self.min_depth[s as usize],
            Node::Root => 0,
        }
    }

    fn select_subsumer(
        &self,
        pair: (u32, u32),
        paths_a: &Distances,
        paths_b: &Distances,
        simulate_root: bool,
    ) -> Option<Node> {
        let mut candidates: Vec<Node> = paths_a
            .iter()
            .map(|&(n, _)| n)
            .filter(|&n| n != Node::Root && paths_b.iter().any(|&(m, _)| m == n))
            .collect();
        if simulate_root {
            candidates.push(Node::Root);
        }
        let best = candidates.iter().map(|&n| self.node_min_depth(n)).max()?;
        let tied = candidates
            .into_iter()
            .filter(|&n| self.node_min_depth(n) == best);
        let mut winner: Option<Node> = None;
        for n in tied {
            if n == Node::Slot(pair.0) || n == Node::Slot(pair.1) {
                return Some(n);
            }
            winner = match winner {
                Some(w) if self.node_name(w) <= self.node_name(n) => Some(w),
                _ => Some(n),
            };
        }
        winner
    }

    fn distance_to(
        &self,
        from: u32,
        paths_from: &Distances,
        to: Node,
        simulate_root: bool,
    ) -> Option<u32> {
        if to == Node::Slot(from) {
            return Some(0);
        }
        let paths_to = match to {
            Node::Slot(s) => self.shortest_paths(s, simulate_root),
            Node::Root => vec![(Node::Root, 0)],
        };
        paths_from
            .iter()
            .filter_map(|&(n, d1)| {
                paths_to
                    .iter()
                    .find(|&&(m, _)| m == n)
                    .map(|&(_, d2)| d1 + d2)
            })
            .min()
    }

    /// Deepest common hypernym of `a` and `b` under the selection rules in the
    /// module docs. `None` when the synsets differ in part of speech, either
    /// is unknown, or they share no ancestor and `simulate_root` is off.
    pub fn lowest_common_subsumer(
        &self,
        a: SynsetId,
        b: SynsetId,
        simulate_root: bool,
    ) -> Option<Subsumer> {
        if a.pos != b.pos {
            return None;
        }
        let (sa, sb) = (self.slot(a)?, self.slot(b)?);
        if sa == sb {
            return Some(Subsumer::Synset(a));
        }
        let pa = self.shortest_paths(sa, false);
        let pb = self.shortest_paths(sb, false);
        Some(
            match self.select_subsumer((sa, sb), &pa, &pb, simulate_root)? {
                Node::Slot(s) => Subsumer::Synset(self.synsets[s as usize].id),
                Node::Root => Subsumer::VirtualRoot,
            },
        )
    }

    /// Wu-Palmer similarity in (0, 1], or `None` across parts of speech or
    /// when no subsumer exists. The virtual root is simulated for every part
    /// of speech except nouns, which share a single root.
    pub fn wup_similarity<T: Weight>(&self, a: SynsetId, b: SynsetId) -> Option<T> {
        if a.pos != b.pos {
            return None;
        }
        let (sa, sb) = (self.slot(a)?, self.slot(b)?);
        if sa == sb {
            return Some(T::one());
        }
        let simulate_root = a.pos != Pos::Noun;
        let pa = self.shortest_paths(sa, false);
        let pb = self.shortest_paths(sb, false);
        let subsumer = self.select_subsumer((sa, sb), &pa, &pb, simulate_root)?;
        let depth = match subsumer {
            Node::Slot(s) => self.max_depth[s as usize] + 1,
            Node::Root => 1,
        };
        let (pa, pb) = if simulate_root {
            (self.shortest_paths(sa, true), self.shortest_paths(sb, true))
        } else {
            (pa, pb)
        };
        let len_a = self.distance_to(sa, &pa, subsumer, simulate_root)? + depth;
        let len_b = self.distance_to(sb, &pb, subsumer, simulate_root)? + depth;
        let two_depth = T::from_count(2 * depth as usize);
        Some(two_depth / T::from_count((len_a + len_b) as usize))
    }
}
