//! Bundled relator-pair tables and the isomorphism spot-check data.

use std::sync::OnceLock;

use crate::words::Word;

const RELATOR_PAIRS: &str = include_str!("../data/relator_pairs.tsv");
const ISOMORPHISMS: &str = include_str!("../data/isomorphisms.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSection {
    pub name: String,
    pub pairs: Vec<(Word, Word)>,
}

/// The relator-pair whitelist used by identify-mode verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorTable {
    pub sections: Vec<PairSection>,
}

impl RelatorTable {
    pub fn parse(text: &str) -> Result<RelatorTable, String> {
        let mut sections: Vec<PairSection> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                sections.push(PairSection { name: name.to_string(), pairs: Vec::new() });
                continue;
            }
            let section = sections
                .last_mut()
                .ok_or_else(|| format!("line {}: pair before any section", no + 1))?;
            let (a, b) = line
                .split_once('\t')
                .ok_or_else(|| format!("line {}: expected two tab-separated words", no + 1))?;
            let a = Word::parse(a).map_err(|e| format!("line {}: {e}", no + 1))?;
            let b = Word::parse(b).map_err(|e| format!("line {}: {e}", no + 1))?;
            section.pairs.push((a, b));
        }
        Ok(RelatorTable { sections })
    }

    pub fn bundled() -> &'static RelatorTable {
        static TABLE: OnceLock<RelatorTable> = OnceLock::new();
        TABLE.get_or_init(|| RelatorTable::parse(RELATOR_PAIRS).expect("bundled relator table"))
    }

    pub fn section(&self, name: &str) -> Option<&PairSection> {
        self.sections.iter().find(|s| s.name == name)
    }

    /// Section containing the pair, in either order.
    pub fn lookup(&self, r1: &Word, r2: &Word) -> Option<&str> {
        self.sections
            .iter()
            .find(|s| s.pairs.iter().any(|(a, b)| (a == r1 && b == r2) || (a == r2 && b == r1)))
            .map(|s| s.name.as_str())
    }

    pub fn contains(&self, r1: &Word, r2: &Word) -> bool {
        self.lookup(r1, r2).is_some()
    }

    pub fn all_pairs(&self) -> impl Iterator<Item = &(Word, Word)> {
        self.sections.iter().flat_map(|s| s.pairs.iter())
    }
}

/// One row of the isomorphism data: a relator pair together with the images
/// of the two generators `a`, `b` of the target presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoRow {
    pub manifold: String,
    pub target_relator: String,
    pub r1: Word,
    pub r2: Word,
    pub image_a: Word,
    pub image_b: Word,
}

impl IsoRow {
    /// The target relator rewritten in `m, n, g` by substituting the images
    /// (uppercase `A`, `B` stand for inverses).
    pub fn substituted_relator(&self) -> Word {
        let mut out = Word::default();
        for ch in self.target_relator.chars() {
            let w = match ch {
                'a' => self.image_a.clone(),
                'b' => self.image_b.clone(),
                'A' => self.image_a.inverse(),
                'B' => self.image_b.inverse(),
                _ => continue,
            };
            out = out.concat(&w);
        }
        out
    }
}

pub fn isomorphism_rows() -> Vec<IsoRow> {
    let mut rows = Vec::new();
    let (mut manifold, mut relator) = (String::new(), String::new());
    for line in ISOMORPHISMS.lines() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if let Some(name) = fields[0].strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            manifold = name.to_string();
            relator = fields[1].to_string();
            continue;
        }
        let w = |i: usize| Word::parse(fields[i]).expect("bundled isomorphism data");
        rows.push(IsoRow {
            manifold: manifold.clone(),
            target_relator: relator.clone(),
            r1: w(0),
            r2: w(1),
            image_a: w(2),
            image_b: w(3),
        });
    }
    rows
}
