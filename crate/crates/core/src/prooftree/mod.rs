//! Proof certificates: complete binary trees over boxcodes whose leaves name
//! a terminal condition.
//!
//! Text format, one LF-terminated ASCII line per node in preorder:
//!
//! ```text
//! boxcode 0110        optional first line, sets the root box
//! X                   internal node: split along the next dimension
//! B0 .. B6, B1a..B1d  boundary leaf
//! K<word>             killer word
//! N<word>             necklace word
//! V<word>,<word>      variety pair
//! H                   hole
//! ```

mod search;
mod verify;

use std::fmt;

use thiserror::Error;

use crate::boxes::{Boxcode, MAX_DEPTH};
use crate::conditions::{Boundary, TerminalCondition};
use crate::words::{Word, MAX_WORD_LEN};

pub use search::{candidate_words, search, SearchConfig, SearchError};
pub use verify::{verify_tree, Failure, VerifyOptions, VerifyReport, VerifyStatus};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Split(Box<Node>, Box<Node>),
    Leaf(TerminalCondition),
}

impl Node {
    pub fn split(lower: Node, upper: Node) -> Node {
        Node::Split(Box::new(lower), Box::new(upper))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Node::Split(a, b) => a.leaf_count() + b.leaf_count(),
            Node::Leaf(_) => 1,
        }
    }

    /// Leaf boxcodes and conditions in preorder, relative to `root`.
    pub fn leaves(&self, root: &Boxcode) -> Vec<(Boxcode, &TerminalCondition)> {
        let mut out = Vec::new();
        self.collect(root.clone(), &mut out);
        out
    }

    fn collect<'a>(&'a self, code: Boxcode, out: &mut Vec<(Boxcode, &'a TerminalCondition)>) {
        match self {
            Node::Leaf(c) => out.push((code, c)),
            Node::Split(a, b) => {
                let (lo, hi) = children(&code);
                a.collect(lo, out);
                b.collect(hi, out);
            }
        }
    }

    fn height(&self) -> usize {
        match self {
            Node::Split(a, b) => 1 + a.height().max(b.height()),
            Node::Leaf(_) => 0,
        }
    }
}

/// Children of a boxcode; callers guarantee the depth limit.
pub(crate) fn children(code: &Boxcode) -> (Boxcode, Boxcode) {
    (
        code.child(false).expect("depth checked"),
        code.child(true).expect("depth checked"),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofTree {
    /// Root from the `boxcode` header line, if present.
    pub root: Option<Boxcode>,
    pub node: Node,
}

impl ProofTree {
    pub fn new(root: Option<Boxcode>, node: Node) -> ProofTree {
        ProofTree { root, node }
    }

    pub fn root_or_default(&self) -> Boxcode {
        self.root.clone().unwrap_or_default()
    }

    pub fn parse(bytes: &[u8]) -> Result<ProofTree, ParseError> {
        parse_tree(bytes)
    }

    pub fn serialize(&self) -> String {
        serialize_tree(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn err(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError { line, reason: reason.into() }
}

fn parse_word(line: usize, text: &str) -> Result<Word, ParseError> {
    if text.is_empty() {
        return Err(err(line, "empty word"));
    }
    if text.len() > MAX_WORD_LEN {
        return Err(err(line, format!("word longer than {MAX_WORD_LEN} letters")));
    }
    Word::parse(text).map_err(|e| err(line, e.to_string()))
}

/// Parses one leaf label; `None` for the internal marker `X`.
pub fn parse_label(line: usize, text: &str) -> Result<Option<TerminalCondition>, ParseError> {
    let Some(tag) = text.chars().next() else {
        return Err(err(line, "empty line"));
    };
    let rest = &text[1..];
    let cond = match tag {
        'X' if rest.is_empty() => return Ok(None),
        'H' if rest.is_empty() => TerminalCondition::Hole,
        'B' => TerminalCondition::Boundary(
            Boundary::parse(rest).ok_or_else(|| err(line, format!("bad boundary label {text:?}")))?,
        ),
        'K' => TerminalCondition::Killer(parse_word(line, rest)?),
        'N' => TerminalCondition::Necklace(parse_word(line, rest)?),
        'V' => {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| err(line, "variety leaf needs two comma-separated words"))?;
            TerminalCondition::Variety(parse_word(line, a)?, parse_word(line, b)?)
        }
        _ => return Err(err(line, format!("unrecognized line {text:?}"))),
    };
    Ok(Some(cond))
}

enum Frame {
    /// Internal node waiting for its lower child.
    Lower,
    /// Internal node holding its finished lower child.
    Upper(Node),
}

pub fn parse_tree(bytes: &[u8]) -> Result<ProofTree, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| err(1, "not ASCII"))?;
    if let Some(pos) = text.find(|c: char| !c.is_ascii()) {
        let line = text[..pos].matches('\n').count() + 1;
        return Err(err(line, "not ASCII"));
    }
    if text.is_empty() {
        return Err(err(1, "empty certificate"));
    }
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| err(text.matches('\n').count() + 1, "missing final newline"))?;
    let lines: Vec<&str> = body.split('\n').collect();
    for (i, l) in lines.iter().enumerate() {
        if l.contains('\r') {
            return Err(err(i + 1, "carriage return"));
        }
    }

    let mut idx = 0;
    let mut root = None;
    if let Some(rest) = lines[0].strip_prefix("boxcode") {
        let bits = match rest {
            "" => "",
            r => r
                .strip_prefix(' ')
                .filter(|b| !b.is_empty())
                .ok_or_else(|| err(1, "malformed boxcode header"))?,
        };
        root = Some(Boxcode::parse(bits).map_err(|e| err(1, e.to_string()))?);
        idx = 1;
    }
    let root_depth = root.as_ref().map_or(0, Boxcode::depth);

    let mut stack: Vec<Frame> = Vec::new();
    let mut done: Option<Node> = None;
    while done.is_none() {
        let Some(text) = lines.get(idx) else {
            return Err(err(lines.len() + 1, "incomplete tree"));
        };
        let line = idx + 1;
        idx += 1;
        match parse_label(line, text)? {
            None => {
                if root_depth + stack.len() + 1 > MAX_DEPTH {
                    return Err(err(line, format!("tree deeper than {MAX_DEPTH} levels")));
                }
                stack.push(Frame::Lower);
            }
            Some(cond) => {
                let mut node = Node::Leaf(cond);
                loop {
                    match stack.pop() {
                        None => {
                            done = Some(node);
                            break;
                        }
                        Some(Frame::Lower) => {
                            stack.push(Frame::Upper(node));
                            break;
                        }
                        Some(Frame::Upper(lower)) => node = Node::split(lower, node),
                    }
                }
            }
        }
    }
    if idx < lines.len() {
        return Err(err(idx + 1, "trailing data after complete tree"));
    }
    Ok(ProofTree { root, node: done.expect("loop exits with a tree") })
}

pub fn serialize_tree(tree: &ProofTree) -> String {
    let mut out = String::new();
    if let Some(root) = &tree.root {
        if root.depth() == 0 {
            out.push_str("boxcode\n");
        } else {
            out.push_str(&format!("boxcode {root}\n"));
        }
    }
    let mut stack = vec![&tree.node];
    while let Some(node) = stack.pop() {
        match node {
            Node::Split(a, b) => {
                out.push_str("X\n");
                stack.push(b);
                stack.push(a);
            }
            Node::Leaf(c) => {
                out.push_str(&c.to_string());
                out.push('\n');
            }
        }
    }
    out
}

impl fmt::Display for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_tree(self))
    }
}

/// Height of the tree below its root.
pub fn tree_height(tree: &ProofTree) -> usize {
    tree.node.height()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<ProofTree, ParseError> {
        parse_tree(s.as_bytes())
    }

    #[test]
    fn parses_split_with_two_leaves() {
        let t = parse("X\nB0\nB0\n").unwrap();
        let b0 = Node::Leaf(TerminalCondition::Boundary(Boundary::new(0)));
        assert_eq!(t, ProofTree::new(None, Node::split(b0.clone(), b0)));
    }

    #[test]
    fn rejects_incomplete_and_trailing() {
        assert_eq!(parse("X\nB0\n").unwrap_err().reason, "incomplete tree");
        assert_eq!(parse("B0\nB0\n").unwrap_err().line, 2);
        assert!(parse("B0").unwrap_err().reason.contains("newline"));
        assert!(parse("B0\r\n").is_err());
        assert!(parse("\n").is_err());
        assert!(parse("").is_err());
        assert!(parse("X\n\nB0\nB0\n").is_err());
    }

    #[test]
    fn rejects_malformed_labels() {
        for bad in ["B7\n", "B1e\n", "K\n", "Kx\n", "N\n", "VgG\n", "V,g\n", "Vg,\n", "HH\n", "XX\n", "b0\n"] {
            assert!(parse(bad).is_err(), "{bad:?}");
        }
        let long = format!("K{}\n", "M".repeat(65));
        assert!(parse(&long).is_err());
    }

    #[test]
    fn header_handling() {
        let t = parse("boxcode 0101\nB6\n").unwrap();
        assert_eq!(t.root, Some(Boxcode::parse("0101").unwrap()));
        assert_eq!(parse("boxcode\nH\n").unwrap().root, Some(Boxcode::root()));
        assert!(parse("boxcode \nH\n").is_err());
        assert!(parse("boxcode 012\nH\n").is_err());
        assert!(parse("H\nboxcode 01\n").is_err());
    }

    #[test]
    fn depth_limit() {
        let deep = format!("boxcode {}\nX\nH\nH\n", "0".repeat(120));
        assert!(parse(&deep).is_err());
        let ok = format!("boxcode {}\nX\nH\nH\n", "0".repeat(119));
        assert!(parse(&ok).is_ok());
    }

    #[test]
    fn serialization_examples() {
        let t = ProofTree::new(None, Node::Leaf(TerminalCondition::Boundary(Boundary::new(6))));
        assert_eq!(t.serialize(), "B6\n");
        let w = Word::parse("gMGGMgN").unwrap();
        let t = ProofTree::new(None, Node::Leaf(TerminalCondition::Variety(w.clone(), w)));
        assert_eq!(t.serialize(), "VgMGGMgN,gMGGMgN\n");
        let text = "boxcode 11\nX\nX\nB1a\nKgg\nX\nNgMGGMg\nH\n";
        assert_eq!(parse(text).unwrap().serialize(), text);
    }

    #[test]
    fn leaves_in_preorder() {
        let t = parse("boxcode 1\nX\nX\nH\nB0\nB3\n").unwrap();
        let codes: Vec<String> =
            t.node.leaves(&t.root_or_default()).iter().map(|(c, _)| c.to_string()).collect();
        assert_eq!(codes, ["100", "101", "11"]);
    }
}
