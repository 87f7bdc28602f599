//! Random syntactically valid certificates.

use bicusp::boxes::Boxcode;
use bicusp::conditions::{Boundary, TerminalCondition};
use bicusp::prooftree::{Node, ProofTree};
use bicusp::words::{Letter, Word};
use rand::Rng;

pub fn random_word(rng: &mut impl Rng, max_len: usize) -> Word {
    let n = rng.gen_range(1..=max_len);
    Word::new((0..n).map(|_| Letter::ALL[rng.gen_range(0..6)]).collect())
}

pub fn random_leaf(rng: &mut impl Rng) -> TerminalCondition {
    const LABELS: [&str; 11] = ["0", "1", "1a", "1b", "1c", "1d", "2", "3", "4", "5", "6"];
    match rng.gen_range(0..5) {
        0 => TerminalCondition::Boundary(Boundary::parse(LABELS[rng.gen_range(0..LABELS.len())]).unwrap()),
        1 => TerminalCondition::Killer(random_word(rng, 16)),
        2 => TerminalCondition::Necklace(random_word(rng, 16)),
        3 => TerminalCondition::Variety(random_word(rng, 12), random_word(rng, 12)),
        _ => TerminalCondition::Hole,
    }
}

fn random_node(rng: &mut impl Rng, height: usize) -> Node {
    if height == 0 || rng.gen_bool(0.45) {
        Node::Leaf(random_leaf(rng))
    } else {
        Node::split(random_node(rng, height - 1), random_node(rng, height - 1))
    }
}

/// Random tree of height at most `max_height`, with a random header half
/// of the time.
pub fn random_tree(rng: &mut impl Rng, max_height: usize) -> ProofTree {
    let root = rng.gen_bool(0.5).then(|| {
        let depth = rng.gen_range(0..=40);
        Boxcode::from_bits((0..depth).map(|_| rng.gen()).collect()).unwrap()
    });
    ProofTree::new(root, random_node(rng, max_height))
}
