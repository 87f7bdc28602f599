use num_complex::Complex64;
use thiserror::Error;

use crate::boxes::{Boxcode, MAX_DEPTH};
use crate::conditions::{BoxContext, Boundary, Mode, TerminalCondition};
use crate::pairs::RelatorTable;
use crate::par;
use crate::words::{evaluate_at, Letter, Mat2, SL2Point, Word};

use super::{children, Node, ProofTree};

/// Partial words kept per g-length while generating candidates.
const BEAM_WIDTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Deepest boxcode the search may split down to (absolute depth).
    pub max_depth: usize,
    pub g_max: usize,
    /// Bound `E` on `|p|, |q|` in the translation blocks `m^p n^q`.
    pub lattice_range: i32,
    pub top_k: usize,
    pub mode: Mode,
    pub parallel: bool,
}

impl SearchConfig {
    pub fn main() -> SearchConfig {
        SearchConfig {
            max_depth: 60,
            g_max: 7,
            lattice_range: 3,
            top_k: 16,
            mode: Mode::MAIN,
            parallel: true,
        }
    }

    pub fn identify() -> SearchConfig {
        SearchConfig { g_max: 3, mode: Mode::IDENTIFY, ..SearchConfig::main() }
    }

    fn validate(&self, root: &Boxcode) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::InvalidConfig(m));
        if self.max_depth > MAX_DEPTH {
            return bad(format!("max depth {} exceeds {MAX_DEPTH}", self.max_depth));
        }
        if root.depth() > self.max_depth {
            return bad(format!("root depth {} exceeds max depth {}", root.depth(), self.max_depth));
        }
        if !(1..=7).contains(&self.g_max) {
            return bad(format!("g-max {} outside 1..=7", self.g_max));
        }
        if !(0..=16).contains(&self.lattice_range) {
            return bad(format!("lattice range {} outside 0..=16", self.lattice_range));
        }
        if self.top_k == 0 {
            return bad("top-k must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

/// Builds a certificate for `root`: boundary conditions first, then killer,
/// variety (identify mode) and necklace words, splitting boxes where
/// nothing certifies and leaving holes at the depth limit.
pub fn search(root: &Boxcode, cfg: &SearchConfig) -> Result<ProofTree, SearchError> {
    cfg.validate(root)?;
    Ok(ProofTree::new(Some(root.clone()), search_node(root.clone(), cfg)))
}

fn search_node(code: Boxcode, cfg: &SearchConfig) -> Node {
    if let Some(cond) = find_condition(&code, cfg) {
        return Node::Leaf(cond);
    }
    if code.depth() >= cfg.max_depth {
        return Node::Leaf(TerminalCondition::Hole);
    }
    let (lo, hi) = children(&code);
    let (a, b) = par::join(cfg.parallel, || search_node(lo, cfg), || search_node(hi, cfg));
    Node::split(a, b)
}

fn find_condition(code: &Boxcode, cfg: &SearchConfig) -> Option<TerminalCondition> {
    let ctx = BoxContext::new(code.to_box());
    for b in Boundary::SEARCH_ORDER {
        if ctx.boundary(b, &cfg.mode).is_certified() {
            return Some(TerminalCondition::Boundary(b));
        }
    }
    ctx.generators().ok()?;

    let (p, s, l) = ctx.bx.center_params();
    let mut words: Vec<Word> = candidate_words(p, s, l, cfg).into_iter().map(|(_, w)| w).collect();
    words.sort_by_cached_key(|w| (w.len(), w.to_string()));

    for w in &words {
        if ctx.killer(w).is_certified() {
            return Some(TerminalCondition::Killer(w.clone()));
        }
    }
    if cfg.mode.variety_allowed {
        for (r1, r2) in RelatorTable::bundled().all_pairs() {
            if near_variety(r1, p, s, l) && near_variety(r2, p, s, l) && ctx.variety(r1, r2, &cfg.mode).is_certified() {
                return Some(TerminalCondition::Variety(r1.clone(), r2.clone()));
            }
        }
    }
    for w in words.iter().filter(|w| cfg.mode.necklace_range_contains(w.g_length())) {
        if ctx.necklace(w, &cfg.mode).is_certified() {
            return Some(TerminalCondition::Necklace(w.clone()));
        }
    }
    None
}

fn near_variety(r: &Word, p: Complex64, s: Complex64, l: Complex64) -> bool {
    evaluate_at(r, p, s, l).is_ok_and(|m| m.b.norm() < 1.0 && m.c.norm() < 1.0)
}

struct Partial {
    score: f64,
    word: Word,
    mat: SL2Point,
}

/// Words `e1 T1 e2 T2 .. ek` with `e_i` in `{g, G}`, `T_i = m^p n^q`,
/// `|p|, |q| <= E` and `k <= g_max`, grown by prepending and pruned to a beam
/// per g-length. Returns the `top_k` best by `|c/S|` at the given point,
/// ascending (ties broken by the word text).
pub fn candidate_words(p: Complex64, s: Complex64, l: Complex64, cfg: &SearchConfig) -> Vec<(f64, Word)> {
    let i = Complex64::new(0.0, 1.0);
    let g_mat = |letter: Letter| -> SL2Point {
        let (psi, si, ios) = (p * s * i, s * i, i / s);
        let zero = Complex64::new(0.0, 0.0);
        match letter {
            Letter::G => Mat2 { a: psi, b: ios, c: si, d: zero },
            _ => Mat2 { a: zero, b: -ios, c: -si, d: psi },
        }
    };
    let score = |m: &SL2Point| {
        let v = (m.c / s).norm();
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };
    let e = cfg.lattice_range;
    let mut lattice = Vec::new();
    for a in -e..=e {
        for b in -e..=e {
            let mut letters = Vec::new();
            let (lm, ln) = if a >= 0 { (Letter::M, Letter::N) } else { (Letter::InvM, Letter::N) };
            letters.extend(std::iter::repeat(lm).take(a.unsigned_abs() as usize));
            let ln = if b >= 0 { ln } else { Letter::InvN };
            letters.extend(std::iter::repeat(ln).take(b.unsigned_abs() as usize));
            lattice.push((letters, Complex64::new(a as f64, 0.0) + l * b as f64));
        }
    }

    let mut beam: Vec<Partial> = [Letter::InvG, Letter::G]
        .into_iter()
        .map(|letter| {
            let mat = g_mat(letter);
            Partial { score: score(&mat), word: Word::new(vec![letter]), mat }
        })
        .collect();
    let mut all: Vec<(f64, Word)> = beam.iter().map(|b| (b.score, b.word.clone())).collect();

    for _ in 1..cfg.g_max {
        let mut next = Vec::new();
        for part in &beam {
            let head = part.word.letters()[0];
            for letter in [Letter::InvG, Letter::G] {
                let em = g_mat(letter);
                for (t_letters, t) in &lattice {
                    if t_letters.is_empty() && letter == head.inverse() {
                        continue;
                    }
                    let m = &part.mat;
                    let tm = Mat2 { a: m.a + t * m.c, b: m.b + t * m.d, c: m.c, d: m.d };
                    let Ok(mat) = em.mul(&tm) else { continue };
                    let mut letters = Vec::with_capacity(1 + t_letters.len() + part.word.len());
                    letters.push(letter);
                    letters.extend_from_slice(t_letters);
                    letters.extend_from_slice(part.word.letters());
                    next.push(Partial { score: score(&mat), word: Word::new(letters), mat });
                }
            }
        }
        next.sort_by(|a, b| a.score.total_cmp(&b.score).then_with(|| a.word.cmp(&b.word)));
        next.truncate(BEAM_WIDTH);
        all.extend(next.iter().map(|b| (b.score, b.word.clone())));
        beam = next;
    }

    all.retain(|(s, _)| s.is_finite());
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    all.truncate(cfg.top_k);
    all
}
