//! Terminal conditions and their certification over a box.

use std::fmt;

use crate::boxes::{CornerBounds, ParamBox};
use crate::jet::{Jet, JetError};
use crate::words::{EvalError, Generators, Word};

/// Verification mode: the main parameter-space proof or the smaller
/// identification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub name: &'static str,
    pub area_bound: f64,
    pub necklace_min: usize,
    pub necklace_max: usize,
    pub variety_allowed: bool,
}

impl Mode {
    pub const MAIN: Mode = Mode {
        name: "main",
        area_bound: 5.24,
        necklace_min: 1,
        necklace_max: 7,
        variety_allowed: false,
    };
    pub const IDENTIFY: Mode = Mode {
        name: "identify",
        area_bound: 3.65,
        necklace_min: 1,
        necklace_max: 3,
        variety_allowed: true,
    };

    pub fn necklace_range_contains(&self, g: usize) -> bool {
        (self.necklace_min..=self.necklace_max).contains(&g)
    }
}

/// Which defining inequality of the parameter region a box violates.
/// `sub` refines condition 1 into its four sign conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boundary {
    pub index: u8,
    pub sub: Option<u8>,
}

impl Boundary {
    pub const fn new(index: u8) -> Boundary {
        Boundary { index, sub: None }
    }

    pub const fn sign(sub: u8) -> Boundary {
        Boundary { index: 1, sub: Some(sub) }
    }

    /// All labels the search tries, in order.
    pub const SEARCH_ORDER: [Boundary; 10] = [
        Boundary::new(0),
        Boundary::sign(0),
        Boundary::sign(1),
        Boundary::sign(2),
        Boundary::sign(3),
        Boundary::new(2),
        Boundary::new(3),
        Boundary::new(4),
        Boundary::new(5),
        Boundary::new(6),
    ];

    pub fn parse(label: &str) -> Option<Boundary> {
        let mut chars = label.chars();
        let k = chars.next()?.to_digit(10)? as u8;
        if k > 6 {
            return None;
        }
        match chars.as_str() {
            "" => Some(Boundary::new(k)),
            s if k == 1 && s.len() == 1 => {
                let sub = s.as_bytes()[0].checked_sub(b'a')?;
                (sub < 4).then_some(Boundary::sign(sub))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)?;
        if let Some(s) = self.sub {
            write!(f, "{}", (b'a' + s) as char)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TerminalCondition {
    Boundary(Boundary),
    Killer(Word),
    Necklace(Word),
    Variety(Word, Word),
    Hole,
}

impl TerminalCondition {
    /// Short tag used in tallies.
    pub fn kind(&self) -> &'static str {
        match self {
            TerminalCondition::Boundary(_) => "boundary",
            TerminalCondition::Killer(_) => "killer",
            TerminalCondition::Necklace(_) => "necklace",
            TerminalCondition::Variety(..) => "variety",
            TerminalCondition::Hole => "hole",
        }
    }
}

/// Certificate line label (without the newline).
impl fmt::Display for TerminalCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TerminalCondition::Boundary(b) => write!(f, "B{b}"),
            TerminalCondition::Killer(w) => write!(f, "K{w}"),
            TerminalCondition::Necklace(w) => write!(f, "N{w}"),
            TerminalCondition::Variety(a, b) => write!(f, "V{a},{b}"),
            TerminalCondition::Hole => f.write_str("H"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertStatus {
    Certified,
    Inconclusive,
    RefutedPrecondition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertResult {
    pub status: CertStatus,
    pub witness: String,
}

impl CertResult {
    fn certified(witness: String) -> CertResult {
        CertResult { status: CertStatus::Certified, witness }
    }

    fn inconclusive(witness: String) -> CertResult {
        CertResult { status: CertStatus::Inconclusive, witness }
    }

    fn refuted(witness: String) -> CertResult {
        CertResult { status: CertStatus::RefutedPrecondition, witness }
    }

    pub fn is_certified(&self) -> bool {
        self.status == CertStatus::Certified
    }
}

/// Per-box state shared by all conditions tried on one box: the corner
/// bounds and the generator jets.
pub struct BoxContext {
    pub bx: ParamBox,
    pub corners: CornerBounds,
    gens: Result<Generators<Jet>, JetError>,
}

/// Rigorous entries of an evaluated word, with `c / S` precomputed.
struct WordBounds {
    a: Jet,
    b: Jet,
    c: Jet,
    d: Jet,
    c_over_s: f64,
}

impl BoxContext {
    pub fn new(bx: ParamBox) -> BoxContext {
        BoxContext { corners: bx.corner_bounds(), gens: Generators::over_box(&bx), bx }
    }

    pub fn generators(&self) -> Result<&Generators<Jet>, JetError> {
        self.gens.as_ref().map_err(|e| *e)
    }

    fn evaluate(&self, w: &Word) -> Result<WordBounds, EvalError> {
        let gens = self.generators()?;
        let m = gens.evaluate(w)?;
        let c_over_s = m.c.div(&gens.s)?.abs_bounds().upper;
        Ok(WordBounds { a: m.a, b: m.b, c: m.c, d: m.d, c_over_s })
    }

    pub fn certify(&self, cond: &TerminalCondition, mode: &Mode) -> CertResult {
        match cond {
            TerminalCondition::Boundary(b) => self.boundary(*b, mode),
            TerminalCondition::Killer(w) => self.killer(w),
            TerminalCondition::Necklace(w) => self.necklace(w, mode),
            TerminalCondition::Variety(r1, r2) => self.variety(r1, r2, mode),
            TerminalCondition::Hole => CertResult::inconclusive("hole".into()),
        }
    }

    pub fn boundary(&self, b: Boundary, mode: &Mode) -> CertResult {
        let cb = &self.corners;
        let below = |what: &str, v: f64, t: f64| (v < t, format!("sup {what} = {v:e} vs {t}"));
        let above = |what: &str, v: f64, t: f64| (v > t, format!("inf {what} = {v:e} vs {t}"));
        let (ok, witness) = match (b.index, b.sub) {
            (0, None) => below("|S|^2", cb.s_abs2.1, 1.0),
            (1, Some(0)) => below("Im S", cb.im_s.1, 0.0),
            (1, Some(1)) => below("Im L", cb.im_l.1, 0.0),
            (1, Some(2)) => below("Im P", cb.im_p.1, 0.0),
            (1, Some(3)) => below("Re P", cb.re_p.1, 0.0),
            (1, None) => {
                let hit = (0..4)
                    .map(|s| self.boundary(Boundary::sign(s), mode))
                    .find(|r| r.is_certified());
                match hit {
                    Some(r) => (true, r.witness),
                    None => (false, "no sign condition violated box-wide".into()),
                }
            }
            (2, None) => {
                if cb.re_l.0 > 0.5 {
                    (true, format!("inf Re L = {:e} > 0.5", cb.re_l.0))
                } else {
                    (cb.re_l.1 < -0.5, format!("Re L in [{:e}, {:e}]", cb.re_l.0, cb.re_l.1))
                }
            }
            (3, None) => below("|L|^2", cb.l_abs2.1, 1.0),
            (4, None) => {
                let gap = crate::round::sub_down(cb.im_p.0, crate::round::mul_up(0.5, cb.im_l.1));
                (gap > 0.0, format!("inf (Im P - Im L/2) >= {gap:e} vs 0"))
            }
            (5, None) => above("Re P", cb.re_p.0, 0.5),
            (6, None) => above("|S^2 Im L|", cb.area.0, mode.area_bound),
            _ => return CertResult::refuted(format!("unknown boundary condition {b}")),
        };
        if ok {
            CertResult::certified(witness)
        } else {
            CertResult::inconclusive(witness)
        }
    }

    pub fn killer(&self, w: &Word) -> CertResult {
        if !w.is_normal() {
            return CertResult::refuted(format!("killer word '{w}' is not in normal form"));
        }
        let wb = match self.evaluate(w) {
            Ok(wb) => wb,
            Err(e) => return CertResult::inconclusive(e.to_string()),
        };
        if !(wb.c_over_s < 1.0) {
            return CertResult::inconclusive(format!("sup |c/S| = {:e} not < 1", wb.c_over_s));
        }
        let one = Jet::one();
        let off_unit = |x: &Jet| -> bool {
            let lo = |j: Result<Jet, JetError>| j.map(|j| j.abs_bounds().lower).unwrap_or(0.0);
            lo(x.sub(&one)) > 0.0 && lo(x.add(&one)) > 0.0
        };
        let c_lower = wb.c.abs_bounds().lower;
        let witness = if c_lower > 0.0 {
            format!("inf |c| = {c_lower:e} > 0")
        } else if off_unit(&wb.a) {
            "a bounded away from 1 and -1".to_string()
        } else if off_unit(&wb.d) {
            "d bounded away from 1 and -1".to_string()
        } else {
            return CertResult::inconclusive("c, a and d may all be trivial".into());
        };
        CertResult::certified(format!("sup |c/S| = {:e} < 1, {witness}", wb.c_over_s))
    }

    pub fn necklace(&self, w: &Word, mode: &Mode) -> CertResult {
        let g = w.g_length();
        if !mode.necklace_range_contains(g) {
            return CertResult::refuted(format!(
                "g-length {g} outside {}..={}",
                mode.necklace_min, mode.necklace_max
            ));
        }
        if !w.is_normal() {
            return CertResult::refuted(format!("word {w} is not in normal form"));
        }
        match self.evaluate(w) {
            Ok(wb) if wb.c_over_s < 1.0 => {
                CertResult::certified(format!("sup |c/S| = {:e} < 1", wb.c_over_s))
            }
            Ok(wb) => CertResult::inconclusive(format!("sup |c/S| = {:e} not < 1", wb.c_over_s)),
            Err(e) => CertResult::inconclusive(e.to_string()),
        }
    }

    pub fn variety(&self, r1: &Word, r2: &Word, mode: &Mode) -> CertResult {
        if !mode.variety_allowed {
            return CertResult::refuted(format!("variety leaves not allowed in {} mode", mode.name));
        }
        for r in [r1, r2] {
            if r.is_empty() || !r.is_reduced() {
                return CertResult::refuted(format!("relator {r} is empty or not reduced"));
            }
        }
        let mut parts = Vec::new();
        for r in [r1, r2] {
            let wb = match self.evaluate(r) {
                Ok(wb) => wb,
                Err(e) => return CertResult::inconclusive(format!("{r}: {e}")),
            };
            let (cu, bu) = (wb.c.abs_bounds().upper, wb.b.abs_bounds().upper);
            if !(cu < 1.0 && bu < 1.0) {
                return CertResult::inconclusive(format!("{r}: sup |c| = {cu:e}, sup |b| = {bu:e}"));
            }
            parts.push(format!("{r}: sup |c| = {cu:e}, sup |b| = {bu:e}"));
        }
        CertResult::certified(parts.join("; "))
    }
}

pub fn certify_boundary(bx: &ParamBox, k: Boundary, mode: &Mode) -> CertResult {
    BoxContext::new(*bx).boundary(k, mode)
}

pub fn certify_killer(bx: &ParamBox, w: &Word) -> CertResult {
    BoxContext::new(*bx).killer(w)
}

pub fn certify_necklace(bx: &ParamBox, w: &Word, mode: &Mode) -> CertResult {
    BoxContext::new(*bx).necklace(w, mode)
}

pub fn certify_variety(bx: &ParamBox, r1: &Word, r2: &Word, mode: &Mode) -> CertResult {
    BoxContext::new(*bx).variety(r1, r2, mode)
}
