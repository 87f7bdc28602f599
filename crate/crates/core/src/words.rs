//! Words in the generators `M`, `N`, `G` (lowercase letters are inverses)
//! and their evaluation as 2x2 matrices, either over a box with jets or at a
//! single parameter point.
//!
//! For a triple `(P, S, L)`:
//!
//! ```text
//! M = [1 1; 0 1]   N = [1 L; 0 1]   G = [PSi  i/S; Si  0]
//! m = [1 -1; 0 1]  n = [1 -L; 0 1]  g = [0  -i/S; -Si  PSi]
//! ```
//!
//! Products are a strict left fold and no free reduction is performed.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::boxes::ParamBox;
use crate::jet::{Jet, JetError};

pub const MAX_WORD_LEN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    M,
    InvM,
    N,
    InvN,
    G,
    InvG,
}

impl Letter {
    pub const ALL: [Letter; 6] =
        [Letter::M, Letter::InvM, Letter::N, Letter::InvN, Letter::G, Letter::InvG];

    pub fn from_char(ch: char) -> Option<Letter> {
        Some(match ch {
            'M' => Letter::M,
            'm' => Letter::InvM,
            'N' => Letter::N,
            'n' => Letter::InvN,
            'G' => Letter::G,
            'g' => Letter::InvG,
            _ => return None,
        })
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::M => 'M',
            Letter::InvM => 'm',
            Letter::N => 'N',
            Letter::InvN => 'n',
            Letter::G => 'G',
            Letter::InvG => 'g',
        }
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::M => Letter::InvM,
            Letter::InvM => Letter::M,
            Letter::N => Letter::InvN,
            Letter::InvN => Letter::N,
            Letter::G => Letter::InvG,
            Letter::InvG => Letter::G,
        }
    }

    pub fn is_g(self) -> bool {
        matches!(self, Letter::G | Letter::InvG)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed word: unexpected {ch:?} at index {index}")]
pub struct WordParseError {
    pub index: usize,
    pub ch: char,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("word length {0} exceeds maximum {MAX_WORD_LEN}")]
    TooLong(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn parse(text: &str) -> Result<Word, WordParseError> {
        text.chars()
            .enumerate()
            .map(|(index, ch)| Letter::from_char(ch).ok_or(WordParseError { index, ch }))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn g_length(&self) -> usize {
        self.0.iter().filter(|l| l.is_g()).count()
    }

    /// Formal inverse: reversed with every letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// True when no `g` letter meets its inverse across a block of
    /// translations that cancels, i.e. the word is reduced in the free
    /// product of the translation subgroup `<M, N>` with `<G>`.
    pub fn is_reduced(&self) -> bool {
        let mut last_g: Option<Letter> = None;
        let (mut p, mut q) = (0i32, 0i32);
        for &l in &self.0 {
            match l {
                Letter::M => p += 1,
                Letter::InvM => p -= 1,
                Letter::N => q += 1,
                Letter::InvN => q -= 1,
                Letter::G | Letter::InvG => {
                    if last_g == Some(l.inverse()) && p == 0 && q == 0 {
                        return false;
                    }
                    last_g = Some(l);
                    p = 0;
                    q = 0;
                }
            }
        }
        true
    }

    /// Reduced, begins and ends with a `g` letter, and writes each block of
    /// translations as `m^p n^q` with no cancelling letters. These are the
    /// words the search emits; lattice letters at either end never change
    /// the lower-left entry, so other spellings add nothing.
    pub fn is_normal(&self) -> bool {
        let is_g = |l: &Letter| matches!(l, Letter::G | Letter::InvG);
        if !(self.0.first().is_some_and(is_g) && self.0.last().is_some_and(is_g) && self.is_reduced()) {
            return false;
        }
        self.0.split(is_g).all(|block| {
            let rank = |l: &Letter| matches!(l, Letter::N | Letter::InvN) as u8;
            block.windows(2).all(|p| rank(&p[0]) < rank(&p[1]) || p[0] == p[1])
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = WordParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

/// Ring operations shared by plain complex numbers and jets.
pub trait Scalar: Copy {
    fn add(&self, o: &Self) -> Result<Self, JetError>;
    fn sub(&self, o: &Self) -> Result<Self, JetError>;
    fn mul(&self, o: &Self) -> Result<Self, JetError>;
}

impl Scalar for Complex64 {
    fn add(&self, o: &Self) -> Result<Self, JetError> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Result<Self, JetError> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Result<Self, JetError> {
        Ok(self * o)
    }
}

impl Scalar for Jet {
    fn add(&self, o: &Self) -> Result<Self, JetError> {
        Jet::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self, JetError> {
        Jet::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self, JetError> {
        Jet::mul(self, o)
    }
}

/// Row-major 2x2 matrix `[a b; c d]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

pub type SL2Jet = Mat2<Jet>;
pub type SL2Point = Mat2<Complex64>;

impl<T: Scalar> Mat2<T> {
    pub fn mul(&self, o: &Mat2<T>) -> Result<Mat2<T>, JetError> {
        Ok(Mat2 {
            a: self.a.mul(&o.a)?.add(&self.b.mul(&o.c)?)?,
            b: self.a.mul(&o.b)?.add(&self.b.mul(&o.d)?)?,
            c: self.c.mul(&o.a)?.add(&self.d.mul(&o.c)?)?,
            d: self.c.mul(&o.b)?.add(&self.d.mul(&o.d)?)?,
        })
    }

    pub fn det(&self) -> Result<T, JetError> {
        self.a.mul(&self.d)?.sub(&self.b.mul(&self.c)?)
    }
}

impl SL2Point {
    pub fn identity() -> SL2Point {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Mat2 { a: one, b: zero, c: zero, d: one }
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// `max |entry - sign * I|` minimized over both signs.
    pub fn distance_to_identity(&self) -> f64 {
        let one = Complex64::new(1.0, 0.0);
        let dist = |s: Complex64| {
            (self.a - s)
                .norm()
                .max(self.b.norm())
                .max(self.c.norm())
                .max((self.d - s).norm())
        };
        dist(one).min(dist(-one))
    }
}

/// Generator matrices for one parameter triple (or one box), computed once
/// and reused for every word.
#[derive(Debug, Clone)]
pub struct Generators<T> {
    pub p: T,
    pub s: T,
    pub l: T,
    one: T,
    g: Mat2<T>,
    g_inv: Mat2<T>,
}

impl<T: Scalar> Generators<T> {
    fn from_parts(p: T, s: T, l: T, one: T, zero: T, psi: T, si: T, i_over_s: T, neg: impl Fn(&T) -> T) -> Self {
        let g = Mat2 { a: psi, b: i_over_s, c: si, d: zero };
        let g_inv = Mat2 { a: zero, b: neg(&i_over_s), c: neg(&si), d: psi };
        Generators { p, s, l, one, g, g_inv }
    }

    pub fn matrix(&self, letter: Letter) -> Mat2<T> {
        let zero = self.g.d;
        let one = self.one;
        let neg_one = zero.sub(&one).expect("negation is exact");
        match letter {
            Letter::M => Mat2 { a: one, b: one, c: zero, d: one },
            Letter::InvM => Mat2 { a: one, b: neg_one, c: zero, d: one },
            Letter::N => Mat2 { a: one, b: self.l, c: zero, d: one },
            Letter::InvN => Mat2 { a: one, b: zero.sub(&self.l).expect("negation is exact"), c: zero, d: one },
            Letter::G => self.g,
            Letter::InvG => self.g_inv,
        }
    }

    /// `x * letter`, using the translation shortcut `X T(t) = [a, b + a t; c, d + c t]`.
    fn right_mul(&self, x: &Mat2<T>, letter: Letter) -> Result<Mat2<T>, JetError> {
        let shift = |t_times: &dyn Fn(&T) -> Result<T, JetError>, add: bool| -> Result<Mat2<T>, JetError> {
            let (ta, tc) = (t_times(&x.a)?, t_times(&x.c)?);
            let (b, d) = if add {
                (x.b.add(&ta)?, x.d.add(&tc)?)
            } else {
                (x.b.sub(&ta)?, x.d.sub(&tc)?)
            };
            Ok(Mat2 { a: x.a, b, c: x.c, d })
        };
        match letter {
            Letter::M => shift(&|v: &T| Ok(*v), true),
            Letter::InvM => shift(&|v: &T| Ok(*v), false),
            Letter::N => shift(&|v: &T| v.mul(&self.l), true),
            Letter::InvN => shift(&|v: &T| v.mul(&self.l), false),
            Letter::G => x.mul(&self.g),
            Letter::InvG => x.mul(&self.g_inv),
        }
    }

    pub fn evaluate(&self, w: &Word) -> Result<Mat2<T>, EvalError> {
        if w.len() > MAX_WORD_LEN {
            return Err(EvalError::TooLong(w.len()));
        }
        let mut letters = w.letters().iter();
        let mut acc = match letters.next() {
            Some(&l) => self.matrix(l),
            None => {
                let zero = self.g.d;
                Mat2 { a: self.one, b: zero, c: zero, d: self.one }
            }
        };
        for &l in letters {
            acc = self.right_mul(&acc, l)?;
        }
        Ok(acc)
    }
}

impl Generators<Complex64> {
    pub fn at_point(p: Complex64, s: Complex64, l: Complex64) -> Generators<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        let si = s * i;
        Generators::from_parts(
            p,
            s,
            l,
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            p * s * i,
            si,
            i / s,
            |v| -v,
        )
    }
}

impl Generators<Jet> {
    /// Generator jets over a box; fails if the `S` jet-set may contain 0.
    pub fn over_box(b: &ParamBox) -> Result<Generators<Jet>, JetError> {
        let pj = b.jets();
        let si = pj.s.mul_i();
        let psi = pj.p.mul(&pj.s)?.mul_i();
        let i_over_s = pj.s.recip()?.mul_i();
        Ok(Generators::from_parts(
            pj.p,
            pj.s,
            pj.l,
            Jet::one(),
            Jet::zero(),
            psi,
            si,
            i_over_s,
            |v| v.neg(),
        ))
    }
}

/// Point evaluation of a word at `(P, S, L)`.
pub fn evaluate_at(w: &Word, p: Complex64, s: Complex64, l: Complex64) -> Result<SL2Point, EvalError> {
    Generators::at_point(p, s, l).evaluate(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parse_and_g_length() {
        let w = Word::parse("gMGGMgN").unwrap();
        assert_eq!(w.len(), 7);
        assert_eq!(w.g_length(), 4);
        assert_eq!(w.to_string(), "gMGGMgN");
        assert_eq!(Word::parse("mnMN").unwrap().g_length(), 0);
        assert_eq!(Word::parse("MgggMgNg").unwrap().g_length(), 5);
        assert!(Word::parse("").unwrap().is_empty());
        assert_eq!(Word::parse("xyz"), Err(WordParseError { index: 0, ch: 'x' }));
        assert_eq!(Word::parse("gMq"), Err(WordParseError { index: 2, ch: 'q' }));
    }

    #[test]
    fn reducedness() {
        for (w, r) in [
            ("gMGGMgN", true),
            ("gG", false),
            ("gMmG", false),
            ("gMG", true),
            ("gg", true),
            ("GmnNMg", false),
            ("mnMN", true),
        ] {
            assert_eq!(Word::parse(w).unwrap().is_reduced(), r, "{w}");
        }
    }

    #[test]
    fn g_at_whitehead_point_is_exact() {
        let gens = Generators::at_point(c(0.0, 1.0), c(1.0, 1.0), c(0.0, 2.0));
        let g = gens.matrix(Letter::G);
        assert_eq!(g.a, c(-1.0, -1.0));
        assert_eq!(g.b, c(0.5, 0.5));
        assert_eq!(g.c, c(-1.0, 1.0));
        assert_eq!(g.d, c(0.0, 0.0));
    }

    #[test]
    fn relator_at_whitehead_point() {
        let w = Word::parse("gMGGMgN").unwrap();
        let m = evaluate_at(&w, c(0.0, 1.0), c(1.0, 1.0), c(0.0, 2.0)).unwrap();
        assert!(m.distance_to_identity() <= 1e-12);
    }

    #[test]
    fn empty_word_is_identity() {
        let m = evaluate_at(&Word::default(), c(0.3, 0.1), c(1.0, 2.0), c(0.2, 1.5)).unwrap();
        assert_eq!(m, SL2Point::identity());
    }

    #[test]
    fn word_times_inverse_is_identity() {
        let w = Word::parse("gMnGGNmg").unwrap();
        let ww = w.concat(&w.inverse());
        let m = evaluate_at(&ww, c(0.3, 0.1), c(1.1, 0.9), c(0.2, 1.5)).unwrap();
        assert!(m.distance_to_identity() < 1e-12);
    }

    #[test]
    fn length_guard() {
        let w = Word::parse(&"M".repeat(65)).unwrap();
        assert_eq!(
            evaluate_at(&w, c(0.0, 1.0), c(1.0, 1.0), c(0.0, 2.0)),
            Err(EvalError::TooLong(65))
        );
    }
}
