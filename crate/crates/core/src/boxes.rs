//! Parameter boxes in the six real coordinates `(x0, .., x5)` with
//! `L = x3 + i x0`, `S = x4 + i x1`, `P = x5 + i x2`.
//!
//! The root box is `|x_i| <= 2^((19 - i)/6)`. A boxcode is a string of bits;
//! bit `t` halves dimension `t mod 6`, keeping the lower half on `0` and the
//! upper half on `1`, so every six bits reproduce the root's side ratios.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::jet::Jet;
use crate::round::{add_up, mul_down, mul_up, sub_down, sub_up};

pub const MAX_DEPTH: usize = 120;

/// Upward and downward rounded `2^((19 - i)/6)`.
const ROOT_HALF_UP: [u64; 6] = [
    0x4021_f59a_c3c7_d6c0,
    0x4020_0000_0000_0000,
    0x401c_823e_074e_c12a,
    0x4019_65fe_a53d_6e3d,
    0x4016_a09e_667f_3bcd,
    0x4014_28a2_f98d_728b,
];
const ROOT_HALF_DOWN: [u64; 6] = [
    0x4021_f59a_c3c7_d6bf,
    0x4020_0000_0000_0000,
    0x401c_823e_074e_c129,
    0x4019_65fe_a53d_6e3c,
    0x4016_a09e_667f_3bcc,
    0x4014_28a2_f98d_728a,
];

pub fn root_half_up(dim: usize) -> f64 {
    f64::from_bits(ROOT_HALF_UP[dim])
}

pub fn root_half_down(dim: usize) -> f64 {
    f64::from_bits(ROOT_HALF_DOWN[dim])
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoxcodeError {
    #[error("invalid boxcode character {ch:?} at index {index}")]
    BadChar { index: usize, ch: char },
    #[error("boxcode depth {0} exceeds maximum {MAX_DEPTH}")]
    TooDeep(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boxcode {
    bits: Vec<bool>,
}

impl Boxcode {
    pub fn root() -> Boxcode {
        Boxcode::default()
    }

    pub fn parse(text: &str) -> Result<Boxcode, BoxcodeError> {
        let mut bits = Vec::with_capacity(text.len());
        for (index, ch) in text.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(BoxcodeError::BadChar { index, ch }),
            }
        }
        if bits.len() > MAX_DEPTH {
            return Err(BoxcodeError::TooDeep(bits.len()));
        }
        Ok(Boxcode { bits })
    }

    pub fn from_bits(bits: Vec<bool>) -> Result<Boxcode, BoxcodeError> {
        if bits.len() > MAX_DEPTH {
            return Err(BoxcodeError::TooDeep(bits.len()));
        }
        Ok(Boxcode { bits })
    }

    pub fn depth(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Dimension cut by the next subdivision.
    pub fn next_dim(&self) -> usize {
        self.bits.len() % 6
    }

    pub fn child(&self, bit: bool) -> Result<Boxcode, BoxcodeError> {
        if self.bits.len() >= MAX_DEPTH {
            return Err(BoxcodeError::TooDeep(self.bits.len() + 1));
        }
        let mut bits = self.bits.clone();
        bits.push(bit);
        Ok(Boxcode { bits })
    }

    pub fn is_prefix_of(&self, other: &Boxcode) -> bool {
        other.bits.starts_with(&self.bits)
    }

    /// Exact dyadic description: in each dimension the box is
    /// `h_d * [q_d - w_d, q_d + w_d]` with `h_d` the root half-width.
    pub fn dyadic(&self) -> ([f64; 6], [f64; 6]) {
        let mut q = [0.0; 6];
        let mut w = [1.0; 6];
        for (t, &bit) in self.bits.iter().enumerate() {
            let d = t % 6;
            w[d] *= 0.5;
            if bit {
                q[d] += w[d];
            } else {
                q[d] -= w[d];
            }
        }
        (q, w)
    }

    pub fn to_box(&self) -> ParamBox {
        ParamBox::from_code(self)
    }

    /// Boxcode of depth `depth` whose box contains `x`; a point on a cut
    /// plane goes to the upper child. `None` if `x` is outside the root box.
    pub fn containing(x: [f64; 6], depth: usize) -> Option<Boxcode> {
        if depth > MAX_DEPTH {
            return None;
        }
        for d in 0..6 {
            if x[d].abs() > root_half_down(d) {
                return None;
            }
        }
        let mut q = [0.0f64; 6];
        let mut w = [1.0f64; 6];
        let mut bits = Vec::with_capacity(depth);
        for t in 0..depth {
            let d = t % 6;
            w[d] *= 0.5;
            let upper = at_or_above(x[d], d, q[d]);
            bits.push(upper);
            q[d] += if upper { w[d] } else { -w[d] };
        }
        Some(Boxcode { bits })
    }
}

/// Decides `x >= h_d * q` for the irrational root half-width `h_d`.
fn at_or_above(x: f64, d: usize, q: f64) -> bool {
    let (hd, hu) = (root_half_down(d), root_half_up(d));
    let (lo, hi) = if q >= 0.0 {
        (mul_down(hd, q), mul_up(hu, q))
    } else {
        (mul_down(hu, q), mul_up(hd, q))
    };
    if x >= hi {
        true
    } else if x < lo {
        false
    } else {
        // inside the rounding bracket of the cut plane
        x >= hd * q
    }
}

impl fmt::Display for Boxcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Boxcode {
    type Err = BoxcodeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Boxcode::parse(s)
    }
}

/// A floating-point box `{x : |x_i - c_i| <= s_i}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamBox {
    pub center: [f64; 6],
    pub halfsize: [f64; 6],
}

/// Triple of coordinate jets over a box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamJets {
    pub p: Jet,
    pub s: Jet,
    pub l: Jet,
}

/// Rigorous `(inf, sup)` pairs over a box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerBounds {
    pub s_abs2: (f64, f64),
    pub im_s: (f64, f64),
    pub im_l: (f64, f64),
    pub re_l: (f64, f64),
    pub l_abs2: (f64, f64),
    pub im_p: (f64, f64),
    pub re_p: (f64, f64),
    pub area: (f64, f64),
}

impl ParamBox {
    pub fn root() -> ParamBox {
        ParamBox::from_code(&Boxcode::root())
    }

    /// Floating-point box enclosing the exact dyadic box of `code`. A pure
    /// function of the code: endpoints are computed directly from the exact
    /// dyadic offsets, so no error accumulates with depth.
    pub fn from_code(code: &Boxcode) -> ParamBox {
        let (q, w) = code.dyadic();
        let mut center = [0.0; 6];
        let mut halfsize = [0.0; 6];
        for d in 0..6 {
            let (hd, hu) = (root_half_down(d), root_half_up(d));
            let a = q[d] - w[d];
            let b = q[d] + w[d];
            let lo = if a >= 0.0 { mul_down(hd, a) } else { mul_down(hu, a) };
            let hi = if b >= 0.0 { mul_up(hu, b) } else { mul_up(hd, b) };
            let c = 0.5 * (lo + hi);
            center[d] = c;
            halfsize[d] = sub_up(hi, c).max(sub_up(c, lo));
        }
        ParamBox { center, halfsize }
    }

    /// Box from explicit parameters, `center = (P, S, L)`, with the same
    /// real halfsize in every coordinate.
    pub fn around(p: Complex64, s: Complex64, l: Complex64, halfsize: f64) -> ParamBox {
        ParamBox {
            center: [l.im, s.im, p.im, l.re, s.re, p.re],
            halfsize: [halfsize; 6],
        }
    }

    pub fn lo(&self, d: usize) -> f64 {
        sub_down(self.center[d], self.halfsize[d])
    }

    pub fn hi(&self, d: usize) -> f64 {
        add_up(self.center[d], self.halfsize[d])
    }

    pub fn contains(&self, x: &[f64; 6]) -> bool {
        (0..6).all(|d| self.lo(d) <= x[d] && x[d] <= self.hi(d))
    }

    /// Point of the box for local coordinates `t` in `[-1, 1]^6`.
    pub fn point(&self, t: [f64; 6]) -> [f64; 6] {
        std::array::from_fn(|d| self.center[d] + t[d] * self.halfsize[d])
    }

    /// Tri-disc coordinates `(z0, z1, z2)` of the box point with local
    /// coordinates `t`, matching [`ParamBox::jets`].
    pub fn tridisc(&self, t: [f64; 6]) -> [Complex64; 3] {
        let s = &self.halfsize;
        let z = |re: usize, im: usize| {
            Complex64::new(t[re] * s[re], t[im] * s[im]) / Complex64::new(s[re], s[im])
        };
        [z(3, 0), z(4, 1), z(5, 2)]
    }

    pub fn center_params(&self) -> (Complex64, Complex64, Complex64) {
        let c = &self.center;
        (Complex64::new(c[5], c[2]), Complex64::new(c[4], c[1]), Complex64::new(c[3], c[0]))
    }

    pub fn jets(&self) -> ParamJets {
        let (c, s) = (&self.center, &self.halfsize);
        let jet = |re: usize, im: usize, slot: usize| {
            let mut partials = [Complex64::new(0.0, 0.0); 3];
            partials[slot] = Complex64::new(s[re], s[im]);
            Jet { center: Complex64::new(c[re], c[im]), partials, err: 0.0 }
        };
        ParamJets { l: jet(3, 0, 0), s: jet(4, 1, 1), p: jet(5, 2, 2) }
    }

    /// Interval of `|x_d|`.
    fn abs_range(&self, d: usize) -> (f64, f64) {
        let (lo, hi) = (self.lo(d), self.hi(d));
        let sup = lo.abs().max(hi.abs());
        let inf = if lo <= 0.0 && hi >= 0.0 { 0.0 } else { lo.abs().min(hi.abs()) };
        (inf, sup)
    }

    fn abs2_range(&self, re: usize, im: usize) -> (f64, f64) {
        let (ri, rs) = self.abs_range(re);
        let (ii, is) = self.abs_range(im);
        let inf = crate::round::add_down(mul_down(ri, ri), mul_down(ii, ii));
        let sup = add_up(mul_up(rs, rs), mul_up(is, is));
        (inf, sup)
    }

    pub fn corner_bounds(&self) -> CornerBounds {
        let s_abs2 = self.abs2_range(4, 1);
        let (li, ls) = self.abs_range(0);
        CornerBounds {
            s_abs2,
            im_s: (self.lo(1), self.hi(1)),
            im_l: (self.lo(0), self.hi(0)),
            re_l: (self.lo(3), self.hi(3)),
            l_abs2: self.abs2_range(3, 0),
            im_p: (self.lo(2), self.hi(2)),
            re_p: (self.lo(5), self.hi(5)),
            area: (mul_down(s_abs2.0, li), mul_up(s_abs2.1, ls)),
        }
    }
}
