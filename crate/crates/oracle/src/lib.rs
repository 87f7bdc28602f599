//! Reference arithmetic for tests: a software binary float with a 128-bit
//! mantissa, plus helpers that replay jet computations at sample points.
//!
//! Every operation truncates, so each result is within `2^-126` relative of
//! the exact value of its inputs (additions: relative to the larger input).

pub mod pointwise;
pub mod soundness;
pub mod trees;

use std::cmp::Ordering;

use num_complex::Complex64;

/// `mant * 2^exp`, with `mant` either 0 or in `[2^127, 2^128)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Wide {
    neg: bool,
    exp: i32,
    mant: u128,
}

const TOP: u32 = 127;

impl Wide {
    pub const ZERO: Wide = Wide { neg: false, exp: 0, mant: 0 };

    fn norm(neg: bool, exp: i32, mant: u128) -> Wide {
        if mant == 0 {
            return Wide::ZERO;
        }
        let sh = mant.leading_zeros();
        Wide { neg, exp: exp - sh as i32, mant: mant << sh }
    }

    pub fn from_f64(x: f64) -> Wide {
        assert!(x.is_finite(), "oracle input must be finite");
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let ex = ((bits >> 52) & 0x7ff) as i32;
        let frac = (bits & ((1 << 52) - 1)) as u128;
        if ex == 0 {
            Wide::norm(neg, -1074, frac)
        } else {
            Wide::norm(neg, ex - 1075, frac | (1 << 52))
        }
    }

    pub fn from_i64(v: i64) -> Wide {
        Wide::norm(v < 0, 0, v.unsigned_abs() as u128)
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant == 0 {
            return 0.0;
        }
        let m = (self.mant >> 64) as f64 * 2f64.powi(-63) + (self.mant as u64) as f64 * 2f64.powi(-127);
        let e = self.exp + TOP as i32;
        let v = if e > 1000 || e < -1000 {
            m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
        } else {
            m * 2f64.powi(e)
        };
        if self.neg {
            -v
        } else {
            v
        }
    }

    pub fn neg(&self) -> Wide {
        if self.mant == 0 {
            *self
        } else {
            Wide { neg: !self.neg, ..*self }
        }
    }

    pub fn abs(&self) -> Wide {
        Wide { neg: false, ..*self }
    }

    pub fn add(&self, o: &Wide) -> Wide {
        if self.mant == 0 {
            return *o;
        }
        if o.mant == 0 {
            return *self;
        }
        let (a, b) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let d = (a.exp - b.exp) as u32;
        let bm = if d >= 128 { 0 } else { b.mant >> d };
        if a.neg == b.neg {
            match a.mant.overflowing_add(bm) {
                (sum, false) => Wide::norm(a.neg, a.exp, sum),
                (sum, true) => Wide { neg: a.neg, exp: a.exp + 1, mant: (sum >> 1) | 1 << TOP },
            }
        } else if a.mant >= bm {
            Wide::norm(a.neg, a.exp, a.mant - bm)
        } else {
            Wide::norm(b.neg, a.exp, bm - a.mant)
        }
    }

    pub fn sub(&self, o: &Wide) -> Wide {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Wide) -> Wide {
        if self.mant == 0 || o.mant == 0 {
            return Wide::ZERO;
        }
        let (a1, a0) = ((self.mant >> 64) as u64 as u128, self.mant as u64 as u128);
        let (b1, b0) = ((o.mant >> 64) as u64 as u128, o.mant as u64 as u128);
        let lo = a0 * b0;
        let (mid, mid_carry) = (a1 * b0).overflowing_add(a0 * b1);
        let mut hi = a1 * b1 + ((mid_carry as u128) << 64) + (mid >> 64);
        let (lo, c) = lo.overflowing_add(mid << 64);
        hi += c as u128;
        // full product is hi * 2^128 + lo
        let sh = hi.leading_zeros();
        let mant = if sh == 0 { hi } else { (hi << sh) | (lo >> (128 - sh)) };
        Wide::norm(self.neg != o.neg, self.exp + o.exp + 128 - sh as i32, mant)
    }

    pub fn recip(&self) -> Wide {
        assert!(self.mant != 0, "oracle division by zero");
        let two = Wide::from_f64(2.0);
        let mut x = Wide::from_f64(1.0 / self.to_f64());
        for _ in 0..3 {
            x = x.mul(&two.sub(&self.mul(&x)));
        }
        x
    }

    pub fn div(&self, o: &Wide) -> Wide {
        self.mul(&o.recip())
    }

    /// Smallest `e` with `|self| < 2^e` (`i32::MIN` for zero).
    pub fn exp_bound(&self) -> i32 {
        if self.mant == 0 {
            i32::MIN
        } else {
            self.exp + TOP as i32 + 1
        }
    }

    pub fn cmp(&self, o: &Wide) -> Ordering {
        let d = self.sub(o);
        if d.is_zero() {
            Ordering::Equal
        } else if d.neg {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

/// Complex number over [`Wide`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WComplex {
    pub re: Wide,
    pub im: Wide,
}

impl WComplex {
    pub const ZERO: WComplex = WComplex { re: Wide::ZERO, im: Wide::ZERO };

    pub fn new(re: Wide, im: Wide) -> WComplex {
        WComplex { re, im }
    }

    pub fn from_c64(z: Complex64) -> WComplex {
        WComplex::new(Wide::from_f64(z.re), Wide::from_f64(z.im))
    }

    pub fn from_f64(re: f64, im: f64) -> WComplex {
        WComplex::new(Wide::from_f64(re), Wide::from_f64(im))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, o: &WComplex) -> WComplex {
        WComplex::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &WComplex) -> WComplex {
        WComplex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> WComplex {
        WComplex::new(self.re.neg(), self.im.neg())
    }

    pub fn mul(&self, o: &WComplex) -> WComplex {
        WComplex::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn mul_i(&self) -> WComplex {
        WComplex::new(self.im.neg(), self.re)
    }

    pub fn norm_sqr(&self) -> Wide {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn recip(&self) -> WComplex {
        let n = self.norm_sqr().recip();
        WComplex::new(self.re.mul(&n), self.im.neg().mul(&n))
    }

    pub fn div(&self, o: &WComplex) -> WComplex {
        self.mul(&o.recip())
    }

    /// Whether `|self| <= r` for `r >= 0`.
    pub fn abs_le(&self, r: &Wide) -> bool {
        self.norm_sqr().cmp(&r.mul(r)) != Ordering::Greater
    }

    /// Smallest `e` with both components below `2^e` in magnitude.
    pub fn exp_bound(&self) -> i32 {
        self.re.exp_bound().max(self.im.exp_bound())
    }
}

/// 2x2 matrix over [`WComplex`], row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WMat {
    pub a: WComplex,
    pub b: WComplex,
    pub c: WComplex,
    pub d: WComplex,
}

impl WMat {
    pub fn mul(&self, o: &WMat) -> WMat {
        WMat {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }
}

/// Evaluates a word over `mnMNgG` at `(P, S, L)` straight from the
/// generator definitions, independently of the library's evaluator.
pub fn eval_word(word: &str, p: WComplex, s: WComplex, l: WComplex) -> WMat {
    let one = WComplex::from_f64(1.0, 0.0);
    let zero = WComplex::ZERO;
    let si = s.mul_i();
    let psi = p.mul(&s).mul_i();
    let ios = s.recip().mul_i();
    let mut acc = WMat { a: one, b: zero, c: zero, d: one };
    for ch in word.chars() {
        let m = match ch {
            'M' => WMat { a: one, b: one, c: zero, d: one },
            'm' => WMat { a: one, b: one.neg(), c: zero, d: one },
            'N' => WMat { a: one, b: l, c: zero, d: one },
            'n' => WMat { a: one, b: l.neg(), c: zero, d: one },
            'G' => WMat { a: psi, b: ios, c: si, d: zero },
            'g' => WMat { a: zero, b: ios.neg(), c: si.neg(), d: psi },
            other => panic!("not a generator letter: {other:?}"),
        };
        acc = acc.mul(&m);
    }
    acc
}
