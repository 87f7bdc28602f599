//! Affine complex 1-jets with a rigorous error radius.
//!
//! A [`Jet`] `(c, a0, a1, a2; eps)` stands for every function `g` on the unit
//! tri-disc `|z_i| <= 1` with `|g(z) - (c + a0 z0 + a1 z1 + a2 z2)| <= eps`.
//! All arithmetic keeps that enclosure valid including floating-point
//! round-off: each component operation is split into a rounded result and an
//! exact residual, and the residuals are bounded upward into `eps`.

use num_complex::Complex64;
use thiserror::Error;

use crate::round::{
    add_up, div_up, hypot_down, hypot_up, mul_down, mul_up, pow2, sub_down, two_prod, two_sum,
    LAMBDA, TINY,
};

/// Largest component magnitude a jet may carry.
pub const MAX_MAGNITUDE: f64 = f64::from_bits(0x5ff0_0000_0000_0000); // 2^512
/// Smallest nonzero component magnitude a jet may carry.
pub const MIN_MAGNITUDE: f64 = f64::from_bits(0x1ff0_0000_0000_0000); // 2^-512

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("magnitude guard tripped")]
    MagnitudeGuard,
    #[error("division precondition violated")]
    DivisionPrecondition,
}

pub type JetResult = Result<Jet, JetError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub center: Complex64,
    pub partials: [Complex64; 3],
    pub err: f64,
}

/// Rigorous bounds on `|g(z)|` over the tri-disc for every `g` in a jet-set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsBounds {
    pub lower: f64,
    pub upper: f64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Upward running sum of nonnegative terms.
#[derive(Clone, Copy, Default)]
struct Acc(f64);

impl Acc {
    #[inline]
    fn add(&mut self, v: f64) {
        self.0 = add_up(self.0, v);
    }
}

/// `a + b` rounded, plus an upper bound on `|exact - rounded|`.
#[inline]
fn cadd(a: Complex64, b: Complex64) -> (Complex64, f64) {
    let (re, e1) = two_sum(a.re, b.re);
    let (im, e2) = two_sum(a.im, b.im);
    (Complex64::new(re, im), add_up(e1.abs(), e2.abs()))
}

#[inline]
fn prod_err(p: f64, e: f64, a: f64, b: f64, acc: &mut Acc) {
    acc.add(e.abs());
    if p.abs() < TINY && a != 0.0 && b != 0.0 {
        acc.add(LAMBDA);
    }
}

/// `a * b` rounded, plus an upper bound on `|exact - rounded|`.
#[inline]
fn cmul(a: Complex64, b: Complex64) -> (Complex64, f64) {
    let mut acc = Acc::default();
    let (p1, e1) = two_prod(a.re, b.re);
    let (p2, e2) = two_prod(a.im, b.im);
    let (p3, e3) = two_prod(a.re, b.im);
    let (p4, e4) = two_prod(a.im, b.re);
    prod_err(p1, e1, a.re, b.re, &mut acc);
    prod_err(p2, e2, a.im, b.im, &mut acc);
    prod_err(p3, e3, a.re, b.im, &mut acc);
    prod_err(p4, e4, a.im, b.re, &mut acc);
    let (re, e5) = two_sum(p1, -p2);
    let (im, e6) = two_sum(p3, p4);
    acc.add(e5.abs());
    acc.add(e6.abs());
    (Complex64::new(re, im), acc.0)
}

#[inline]
fn cabs_up(z: Complex64) -> f64 {
    hypot_up(z.re, z.im)
}

#[inline]
fn cabs_down(z: Complex64) -> f64 {
    hypot_down(z.re, z.im)
}

#[inline]
fn component_ok(v: f64) -> bool {
    let a = v.abs();
    a <= MAX_MAGNITUDE && (a == 0.0 || a >= MIN_MAGNITUDE)
}

#[inline]
fn complex_ok(z: Complex64) -> bool {
    component_ok(z.re) && component_ok(z.im)
}

impl Jet {
    /// The constant jet; exact because every `Complex64` is representable.
    pub fn constant(c: Complex64) -> JetResult {
        Jet { center: c, partials: [ZERO; 3], err: 0.0 }.checked()
    }

    pub fn real(v: f64) -> JetResult {
        Jet::constant(Complex64::new(v, 0.0))
    }

    pub fn zero() -> Jet {
        Jet { center: ZERO, partials: [ZERO; 3], err: 0.0 }
    }

    pub fn one() -> Jet {
        Jet { center: Complex64::new(1.0, 0.0), partials: [ZERO; 3], err: 0.0 }
    }

    /// Builds a jet from raw parts, enforcing the magnitude guard.
    pub fn new(center: Complex64, partials: [Complex64; 3], err: f64) -> JetResult {
        Jet { center, partials, err }.checked()
    }

    fn checked(self) -> JetResult {
        let ok = complex_ok(self.center)
            && self.partials.iter().all(|&a| complex_ok(a))
            && self.err >= 0.0
            && self.err <= MAX_MAGNITUDE;
        if ok {
            Ok(self)
        } else {
            Err(JetError::MagnitudeGuard)
        }
    }

    /// Value of the affine part at `z` (plain floating point).
    pub fn affine_at(&self, z: [Complex64; 3]) -> Complex64 {
        self.center + self.partials[0] * z[0] + self.partials[1] * z[1] + self.partials[2] * z[2]
    }

    /// Upper bound on `sum |a_i|`.
    pub fn partial_norm(&self) -> f64 {
        let mut acc = Acc::default();
        for a in &self.partials {
            acc.add(cabs_up(*a));
        }
        acc.0
    }

    pub fn neg(&self) -> Jet {
        Jet {
            center: -self.center,
            partials: self.partials.map(|a| -a),
            err: self.err,
        }
    }

    /// Multiplication by `i`, exact.
    pub fn mul_i(&self) -> Jet {
        let rot = |z: Complex64| Complex64::new(-z.im, z.re);
        Jet {
            center: rot(self.center),
            partials: self.partials.map(rot),
            err: self.err,
        }
    }

    pub fn add(&self, other: &Jet) -> JetResult {
        let mut acc = Acc(self.err);
        acc.add(other.err);
        let (center, e) = cadd(self.center, other.center);
        acc.add(e);
        let mut partials = [ZERO; 3];
        for i in 0..3 {
            let (p, e) = cadd(self.partials[i], other.partials[i]);
            partials[i] = p;
            acc.add(e);
        }
        Jet { center, partials, err: acc.0 }.checked()
    }

    pub fn sub(&self, other: &Jet) -> JetResult {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Jet) -> JetResult {
        let (cx, cy) = (self.center, other.center);
        let (sx, sy) = (self.partial_norm(), other.partial_norm());
        let (ex, ey) = (self.err, other.err);
        let (ux, uy) = (cabs_up(cx), cabs_up(cy));

        let mut acc = Acc(mul_up(sx, sy));
        acc.add(mul_up(ex, add_up(uy, sy)));
        acc.add(mul_up(ey, add_up(ux, sx)));
        acc.add(mul_up(ex, ey));

        let (center, e) = cmul(cx, cy);
        acc.add(e);
        let mut partials = [ZERO; 3];
        for i in 0..3 {
            let (p, e1) = cmul(cx, other.partials[i]);
            let (q, e2) = cmul(cy, self.partials[i]);
            let (r, e3) = cadd(p, q);
            partials[i] = r;
            acc.add(e1);
            acc.add(e2);
            acc.add(e3);
        }
        Jet { center, partials, err: acc.0 }.checked()
    }

    /// Product with a complex constant known exactly.
    pub fn scale(&self, k: Complex64) -> JetResult {
        self.mul(&Jet::constant(k)?)
    }

    pub fn recip(&self) -> JetResult {
        let cy = self.center;
        let sy = self.partial_norm();
        let ey = self.err;
        let m = cabs_down(cy);
        let rho = add_up(sy, ey);
        let gap = sub_down(m, rho);
        if !(gap > 0.0) {
            return Err(JetError::DivisionPrecondition);
        }

        let r = approx_recip(cy);
        // residual 1 - cy * r, bounded rigorously
        let (prod, perr) = cmul(cy, r);
        let (dre, e1) = two_sum(1.0, -prod.re);
        let resid = add_up(add_up(cabs_up(Complex64::new(dre, -prod.im)), e1.abs()), perr);
        let eta = div_up(resid, m);
        let rr = cabs_up(r);

        let (q, qerr) = cmul(r, r);
        let mut partials = [ZERO; 3];
        let mut acc = Acc(eta);
        for i in 0..3 {
            let (p, e) = cmul(self.partials[i], q);
            partials[i] = -p;
            acc.add(e);
        }
        // |A| * |1/cy^2 - q|
        acc.add(mul_up(sy, add_up(qerr, mul_up(eta, add_up(mul_up(2.0, rr), eta)))));

        let m2 = mul_down(m, m);
        let denom = mul_down(m2, gap);
        if !(m2 > 0.0 && denom > 0.0) {
            return Err(JetError::MagnitudeGuard);
        }
        acc.add(div_up(ey, m2));
        acc.add(div_up(mul_up(rho, rho), denom));
        if !acc.0.is_finite() {
            return Err(JetError::MagnitudeGuard);
        }
        Jet { center: r, partials, err: acc.0 }.checked()
    }

    pub fn div(&self, other: &Jet) -> JetResult {
        self.mul(&other.recip()?)
    }

    pub fn abs_bounds(&self) -> AbsBounds {
        let radius = add_up(self.partial_norm(), self.err);
        let upper = add_up(cabs_up(self.center), radius);
        let lower = sub_down(cabs_down(self.center), radius).max(0.0);
        AbsBounds { lower, upper }
    }
}

/// Floating-point approximation of `1/z` for nonzero `z`, scaled to avoid
/// overflow in `|z|^2`. Its accuracy is measured afterwards, not assumed.
fn approx_recip(z: Complex64) -> Complex64 {
    let big = z.re.abs().max(z.im.abs());
    let k = crate::round::exponent(big).clamp(-1000, 1000);
    let s = pow2(-k);
    let w = Complex64::new(z.re * s, z.im * s);
    let n = w.re * w.re + w.im * w.im;
    Complex64::new(w.re / n * s, -w.im / n * s)
}
