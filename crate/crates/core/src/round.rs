//! Error-free transformations and directed rounding emulated on top of
//! round-to-nearest binary64.
//!
//! Every bound produced here is rigorous under the default IEEE-754 rounding
//! mode. `TwoSum` is exact for all finite inputs; `TwoProd` (via fused
//! multiply-add) is exact unless the product lands near the subnormal range,
//! which the `*_up`/`*_down` helpers detect and compensate for by stepping
//! one ulp outward unconditionally.

/// Products smaller than this may lose bits in their FMA residual.
pub(crate) const TINY: f64 = f64::from_bits(0x0370_0000_0000_0000); // 2^-968

/// Additive guard for an operation whose residual may be inexact.
pub const LAMBDA: f64 = TINY;

/// `a + b = s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `a * b = p + e` exactly, provided `|p| >= TINY` (or the product is zero
/// because an input is zero).
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

#[inline]
fn tiny_product(p: f64, a: f64, b: f64) -> bool {
    p.abs() < TINY && a != 0.0 && b != 0.0
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    let (p, e) = two_prod(a, b);
    if tiny_product(p, a, b) || e > 0.0 {
        p.next_up()
    } else {
        p
    }
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    let (p, e) = two_prod(a, b);
    if tiny_product(p, a, b) || e < 0.0 {
        p.next_down()
    } else {
        p
    }
}

/// Upper bound of `a / b` for `b > 0`.
#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    debug_assert!(b > 0.0);
    let q = a / b;
    // q*b - a, exact while q*b stays clear of the subnormal range
    let r = q.mul_add(b, -a);
    if tiny_product(q, a, b) || r < 0.0 {
        q.next_up()
    } else {
        q
    }
}

/// Lower bound of `a / b` for `b > 0`.
#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    debug_assert!(b > 0.0);
    let q = a / b;
    let r = q.mul_add(b, -a);
    if tiny_product(q, a, b) || r > 0.0 {
        q.next_down()
    } else {
        q
    }
}

/// Upper bound of `sqrt(x)` for `x >= 0`.
#[inline]
pub fn sqrt_up(x: f64) -> f64 {
    let r = x.sqrt();
    if r == 0.0 {
        return if x > 0.0 { f64::MIN_POSITIVE } else { 0.0 };
    }
    let res = r.mul_add(r, -x);
    if r * r < TINY || res < 0.0 {
        r.next_up()
    } else {
        r
    }
}

/// Lower bound of `sqrt(x)` for `x >= 0`.
#[inline]
pub fn sqrt_down(x: f64) -> f64 {
    let r = x.sqrt();
    if r == 0.0 {
        return 0.0;
    }
    let res = r.mul_add(r, -x);
    if r * r < TINY || res > 0.0 {
        r.next_down().max(0.0)
    } else {
        r
    }
}

/// Exact power of two `2^k` for `k` in the normal exponent range.
#[inline]
pub(crate) fn pow2(k: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

/// Binary exponent `e` with `2^e <= |x| < 2^(e+1)` for normal nonzero `x`.
#[inline]
pub(crate) fn exponent(x: f64) -> i32 {
    ((x.to_bits() >> 52) & 0x7ff) as i32 - 1023
}

/// Rigorous upper bound on `sqrt(re^2 + im^2)`.
pub fn hypot_up(re: f64, im: f64) -> f64 {
    let (big, small) = ordered(re.abs(), im.abs());
    if small == 0.0 {
        return big;
    }
    if !big.is_normal() {
        // both subnormal: |z| <= |re| + |im|
        return add_up(big, small);
    }
    let k = exponent(big);
    if exponent_gap(big, small) > 500 {
        // |z| <= big * (1 + 2^-1000)
        return big.next_up();
    }
    let s = pow2(-k);
    let (b, t) = (big * s, small * s);
    let sum = add_up(mul_up(b, b), mul_up(t, t));
    // t may have been rounded when scaled into the subnormal range
    let sum = if t != 0.0 && !t.is_normal() { sum.next_up() } else { sum };
    sqrt_up(sum) * pow2(k)
}

/// Rigorous lower bound on `sqrt(re^2 + im^2)`.
pub fn hypot_down(re: f64, im: f64) -> f64 {
    let (big, small) = ordered(re.abs(), im.abs());
    if big == 0.0 {
        return 0.0;
    }
    if !big.is_normal() || exponent_gap(big, small) > 500 {
        return big;
    }
    let k = exponent(big);
    let s = pow2(-k);
    let (b, t) = (big * s, small * s);
    let t = if t.is_normal() { t } else { 0.0 };
    let sum = add_down(mul_down(b, b), mul_down(t, t).max(0.0));
    (sqrt_down(sum) * pow2(k)).max(big)
}

#[inline]
fn ordered(a: f64, b: f64) -> (f64, f64) {
    if a >= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[inline]
fn exponent_gap(big: f64, small: f64) -> i32 {
    if small == 0.0 || !small.is_normal() {
        return i32::MAX;
    }
    exponent(big) - exponent(small)
}
