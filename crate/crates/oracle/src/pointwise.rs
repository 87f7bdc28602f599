//! Terminal conditions tested at single points in [`Wide`] arithmetic, as an
//! independent check on box-wide certification.

use std::cmp::Ordering;

use bicusp::conditions::{Boundary, Mode, TerminalCondition};

use crate::soundness::SamplePoint;
use crate::{eval_word, WComplex, Wide};

fn lt(a: &Wide, b: f64) -> bool {
    a.cmp(&Wide::from_f64(b)) == Ordering::Less
}

fn gt(a: &Wide, b: f64) -> bool {
    a.cmp(&Wide::from_f64(b)) == Ordering::Greater
}

fn boundary_at(b: Boundary, pt: &SamplePoint, mode: &Mode) -> bool {
    match (b.index, b.sub) {
        (0, _) => lt(&pt.s.norm_sqr(), 1.0),
        (1, Some(0)) => lt(&pt.s.im, 0.0),
        (1, Some(1)) => lt(&pt.l.im, 0.0),
        (1, Some(2)) => lt(&pt.p.im, 0.0),
        (1, Some(3)) => lt(&pt.p.re, 0.0),
        (1, None) => (0..4).any(|s| boundary_at(Boundary::sign(s), pt, mode)),
        (2, _) => gt(&pt.l.re.abs(), 0.5),
        (3, _) => lt(&pt.l.norm_sqr(), 1.0),
        (4, _) => {
            let half = pt.l.im.mul(&Wide::from_f64(0.5));
            lt(&half, 0.0) || gt(&pt.p.im.sub(&half), 0.0)
        }
        (5, _) => gt(&pt.p.re, 0.5),
        (6, _) => gt(&pt.s.norm_sqr().mul(&pt.l.im.abs()), mode.area_bound),
        _ => false,
    }
}

fn is_unit(z: &WComplex) -> bool {
    let one = WComplex::from_f64(1.0, 0.0);
    z.sub(&one).norm_sqr().is_zero() || z.add(&one).norm_sqr().is_zero()
}

/// Whether `cond` holds at the point. Holes never hold.
pub fn holds_at(cond: &TerminalCondition, pt: &SamplePoint, mode: &Mode) -> bool {
    match cond {
        TerminalCondition::Boundary(b) => boundary_at(*b, pt, mode),
        TerminalCondition::Necklace(w) => {
            let m = eval_word(&w.to_string(), pt.p, pt.s, pt.l);
            lt(&m.c.div(&pt.s).norm_sqr(), 1.0)
        }
        TerminalCondition::Killer(w) => {
            let m = eval_word(&w.to_string(), pt.p, pt.s, pt.l);
            let trivial = m.c.norm_sqr().is_zero() && is_unit(&m.a) && is_unit(&m.d);
            lt(&m.c.div(&pt.s).norm_sqr(), 1.0) && !trivial
        }
        TerminalCondition::Variety(r1, r2) => [r1, r2].iter().all(|r| {
            let m = eval_word(&r.to_string(), pt.p, pt.s, pt.l);
            lt(&m.c.norm_sqr(), 1.0) && lt(&m.b.norm_sqr(), 1.0)
        }),
        TerminalCondition::Hole => false,
    }
}
