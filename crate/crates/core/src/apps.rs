//! Point-level computations: cusp areas, the Whitehead variety, and Newton
//! refinement onto the common zero set of two relators.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::pairs::IsoRow;
use crate::par;
use crate::words::{evaluate_at, Word};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    pub p: Complex64,
    pub s: Complex64,
    pub l: Complex64,
}

impl ParamPoint {
    pub fn new(p: Complex64, s: Complex64, l: Complex64) -> ParamPoint {
        ParamPoint { p, s, l }
    }

    /// The point `(P, S, L) = (i, 1+i, 2i)` on the Whitehead variety.
    pub fn whitehead() -> ParamPoint {
        ParamPoint::new(Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, 2.0))
    }

    /// Real coordinates `(Im L, Im S, Im P, Re L, Re S, Re P)`.
    pub fn coords(&self) -> [f64; 6] {
        [self.l.im, self.s.im, self.p.im, self.l.re, self.s.re, self.p.re]
    }

    pub fn from_coords(x: [f64; 6]) -> ParamPoint {
        ParamPoint::new(
            Complex64::new(x[5], x[2]),
            Complex64::new(x[4], x[1]),
            Complex64::new(x[3], x[0]),
        )
    }

    /// Whether the point satisfies the region inequalities (0)-(6) with the
    /// given area bound, up to `tol`.
    pub fn in_region(&self, area_bound: f64, tol: f64) -> bool {
        let (p, s, l) = (self.p, self.s, self.l);
        s.norm_sqr() >= 1.0 - tol
            && s.im >= -tol
            && l.im >= -tol
            && p.im >= -tol
            && p.re >= -tol
            && l.re.abs() <= 0.5 + tol
            && l.norm_sqr() >= 1.0 - tol
            && p.im <= l.im / 2.0 + tol
            && p.re <= 0.5 + tol
            && cusp_area(self) <= area_bound + tol
    }
}

/// `|S^2 Im L|`
pub fn cusp_area(pt: &ParamPoint) -> f64 {
    (pt.s * pt.s * pt.l.im).norm()
}

/// `4 |Im L| / |L|`
pub fn m129_area_bound(l: Complex64) -> f64 {
    4.0 * l.im.abs() / l.norm()
}

/// `(P, S^2) = (L/2, -4/L)`
pub fn whitehead_variety_point(l: Complex64) -> (Complex64, Complex64) {
    (l / 2.0, -4.0 / l)
}

pub fn is_rectangular(l: Complex64) -> bool {
    l.re.abs() <= 1e-12
}

/// Largest distance of `r1`, `r2` from `+I` or `-I` at the point.
pub fn pair_residual(r1: &Word, r2: &Word, pt: &ParamPoint) -> f64 {
    let d = |w: &Word| {
        evaluate_at(w, pt.p, pt.s, pt.l).map_or(f64::INFINITY, |m| {
            let v = m.distance_to_identity();
            if v.is_finite() {
                v
            } else {
                f64::INFINITY
            }
        })
    };
    d(r1).max(d(r2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonResult {
    pub point: ParamPoint,
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum NewtonError {
    #[error("S too close to zero or non-finite iterate")]
    Degenerate,
    #[error("no convergence after {iterations} iterations (best residual {best:e})")]
    NoConvergence { iterations: usize, best: f64 },
}

const MAX_ITERATIONS: usize = 60;

type Vec6 = SVector<f64, 6>;

/// Real and imaginary parts of `(c1, b1, c2)`.
fn equations(r1: &Word, r2: &Word, x: &Vec6) -> Option<Vec6> {
    let pt = from_vec(x);
    if !(pt.s.norm() > 1e-8) {
        return None;
    }
    let m1 = evaluate_at(r1, pt.p, pt.s, pt.l).ok()?;
    let m2 = evaluate_at(r2, pt.p, pt.s, pt.l).ok()?;
    let f = Vec6::from([m1.c.re, m1.c.im, m1.b.re, m1.b.im, m2.c.re, m2.c.im]);
    f.iter().all(|v| v.is_finite()).then_some(f)
}

fn to_vec(pt: &ParamPoint) -> Vec6 {
    Vec6::from([pt.p.re, pt.p.im, pt.s.re, pt.s.im, pt.l.re, pt.l.im])
}

fn from_vec(x: &Vec6) -> ParamPoint {
    ParamPoint::new(Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3]), Complex64::new(x[4], x[5]))
}

/// Damped Newton iteration on `c1 = b1 = c2 = 0` with a central-difference
/// Jacobian; succeeds once both relators are within `tol` of `+-I`.
pub fn newton_refine(r1: &Word, r2: &Word, guess: ParamPoint, tol: f64) -> Result<NewtonResult, NewtonError> {
    let mut x = to_vec(&guess);
    let mut best = f64::INFINITY;
    for it in 0..=MAX_ITERATIONS {
        let pt = from_vec(&x);
        if !(pt.s.norm() > 1e-8) || x.iter().any(|v| !v.is_finite()) {
            return Err(NewtonError::Degenerate);
        }
        let res = pair_residual(r1, r2, &pt);
        best = best.min(res);
        if res <= tol {
            return Ok(NewtonResult { point: pt, residual: res, iterations: it });
        }
        if it == MAX_ITERATIONS {
            break;
        }
        let f = equations(r1, r2, &x).ok_or(NewtonError::Degenerate)?;
        let mut jac = SMatrix::<f64, 6, 6>::zeros();
        for j in 0..6 {
            let h = 1e-7 * x[j].abs().max(1.0);
            let (mut xp, mut xm) = (x, x);
            xp[j] += h;
            xm[j] -= h;
            let fp = equations(r1, r2, &xp).ok_or(NewtonError::Degenerate)?;
            let fm = equations(r1, r2, &xm).ok_or(NewtonError::Degenerate)?;
            jac.set_column(j, &((fp - fm) / (2.0 * h)));
        }
        let Some(step) = jac.lu().solve(&(-f)) else {
            return Err(NewtonError::NoConvergence { iterations: it, best });
        };
        let norm = f.norm();
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial = x + step * lambda;
            if let Some(ft) = equations(r1, r2, &trial) {
                if ft.norm() < norm {
                    x = trial;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(NewtonError::NoConvergence { iterations: it, best });
        }
    }
    Err(NewtonError::NoConvergence { iterations: MAX_ITERATIONS, best })
}

/// Grid points of the region at spacing 1/8 in every real coordinate,
/// keeping the `keep` with smallest pair residual (ascending).
pub fn grid_seeds(r1: &Word, r2: &Word, area_bound: f64, keep: usize, parallel: bool) -> Vec<(f64, ParamPoint)> {
    let step = 0.125;
    let ticks = |lo: f64, hi: f64| -> Vec<f64> {
        let (a, b) = ((lo / step).ceil() as i64, (hi / step).floor() as i64);
        (a..=b).map(|k| k as f64 * step).collect()
    };
    // Im L >= sqrt(3)/2 and |S|^2 >= 1 bound Im L by the area.
    let im_l = ticks(0.75, area_bound);
    let slices: Vec<Vec<(f64, ParamPoint)>> = par::map(parallel, &im_l, |&il| {
        let mut out = Vec::new();
        for rl in ticks(-0.5, 0.5) {
            let l = Complex64::new(rl, il);
            if l.norm_sqr() < 1.0 {
                continue;
            }
            let smax = (area_bound / il).sqrt();
            for is in ticks(0.0, smax) {
                for rs in ticks(-smax, smax) {
                    let s = Complex64::new(rs, is);
                    let s2 = s.norm_sqr();
                    if s2 < 1.0 || s2 * il > area_bound {
                        continue;
                    }
                    for ip in ticks(0.0, il / 2.0) {
                        for rp in ticks(0.0, 0.5) {
                            let pt = ParamPoint::new(Complex64::new(rp, ip), s, l);
                            let r = pair_residual(r1, r2, &pt);
                            if r.is_finite() {
                                out.push((r, pt));
                            }
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out.truncate(keep);
        out
    });
    let mut all: Vec<(f64, ParamPoint)> = slices.into_iter().flatten().collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.coords().partial_cmp(&b.1.coords()).unwrap()));
    all.truncate(keep);
    all
}

/// Refines the grid seeds in order and returns the first converged point
/// that lies in the region.
pub fn find_discrete_point(r1: &Word, r2: &Word, area_bound: f64, tol: f64, parallel: bool) -> Option<NewtonResult> {
    grid_seeds(r1, r2, area_bound, 32, parallel)
        .into_iter()
        .filter_map(|(_, seed)| newton_refine(r1, r2, seed, tol).ok())
        .find(|r| r.point.in_region(area_bound, 1e-9))
}

/// Distance from `+-I` of the target relator after substituting the images
/// of its generators, evaluated at `pt`.
pub fn isomorphism_spot_check(row: &IsoRow, pt: &ParamPoint) -> f64 {
    evaluate_at(&row.substituted_relator(), pt.p, pt.s, pt.l)
        .map_or(f64::INFINITY, |m| m.distance_to_identity())
}
