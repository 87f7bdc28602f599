//! Randomized containment checks: random straight-line programs over the
//! coordinate jets of random boxes, replayed in [`Wide`] arithmetic at random
//! points of the box.

use bicusp::boxes::{Boxcode, ParamBox};
use bicusp::jet::Jet;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{WComplex, Wide};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Op {
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    Div(usize, usize),
    Neg(usize),
    MulI(usize),
    Const(Complex64),
}

/// Registers 0, 1, 2 hold `P`, `S`, `L`; op `k` writes register `k + 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub ops: Vec<Op>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Stats {
    pub programs: u64,
    /// Programs abandoned because a jet operation refused (guard tripped).
    pub skipped: u64,
    pub points: u64,
    pub violations: u64,
    pub first_violation: Option<String>,
}

impl Stats {
    pub fn merge(&mut self, o: Stats) {
        self.programs += o.programs;
        self.skipped += o.skipped;
        self.points += o.points;
        self.violations += o.violations;
        if self.first_violation.is_none() {
            self.first_violation = o.first_violation;
        }
    }
}

pub fn random_box(rng: &mut impl Rng) -> ParamBox {
    match rng.gen_range(0..3) {
        0 => {
            let depth = rng.gen_range(0..=60);
            let bits = (0..depth).map(|_| rng.gen()).collect();
            Boxcode::from_bits(bits).unwrap().to_box()
        }
        1 => ParamBox {
            center: std::array::from_fn(|_| rng.gen_range(-3.0..3.0)),
            halfsize: std::array::from_fn(|_| 10f64.powf(rng.gen_range(-10.0..0.3))),
        },
        _ => {
            let h = 10f64.powf(rng.gen_range(-12.0..-1.0));
            ParamBox { center: std::array::from_fn(|_| rng.gen_range(-2.0..2.0)), halfsize: [h; 6] }
        }
    }
}

fn random_const(rng: &mut impl Rng) -> Complex64 {
    let part = |rng: &mut dyn rand::RngCore| match rng.gen_range(0..4) {
        0 => 0.0,
        1 => rng.gen_range(-4i32..=4) as f64 * 0.5,
        _ => rng.gen_range(-2.0..2.0),
    };
    Complex64::new(part(rng), part(rng))
}

/// Builds a random program of `len` ops, evaluating the jets as it goes so
/// that divisions only target jets bounded away from zero. Returns `None` if
/// a jet operation fails.
pub fn random_program(rng: &mut impl Rng, bx: &ParamBox, len: usize) -> Option<(Program, Jet)> {
    let pj = bx.jets();
    let mut regs = vec![pj.p, pj.s, pj.l];
    let mut ops = Vec::with_capacity(len);
    for _ in 0..len {
        let n = regs.len();
        // bias toward recent registers so programs compose deeply
        let pick = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.6) {
                n - 1 - rng.gen_range(0..n.min(3))
            } else {
                rng.gen_range(0..n)
            }
        };
        let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
        let (i, j) = (pick(&mut local), pick(&mut local));
        let (op, jet) = match rng.gen_range(0..10) {
            0..=2 => (Op::Add(i, j), regs[i].add(&regs[j])),
            3 => (Op::Sub(i, j), regs[i].sub(&regs[j])),
            4..=6 => (Op::Mul(i, j), regs[i].mul(&regs[j])),
            7 => {
                if regs[j].abs_bounds().lower > 0.0 {
                    (Op::Div(i, j), regs[i].div(&regs[j]))
                } else {
                    (Op::Mul(i, j), regs[i].mul(&regs[j]))
                }
            }
            8 => {
                if rng.gen_bool(0.5) {
                    (Op::Neg(i), Ok(regs[i].neg()))
                } else {
                    (Op::MulI(i), Ok(regs[i].mul_i()))
                }
            }
            _ => {
                let c = random_const(rng);
                (Op::Const(c), Jet::constant(c))
            }
        };
        regs.push(jet.ok()?);
        ops.push(op);
    }
    Some((Program { ops }, *regs.last().unwrap()))
}

/// Point of the box and its tri-disc coordinates, both exact in `Wide`.
pub struct SamplePoint {
    pub p: WComplex,
    pub s: WComplex,
    pub l: WComplex,
    pub z: [WComplex; 3],
}

pub fn sample_point(bx: &ParamBox, t: [f64; 6]) -> SamplePoint {
    let c = |d: usize| Wide::from_f64(bx.center[d]);
    let ts = |d: usize| Wide::from_f64(t[d]).mul(&Wide::from_f64(bx.halfsize[d]));
    let x = |d: usize| c(d).add(&ts(d));
    let z = |re: usize, im: usize| {
        let num = WComplex::new(ts(re), ts(im));
        let den = WComplex::from_f64(bx.halfsize[re], bx.halfsize[im]);
        num.div(&den)
    };
    SamplePoint {
        l: WComplex::new(x(3), x(0)),
        s: WComplex::new(x(4), x(1)),
        p: WComplex::new(x(5), x(2)),
        z: [z(3, 0), z(4, 1), z(5, 2)],
    }
}

pub fn random_t(rng: &mut impl Rng) -> [f64; 6] {
    std::array::from_fn(|_| match rng.gen_range(0..8) {
        0 => -1.0,
        1 => 1.0,
        _ => rng.gen_range(-1.0..=1.0),
    })
}

/// Runs the program in `Wide`; returns the value and a power of two above
/// every intermediate magnitude.
pub fn run_wide(prog: &Program, pt: &SamplePoint) -> (WComplex, f64) {
    let mut regs = Vec::with_capacity(prog.ops.len() + 3);
    regs.extend([pt.p, pt.s, pt.l]);
    let mut big = regs.iter().map(WComplex::exp_bound).max().unwrap();
    for op in &prog.ops {
        let v = match *op {
            Op::Add(i, j) => regs[i].add(&regs[j]),
            Op::Sub(i, j) => regs[i].sub(&regs[j]),
            Op::Mul(i, j) => regs[i].mul(&regs[j]),
            Op::Div(i, j) => regs[i].div(&regs[j]),
            Op::Neg(i) => regs[i].neg(),
            Op::MulI(i) => regs[i].mul_i(),
            Op::Const(c) => WComplex::from_c64(c),
        };
        big = big.max(v.exp_bound());
        regs.push(v);
    }
    (*regs.last().unwrap(), 2f64.powi(big.clamp(-1000, 1000)))
}

/// Affine part of a jet at `z`, in `Wide`.
pub fn affine_wide(jet: &Jet, z: &[WComplex; 3]) -> WComplex {
    let mut acc = WComplex::from_c64(jet.center);
    for k in 0..3 {
        acc = acc.add(&WComplex::from_c64(jet.partials[k]).mul(&z[k]));
    }
    acc
}

/// Slack for the reference's own rounding: `2^-100` per op, scaled by the
/// largest magnitude seen.
pub fn oracle_slack(big: f64, ops: usize) -> f64 {
    2f64.powi(-100) * big.max(1.0) * (ops as f64 + 4.0)
}

/// Checks containment and the absolute-value bounds at one point.
pub fn check_point(prog: &Program, jet: &Jet, pt: &SamplePoint) -> Result<(), String> {
    let (exact, big) = run_wide(prog, pt);
    let slack = oracle_slack(big, prog.ops.len());
    let diff = exact.sub(&affine_wide(jet, &pt.z));
    let radius = Wide::from_f64(jet.err).add(&Wide::from_f64(slack));
    if !diff.abs_le(&radius) {
        return Err(format!(
            "containment: |ref - affine| = {:e} > err {:e}",
            diff.norm_sqr().to_f64().sqrt(),
            jet.err
        ));
    }
    let ab = jet.abs_bounds();
    let mag2 = exact.norm_sqr();
    let up = Wide::from_f64(ab.upper).add(&Wide::from_f64(slack));
    let lo = Wide::from_f64(ab.lower).sub(&Wide::from_f64(slack));
    if mag2.cmp(&up.mul(&up)) == std::cmp::Ordering::Greater {
        return Err(format!("abs upper {:e} violated", ab.upper));
    }
    if lo.to_f64() > 0.0 && mag2.cmp(&lo.mul(&lo)) == std::cmp::Ordering::Less {
        return Err(format!("abs lower {:e} violated", ab.lower));
    }
    Ok(())
}

/// `programs` random programs of length `1..=max_len`, each checked at
/// `points` random points of its box; refused programs are replaced.
/// Deterministic in `seed`.
pub fn run(seed: u64, programs: usize, points: usize, max_len: usize) -> Stats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = Stats::default();
    while stats.programs < programs as u64 && stats.skipped <= 10 * programs as u64 {
        let bx = random_box(&mut rng);
        let len = rng.gen_range(1..=max_len);
        let Some((prog, jet)) = random_program(&mut rng, &bx, len) else {
            stats.skipped += 1;
            continue;
        };
        stats.programs += 1;
        for _ in 0..points {
            let pt = sample_point(&bx, random_t(&mut rng));
            stats.points += 1;
            if let Err(e) = check_point(&prog, &jet, &pt) {
                stats.violations += 1;
                if stats.first_violation.is_none() {
                    stats.first_violation = Some(format!("{e}; box {bx:?}; program {prog:?}"));
                }
            }
        }
    }
    stats
}
