//! Enumeration of perfect matchings on `{0, .., 2n-1}`.
//!
//! The recursion keeps a partial matching `p`, a list `l` whose head must be
//! matched to another element of `l`, and a set `m` of elements skipped over
//! for the current head. Pairing the head with the next element of `l`
//! returns everything skipped to the pool; otherwise that element is parked
//! in `m` and the head tries the one after.

use thiserror::Error;

pub const MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("n = {0} out of range 1..={MAX_N}")]
pub struct RangeError(pub usize);

/// Pairs `(a, b)` with `a < b`, sorted by first element.
pub type Matching = Vec<(usize, usize)>;

/// Visits every perfect matching on `2n` points exactly once and returns
/// the number visited.
pub fn enumerate_matchings(n: usize, mut visit: impl FnMut(&Matching)) -> Result<u64, RangeError> {
    if n == 0 || n > MAX_N {
        return Err(RangeError(n));
    }
    let l: Vec<usize> = (0..2 * n).collect();
    let mut p = Vec::with_capacity(n);
    let mut count = 0;
    pfm(&mut p, &l, &[], &mut |pairs| {
        let mut m: Matching = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        m.sort_unstable();
        count += 1;
        visit(&m);
    });
    Ok(count)
}

fn pfm(p: &mut Vec<(usize, usize)>, l: &[usize], m: &[usize], f: &mut dyn FnMut(&[(usize, usize)])) {
    match l {
        [] => {
            if m.is_empty() {
                f(p);
            }
        }
        [_] => {}
        [x0, x1, rest @ ..] => {
            p.push((*x0, *x1));
            pfm(p, &sorted_union(rest, m), &[], f);
            p.pop();

            let mut l2 = Vec::with_capacity(rest.len() + 1);
            l2.push(*x0);
            l2.extend_from_slice(rest);
            pfm(p, &l2, &sorted_union(&[*x1], m), f);
        }
    }
}

fn sorted_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a-b,c-d,...`
pub fn format_matching(m: &Matching) -> String {
    m.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(",")
}

/// `(2n - 1)!!`
pub fn double_factorial_odd(n: usize) -> u64 {
    (1..=n as u64).map(|k| 2 * k - 1).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let mut seen = Vec::new();
        assert_eq!(enumerate_matchings(1, |m| seen.push(m.clone())), Ok(1));
        assert_eq!(seen, vec![vec![(0, 1)]]);
        for (n, want) in [(2, 3), (3, 15), (4, 105)] {
            assert_eq!(enumerate_matchings(n, |_| {}), Ok(want));
        }
    }

    #[test]
    fn first_matchings_in_order() {
        let mut seen = Vec::new();
        enumerate_matchings(2, |m| seen.push(format_matching(m))).unwrap();
        assert_eq!(seen, ["0-1,2-3", "0-2,1-3", "0-3,1-2"]);
    }

    #[test]
    fn range_guard() {
        assert_eq!(enumerate_matchings(0, |_| {}), Err(RangeError(0)));
        assert_eq!(enumerate_matchings(13, |_| {}), Err(RangeError(13)));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(5), 945);
        assert_eq!(double_factorial_odd(8), 2_027_025);
    }
}
