//! Sturm sequences and real root isolation.

use std::cmp::Ordering;

use crate::polyalg::poly::Poly;
use crate::ratmat::{rat, Rat};

/// Signed-remainder (Sturm) chain of a square-free polynomial. Members are
/// kept primitive with their sign, which leaves variation counts unchanged.
pub fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = Vec::new();
    if p.is_zero() {
        return chain;
    }
    chain.push(p.primitive_part());
    let dp = p.derivative();
    if dp.is_zero() {
        return chain;
    }
    chain.push(dp.primitive_part());
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg().primitive_part());
    }
    chain
}

fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
    let mut count = 0usize;
    let mut last: Option<Ordering> = None;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

pub fn variations_at(chain: &[Poly], x: &Rat) -> usize {
    variations(chain.iter().map(|p| p.sign_at(x)))
}

pub fn variations_at_infinity(chain: &[Poly], positive: bool) -> usize {
    variations(chain.iter().map(|p| p.sign_at_infinity(positive)))
}

/// Number of distinct real roots of the square-free `p` in the half-open
/// interval `(lo, hi]`.
pub fn count_roots_half_open(chain: &[Poly], lo: &Rat, hi: &Rat) -> usize {
    debug_assert!(lo <= hi);
    variations_at(chain, lo) - variations_at(chain, hi)
}

/// Number of distinct real roots of the square-free `p` on all of R.
pub fn count_real_roots(p: &Poly) -> usize {
    if p.degree_or_zero() == 0 {
        return 0;
    }
    let chain = sturm_chain(p);
    variations_at_infinity(&chain, false) - variations_at_infinity(&chain, true)
}

/// An isolated real root of a square-free polynomial: either an exact
/// rational point or an open interval with nonzero endpoint signs containing
/// exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsolatedRoot {
    Exact(Rat),
    Interval(Rat, Rat),
}

impl IsolatedRoot {
    pub fn lo(&self) -> Rat {
        match self {
            IsolatedRoot::Exact(r) => r.clone(),
            IsolatedRoot::Interval(lo, _) => lo.clone(),
        }
    }

    pub fn hi(&self) -> Rat {
        match self {
            IsolatedRoot::Exact(r) => r.clone(),
            IsolatedRoot::Interval(_, hi) => hi.clone(),
        }
    }

    pub fn width(&self) -> Rat {
        self.hi() - self.lo()
    }

    pub fn midpoint(&self) -> Rat {
        (self.lo() + self.hi()) / rat(2, 1)
    }
}

/// Isolates all real roots of a square-free polynomial, in increasing order.
///
/// Interval roots come with open intervals whose endpoints are not roots.
pub fn isolate_real_roots(p: &Poly) -> Vec<IsolatedRoot> {
    let p = p.primitive_part();
    if p.degree_or_zero() == 0 {
        return vec![];
    }
    let chain = sturm_chain(&p);
    let bound = p.cauchy_bound();
    let lo = -&bound;
    let hi = bound;
    // Endpoints +-(cauchy bound) are never roots.
    let total = count_roots_half_open(&chain, &lo, &hi);
    let mut out = Vec::with_capacity(total);
    isolate_rec(&p, &chain, lo, hi, total, &mut out);
    out
}

/// Isolates the roots of a square-free polynomial inside `(lo, hi)`, both
/// endpoints assumed not to be roots. Cheaper than global isolation when the
/// window is small relative to the root bound.
pub fn isolate_roots_within(p: &Poly, lo: &Rat, hi: &Rat) -> Vec<IsolatedRoot> {
    let p = p.primitive_part();
    if p.degree_or_zero() == 0 {
        return vec![];
    }
    debug_assert_ne!(p.sign_at(lo), Ordering::Equal);
    debug_assert_ne!(p.sign_at(hi), Ordering::Equal);
    let chain = sturm_chain(&p);
    let count = count_roots_half_open(&chain, lo, hi);
    let mut out = Vec::with_capacity(count);
    isolate_rec(&p, &chain, lo.clone(), hi.clone(), count, &mut out);
    out
}

fn isolate_rec(
    p: &Poly,
    chain: &[Poly],
    lo: Rat,
    hi: Rat,
    count: usize,
    out: &mut Vec<IsolatedRoot>,
) {
    // Invariant: p(lo) != 0, p(hi) != 0, exactly `count` roots in (lo, hi).
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push(tighten_to_root(p, chain, lo, hi));
        return;
    }
    let mid = (&lo + &hi) / rat(2, 1);
    let width = &hi - &lo;
    if p.sign_at(&mid) == Ordering::Equal {
        // The split point is an exact rational root: carve out a gap around
        // it that contains no other root, and recurse on the two sides.
        let mut eps = &width / rat(512, 1);
        loop {
            let left_end = &mid - &eps;
            let right_start = &mid + &eps;
            if p.sign_at(&left_end) != Ordering::Equal
                && p.sign_at(&right_start) != Ordering::Equal
                && count_roots_half_open(chain, &left_end, &right_start) == 1
            {
                let left_count = count_roots_half_open(chain, &lo, &left_end);
                let right_count = count_roots_half_open(chain, &right_start, &hi);
                debug_assert_eq!(left_count + right_count + 1, count);
                isolate_rec(p, chain, lo, left_end, left_count, out);
                out.push(IsolatedRoot::Exact(mid));
                isolate_rec(p, chain, right_start, hi, right_count, out);
                return;
            }
            eps /= rat(2, 1);
        }
    }
    let left_count = count_roots_half_open(chain, &lo, &mid);
    isolate_rec(p, chain, lo, mid.clone(), left_count, out);
    isolate_rec(p, chain, mid, hi, count - left_count, out);
}

/// Given exactly one root in the open interval, either finds it exactly
/// (rational) or returns a sign-changing open interval around it.
fn tighten_to_root(p: &Poly, chain: &[Poly], mut lo: Rat, mut hi: Rat) -> IsolatedRoot {
    // Bisect until the endpoints change sign (a simple root must eventually
    // separate; equal signs mean the root is interior with even... impossible
    // for square-free p, so signs differ once the interval is clean).
    loop {
        if p.sign_at(&lo) != p.sign_at(&hi) {
            return IsolatedRoot::Interval(lo, hi);
        }
        let mid = (&lo + &hi) / rat(2, 1);
        match p.sign_at(&mid) {
            Ordering::Equal => return IsolatedRoot::Exact(mid),
            _ => {
                if count_roots_half_open(chain, &lo, &mid) == 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
        }
    }
}

/// Halves the width of a sign-changing interval around a simple root until it
/// is below `target`.
pub fn refine_interval(p: &Poly, root: &IsolatedRoot, target: &Rat) -> IsolatedRoot {
    let (mut lo, mut hi) = match root {
        IsolatedRoot::Exact(_) => return root.clone(),
        IsolatedRoot::Interval(lo, hi) => (lo.clone(), hi.clone()),
    };
    let sign_lo = p.sign_at(&lo);
    debug_assert_ne!(sign_lo, Ordering::Equal);
    debug_assert_ne!(p.sign_at(&hi), Ordering::Equal);
    let mut cur_sign_lo = sign_lo;
    while &hi - &lo >= *target {
        let mid = (&lo + &hi) / rat(2, 1);
        match p.sign_at(&mid) {
            Ordering::Equal => return IsolatedRoot::Exact(mid),
            s if s == cur_sign_lo => lo = mid,
            _ => {
                hi = mid;
                let _ = &mut cur_sign_lo;
            }
        }
    }
    IsolatedRoot::Interval(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::rat_int;

    #[test]
    fn counts_roots_of_x2_minus_2() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        assert_eq!(count_real_roots(&p), 2);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 2);
        // sqrt(2) in (1, 2)
        assert!(roots[1].lo() >= rat_int(-3) && roots[1].hi() <= rat_int(3));
        let refined = refine_interval(&p, &roots[1], &rat(1, 1000));
        assert!(refined.width() < rat(1, 1000));
        let mid = refined.midpoint();
        // 1.414...
        assert!(mid > rat(14, 10) && mid < rat(1415, 1000));
    }

    #[test]
    fn exact_rational_roots_found() {
        // (x-1)(x-2)(x-3)
        let p = Poly::from_ints(&[-6, 11, -6, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 3);
        let mids: Vec<Rat> = roots.iter().map(|r| r.midpoint()).collect();
        assert!(mids[0] < mids[1] && mids[1] < mids[2]);
        for (r, expect) in roots.iter().zip([1i64, 2, 3]) {
            let (lo, hi) = (r.lo(), r.hi());
            assert!(lo <= rat_int(expect) && rat_int(expect) <= hi);
        }
    }

    #[test]
    fn no_real_roots() {
        let p = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(count_real_roots(&p), 0);
        assert!(isolate_real_roots(&p).is_empty());
    }

    #[test]
    fn dense_cluster_isolated() {
        // roots at 0, 1/256, 2/256
        let p = Poly::x()
            .mul(&Poly::from_coeffs(vec![rat(-1, 256), rat_int(1)]))
            .mul(&Poly::from_coeffs(vec![rat(-2, 256), rat_int(1)]));
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 3);
    }
}
