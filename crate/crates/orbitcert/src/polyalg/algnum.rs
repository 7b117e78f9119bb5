//! Algebraic numbers as defining polynomial plus isolating box, with exact
//! refinement, sign determination at real algebraic points, and certified
//! complex root isolation via winding-number counts on rectangle boundaries.

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::polyalg::poly::Poly;
use crate::polyalg::sturm::{count_roots_half_open, refine_interval, sturm_chain, IsolatedRoot};
use crate::ratmat::{rat, Rat};

/// A root of a rational polynomial, isolated by a rational box. For real
/// roots the imaginary range is exactly `[0, 0]`; the defining polynomial is
/// square-free and primitive with positive leading coefficient, and has
/// exactly one root inside the box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    poly: Poly,
    re: (Rat, Rat),
    im: (Rat, Rat),
}

impl AlgebraicNumber {
    pub fn real(poly: &Poly, root: &IsolatedRoot) -> Self {
        let poly = poly.square_free_part().primitive_positive();
        let (lo, hi) = match root {
            IsolatedRoot::Exact(r) => (r.clone(), r.clone()),
            IsolatedRoot::Interval(lo, hi) => (lo.clone(), hi.clone()),
        };
        AlgebraicNumber {
            poly,
            re: (lo, hi),
            im: (Rat::zero(), Rat::zero()),
        }
    }

    pub fn from_rational(r: &Rat) -> Self {
        AlgebraicNumber {
            poly: Poly::x_minus(r).primitive_positive(),
            re: (r.clone(), r.clone()),
            im: (Rat::zero(), Rat::zero()),
        }
    }

    pub fn complex(poly: &Poly, re: (Rat, Rat), im: (Rat, Rat)) -> Self {
        let poly = poly.square_free_part().primitive_positive();
        AlgebraicNumber { poly, re, im }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn re_interval(&self) -> (&Rat, &Rat) {
        (&self.re.0, &self.re.1)
    }

    pub fn im_interval(&self) -> (&Rat, &Rat) {
        (&self.im.0, &self.im.1)
    }

    pub fn is_real(&self) -> bool {
        self.im.0.is_zero() && self.im.1.is_zero()
    }

    /// True if the box width is zero (the number is the rational `re.0`).
    pub fn is_exact_rational(&self) -> bool {
        self.is_real() && self.re.0 == self.re.1
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_exact_rational().then_some(&self.re.0)
    }

    /// Current box width (max over the two axes).
    pub fn width(&self) -> Rat {
        let wr = &self.re.1 - &self.re.0;
        let wi = &self.im.1 - &self.im.0;
        if wr >= wi {
            wr
        } else {
            wi
        }
    }

    /// Returns a value with the same root in a box of width below `target`.
    pub fn refined_to(&self, target: &Rat) -> Self {
        let mut cur = self.clone();
        while cur.width() >= *target {
            cur = cur.refine_step();
        }
        cur
    }

    fn refine_step(&self) -> Self {
        if self.is_real() {
            if self.is_exact_rational() {
                return self.clone();
            }
            let root = IsolatedRoot::Interval(self.re.0.clone(), self.re.1.clone());
            let target = (&self.re.1 - &self.re.0) / rat(2, 1);
            let refined = refine_interval(&self.poly, &root, &target);
            return AlgebraicNumber::real(&self.poly, &refined);
        }
        let (re, im) = refine_box_once(&self.poly, self.re.clone(), self.im.clone());
        AlgebraicNumber {
            poly: self.poly.clone(),
            re,
            im,
        }
    }

    /// Interval guaranteed to contain `|alpha|^2`.
    pub fn modulus_sq_interval(&self) -> (Rat, Rat) {
        let re2 = interval_square(&self.re.0, &self.re.1);
        let im2 = interval_square(&self.im.0, &self.im.1);
        (re2.0 + im2.0, re2.1 + im2.1)
    }

    /// Compares `|alpha|` with 1 by refining until the squared-modulus
    /// interval excludes 1. Never call this on a root of modulus exactly 1
    /// unless the box already witnesses it (it would not terminate); the
    /// classifier strips unit-circle roots beforehand.
    pub fn modulus_cmp_one(&self) -> Ordering {
        let mut cur = self.clone();
        loop {
            let (lo, hi) = cur.modulus_sq_interval();
            if lo > Rat::one() {
                return Ordering::Greater;
            }
            if hi < Rat::one() {
                return Ordering::Less;
            }
            if cur.is_exact_rational() {
                let v = cur.re.0.abs();
                return v.cmp(&Rat::one());
            }
            cur = cur.refine_step();
        }
    }

    /// Decimal rendering of the box midpoint with the given number of
    /// fractional digits (exact arithmetic, truncation toward zero).
    pub fn decimal_midpoint(&self, digits: u32) -> String {
        let mid = (&self.re.0 + &self.re.1) / rat(2, 1);
        decimal_string(&mid, digits)
    }
}

/// Interval square: tight bounds for `x^2` over `[lo, hi]`.
fn interval_square(lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let a = lo * lo;
    let b = hi * hi;
    let (mut min, max) = if a <= b { (a.clone(), b) } else { (b.clone(), a) };
    if lo.is_negative() && hi.is_positive() {
        min = Rat::zero();
    }
    (min, max)
}

/// Exact decimal string with truncation.
pub fn decimal_string(r: &Rat, digits: u32) -> String {
    let scale = num_bigint::BigInt::from(10u32).pow(digits);
    let scaled = (r * Rat::from_integer(scale.clone())).trunc();
    let n = scaled.numer().clone();
    let neg = n.is_negative();
    let n = n.abs();
    let int_part = &n / &scale;
    let frac_part = &n % &scale;
    let frac_str = format!("{:0>width$}", frac_part.to_string(), width = digits as usize);
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_str)
}

/// Sign of `q(alpha)` for a real algebraic `alpha`, determined exactly.
pub fn sign_at(q: &Poly, alpha: &AlgebraicNumber) -> Ordering {
    assert!(alpha.is_real(), "sign_at needs a real algebraic number");
    if let Some(r) = alpha.as_rational() {
        return q.sign_at(r);
    }
    if q.is_zero() {
        return Ordering::Equal;
    }
    // Exact zero test: q(alpha) = 0 iff gcd(q, minpoly) vanishes at alpha,
    // i.e. iff the gcd has a root in the isolating interval.
    let g = q.gcd(&alpha.poly);
    if g.degree_or_zero() > 0 {
        let chain = sturm_chain(&g);
        let (lo, hi) = (&alpha.re.0, &alpha.re.1);
        let mut inside = count_roots_half_open(&chain, lo, hi);
        if g.sign_at(lo) == Ordering::Equal {
            inside += 1;
        }
        if g.sign_at(hi) == Ordering::Equal {
            inside -= 1;
        }
        if inside > 0 {
            return Ordering::Equal;
        }
    }
    // Nonzero: refine the box until the interval evaluation is definite.
    let mut cur = alpha.clone();
    loop {
        let (lo, hi) = q.eval_interval(&cur.re.0, &cur.re.1);
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        cur = cur.refine_step();
        if let Some(r) = cur.as_rational() {
            return q.sign_at(r);
        }
    }
}

// ---------------------------------------------------------------------------
// Winding-number root counting on rectangles.
// ---------------------------------------------------------------------------

/// Raised when a root lies on (or too close to resolve from) the proposed
/// rectangle boundary; callers nudge the rectangle and retry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryHit;

/// Exact number of roots of `p` (square-free part) strictly inside the
/// rectangle `re x im`, by the argument principle: the winding number of the
/// boundary image is computed from its signed crossings of the positive real
/// ray, located via Sturm sequences.
pub fn count_roots_in_rect(
    p: &Poly,
    re: (&Rat, &Rat),
    im: (&Rat, &Rat),
) -> Result<usize, BoundaryHit> {
    let p = p.square_free_part();
    if p.degree_or_zero() == 0 {
        return Ok(0);
    }
    let (x0, x1) = (re.0.clone(), re.1.clone());
    let (y0, y1) = (im.0.clone(), im.1.clone());
    assert!(x0 < x1 && y0 < y1, "rectangle must have positive area");

    let corners = [
        (x0.clone(), y0.clone()),
        (x1.clone(), y0.clone()),
        (x1.clone(), y1.clone()),
        (x0.clone(), y1.clone()),
    ];
    // p(corner) must be nonzero.
    let mut corner_vals = Vec::with_capacity(4);
    for (cx, cy) in &corners {
        let (u, v) = eval_complex(&p, cx, cy);
        if u.is_zero() && v.is_zero() {
            return Err(BoundaryHit);
        }
        corner_vals.push((u, v));
    }

    // Counterclockwise edges as start->end corner indices.
    let edges = [(0usize, 1usize), (1, 2), (2, 3), (3, 0)];

    #[derive(Debug)]
    enum Token {
        Sign(Ordering),
        Zero(Ordering), // sign of u at a v-zero
    }

    let mut tokens: Vec<Token> = Vec::new();
    for &(s, e) in edges.iter() {
        // Corner token first.
        let (cu, cv) = &corner_vals[s];
        if cv.is_zero() {
            tokens.push(Token::Zero(cu.cmp(&Rat::zero())));
        } else {
            tokens.push(Token::Sign(cv.cmp(&Rat::zero())));
        }
        let (sx, sy) = &corners[s];
        let (ex, ey) = &corners[e];
        let (u, v) = edge_polynomials(&p, sx, sy, ex, ey);
        // Roots of p on the open edge?
        let g = if v.is_zero() { u.clone() } else { u.gcd(&v) };
        if g.degree_or_zero() > 0 {
            let gsf = g.square_free_part();
            let chain = sturm_chain(&gsf);
            let mut inside = count_roots_half_open(&chain, &Rat::zero(), &Rat::one());
            if gsf.sign_at(&Rat::one()) == Ordering::Equal {
                inside -= 1;
            }
            if inside > 0 {
                return Err(BoundaryHit);
            }
        }
        if v.is_zero() {
            // The edge maps into the real axis; u keeps one sign across it.
            let umid = u.eval(&rat(1, 2));
            debug_assert!(!umid.is_zero());
            tokens.push(Token::Zero(umid.cmp(&Rat::zero())));
            continue;
        }
        // Interior zeros of v on (0,1), with u's sign at each, and v's sign
        // between consecutive zeros. Exact endpoint roots belong to the
        // corner tokens; dividing them out keeps the refinement below finite.
        let mut vsf = v.square_free_part();
        while !vsf.is_constant() && vsf.eval(&Rat::zero()).is_zero() {
            vsf = vsf.div_exact(&Poly::x()).unwrap();
        }
        while !vsf.is_constant() && vsf.eval(&Rat::one()).is_zero() {
            vsf = vsf.div_exact(&Poly::x_minus(&Rat::one())).unwrap();
        }
        let roots: Vec<IsolatedRoot> = if vsf.is_constant() {
            vec![]
        } else {
            crate::polyalg::sturm::isolate_roots_within(&vsf, &Rat::zero(), &Rat::one())
        };

        let mut prev_hi = Rat::zero();
        for r in &roots {
            // Sample between the previous zero (or the corner) and this root.
            let sample = (&prev_hi + &r.lo()) / rat(2, 1);
            if sample > Rat::zero() {
                let sv = v.eval(&sample);
                if !sv.is_zero() {
                    tokens.push(Token::Sign(sv.cmp(&Rat::zero())));
                }
            }
            // Sign of u at the root of v.
            let usign = sign_of_u_at_v_root(&u, &vsf, r);
            tokens.push(Token::Zero(usign));
            prev_hi = r.hi();
        }
        let sample = (&prev_hi + &Rat::one()) / rat(2, 1);
        let sv = v.eval(&sample);
        if !sv.is_zero() {
            tokens.push(Token::Sign(sv.cmp(&Rat::zero())));
        }
    }

    // Walk the cyclic token list: each maximal run of Zero tokens separating
    // opposite v-signs crosses the real axis; it contributes to the winding
    // number when u > 0 there (positive ray crossings).
    let sign_positions: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter_map(|(i, t)| matches!(t, Token::Sign(_)).then_some(i))
        .collect();
    if sign_positions.is_empty() {
        return Err(BoundaryHit);
    }
    let mut winding = 0i64;
    let k = sign_positions.len();
    for idx in 0..k {
        let i = sign_positions[idx];
        let j = sign_positions[(idx + 1) % k];
        let Token::Sign(si) = tokens[i] else { unreachable!() };
        let Token::Sign(sj) = tokens[j] else { unreachable!() };
        // Zero tokens strictly between i and j (cyclically).
        let mut zero_usign: Option<Ordering> = None;
        let mut pos = (i + 1) % tokens.len();
        while pos != j {
            if let Token::Zero(us) = tokens[pos] {
                debug_assert_ne!(us, Ordering::Equal, "u and v cannot vanish together off roots");
                match zero_usign {
                    None => zero_usign = Some(us),
                    Some(prev) => debug_assert_eq!(prev, us, "u sign must persist through a zero run"),
                }
            }
            pos = (pos + 1) % tokens.len();
        }
        if let Some(us) = zero_usign {
            if si != sj && us == Ordering::Greater {
                // v: minus -> plus through u > 0 is a counterclockwise pass.
                winding += if si == Ordering::Less { 1 } else { -1 };
            }
        }
    }
    debug_assert!(winding >= 0, "winding must be nonnegative for a polynomial");
    Ok(winding.max(0) as usize)
}

/// Sign of `u` at an isolated root of the square-free `vsf` (where `u` is
/// known not to vanish).
fn sign_of_u_at_v_root(u: &Poly, vsf: &Poly, root: &IsolatedRoot) -> Ordering {
    match root {
        IsolatedRoot::Exact(x) => u.sign_at(x),
        IsolatedRoot::Interval(_, _) => {
            let mut cur = root.clone();
            loop {
                let (lo, hi) = u.eval_interval(&cur.lo(), &cur.hi());
                if lo.is_positive() {
                    return Ordering::Greater;
                }
                if hi.is_negative() {
                    return Ordering::Less;
                }
                let target = cur.width() / rat(2, 1);
                cur = refine_interval(vsf, &cur, &target);
                if let IsolatedRoot::Exact(ref x) = cur {
                    return u.sign_at(x);
                }
            }
        }
    }
}

/// Real and imaginary part of `p` along the segment from `(sx, sy)` to
/// `(ex, ey)`, as polynomials in the parameter `t` over `[0, 1]`.
fn edge_polynomials(p: &Poly, sx: &Rat, sy: &Rat, ex: &Rat, ey: &Rat) -> (Poly, Poly) {
    // z(t) = (sx + t dx) + i (sy + t dy)
    let lre = Poly::from_coeffs(vec![sx.clone(), ex - sx]);
    let lim = Poly::from_coeffs(vec![sy.clone(), ey - sy]);
    let mut u = Poly::zero();
    let mut v = Poly::zero();
    for c in p.coeffs().iter().rev() {
        // (u + iv) * (lre + i lim) + c
        let nu = u.mul(&lre).sub(&v.mul(&lim)).add(&Poly::constant(c.clone()));
        let nv = u.mul(&lim).add(&v.mul(&lre));
        u = nu;
        v = nv;
    }
    (u, v)
}

/// `p(x + iy)` for rational `x`, `y`: exact complex evaluation.
pub fn eval_complex(p: &Poly, x: &Rat, y: &Rat) -> (Rat, Rat) {
    let mut u = Rat::zero();
    let mut v = Rat::zero();
    for c in p.coeffs().iter().rev() {
        let nu = &u * x - &v * y + c;
        let nv = &u * y + &v * x;
        u = nu;
        v = nv;
    }
    (u, v)
}

/// One refinement step of an isolating box containing exactly one root:
/// splits the longer side and keeps the half that contains the root.
fn refine_box_once(p: &Poly, re: (Rat, Rat), im: (Rat, Rat)) -> ((Rat, Rat), (Rat, Rat)) {
    let wr = &re.1 - &re.0;
    let wi = &im.1 - &im.0;
    let split_re = wr >= wi;
    let (lo, hi) = if split_re { &re } else { &im };
    let width = hi - lo;
    // Split at the midpoint, nudging by dyadic offsets when a root sits on
    // the proposed line; dyadic coordinates keep coefficient growth linear
    // across repeated refinement.
    for offset in dyadic_offsets(&width).take(40) {
        let mid = (lo + hi) / rat(2, 1) + offset;
        if mid <= *lo || mid >= *hi {
            continue;
        }
        let (first_re, first_im, second_re, second_im) = if split_re {
            (
                (re.0.clone(), mid.clone()),
                im.clone(),
                (mid.clone(), re.1.clone()),
                im.clone(),
            )
        } else {
            (
                re.clone(),
                (im.0.clone(), mid.clone()),
                re.clone(),
                (mid.clone(), im.1.clone()),
            )
        };
        // Counting one half decides the split: the parent holds exactly one
        // root, and a clean split line keeps it off the boundary, so the
        // other half's count is implied.
        match count_roots_in_rect(p, (&first_re.0, &first_re.1), (&first_im.0, &first_im.1)) {
            Ok(1) => return (first_re, first_im),
            Ok(_) => return (second_re, second_im),
            Err(BoundaryHit) => continue,
        }
    }
    panic!("could not refine complex root box; all split lines hit roots");
}

/// Dyadic split offsets: 0, then +-width/8, +-width/16, +-3 width/16, ...
fn dyadic_offsets(width: &Rat) -> impl Iterator<Item = Rat> {
    let width = width.clone();
    (0u32..).map(move |k| {
        if k == 0 {
            return Rat::zero();
        }
        let j = (k - 1) / 2;
        let numerator = 2 * ((j / 3) as i64) + 1; // 1, 1, 1, 3, 3, 3, 5, ...
        let denominator = 1i64 << (3 + (j % 3)); // 8, 16, 32 cycling
        let offset = &width * rat(numerator, denominator);
        if k % 2 == 1 {
            offset
        } else {
            -offset
        }
    })
}

/// Isolates all roots of `p` with strictly positive imaginary part. The
/// returned boxes each contain exactly one root of the square-free part.
pub fn isolate_upper_half_roots(p: &Poly) -> Vec<AlgebraicNumber> {
    let p = p.square_free_part().primitive_positive();
    let deg = p.degree_or_zero();
    if deg == 0 {
        return vec![];
    }
    let real_count = crate::polyalg::sturm::count_real_roots(&p);
    let m = (deg - real_count) / 2;
    if m == 0 {
        return vec![];
    }
    let bound = p.cauchy_bound();
    // Vertical and top sides sit just outside the root bound; only the bottom
    // edge needs adjusting until all m upper-half roots are above it.
    let x0 = -&bound - rat(1, 8);
    let x1 = &bound + rat(1, 16);
    let top = &bound + rat(1, 32);
    let mut y_lo = rat(1, 2);
    let full_count = loop {
        match count_roots_in_rect(&p, (&x0, &x1), (&y_lo, &top)) {
            Ok(c) if c == m => break c,
            Ok(_) => y_lo = &y_lo / rat(2, 1),
            Err(BoundaryHit) => y_lo = &y_lo * rat(15, 16),
        }
        // Roots with tiny imaginary part force y_lo down; terminate: every
        // strictly-upper root has positive imaginary part.
    };
    let mut queue = vec![((x0, x1), (y_lo, top), full_count)];
    let mut boxes = Vec::with_capacity(m);
    while let Some((re, im, count)) = queue.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            boxes.push(AlgebraicNumber::complex(&p, re, im));
            continue;
        }
        // Split the longer side, nudging the split line off roots.
        let wr = &re.1 - &re.0;
        let wi = &im.1 - &im.0;
        let split_re = wr >= wi;
        let (lo, hi) = if split_re { &re } else { &im };
        let width = hi - lo;
        let mut done = false;
        for offset in dyadic_offsets(&width).take(60) {
            let mid = (lo + hi) / rat(2, 1) + offset;
            if mid <= *lo || mid >= *hi {
                continue;
            }
            let (ra, ia, rb, ib) = if split_re {
                (
                    (re.0.clone(), mid.clone()),
                    im.clone(),
                    (mid.clone(), re.1.clone()),
                    im.clone(),
                )
            } else {
                (
                    re.clone(),
                    (im.0.clone(), mid.clone()),
                    re.clone(),
                    (mid.clone(), im.1.clone()),
                )
            };
            let (Ok(ca), Ok(cb)) = (
                count_roots_in_rect(&p, (&ra.0, &ra.1), (&ia.0, &ia.1)),
                count_roots_in_rect(&p, (&rb.0, &rb.1), (&ib.0, &ib.1)),
            ) else {
                continue;
            };
            debug_assert_eq!(ca + cb, count);
            queue.push((ra, ia, ca));
            queue.push((rb, ib, cb));
            done = true;
            break;
        }
        assert!(done, "failed to find a clean split line for complex isolation");
    }
    // Deterministic order: by real part, then imaginary part.
    boxes.sort_by(|a, b| {
        (a.re.0.clone() + &a.re.1)
            .cmp(&(b.re.0.clone() + &b.re.1))
            .then_with(|| (a.im.0.clone() + &a.im.1).cmp(&(b.im.0.clone() + &b.im.1)))
    });
    boxes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::sturm::isolate_real_roots;

    #[test]
    fn count_rect_known_roots() {
        // (x - (1+i))(x - (1-i))(x - 3) = x^3 - 5x^2 + 8x - 6
        let p = Poly::from_ints(&[-6, 8, -5, 1]);
        // Box around 1+i.
        let c = count_roots_in_rect(
            &p,
            (&rat(1, 2), &rat(3, 2)),
            (&rat(1, 2), &rat(3, 2)),
        )
        .unwrap();
        assert_eq!(c, 1);
        // Box around the real root 3 (strictly containing it, off axis? the
        // rectangle includes part of the real axis; the root lies inside).
        let c = count_roots_in_rect(&p, (&rat(5, 2), &rat(7, 2)), (&rat(-1, 2), &rat(1, 2))).unwrap();
        assert_eq!(c, 1);
        // Big box holding everything.
        let c = count_roots_in_rect(&p, (&rat(-10, 1), &rat(10, 1)), (&rat(-10, 1), &rat(10, 1)))
            .unwrap();
        assert_eq!(c, 3);
        // Empty region.
        let c = count_roots_in_rect(&p, (&rat(-10, 1), &rat(-5, 1)), (&rat(1, 3), &rat(2, 3))).unwrap();
        assert_eq!(c, 0);
    }

    #[test]
    fn count_rect_detects_boundary_roots() {
        let p = Poly::from_ints(&[1, 0, 1]); // roots +-i
        // i sits on the top edge.
        let r = count_roots_in_rect(&p, (&rat(-1, 2), &rat(1, 2)), (&rat(0, 1), &rat(1, 1)));
        assert_eq!(r, Err(BoundaryHit));
        // Corner root.
        let q = Poly::from_ints(&[-1, 1]); // root 1
        let r = count_roots_in_rect(&q, (&rat(1, 1), &rat(2, 1)), (&rat(0, 1), &rat(1, 1)));
        assert_eq!(r, Err(BoundaryHit));
    }

    #[test]
    fn isolates_complex_pairs() {
        // x^2 + 1: one upper root i.
        let p = Poly::from_ints(&[1, 0, 1]);
        let boxes = isolate_upper_half_roots(&p);
        assert_eq!(boxes.len(), 1);
        let b = boxes[0].refined_to(&rat(1, 100));
        let (lo, hi) = b.modulus_sq_interval();
        assert!(lo <= Rat::one() && Rat::one() <= hi);

        // Paper 4x4 example char poly: two real roots, one upper pair with
        // |lambda|^2 between 9.41 and 9.44.
        let cp = Poly::from_ints(&[15, -34, 20, -6, 1]);
        let boxes = isolate_upper_half_roots(&cp);
        assert_eq!(boxes.len(), 1);
        let b = boxes[0].refined_to(&rat(1, 1000));
        let (lo, hi) = b.modulus_sq_interval();
        assert!(lo > rat(941, 100), "lo = {lo}");
        assert!(hi < rat(944, 100), "hi = {hi}");
    }

    #[test]
    fn sign_at_algebraic_points() {
        // alpha = sqrt(2)
        let p = Poly::from_ints(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p);
        let alpha = AlgebraicNumber::real(&p, &roots[1]);
        // q = x^2 - 2 vanishes at alpha.
        assert_eq!(sign_at(&p, &alpha), Ordering::Equal);
        // q = x - 1 is positive at sqrt(2).
        assert_eq!(sign_at(&Poly::from_ints(&[-1, 1]), &alpha), Ordering::Greater);
        // q = x - 2 is negative.
        assert_eq!(sign_at(&Poly::from_ints(&[-2, 1]), &alpha), Ordering::Less);
        // Multiple of the minimal polynomial vanishes too.
        let q = p.mul(&Poly::from_ints(&[5, 1]));
        assert_eq!(sign_at(&q, &alpha), Ordering::Equal);
    }

    #[test]
    fn refinement_keeps_the_root() {
        let p = Poly::from_ints(&[-3, 0, 1]); // sqrt(3)
        let roots = isolate_real_roots(&p);
        let alpha = AlgebraicNumber::real(&p, &roots[1]);
        let fine = alpha.refined_to(&rat(1, 1_000_000));
        assert!(fine.width() < rat(1, 1_000_000));
        // Sign change persists.
        let s_lo = p.sign_at(&fine.re.0);
        let s_hi = p.sign_at(&fine.re.1);
        assert_ne!(s_lo, s_hi);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(355, 113), 4), "3.1415");
        assert_eq!(decimal_string(&rat(-3, 2), 2), "-1.50");
    }
}
