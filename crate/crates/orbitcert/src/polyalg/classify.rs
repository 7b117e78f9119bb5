//! Certified classification of polynomial roots by modulus relative to 1,
//! rational root extraction, and root-of-unity order detection.
//!
//! The classifier never compares floating-point approximations: unit-circle
//! roots are split off exactly through `gcd(p, reciprocal(p))` and the
//! `y = x + 1/x` substitution, and every remaining root is certified off the
//! circle, so interval refinement of `|root|^2` against 1 terminates.

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::error::Error;
use crate::polyalg::algnum::{isolate_upper_half_roots, sign_at, AlgebraicNumber};
use crate::polyalg::poly::Poly;
use crate::polyalg::sturm::{isolate_real_roots, refine_interval, IsolatedRoot};
use crate::ratmat::{rat, rat_int, Rat};
use crate::Result;

/// Which side of the unit circle a root group lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ModulusTag {
    Zero,
    LessThanOne,
    EqualOne,
    GreaterThanOne,
}

/// Modulus class of a root group; `unity_order` is present exactly when the
/// roots are roots of unity (which forces modulus one).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ModulusClass {
    pub tag: ModulusTag,
    pub unity_order: Option<u64>,
}

impl ModulusClass {
    pub fn plain(tag: ModulusTag) -> Self {
        ModulusClass { tag, unity_order: None }
    }

    pub fn unity(order: u64) -> Self {
        ModulusClass {
            tag: ModulusTag::EqualOne,
            unity_order: Some(order),
        }
    }
}

/// Where a classified root group sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupLocation {
    /// A single real root with its isolating data.
    Real(AlgebraicNumber),
    /// A conjugate pair isolated in the upper half plane.
    UpperBox(AlgebraicNumber),
    /// A unit-circle conjugate pair, located by its `y = x + 1/x` value
    /// (`y = 2 cos theta`), itself a real algebraic number in `(-2, 2)`.
    CircleY(AlgebraicNumber),
    /// Counted exactly but not boxed (reciprocal complex quadruples).
    Counted,
}

/// A group of roots sharing one modulus class.
#[derive(Clone, Debug)]
pub struct RootGroup {
    /// The square-free factor the group's roots belong to.
    pub factor: Poly,
    /// Multiplicity of each root in the original polynomial.
    pub multiplicity: usize,
    /// Number of distinct roots in the group (1 for real, 2 for a pair).
    pub count: usize,
    pub class: ModulusClass,
    pub location: GroupLocation,
}

/// Rational roots with multiplicities plus the rational-root-free cofactor.
pub struct RationalRoots {
    pub roots: Vec<(Rat, usize)>,
    pub cofactor: Poly,
}

/// Finds every rational root of `p` (with multiplicity) and the cofactor.
///
/// Works through the square-free decomposition; per factor the monic-integer
/// scaling `y = lc * x` reduces the search to integer roots, which are read
/// off isolating intervals narrower than one — no divisor enumeration.
pub fn squarefree_rational_roots(p: &Poly) -> Result<RationalRoots> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial {
            op: "squarefree_rational_roots",
        });
    }
    let mut roots: Vec<(Rat, usize)> = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        for r in rational_roots_of_squarefree(&factor) {
            roots.push((r, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let mut cofactor = p.clone();
    for (r, mult) in &roots {
        let lin = Poly::x_minus(r);
        for _ in 0..*mult {
            cofactor = cofactor
                .div_exact(&lin)
                .expect("rational root must divide");
        }
    }
    Ok(RationalRoots { roots, cofactor })
}

/// Rational roots of a square-free polynomial, increasing order.
pub fn rational_roots_of_squarefree(f: &Poly) -> Vec<Rat> {
    if f.degree_or_zero() == 0 {
        return vec![];
    }
    let fi = f.primitive_part();
    let n = fi.degree_or_zero();
    let lc = fi.lc();
    debug_assert!(fi.is_integer());
    // g(y) = lc^(n-1) f(y / lc) is monic with integer coefficients; its
    // integer roots y0 give the rational roots y0 / lc of f.
    let mut gc = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut c = fi.coeff(j);
        for _ in 0..(n - 1 - j) {
            c *= &lc;
        }
        gc.push(c);
    }
    gc.push(Rat::one());
    let g = Poly::from_coeffs(gc);
    let mut out = Vec::new();
    for root in isolate_real_roots(&g) {
        let candidate = match &root {
            IsolatedRoot::Exact(r) => {
                if r.denom().is_one() {
                    Some(r.numer().clone())
                } else {
                    None
                }
            }
            IsolatedRoot::Interval(_, _) => {
                let mut cur = root.clone();
                while cur.width() >= rat(1, 2) {
                    let target = cur.width() / rat(2, 1);
                    cur = refine_interval(&g, &cur, &target);
                }
                match &cur {
                    IsolatedRoot::Exact(r) => r.denom().is_one().then(|| r.numer().clone()),
                    IsolatedRoot::Interval(lo, hi) => {
                        let k = hi.floor().numer().clone();
                        (Rat::from_integer(k.clone()) > *lo
                            && g.eval(&Rat::from_integer(k.clone())).is_zero())
                        .then_some(k)
                    }
                }
            }
        };
        if let Some(y0) = candidate {
            let x0 = Rat::new(y0, lc.numer().clone());
            if f.eval(&x0).is_zero() {
                out.push(x0);
            }
        }
    }
    out
}

/// Euler's totient.
pub fn totient(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Largest `m` with `totient(m) <= d`. Since `phi(m) >= sqrt(m/2)`, scanning
/// up to `2 d^2 + 4` is exhaustive.
pub fn unity_order_bound(d: u64) -> u64 {
    let mut best = 1;
    for m in 1..=(2 * d * d + 4) {
        if totient(m) <= d {
            best = m;
        }
    }
    best
}

/// The `m`-th cyclotomic polynomial (integer coefficients, monic).
pub fn cyclotomic(m: u64) -> Poly {
    // x^m - 1 divided by all lower cyclotomic factors.
    let mut num = Poly::zero();
    num.set_coeff(m as usize, Rat::one());
    num = num.sub(&Poly::one());
    let mut result = num;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic(d);
            result = result.div_exact(&phi_d).expect("cyclotomic divisibility");
        }
    }
    result
}

/// Minimal `m` with `q | x^m - 1`, searching up to the totient bound for
/// `deg q`; `None` when the roots of `q` are not roots of unity.
///
/// `q` need not be irreducible; divisibility by `x^m - 1` is tested directly.
pub fn root_of_unity_order(q: &Poly) -> Option<u64> {
    let d = q.degree()?;
    if d == 0 {
        return None;
    }
    let bound = unity_order_bound(d as u64);
    for m in 1..=bound {
        let mut xm1 = Poly::zero();
        xm1.set_coeff(m as usize, Rat::one());
        xm1 = xm1.sub(&Poly::one());
        if q.divides(&xm1) {
            return Some(m);
        }
    }
    None
}

/// The factor of `p` that can carry unit-circle roots, with their exact count
/// (with multiplicity).
pub struct UnitCircleFactor {
    /// `gcd(p, reciprocal(p))`: every modulus-1 root of `p` divides this.
    pub factor: Poly,
    /// Exact number of unit-circle roots of `p`, with multiplicity.
    pub unit_root_count: usize,
}

/// Computes `gcd(p, reciprocal(p))` and counts its unit-circle roots exactly
/// via the `y = x + 1/x` substitution and Sturm counting on `[-2, 2]`.
pub fn unit_circle_factor(p: &Poly) -> Result<UnitCircleFactor> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial {
            op: "unit_circle_factor",
        });
    }
    let g = p.gcd(&p.reciprocal());
    let mut count = 0usize;
    if g.degree_or_zero() > 0 {
        for (f, mult) in g.square_free_decomposition() {
            count += mult * unit_roots_of_squarefree_reciprocal(&f).0;
        }
    }
    Ok(UnitCircleFactor {
        factor: g,
        unit_root_count: count,
    })
}

/// For a square-free factor closed under `x -> 1/x`: the exact number of its
/// unit-circle roots, plus its symmetrized core (after removing roots at
/// +-1) and that core's isolated real `y`-roots in `(-2, 2)`.
fn unit_roots_of_squarefree_reciprocal(f: &Poly) -> (usize, Option<(Poly, Vec<IsolatedRoot>)>) {
    let mut count = 0usize;
    let mut core = f.clone();
    let one = rat_int(1);
    let minus_one = rat_int(-1);
    if core.eval(&one).is_zero() {
        core = core.div_exact(&Poly::x_minus(&one)).unwrap();
        count += 1;
    }
    if core.eval(&minus_one).is_zero() {
        core = core.div_exact(&Poly::x_minus(&minus_one)).unwrap();
        count += 1;
    }
    if core.degree_or_zero() == 0 {
        return (count, None);
    }
    let h = symmetrize_reciprocal(&core);
    let circle_roots: Vec<IsolatedRoot> = isolate_real_roots(&h)
        .into_iter()
        .filter(|r| within_open_two(r, &h))
        .collect();
    count += 2 * circle_roots.len();
    (count, Some((h, circle_roots)))
}

fn within_open_two(root: &IsolatedRoot, h: &Poly) -> bool {
    let two = rat_int(2);
    let m_two = rat_int(-2);
    let mut cur = root.clone();
    loop {
        match &cur {
            IsolatedRoot::Exact(r) => return r > &m_two && r < &two,
            IsolatedRoot::Interval(lo, hi) => {
                if *lo >= two || *hi <= m_two {
                    return false;
                }
                if *lo > m_two && *hi < two {
                    return true;
                }
                let target = (hi - lo) / rat(2, 1);
                cur = refine_interval(h, &cur, &target);
            }
        }
    }
}

/// For a palindromic polynomial `g` of even degree `2m` (no roots at 0 or
/// +-1): the unique `h` of degree `m` with `g(x) = x^m h(x + 1/x)`.
pub fn symmetrize_reciprocal(g: &Poly) -> Poly {
    let deg = g.degree_or_zero();
    assert!(deg.is_multiple_of(2), "reciprocal core must have even degree");
    let m = deg / 2;
    for j in 0..=deg {
        assert_eq!(
            g.coeff(j) * g.lc(),
            g.coeff(deg - j) * g.lc(),
            "polynomial must be palindromic"
        );
    }
    // x^j + x^(-j) = P_j(y): P_0 = 2, P_1 = y, P_(j+1) = y P_j - P_(j-1).
    let mut h = Poly::constant(g.coeff(m));
    let mut p_prev = Poly::constant(rat_int(2));
    let mut p_cur = Poly::x();
    for j in 1..=m {
        h = h.add(&p_cur.mul_scalar(&g.coeff(m + j)));
        let p_next = Poly::x().mul(&p_cur).sub(&p_prev);
        p_prev = p_cur;
        p_cur = p_next;
    }
    h
}

/// Strips zero roots: returns `(k, q)` with `p = x^k q`, `q(0) != 0`.
pub fn strip_zero_roots(p: &Poly) -> (usize, Poly) {
    let mut k = 0;
    while p.coeff(k).is_zero() && k <= p.degree_or_zero() {
        k += 1;
    }
    let coeffs = p.coeffs()[k..].to_vec();
    (k, Poly::from_coeffs(coeffs))
}

/// Classifies every root of `p` into modulus classes, with certified data.
///
/// Exhaustive and exclusive: multiplicity-weighted counts over the returned
/// groups sum to `deg p`.
pub fn classify_roots(p: &Poly) -> Result<Vec<RootGroup>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial { op: "classify_roots" });
    }
    let mut groups: Vec<RootGroup> = Vec::new();
    let (zero_mult, q) = strip_zero_roots(p);
    if zero_mult > 0 {
        groups.push(RootGroup {
            factor: Poly::x(),
            multiplicity: zero_mult,
            count: 1,
            class: ModulusClass::plain(ModulusTag::Zero),
            location: GroupLocation::Real(AlgebraicNumber::from_rational(&Rat::zero())),
        });
    }
    if q.degree_or_zero() == 0 {
        return Ok(groups);
    }
    for (f, mult) in q.square_free_decomposition() {
        classify_squarefree_factor(&f, mult, &mut groups);
    }
    debug_assert_eq!(
        groups.iter().map(|g| g.count * g.multiplicity).sum::<usize>(),
        p.degree_or_zero(),
        "classification must cover every root exactly once"
    );
    Ok(groups)
}

fn classify_squarefree_factor(f: &Poly, mult: usize, groups: &mut Vec<RootGroup>) {
    // Rational roots get exact classes.
    let rational = rational_roots_of_squarefree(f);
    let mut rest = f.clone();
    for r in &rational {
        rest = rest.div_exact(&Poly::x_minus(r)).unwrap();
        let abs = r.abs();
        let class = match abs.cmp(&Rat::one()) {
            Ordering::Less => {
                if r.is_zero() {
                    ModulusClass::plain(ModulusTag::Zero)
                } else {
                    ModulusClass::plain(ModulusTag::LessThanOne)
                }
            }
            Ordering::Equal => ModulusClass::unity(if r.is_positive() { 1 } else { 2 }),
            Ordering::Greater => ModulusClass::plain(ModulusTag::GreaterThanOne),
        };
        groups.push(RootGroup {
            factor: Poly::x_minus(r),
            multiplicity: mult,
            count: 1,
            class,
            location: GroupLocation::Real(AlgebraicNumber::from_rational(r)),
        });
    }
    if rest.degree_or_zero() == 0 {
        return;
    }

    // Real irrational roots: certified off +-1, so the comparison against 1
    // terminates.
    for root in isolate_real_roots(&rest) {
        let alpha = AlgebraicNumber::real(&rest, &root);
        let tag = match alpha.modulus_cmp_one() {
            Ordering::Less => ModulusTag::LessThanOne,
            Ordering::Greater => ModulusTag::GreaterThanOne,
            Ordering::Equal => unreachable!("real modulus-1 roots are rational +-1"),
        };
        groups.push(RootGroup {
            factor: rest.clone(),
            multiplicity: mult,
            count: 1,
            class: ModulusClass::plain(tag),
            location: GroupLocation::Real(alpha),
        });
    }

    // Unit-circle pairs live in gcd(rest, reciprocal(rest)).
    let g = rest.gcd(&rest.reciprocal());
    let w = rest.div_exact(&g).expect("gcd divides");
    if g.degree_or_zero() > 0 {
        let (_, sym) = unit_roots_of_squarefree_reciprocal(&g);
        if let Some((h, circle_roots)) = sym {
            // Orders of unity present in this factor, via explicit
            // cyclotomic divisibility; matched to pairs through their
            // y-transforms.
            let mut unity_divisors: Vec<(u64, Poly)> = Vec::new();
            let bound = unity_order_bound(g.degree_or_zero() as u64);
            for m in 3..=bound {
                if totient(m) <= g.degree_or_zero() as u64 {
                    let phi = cyclotomic(m);
                    if phi.divides(&g) {
                        unity_divisors.push((m, symmetrize_reciprocal(&phi)));
                    }
                }
            }
            for y_root in &circle_roots {
                let y_alg = AlgebraicNumber::real(&h, y_root);
                let mut order = None;
                for (m, hm) in &unity_divisors {
                    if sign_at(hm, &y_alg) == Ordering::Equal {
                        order = Some(*m);
                        break;
                    }
                }
                let class = match order {
                    Some(m) => ModulusClass::unity(m),
                    None => ModulusClass::plain(ModulusTag::EqualOne),
                };
                groups.push(RootGroup {
                    factor: rest.clone(),
                    multiplicity: mult,
                    count: 2,
                    class,
                    location: GroupLocation::CircleY(y_alg),
                });
            }
            // Non-real y-roots: reciprocal quadruples, one pair on each side
            // of the circle.
            let real_y = isolate_real_roots(&h).len();
            let quadruples = (h.degree_or_zero() - real_y) / 2;
            for _ in 0..quadruples {
                groups.push(RootGroup {
                    factor: rest.clone(),
                    multiplicity: mult,
                    count: 2,
                    class: ModulusClass::plain(ModulusTag::GreaterThanOne),
                    location: GroupLocation::Counted,
                });
                groups.push(RootGroup {
                    factor: rest.clone(),
                    multiplicity: mult,
                    count: 2,
                    class: ModulusClass::plain(ModulusTag::LessThanOne),
                    location: GroupLocation::Counted,
                });
            }
        }
    }

    // Off-circle complex pairs of the reciprocal-free part: isolate and
    // refine until |root|^2 resolves against 1.
    if w.degree_or_zero() >= 2 {
        for pair in isolate_upper_half_roots(&w) {
            let tag = match pair.modulus_cmp_one() {
                Ordering::Less => ModulusTag::LessThanOne,
                Ordering::Greater => ModulusTag::GreaterThanOne,
                Ordering::Equal => unreachable!("unit-circle pairs were split off"),
            };
            groups.push(RootGroup {
                factor: rest.clone(),
                multiplicity: mult,
                count: 2,
                class: ModulusClass::plain(tag),
                location: GroupLocation::UpperBox(pair),
            });
        }
    }
}
