//! Univariate polynomials over the rationals.
//!
//! Coefficients are stored constant-term first; the leading coefficient is
//! nonzero unless the polynomial is zero (empty coefficient vector).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::ratmat::{rat_int, rat_to_string, Int, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// `x - r`.
    pub fn x_minus(r: &Rat) -> Self {
        Poly::from_coeffs(vec![-r.clone(), Rat::one()])
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Sets the coefficient of `x^i`, growing the polynomial as needed.
    pub fn set_coeff(&mut self, i: usize, c: Rat) {
        if i >= self.coeffs.len() {
            self.coeffs.resize(i + 1, Rat::zero());
        }
        self.coeffs[i] = c;
        self.trim();
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Interval evaluation: a box containing `p([lo, hi])`.
    pub fn eval_interval(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        debug_assert!(lo <= hi);
        let (mut alo, mut ahi) = (Rat::zero(), Rat::zero());
        for c in self.coeffs.iter().rev() {
            // [alo,ahi] * [lo,hi] + c
            let cands = [&alo * lo, &alo * hi, &ahi * lo, &ahi * hi];
            let mut nlo = cands[0].clone();
            let mut nhi = cands[0].clone();
            for v in &cands[1..] {
                if *v < nlo {
                    nlo = v.clone();
                }
                if *v > nhi {
                    nhi = v.clone();
                }
            }
            alo = nlo + c;
            ahi = nhi + c;
        }
        (alo, ahi)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, c: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    /// Panics on division by the zero polynomial.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        if self.degree() < div.degree() {
            return (Poly::zero(), self.clone());
        }
        let dd = div.degree_or_zero();
        let inv_lc = div.lc().recip();
        let mut rem = self.coeffs.clone();
        let qn = rem.len() - dd;
        let mut quot = vec![Rat::zero(); qn];
        for i in (0..qn).rev() {
            let c = &rem[i + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for j in 0..=dd {
                let v = &rem[i + j] - &c * &div.coeffs[j];
                rem[i + j] = v;
            }
            quot[i] = c;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, div: &Poly) -> Poly {
        self.divrem(div).1
    }

    pub fn div_exact(&self, div: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(div);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_int((i + 1) as i64))
                .collect(),
        )
    }

    /// Monic gcd (primitive PRS internally to keep coefficients tame).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b.to_monic();
        }
        while !b.is_zero() {
            let r = a.rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.to_monic()
    }

    pub fn to_monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.mul_scalar(&self.lc().recip())
    }

    /// Positive rational content (gcd of numerators over lcm of denominators).
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let mut num = Int::zero();
        let mut den = Int::one();
        for c in &self.coeffs {
            num = num.gcd(&c.numer().abs());
            den = den.lcm(c.denom());
        }
        Rat::new(num, den)
    }

    /// Integer-coefficient primitive part; preserves the sign of the leading
    /// coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        self.mul_scalar(&c.recip())
    }

    /// Like `primitive_part` but with a positive leading coefficient.
    pub fn primitive_positive(&self) -> Poly {
        let p = self.primitive_part();
        if p.lc().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// True when all coefficients are integers.
    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// `x^deg * p(1/x)`: the coefficient sequence reversed.
    pub fn reciprocal(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::from_coeffs(c)
    }

    /// `p(c * x)`.
    pub fn scale_arg(&self, c: &Rat) -> Poly {
        let mut pow = Rat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Poly::from_coeffs(out)
    }

    /// `p(x + c)`.
    pub fn shift_arg(&self, c: &Rat) -> Poly {
        // Horner on (x + c)
        let mut acc = Poly::zero();
        let shift = Poly::from_coeffs(vec![c.clone(), Rat::one()]);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&shift);
            acc = acc.add(&Poly::constant(a.clone()));
        }
        acc
    }

    /// Composition `self(inner)`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc = acc.add(&Poly::constant(a.clone()));
        }
        acc
    }

    /// Square-free part `p / gcd(p, p')`, made monic.
    pub fn square_free_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        if self.degree_or_zero() == 0 {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g)
            .expect("gcd divides the polynomial")
            .to_monic()
    }

    /// Yun square-free decomposition: pairwise-coprime monic square-free
    /// factors with multiplicities, `p = lc * prod f_i^{m_i}`.
    pub fn square_free_decomposition(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "square-free decomposition of zero");
        let p = self.to_monic();
        if p.degree_or_zero() == 0 {
            return vec![];
        }
        let dp = p.derivative();
        let a = p.gcd(&dp);
        let mut b = p.div_exact(&a).unwrap();
        let mut c = dp.div_exact(&a).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1usize;
        loop {
            let f = b.gcd(&d);
            if f.degree_or_zero() > 0 {
                out.push((f.clone(), i));
            }
            b = b.div_exact(&f).unwrap();
            if b.degree().is_none() || b.degree_or_zero() == 0 {
                break;
            }
            c = d.div_exact(&f).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
            let _ = &a;
        }
        out
    }

    /// Cauchy root bound: every complex root has modulus below
    /// `1 + max |a_i / a_n|`.
    pub fn cauchy_bound(&self) -> Rat {
        assert!(!self.is_zero());
        let lc = self.lc();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let v = (c / &lc).abs();
            if v > m {
                m = v;
            }
        }
        m + Rat::one()
    }

    /// Sign of the polynomial at a rational point.
    pub fn sign_at(&self, x: &Rat) -> Ordering {
        self.eval(x).cmp(&Rat::zero())
    }

    /// Sign at +infinity (sign of leading coefficient) or -infinity.
    pub fn sign_at_infinity(&self, positive: bool) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let lc_sign = self.lc().cmp(&Rat::zero());
        if positive || self.degree_or_zero().is_multiple_of(2) {
            lc_sign
        } else {
            lc_sign.reverse()
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{}", rat_to_string(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", rat_to_string(&a))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `C(x, k)` as a polynomial in `x`: `x (x-1) ... (x-k+1) / k!`.
pub fn binomial_poly(k: u64) -> Poly {
    let mut p = Poly::one();
    for j in 0..k {
        p = p.mul(&Poly::x_minus(&rat_int(j as i64)));
    }
    let mut fact = Rat::one();
    for j in 1..=k {
        fact *= rat_int(j as i64);
    }
    p.mul_scalar(&fact.recip())
}
