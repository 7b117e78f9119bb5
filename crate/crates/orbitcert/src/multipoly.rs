//! Small dense-exponent multivariate polynomials over the rationals, used by
//! predicate atoms and the elevation expansion. Terms are keyed by exponent
//! vectors in a BTreeMap, so iteration order is deterministic.

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::ratmat::{rat_to_string, Rat, RatMatrix, RatVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(vars: usize) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Rat) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn var(vars: usize, i: usize) -> Self {
        assert!(i < vars);
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = MultiPoly::zero(vars);
        p.terms.insert(e, Rat::one());
        p
    }

    /// The linear polynomial `<form, v>`.
    pub fn from_linear_form(form: &RatVector) -> Self {
        let mut p = MultiPoly::zero(form.dim());
        for (i, c) in form.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; form.dim()];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    /// A single monomial with the given exponents and coefficient.
    pub fn monomial(exponents: Vec<u32>, coeff: Rat) -> Self {
        let vars = exponents.len();
        let mut p = MultiPoly::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exponents: &[u32]) -> Rat {
        self.terms.get(exponents).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn insert_add(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            // Re-fetch the key to remove; simplest is retain.
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(self.vars);
        }
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, other.vars);
        let mut out = MultiPoly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> MultiPoly {
        let mut result = MultiPoly::constant(self.vars, Rat::one());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn eval(&self, point: &RatVector) -> Rat {
        assert_eq!(point.dim(), self.vars, "evaluation point dimension");
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    term *= point.get(i);
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `v_i -> <row_i(map), w>`: the polynomial pulled back along
    /// the linear map `v = map * w`.
    pub fn substitute_linear(&self, map: &RatMatrix) -> MultiPoly {
        assert_eq!(map.rows(), self.vars, "substitution map rows");
        let new_vars = map.cols();
        let forms: Vec<MultiPoly> = (0..map.rows())
            .map(|i| MultiPoly::from_linear_form(&map.row(i)))
            .collect();
        let mut out = MultiPoly::zero(new_vars);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(new_vars, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&forms[i].pow(exp));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Extends the variable space to `new_vars`, keeping existing indices.
    pub fn embed_vars(&self, new_vars: usize) -> MultiPoly {
        assert!(new_vars >= self.vars);
        MultiPoly {
            vars: new_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.clone();
                    ne.resize(new_vars, 0);
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    /// If the polynomial is linear with no constant term, its coefficient
    /// vector.
    pub fn as_linear_form(&self) -> Option<RatVector> {
        let mut coeffs = vec![Rat::zero(); self.vars];
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() != 1 {
                return None;
            }
            let i = e.iter().position(|&x| x == 1).unwrap();
            coeffs[i] = c.clone();
        }
        Some(RatVector::new(coeffs))
    }
}

fn var_name(i: usize, vars: usize) -> String {
    if vars <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first, then lexicographic.
        let mut terms: Vec<(&Vec<u32>, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        use num_traits::Signed;
        let mut first = true;
        for (e, c) in terms {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            let is_const = e.iter().all(|&x| x == 0);
            if !a.is_one() || is_const {
                write!(f, "{}", rat_to_string(&a))?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut started = false;
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if started {
                    write!(f, "*")?;
                }
                started = true;
                write!(f, "{}", var_name(i, self.vars))?;
                if exp > 1 {
                    write!(f, "^{exp}")?;
                }
            }
        }
        Ok(())
    }
}
