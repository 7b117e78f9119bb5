//! Semialgebraic predicate AST, certificates, and synthesis outcomes.
//!
//! A predicate describes a subset of `Q^d` as a boolean combination of
//! polynomial comparisons, absolute-value threshold atoms over linear forms,
//! congruence atoms, and existential algebraic coefficients (`AuxRoot`).
//! Predicates are closed: an auxiliary variable only occurs inside the body
//! of the `AuxRoot` that binds it, where body polynomials use variable
//! indices `0..dim` for instance variables and `dim`, `dim+1`, ... for the
//! auxiliary variables in binding order.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::multipoly::MultiPoly;
use crate::polyalg::poly::Poly;
use crate::ratmat::{rat_to_string, Rat, RatMatrix, RatVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Cmp {
    pub fn holds(&self, lhs: &Rat, rhs: &Rat) -> bool {
        match self {
            Cmp::Lt => lhs < rhs,
            Cmp::Le => lhs <= rhs,
            Cmp::Gt => lhs > rhs,
            Cmp::Ge => lhs >= rhs,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Gt => ">",
            Cmp::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "atom")]
pub enum Atom {
    /// `poly(v) = rhs`
    PolyEq {
        poly: MultiPoly,
        #[serde(with = "crate::jsonio::rat_str")]
        rhs: Rat,
    },
    /// `poly(v) <= rhs`
    PolyLe {
        poly: MultiPoly,
        #[serde(with = "crate::jsonio::rat_str")]
        rhs: Rat,
    },
    /// `poly(v) < rhs`
    PolyLt {
        poly: MultiPoly,
        #[serde(with = "crate::jsonio::rat_str")]
        rhs: Rat,
    },
    /// `|<form, v>| cmp bound`
    AbsCmp {
        form: RatVector,
        cmp: Cmp,
        #[serde(with = "crate::jsonio::rat_str")]
        bound: Rat,
    },
    /// `<form, v>` is an integer multiple of `modulus`, optionally at least
    /// `threshold`.
    Congruence {
        form: RatVector,
        #[serde(with = "crate::jsonio::rat_str")]
        modulus: Rat,
        #[serde(with = "crate::jsonio::rat_opt", default, skip_serializing_if = "Option::is_none")]
        threshold: Option<Rat>,
    },
    /// Existentially bound algebraic coefficient: some root of `defining`
    /// within `[lo, hi]` satisfies `body`.
    AuxRoot {
        var_name: String,
        defining: Poly,
        #[serde(with = "crate::jsonio::rat_opt", default, skip_serializing_if = "Option::is_none")]
        lo: Option<Rat>,
        #[serde(with = "crate::jsonio::rat_opt", default, skip_serializing_if = "Option::is_none")]
        hi: Option<Rat>,
        body: Box<Predicate>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node")]
pub enum Predicate {
    And { items: Vec<Predicate> },
    Or { items: Vec<Predicate> },
    Atom { atom: Atom },
}

impl Predicate {
    pub fn atom(atom: Atom) -> Self {
        Predicate::Atom { atom }
    }

    pub fn and(items: Vec<Predicate>) -> Self {
        Predicate::And { items }
    }

    pub fn or(items: Vec<Predicate>) -> Self {
        Predicate::Or { items }
    }

    /// `{v : |<form,v>| >= bound}` and friends.
    pub fn abs_cmp(form: RatVector, cmp: Cmp, bound: Rat) -> Self {
        Predicate::atom(Atom::AbsCmp { form, cmp, bound })
    }

    /// `{v : poly(v) = rhs}`
    pub fn poly_eq(poly: MultiPoly, rhs: Rat) -> Self {
        Predicate::atom(Atom::PolyEq { poly, rhs })
    }

    /// `{v : poly(v) > rhs}` as a `PolyLt` on the negation.
    pub fn poly_gt(poly: MultiPoly, rhs: Rat) -> Self {
        Predicate::atom(Atom::PolyLt {
            poly: poly.neg(),
            rhs: -rhs,
        })
    }

    /// `{v : poly(v) >= rhs}`.
    pub fn poly_ge(poly: MultiPoly, rhs: Rat) -> Self {
        Predicate::atom(Atom::PolyLe {
            poly: poly.neg(),
            rhs: -rhs,
        })
    }

    /// Substitutes `v = map * w`, re-expressing the predicate over the `w`
    /// variables. Linear-form atoms become polynomial atoms when needed.
    pub fn compose_linear(&self, map: &RatMatrix) -> Predicate {
        match self {
            Predicate::And { items } => {
                Predicate::and(items.iter().map(|p| p.compose_linear(map)).collect())
            }
            Predicate::Or { items } => {
                Predicate::or(items.iter().map(|p| p.compose_linear(map)).collect())
            }
            Predicate::Atom { atom } => {
                let composed = match atom {
                    Atom::PolyEq { poly, rhs } => Atom::PolyEq {
                        poly: poly.substitute_linear(map),
                        rhs: rhs.clone(),
                    },
                    Atom::PolyLe { poly, rhs } => Atom::PolyLe {
                        poly: poly.substitute_linear(map),
                        rhs: rhs.clone(),
                    },
                    Atom::PolyLt { poly, rhs } => Atom::PolyLt {
                        poly: poly.substitute_linear(map),
                        rhs: rhs.clone(),
                    },
                    Atom::AbsCmp { form, cmp, bound } => {
                        let poly = MultiPoly::from_linear_form(form).substitute_linear(map);
                        match poly.as_linear_form() {
                            Some(new_form) => Atom::AbsCmp {
                                form: new_form,
                                cmp: *cmp,
                                bound: bound.clone(),
                            },
                            None => unreachable!("linear substitution keeps degree"),
                        }
                    }
                    Atom::Congruence {
                        form,
                        modulus,
                        threshold,
                    } => {
                        let poly = MultiPoly::from_linear_form(form).substitute_linear(map);
                        Atom::Congruence {
                            form: poly.as_linear_form().expect("linear"),
                            modulus: modulus.clone(),
                            threshold: threshold.clone(),
                        }
                    }
                    Atom::AuxRoot { .. } => {
                        unimplemented!("composition under aux binders is not needed")
                    }
                };
                Predicate::atom(composed)
            }
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::And { items } => {
                if items.is_empty() {
                    return write!(f, "true");
                }
                for (i, p) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " && ")?;
                    }
                    write!(f, "({p})")?;
                }
                Ok(())
            }
            Predicate::Or { items } => {
                if items.is_empty() {
                    return write!(f, "false");
                }
                for (i, p) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " || ")?;
                    }
                    write!(f, "({p})")?;
                }
                Ok(())
            }
            Predicate::Atom { atom } => write!(f, "{atom}"),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::PolyEq { poly, rhs } => write!(f, "{poly} = {}", rat_to_string(rhs)),
            Atom::PolyLe { poly, rhs } => write!(f, "{poly} <= {}", rat_to_string(rhs)),
            Atom::PolyLt { poly, rhs } => write!(f, "{poly} < {}", rat_to_string(rhs)),
            Atom::AbsCmp { form, cmp, bound } => {
                let p = MultiPoly::from_linear_form(form);
                write!(f, "|{p}| {} {}", cmp.symbol(), rat_to_string(bound))
            }
            Atom::Congruence {
                form,
                modulus,
                threshold,
            } => {
                let p = MultiPoly::from_linear_form(form);
                write!(f, "{p} in {}*Z", rat_to_string(modulus))?;
                if let Some(t) = threshold {
                    write!(f, " and {p} >= {}", rat_to_string(t))?;
                }
                Ok(())
            }
            Atom::AuxRoot {
                var_name,
                defining,
                lo,
                hi,
                body,
            } => {
                write!(f, "exists {var_name} with {defining} = 0")?;
                if let Some(lo) = lo {
                    write!(f, ", {var_name} >= {}", rat_to_string(lo))?;
                }
                if let Some(hi) = hi {
                    write!(f, ", {var_name} <= {}", rat_to_string(hi))?;
                }
                write!(f, ": ({body})")
            }
        }
    }
}

/// How `n` relates the orbit to the certificate set in a case-2 certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrowthShape {
    /// `|lambda| > 1`: pairings grow, set is `|<phi,v>| >= |lambda| c`.
    Grow,
    /// `|lambda| < 1`: pairings shrink, set is `|<phi,v>| <= |lambda| c`.
    Shrink,
    /// `<phi, X> = 0`: the orbit pairing is identically zero.
    ZeroStart,
    /// `<phi, Y> = 0` with growth: set is `|<phi,v>| > 0`.
    AvoidZero,
}

/// Machine-checkable origin of a certificate; carries exactly the data the
/// oracle needs to replay the symbolic tail argument.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum Provenance {
    /// Eigenvector certificate (possibly over elevated coordinates).
    Case2 {
        form: RatVector,
        #[serde(with = "crate::jsonio::rat_str")]
        lambda: Rat,
        elevation: Option<usize>,
        shape: GrowthShape,
    },
    /// Generalized-eigenvector growth certificate: the orbit pairing with
    /// `form` follows `q_even(m)` at `n = 2m` and `q_odd(m)` at `n = 2m+1`.
    Case3Growth {
        form: RatVector,
        lambda_sign: i8,
        q_even: Poly,
        q_odd: Poly,
        #[serde(with = "crate::jsonio::rat_str")]
        c: Rat,
        /// One-sided simplification: `Some(true)` means the tail is
        /// eventually above `c`, `Some(false)` eventually below `-c`.
        one_sided: Option<bool>,
        elevation: Option<usize>,
    },
    /// Lattice certificate: the orbit pairing is an integer multiple of the
    /// modulus (after the constant offset folded into the form), the target
    /// value is not.
    Case3Congruence {
        form: RatVector,
        #[serde(with = "crate::jsonio::rat_str")]
        modulus: Rat,
        q_even: Poly,
        q_odd: Poly,
        lambda_sign: i8,
        #[serde(with = "crate::jsonio::rat_opt", default, skip_serializing_if = "Option::is_none")]
        threshold: Option<Rat>,
    },
    /// Equality certificate from a modulus-one rational eigenvector.
    EigenEquality {
        form: RatVector,
        #[serde(with = "crate::jsonio::rat_str")]
        lambda: Rat,
        #[serde(with = "crate::jsonio::rat_str")]
        value: Rat,
        elevation: Option<usize>,
    },
    /// Invariant-quadratic certificate from a left 1-eigenvector of the
    /// degree-2 elevation.
    Case4Invariant {
        w: RatVector,
        #[serde(with = "crate::jsonio::rat_str")]
        qx: Rat,
    },
    /// Image-subspace certificate for singular matrices: the constraint rows
    /// annihilate `A^power`, so every iterate from `power` on satisfies them.
    Case1Image {
        constraints: RatMatrix,
        power: u64,
    },
    /// Certificate lifted from the restriction of the instance to the column
    /// space of `A^power`.
    Case1Reduced {
        power: u64,
        constraints: RatMatrix,
        embed: RatMatrix,
        project: RatMatrix,
        reduced_matrix: RatMatrix,
        reduced_start: RatVector,
        reduced_target: RatVector,
        inner: Box<Certificate>,
    },
    /// Integer-ring combination over residues modulo the root-of-unity order
    /// `l`: sub-certificate `r` covers iterations `n = l m + r`.
    IntegerCombined {
        l: u64,
        residues: Vec<ResidueCertificate>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidueCertificate {
    pub residue: u64,
    pub start: RatVector,
    pub certificate: Certificate,
}

/// A non-reachability certificate `(N, P)`.
///
/// The index is carried as a signed integer so that corrupted inputs (for
/// example a negative index in a hand-edited file) are representable and can
/// be rejected by the oracle rather than at parse time; synthesis only emits
/// nonnegative indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub index: i64,
    pub set: Predicate,
    pub provenance: Provenance,
}

/// Reason codes for inconclusive outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reason {
    /// Diagonalizable modulus-one case where the target may lie in the orbit
    /// closure; the completeness test is out of scope.
    ClosureInconclusive,
    /// Elevation would exceed the configured basis-size cap.
    ElevationCapExceeded,
    /// No usable rational eigen-object was found on any attempted route.
    NoUsableEigenvector,
    /// A sub-instance of the integer route came back inconclusive.
    ResidueInconclusive,
}

impl Reason {
    pub fn code(&self) -> &'static str {
        match self {
            Reason::ClosureInconclusive => "closure-inconclusive",
            Reason::ElevationCapExceeded => "elevation-cap-exceeded",
            Reason::NoUsableEigenvector => "no-usable-eigenvector",
            Reason::ResidueInconclusive => "residue-inconclusive",
        }
    }
}

/// Outcome of certificate synthesis.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "outcome")]
pub enum CertifyOutcome {
    Certificate { certificate: Box<Certificate> },
    ReachableWitness { n: u64 },
    Inconclusive { reason: Reason, detail: String },
}

/// Rebuilds the certificate set a provenance record describes, against a
/// concrete instance. Synthesis emits exactly this set, and the oracle
/// recomputes it to confirm that a certificate's set matches the tail
/// argument its provenance claims.
pub fn canonical_set(prov: &Provenance, inst: &crate::instance::OrbitInstance) -> crate::Result<Predicate> {
    use crate::elevate::{elevate_vector, elevate_vector_in, monomial_basis};
    use crate::error::Error;
    use num_traits::{Signed, Zero};

    // The orbit pairing <form, Psi_k(v)> as a polynomial in v; linear when
    // there is no elevation.
    let pairing = |form: &RatVector, elevation: &Option<usize>| -> crate::Result<MultiPoly> {
        match elevation {
            None => Ok(MultiPoly::from_linear_form(form)),
            Some(k) => {
                let basis = monomial_basis(inst.dim(), *k)?;
                if basis.size() != form.dim() {
                    return Err(Error::DimensionMismatch {
                        op: "elevated pairing",
                        left: basis.size().to_string(),
                        right: form.dim().to_string(),
                    });
                }
                let mut acc = MultiPoly::zero(inst.dim());
                for (i, m) in basis.monomials().iter().enumerate() {
                    let c = form.get(i);
                    if !c.is_zero() {
                        acc = acc.add(&MultiPoly::monomial(m.clone(), c.clone()));
                    }
                }
                Ok(acc)
            }
        }
    };
    let target_pairing = |form: &RatVector, elevation: &Option<usize>| -> crate::Result<Rat> {
        match elevation {
            None => form.dot(&inst.y),
            Some(k) => form.dot(&elevate_vector(&inst.y, *k)?),
        }
    };
    // |q(v)| >= b as a predicate, staying linear when possible.
    let abs_ge = |form: &RatVector, elevation: &Option<usize>, bound: Rat, strict: bool| -> crate::Result<Predicate> {
        match elevation {
            None => Ok(Predicate::abs_cmp(
                form.clone(),
                if strict { Cmp::Gt } else { Cmp::Ge },
                bound,
            )),
            Some(_) => {
                let q = pairing(form, elevation)?;
                let upper = if strict {
                    Predicate::poly_gt(q.clone(), bound.clone())
                } else {
                    Predicate::poly_ge(q.clone(), bound.clone())
                };
                let lower = if strict {
                    Predicate::atom(Atom::PolyLt { poly: q, rhs: -bound })
                } else {
                    Predicate::atom(Atom::PolyLe { poly: q, rhs: -bound })
                };
                Ok(Predicate::or(vec![upper, lower]))
            }
        }
    };
    let abs_le = |form: &RatVector, elevation: &Option<usize>, bound: Rat| -> crate::Result<Predicate> {
        match elevation {
            None => Ok(Predicate::abs_cmp(form.clone(), Cmp::Le, bound)),
            Some(_) => {
                let q = pairing(form, elevation)?;
                Ok(Predicate::and(vec![
                    Predicate::atom(Atom::PolyLe {
                        poly: q.clone(),
                        rhs: bound.clone(),
                    }),
                    Predicate::poly_ge(q, -bound),
                ]))
            }
        }
    };

    match prov {
        Provenance::Case2 {
            form,
            lambda,
            elevation,
            shape,
        } => {
            let c = target_pairing(form, elevation)?.abs();
            let lam_abs = lambda.abs();
            match shape {
                GrowthShape::Grow => abs_ge(form, elevation, &lam_abs * &c, false),
                GrowthShape::Shrink => abs_le(form, elevation, &lam_abs * &c),
                GrowthShape::ZeroStart => Ok(Predicate::poly_eq(pairing(form, elevation)?, Rat::zero())),
                GrowthShape::AvoidZero => abs_ge(form, elevation, Rat::zero(), true),
            }
        }
        Provenance::Case3Growth {
            form,
            c,
            one_sided,
            elevation,
            ..
        } => match one_sided {
            Some(true) => Ok(Predicate::poly_gt(pairing(form, elevation)?, c.clone())),
            Some(false) => Ok(Predicate::atom(Atom::PolyLt {
                poly: pairing(form, elevation)?,
                rhs: -c.clone(),
            })),
            None => abs_ge(form, elevation, c.clone(), true),
        },
        Provenance::Case3Congruence {
            form,
            modulus,
            threshold,
            ..
        } => Ok(Predicate::atom(Atom::Congruence {
            form: form.clone(),
            modulus: modulus.clone(),
            threshold: threshold.clone(),
        })),
        Provenance::EigenEquality {
            form,
            lambda,
            value,
            elevation,
        } => {
            let q = pairing(form, elevation)?;
            if *lambda == crate::ratmat::rat_int(-1) {
                Ok(Predicate::poly_eq(q.clone().mul(&q), value * value))
            } else {
                Ok(Predicate::poly_eq(q, value.clone()))
            }
        }
        Provenance::Case4Invariant { w, qx } => {
            let basis = monomial_basis(inst.dim(), 2)?;
            let _ = elevate_vector_in(&basis, &inst.x); // dimension sanity
            if basis.size() != w.dim() {
                return Err(Error::DimensionMismatch {
                    op: "case-4 invariant",
                    left: basis.size().to_string(),
                    right: w.dim().to_string(),
                });
            }
            let mut q = MultiPoly::zero(inst.dim());
            for (i, m) in basis.monomials().iter().enumerate() {
                let c = w.get(i);
                if !c.is_zero() {
                    q = q.add(&MultiPoly::monomial(m.clone(), c.clone()));
                }
            }
            Ok(Predicate::poly_eq(q, qx.clone()))
        }
        Provenance::Case1Image { constraints, .. } => {
            let mut items = Vec::new();
            for r in 0..constraints.rows() {
                items.push(Predicate::poly_eq(
                    MultiPoly::from_linear_form(&constraints.row(r)),
                    Rat::zero(),
                ));
            }
            Ok(Predicate::and(items))
        }
        Provenance::Case1Reduced {
            constraints,
            project,
            reduced_matrix,
            reduced_start,
            reduced_target,
            inner,
            ..
        } => {
            let reduced_inst = crate::instance::OrbitInstance::new(
                reduced_matrix.clone(),
                reduced_start.clone(),
                reduced_target.clone(),
                crate::instance::Ring::Q,
            )?;
            let inner_set = canonical_set(&inner.provenance, &reduced_inst)?;
            let mut items = Vec::new();
            for r in 0..constraints.rows() {
                items.push(Predicate::poly_eq(
                    MultiPoly::from_linear_form(&constraints.row(r)),
                    Rat::zero(),
                ));
            }
            items.push(inner_set.compose_linear(project));
            Ok(Predicate::and(items))
        }
        Provenance::IntegerCombined { l, residues } => {
            let a_l = crate::ratmat::mat_pow(&inst.a, *l)?;
            let mut items = Vec::new();
            for rc in residues {
                let sub_inst = crate::instance::OrbitInstance::new(
                    a_l.clone(),
                    rc.start.clone(),
                    inst.y.clone(),
                    crate::instance::Ring::Q,
                )?;
                items.push(canonical_set(&rc.certificate.provenance, &sub_inst)?);
            }
            Ok(Predicate::or(items))
        }
    }
}
