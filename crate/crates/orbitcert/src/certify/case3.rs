//! Generalized-eigenvector certificates for the eigenvalues 1 and -1.
//!
//! A chain `e_0..e_k` pairs the orbit into binomial sums: at `lambda = 1`,
//! `<e_k, A^n X>` is a polynomial in `n`; at `lambda = -1` it is such a
//! polynomial up to an alternating sign, handled by splitting even and odd
//! steps. A non-constant polynomial eventually clears any threshold, giving a
//! growth certificate; an integer-valued one pins the orbit to a lattice the
//! target misses, giving a congruence certificate. Complex modulus-one
//! eigenvalues are reached by elevating to degree 2 first, where their
//! pairwise products contribute the eigenvalue 1.

use num_traits::{One, Signed, Zero};

use super::Ctx;
use crate::elevate::{basis_size, elevate_matrix, elevate_vector};
use crate::error::Error;
use crate::instance::OrbitInstance;
use crate::polyalg::poly::{binomial_poly, Poly};
use crate::predicate::{canonical_set, Certificate, Provenance};
use crate::ratmat::{rat_int, Rat, RatMatrix, RatVector};
use crate::spectral::{jordan_chains, left_eigenvectors, EigenChain};
use crate::Result;

/// Builds a case-3 certificate from a chain for `lambda` in {1, -1} with
/// length at least 2: a congruence certificate when the orbit polynomial is
/// integer-lattice-valued and the target escapes the lattice, otherwise a
/// growth certificate. `None` when the chain cannot separate the target.
pub fn case3_certificate(inst: &OrbitInstance, chain: &EigenChain) -> Result<Option<Certificate>> {
    if chain.lambda.abs() != Rat::one() {
        return Err(Error::HypothesisViolation {
            case: "case 3",
            detail: "chain eigenvalue must be 1 or -1".to_string(),
        });
    }
    if chain.len() < 2 {
        return Err(Error::HypothesisViolation {
            case: "case 3",
            detail: "chain must have length at least 2".to_string(),
        });
    }
    chain.validate(&inst.a)?;
    synth_from_chain(inst, chain, None, u64::MAX)
}

pub(crate) fn synth_from_chain(
    inst: &OrbitInstance,
    chain: &EigenChain,
    elevation: Option<usize>,
    horizon: u64,
) -> Result<Option<Certificate>> {
    let x_e = match elevation {
        None => inst.x.clone(),
        Some(k) => elevate_vector(&inst.x, k)?,
    };
    let y_e = match elevation {
        None => inst.y.clone(),
        Some(k) => elevate_vector(&inst.y, k)?,
    };
    let negative = chain.lambda == rat_int(-1);
    let top = chain.top();

    // q(n) = sum_i C(n, i) lambda^(n-i) <e_(k-i), X>; for lambda = -1 the
    // alternating sign factors out per parity.
    let k = chain.len() - 1;
    let mut p = Poly::zero();
    for i in 0..=k {
        let pairing = chain.vectors[k - i].dot(&x_e)?;
        let mut coeff = pairing;
        if negative && i % 2 == 1 {
            coeff = -coeff;
        }
        p = p.add(&binomial_poly(i as u64).mul_scalar(&coeff));
    }
    // Parity split: value at n = 2m is q_even(m), at n = 2m+1 is q_odd(m).
    let two_m = Poly::from_ints(&[0, 2]);
    let two_m1 = Poly::from_ints(&[1, 2]);
    let (q_even, q_odd) = if negative {
        (p.compose(&two_m), p.compose(&two_m1).neg())
    } else {
        (p.compose(&two_m), p.compose(&two_m1))
    };

    if q_even.is_constant() && q_odd.is_constant() {
        return Ok(None);
    }

    // Congruence route first: a sharper arithmetic obstruction when the
    // orbit values live on a lattice the target misses.
    if !negative {
        if let Some(cert) =
            congruence_route(inst, top, &p, &q_even, &q_odd, &x_e, &y_e, elevation, horizon)?
        {
            return Ok(Some(cert));
        }
    }

    // Growth route.
    let c = top.dot(&y_e)?.abs();
    let one_sided = if negative {
        eventual_side(&q_even).and_then(|se| {
            eventual_side(&q_odd).and_then(|so| if se == so { Some(se) } else { None })
        })
    } else {
        eventual_side(&q_even)
    };
    // Membership scan up to the settle bound.
    let settle = crate::oracle::case3_settle_bound(&q_even, &q_odd, &c);
    if settle + 1 > horizon {
        return Ok(None);
    }
    let member = |n: u64| -> Result<bool> {
        let m = rat_int((n / 2) as i64);
        let value = if n.is_multiple_of(2) {
            q_even.eval(&m)
        } else {
            q_odd.eval(&m)
        };
        Ok(match one_sided {
            Some(true) => value > c,
            Some(false) => value < -c.clone(),
            None => value.abs() > c,
        })
    };
    if !member(settle)? || !member(settle + 1)? {
        return Ok(None);
    }
    let mut index = settle + 1;
    while index > 0 && member(index - 1)? {
        index -= 1;
    }
    let provenance = Provenance::Case3Growth {
        form: top.clone(),
        lambda_sign: if negative { -1 } else { 1 },
        q_even,
        q_odd,
        c,
        one_sided,
        elevation,
    };
    let set = canonical_set(&provenance, inst)?;
    Ok(Some(Certificate {
        index: index as i64,
        set,
        provenance,
    }))
}

/// Side a nonconstant polynomial settles on: `Some(true)` for eventually
/// positive unbounded, `Some(false)` for eventually negative; `None` for
/// constants.
fn eventual_side(q: &Poly) -> Option<bool> {
    if q.is_constant() {
        return None;
    }
    Some(q.lc().is_positive())
}

#[allow(clippy::too_many_arguments)]
fn congruence_route(
    inst: &OrbitInstance,
    top: &RatVector,
    p: &Poly,
    q_even: &Poly,
    q_odd: &Poly,
    x_e: &RatVector,
    y_e: &RatVector,
    elevation: Option<usize>,
    horizon: u64,
) -> Result<Option<Certificate>> {
    if elevation.is_some() {
        // Congruence atoms are linear forms over the instance variables.
        return Ok(None);
    }
    // Binomial-basis coefficients of p: finite differences at zero.
    let mut coeffs = Vec::new();
    let mut diffs = p.clone();
    loop {
        coeffs.push(diffs.eval(&Rat::zero()));
        if diffs.is_constant() {
            break;
        }
        diffs = diffs.shift_arg(&Rat::one()).sub(&diffs);
    }
    let offset = coeffs[0].clone();
    let modulus = super::rat_lattice_gcd(coeffs.into_iter().skip(1));
    if modulus.is_zero() {
        return Ok(None);
    }

    // The orbit values q(n) lie in offset + modulus*Z. When the offset is off
    // the lattice, fold it into the form through a constant direction: a
    // lambda-1 eigenvector psi with <psi, X> = <psi, Y> = 1.
    let mut form = top.clone();
    let mut shift = Rat::zero();
    if !(&offset / &modulus).denom().is_one() {
        let Some(psi) = constant_direction(inst, x_e, y_e)? else {
            return Ok(None);
        };
        form = form.sub(&psi.scale(&offset))?;
        shift = offset;
    }
    let target_value = form.dot(y_e)?;
    if (&target_value / &modulus).denom().is_one() {
        // Target sits on the lattice: congruence alone cannot separate.
        return Ok(None);
    }
    // Orbit polynomials of the (possibly shifted) form.
    let qe = q_even.sub(&Poly::constant(shift.clone()));
    let qo = q_odd.sub(&Poly::constant(shift));
    // Optional threshold: the minimum orbit value, defined when both parity
    // tracks eventually grow.
    let settle = crate::oracle::case3_settle_bound(&qe, &qo, &Rat::zero());
    if settle + 1 > horizon {
        return Ok(None);
    }
    let grows = |q: &Poly| q.is_constant() || eventual_side(q) == Some(true);
    let threshold = if grows(&qe) && grows(&qo) {
        let value_at = |n: u64| -> Rat {
            let m = rat_int((n / 2) as i64);
            if n.is_multiple_of(2) {
                qe.eval(&m)
            } else {
                qo.eval(&m)
            }
        };
        let mut min = value_at(0);
        for n in 1..=settle + 1 {
            let v = value_at(n);
            if v < min {
                min = v;
            }
        }
        Some(min)
    } else {
        None
    };

    let provenance = Provenance::Case3Congruence {
        form,
        modulus,
        q_even: qe,
        q_odd: qo,
        lambda_sign: 1,
        threshold,
    };
    let set = canonical_set(&provenance, inst)?;
    Ok(Some(Certificate {
        index: 0,
        set,
        provenance,
    }))
}

/// A lambda-1 left eigenvector pairing to exactly 1 against both the start
/// and the target (the constant coordinate of affine embeddings).
fn constant_direction(
    inst: &OrbitInstance,
    x_e: &RatVector,
    y_e: &RatVector,
) -> Result<Option<RatVector>> {
    for psi in left_eigenvectors(&inst.a, &Rat::one())? {
        let px = psi.dot(x_e)?;
        let py = psi.dot(y_e)?;
        if !px.is_zero() && px == py {
            return Ok(Some(psi.scale(&px.recip())));
        }
    }
    Ok(None)
}

/// Equality separation by a modulus-one rational eigenvector: the pairing is
/// constant (or alternating) along the orbit and differs at the target.
fn eigen_equality(
    inst: &OrbitInstance,
    lambda: &Rat,
    phi: &RatVector,
) -> Result<Option<Certificate>> {
    let vx = phi.dot(&inst.x)?;
    let vy = phi.dot(&inst.y)?;
    let separated = if *lambda == rat_int(1) {
        vx != vy
    } else {
        vx.abs() != vy.abs()
    };
    if !separated {
        return Ok(None);
    }
    let provenance = Provenance::EigenEquality {
        form: phi.clone(),
        lambda: lambda.clone(),
        value: vx,
        elevation: None,
    };
    let set = canonical_set(&provenance, inst)?;
    Ok(Some(Certificate {
        index: 0,
        set,
        provenance,
    }))
}

/// Case-3 driver: equality separation by modulus-one eigenvectors, then
/// chains on the matrix itself, then chains of the degree-2 elevation when
/// complex modulus-one eigenvalues demand it.
pub(crate) fn try_case3(
    ctx: &Ctx<'_>,
    alternates: &mut Vec<Certificate>,
) -> Result<Option<Certificate>> {
    let inst = ctx.inst;
    let mut winner: Option<Certificate> = None;
    let push = |cert: Certificate,
                    winner: &mut Option<Certificate>,
                    alternates: &mut Vec<Certificate>|
     -> bool {
        if ctx.config.emit_all {
            alternates.push(cert.clone());
            winner.get_or_insert(cert);
            false
        } else {
            *winner = Some(cert);
            true
        }
    };

    let unit_rational: Vec<Rat> = ctx
        .rational_roots
        .iter()
        .map(|(r, _)| r.clone())
        .filter(|r| r.abs() == Rat::one())
        .collect();

    for lambda in &unit_rational {
        for phi in left_eigenvectors(&inst.a, lambda)? {
            if let Some(cert) = eigen_equality(inst, lambda, &phi)? {
                super::validate(inst, &cert, ctx.config.horizon)?;
                if push(cert, &mut winner, alternates) {
                    return Ok(winner);
                }
            }
        }
    }

    for lambda in &unit_rational {
        for chain in jordan_chains(&inst.a, lambda)? {
            if chain.len() < 2 {
                continue;
            }
            if let Some(cert) = synth_from_chain(inst, &chain, None, ctx.config.horizon)? {
                super::validate(inst, &cert, ctx.config.horizon)?;
                if push(cert, &mut winner, alternates) {
                    return Ok(winner);
                }
            }
        }
    }
    if winner.is_some() {
        return Ok(winner);
    }

    // Complex modulus-one eigenvalues: their conjugate products contribute
    // the eigenvalue 1 to the degree-2 elevation; chains there certify.
    let has_complex_unit = ctx.groups.iter().any(|g| {
        g.class.tag == crate::polyalg::classify::ModulusTag::EqualOne && g.count == 2
    });
    if has_complex_unit {
        if let Some(size) = basis_size(inst.dim(), 2) {
            if size <= ctx.config.elevation_cap {
                let elevated = elevate_matrix(&inst.a, 2)?;
                if char_poly_has_root_one(&elevated.matrix)? {
                    for chain in jordan_chains(&elevated.matrix, &Rat::one())? {
                        if chain.len() < 2 {
                            continue;
                        }
                        if let Some(cert) =
                            synth_from_chain(inst, &chain, Some(2), ctx.config.horizon)?
                        {
                            super::validate(inst, &cert, ctx.config.horizon)?;
                            if push(cert, &mut winner, alternates) {
                                return Ok(winner);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(winner)
}

fn char_poly_has_root_one(m: &RatMatrix) -> Result<bool> {
    let cp = crate::ratmat::char_poly(m)?;
    Ok(cp.eval(&Rat::one()).is_zero())
}
