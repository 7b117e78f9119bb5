//! Invariant quadratics for diagonalizable matrices with every eigenvalue on
//! the unit circle. Each conjugate pair multiplies to 1, so the degree-2
//! elevation has the eigenvalue 1; a left 1-eigenvector `w` of the elevation
//! makes `q_w(v) = <w, elevate(v)>` invariant along the orbit as a polynomial
//! identity. Whenever some `q_w` tells `X` and `Y` apart, the level set of
//! `q_w` through `X` is a certificate with index 0. When every invariant
//! agrees the target may sit in the orbit closure, and the outcome is
//! inconclusive (the full closure test is out of scope).

use num_traits::One;

use crate::elevate::{elevate_matrix, elevate_vector};
use crate::error::Error;
use crate::instance::OrbitInstance;
use crate::predicate::{canonical_set, Certificate, CertifyOutcome, Provenance, Reason};
use crate::ratmat::{char_poly, poly_at_matrix, Rat};
use crate::spectral::left_eigenvectors;
use crate::Result;

use super::RunConfig;

/// Invariant-quadratic certificate, or `Inconclusive` when no quadratic
/// separates the target from the start.
pub fn case4_certificate(inst: &OrbitInstance, config: &RunConfig) -> Result<CertifyOutcome> {
    // Hypotheses: diagonalizable with all moduli one.
    let cp = char_poly(&inst.a)?;
    let sf = cp.square_free_part();
    if !poly_at_matrix(&sf, &inst.a)?.is_zero() {
        return Err(Error::HypothesisViolation {
            case: "case 4",
            detail: "matrix is not diagonalizable (square-free minimal polynomial test)"
                .to_string(),
        });
    }
    let groups = crate::polyalg::classify::classify_roots(&cp)?;
    if !groups
        .iter()
        .all(|g| g.class.tag == crate::polyalg::classify::ModulusTag::EqualOne)
    {
        return Err(Error::HypothesisViolation {
            case: "case 4",
            detail: "all eigenvalues must have modulus one".to_string(),
        });
    }

    let elevation = elevate_matrix(&inst.a, 2)?;
    let x2 = elevate_vector(&inst.x, 2)?;
    let y2 = elevate_vector(&inst.y, 2)?;
    for w in left_eigenvectors(&elevation.matrix, &Rat::one())? {
        let qx = w.dot(&x2)?;
        let qy = w.dot(&y2)?;
        if qx != qy {
            let provenance = Provenance::Case4Invariant { w, qx };
            let set = canonical_set(&provenance, inst)?;
            let cert = Certificate {
                index: 0,
                set,
                provenance,
            };
            super::validate(inst, &cert, config.horizon)?;
            return Ok(CertifyOutcome::Certificate {
                certificate: Box::new(cert),
            });
        }
    }
    Ok(CertifyOutcome::Inconclusive {
        reason: Reason::ClosureInconclusive,
        detail: "every degree-2 invariant agrees on start and target; the target may lie in \
                 the orbit closure (completeness test out of scope)"
            .to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Ring;
    use crate::oracle::eval_predicate;
    use crate::ratmat::{rat, RatMatrix, RatVector};

    fn rotation() -> RatMatrix {
        RatMatrix::from_rows(vec![
            vec![rat(4, 5), rat(-3, 5)],
            vec![rat(3, 5), rat(4, 5)],
        ])
    }

    #[test]
    fn rotation_circle_certificate() {
        let inst = OrbitInstance::new(
            rotation(),
            RatVector::from_ints(&[1, 0]),
            RatVector::new(vec![rat(3, 2), rat(7, 10)]),
            Ring::Q,
        )
        .unwrap();
        let outcome = case4_certificate(&inst, &RunConfig::default()).unwrap();
        let CertifyOutcome::Certificate { certificate } = outcome else {
            panic!("expected a certificate");
        };
        assert_eq!(certificate.index, 0);
        // q(Y) = 2.74 differs from q(X) = 1, and the set is a circle level set.
        assert!(!eval_predicate(&certificate.set, &inst.y).unwrap());
        assert!(eval_predicate(&certificate.set, &inst.x).unwrap());
    }

    #[test]
    fn rotation_antipode_inconclusive() {
        let inst = OrbitInstance::new(
            rotation(),
            RatVector::from_ints(&[1, 0]),
            RatVector::from_ints(&[-1, 0]),
            Ring::Q,
        )
        .unwrap();
        let outcome = case4_certificate(&inst, &RunConfig::default()).unwrap();
        match outcome {
            CertifyOutcome::Inconclusive { reason, .. } => {
                assert_eq!(reason, Reason::ClosureInconclusive);
            }
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn non_diagonalizable_rejected() {
        let inst = OrbitInstance::new(
            RatMatrix::from_ints(&[&[1, 1], &[0, 1]]),
            RatVector::from_ints(&[0, 1]),
            RatVector::from_ints(&[5, 1]),
            Ring::Q,
        )
        .unwrap();
        assert!(matches!(
            case4_certificate(&inst, &RunConfig::default()),
            Err(Error::HypothesisViolation { .. })
        ));
    }
}
