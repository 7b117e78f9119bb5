//! Null-eigenvalue reduction: degenerate instances restrict to the column
//! space of `A^d`, where the matrix acts invertibly.

use crate::instance::{OrbitInstance, Ring};
use crate::predicate::{canonical_set, Certificate, Provenance};
use crate::ratmat::{
    column_space_restriction, mat_pow, mat_vec, row_space_basis, RatMatrix, RatVector,
};
use crate::Result;

pub struct Case1Reduction {
    /// Iterates `A^n X` for `n < d`, the range checked for direct equality.
    pub checked_prefix: Vec<RatVector>,
    pub outcome: Case1Outcome,
}

pub enum Case1Outcome {
    /// The target violates the linear constraints of `Im(A^d)`.
    ImageCertificate(Certificate),
    /// The target lies in the stable image: the instance restricts to it.
    Reduced {
        power: u64,
        constraints: RatMatrix,
        embed: RatMatrix,
        project: RatMatrix,
        reduced: OrbitInstance,
    },
    /// Invertible matrix: nothing to reduce.
    Identity,
}

/// Reduction of a singular instance through the stable column space
/// `Im(A^d)` (`d` the dimension).
///
/// Every iterate from `d` on lies in the stable image. If the target does
/// not, its defining equations are a certificate whose index is the first
/// step after which the orbit stays inside. Otherwise the instance descends
/// to the restriction, with the start advanced by `d` steps.
pub fn case1_reduce(inst: &OrbitInstance) -> Result<Case1Reduction> {
    let d = inst.dim();
    let power = d as u64;
    let stable = mat_pow(&inst.a, power)?;
    let cs = column_space_restriction(&stable)?;
    let checked_prefix = crate::oracle::orbit_prefix(&inst.a, &inst.x, power.saturating_sub(1))?;
    if cs.rank() == d {
        return Ok(Case1Reduction {
            checked_prefix,
            outcome: Case1Outcome::Identity,
        });
    }

    // Annihilator equations of the stable image, canonical rows.
    let residual = RatMatrix::identity(d).sub(&cs.embed.mul(&cs.project)?)?;
    let rows = row_space_basis(&residual);
    let mut constraints = RatMatrix::zero(rows.len(), d);
    for (i, r) in rows.iter().enumerate() {
        for c in 0..d {
            *constraints.get_mut(i, c) = r.get(c).clone();
        }
    }

    if !cs.contains(&inst.y)? {
        // Index: first step from which the whole remaining prefix (and hence
        // the tail) lies inside the stable image.
        let mut index = 0u64;
        for (n, iterate) in checked_prefix.iter().enumerate() {
            if !cs.contains(iterate)? {
                index = n as u64 + 1;
            }
        }
        let provenance = Provenance::Case1Image {
            constraints,
            power,
        };
        let set = canonical_set(&provenance, inst)?;
        return Ok(Case1Reduction {
            checked_prefix,
            outcome: Case1Outcome::ImageCertificate(Certificate {
                index: index as i64,
                set,
                provenance,
            }),
        });
    }

    let reduced_matrix = cs.project.mul(&inst.a)?.mul(&cs.embed)?;
    let advanced = mat_vec(&stable, &inst.x)?;
    let reduced_start = mat_vec(&cs.project, &advanced)?;
    let reduced_target = mat_vec(&cs.project, &inst.y)?;
    let reduced = OrbitInstance::new(reduced_matrix, reduced_start, reduced_target, Ring::Q)?;
    Ok(Case1Reduction {
        checked_prefix,
        outcome: Case1Outcome::Reduced {
            power,
            constraints,
            embed: cs.embed,
            project: cs.project,
            reduced,
        },
    })
}

/// Lifts a certificate of the reduced instance back to the original one.
pub fn lift_certificate(
    inst: &OrbitInstance,
    power: u64,
    constraints: RatMatrix,
    embed: RatMatrix,
    project: RatMatrix,
    reduced: &OrbitInstance,
    inner: Certificate,
) -> Result<Certificate> {
    let index = inner.index.max(0) as u64 + power;
    let provenance = Provenance::Case1Reduced {
        power,
        constraints,
        embed,
        project,
        reduced_matrix: reduced.a.clone(),
        reduced_start: reduced.x.clone(),
        reduced_target: reduced.y.clone(),
        inner: Box::new(inner),
    };
    let set = canonical_set(&provenance, inst)?;
    Ok(Certificate {
        index: index as i64,
        set,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{eval_predicate, verify_certificate};
    use crate::ratmat::{rat_int, RatMatrix};

    #[test]
    fn nilpotent_coordinate_certificate() {
        // A = diag(0, 2), X = (5, 1), Y = (3, 64): first coordinate must die.
        let inst = OrbitInstance::new(
            RatMatrix::diagonal(&[rat_int(0), rat_int(2)]),
            RatVector::from_ints(&[5, 1]),
            RatVector::from_ints(&[3, 64]),
            Ring::Q,
        )
        .unwrap();
        let red = case1_reduce(&inst).unwrap();
        let Case1Outcome::ImageCertificate(cert) = red.outcome else {
            panic!("expected an image certificate");
        };
        assert_eq!(cert.index, 1);
        // Set is {v : v1 = 0}.
        assert!(!eval_predicate(&cert.set, &inst.y).unwrap());
        assert!(eval_predicate(&cert.set, &RatVector::from_ints(&[0, 7])).unwrap());
        let report = verify_certificate(&inst, &cert, 50).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn nilpotent_everything_dies() {
        // A = [[0,1],[0,0]], X = (1,1), Y = (0,1): iterates vanish from n=2.
        let inst = OrbitInstance::new(
            RatMatrix::from_ints(&[&[0, 1], &[0, 0]]),
            RatVector::from_ints(&[1, 1]),
            RatVector::from_ints(&[0, 1]),
            Ring::Q,
        )
        .unwrap();
        let red = case1_reduce(&inst).unwrap();
        let Case1Outcome::ImageCertificate(cert) = red.outcome else {
            panic!("expected an image certificate");
        };
        assert_eq!(cert.index, 2);
        // Im(A^2) = {0}: the set pins every coordinate to zero.
        assert!(eval_predicate(&cert.set, &RatVector::from_ints(&[0, 0])).unwrap());
        assert!(!eval_predicate(&cert.set, &inst.y).unwrap());
        let report = verify_certificate(&inst, &cert, 50).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn invertible_reduction_is_identity() {
        let inst = OrbitInstance::new(
            RatMatrix::from_ints(&[&[2, 1], &[1, 1]]),
            RatVector::from_ints(&[1, 0]),
            RatVector::from_ints(&[9, 9]),
            Ring::Q,
        )
        .unwrap();
        let red = case1_reduce(&inst).unwrap();
        assert!(matches!(red.outcome, Case1Outcome::Identity));
        assert_eq!(red.checked_prefix.len(), 2);
    }

    #[test]
    fn reduction_into_stable_image() {
        // A = diag(0, 2), Y inside the image.
        let inst = OrbitInstance::new(
            RatMatrix::diagonal(&[rat_int(0), rat_int(2)]),
            RatVector::from_ints(&[5, 1]),
            RatVector::from_ints(&[0, 64]),
            Ring::Q,
        )
        .unwrap();
        let red = case1_reduce(&inst).unwrap();
        let Case1Outcome::Reduced { power, reduced, .. } = red.outcome else {
            panic!("expected a reduction");
        };
        assert_eq!(power, 2);
        assert_eq!(reduced.dim(), 1);
        // Reduced instance: a = [2], x = 4 (second coordinate of A^2 X), y = 64.
        assert_eq!(reduced.a, RatMatrix::from_ints(&[&[2]]));
        assert_eq!(reduced.x, RatVector::from_ints(&[4]));
        assert_eq!(reduced.y, RatVector::from_ints(&[64]));
    }
}
