//! Integer-ring route: over the integers every modulus-one eigenvalue whose
//! conjugates also stay on the circle is a root of unity, so raising the
//! matrix to the least common order `L` turns them all into 1. The orbit
//! splits into `L` residue tracks, each an orbit problem for `A^L` whose
//! remaining modulus-one eigenvalues are exactly 1, and the per-residue
//! certificates recombine.

use num_integer::Integer;

use super::Ctx;
use crate::instance::{OrbitInstance, Ring};
use crate::predicate::{
    canonical_set, Certificate, CertifyOutcome, Provenance, Reason, ResidueCertificate,
};
use crate::ratmat::{mat_pow, mat_vec};
use crate::Result;

/// Combined certificate for integer instances with roots of unity of order
/// above one in the spectrum. `None` when the route does not apply (rational
/// ring, or no unity order above one).
pub(crate) fn integer_route(
    ctx: &Ctx<'_>,
    alternates: &mut Vec<Certificate>,
) -> Result<Option<CertifyOutcome>> {
    let inst = ctx.inst;
    if inst.ring != Ring::Z {
        return Ok(None);
    }
    let mut l: u64 = 1;
    for g in &ctx.groups {
        if let Some(m) = g.class.unity_order {
            l = l.lcm(&m);
        }
    }
    if l <= 1 {
        return Ok(None);
    }

    let a_l = mat_pow(&inst.a, l)?;
    let mut residues = Vec::with_capacity(l as usize);
    let mut max_index: i64 = 0;
    let sub_config = super::RunConfig {
        horizon: (ctx.config.horizon / l).max(inst.dim() as u64 + 8),
        ..ctx.config.clone()
    };
    for r in 0..l {
        let start = mat_vec(&mat_pow(&inst.a, r)?, &inst.x)?;
        let sub_inst = OrbitInstance::new(a_l.clone(), start.clone(), inst.y.clone(), Ring::Q)?;
        let report = super::certify(&sub_inst, &sub_config)?;
        match report.outcome {
            CertifyOutcome::ReachableWitness { n } => {
                return Ok(Some(CertifyOutcome::ReachableWitness { n: n * l + r }));
            }
            CertifyOutcome::Inconclusive { detail, .. } => {
                return Ok(Some(CertifyOutcome::Inconclusive {
                    reason: Reason::ResidueInconclusive,
                    detail: format!("residue {r} mod {l}: {detail}"),
                }));
            }
            CertifyOutcome::Certificate { certificate } => {
                max_index = max_index.max(certificate.index);
                residues.push(ResidueCertificate {
                    residue: r,
                    start,
                    certificate: *certificate,
                });
            }
        }
    }

    let index = l as i64 * max_index + l as i64;
    if index as u64 > ctx.config.horizon {
        return Ok(Some(CertifyOutcome::Inconclusive {
            reason: Reason::ResidueInconclusive,
            detail: format!(
                "combined index {index} exceeds the verification horizon {}",
                ctx.config.horizon
            ),
        }));
    }
    let provenance = Provenance::IntegerCombined { l, residues };
    let set = canonical_set(&provenance, inst)?;
    let cert = Certificate {
        index,
        set,
        provenance,
    };
    super::validate(inst, &cert, ctx.config.horizon)?;
    if ctx.config.emit_all {
        alternates.push(cert.clone());
    }
    Ok(Some(CertifyOutcome::Certificate {
        certificate: Box::new(cert),
    }))
}

#[cfg(test)]
mod tests {
    use super::super::{certify, RunConfig};
    use crate::instance::{OrbitInstance, Ring};
    use crate::oracle::eval_predicate;
    use crate::predicate::CertifyOutcome;
    use crate::ratmat::{RatMatrix, RatVector};

    #[test]
    fn quarter_turn_combined_certificate() {
        // Order-4 rotation: orbit of (1,0) is {(1,0),(0,1),(-1,0),(0,-1)}.
        let inst = OrbitInstance::new(
            RatMatrix::from_ints(&[&[0, -1], &[1, 0]]),
            RatVector::from_ints(&[1, 0]),
            RatVector::from_ints(&[2, 0]),
            Ring::Z,
        )
        .unwrap();
        let report = certify(&inst, &RunConfig::default()).unwrap();
        let CertifyOutcome::Certificate { certificate } = report.outcome else {
            panic!("expected certificate, got {:?}", report.outcome);
        };
        match &certificate.provenance {
            crate::predicate::Provenance::IntegerCombined { l, residues } => {
                assert_eq!(*l, 4);
                assert_eq!(residues.len(), 4);
            }
            other => panic!("expected combined provenance, got {other:?}"),
        }
        // The set contains the whole orbit and misses the target.
        for p in [
            RatVector::from_ints(&[1, 0]),
            RatVector::from_ints(&[0, 1]),
            RatVector::from_ints(&[-1, 0]),
            RatVector::from_ints(&[0, -1]),
        ] {
            assert!(eval_predicate(&certificate.set, &p).unwrap());
        }
        assert!(!eval_predicate(&certificate.set, &inst.y).unwrap());
        assert!(report.verification.unwrap().pass);
    }

    #[test]
    fn quarter_turn_reachable_witness_maps_back() {
        let inst = OrbitInstance::new(
            RatMatrix::from_ints(&[&[0, -1], &[1, 0]]),
            RatVector::from_ints(&[1, 0]),
            RatVector::from_ints(&[0, -1]),
            Ring::Z,
        )
        .unwrap();
        let report = certify(&inst, &RunConfig::default()).unwrap();
        match report.outcome {
            CertifyOutcome::ReachableWitness { n } => assert_eq!(n, 3),
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn unipotent_integer_instance_goes_through_case3() {
        // L = 1: the integer route defers and the congruence path certifies.
        let inst = OrbitInstance::new(
            RatMatrix::from_ints(&[&[1, 2], &[0, 1]]),
            RatVector::from_ints(&[0, 1]),
            RatVector::from_ints(&[5, 1]),
            Ring::Z,
        )
        .unwrap();
        assert!(
            crate::certify::integer_certificate(&inst, &RunConfig::default())
                .unwrap()
                .is_none()
        );
        let report = certify(&inst, &RunConfig::default()).unwrap();
        let CertifyOutcome::Certificate { certificate } = report.outcome else {
            panic!("expected certificate");
        };
        assert!(matches!(
            certificate.provenance,
            crate::predicate::Provenance::Case3Congruence { .. }
        ));
    }

    #[test]
    fn scalar_growth_integer_instance_goes_through_case2() {
        let inst = OrbitInstance::new(
            RatMatrix::diagonal(&[crate::ratmat::rat_int(2), crate::ratmat::rat_int(2)]),
            RatVector::from_ints(&[1, 1]),
            RatVector::from_ints(&[3, 3]),
            Ring::Z,
        )
        .unwrap();
        let report = certify(&inst, &RunConfig::default()).unwrap();
        let CertifyOutcome::Certificate { certificate } = report.outcome else {
            panic!("expected certificate");
        };
        assert!(matches!(
            certificate.provenance,
            crate::predicate::Provenance::Case2 { .. }
        ));
    }
}
