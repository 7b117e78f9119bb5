//! Certificate synthesis: the case dispatcher and per-case synthesizers.
//!
//! Dispatch order: bounded reachability probe, null-eigenvalue reduction,
//! integer-ring periodic route, eigenvector growth certificates (case 2,
//! elevating when the matrix has no usable rational eigenvalue), generalized
//! eigenvector certificates (case 3), invariant quadratics for diagonalizable
//! modulus-one matrices (case 4). Every certificate is validated by the
//! independent oracle before it is returned; a certificate that fails its own
//! validation is a hard error, never an emission.

mod case1;
mod case2;
mod case3;
mod case4;
mod integer;

pub use case1::{case1_reduce, Case1Outcome, Case1Reduction};
pub use case2::{case2_certificate, case2_comparisons, Case2Comparison};
pub use case3::case3_certificate;
pub use case4::case4_certificate;
pub(crate) use integer::integer_route;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::instance::OrbitInstance;
use crate::oracle::{verify_certificate, TailStatus, VerificationReport};
use crate::polyalg::classify::{classify_roots, ModulusTag, RootGroup};
use crate::polyalg::poly::Poly;
use crate::predicate::{Certificate, CertifyOutcome, Reason};
use crate::ratmat::{char_poly, poly_at_matrix, Rat};
use crate::Result;

pub use crate::oracle::bounded_reach_search;

/// Synthesis configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    /// Horizon for the reachability probe and oracle verification.
    pub horizon: u64,
    /// Cap on the elevated basis size `C(d + k, k)`.
    pub elevation_cap: u64,
    /// Collect every validated certificate instead of the first.
    pub emit_all: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            horizon: 200,
            elevation_cap: 3003,
            emit_all: false,
        }
    }
}

/// Synthesis result: the outcome plus reporting extras.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertifyReport {
    pub outcome: CertifyOutcome,
    /// Oracle report for the emitted certificate.
    pub verification: Option<VerificationReport>,
    /// Paper-style index comparisons for real irrational eigenvalues.
    pub comparisons: Vec<Case2Comparison>,
    /// Additional validated certificates (with `emit_all`).
    pub alternates: Vec<Certificate>,
}

pub(crate) struct Ctx<'a> {
    pub inst: &'a OrbitInstance,
    pub config: &'a RunConfig,
    pub char_poly: Poly,
    pub groups: Vec<RootGroup>,
    /// Rational eigenvalues with multiplicities.
    pub rational_roots: Vec<(Rat, usize)>,
}

impl Ctx<'_> {
    pub fn has_zero_eigenvalue(&self) -> bool {
        self.char_poly.coeff(0).is_zero()
    }

    pub fn all_moduli_one(&self) -> bool {
        self.groups
            .iter()
            .all(|g| g.class.tag == ModulusTag::EqualOne)
    }

    pub fn exists_off_unit(&self) -> bool {
        self.groups.iter().any(|g| {
            matches!(
                g.class.tag,
                ModulusTag::LessThanOne | ModulusTag::GreaterThanOne
            )
        })
    }

    pub fn is_diagonalizable(&self) -> Result<bool> {
        let sf = self.char_poly.square_free_part();
        Ok(poly_at_matrix(&sf, &self.inst.a)?.is_zero())
    }
}

/// Validates a candidate against the oracle; errors if the certificate fails,
/// since synthesis must never emit an unverified certificate.
pub(crate) fn validate(
    inst: &OrbitInstance,
    cert: &Certificate,
    horizon: u64,
) -> Result<VerificationReport> {
    let report = verify_certificate(inst, cert, horizon)?;
    if !report.pass || report.condition2_tail != TailStatus::ProvedSymbolically {
        return Err(Error::InternalValidation {
            detail: format!(
                "candidate rejected: {:?} (tail {:?})",
                report.first_violation, report.condition2_tail
            ),
        });
    }
    Ok(report)
}

/// Synthesizes a non-reachability certificate, a reachability witness, or a
/// structured inconclusive outcome for the instance.
pub fn certify(inst: &OrbitInstance, config: &RunConfig) -> Result<CertifyReport> {
    if let Some(n) = bounded_reach_search(inst, config.horizon)? {
        return Ok(CertifyReport {
            outcome: CertifyOutcome::ReachableWitness { n },
            verification: None,
            comparisons: vec![],
            alternates: vec![],
        });
    }

    let cp = char_poly(&inst.a)?;
    let groups = classify_roots(&cp)?;
    let rational_roots = crate::polyalg::classify::squarefree_rational_roots(&cp)?.roots;
    let ctx = Ctx {
        inst,
        config,
        char_poly: cp,
        groups,
        rational_roots,
    };

    // Paper-style comparisons are reporting, not synthesis: computed for
    // matrices with real irrational eigenvalues off the unit circle.
    let comparisons = if ctx.exists_off_unit() {
        case2_comparisons(inst).unwrap_or_default()
    } else {
        vec![]
    };

    let mut alternates = Vec::new();
    let outcome = dispatch(&ctx, &mut alternates)?;
    let verification = match &outcome {
        CertifyOutcome::Certificate { certificate } => {
            Some(validate(inst, certificate, config.horizon)?)
        }
        _ => None,
    };
    Ok(CertifyReport {
        outcome,
        verification,
        comparisons,
        alternates,
    })
}

fn dispatch(ctx: &Ctx<'_>, alternates: &mut Vec<Certificate>) -> Result<CertifyOutcome> {
    // Case 1: null eigenvalues reduce to the column space.
    if ctx.has_zero_eigenvalue() {
        let reduction = case1_reduce(ctx.inst)?;
        match reduction.outcome {
            Case1Outcome::ImageCertificate(cert) => {
                validate(ctx.inst, &cert, ctx.config.horizon)?;
                return Ok(CertifyOutcome::Certificate {
                    certificate: Box::new(cert),
                });
            }
            Case1Outcome::Reduced {
                power,
                constraints,
                embed,
                project,
                reduced,
            } => {
                let inner_report = certify(&reduced, ctx.config)?;
                return Ok(match inner_report.outcome {
                    CertifyOutcome::ReachableWitness { n } => {
                        CertifyOutcome::ReachableWitness { n: n + power }
                    }
                    CertifyOutcome::Inconclusive { reason, detail } => {
                        CertifyOutcome::Inconclusive { reason, detail }
                    }
                    CertifyOutcome::Certificate { certificate } => {
                        let lifted = case1::lift_certificate(
                            ctx.inst,
                            power,
                            constraints,
                            embed,
                            project,
                            &reduced,
                            *certificate,
                        )?;
                        validate(ctx.inst, &lifted, ctx.config.horizon)?;
                        CertifyOutcome::Certificate {
                            certificate: Box::new(lifted),
                        }
                    }
                });
            }
            Case1Outcome::Identity => {
                // char_poly said zero eigenvalue but the matrix is full rank:
                // impossible; fall through defensively.
            }
        }
    }

    // Integer-ring route when roots of unity of order above one are present.
    if let Some(outcome) = integer_route(ctx, alternates)? {
        return Ok(outcome);
    }

    // Case 2: eigenvalues off the unit circle.
    let mut cap_hit = false;
    if ctx.exists_off_unit() {
        if let Some(cert) = case2::try_case2(ctx, alternates, &mut cap_hit)? {
            return Ok(CertifyOutcome::Certificate {
                certificate: Box::new(cert),
            });
        }
    }

    // Case 3: rational modulus-one eigenvalues with chains (and the elevated
    // complex variant).
    if let Some(cert) = case3::try_case3(ctx, alternates)? {
        return Ok(CertifyOutcome::Certificate {
            certificate: Box::new(cert),
        });
    }

    // Case 4: diagonalizable, all moduli one.
    if ctx.all_moduli_one() && ctx.is_diagonalizable()? {
        return case4_certificate(ctx.inst, ctx.config);
    }

    if cap_hit {
        return Ok(CertifyOutcome::Inconclusive {
            reason: Reason::ElevationCapExceeded,
            detail: format!(
                "an elevation needed for this spectrum exceeds the basis-size cap {}",
                ctx.config.elevation_cap
            ),
        });
    }
    let detail = if ctx.exists_off_unit() {
        "no rational eigen-object separated the target within the configured caps".to_string()
    } else {
        "modulus-one spectrum without a separating chain or invariant".to_string()
    };
    Ok(CertifyOutcome::Inconclusive {
        reason: Reason::NoUsableEigenvector,
        detail,
    })
}

/// Integer-ring route as a standalone operation: `None` when it does not
/// apply (rational ring, or no root of unity of order above one).
pub fn integer_certificate(
    inst: &OrbitInstance,
    config: &RunConfig,
) -> Result<Option<CertifyOutcome>> {
    let cp = char_poly(&inst.a)?;
    let groups = classify_roots(&cp)?;
    let rational_roots = crate::polyalg::classify::squarefree_rational_roots(&cp)?.roots;
    let ctx = Ctx {
        inst,
        config,
        char_poly: cp,
        groups,
        rational_roots,
    };
    integer_route(&ctx, &mut Vec::new())
}

/// Rational gcd generating the lattice of a set of rationals.
pub(crate) fn rat_lattice_gcd(values: impl Iterator<Item = Rat>) -> Rat {
    use num_integer::Integer;
    let mut acc: Option<Rat> = None;
    for v in values {
        if v.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => v.abs(),
            Some(g) => {
                // gcd(a/b, c/d) = gcd(a d, c b) / (b d)
                let num = (g.numer() * v.denom()).gcd(&(v.numer() * g.denom()));
                Rat::new(num, g.denom() * v.denom())
            }
        });
    }
    acc.unwrap_or_else(Rat::zero)
}
