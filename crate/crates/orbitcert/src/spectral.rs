//! Left eigenvectors, generalized left-eigenvector chains, and the spectrum
//! report. Exact eigenvectors are computed for rational eigenvalues; real
//! irrational eigenvalues get symbolic eigenvectors as adjugate columns
//! (polynomials in the eigenvalue), which is all the reporting layer needs.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::elevate::{basis_size, elevate_matrix};
use crate::error::Error;
use crate::polyalg::algnum::{sign_at, AlgebraicNumber};
use crate::polyalg::classify::{classify_roots, GroupLocation, ModulusTag, RootGroup};
use crate::polyalg::poly::Poly;
use crate::polyalg::sturm::isolate_real_roots;
use crate::ratmat::{char_poly, char_poly_data, det, kernel, mat_vec, Rat, RatMatrix, RatVector};
use crate::Result;

/// A family of linked generalized left eigenvectors `e_0, ..., e_k`:
/// `e_0^t A = lambda e_0^t` and `e_i^t A = lambda e_i^t + e_(i-1)^t`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenChain {
    #[serde(with = "crate::jsonio::rat_str")]
    pub lambda: Rat,
    pub vectors: Vec<RatVector>,
}

impl EigenChain {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn top(&self) -> &RatVector {
        self.vectors.last().expect("chains are nonempty")
    }

    /// Exact check of the defining relations.
    pub fn validate(&self, a: &RatMatrix) -> Result<()> {
        let at = a.transpose();
        for (i, e) in self.vectors.iter().enumerate() {
            let lhs = mat_vec(&at, e)?;
            let mut rhs = e.scale(&self.lambda);
            if i > 0 {
                rhs = rhs.add(&self.vectors[i - 1])?;
            }
            if lhs != rhs {
                return Err(Error::InvalidChain);
            }
        }
        if self.vectors.is_empty() || self.vectors[0].is_zero() {
            return Err(Error::InvalidChain);
        }
        Ok(())
    }
}

/// Basis of left eigenvectors of `A` for the rational eigenvalue `lambda`:
/// `ker((A - lambda I)^t)`, canonicalized. Empty when `lambda` is not an
/// eigenvalue.
pub fn left_eigenvectors(a: &RatMatrix, lambda: &Rat) -> Result<Vec<RatVector>> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            op: "left_eigenvectors",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let shifted = shifted_transpose(a, lambda);
    Ok(kernel(&shifted))
}

fn shifted_transpose(a: &RatMatrix, lambda: &Rat) -> RatMatrix {
    let mut m = a.transpose();
    for i in 0..m.rows() {
        *m.get_mut(i, i) -= lambda;
    }
    m
}

/// Maximal generalized left-eigenvector chains for a rational eigenvalue.
///
/// Built from the kernel filtration of `B = (A - lambda I)^t`: new chain tops
/// are chosen at each depth to complete the previous kernel level plus the
/// continuations of deeper chains, ties broken by the canonical kernel order.
/// Each chain is scaled so its bottom eigenvector `e_0` is canonical.
pub fn jordan_chains(a: &RatMatrix, lambda: &Rat) -> Result<Vec<EigenChain>> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            op: "jordan_chains",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let b = shifted_transpose(a, lambda);
    let d = a.rows();
    // Kernel filtration K_1 subset K_2 subset ... until it stabilizes.
    let mut filtration: Vec<Vec<RatVector>> = Vec::new();
    let mut power = RatMatrix::identity(d);
    for _ in 0..d {
        power = power.mul(&b)?;
        let k = kernel(&power);
        if let Some(prev) = filtration.last() {
            if k.len() == prev.len() {
                break;
            }
        }
        filtration.push(k);
    }
    if filtration.first().is_none_or(|k| k.is_empty()) {
        return Err(Error::NotAnEigenvalue {
            lambda: crate::ratmat::rat_to_string(lambda),
        });
    }
    let depth = filtration.len();

    // Chains as top-first vector lists, extended downward level by level.
    let mut chains: Vec<Vec<RatVector>> = Vec::new();
    for level in (1..=depth).rev() {
        let mut span = Reducer::new(d);
        if level >= 2 {
            for v in &filtration[level - 2] {
                span.insert(v.clone());
            }
        }
        // Continuations of chains that started above this level.
        for chain in chains.iter_mut() {
            let next = mat_vec(&b, chain.last().unwrap())?;
            debug_assert!(!next.is_zero());
            span.insert(next.clone());
            chain.push(next);
        }
        // New tops completing this kernel level.
        for candidate in &filtration[level - 1] {
            if span.insert(candidate.clone()) {
                chains.push(vec![candidate.clone()]);
            }
        }
    }

    let mut out = Vec::with_capacity(chains.len());
    for chain in chains {
        // Reverse to e_0 .. e_k and normalize on the bottom eigenvector.
        let mut vectors: Vec<RatVector> = chain.into_iter().rev().collect();
        let bottom = vectors[0].clone();
        let canon = bottom.canonicalized();
        let scale = scaling_factor(&bottom, &canon);
        for v in vectors.iter_mut() {
            *v = v.scale(&scale);
        }
        let chain = EigenChain {
            lambda: lambda.clone(),
            vectors,
        };
        chain.validate(a)?;
        out.push(chain);
    }
    // Longest chains first, then canonical order of bottoms.
    out.sort_by_key(|c| std::cmp::Reverse(c.len()));
    Ok(out)
}

/// Factor turning `from` into `to` (both nonzero, parallel).
fn scaling_factor(from: &RatVector, to: &RatVector) -> Rat {
    for (a, b) in from.iter().zip(to.iter()) {
        if !a.is_zero() {
            return b / a;
        }
    }
    Rat::one()
}

/// Incremental row-reduction span tracker.
struct Reducer {
    cols: usize,
    rows: Vec<RatVector>, // reduced, each with a leading pivot column
    pivots: Vec<usize>,
}

impl Reducer {
    fn new(cols: usize) -> Self {
        Reducer {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Inserts the vector if independent of the current span; returns whether
    /// it was inserted.
    fn insert(&mut self, v: RatVector) -> bool {
        let mut cur = v;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = cur.get(p).clone();
            if !c.is_zero() {
                cur = cur.sub(&row.scale(&c)).expect("span vectors share a dimension");
            }
        }
        let Some(pivot) = (0..self.cols).find(|&i| !cur.get(i).is_zero()) else {
            return false;
        };
        let inv = cur.get(pivot).recip();
        let normalized = cur.scale(&inv);
        self.rows.push(normalized);
        self.pivots.push(pivot);
        true
    }
}

/// Rational eigenvalue with its eigenvectors and chains.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalEigenData {
    #[serde(with = "crate::jsonio::rat_str")]
    pub lambda: Rat,
    pub multiplicity: usize,
    pub eigenvectors: Vec<RatVector>,
    pub chains: Vec<EigenChain>,
}

/// Elevation bookkeeping in a spectrum report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElevationInfo {
    pub degree: usize,
    pub elevated_dim: u64,
    #[serde(with = "crate::jsonio::rat_str")]
    pub eigenvalue: Rat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub matrix_dim: usize,
    pub char_poly: Poly,
    pub classes: Vec<ReportGroup>,
    pub rational_eigen_data: Vec<RationalEigenData>,
    pub elevation_used: Option<ElevationInfo>,
    /// Set when the elevation search hit the basis-size cap.
    pub limitation: Option<String>,
}

/// Serializable view of a classified root group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportGroup {
    pub factor: Poly,
    pub multiplicity: usize,
    pub count: usize,
    pub class: crate::polyalg::classify::ModulusClass,
    /// Decimal approximations (midpoints) when the group is boxed.
    pub approx: Option<GroupApprox>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupApprox {
    pub re: String,
    pub im: String,
    pub modulus_sq: Option<String>,
}

fn report_group(g: &RootGroup) -> ReportGroup {
    let approx = match &g.location {
        GroupLocation::Real(alpha) => {
            let a = alpha.refined_to(&crate::ratmat::rat(1, 1 << 12));
            Some(GroupApprox {
                re: a.decimal_midpoint(4),
                im: "0.0000".to_string(),
                modulus_sq: None,
            })
        }
        GroupLocation::UpperBox(alpha) => {
            let a = alpha.refined_to(&crate::ratmat::rat(1, 1 << 12));
            let (lo, hi) = a.modulus_sq_interval();
            let mid = (lo + hi) / crate::ratmat::rat(2, 1);
            let im_mid = {
                let (l, h) = a.im_interval();
                (l + h) / crate::ratmat::rat(2, 1)
            };
            Some(GroupApprox {
                re: a.decimal_midpoint(4),
                im: crate::polyalg::algnum::decimal_string(&im_mid, 4),
                modulus_sq: Some(crate::polyalg::algnum::decimal_string(&mid, 4)),
            })
        }
        GroupLocation::CircleY(y) => {
            let y = y.refined_to(&crate::ratmat::rat(1, 1 << 12));
            let half = y.decimal_midpoint(4);
            Some(GroupApprox {
                re: half,
                im: "".to_string(),
                modulus_sq: Some("1.0000".to_string()),
            })
        }
        GroupLocation::Counted => None,
    };
    ReportGroup {
        factor: g.factor.clone(),
        multiplicity: g.multiplicity,
        count: g.count,
        class: g.class.clone(),
        approx,
    }
}

/// Full spectral report: characteristic polynomial, certified modulus
/// classes, exact data for every rational eigenvalue, and the elevation
/// degree at which a usable rational eigenvalue appears when the matrix has
/// off-unit eigenvalues but no rational one.
pub fn spectrum(a: &RatMatrix, elevation_cap: u64) -> Result<SpectrumReport> {
    let cp = char_poly(a)?;
    let groups = classify_roots(&cp)?;
    let rr = crate::polyalg::classify::squarefree_rational_roots(&cp)?;
    let mut rational_eigen_data = Vec::new();
    for (lambda, mult) in &rr.roots {
        let eigenvectors = left_eigenvectors(a, lambda)?;
        let chains = jordan_chains(a, lambda)?;
        rational_eigen_data.push(RationalEigenData {
            lambda: lambda.clone(),
            multiplicity: *mult,
            eigenvectors,
            chains,
        });
    }

    let has_usable_rational = rr
        .roots
        .iter()
        .any(|(r, _)| !r.is_zero() && r.abs() != Rat::one());
    let off_unit_exists = groups
        .iter()
        .any(|g| matches!(g.class.tag, ModulusTag::LessThanOne | ModulusTag::GreaterThanOne));

    let mut elevation_used = None;
    let mut limitation = None;
    if !has_usable_rational && off_unit_exists {
        match find_usable_elevation(a, elevation_cap)? {
            ElevationSearch::Found(info) => elevation_used = Some(info),
            ElevationSearch::CapExceeded { degree, size } => {
                limitation = Some(format!(
                    "elevation to degree {degree} needs a basis of size {size}, above the cap {elevation_cap}"
                ));
            }
            ElevationSearch::NothingUsable => {}
        }
    }

    Ok(SpectrumReport {
        matrix_dim: a.rows(),
        char_poly: cp,
        classes: groups.iter().map(report_group).collect(),
        rational_eigen_data,
        elevation_used,
        limitation,
    })
}

pub enum ElevationSearch {
    Found(ElevationInfo),
    CapExceeded { degree: usize, size: u64 },
    NothingUsable,
}

/// Tries elevation degrees 2 then d, looking for a rational eigenvalue of
/// modulus outside {0, 1} with a rational left eigenvector.
pub fn find_usable_elevation(a: &RatMatrix, cap: u64) -> Result<ElevationSearch> {
    let d = a.rows();
    let mut degrees = vec![2usize];
    if d != 2 {
        degrees.push(d);
    }
    for k in degrees {
        let size = basis_size(d, k).unwrap_or(u64::MAX);
        if size > cap {
            return Ok(ElevationSearch::CapExceeded { degree: k, size });
        }
        let candidates = usable_elevated_eigenvalues(a, k, size)?;
        if let Some((eigenvalue, _vectors)) = candidates.into_iter().next() {
            return Ok(ElevationSearch::Found(ElevationInfo {
                degree: k,
                elevated_dim: size,
                eigenvalue,
            }));
        }
    }
    Ok(ElevationSearch::NothingUsable)
}

/// Rational eigenvalues of the degree-`k` elevation with `|t|` outside
/// `{0, 1}`, each with its left-eigenvector basis, ordered by decreasing
/// distance of `t^2` from 1. For small elevated sizes the characteristic
/// polynomial is scanned; beyond that only structural candidates are tried
/// (the determinant at `k = d`, products of rational eigenvalues), each
/// confirmed or dropped by an exact kernel computation.
pub fn usable_elevated_eigenvalues(
    a: &RatMatrix,
    k: usize,
    elevated_size: u64,
) -> Result<Vec<(Rat, Vec<RatVector>)>> {
    let elevation = elevate_matrix(a, k)?;
    let m = &elevation.matrix;
    let mut candidates: Vec<Rat> = Vec::new();
    if elevated_size <= 35 {
        let cp = char_poly(m)?;
        let rr = crate::polyalg::classify::squarefree_rational_roots(&cp)?;
        candidates.extend(rr.roots.into_iter().map(|(r, _)| r));
    } else {
        // Structural candidates only.
        if k == a.rows() {
            candidates.push(det(a)?);
        }
        let base = crate::polyalg::classify::squarefree_rational_roots(&char_poly(a)?)?;
        let base_roots: Vec<Rat> = base.roots.into_iter().map(|(r, _)| r).collect();
        // Products of up to k rational eigenvalues.
        let mut products: Vec<Rat> = vec![Rat::one()];
        for _ in 0..k {
            let mut next = products.clone();
            for p in &products {
                for r in &base_roots {
                    next.push(p * r);
                }
            }
            products = next;
        }
        candidates.extend(products);
    }
    candidates.retain(|t| !t.is_zero() && t.abs() != Rat::one());
    candidates.sort();
    candidates.dedup();
    // Largest modulus deviation from 1 first.
    candidates.sort_by(|p, q| {
        let dp = (p * p - Rat::one()).abs();
        let dq = (q * q - Rat::one()).abs();
        dq.cmp(&dp)
    });
    let mut out = Vec::new();
    for t in candidates {
        let vectors = kernel(&shifted_transpose(m, &t));
        if !vectors.is_empty() {
            out.push((t, vectors));
        }
    }
    Ok(out)
}

/// Symbolic eigendata for a simple real irrational eigenvalue: the
/// eigenvector is a column of `adj(lambda I - A^t)`, entries polynomial in
/// the eigenvalue.
pub struct AlgebraicEigenData {
    pub lambda: AlgebraicNumber,
    /// Entry polynomials of the left eigenvector, to be evaluated at lambda.
    pub phi: Vec<Poly>,
}

/// All simple real irrational eigenvalues of `a` with symbolic left
/// eigenvectors, ordered increasingly.
pub fn real_irrational_eigen_data(a: &RatMatrix) -> Result<Vec<AlgebraicEigenData>> {
    let data = char_poly_data(&a.transpose())?;
    let cp = &data.poly;
    let sf = cp.square_free_part();
    // Simple roots only: where cp and its square-free part agree locally.
    let rational: Vec<Rat> = crate::polyalg::classify::rational_roots_of_squarefree(&sf)
        .into_iter()
        .collect();
    let mut out = Vec::new();
    for root in isolate_real_roots(&sf) {
        if let crate::polyalg::sturm::IsolatedRoot::Exact(_) = root {
            continue;
        }
        let alpha = AlgebraicNumber::real(&sf, &root);
        // Skip rational roots (already exact elsewhere).
        if rational
            .iter()
            .any(|r| sign_at(&Poly::x_minus(r), &alpha) == Ordering::Equal)
        {
            continue;
        }
        // Simplicity: cp'(alpha) != 0.
        if sign_at(&cp.derivative(), &alpha) == Ordering::Equal {
            continue;
        }
        // Pick the first adjugate column that does not vanish at alpha.
        let d = a.rows();
        let mut phi = None;
        'cols: for j in 0..d {
            for i in 0..d {
                if sign_at(&data.adjugate[i][j], &alpha) != Ordering::Equal {
                    phi = Some((0..d).map(|r| data.adjugate[r][j].clone()).collect::<Vec<_>>());
                    break 'cols;
                }
            }
        }
        if let Some(phi) = phi {
            out.push(AlgebraicEigenData { lambda: alpha, phi });
        }
    }
    Ok(out)
}

/// `<phi(lambda), v>` as a polynomial in lambda.
pub fn symbolic_pairing(phi: &[Poly], v: &RatVector) -> Poly {
    let mut acc = Poly::zero();
    for (p, c) in phi.iter().zip(v.iter()) {
        acc = acc.add(&p.mul_scalar(c));
    }
    acc
}
