//! Polynomial elevation: the linear action of a matrix on all monomials of
//! bounded degree. For a square `A` and degree `k`, the elevation matrix
//! `E = elevate_matrix(A, k)` satisfies `E * elevate_vector(v, k) =
//! elevate_vector(A v, k)` exactly; its spectrum consists of degree-`<= k`
//! products of the eigenvalues of `A`, which is how rational eigenvalues are
//! manufactured for matrices that have none.

use num_traits::One;

use crate::error::Error;
use crate::multipoly::MultiPoly;
use crate::ratmat::{Rat, RatMatrix, RatVector};
use crate::Result;

/// Ordered monomial basis in `var_count` variables of total degree at most
/// `max_degree`: graded lexicographic, highest degree block first, constant
/// monomial last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    var_count: usize,
    max_degree: usize,
    monomials: Vec<Vec<u32>>,
}

/// `C(d + k, k)` with overflow checking.
pub fn basis_size(d: usize, k: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for i in 0..k.min(d) {
        let (n, div) = ((d + k - i) as u64, (i + 1) as u64);
        acc = acc.checked_mul(n)?.checked_div(div)?;
    }
    // The product above divides stepwise only when taken in a careful order;
    // recompute exactly with u128 to be safe.
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let kk = k.min(d);
    for i in 0..kk {
        num = num.checked_mul((d + k - i) as u128)?;
        den = den.checked_mul((i + 1) as u128)?;
    }
    u64::try_from(num / den).ok().filter(|_| num.is_multiple_of(den) || true)
}

impl MonomialBasis {
    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn size(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn index_of(&self, exponents: &[u32]) -> Option<usize> {
        self.monomials.iter().position(|m| m == exponents)
    }
}

/// Deterministic basis of all monomials of degree `<= k` in `d` variables.
pub fn monomial_basis(d: usize, k: usize) -> Result<MonomialBasis> {
    if d == 0 || k == 0 {
        return Err(Error::EmptyBasis);
    }
    let mut monomials = Vec::new();
    for deg in (0..=k).rev() {
        let mut block = Vec::new();
        enumerate_degree(d, deg as u32, &mut vec![], &mut block);
        // Lexicographically descending within the degree block.
        block.sort_by(|a, b| b.cmp(a));
        monomials.extend(block);
    }
    Ok(MonomialBasis {
        var_count: d,
        max_degree: k,
        monomials,
    })
}

fn enumerate_degree(d: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == d - 1 {
        let mut m = prefix.clone();
        m.push(deg);
        out.push(m);
        return;
    }
    for e in 0..=deg {
        prefix.push(e);
        enumerate_degree(d, deg - e, prefix, out);
        prefix.pop();
    }
}

/// An elevation matrix together with its basis.
#[derive(Clone, Debug)]
pub struct Elevation {
    pub basis: MonomialBasis,
    pub matrix: RatMatrix,
}

/// Builds the elevation matrix of a square `A` to degree `k`: row `m` holds
/// the expansion of the monomial `m(A x)` over the basis monomials.
pub fn elevate_matrix(a: &RatMatrix, k: usize) -> Result<Elevation> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            op: "elevate_matrix",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let d = a.rows();
    let basis = monomial_basis(d, k)?;
    let n = basis.size();
    let rows_of_a: Vec<MultiPoly> = (0..d)
        .map(|i| MultiPoly::from_linear_form(&a.row(i)))
        .collect();
    let mut matrix = RatMatrix::zero(n, n);
    for (ridx, mono) in basis.monomials().iter().enumerate() {
        // Expand prod_i (row_i(A) . x)^(e_i).
        let mut poly = MultiPoly::constant(d, Rat::one());
        for (i, &e) in mono.iter().enumerate() {
            if e > 0 {
                poly = poly.mul(&rows_of_a[i].pow(e));
            }
        }
        for (e, c) in poly.terms() {
            let cidx = basis
                .index_of(e)
                .expect("expansion stays within the degree bound");
            *matrix.get_mut(ridx, cidx) = c.clone();
        }
    }
    Ok(Elevation { basis, matrix })
}

/// `elevate_vector(v, k)[m] = prod_i v_i^(m_i)` over the basis monomials.
pub fn elevate_vector(v: &RatVector, k: usize) -> Result<RatVector> {
    let basis = monomial_basis(v.dim(), k)?;
    Ok(elevate_vector_in(&basis, v))
}

/// Same as [`elevate_vector`] against a prebuilt basis.
pub fn elevate_vector_in(basis: &MonomialBasis, v: &RatVector) -> RatVector {
    assert_eq!(basis.var_count(), v.dim());
    let entries = basis
        .monomials()
        .iter()
        .map(|m| {
            let mut acc = Rat::one();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    acc *= v.get(i);
                }
            }
            acc
        })
        .collect();
    RatVector::new(entries)
}
