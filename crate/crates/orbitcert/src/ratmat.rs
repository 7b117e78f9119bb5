//! Exact rational dense linear algebra.
//!
//! Scalars are arbitrary-precision rationals (`num_rational::BigRational`),
//! kept canonical by the underlying crate: positive denominator, reduced
//! fraction, zero as `0/1`. Matrices are dense row-major; every operation is
//! a pure function over immutable values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::Error;
use crate::polyalg::poly::Poly;
use crate::Result;

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

/// `n/d` as a rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Parses `"p/q"`, `"p"`, or a plain decimal such as `"1.5"` (exactly).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let err = || Error::RationalParse { text: s.to_string() };
    if let Some((num, den)) = t.split_once('/') {
        let n: Int = num.trim().parse().map_err(|_| err())?;
        let d: Int = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.trim_start().starts_with('-');
        let i: Int = if int_part.is_empty() || int_part == "-" {
            Int::zero()
        } else {
            int_part.parse().map_err(|_| err())?
        };
        let f: Int = frac_part.parse().map_err(|_| err())?;
        let scale = Int::from(10u32).pow(frac_part.len() as u32);
        let frac = Rat::new(f, scale);
        let whole = Rat::from_integer(i);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let n: Int = t.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(n))
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense rational vector.
#[derive(Clone, PartialEq, Eq)]
pub struct RatVector {
    entries: Vec<Rat>,
}

impl RatVector {
    pub fn new(entries: Vec<Rat>) -> Self {
        RatVector { entries }
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RatVector::new(entries.iter().map(|&n| rat_int(n)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        RatVector::new(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = RatVector::zero(dim);
        v.entries[i] = Rat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn dot(&self, other: &RatVector) -> Result<Rat> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op: "dot",
                left: self.dim().to_string(),
                right: other.dim().to_string(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn add(&self, other: &RatVector) -> Result<RatVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op: "vector add",
                left: self.dim().to_string(),
                right: other.dim().to_string(),
            });
        }
        Ok(RatVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &RatVector) -> Result<RatVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op: "vector sub",
                left: self.dim().to_string(),
                right: other.dim().to_string(),
            });
        }
        Ok(RatVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn scale(&self, c: &Rat) -> RatVector {
        RatVector::new(self.entries.iter().map(|e| e * c).collect())
    }

    /// Appends a coordinate (used by the affine `1` embedding).
    pub fn extended(&self, value: Rat) -> RatVector {
        let mut e = self.entries.clone();
        e.push(value);
        RatVector::new(e)
    }

    /// Scales to coprime integer entries with the first nonzero entry
    /// positive. The zero vector is returned unchanged.
    pub fn canonicalized(&self) -> RatVector {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = Int::one();
        for e in &self.entries {
            lcm = lcm.lcm(e.denom());
        }
        let ints: Vec<Int> = self
            .entries
            .iter()
            .map(|e| e.numer() * (&lcm / e.denom()))
            .collect();
        let mut gcd = Int::zero();
        for i in &ints {
            gcd = gcd.gcd(i);
        }
        let first_nonzero_negative = ints.iter().find(|i| !i.is_zero()).is_some_and(|i| i.is_negative());
        if first_nonzero_negative {
            gcd = -gcd;
        }
        RatVector::new(ints.into_iter().map(|i| Rat::from_integer(i / &gcd)).collect())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.entries.iter()
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rat_to_string(e))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&n| rat_int(n)).collect())
                .collect(),
        )
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let n = entries.len();
        let mut m = RatMatrix::zero(n, n);
        for (i, e) in entries.iter().enumerate() {
            *m.get_mut(i, i) = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> RatVector {
        RatVector::new(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn col(&self, c: usize) -> RatVector {
        RatVector::new((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "matrix add",
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(RatMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "matrix sub",
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(RatMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix::new(self.rows, self.cols, self.data.iter().map(|e| e * c).collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matrix mul",
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        *out.get_mut(r, c) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                op: "trace",
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", rat_to_string(self.get(r, c)))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact matrix-vector product `A v`.
pub fn mat_vec(a: &RatMatrix, v: &RatVector) -> Result<RatVector> {
    if a.cols() != v.dim() {
        return Err(Error::DimensionMismatch {
            op: "mat_vec",
            left: format!("{}x{}", a.rows(), a.cols()),
            right: v.dim().to_string(),
        });
    }
    let mut out = Vec::with_capacity(a.rows());
    for r in 0..a.rows() {
        let mut acc = Rat::zero();
        for c in 0..a.cols() {
            let e = a.get(r, c);
            if !e.is_zero() {
                acc += e * v.get(c);
            }
        }
        out.push(acc);
    }
    Ok(RatVector::new(out))
}

/// `A^n` by binary exponentiation; `A^0` is the identity.
pub fn mat_pow(a: &RatMatrix, n: u64) -> Result<RatMatrix> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            op: "mat_pow",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut result = RatMatrix::identity(a.rows());
    let mut base = a.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base)?;
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base)?;
        }
    }
    Ok(result)
}

/// Characteristic polynomial together with the adjugate of `xI - A` as a
/// matrix of polynomials, both from one Faddeev-LeVerrier run.
///
/// `adjugate[i][j]` is the polynomial entry at row `i`, column `j` of
/// `adj(xI - A)`; for a simple eigenvalue `t`, any nonzero column of the
/// evaluated adjugate is a `t`-right-eigenvector of `A`.
pub struct CharPolyData {
    pub poly: Poly,
    pub adjugate: Vec<Vec<Poly>>,
}

/// Monic characteristic polynomial of a square matrix (Faddeev-LeVerrier;
/// exact over the rationals, the per-step divisions are by integers).
pub fn char_poly(a: &RatMatrix) -> Result<Poly> {
    Ok(char_poly_data(a)?.poly)
}

pub fn char_poly_data(a: &RatMatrix) -> Result<CharPolyData> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            op: "char_poly",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let d = a.rows();
    // coeffs[i] is the coefficient of x^i; c_d = 1.
    let mut coeffs = vec![Rat::zero(); d + 1];
    coeffs[d] = Rat::one();
    // M_1 = I, c_{d-1} = -tr(A M_1),
    // M_{k+1} = A M_k + c_{d-k} I, c_{d-k-1} = -tr(A M_{k+1})/(k+1).
    // adj(xI - A) = sum_k M_{k+1} x^{d-1-k}.
    let mut m = RatMatrix::identity(d);
    let mut iterates: Vec<RatMatrix> = Vec::with_capacity(d);
    for k in 1..=d {
        iterates.push(m.clone());
        let am = a.mul(&m)?;
        let c = -(am.trace()? / rat_int(k as i64));
        coeffs[d - k] = c.clone();
        if k < d {
            let mut next = am;
            for i in 0..d {
                *next.get_mut(i, i) += &c;
            }
            m = next;
        }
    }
    let mut adjugate = vec![vec![Poly::zero(); d]; d];
    for (k, mk) in iterates.iter().enumerate() {
        // mk contributes at degree d - 1 - k
        let deg = d - 1 - k;
        for (i, row) in adjugate.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let e = mk.get(i, j);
                if !e.is_zero() {
                    entry.set_coeff(deg, e.clone());
                }
            }
        }
    }
    Ok(CharPolyData {
        poly: Poly::from_coeffs(coeffs),
        adjugate,
    })
}

/// Determinant via the characteristic polynomial constant term.
pub fn det(a: &RatMatrix) -> Result<Rat> {
    let p = char_poly(a)?;
    let d = a.rows();
    let c0 = p.coeff(0);
    Ok(if d.is_multiple_of(2) { c0 } else { -c0 })
}

/// Basis of the right null space, via fraction-free (Bareiss) elimination.
///
/// Basis vectors are canonical: coprime integer entries, first nonzero entry
/// positive, ordered by their free-column index. Empty iff `A` is injective.
pub fn kernel(a: &RatMatrix) -> Vec<RatVector> {
    let rows = a.rows();
    let cols = a.cols();
    // Clear denominators row by row; the kernel is unchanged.
    let mut m: Vec<Vec<Int>> = (0..rows)
        .map(|r| {
            let mut lcm = Int::one();
            for c in 0..cols {
                lcm = lcm.lcm(a.get(r, c).denom());
            }
            (0..cols)
                .map(|c| {
                    let e = a.get(r, c);
                    e.numer() * (&lcm / e.denom())
                })
                .collect()
        })
        .collect();

    // Fraction-free forward elimination with column pivot tracking.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut prev_pivot = Int::one();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let t = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = &t / &prev_pivot;
            }
            m[r][col] = Int::zero();
        }
        prev_pivot = m[rank][col].clone();
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }

    // Back-substitute one basis vector per free column.
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![Rat::zero(); cols];
        v[fc] = Rat::one();
        for i in (0..rank).rev() {
            let pc = pivot_cols[i];
            let mut acc = Rat::zero();
            for c in pc + 1..cols {
                if !v[c].is_zero() {
                    acc += Rat::from_integer(m[i][c].clone()) * &v[c];
                }
            }
            v[pc] = -acc / Rat::from_integer(m[i][pc].clone());
        }
        basis.push(RatVector::new(v).canonicalized());
    }
    basis
}

/// Column-space data: a canonical basis of `Im(A)`, an embedding matrix whose
/// columns are that basis, and a projection with `project * embed = I`.
pub struct ColumnSpace {
    pub basis: Vec<RatVector>,
    pub project: RatMatrix,
    pub embed: RatMatrix,
}

impl ColumnSpace {
    /// Membership test: `v` lies in the spanned subspace iff
    /// `embed * project * v == v`.
    pub fn contains(&self, v: &RatVector) -> Result<bool> {
        let proj = mat_vec(&self.embed, &mat_vec(&self.project, v)?)?;
        Ok(&proj == v)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Restriction data for the column space of a square matrix.
///
/// A full-rank matrix yields the standard basis with identity maps. Otherwise
/// the basis is the reduced row echelon form of the row space of `A^t`
/// (canonicalized), `embed` stacks it as columns, and
/// `project = (B^t B)^{-1} B^t` so that `project` inverts `embed` on `Im(A)`.
pub fn column_space_restriction(a: &RatMatrix) -> Result<ColumnSpace> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            op: "column_space_restriction",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let d = a.rows();
    let basis = row_space_basis(&a.transpose());
    if basis.len() == d {
        let basis = (0..d).map(|i| RatVector::unit(d, i)).collect();
        return Ok(ColumnSpace {
            basis,
            project: RatMatrix::identity(d),
            embed: RatMatrix::identity(d),
        });
    }
    let r = basis.len();
    let mut embed = RatMatrix::zero(d, r);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..d {
            *embed.get_mut(i, j) = b.get(i).clone();
        }
    }
    let bt = embed.transpose();
    let gram = bt.mul(&embed)?;
    let gram_inv = invert(&gram)?;
    let project = gram_inv.mul(&bt)?;
    Ok(ColumnSpace { basis, project, embed })
}

/// Reduced-row-echelon basis of the row space, canonicalized per vector.
#[allow(clippy::needless_range_loop)]
pub fn row_space_basis(a: &RatMatrix) -> Vec<RatVector> {
    let mut rows: Vec<Vec<Rat>> = (0..a.rows())
        .map(|r| (0..a.cols()).map(|c| a.get(r, c).clone()).collect())
        .collect();
    let cols = a.cols();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][col].recip();
        for c in col..cols {
            let v = &rows[rank][c] * &inv;
            rows[rank][c] = v;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..cols {
                    let v = &rows[r][c] - &f * &rows[rank][c];
                    rows[r][c] = v;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows.retain(|r| r.iter().any(|e| !e.is_zero()));
    rows.into_iter()
        .map(|r| RatVector::new(r).canonicalized())
        .collect()
}

/// Exact inverse by Gauss-Jordan elimination. Errors on singular input.
pub fn invert(a: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            op: "invert",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut inv = RatMatrix::identity(n);
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
            return Err(Error::Unsupported {
                detail: "matrix is singular, cannot invert".to_string(),
            });
        };
        if pr != col {
            for c in 0..n {
                let t = m.get(col, c).clone();
                *m.get_mut(col, c) = m.get(pr, c).clone();
                *m.get_mut(pr, c) = t;
                let t = inv.get(col, c).clone();
                *inv.get_mut(col, c) = inv.get(pr, c).clone();
                *inv.get_mut(pr, c) = t;
            }
        }
        let p = m.get(col, col).recip();
        for c in 0..n {
            *m.get_mut(col, c) *= &p;
            *inv.get_mut(col, c) *= &p;
        }
        for r in 0..n {
            if r != col && !m.get(r, col).is_zero() {
                let f = m.get(r, col).clone();
                for c in 0..n {
                    let v = m.get(r, c) - &f * m.get(col, c);
                    *m.get_mut(r, c) = v;
                    let v = inv.get(r, c) - &f * inv.get(col, c);
                    *inv.get_mut(r, c) = v;
                }
            }
        }
    }
    Ok(inv)
}

/// Evaluates a polynomial at a square matrix (Horner).
pub fn poly_at_matrix(p: &Poly, a: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            op: "poly_at_matrix",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut acc = RatMatrix::zero(n, n);
    for i in (0..=p.degree_or_zero()).rev() {
        acc = acc.mul(a)?;
        let c = p.coeff(i);
        if !c.is_zero() {
            for j in 0..n {
                *acc.get_mut(j, j) += &c;
            }
        }
    }
    Ok(acc)
}
