//! Shared helpers for the integration suites: seeded random matrices with
//! controlled spectra, and instance builders.
#![allow(dead_code)] // each test binary uses its own subset

use rand::rngs::StdRng;
use rand::Rng;

use orbitcert::instance::{OrbitInstance, Ring};
use orbitcert::ratmat::{invert, rat, rat_int, Rat, RatMatrix, RatVector};

/// Random integer matrix with entries in `[-bound, bound]`.
pub fn random_int_matrix(rng: &mut StdRng, dim: usize, bound: i64) -> RatMatrix {
    let mut m = RatMatrix::zero(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            *m.get_mut(r, c) = rat_int(rng.random_range(-bound..=bound));
        }
    }
    m
}

pub fn random_int_vector(rng: &mut StdRng, dim: usize, bound: i64) -> RatVector {
    RatVector::new(
        (0..dim)
            .map(|_| rat_int(rng.random_range(-bound..=bound)))
            .collect(),
    )
}

/// Random unimodular matrix: a product of integer shears.
pub fn random_unimodular(rng: &mut StdRng, dim: usize, shears: usize) -> RatMatrix {
    let mut s = RatMatrix::identity(dim);
    for _ in 0..shears {
        let i = rng.random_range(0..dim);
        let mut j = rng.random_range(0..dim);
        while j == i {
            j = rng.random_range(0..dim);
        }
        let c = rat_int(rng.random_range(-2..=2));
        // row_i += c * row_j
        for col in 0..dim {
            let add = &c * s.get(j, col);
            *s.get_mut(i, col) += add;
        }
    }
    s
}

/// Conjugates a matrix by a random unimodular basis change.
pub fn conjugate(rng: &mut StdRng, core: &RatMatrix) -> RatMatrix {
    let dim = core.rows();
    let s = random_unimodular(rng, dim, 2 * dim + 2);
    let s_inv = invert(&s).expect("unimodular");
    s.mul(core).unwrap().mul(&s_inv).unwrap()
}

/// Diagonalizable matrix with the given rational eigenvalues, conjugated.
pub fn matrix_with_eigenvalues(rng: &mut StdRng, eigenvalues: &[Rat]) -> RatMatrix {
    conjugate(rng, &RatMatrix::diagonal(eigenvalues))
}

/// Unipotent matrix: identity plus strictly upper triangular, conjugated.
pub fn random_unipotent(rng: &mut StdRng, dim: usize) -> RatMatrix {
    let mut j = RatMatrix::identity(dim);
    for r in 0..dim {
        for c in (r + 1)..dim {
            *j.get_mut(r, c) = rat_int(rng.random_range(-2..=2));
        }
    }
    // Make sure it is not the identity.
    if (0..dim).all(|r| ((r + 1)..dim).all(|c| j.get(r, c) == &rat_int(0))) {
        *j.get_mut(0, dim - 1) = rat_int(1);
    }
    conjugate(rng, &j)
}

/// Companion matrix of a monic polynomial given by its coefficients
/// (constant first, leading 1 omitted).
pub fn companion(coeffs_without_leading: &[Rat]) -> RatMatrix {
    let d = coeffs_without_leading.len();
    let mut m = RatMatrix::zero(d, d);
    for r in 1..d {
        *m.get_mut(r, r - 1) = rat_int(1);
    }
    for (r, c) in coeffs_without_leading.iter().enumerate() {
        *m.get_mut(r, d - 1) = -c.clone();
    }
    m
}

/// A pool of rational eigenvalues with modulus outside {0, 1}.
pub fn off_unit_eigenvalue_pool() -> Vec<Rat> {
    vec![
        rat_int(2),
        rat_int(3),
        rat_int(-2),
        rat_int(5),
        rat(1, 2),
        rat(-1, 2),
        rat(3, 2),
        rat(-3, 2),
        rat(2, 3),
        rat(5, 2),
    ]
}

pub fn instance(a: RatMatrix, x: RatVector, y: RatVector, ring: Ring) -> OrbitInstance {
    OrbitInstance::new(a, x, y, ring).expect("valid instance")
}
