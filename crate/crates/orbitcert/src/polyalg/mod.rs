//! Univariate polynomial utilities: arithmetic, Sturm-based real root
//! isolation, algebraic numbers with certified boxes, and modulus
//! classification of roots (including root-of-unity order detection).

pub mod algnum;
pub mod classify;
pub mod poly;
pub mod sturm;

pub use algnum::{sign_at, AlgebraicNumber};
pub use classify::{
    classify_roots, cyclotomic, root_of_unity_order, squarefree_rational_roots,
    unit_circle_factor, GroupLocation, ModulusClass, ModulusTag, RootGroup,
};
pub use poly::Poly;
