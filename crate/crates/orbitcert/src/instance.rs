//! Orbit problem instances.

use num_traits::One;

use crate::error::Error;
use crate::ratmat::{RatMatrix, RatVector};
use crate::Result;

/// Coefficient ring of an instance. Over `Z` every entry of the matrix and
/// both vectors must be an integer, which unlocks the periodic (root of
/// unity) certificate route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Ring {
    Q,
    Z,
}

/// An orbit problem `exists n. A^n X = Y`.
#[derive(Clone, Debug)]
pub struct OrbitInstance {
    pub a: RatMatrix,
    pub x: RatVector,
    pub y: RatVector,
    pub ring: Ring,
}

impl OrbitInstance {
    pub fn new(a: RatMatrix, x: RatVector, y: RatVector, ring: Ring) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NonSquare {
                op: "orbit instance",
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let d = a.rows();
        if x.dim() != d || y.dim() != d {
            return Err(Error::DimensionMismatch {
                op: "orbit instance",
                left: format!("{d}x{d}"),
                right: format!("X: {}, Y: {}", x.dim(), y.dim()),
            });
        }
        if ring == Ring::Z {
            let integral = |v: &RatVector| v.iter().all(|e| e.denom().is_one());
            let mat_integral = (0..d).all(|r| (0..d).all(|c| a.get(r, c).denom().is_one()));
            if !mat_integral || !integral(&x) || !integral(&y) {
                return Err(Error::Schema {
                    detail: "ring Z requires integer entries in A, X and Y".to_string(),
                });
            }
        }
        Ok(OrbitInstance { a, x, y, ring })
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::{rat, rat_int};

    #[test]
    fn values_are_share_and_send_safe() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<OrbitInstance>();
        assert_send_sync::<crate::ratmat::RatMatrix>();
        assert_send_sync::<crate::polyalg::poly::Poly>();
        assert_send_sync::<crate::predicate::Certificate>();
        assert_send_sync::<crate::polyalg::AlgebraicNumber>();
    }

    #[test]
    fn validates_dimensions_and_ring() {
        let a = RatMatrix::identity(2);
        let x = RatVector::from_ints(&[1, 2]);
        let y = RatVector::from_ints(&[3, 4]);
        assert!(OrbitInstance::new(a.clone(), x.clone(), y.clone(), Ring::Q).is_ok());

        let bad = RatVector::from_ints(&[1]);
        assert!(OrbitInstance::new(a.clone(), bad, y.clone(), Ring::Q).is_err());

        let half = RatVector::new(vec![rat(1, 2), rat_int(1)]);
        assert!(OrbitInstance::new(a.clone(), half.clone(), y.clone(), Ring::Z).is_err());
        assert!(OrbitInstance::new(a, half, y, Ring::Q).is_ok());
    }
}
