use super::{FieldElem, QuadError, QuadField};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

/// An algebraic integer `u + v*omega` in integral-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgInt {
    field: QuadField,
    u: BigInt,
    v: BigInt,
}

impl AlgInt {
    pub fn new(field: QuadField, u: BigInt, v: BigInt) -> Self {
        AlgInt { field, u, v }
    }

    pub fn from_i64(field: QuadField, u: i64, v: i64) -> Self {
        AlgInt {
            field,
            u: u.into(),
            v: v.into(),
        }
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn to_elem(&self) -> FieldElem {
        FieldElem::from_basis_coords(
            self.field,
            BigRational::from_integer(self.u.clone()),
            BigRational::from_integer(self.v.clone()),
        )
    }

    pub fn try_from_elem(x: &FieldElem) -> Result<AlgInt, QuadError> {
        let (u, v) = x.basis_coords();
        if u.is_integer() && v.is_integer() {
            Ok(AlgInt {
                field: x.field(),
                u: u.to_integer(),
                v: v.to_integer(),
            })
        } else {
            Err(QuadError::NotIntegral(x.to_string()))
        }
    }

    /// Norm `N(u + v*omega)` as a rational integer.
    pub fn norm(&self) -> BigInt {
        let (t, n) = self.field.omega_relation();
        // N(u + v w) = u^2 + t u v - n v^2
        &self.u * &self.u + &self.u * &self.v * t - &self.v * &self.v * n
    }
}

impl fmt::Display for AlgInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_elem().fmt(f)
    }
}
