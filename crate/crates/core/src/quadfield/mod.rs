//! Exact arithmetic in a real quadratic field `K = Q(sqrt(m))` and its ring
//! of integers: elements, units, prime ideals, valuations and residue fields.

mod algint;
mod classno;
mod elem;
mod ideal;
mod poly;
mod residue;
mod unit;

pub use algint::AlgInt;
pub use classno::{class_number_is_one, minkowski_primes, principal_generator};
pub use elem::{parse_rational, FieldElem};
pub use ideal::{factor_rational_prime, PrimeIdeal, Splitting};
pub use poly::{eval_poly, roots_in_field};
pub use residue::{ResidueElem, ResidueField};
pub use unit::{fundamental_unit, unit_exponent, UnitRelation};

use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("m = {0} is not square-free")]
    NotSquareFree(i64),
    #[error("m = {0} must be at least 2")]
    TooSmall(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: Q(sqrt({0})) vs Q(sqrt({1}))")]
    FieldMismatch(i64, i64),
    #[error("element {0} is not integral")]
    NotIntegral(String),
    #[error("element {elem} has negative valuation at {prime}")]
    NegativeValuation { elem: String, prime: String },
    #[error("cannot parse element {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Shape of the integral basis `{1, omega}` of the ring of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BasisKind {
    /// `omega = sqrt(m)`, for `m = 2, 3 (mod 4)`.
    OneSqrtM,
    /// `omega = (1 + sqrt(m)) / 2`, for `m = 1 (mod 4)`.
    OneHalfOnePlusSqrtM,
}

/// The real quadratic field `Q(sqrt(m))`, `m > 1` square-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadField {
    m: i64,
    disc: i64,
    basis: BasisKind,
}

pub fn make_field(m: i64) -> Result<QuadField, QuadError> {
    QuadField::new(m)
}

impl QuadField {
    pub fn new(m: i64) -> Result<Self, QuadError> {
        if m <= 1 {
            return Err(QuadError::TooSmall(m));
        }
        let mut d = 2i64;
        while d * d <= m {
            if m % (d * d) == 0 {
                return Err(QuadError::NotSquareFree(m));
            }
            d += 1;
        }
        let (basis, disc) = if m % 4 == 1 {
            (BasisKind::OneHalfOnePlusSqrtM, m)
        } else {
            (BasisKind::OneSqrtM, 4 * m)
        };
        Ok(QuadField { m, disc, basis })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    /// `(t, n)` with `omega^2 = t*omega + n`.
    pub fn omega_relation(&self) -> (i64, i64) {
        match self.basis {
            BasisKind::OneSqrtM => (0, self.m),
            BasisKind::OneHalfOnePlusSqrtM => (1, (self.m - 1) / 4),
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::from_int(*self, 0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::from_int(*self, 1)
    }

    pub fn sqrt_m(&self) -> FieldElem {
        FieldElem::from_ints(*self, 0, 1)
    }

    pub fn omega(&self) -> FieldElem {
        AlgInt::from_i64(*self, 0, 1).to_elem()
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_examples() {
        let k43 = make_field(43).unwrap();
        assert_eq!(k43.basis(), BasisKind::OneSqrtM);
        assert_eq!(k43.disc(), 172);
        let k29 = make_field(29).unwrap();
        assert_eq!(k29.basis(), BasisKind::OneHalfOnePlusSqrtM);
        assert_eq!(k29.disc(), 29);
        assert_eq!(make_field(12), Err(QuadError::NotSquareFree(12)));
        assert_eq!(make_field(1), Err(QuadError::TooSmall(1)));
        assert_eq!(make_field(-5), Err(QuadError::TooSmall(-5)));
    }

    #[test]
    fn omega_satisfies_its_relation() {
        for m in [2, 5, 13, 29, 43, 46, 59, 62, 67, 71] {
            let k = make_field(m).unwrap();
            let (t, n) = k.omega_relation();
            let w = k.omega();
            assert_eq!(&w * &w, &w * t + n, "m = {m}");
        }
    }

    #[test]
    fn square_roots() {
        for m in [5, 29, 43, 46] {
            let k = make_field(m).unwrap();
            for (a, b) in [(0, 1), (3, -2), (7, 0), (0, 0), (1, 5)] {
                let x = FieldElem::from_ints(k, a, b);
                let r = x.square().sqrt().unwrap();
                assert!(r == x || r == -&x, "m = {m}");
            }
            assert!(FieldElem::from_int(k, 2).sqrt().is_none());
            assert!(k.sqrt_m().sqrt().is_none());
        }
        let k5 = make_field(5).unwrap();
        let half = FieldElem::parse(k5, "3/2 + 1/2*sqrt(5)").unwrap();
        assert_eq!(half.sqrt().map(|r| r.square()), Some(half));
    }
}
