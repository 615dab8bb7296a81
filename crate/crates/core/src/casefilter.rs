//! Elimination of discriminant classes `Delta = +-eps^n` by ray class numbers
//! of `K(sqrt(Delta))`, the cube condition and external constraints.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("no ray class data for m = {0}")]
    MissingRow(i64),
    #[error("ray class numbers must be positive, got {0:?}")]
    InvalidRow([u64; 4]),
    #[error("exponent constraint modulus must be positive")]
    ZeroModulus,
}

/// The quadratic extension `K(sqrt(Delta))` for `Delta = +-eps^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SqrtDiscField {
    K,
    KSqrtMinusOne,
    KSqrtEps,
    KSqrtMinusEps,
}

impl fmt::Display for SqrtDiscField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SqrtDiscField::K => "K",
            SqrtDiscField::KSqrtMinusOne => "K(sqrt(-1))",
            SqrtDiscField::KSqrtEps => "K(sqrt(eps))",
            SqrtDiscField::KSqrtMinusEps => "K(sqrt(-eps))",
        })
    }
}

/// Depends only on the sign and the parity of `n`.
pub fn classify_sqrt_disc(sign: i32, n: i64) -> SqrtDiscField {
    match (sign > 0, n.rem_euclid(2) == 0) {
        (true, true) => SqrtDiscField::K,
        (false, true) => SqrtDiscField::KSqrtMinusOne,
        (true, false) => SqrtDiscField::KSqrtEps,
        (false, false) => SqrtDiscField::KSqrtMinusEps,
    }
}

/// Ray class numbers modulo the product of the primes above 2 of
/// `K, K(sqrt(-1)), K(sqrt(eps)), K(sqrt(-eps))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[u64; 4]", into = "[u64; 4]")]
pub struct RayClassRow {
    h: [u64; 4],
}

impl RayClassRow {
    pub fn new(h: [u64; 4]) -> Result<Self, FilterError> {
        if h.contains(&0) {
            return Err(FilterError::InvalidRow(h));
        }
        Ok(RayClassRow { h })
    }

    pub fn get(&self, field: SqrtDiscField) -> u64 {
        self.h[field as usize]
    }

    pub fn values(&self) -> [u64; 4] {
        self.h
    }
}

impl TryFrom<[u64; 4]> for RayClassRow {
    type Error = FilterError;
    fn try_from(h: [u64; 4]) -> Result<Self, FilterError> {
        RayClassRow::new(h)
    }
}

impl From<RayClassRow> for [u64; 4] {
    fn from(r: RayClassRow) -> [u64; 4] {
        r.h
    }
}

/// `Delta = sign * eps^n` with `n = residue (mod modulus)`; `sign` absent means either.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentConstraint {
    #[serde(default)]
    pub sign: Option<i32>,
    pub modulus: u32,
    #[serde(default)]
    pub residue: u32,
    #[serde(default)]
    pub provenance: String,
}

impl ExponentConstraint {
    pub fn admits(&self, sign: i32, n: u32) -> Result<bool, FilterError> {
        if self.modulus == 0 {
            return Err(FilterError::ZeroModulus);
        }
        Ok(self.sign.is_none_or(|s| s == sign) && n % self.modulus == self.residue % self.modulus)
    }
}

/// A discriminant class `Delta = sign * eps^n` with `0 <= n < 6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiscriminantClass {
    pub sign: i32,
    pub n: u32,
}

impl DiscriminantClass {
    /// Canonical representative: `(eps^2 x, eps^3 y)` identifies exponents mod 6.
    pub fn new(sign: i32, n: i64) -> Self {
        DiscriminantClass {
            sign: sign.signum(),
            n: n.rem_euclid(6) as u32,
        }
    }

    pub fn sqrt_field(&self) -> SqrtDiscField {
        classify_sqrt_disc(self.sign, self.n as i64)
    }

    /// The Mordell curve `y^2 = x^3 - 1728 Delta` carrying the `(c4, c6)` pairs.
    pub fn mordell(&self) -> (i32, u32) {
        (-self.sign, self.n)
    }

    pub fn mordell_label(&self) -> String {
        format!("E_{}^{}", self.n, if self.sign < 0 { '+' } else { '-' })
    }
}

impl fmt::Display for DiscriminantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}eps^{}", if self.sign < 0 { "-" } else { "" }, self.n)
    }
}

/// The inputs of the class filter for one field.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FilterSpec {
    pub m: i64,
    pub ray_row: Option<RayClassRow>,
    pub cubic_flag: bool,
    pub external_constraint: Option<ExponentConstraint>,
}

/// Surviving discriminant classes, one per `(sign, n mod 6)`, in order.
pub fn admissible_classes(spec: &FilterSpec) -> Result<Vec<DiscriminantClass>, FilterError> {
    let row = spec.ray_row.ok_or(FilterError::MissingRow(spec.m))?;
    let mut out = Vec::new();
    for sign in [-1, 1] {
        for n in 0..6u32 {
            let class = DiscriminantClass::new(sign, n as i64);
            if row.get(class.sqrt_field()) % 3 != 0 {
                continue;
            }
            if spec.cubic_flag && n % 3 != 0 {
                continue;
            }
            if let Some(c) = &spec.external_constraint {
                if !c.admits(sign, n)? {
                    continue;
                }
            }
            out.push(class);
        }
    }
    Ok(out)
}

/// The Mordell curves `E_n^{sign}` (as `(sign, n)`) still to be treated.
pub fn admissible_curves(spec: &FilterSpec) -> Result<Vec<(i32, u32)>, FilterError> {
    let mut curves: Vec<(i32, u32)> = admissible_classes(spec)?
        .iter()
        .map(DiscriminantClass::mordell)
        .collect();
    curves.sort_by_key(|&(s, n)| (n, -s));
    Ok(curves)
}
