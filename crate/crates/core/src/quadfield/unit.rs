use super::{BasisKind, FieldElem, QuadField};
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::Serialize;
use std::cmp::Ordering;

/// `floor((p + sqrt(d)) / q)` for non-square `d > 0` and `q != 0`.
fn cf_floor(p: i64, q: i64, sqrt_floor: i64) -> i64 {
    if q > 0 {
        (p + sqrt_floor).div_euclid(q)
    } else {
        -((p + sqrt_floor).div_euclid(-q) + 1)
    }
}

/// The fundamental unit `eps > 1` (with `sqrt(m) > 0`), read off the first
/// convergent `h/k` of omega whose associated element `h - k*conj(omega)` has norm +-1.
pub fn fundamental_unit(field: QuadField) -> FieldElem {
    let m = field.m();
    let s = m.sqrt();
    let (mut p, mut q) = match field.basis() {
        BasisKind::OneSqrtM => (0i64, 1i64),
        BasisKind::OneHalfOnePlusSqrtM => (1, 2),
    };
    let omega_bar = field.omega().conj();
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    loop {
        let a = cf_floor(p, q, s);
        let h_next = &h * a + &h_prev;
        let k_next = &k * a + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let candidate = FieldElem::from_bigints(field, h.clone(), BigInt::zero())
            - &omega_bar * &FieldElem::from_bigints(field, k.clone(), BigInt::zero());
        let n = candidate.norm();
        if n.is_one() || (-n).is_one() {
            return candidate;
        }
        p = a * q - p;
        q = (m - p * p) / q;
    }
}

/// How a given unit relates to the canonical fundamental unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnitRelation {
    Equal,
    Negated,
    Inverse,
    NegatedInverse,
}

impl UnitRelation {
    pub fn between(canonical: &FieldElem, other: &FieldElem) -> Option<UnitRelation> {
        let inv = canonical.inverse().ok()?;
        if other == canonical {
            Some(UnitRelation::Equal)
        } else if *other == -canonical {
            Some(UnitRelation::Negated)
        } else if *other == inv {
            Some(UnitRelation::Inverse)
        } else if *other == -&inv {
            Some(UnitRelation::NegatedInverse)
        } else {
            None
        }
    }
}

/// Writes a unit `u` as `sign * eps^n`; `None` if `u` is not a unit or not in
/// the group generated by `-1` and `eps`. `eps` must satisfy `|eps| != 1`.
pub fn unit_exponent(u: &FieldElem, eps: &FieldElem) -> Option<(i64, i64)> {
    let n = u.norm();
    if !(n.is_one() || (-n).is_one()) {
        return None;
    }
    let one = u.field().one();
    let big = if eps.abs_real().real_cmp(&one) == Ordering::Greater {
        eps.clone()
    } else {
        eps.inverse().ok()?
    };
    let flip = big != *eps;
    let big_abs = big.abs_real();
    let big_inv = big.inverse().ok()?;
    let mut cur = u.clone();
    let mut exp = 0i64;
    // Drive |cur| into [1, |big|) using exact comparisons.
    while cur.abs_real().real_cmp(&big_abs) != Ordering::Less {
        cur = &cur * &big_inv;
        exp += 1;
    }
    while cur.abs_real().real_cmp(&one) == Ordering::Less {
        cur = &cur * &big;
        exp -= 1;
    }
    let sign = if cur.is_one() {
        1
    } else if (-&cur).is_one() {
        -1
    } else {
        return None;
    };
    Some((sign, if flip { -exp } else { exp }))
}

/// Brute-force smallest solution of `|N(x)| = 1` with positive coordinates,
/// scanning the `sqrt(m)` coefficient upwards. Test oracle only.
#[cfg(test)]
pub(crate) fn unit_by_scan(field: QuadField, max_b: u64) -> Option<FieldElem> {
    use num_integer::Integer;
    use num_rational::BigRational;
    let m = BigInt::from(field.m());
    let half = matches!(field.basis(), BasisKind::OneHalfOnePlusSqrtM);
    // in doubled coordinates x = (A + B sqrt(m))/2, N = (A^2 - m B^2)/4
    for b2 in 1..=(2 * max_b) {
        if !half && b2 % 2 == 1 {
            continue;
        }
        let b = BigInt::from(b2);
        // for equal B the norm -1 solution has the smaller A
        for target in [-4i64, 4] {
            let a2sq = &m * &b * &b + target;
            if a2sq <= BigInt::zero() {
                continue;
            }
            let a2 = a2sq.sqrt();
            if &a2 * &a2 == a2sq && (half && a2.is_odd() == b.is_odd() || !half && a2.is_even()) {
                let two = BigRational::from_integer(2.into());
                return Some(FieldElem::new(
                    field,
                    BigRational::from_integer(a2) / &two,
                    BigRational::from_integer(b) / two,
                ));
            }
        }
    }
    None
}
