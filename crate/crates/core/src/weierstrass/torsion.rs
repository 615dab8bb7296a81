use super::group::Point;
use super::reduction::{reduce_curve, MAX_COUNT_FIELD};
use super::{Curve, CurveError};
use crate::arith::primes;
use crate::quadfield::{factor_rational_prime, roots_in_field, FieldElem, PrimeIdeal};
use num_integer::Integer;
use serde::Serialize;

const MIN_PRIMES: usize = 5;
const MAX_PRIMES: usize = 30;

/// Torsion subgroup, certified when the reduction bound equals the order of
/// the exhibited 2-torsion.
#[derive(Debug, Clone, Serialize)]
pub struct Torsion {
    /// Invariant factors, e.g. `[]`, `[2]` or `[2, 2]`.
    pub structure: Vec<u64>,
    pub generators: Vec<Point>,
    pub order: u64,
    /// gcd of `#E(F_P)` over the primes used.
    pub bound: u64,
    pub primes_used: Vec<String>,
}

impl Torsion {
    pub fn label(&self) -> String {
        if self.structure.is_empty() {
            "trivial".to_string()
        } else {
            self.structure
                .iter()
                .map(|n| format!("Z/{n}"))
                .collect::<Vec<_>>()
                .join(" x ")
        }
    }
}

/// Points of exact order 2: `x` runs over the `K`-roots of the 2-division
/// polynomial `4x^3 + b2 x^2 + 2 b4 x + b6`.
pub fn two_torsion_points(curve: &Curve) -> Vec<Point> {
    let inv = curve.invariants();
    let f = curve.field();
    let cubic = [inv.b6.clone(), &inv.b4 * 2, inv.b2.clone(), FieldElem::from_int(f, 4)];
    let half = FieldElem::from_ints(f, 1, 0) / FieldElem::from_int(f, 2);
    roots_in_field(&cubic)
        .into_iter()
        .map(|x| {
            let y = -(curve.a1() * &x + curve.a3()) * &half;
            Point::Affine(x, y)
        })
        .collect()
}

fn usable(curve: &Curve, q: &PrimeIdeal) -> bool {
    q.ramification() == 1
        && q.norm() <= MAX_COUNT_FIELD
        && curve
            .a_invariants()
            .iter()
            .all(|a| q.valuation(a).is_none_or(|v| v >= 0))
        && q.valuation(curve.discriminant()) == Some(0)
}

/// Torsion order bound from point counts at good unramified primes of
/// residue characteristic at least 5, together with the primes used. Stops
/// once at least five primes have been used and the bound equals `target`.
pub fn torsion_bound(curve: &Curve, target: u64) -> Result<(u64, Vec<String>), CurveError> {
    let mut g = 0u64;
    let mut used = Vec::new();
    for p in primes().skip(2) {
        for q in factor_rational_prime(curve.field(), p) {
            if !usable(curve, &q) {
                continue;
            }
            let n = reduce_curve(curve, &q)?.count_points()?;
            g = g.gcd(&n);
            used.push(q.to_string());
            if used.len() >= MIN_PRIMES && g == target || used.len() >= MAX_PRIMES {
                return Ok((g, used));
            }
        }
    }
    unreachable!("infinitely many primes")
}

pub fn torsion_subgroup(curve: &Curve) -> Result<Torsion, CurveError> {
    let two = two_torsion_points(curve);
    for t in &two {
        debug_assert!(curve.is_on_curve(t));
        debug_assert!(curve.scalar_mul(2, t).is_infinity());
    }
    let order = 1 + two.len() as u64;
    let (bound, primes_used) = torsion_bound(curve, order)?;
    if bound != order {
        return Err(CurveError::TorsionInconclusive {
            bound,
            exhibited: order,
        });
    }
    let (structure, generators) = match two.len() {
        0 => (vec![], vec![]),
        1 => (vec![2], two),
        _ => (vec![2, 2], two[..2].to_vec()),
    };
    Ok(Torsion {
        structure,
        generators,
        order,
        bound,
        primes_used,
    })
}
