use super::{factor_rational_prime, fundamental_unit, FieldElem, PrimeIdeal, QuadField, Splitting};
use crate::arith::{exact_sqrt, primes};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

/// Prime ideals of norm at most the Minkowski bound `sqrt(disc)/2`.
pub fn minkowski_primes(field: QuadField) -> Vec<PrimeIdeal> {
    let disc = field.disc() as u128;
    primes()
        .take_while(|&p| 4 * (p as u128) * (p as u128) <= disc)
        .flat_map(|p| factor_rational_prime(field, p))
        .filter(|q| 4 * (q.norm() as u128).pow(2) <= disc)
        .collect()
}

/// A generator of `P` if it is principal.
///
/// Any principal ideal of norm `N` has a generator `alpha` with
/// `|alpha|, |conj(alpha)| <= sqrt(N * eps)` (multiply by a power of `eps`
/// to balance the two embeddings), which bounds the search box.
pub fn principal_generator(prime: &PrimeIdeal) -> Option<FieldElem> {
    let field = prime.field();
    if prime.splitting() == Splitting::Inert {
        return Some(FieldElem::from_int(field, prime.p() as i64));
    }
    let m = BigInt::from(field.m());
    let norm = BigInt::from(prime.norm());
    let eps = fundamental_unit(field);
    let eps_bound = (eps.a() * BigRational::from_integer(2.into())).ceil().to_integer() + 1;
    let box_sq: BigInt = BigInt::from(4) * &norm * &eps_bound / &m;
    let y_max = box_sq.sqrt() + 1;
    let half = matches!(field.basis(), super::BasisKind::OneHalfOnePlusSqrtM);
    let two = BigRational::from_integer(2.into());
    let mut y = BigInt::from(0);
    while y <= y_max {
        for target in [&norm * 4, &norm * -4] {
            let x_sq = &m * &y * &y + &target;
            let Some(x) = exact_sqrt(&x_sq) else { continue };
            let parity_ok = if half {
                x.is_odd() == y.is_odd()
            } else {
                x.is_even() && y.is_even()
            };
            if !parity_ok {
                continue;
            }
            for ys in [y.clone(), -&y] {
                let alpha = FieldElem::new(
                    field,
                    BigRational::from_integer(x.clone()) / &two,
                    BigRational::from_integer(ys) / &two,
                );
                if prime.valuation(&alpha) == Some(1) {
                    return Some(alpha);
                }
            }
        }
        y += 1;
    }
    None
}

/// True iff every prime below the Minkowski bound is principal.
pub fn class_number_is_one(field: QuadField) -> bool {
    minkowski_primes(field).iter().all(|q| principal_generator(q).is_some())
}
