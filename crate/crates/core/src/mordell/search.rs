use super::generators::{IntegralPoint, IntegralPointSet};
use super::{MordellCurve, MordellError};
use crate::quadfield::{BasisKind, FieldElem};
use crate::weierstrass::Point;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

/// Largest box half-width accepted by [`brute_search_integral`].
pub const MAX_SEARCH_H: u64 = 10_000;

const SIEVE_PRIMES: [u64; 14] = [67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131];

/// One sieve modulus: `8k = P0 + Q0 sqrt(m)` reduced mod `q`, and the squares mod `q`.
struct Sieve {
    q: u64,
    m: u64,
    p0: u64,
    q0: u64,
    square: Vec<bool>,
}

impl Sieve {
    fn new(q: u64, m: i64, p0: &BigInt, q0: &BigInt) -> Self {
        let red = |x: &BigInt| x.mod_floor(&BigInt::from(q)).to_u64().unwrap();
        let mut square = vec![false; q as usize];
        for i in 0..q {
            square[(i * i % q) as usize] = true;
        }
        Sieve {
            q,
            m: red(&BigInt::from(m)),
            p0: red(p0),
            q0: red(q0),
            square,
        }
    }

    /// Is the norm of `X^3 + 8k` a square mod `q`, for `X = a + b sqrt(m)`?
    fn admits(&self, a: i64, b: i64) -> bool {
        let q = self.q;
        let a = a.rem_euclid(q as i64) as u64;
        let b = b.rem_euclid(q as i64) as u64;
        let (a2, b2) = ((a * a + self.m * (b * b % q)) % q, 2 * a * b % q);
        let p = ((a2 * a + self.m * (b2 * b % q)) + self.p0) % q;
        let r = ((a2 * b + b2 * a) + self.q0) % q;
        let n = (p * p + (q - self.m) * (r * r % q)) % q;
        self.square[n as usize]
    }
}

/// All integral points with `x = u + v*omega`, `|u|, |v| <= h`, plus `O`.
/// Independent of any generator data.
pub fn brute_search_integral(mc: &MordellCurve, h: u64) -> Result<IntegralPointSet, MordellError> {
    if h > MAX_SEARCH_H {
        return Err(MordellError::BoundTooLarge(h));
    }
    let field = mc.field();
    let m = field.m();
    let k8 = mc.constant() * 8;
    let (p0, q0) = (k8.a().to_integer(), k8.b().to_integer());
    let sieves: Vec<Sieve> = SIEVE_PRIMES
        .iter()
        .filter(|&&q| m % q as i64 != 0)
        .map(|&q| Sieve::new(q, m, &p0, &q0))
        .collect();
    let half_basis = field.basis() == BasisKind::OneHalfOnePlusSqrtM;
    let h = h as i64;

    let found: Vec<IntegralPoint> = (-h..=h)
        .into_par_iter()
        .flat_map_iter(|u| {
            let sieves = &sieves;
            (-h..=h).flat_map(move |v| {
                // 2x = a + b sqrt(m)
                let (a, b) = if half_basis { (2 * u + v, v) } else { (2 * u, 2 * v) };
                if !sieves.iter().all(|s| s.admits(a, b)) {
                    return Vec::new();
                }
                let x = FieldElem::from_basis_coords(
                    field,
                    BigRational::from_integer(u.into()),
                    BigRational::from_integer(v.into()),
                );
                let rhs = &x * &x * &x + mc.constant();
                match rhs.sqrt() {
                    Some(y) if y.is_integral() => {
                        let mut pts = vec![Point::Affine(x.clone(), y.clone())];
                        if !y.is_zero() {
                            pts.push(Point::Affine(x, -y));
                        }
                        pts.into_iter()
                            .map(|point| IntegralPoint {
                                point,
                                combination: "search".into(),
                            })
                            .collect()
                    }
                    _ => Vec::new(),
                }
            })
        })
        .collect();
    let origin = IntegralPoint {
        point: Point::Infinity,
        combination: "O".into(),
    };
    Ok(IntegralPointSet::from_points(found.into_iter().chain([origin])))
}
