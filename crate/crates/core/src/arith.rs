//! Rational-integer helpers shared by the field, curve and oracle code.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn exact_sqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    // Residues mod 64 reject ~80% of non-squares without a root extraction.
    const SQ64: u64 = {
        let mut mask = 0u64;
        let mut i = 0;
        while i < 64 {
            mask |= 1 << ((i * i) % 64);
            i += 1;
        }
        mask
    };
    if SQ64 >> (n & 63) & 1 == 0 {
        return None;
    }
    let r = (n as u128).sqrt() as i128;
    (r * r == n).then_some(r)
}

/// Largest `k` with `p^k | n`. `n` must be nonzero.
pub fn valuation_at(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

pub fn mod_floor_u64(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits u64")
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first 20 prime bases; exact below 3.3e24 and
/// overwhelmingly reliable above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in primes().take(20) {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x).mod_floor(n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Iterator over the rational primes 2, 3, 5, ...
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime_u64(n))
}

const TRIAL_LIMIT: u64 = 1 << 20;

/// Factorization of `|n|` by trial division up to 2^20 followed by a
/// primality test on the cofactor. Returns the composite cofactor as an
/// error when it cannot be split.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>, BigInt> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut rest = n.abs();
    let mut out = Vec::new();
    for p in primes() {
        if rest.is_one() {
            return Ok(out);
        }
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            out.push((rest, 1));
            return Ok(out);
        }
        if p > TRIAL_LIMIT {
            break;
        }
        let mut k = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        if k > 0 {
            out.push((pb, k));
        }
    }
    if is_probable_prime(&rest) {
        out.push((rest, 1));
        Ok(out)
    } else {
        Err(rest)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    g.gcd.is_one().then(|| g.x.mod_floor(m))
}

/// Representative of `a mod m` in `(-m/2, m/2]`.
pub fn centered(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn eval_mod(poly: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    poly.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn derivative(poly: &[BigInt]) -> Vec<BigInt> {
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Roots of `poly` (coefficients low-to-high) modulo `p`, by exhaustive scan.
pub fn roots_mod_p(poly: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    (0..p)
        .filter(|&r| eval_mod(poly, &BigInt::from(r), &pb).is_zero())
        .collect()
}

/// Newton/Hensel lift of a simple root `r` of `poly` mod `p` to a root mod `p^k`.
pub fn hensel_lift(poly: &[BigInt], r: u64, p: u64, k: u32) -> BigInt {
    let modulus = BigInt::from(p).pow(k);
    let deriv = derivative(poly);
    let mut x = BigInt::from(r);
    loop {
        let fx = eval_mod(poly, &x, &modulus);
        if fx.is_zero() {
            return x;
        }
        let dfx = eval_mod(&deriv, &x, &modulus);
        let inv = mod_inverse(&dfx, &modulus).expect("Hensel lifting needs a simple root");
        x = (x - fx * inv).mod_floor(&modulus);
    }
}
