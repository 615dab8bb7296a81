use super::{AlgInt, FieldElem, QuadError, QuadField, ResidueElem, ResidueField};
use crate::arith::{is_prime_u64, mod_floor_u64, mod_inverse, valuation_at};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// A nonzero prime `P = (p, second_gen)` of the ring of integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    field: QuadField,
    p: u64,
    splitting: Splitting,
    second_gen: AlgInt,
    /// Image of omega in the residue field when the residue degree is 1.
    omega_image: u64,
    /// For split primes: `omega - r'`, lying in the conjugate prime but not in this one.
    companion: Option<AlgInt>,
    uniformizer: FieldElem,
    residue: ResidueField,
}

/// Kummer-Dedekind factorization of `p O_K` using the minimal polynomial of
/// omega (the integral basis has index 1, so every `p` is covered).
pub fn factor_rational_prime(field: QuadField, p: u64) -> Vec<PrimeIdeal> {
    assert!(is_prime_u64(p), "{p} is not prime");
    let (t, n) = field.omega_relation();
    let pi = p as i128;
    let t_mod = (t as i128).rem_euclid(pi);
    let n_mod = (n as i128).rem_euclid(pi);
    let roots: Vec<u64> = (0..p)
        .filter(|&r| {
            let r = r as i128;
            (r * r - t_mod * r - n_mod).rem_euclid(pi) == 0
        })
        .collect();
    let omega_minus = |r: u64| {
        // omega - r with r taken in (-p/2, p/2]
        let r = r as i64;
        let r = if 2 * r > p as i64 { r - p as i64 } else { r };
        AlgInt::from_i64(field, -r, 1)
    };
    let uniformizer_for = |r: u64| {
        let g = omega_minus(r);
        let norm = g.norm();
        if valuation_at(&norm, p) == 1 {
            g.to_elem()
        } else {
            g.to_elem() + p as i64
        }
    };
    match roots.as_slice() {
        [] => vec![PrimeIdeal {
            field,
            p,
            splitting: Splitting::Inert,
            second_gen: AlgInt::from_i64(field, p as i64, 0),
            omega_image: 0,
            companion: None,
            uniformizer: FieldElem::from_int(field, p as i64),
            residue: ResidueField::quadratic(p, t_mod as u64, n_mod as u64),
        }],
        [r] => vec![PrimeIdeal {
            field,
            p,
            splitting: Splitting::Ramified,
            second_gen: omega_minus(*r),
            omega_image: *r,
            companion: None,
            uniformizer: omega_minus(*r).to_elem(),
            residue: ResidueField::prime(p),
        }],
        [r1, r2] => [(*r1, *r2), (*r2, *r1)]
            .into_iter()
            .map(|(r, other)| PrimeIdeal {
                field,
                p,
                splitting: Splitting::Split,
                second_gen: omega_minus(r),
                omega_image: r,
                companion: Some(omega_minus(other)),
                uniformizer: uniformizer_for(r),
                residue: ResidueField::prime(p),
            })
            .collect(),
        _ => unreachable!("a quadratic has at most two roots mod p"),
    }
}

fn min_valuation(u: &BigInt, v: &BigInt, p: u64) -> u32 {
    match (u.is_zero(), v.is_zero()) {
        (true, true) => unreachable!("zero handled by caller"),
        (true, false) => valuation_at(v, p),
        (false, true) => valuation_at(u, p),
        (false, false) => valuation_at(u, p).min(valuation_at(v, p)),
    }
}

impl PrimeIdeal {
    pub fn field(&self) -> QuadField {
        self.field
    }

    /// The rational prime below.
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ramification(&self) -> u8 {
        if self.splitting == Splitting::Ramified {
            2
        } else {
            1
        }
    }

    pub fn residue_degree(&self) -> u8 {
        if self.splitting == Splitting::Inert {
            2
        } else {
            1
        }
    }

    pub fn splitting(&self) -> Splitting {
        self.splitting
    }

    pub fn second_gen(&self) -> &AlgInt {
        &self.second_gen
    }

    pub fn norm(&self) -> u64 {
        self.residue.size()
    }

    /// An element of valuation exactly 1 at this prime (and 0 at its conjugate when split).
    pub fn uniformizer(&self) -> &FieldElem {
        &self.uniformizer
    }

    pub fn residue_field(&self) -> ResidueField {
        self.residue
    }

    fn valuation_integral(&self, a: &AlgInt) -> i64 {
        let p = self.p;
        match self.splitting {
            Splitting::Inert => min_valuation(a.u(), a.v(), p) as i64,
            Splitting::Ramified => valuation_at(&a.norm(), p) as i64,
            Splitting::Split => {
                let k = min_valuation(a.u(), a.v(), p);
                let pk = BigInt::from(p).pow(k);
                let rest = AlgInt::new(self.field, a.u() / &pk, a.v() / &pk);
                if self.residue_of_integral(&rest).is_zero() {
                    k as i64 + valuation_at(&rest.norm(), p) as i64
                } else {
                    k as i64
                }
            }
        }
    }

    /// The additive valuation `v_P(x)`; `None` for `x = 0`.
    pub fn valuation(&self, x: &FieldElem) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        let d = x.denominator();
        let alpha = (x * &FieldElem::from_bigints(self.field, d.clone(), BigInt::zero()))
            .to_algint()
            .expect("scaled by its denominator");
        let vd = if d.is_one() { 0 } else { valuation_at(&d, self.p) as i64 };
        Some(self.valuation_integral(&alpha) - self.ramification() as i64 * vd)
    }

    /// `v_P(x) >= 1`, counting zero as divisible.
    pub fn divides(&self, x: &FieldElem) -> bool {
        self.valuation(x).is_none_or(|v| v > 0)
    }

    fn residue_of_integral(&self, a: &AlgInt) -> ResidueElem {
        let u = mod_floor_u64(a.u(), self.p);
        let v = mod_floor_u64(a.v(), self.p);
        if self.residue.degree() == 1 {
            self.residue.elem(u, 0) + self.residue.elem(v, 0) * self.residue.elem(self.omega_image, 0)
        } else {
            self.residue.elem(u, v)
        }
    }

    /// Reduction `O_{K,P} -> O_K / P`.
    pub fn reduce(&self, x: &FieldElem) -> Result<ResidueElem, QuadError> {
        let Some(v) = self.valuation(x) else {
            return Ok(self.residue.zero());
        };
        if v < 0 {
            return Err(QuadError::NegativeValuation {
                elem: x.to_string(),
                prime: self.to_string(),
            });
        }
        if v > 0 {
            return Ok(self.residue.zero());
        }
        let d = x.denominator();
        let pb = BigInt::from(self.p);
        let k = valuation_at(&d, self.p);
        let alpha = (x * &FieldElem::from_bigints(self.field, d.clone(), BigInt::zero()))
            .to_algint()
            .expect("scaled by its denominator");
        let d_rest = &d / pb.pow(k);
        let d_inv = mod_inverse(&d_rest, &pb).expect("coprime to p");
        let d_inv = self.residue.elem(mod_floor_u64(&d_inv, self.p), 0);
        if k == 0 {
            return Ok(self.residue_of_integral(&alpha) * d_inv);
        }
        // p divides the denominator: only possible for split primes. Multiply
        // through by companion^k, which absorbs p^k at the conjugate prime.
        let companion = self
            .companion
            .as_ref()
            .expect("denominators divisible by p only occur at split primes")
            .to_elem();
        let sigma = companion.pow(k as i64);
        let beta = (&alpha.to_elem() * &sigma) / FieldElem::from_bigints(self.field, pb.pow(k), BigInt::zero());
        let beta = beta.to_algint().expect("integral after clearing the conjugate prime");
        let sigma_red = self.residue_of_integral(&sigma.to_algint().expect("integral"));
        Ok(self.residue_of_integral(&beta) * sigma_red.inv().expect("companion is a unit at P") * d_inv)
    }

    /// An element of `O_K` reducing to `r`.
    pub fn lift(&self, r: ResidueElem) -> FieldElem {
        let (c0, c1) = r.coords();
        if self.residue.degree() == 1 {
            FieldElem::from_int(self.field, c0 as i64)
        } else {
            AlgInt::from_i64(self.field, c0 as i64, c1 as i64).to_elem()
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.splitting {
            Splitting::Inert => write!(f, "({})", self.p),
            _ => write!(f, "({}, {})", self.p, self.second_gen),
        }
    }
}
