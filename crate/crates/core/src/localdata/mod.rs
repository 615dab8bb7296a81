//! Local reduction data via Tate's algorithm, conductors and the
//! everywhere-good-reduction test.

mod kodaira;
mod tate;

pub use kodaira::Kodaira;
pub use tate::tate_local;

use crate::arith::factor;
use crate::quadfield::{factor_rational_prime, PrimeIdeal};
use crate::weierstrass::{Curve, Isomorphism};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("cannot factor {0}: composite cofactor beyond trial division")]
    Factorization(String),
}

/// Result of Tate's algorithm at one prime.
#[derive(Debug, Clone)]
pub struct LocalData {
    prime: PrimeIdeal,
    kodaira: Kodaira,
    f_exp: u32,
    v_min_disc: u32,
    local_model: Curve,
    transform: Isomorphism,
}

impl LocalData {
    fn new(
        prime: PrimeIdeal,
        kodaira: Kodaira,
        f_exp: u32,
        v_min_disc: u32,
        local_model: Curve,
        transform: Isomorphism,
    ) -> Self {
        let ld = LocalData {
            prime,
            kodaira,
            f_exp,
            v_min_disc,
            local_model,
            transform,
        };
        ld.check();
        ld
    }

    fn check(&self) {
        let k = self.kodaira;
        assert_eq!(
            self.f_exp == 0,
            k.is_good(),
            "f = 0 iff good reduction ({k} at {})",
            self.prime
        );
        assert_eq!(
            self.f_exp == 1,
            k.is_multiplicative(),
            "f = 1 iff multiplicative ({k} at {})",
            self.prime
        );
        if self.prime.p() >= 5 && k.is_additive() {
            assert_eq!(
                self.f_exp, 2,
                "tame additive reduction has f = 2 ({k} at {})",
                self.prime
            );
        }
        assert!(self.v_min_disc >= self.f_exp, "v(disc) >= f at {}", self.prime);
        assert_eq!(
            self.prime.valuation(self.local_model.discriminant()),
            Some(self.v_min_disc as i64)
        );
        assert!(
            self.local_model
                .a_invariants()
                .iter()
                .all(|a| self.prime.valuation(a).is_none_or(|v| v >= 0)),
            "local model must be P-integral"
        );
    }

    pub fn prime(&self) -> &PrimeIdeal {
        &self.prime
    }

    pub fn kodaira(&self) -> Kodaira {
        self.kodaira
    }

    pub fn f_exp(&self) -> u32 {
        self.f_exp
    }

    pub fn v_min_disc(&self) -> u32 {
        self.v_min_disc
    }

    pub fn local_model(&self) -> &Curve {
        &self.local_model
    }

    /// The change of variables taking the input model to `local_model`.
    pub fn transform(&self) -> &Isomorphism {
        &self.transform
    }

    pub fn record(&self) -> LocalRecord {
        LocalRecord {
            prime: self.prime.to_string(),
            kodaira: self.kodaira,
            f: self.f_exp,
            v_disc: self.v_min_disc,
        }
    }
}

/// Report form of [`LocalData`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalRecord {
    pub prime: String,
    pub kodaira: Kodaira,
    pub f: u32,
    pub v_disc: u32,
}

/// The conductor together with the local data at every prime examined.
#[derive(Debug, Clone)]
pub struct Conductor {
    factors: Vec<(PrimeIdeal, u32)>,
    local: Vec<LocalData>,
}

impl Conductor {
    /// `(P, f_P)` with `f_P >= 1`; empty for the unit ideal.
    pub fn factors(&self) -> &[(PrimeIdeal, u32)] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn local_data(&self) -> &[LocalData] {
        &self.local
    }

    pub fn records(&self) -> Vec<LocalRecord> {
        self.local.iter().map(LocalData::record).collect()
    }

    /// `N(conductor)` as an integer.
    pub fn norm(&self) -> BigInt {
        self.factors
            .iter()
            .map(|(p, f)| BigInt::from(p.norm()).pow(*f))
            .product()
    }
}

impl std::fmt::Display for Conductor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("(1)");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

/// Rational primes below every prime where the model is non-integral or
/// its discriminant is not a unit.
fn candidate_primes(curve: &Curve) -> Result<BTreeSet<u64>, LocalError> {
    let mut nums = Vec::new();
    let n = curve.discriminant().norm();
    nums.push(n.numer().abs());
    nums.push(n.denom().clone());
    let den = curve
        .a_invariants()
        .iter()
        .fold(BigInt::one(), |acc, a| acc.lcm(&a.denominator()));
    nums.push(den);
    let mut out = BTreeSet::new();
    for x in nums.into_iter().filter(|x| !x.is_one()) {
        let fs = factor(&x).map_err(|c| LocalError::Factorization(c.to_string()))?;
        for (p, _) in fs {
            let p = u64::try_from(&p).map_err(|_| LocalError::Factorization(p.to_string()))?;
            out.insert(p);
        }
    }
    Ok(out)
}

/// Runs Tate's algorithm at every prime that can carry bad reduction.
pub fn conductor(curve: &Curve) -> Result<Conductor, LocalError> {
    let mut local = Vec::new();
    for p in candidate_primes(curve)? {
        for q in factor_rational_prime(curve.field(), p) {
            let integral = curve
                .a_invariants()
                .iter()
                .all(|a| q.valuation(a).is_none_or(|v| v >= 0));
            if integral && q.valuation(curve.discriminant()) == Some(0) {
                continue;
            }
            local.push(tate_local(curve, &q));
        }
    }
    let factors = local
        .iter()
        .filter(|l| l.f_exp > 0)
        .map(|l| (l.prime.clone(), l.f_exp))
        .collect();
    Ok(Conductor { factors, local })
}

/// True iff the conductor is the unit ideal, i.e. the minimal discriminant
/// is a unit everywhere.
pub fn is_everywhere_good(curve: &Curve) -> Result<bool, LocalError> {
    let c = conductor(curve)?;
    let unit_min_disc = c.local.iter().all(|l| l.v_min_disc == 0);
    assert_eq!(
        c.is_trivial(),
        unit_min_disc,
        "trivial conductor iff unit minimal discriminant"
    );
    Ok(c.is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::{FieldElem, QuadField};

    fn e(f: QuadField, s: &str) -> FieldElem {
        FieldElem::parse(f, s).unwrap()
    }

    #[test]
    fn good_reduction_short_circuit() {
        let f = QuadField::new(43).unwrap();
        let c = Curve::short(f.zero(), e(f, "1728")).unwrap();
        let p7 = &factor_rational_prime(f, 7)[0];
        let ld = tate_local(&c, p7);
        assert_eq!(ld.kodaira(), Kodaira::I0);
        assert_eq!(ld.f_exp(), 0);
        assert_eq!(ld.local_model(), &c);
        assert!(ld.transform().is_identity());
    }

    #[test]
    fn x3_plus_324x_is_bad_above_two() {
        let f = QuadField::new(43).unwrap();
        let c = Curve::short(e(f, "324"), f.zero()).unwrap();
        let p2 = &factor_rational_prime(f, 2)[0];
        assert!(tate_local(&c, p2).f_exp() >= 1);
        let n = conductor(&c).unwrap();
        assert!(!n.is_trivial());
        assert!(n.factors().iter().all(|(p, _)| p.p() == 2 || p.p() == 3));
    }

    #[test]
    fn x3_plus_1_supported_above_2_and_3() {
        let f = QuadField::new(43).unwrap();
        let c = Curve::short(f.zero(), e(f, "1")).unwrap();
        let n = conductor(&c).unwrap();
        assert!(!n.is_trivial());
        assert!(n.factors().iter().all(|(p, _)| p.p() == 2 || p.p() == 3));
    }

    #[test]
    fn control_curve_over_k29() {
        let f = QuadField::new(29).unwrap();
        let eps = e(f, "5/2 + 1/2*sqrt(29)");
        let c = Curve::new([f.one(), f.zero(), eps.pow(2), f.zero(), f.zero()]).unwrap();
        let n = c.discriminant().norm();
        assert!(n.is_one() || (-n).is_one());
        assert!(is_everywhere_good(&c).unwrap());
    }

    /// Kodaira types and conductor exponents of curves over Q from Cremona's
    /// tables. Over fields where p is unramified, local data are unchanged,
    /// and inert primes exercise the F_4 / F_9 / F_25 residue arithmetic.
    const CREMONA: &[(&str, [i64; 5], u64, Kodaira, u32)] = &[
        ("11a1", [0, -1, 1, -10, -20], 11, Kodaira::In(5), 1),
        ("11a3", [0, -1, 1, 0, 0], 11, Kodaira::In(1), 1),
        ("14a1", [1, 0, 1, 4, -6], 2, Kodaira::In(6), 1),
        ("14a1", [1, 0, 1, 4, -6], 7, Kodaira::In(3), 1),
        ("15a1", [1, 1, 1, -10, -10], 3, Kodaira::In(4), 1),
        ("15a1", [1, 1, 1, -10, -10], 5, Kodaira::In(4), 1),
        ("20a1", [0, 1, 0, 4, 4], 2, Kodaira::IVStar, 2),
        ("24a1", [0, -1, 0, -4, 4], 2, Kodaira::InStar(1), 3),
        ("27a3", [0, 0, 1, 0, 0], 3, Kodaira::II, 3),
        ("32a2", [0, 0, 0, -1, 0], 2, Kodaira::III, 5),
        ("36a1", [0, 0, 0, 0, 1], 2, Kodaira::IV, 2),
        ("36a1", [0, 0, 0, 0, 1], 3, Kodaira::III, 2),
        ("37a1", [0, 0, 1, -1, 0], 37, Kodaira::In(1), 1),
        ("64a4", [0, 0, 0, 1, 0], 2, Kodaira::II, 6),
    ];

    #[test]
    fn cremona_local_data_in_unramified_fields() {
        for m in [5, 13, 17, 21, 53] {
            let f = QuadField::new(m).unwrap();
            for (label, a, p, kod, fe) in CREMONA {
                if f.disc() % *p as i64 == 0 {
                    continue;
                }
                let c = Curve::new(a.map(|x| FieldElem::from_int(f, x))).unwrap();
                for q in factor_rational_prime(f, *p) {
                    let ld = tate_local(&c, &q);
                    assert_eq!((ld.kodaira(), ld.f_exp()), (*kod, *fe), "{label} at {q} over K_{m}");
                    assert_eq!(ld.transform().apply(&c), *ld.local_model());
                }
            }
        }
    }

    #[test]
    fn non_minimal_models_are_reduced() {
        for m in [5, 13, 17] {
            let f = QuadField::new(m).unwrap();
            for (label, a, p, kod, fe) in CREMONA {
                if f.disc() % *p as i64 == 0 {
                    continue;
                }
                let c = Curve::new(a.map(|x| FieldElem::from_int(f, x))).unwrap();
                for q in factor_rational_prime(f, *p) {
                    for k in [1, -1, 2] {
                        let u = q.uniformizer().pow(k);
                        let scaled = Isomorphism::scaling(u).unwrap().apply(&c);
                        let ld = tate_local(&scaled, &q);
                        assert_eq!(
                            (ld.kodaira(), ld.f_exp()),
                            (*kod, *fe),
                            "{label} scaled by pi^{k} at {q}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_doubles_at_ramified_two() {
        // 14a1 has I6 at 2; over K_43, where 2 ramifies, it becomes I12
        let f = QuadField::new(43).unwrap();
        let c = Curve::new([1, 0, 1, 4, -6].map(|x| FieldElem::from_int(f, x))).unwrap();
        let p2 = &factor_rational_prime(f, 2)[0];
        let ld = tate_local(&c, p2);
        assert_eq!((ld.kodaira(), ld.f_exp()), (Kodaira::In(12), 1));
    }

    #[test]
    fn minimality_is_idempotent() {
        let f = QuadField::new(43).unwrap();
        let eps = e(f, "3482 + 531*sqrt(43)");
        let curves = [
            Curve::short(e(f, "324"), f.zero()).unwrap(),
            Curve::short(f.zero(), &eps.pow(2) * 1728).unwrap(),
            Curve::short(f.zero(), e(f, "1")).unwrap(),
        ];
        for c in &curves {
            for ld in conductor(c).unwrap().local_data() {
                let again = tate_local(ld.local_model(), ld.prime());
                assert_eq!(again.kodaira(), ld.kodaira());
                assert_eq!(again.v_min_disc(), ld.v_min_disc());
                assert!(again.transform().is_identity() || again.kodaira() != Kodaira::I0);
            }
        }
    }
}
