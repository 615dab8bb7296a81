use super::{AlgInt, FieldElem};
use crate::arith::{centered, hensel_lift, mod_inverse, primes, roots_mod_p};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

/// Evaluates `sum c_i x^i` (coefficients low-to-high).
pub fn eval_poly(coeffs: &[FieldElem], x: &FieldElem) -> FieldElem {
    let zero = x.field().zero();
    coeffs.iter().rev().fold(zero, |acc, c| acc * x + c)
}

/// Distinct roots in `K` of a squarefree polynomial with coefficients in `K`
/// (low-to-high), sorted by the real embedding.
///
/// The polynomial is scaled to a monic one over `O_K`, whose roots are
/// algebraic integers bounded under both real embeddings. Roots are found
/// modulo a large power of a split prime under each of its two embeddings,
/// paired up by CRT on the integral basis, and checked exactly.
pub fn roots_in_field(coeffs: &[FieldElem]) -> Vec<FieldElem> {
    let mut c: Vec<FieldElem> = coeffs.to_vec();
    while c.last().is_some_and(FieldElem::is_zero) {
        c.pop();
    }
    assert!(c.len() >= 2, "polynomial must have positive degree");
    let field = c[0].field();
    let mut out = Vec::new();
    if c[0].is_zero() {
        out.push(field.zero());
        while c[0].is_zero() {
            c.remove(0);
        }
    }
    if c.len() >= 2 {
        out.extend(nonzero_roots(&c));
    }
    out.sort_by(|a, b| a.real_cmp(b));
    out.dedup();
    out
}

fn nonzero_roots(c: &[FieldElem]) -> Vec<FieldElem> {
    let field = c[0].field();
    let d = c.len() - 1;
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator()));
    let scale = FieldElem::from_bigints(field, den, BigInt::zero());
    let c: Vec<FieldElem> = c.iter().map(|x| x * &scale).collect();
    let lead = c[d].clone();
    if d == 1 {
        return vec![-(&c[0] / &lead)];
    }
    // g(X) = lead^(d-1) f(X / lead) is monic with integral coefficients
    let mut g: Vec<AlgInt> = Vec::with_capacity(d + 1);
    let mut lp = field.one();
    for i in (0..d).rev() {
        g.push(AlgInt::try_from_elem(&(&c[i] * &lp)).expect("integral after clearing denominators"));
        lp = &lp * &lead;
    }
    g.reverse();
    g.push(AlgInt::from_i64(field, 1, 0));

    let s = BigInt::from(field.m().sqrt() + 1);
    let r = g[..d].iter().map(|a| a.u().abs() + a.v().abs() * &s).max().unwrap() + 1;
    let bound = &r * (&s * 2 + 1);

    let (t, n) = field.omega_relation();
    let omega_poly = [BigInt::from(-n), BigInt::from(-t), BigInt::one()];
    let g_elems: Vec<FieldElem> = g.iter().map(AlgInt::to_elem).collect();

    for p in primes().skip(1).take(500) {
        let w = roots_mod_p(&omega_poly, p);
        if w.len() != 2 {
            continue;
        }
        let pb = BigInt::from(p);
        let mut k = 1u32;
        let mut modulus = pb.clone();
        while modulus <= &bound * 2 + 1 {
            modulus *= &pb;
            k += 1;
        }
        let lifted_w: Vec<BigInt> = w.iter().map(|&w| hensel_lift(&omega_poly, w, p, k)).collect();
        let mut per_embedding: Vec<Vec<BigInt>> = Vec::new();
        let mut simple = true;
        for wl in &lifted_w {
            let gw: Vec<BigInt> = g.iter().map(|a| (a.u() + a.v() * wl).mod_floor(&modulus)).collect();
            let roots = roots_mod_p(&gw, p);
            let deriv: Vec<BigInt> = gw
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigInt::from(i))
                .collect();
            if roots.iter().any(|&r| eval_mod_p(&deriv, r, &pb).is_zero()) {
                simple = false;
                break;
            }
            per_embedding.push(roots.iter().map(|&r| hensel_lift(&gw, r, p, k)).collect());
        }
        if !simple {
            continue;
        }
        let inv = mod_inverse(&(&lifted_w[0] - &lifted_w[1]), &modulus).expect("p does not divide disc");
        let mut out = Vec::new();
        for r1 in &per_embedding[0] {
            for r2 in &per_embedding[1] {
                let v = centered(&((r1 - r2) * &inv), &modulus);
                let u = centered(&(r1 - &v * &lifted_w[0]), &modulus);
                let beta = AlgInt::new(field, u, v).to_elem();
                if eval_poly(&g_elems, &beta).is_zero() {
                    out.push(&beta / &lead);
                }
            }
        }
        return out;
    }
    panic!("no suitable split prime: polynomial is not squarefree");
}

fn eval_mod_p(poly: &[BigInt], x: u64, p: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    poly.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * &x + c).mod_floor(p))
}

#[cfg(test)]
mod tests {
    use super::super::QuadField;
    use super::*;

    fn e(f: QuadField, s: &str) -> FieldElem {
        FieldElem::parse(f, s).unwrap()
    }

    fn from_roots(roots: &[FieldElem], lead: &FieldElem) -> Vec<FieldElem> {
        let f = lead.field();
        let mut p = vec![lead.clone()];
        for r in roots {
            let mut next = vec![f.zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * r);
            }
            p = next;
        }
        p
    }

    #[test]
    fn recovers_planted_roots() {
        for m in [43, 29, 46, 5] {
            let f = QuadField::new(m).unwrap();
            let roots = vec![e(f, "-12"), e(f, &format!("3/7 + -5/2*sqrt({m})")), e(f, "1/3")];
            let poly = from_roots(&roots, &e(f, &format!("4 + 1*sqrt({m})")));
            let mut expect = roots.clone();
            expect.sort_by(|a, b| a.real_cmp(b));
            assert_eq!(roots_in_field(&poly), expect, "m = {m}");
        }
    }

    #[test]
    fn irreducible_factors_give_nothing() {
        let f = QuadField::new(43).unwrap();
        // (x^2 - 2)(x - 5): only 5 is in K
        let poly = vec![e(f, "10"), e(f, "-2"), e(f, "-5"), e(f, "1")];
        assert_eq!(roots_in_field(&poly), vec![e(f, "5")]);
        // x^3 - 43 x = x (x - sqrt 43)(x + sqrt 43)
        let poly = vec![f.zero(), e(f, "-43"), f.zero(), e(f, "1")];
        assert_eq!(
            roots_in_field(&poly),
            vec![e(f, "-1*sqrt(43)"), f.zero(), e(f, "1*sqrt(43)")]
        );
    }

    #[test]
    fn large_unit_roots() {
        let f = QuadField::new(46).unwrap();
        let eps = e(f, "24335 + 3588*sqrt(46)");
        let r = &eps * -12;
        let poly = from_roots(&[r.clone(), eps.pow(5)], &f.one());
        let mut extra = poly.clone();
        extra.insert(0, f.zero());
        assert_eq!(roots_in_field(&poly).len(), 2);
        assert!(roots_in_field(&poly).contains(&r));
        assert_eq!(roots_in_field(&extra).len(), 3);
    }
}
