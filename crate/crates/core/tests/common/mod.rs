#![allow(dead_code)]

use egr_core::pipeline::{load_config, SuiteSpec};
use egr_core::quadfield::{FieldElem, QuadField};
use egr_core::weierstrass::{Curve, Point};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use std::path::Path;

pub const FIELDS: [i64; 8] = [5, 13, 29, 43, 46, 59, 62, 71];

pub fn shipped_suite() -> SuiteSpec {
    load_config(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/cases.json")).expect("shipped config loads")
}

pub fn control_suite() -> SuiteSpec {
    load_config(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/control.json")).expect("control config loads")
}

pub fn field<R: Rng>(rng: &mut R) -> QuadField {
    QuadField::new(FIELDS[rng.gen_range(0..FIELDS.len())]).unwrap()
}

pub fn rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-num..=num)),
        BigInt::from(rng.gen_range(1..=den)),
    )
}

pub fn elem<R: Rng>(rng: &mut R, k: QuadField, num: i64, den: i64) -> FieldElem {
    FieldElem::new(k, rational(rng, num, den), rational(rng, num, den))
}

/// Integral element `u + v*omega` with `|u|, |v| <= bound`.
pub fn integral<R: Rng>(rng: &mut R, k: QuadField, bound: i64) -> FieldElem {
    let c = |rng: &mut R| BigRational::from_integer(rng.gen_range(-bound..=bound).into());
    let u = c(rng);
    FieldElem::from_basis_coords(k, u, c(rng))
}

fn det3(m: &[[FieldElem; 3]; 3]) -> FieldElem {
    &m[0][0] * &(&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * &(&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * &(&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// A random nonsingular curve through three random points: fixes `a1, a2`
/// and solves the linear conditions for `a3, a4, a6`.
pub fn curve_through_three<R: Rng>(rng: &mut R, k: QuadField) -> Option<(Curve, [Point; 3])> {
    let pts: Vec<(FieldElem, FieldElem)> = (0..3).map(|_| (elem(rng, k, 9, 4), elem(rng, k, 9, 4))).collect();
    let a1 = elem(rng, k, 3, 2);
    let a2 = elem(rng, k, 3, 2);
    // y a3 - x a4 - a6 = x^3 + a2 x^2 - y^2 - a1 x y
    let rows: Vec<[FieldElem; 3]> = pts
        .iter()
        .map(|(x, y)| [y.clone(), -x, FieldElem::from_int(k, -1)])
        .collect();
    let rhs: Vec<FieldElem> = pts
        .iter()
        .map(|(x, y)| x * x * x + &a2 * x * x - y * y - &a1 * x * y)
        .collect();
    let m = [rows[0].clone(), rows[1].clone(), rows[2].clone()];
    let d = det3(&m);
    if d.is_zero() {
        return None;
    }
    let solve = |col: usize| {
        let mut mm = m.clone();
        for i in 0..3 {
            mm[i][col] = rhs[i].clone();
        }
        det3(&mm) / &d
    };
    let (a3, a4, a6) = (solve(0), solve(1), solve(2));
    let curve = Curve::new([a1, a2, a3, a4, a6]).ok()?;
    let p: Vec<Point> = pts.into_iter().map(|(x, y)| Point::Affine(x, y)).collect();
    Some((curve, [p[0].clone(), p[1].clone(), p[2].clone()]))
}
