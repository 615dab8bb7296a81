//! Chord-and-tangent law on a long Weierstrass model, shared by curves over
//! `K` and over residue fields.

use crate::quadfield::{FieldElem, ResidueElem};

pub trait Coeff: Clone + PartialEq {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; callers never pass zero.
    fn inv(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn int(&self, n: i64) -> Self;
}

impl Coeff for FieldElem {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.inverse().expect("nonzero")
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn int(&self, n: i64) -> Self {
        FieldElem::from_int(self.field(), n)
    }
}

impl Coeff for ResidueElem {
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn inv(&self) -> Self {
        ResidueElem::inv(self).expect("nonzero")
    }
    fn is_zero(&self) -> bool {
        ResidueElem::is_zero(self)
    }
    fn int(&self, n: i64) -> Self {
        self.field().from_i64(n)
    }
}

/// A point on a Weierstrass model: the point at infinity or an affine pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point<F = FieldElem> {
    Infinity,
    Affine(F, F),
}

impl<F> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn coords(&self) -> Option<(&F, &F)> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, y) => Some((x, y)),
        }
    }
}

/// `[a1, a2, a3, a4, a6]`
pub type Coeffs<F> = [F; 5];

pub fn satisfies<F: Coeff>(a: &Coeffs<F>, x: &F, y: &F) -> bool {
    let [a1, a2, a3, a4, a6] = a;
    let lhs = y.mul(y).add(&a1.mul(x).mul(y)).add(&a3.mul(y));
    let x2 = x.mul(x);
    let rhs = x2.mul(x).add(&a2.mul(&x2)).add(&a4.mul(x)).add(a6);
    lhs == rhs
}

pub fn on_curve<F: Coeff>(a: &Coeffs<F>, p: &Point<F>) -> bool {
    match p {
        Point::Infinity => true,
        Point::Affine(x, y) => satisfies(a, x, y),
    }
}

pub fn negate<F: Coeff>(a: &Coeffs<F>, p: &Point<F>) -> Point<F> {
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => {
            let [a1, _, a3, _, _] = a;
            Point::Affine(x.clone(), y.neg().sub(&a1.mul(x)).sub(a3))
        }
    }
}

pub fn add<F: Coeff>(a: &Coeffs<F>, p: &Point<F>, q: &Point<F>) -> Point<F> {
    let (x1, y1, x2, y2) = match (p, q) {
        (Point::Infinity, _) => return q.clone(),
        (_, Point::Infinity) => return p.clone(),
        (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    let [a1, a2, a3, a4, _] = a;
    let lambda = if x1 == x2 {
        // P = Q or P = -Q
        let denom = y1.add(y1).add(&a1.mul(x1)).add(a3);
        if y1 != y2 || denom.is_zero() {
            return Point::Infinity;
        }
        let num = x1
            .mul(x1)
            .mul(&x1.int(3))
            .add(&a2.mul(x1).mul(&x1.int(2)))
            .add(a4)
            .sub(&a1.mul(y1));
        num.mul(&denom.inv())
    } else {
        y2.sub(y1).mul(&x2.sub(x1).inv())
    };
    let nu = y1.sub(&lambda.mul(x1));
    let x3 = lambda.mul(&lambda).add(&a1.mul(&lambda)).sub(a2).sub(x1).sub(x2);
    let y3 = lambda.add(a1).mul(&x3).neg().sub(&nu).sub(a3);
    Point::Affine(x3, y3)
}

pub fn scalar_mul<F: Coeff>(a: &Coeffs<F>, k: i64, p: &Point<F>) -> Point<F> {
    let base = if k < 0 { negate(a, p) } else { p.clone() };
    let mut n = k.unsigned_abs();
    let mut acc = Point::Infinity;
    let mut dbl = base;
    while n > 0 {
        if n & 1 == 1 {
            acc = add(a, &acc, &dbl);
        }
        n >>= 1;
        if n > 0 {
            dbl = add(a, &dbl, &dbl);
        }
    }
    acc
}
