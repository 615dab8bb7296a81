use crate::arith::mul_mod;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The residue field `O_K / P`, either `F_p` or `F_p[w]/(w^2 - t*w - n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueField {
    p: u64,
    degree: u8,
    t: u64,
    n: u64,
}

/// An element `c0 + c1*w` of a residue field (`c1 = 0` when the degree is 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueElem {
    field: ResidueField,
    c0: u64,
    c1: u64,
}

impl ResidueField {
    pub fn prime(p: u64) -> Self {
        ResidueField {
            p,
            degree: 1,
            t: 0,
            n: 0,
        }
    }

    /// `F_p[w]/(w^2 - t*w - n)`; the caller guarantees irreducibility.
    pub fn quadratic(p: u64, t: u64, n: u64) -> Self {
        ResidueField {
            p,
            degree: 2,
            t: t % p,
            n: n % p,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    pub fn zero(&self) -> ResidueElem {
        self.elem(0, 0)
    }

    pub fn one(&self) -> ResidueElem {
        self.elem(1, 0)
    }

    pub fn elem(&self, c0: u64, c1: u64) -> ResidueElem {
        let c1 = if self.degree == 1 { 0 } else { c1 % self.p };
        ResidueElem {
            field: *self,
            c0: c0 % self.p,
            c1,
        }
    }

    pub fn from_i64(&self, n: i64) -> ResidueElem {
        self.elem(n.rem_euclid(self.p as i64) as u64, 0)
    }

    /// The class of `w` (only meaningful for degree 2).
    pub fn generator(&self) -> ResidueElem {
        self.elem(0, 1)
    }

    pub fn elements(&self) -> impl Iterator<Item = ResidueElem> + '_ {
        let p = self.p;
        let c1_range = if self.degree == 1 { 1 } else { p };
        (0..c1_range).flat_map(move |c1| (0..p).map(move |c0| self.elem(c0, c1)))
    }
}

impl ResidueElem {
    pub fn field(&self) -> ResidueField {
        self.field
    }

    pub fn coords(&self) -> (u64, u64) {
        (self.c0, self.c1)
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    pub fn pow(&self, mut e: u64) -> ResidueElem {
        let mut acc = self.field.one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<ResidueElem> {
        (!self.is_zero()).then(|| self.pow(self.field.size() - 2))
    }

    /// An `e`-th root, found by exhaustive scan.
    pub fn nth_root(&self, e: u32) -> Option<ResidueElem> {
        self.field.elements().find(|r| r.pow(e as u64) == *self)
    }

    /// Quadratic character for odd characteristic: 0, 1 or -1.
    pub fn legendre(&self) -> i32 {
        debug_assert!(self.field.p != 2);
        if self.is_zero() {
            return 0;
        }
        if self.pow((self.field.size() - 1) / 2) == self.field.one() {
            1
        } else {
            -1
        }
    }
}

impl Add for ResidueElem {
    type Output = ResidueElem;
    fn add(self, o: ResidueElem) -> ResidueElem {
        debug_assert_eq!(self.field, o.field);
        let p = self.field.p;
        ResidueElem {
            field: self.field,
            c0: (self.c0 + o.c0) % p,
            c1: (self.c1 + o.c1) % p,
        }
    }
}

impl Neg for ResidueElem {
    type Output = ResidueElem;
    fn neg(self) -> ResidueElem {
        let p = self.field.p;
        ResidueElem {
            field: self.field,
            c0: (p - self.c0) % p,
            c1: (p - self.c1) % p,
        }
    }
}

impl Sub for ResidueElem {
    type Output = ResidueElem;
    fn sub(self, o: ResidueElem) -> ResidueElem {
        self + (-o)
    }
}

impl Mul for ResidueElem {
    type Output = ResidueElem;
    fn mul(self, o: ResidueElem) -> ResidueElem {
        debug_assert_eq!(self.field, o.field);
        let f = self.field;
        let p = f.p;
        if f.degree == 1 {
            return ResidueElem {
                field: f,
                c0: mul_mod(self.c0, o.c0, p),
                c1: 0,
            };
        }
        // (a0 + a1 w)(b0 + b1 w) with w^2 = t w + n
        let hi = mul_mod(self.c1, o.c1, p);
        let c0 = (mul_mod(self.c0, o.c0, p) + mul_mod(f.n, hi, p)) % p;
        let c1 = (mul_mod(self.c0, o.c1, p) + mul_mod(self.c1, o.c0, p) + mul_mod(f.t, hi, p)) % p;
        ResidueElem { field: f, c0, c1 }
    }
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            write!(f, "{}", self.c0)
        } else {
            write!(f, "{} + {}*w", self.c0, self.c1)
        }
    }
}
