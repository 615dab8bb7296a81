use super::{AlgInt, BasisKind, QuadError, QuadField};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element `a + b*sqrt(m)` of `Q(sqrt(m))` with exact rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    field: QuadField,
    a: BigRational,
    b: BigRational,
}

impl FieldElem {
    pub fn new(field: QuadField, a: BigRational, b: BigRational) -> Self {
        FieldElem { field, a, b }
    }

    pub fn from_int(field: QuadField, n: i64) -> Self {
        Self::from_ints(field, n, 0)
    }

    pub fn from_ints(field: QuadField, a: i64, b: i64) -> Self {
        FieldElem {
            field,
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }

    pub fn from_bigints(field: QuadField, a: BigInt, b: BigInt) -> Self {
        FieldElem {
            field,
            a: BigRational::from_integer(a),
            b: BigRational::from_integer(b),
        }
    }

    pub fn from_rational(field: QuadField, a: BigRational) -> Self {
        FieldElem {
            field,
            a,
            b: BigRational::zero(),
        }
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    /// Rational part.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of `sqrt(m)`.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn m_rat(&self) -> BigRational {
        BigRational::from_integer(self.field.m().into())
    }

    fn check_field(&self, other: &FieldElem) -> Result<(), QuadError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(QuadError::FieldMismatch(self.field.m(), other.field.m()))
        }
    }

    pub fn checked_add(&self, other: &FieldElem) -> Result<FieldElem, QuadError> {
        self.check_field(other)?;
        Ok(FieldElem::new(self.field, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn checked_sub(&self, other: &FieldElem) -> Result<FieldElem, QuadError> {
        self.check_field(other)?;
        Ok(FieldElem::new(self.field, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn checked_mul(&self, other: &FieldElem) -> Result<FieldElem, QuadError> {
        self.check_field(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * self.m_rat();
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(FieldElem::new(self.field, a, b))
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem, QuadError> {
        self.check_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<FieldElem, QuadError> {
        if self.is_zero() {
            return Err(QuadError::DivisionByZero);
        }
        let n = self.norm();
        Ok(FieldElem::new(self.field, &self.a / &n, -&self.b / &n))
    }

    pub fn conj(&self) -> FieldElem {
        FieldElem::new(self.field, self.a.clone(), -&self.b)
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * self.m_rat()
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn square(&self) -> FieldElem {
        self * self
    }

    /// `self^k`; negative exponents invert. Panics on `0^k` with `k < 0`.
    pub fn pow(&self, k: i64) -> FieldElem {
        let base = if k < 0 {
            self.inverse().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.square();
            }
        }
        acc
    }

    /// Coordinates `(u, v)` with `self = u + v*omega` in the integral basis.
    pub fn basis_coords(&self) -> (BigRational, BigRational) {
        match self.field.basis() {
            BasisKind::OneSqrtM => (self.a.clone(), self.b.clone()),
            BasisKind::OneHalfOnePlusSqrtM => {
                let v = &self.b + &self.b;
                (&self.a - &self.b, v)
            }
        }
    }

    pub fn from_basis_coords(field: QuadField, u: BigRational, v: BigRational) -> FieldElem {
        match field.basis() {
            BasisKind::OneSqrtM => FieldElem::new(field, u, v),
            BasisKind::OneHalfOnePlusSqrtM => {
                let half = BigRational::new(1.into(), 2.into());
                let b = &v * &half;
                FieldElem::new(field, u + &b, b)
            }
        }
    }

    /// Membership in the ring of integers.
    pub fn is_integral(&self) -> bool {
        let (u, v) = self.basis_coords();
        u.is_integer() && v.is_integer()
    }

    pub fn to_algint(&self) -> Result<AlgInt, QuadError> {
        AlgInt::try_from_elem(self)
    }

    /// Smallest positive integer `d` with `d * self` integral.
    pub fn denominator(&self) -> BigInt {
        let (u, v) = self.basis_coords();
        u.denom().lcm(v.denom())
    }

    /// A square root in the field, if one exists.
    pub fn sqrt(&self) -> Option<FieldElem> {
        fn rat_sqrt(q: &BigRational) -> Option<BigRational> {
            let n = crate::arith::exact_sqrt(q.numer())?;
            let d = crate::arith::exact_sqrt(q.denom())?;
            Some(BigRational::new(n, d))
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        // (c + d sqrt m)^2 = a + b sqrt m  gives  c^2 = (a +- sqrt(N)) / 2
        let n = rat_sqrt(&self.norm())?;
        let two = BigRational::from_integer(2.into());
        for c2 in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            let Some(c) = rat_sqrt(&c2) else { continue };
            let d = if c.is_zero() {
                match rat_sqrt(&((&self.a - &c2) / self.m_rat())) {
                    Some(d) => d,
                    None => continue,
                }
            } else {
                &self.b / (&c * &two)
            };
            let r = FieldElem::new(self.field, c, d);
            if r.square() == *self {
                return Some(r);
            }
        }
        None
    }

    /// Sign of the real number `a + b*sqrt(m)` with `sqrt(m) > 0`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, _) => {
                // opposite signs: compare a^2 with m b^2
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * self.m_rat();
                match lhs.cmp(&rhs) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => unreachable!("sqrt(m) is irrational"),
                }
            }
        }
    }

    /// Order of the real embedding with `sqrt(m) > 0`.
    pub fn real_cmp(&self, other: &FieldElem) -> Ordering {
        (self - other).signum()
    }

    /// `|self|` under the real embedding.
    pub fn abs_real(&self) -> FieldElem {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Parse the element grammar `a/b`, `a/b + c/d*sqrt(m)`, or `c/d*sqrt(m)`.
    /// Fractions must be in lowest terms with positive denominators.
    pub fn parse(field: QuadField, input: &str) -> Result<FieldElem, QuadError> {
        let err = |reason: &str| QuadError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty"));
        }
        // Split into signed terms at '+'/'-' that do not open the string.
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'+' | b'-' | b'(') {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        if terms.len() > 2 {
            return Err(err("too many terms"));
        }
        let mut a: Option<BigRational> = None;
        let mut b: Option<BigRational> = None;
        for term in terms {
            // "+-3" style: a leading '+' before a signed number
            let (neg, body) = match term.strip_prefix('+') {
                Some(rest) => (false, rest),
                None => match term.strip_prefix('-') {
                    Some(rest) if rest.starts_with(['+', '-']) => (true, rest),
                    _ => (false, term),
                },
            };
            let (coef_str, is_sqrt) = match body.split_once("*sqrt(") {
                Some((c, tail)) => {
                    let radicand = tail.strip_suffix(')').ok_or_else(|| err("unterminated sqrt"))?;
                    let m: i64 = radicand.parse().map_err(|_| err("bad radicand"))?;
                    if m != field.m() {
                        return Err(err(&format!("radicand {m} does not match field m = {}", field.m())));
                    }
                    (c, true)
                }
                None => (body, false),
            };
            let mut q = parse_rational(coef_str).map_err(|r| err(&r))?;
            if neg {
                q = -q;
            }
            let slot = if is_sqrt { &mut b } else { &mut a };
            if slot.is_some() {
                return Err(err("duplicate term"));
            }
            *slot = Some(q);
        }
        Ok(FieldElem::new(
            field,
            a.unwrap_or_else(BigRational::zero),
            b.unwrap_or_else(BigRational::zero),
        ))
    }
}

/// Parse `n` or `n/d` (lowest terms, `d > 0`), with an optional sign.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad integer {num:?}"))?;
    match den {
        None => Ok(BigRational::from_integer(num)),
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err("denominator must be unsigned".into());
            }
            let den: BigInt = d.parse().map_err(|_| format!("bad denominator {d:?}"))?;
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            if !num.gcd(&den).is_one() {
                return Err("fraction not in lowest terms".into());
            }
            Ok(BigRational::new_raw(num, den))
        }
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.a, f)?;
        if !self.b.is_zero() {
            f.write_str(" + ")?;
            fmt_rational(&self.b, f)?;
            write!(f, "*sqrt({})", self.field.m())?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                self.$method(&rhs)
            }
        }
        impl $trait<i64> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: i64) -> FieldElem {
                self.$method(&FieldElem::from_int(self.field, rhs))
            }
        }
        impl $trait<i64> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: i64) -> FieldElem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Div<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self.checked_div(rhs).expect("division by zero or field mismatch")
    }
}

impl std::ops::Div<FieldElem> for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: FieldElem) -> FieldElem {
        &self / &rhs
    }
}

impl std::ops::Div<&FieldElem> for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        &self / rhs
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::new(self.field, -&self.a, -&self.b)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::new(self.field, -self.a, -self.b)
    }
}
