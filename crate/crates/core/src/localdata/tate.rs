use super::{Kodaira, LocalData};
use crate::quadfield::{FieldElem, PrimeIdeal, ResidueElem};
use crate::weierstrass::{Curve, Isomorphism};

/// Working state: the current model and the accumulated change of variables
/// from the input model.
struct State<'a> {
    prime: &'a PrimeIdeal,
    pi: FieldElem,
    cur: Curve,
    total: Isomorphism,
}

impl State<'_> {
    fn v(&self, x: &FieldElem) -> i64 {
        self.prime.valuation(x).unwrap_or(i64::MAX)
    }

    fn divides(&self, x: &FieldElem) -> bool {
        self.v(x) > 0
    }

    fn red(&self, x: &FieldElem) -> ResidueElem {
        self.prime.reduce(x).expect("P-integral")
    }

    fn lift(&self, r: ResidueElem) -> FieldElem {
        self.prime.lift(r)
    }

    /// Lift of an `e`-th root of `x` mod P; residue fields of characteristic 2
    /// and 3 are perfect, so it always exists.
    fn root(&self, x: &FieldElem, e: u32) -> FieldElem {
        self.lift(
            self.red(x)
                .nth_root(e)
                .expect("Frobenius is bijective on a finite field"),
        )
    }

    fn inv(&self, x: &FieldElem) -> ResidueElem {
        self.red(x).inv().expect("unit at P")
    }

    fn a(&self) -> [FieldElem; 5] {
        self.cur.a_invariants().clone()
    }

    fn pi_pow(&self, k: i64) -> FieldElem {
        self.pi.pow(k)
    }

    fn apply(&mut self, iso: Isomorphism) {
        self.cur = iso.apply(&self.cur);
        self.total = self.total.then(&iso);
    }

    fn rst(&mut self, r: FieldElem, s: FieldElem, t: FieldElem) {
        let one = self.cur.field().one();
        self.apply(Isomorphism { u: one, r, s, t });
    }

    fn shift_r(&mut self, r: FieldElem) {
        let z = self.cur.field().zero();
        self.rst(r, z.clone(), z);
    }

    fn shift_t(&mut self, t: FieldElem) {
        let z = self.cur.field().zero();
        self.rst(z.clone(), z, t);
    }
}

fn finish(st: State<'_>, kodaira: Kodaira, v_disc: i64) -> LocalData {
    let f = v_disc + 1 - kodaira.components() as i64;
    LocalData::new(st.prime.clone(), kodaira, f as u32, v_disc as u32, st.cur, st.total)
}

/// Tate's algorithm at `prime`. Non-integral models are first scaled by a
/// power of the uniformizer.
pub fn tate_local(curve: &Curve, prime: &PrimeIdeal) -> LocalData {
    assert_eq!(curve.field(), prime.field(), "curve and prime over different fields");
    let field = curve.field();
    let pi = prime.uniformizer().clone();
    let mut st = State {
        prime,
        pi: pi.clone(),
        cur: curve.clone(),
        total: Isomorphism::identity(field),
    };

    // make the model integral at P: a_i -> a_i pi^(ik)
    let weights = [1i64, 2, 3, 4, 6];
    let k = st
        .a()
        .iter()
        .zip(weights)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, w)| {
            let v = st.v(a);
            if v >= 0 {
                0
            } else {
                (-v + w - 1) / w
            }
        })
        .max()
        .unwrap_or(0);
    if k > 0 {
        st.apply(Isomorphism::scaling(pi.pow(-k)).expect("nonzero"));
    }

    let p = prime.p();
    let zero = field.zero();
    let half = if p == 2 {
        field.zero()
    } else {
        st.lift(st.inv(&FieldElem::from_int(field, 2)))
    };

    loop {
        let v_disc = st.v(st.cur.discriminant());
        if v_disc == 0 {
            return finish(st, Kodaira::I0, 0);
        }
        let [a1, a2, a3, a4, a6] = st.a();
        let inv = st.cur.invariants().clone();

        // move the singular point of the reduction to (0, 0)
        let (r, t) = if p == 2 {
            if st.divides(&inv.b2) {
                let r = st.root(&a4, 2);
                let t = st.root(&(((&r + &a2) * &r + &a4) * &r + &a6), 2);
                (r, t)
            } else {
                let ia1 = st.inv(&a1);
                let r = st.lift(ia1 * st.red(&a3));
                let t = st.lift(ia1 * st.red(&(&a4 + &r * &r)));
                (r, t)
            }
        } else if p == 3 {
            let r = if st.divides(&inv.b2) {
                st.root(&-&inv.b6, 3)
            } else {
                st.lift(-(st.inv(&inv.b2) * st.red(&inv.b4)))
            };
            let t = st.lift(st.red(&(&a1 * &r + &a3)));
            (r, t)
        } else {
            let r = if st.divides(&inv.c4) {
                st.lift(-(st.inv(&FieldElem::from_int(field, 12)) * st.red(&inv.b2)))
            } else {
                let d = &inv.c4 * 12;
                st.lift(-(st.inv(&d) * st.red(&(&inv.c6 + &inv.b2 * &inv.c4))))
            };
            let t = st.lift(-(st.red(&half) * st.red(&(&a1 * &r + &a3))));
            (r, t)
        };
        st.rst(r, zero.clone(), t);
        let [a1, a2, a3, a4, a6] = st.a();
        debug_assert!(st.divides(&a3) && st.divides(&a4) && st.divides(&a6));

        if !st.divides(st.cur.c4()) {
            return finish(st, Kodaira::In(v_disc as u32), v_disc);
        }
        if st.v(&a6) < 2 {
            return finish(st, Kodaira::II, v_disc);
        }
        let inv = st.cur.invariants().clone();
        if st.v(&inv.b8) < 3 {
            return finish(st, Kodaira::III, v_disc);
        }
        if st.v(&inv.b6) < 3 {
            return finish(st, Kodaira::IV, v_disc);
        }

        // now P | a1, a2; P^2 | a3, a4; P^3 | a6
        let (s, t) = if p == 2 {
            (st.root(&a2, 2), &pi * &st.root(&(&a6 / &st.pi_pow(2)), 2))
        } else if p == 3 {
            (a1.clone(), a3.clone())
        } else {
            (-(&a1 * &half), -(&a3 * &half))
        };
        st.rst(zero.clone(), s, t);
        let [a1, a2, a3, a4, a6] = st.a();
        debug_assert!(st.divides(&a1) && st.divides(&a2));
        debug_assert!(st.v(&a3) >= 2 && st.v(&a4) >= 2 && st.v(&a6) >= 3);

        // the cubic T^3 + b T^2 + c T + d
        let b = &a2 / &pi;
        let c = &a4 / &st.pi_pow(2);
        let d = &a6 / &st.pi_pow(3);
        let (bb, cc, bc) = (&b * &b, &c * &c, &b * &c);
        let w = &d * &d * 27 - &bb * &cc + &b * &bb * &d * 4 - &bc * &d * 18 + &c * &cc * 4;
        let x = &c * 3 - &bb;

        if !st.divides(&w) {
            return finish(st, Kodaira::I0Star, v_disc);
        }

        if !st.divides(&x) {
            // one double root: move it to T = 0
            let r = if p == 2 {
                st.root(&c, 2)
            } else if p == 3 {
                st.lift(st.red(&c) * st.inv(&b))
            } else {
                st.lift(st.red(&(&bc - &d * 9)) * st.inv(&(&x * 2)))
            };
            st.shift_r(&pi * &r);
            let mut ix = 3i64;
            let mut iy = 3i64;
            let mut mx = st.pi_pow(2);
            let mut my = mx.clone();
            loop {
                let [_, _, a3, _, a6] = st.a();
                let a3t = &a3 / &my;
                let a6t = &a6 / &(&mx * &my);
                if !st.divides(&(&a3t * &a3t + &a6t * 4)) {
                    break;
                }
                let t = if p == 2 {
                    &my * &st.root(&a6t, 2)
                } else {
                    &my * &st.lift(-(st.red(&a3t) * st.red(&half)))
                };
                st.shift_t(t);
                my = &my * &pi;
                iy += 1;
                let [_, a2, _, a4, a6] = st.a();
                let a2t = &a2 / &pi;
                let a4t = &a4 / &(&pi * &mx);
                let a6t = &a6 / &(&mx * &my);
                if !st.divides(&(&a4t * &a4t - &a6t * &a2t * 4)) {
                    break;
                }
                let r = if p == 2 {
                    let ratio = st.lift(st.red(&a6t) * st.inv(&a2t));
                    &mx * &st.root(&ratio, 2)
                } else {
                    &mx * &st.lift(-(st.red(&a4t) * st.inv(&(&a2t * 2))))
                };
                st.shift_r(r);
                mx = &mx * &pi;
                ix += 1;
            }
            let n = (ix + iy - 5) as u32;
            return finish(st, Kodaira::InStar(n), v_disc);
        }

        // triple root: move it to T = 0
        let r = if p == 2 {
            st.lift(st.red(&b))
        } else if p == 3 {
            st.root(&-&d, 3)
        } else {
            st.lift(-(st.red(&b) * st.inv(&FieldElem::from_int(field, 3))))
        };
        st.shift_r(&pi * &r);
        let [_, _, a3, _, a6] = st.a();
        let a3t = &a3 / &st.pi_pow(2);
        let a6t = &a6 / &st.pi_pow(4);
        if !st.divides(&(&a3t * &a3t + &a6t * 4)) {
            return finish(st, Kodaira::IVStar, v_disc);
        }
        let t = if p == 2 {
            &st.pi_pow(2) * &st.root(&a6t, 2)
        } else {
            &st.pi_pow(2) * &st.lift(-(st.red(&a3t) * st.red(&half)))
        };
        st.shift_t(t);
        let [_, _, _, a4, a6] = st.a();
        if st.v(&a4) < 4 {
            return finish(st, Kodaira::IIIStar, v_disc);
        }
        if st.v(&a6) < 6 {
            return finish(st, Kodaira::IIStar, v_disc);
        }

        // non-minimal: divide through by pi
        st.apply(Isomorphism::scaling(pi.clone()).expect("nonzero"));
        let v_new = st.v(st.cur.discriminant());
        assert_eq!(v_new, v_disc - 12, "non-minimal step must lower v(disc) by 12");
    }
}
