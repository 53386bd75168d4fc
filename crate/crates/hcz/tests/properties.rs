use proptest::prelude::*;

use hcz::arith::{q, qi, GammaExpr, GaussianRational, Orientation, Poly, RatFunc, Rational};
use hcz::weyl::{dot_action, Perm, Weight};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn poly() -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(rational(), 0..5).prop_map(Poly::new)
}

fn nonzero_poly() -> impl Strategy<Value = Poly<Rational>> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn gamma_expr() -> impl Strategy<Value = GammaExpr> {
    let factor = (any::<bool>(), -8i64..=8, -2i64..=2).prop_map(|(minus, s, e)| {
        let o = if minus { Orientation::Minus } else { Orientation::Plus };
        GammaExpr::gamma_oriented(o, q(s, 2), e)
    });
    (prop::collection::vec(factor, 0..4), -2i64..=2, 1i64..=9).prop_map(|(fs, pi, c)| {
        fs.iter().fold(GammaExpr::constant(qi(c), pi), |acc, f| acc.mul(f))
    })
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn poly_division_identity(a in poly(), b in nonzero_poly()) {
        let (quo, rem) = a.div_rem(&b);
        prop_assert_eq!(&(&quo * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let (x, y) = (&a * &c, &b * &c);
        let g = Poly::gcd(&x, &y);
        prop_assert!(x.div_rem(&g).1.is_zero());
        prop_assert!(y.div_rem(&g).1.is_zero());
        // c divides the gcd
        prop_assert!(g.div_rem(&c.monic()).1.is_zero());
    }

    #[test]
    fn ratfunc_field(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly(), d in nonzero_poly()) {
        let x = RatFunc::new(a, b);
        let y = RatFunc::new(c, d);
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!((x.clone() * y.clone()) / y.clone(), x.clone());
        prop_assert_eq!((x.clone() + y.clone()) - y, x);
    }

    #[test]
    fn gaussian_inverse(re in rational(), im in rational()) {
        let z = GaussianRational::new(re, im);
        match z.inv() {
            Some(w) => prop_assert_eq!(z * w, GaussianRational::int(1)),
            None => prop_assert_eq!(z.norm(), qi(0)),
        }
    }

    #[test]
    fn canonical_form_is_stable(e in gamma_expr()) {
        let c = e.canonicalize();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonicalize(), c.clone());
        // exact multiplicative structure survives
        prop_assert_eq!(c.mul(&c.inv()).canonicalize(), GammaExpr::identity().canonicalize());
    }

    #[test]
    fn substitution_is_an_involution(e in gamma_expr(), b in -4i64..=4) {
        let back = e.substitute(-1, &qi(b)).substitute(-1, &qi(b));
        prop_assert_eq!(back.canonicalize(), e.canonicalize());
    }

    #[test]
    fn dot_action_is_an_action(u in perm(5), v in perm(5), a in prop::collection::vec(-5i64..=5, 5)) {
        let lam = Weight::new(a.into_iter().map(qi).collect());
        prop_assert_eq!(dot_action(&u.compose(&v), &lam), dot_action(&u, &dot_action(&v, &lam)));
        prop_assert_eq!(u.compose(&u.inverse()), Perm::identity(5));
    }

    #[test]
    fn gamma_coordinates_round_trip(a in prop::collection::vec(-6i64..=6, 1..6), d in rational()) {
        let ar: Vec<Rational> = a.into_iter().map(qi).collect();
        let w = Weight::from_gamma(&ar, &d);
        prop_assert_eq!(w.to_gamma(), (ar, d));
    }
}
