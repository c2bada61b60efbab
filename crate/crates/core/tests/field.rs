use proptest::prelude::*;
use walgebra_core::field::bernoulli;
use walgebra_core::{q, qi, Field, RatFunc, HalfInt, Q};

fn ratfunc(a: i64, b: i64, c: i64) -> RatFunc {
    let k = RatFunc::var();
    let num = k.times(&RatFunc::from_int(a)).plus(&RatFunc::from_int(b));
    num.over(&k.plus(&RatFunc::from_int(c.abs() + 1)))
}

proptest! {
    #[test]
    fn ratfunc_ring_axioms(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9) {
        let x = ratfunc(a, b, c);
        let y = ratfunc(c, d, a);
        let z = ratfunc(b, a, d);
        prop_assert_eq!(x.times(&y), y.times(&x));
        prop_assert_eq!(x.plus(&y).times(&z), x.times(&z).plus(&y.times(&z)));
        prop_assert_eq!(x.times(&y).times(&z), x.times(&y.times(&z)));
        prop_assert!(x.minus(&x).is_zero());
    }

    #[test]
    fn ratfunc_inverse(a in 1i64..9, b in -9i64..9, c in -9i64..9) {
        let x = ratfunc(a, b, c);
        prop_assert!(x.times(&x.inverse()).is_one());
    }

    #[test]
    fn ratfunc_evaluation_is_a_homomorphism(a in -9i64..9, b in -9i64..9, c in 0i64..9, t in 0i64..20) {
        let x = ratfunc(a, b, c);
        let y = ratfunc(b, a, c);
        let at = qi(t);
        let lhs = x.times(&y).eval(&at).unwrap();
        prop_assert_eq!(lhs, x.eval(&at).unwrap() * y.eval(&at).unwrap());
    }

    #[test]
    fn halfint_display_roundtrip(n in -100i64..100) {
        let h = HalfInt::from_q(&q(n, 2)).unwrap();
        prop_assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
    }

    #[test]
    fn ratfunc_render_parse(a in -9i64..9, b in -9i64..9, c in 0i64..9) {
        let x = ratfunc(a, b, c);
        prop_assert_eq!(RatFunc::parse(&x.render("k"), "k").unwrap(), x);
    }
}

#[test]
fn bernoulli_numbers() {
    let b = bernoulli(8);
    assert_eq!(b[0], Q::one());
    assert_eq!(b[1], q(-1, 2));
    assert_eq!(b[2], q(1, 6));
    assert_eq!(b[3], Q::zero());
    assert_eq!(b[4], q(-1, 30));
    assert_eq!(b[8], q(-1, 30));
}
