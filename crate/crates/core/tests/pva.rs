use proptest::prelude::*;
use walgebra_core::liealg::named_algebra;
use walgebra_core::pva::{affine_pva, eta, eta_kernel, functional, local_bracket, reduce_mod_d, LocalFunctional, Pva};
use walgebra_core::sample;
use walgebra_core::{DiffPoly, HalfInt, RatFunc};

fn sl2() -> Pva {
    affine_pva(&named_algebra("sl2").unwrap(), &RatFunc::var(), "sl2").unwrap()
}

fn gl1() -> Pva {
    affine_pva(&named_algebra("gl1").unwrap(), &RatFunc::var(), "gl1").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn local_bracket_is_antisymmetric(seed in any::<u64>()) {
        let v = sl2();
        let mut rng = sample::rng(seed);
        let vars = v.vars().vars();
        let f = functional(&sample::poly(&mut rng, &vars, HalfInt::from_int(3), 3));
        let g = functional(&sample::poly(&mut rng, &vars, HalfInt::from_int(3), 3));
        let fg = local_bracket(&f, &g, &v).unwrap();
        let gf = local_bracket(&g, &f, &v).unwrap();
        prop_assert!(fg.add(&gf).is_zero());
    }

    #[test]
    fn functionals_ignore_total_derivatives(seed in any::<u64>()) {
        let v = sl2();
        let mut rng = sample::rng(seed);
        let vars = v.vars().vars();
        let p = sample::poly(&mut rng, &vars, HalfInt::from_int(3), 3);
        prop_assert!(functional(&p.d()).is_zero());
        prop_assert!(reduce_mod_d(&p.d()).is_zero());
        prop_assert_eq!(functional(&p.add(&p.d())), functional(&p));
    }

    #[test]
    fn local_bracket_jacobi(seed in any::<u64>()) {
        let v = sl2();
        let mut rng = sample::rng(seed);
        let vars = v.vars().vars();
        let f: Vec<_> = (0..3)
            .map(|_| functional(&sample::poly(&mut rng, &vars, HalfInt::from_int(5), 2)))
            .collect();
        let br = |a: &LocalFunctional, b: &LocalFunctional| local_bracket(a, b, &v).unwrap();
        let total = br(&f[0], &br(&f[1], &f[2]))
            .add(&br(&f[1], &br(&f[2], &f[0])))
            .add(&br(&f[2], &br(&f[0], &f[1])));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn eta_is_a_lie_morphism(seed in any::<u64>()) {
        let v = sl2();
        let mut rng = sample::rng(seed);
        let vars = v.vars().vars();
        let f = functional(&sample::homogeneous(&mut rng, &vars, HalfInt::from_int(2), 2));
        let g = functional(&sample::homogeneous(&mut rng, &vars, HalfInt::from_int(2), 2));
        let lhs = eta(&local_bracket(&f, &g, &v).unwrap(), &v).unwrap();
        let rhs = eta(&f, &v).unwrap().commutator(&eta(&g, &v).unwrap(), v.vars());
        for var in vars {
            prop_assert_eq!(lhs.image(var.id), rhs.image(var.id));
        }
    }
}

#[test]
fn gl1_functionals_are_all_central_up_to_derivatives() {
    let v = gl1();
    let kernel = eta_kernel(&v, HalfInt::from_int(3)).unwrap();
    // ∫u is a Casimir for the Heisenberg bracket
    assert!(kernel.iter().any(|f| f.weight() == Some(HalfInt::ONE)));
    for f in &kernel {
        assert!(eta(f, &v).unwrap().is_zero());
    }
}

#[test]
fn constant_level_bracket_of_currents() {
    let v = sl2();
    let e = v.parse("e1").unwrap();
    let f = v.parse("f1").unwrap();
    let b = v.bracket(&e, &f).unwrap();
    assert_eq!(b.coeff(0), v.parse("h1").unwrap());
    assert_eq!(b.coeff(1), DiffPoly::constant(RatFunc::var()));
}
