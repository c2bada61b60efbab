use proptest::prelude::*;
use walgebra_core::liealg::partition_triple;
use walgebra_core::sample;
use walgebra_core::screening::{check_subalgebra, Screening};
use walgebra_core::{grade, principal_triple, HalfInt, RatFunc, SimpleLieAlgebra};

fn principal(ty: &str) -> Screening {
    let g = SimpleLieAlgebra::build(ty).unwrap();
    let t = principal_triple(&g).unwrap();
    let gr = grade(&g, &t).unwrap();
    Screening::new(&g, &t, &gr, RatFunc::var()).unwrap()
}

#[test]
fn sl2_kernel_is_virasoro() {
    let s = principal("A1");
    let kb = s.joint_kernel(HalfInt::from_int(4));
    assert_eq!(kb.generator_weights(), vec![HalfInt::from_int(2)]);
    assert_eq!(kb.dim(HalfInt::from_int(4)), 2);
    for w in 1..=4 {
        for p in kb.basis(HalfInt::from_int(w)) {
            assert!(s.annihilates(p).unwrap());
        }
    }
}

#[test]
fn sl3_generators_have_weights_two_and_three() {
    let s = principal("A2");
    let kb = s.joint_kernel(HalfInt::from_int(3));
    assert_eq!(kb.generator_weights(), vec![HalfInt::from_int(2), HalfInt::from_int(3)]);
    assert!(check_subalgebra(&kb, &s, HalfInt::from_int(3)).unwrap().is_ok());
}

#[test]
fn sp4_rectangular_kernel_closes() {
    let g = SimpleLieAlgebra::build("C2").unwrap();
    let t = partition_triple(&g, &[2, 2]).unwrap();
    let gr = grade(&g, &t).unwrap();
    let s = Screening::new(&g, &t, &gr, RatFunc::var()).unwrap();
    let kb = s.joint_kernel(HalfInt::from_int(2));
    for p in kb.basis(HalfInt::from_int(2)) {
        assert!(s.annihilates(p).unwrap());
    }
    assert!(check_subalgebra(&kb, &s, HalfInt::from_int(2)).unwrap().is_ok());
}

#[test]
fn sugawara_bracket_is_derivative() {
    let s = principal("A1");
    let l = s.sugawara().expect("principal sl2 has no half piece").clone();
    let b = s.pva.bracket(&l, &s.vars().iter().map(|v| walgebra_core::DiffPoly::var(*v)).next().unwrap()).unwrap();
    assert!(!b.is_zero());
    let self_b = s.pva.bracket(&l, &l).unwrap();
    assert_eq!(self_b.at_zero(), l.d());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn screenings_commute_with_d(seed in any::<u64>()) {
        let s = principal("A2");
        let mut rng = sample::rng(seed);
        let p = sample::poly(&mut rng, &s.vars(), HalfInt::from_int(3), 4);
        for &g in s.members() {
            prop_assert!(s.commutator_defect(g, &p).unwrap().is_zero());
        }
    }

    #[test]
    fn screenings_are_derivations(seed in any::<u64>()) {
        let s = principal("A1");
        let mut rng = sample::rng(seed);
        let p = sample::poly(&mut rng, &s.vars(), HalfInt::from_int(2), 3);
        let q = sample::poly(&mut rng, &s.vars(), HalfInt::from_int(2), 3);
        for &g in s.members() {
            let lhs = s.apply(g, &p.mul(&q)).unwrap();
            let rhs = s.apply(g, &p).unwrap().mul(&q).add(&p.mul(&s.apply(g, &q).unwrap()));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
