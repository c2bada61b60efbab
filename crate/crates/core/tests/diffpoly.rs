use proptest::prelude::*;
use walgebra_core::sample;
use walgebra_core::{DiffPoly, Factor, HalfInt, Side, Var, VarTable};

fn table() -> VarTable {
    let mut t = VarTable::new();
    t.push("u", HalfInt::ONE, false);
    t.push("v", HalfInt::from_int(2), false);
    t.push("phi", HalfInt::HALF, true);
    t.push("psi", HalfInt::HALF, true);
    t
}

fn even_table() -> VarTable {
    let mut t = VarTable::new();
    t.push("u", HalfInt::ONE, false);
    t.push("w", HalfInt::from_int(2), false);
    t
}

fn random(seed: u64, vars: &[Var], n: usize) -> Vec<DiffPoly> {
    let mut rng = sample::rng(seed);
    (0..n).map(|_| sample::poly(&mut rng, vars, HalfInt::from_int(3), 4)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(seed in any::<u64>()) {
        let t = table();
        let p = random(seed, &t.vars(), 2);
        let lhs = p[0].mul(&p[1]).d();
        let rhs = p[0].d().mul(&p[1]).add(&p[0].mul(&p[1].d()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let t = table();
        let p = random(seed, &t.vars(), 3);
        prop_assert_eq!(p[0].mul(&p[1]).mul(&p[2]), p[0].mul(&p[1].mul(&p[2])));
    }

    #[test]
    fn even_elements_commute(seed in any::<u64>()) {
        let t = even_table();
        let p = random(seed, &t.vars(), 2);
        prop_assert_eq!(p[0].mul(&p[1]), p[1].mul(&p[0]));
    }

    #[test]
    fn variational_derivative_kills_total_derivatives(seed in any::<u64>()) {
        let t = even_table();
        let p = random(seed, &t.vars(), 1);
        for v in t.vars() {
            prop_assert!(p[0].d().variational(&v, Side::Left).is_zero());
        }
    }

    #[test]
    fn antiderivative_inverts_d(seed in any::<u64>()) {
        let t = table();
        let p = random(seed, &t.vars(), 1);
        let dp = p[0].d();
        let back = dp.antiderivative().expect("total derivative");
        prop_assert_eq!(back.d(), dp);
    }

    #[test]
    fn render_parse_roundtrip(seed in any::<u64>()) {
        let t = table();
        for p in random(seed, &t.vars(), 4) {
            let text = t.render(&p);
            prop_assert_eq!(t.parse(&text).unwrap(), p);
        }
    }

    #[test]
    fn partial_is_a_derivation_on_even_part(seed in any::<u64>()) {
        let t = even_table();
        let p = random(seed, &t.vars(), 2);
        let f = Factor::new(t.vars()[0], 1);
        let lhs = p[0].mul(&p[1]).partial(&f, Side::Left);
        let rhs = p[0].partial(&f, Side::Left).mul(&p[1]).add(&p[0].mul(&p[1].partial(&f, Side::Left)));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn weights_are_additive() {
    let t = even_table();
    let p = t.parse("u^2 * w[1]").unwrap();
    assert_eq!(p.weight(), Some(HalfInt::from_int(5)));
    assert_eq!(p.d().weight(), Some(HalfInt::from_int(6)));
}

#[test]
fn odd_generators_anticommute() {
    let t = table();
    let a = t.parse("phi").unwrap();
    let b = t.parse("psi[1]").unwrap();
    assert_eq!(a.mul(&b), b.mul(&a).neg());
    assert!(a.mul(&a).is_zero());
}
