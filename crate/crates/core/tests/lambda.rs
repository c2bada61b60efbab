use proptest::prelude::*;
use walgebra_core::lambda::BracketTable;
use walgebra_core::liealg::named_algebra;
use walgebra_core::pva::{affine_pva, Pva};
use walgebra_core::sample;
use walgebra_core::{DiffPoly, Field, HalfInt, RatFunc};

fn pva(name: &str) -> Pva {
    affine_pva(&named_algebra(name).unwrap(), &RatFunc::var(), name).unwrap()
}

fn random(seed: u64, pva: &Pva, n: usize, w: i64) -> Vec<DiffPoly> {
    let mut rng = sample::rng(seed);
    let vars = pva.vars().vars();
    (0..n).map(|_| sample::poly(&mut rng, &vars, HalfInt::from_int(w), 3)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sesquilinearity(seed in any::<u64>()) {
        let v = pva("sl2");
        let p = random(seed, &v, 2, 3);
        let b = v.bracket(&p[0], &p[1]).unwrap();
        // {∂f λ g} = -λ {f λ g}
        prop_assert_eq!(v.bracket(&p[0].d(), &p[1]).unwrap(), b.shift_power(1).neg());
        // {f λ ∂g} = (λ + ∂) {f λ g}
        prop_assert_eq!(v.bracket(&p[0], &p[1].d()).unwrap(), b.lambda_plus_d());
    }

    #[test]
    fn skew_symmetry(seed in any::<u64>()) {
        let v = pva("sl3");
        let p = random(seed, &v, 2, 2);
        prop_assert!(v.table.skew_defect(&p[0], &p[1]).is_zero());
    }

    #[test]
    fn jacobi_identity(seed in any::<u64>()) {
        let v = pva("gl2");
        let p = random(seed, &v, 3, 2);
        prop_assert!(v.table.jacobi_defect(&p[0], &p[1], &p[2]).is_empty());
    }

    #[test]
    fn left_leibniz(seed in any::<u64>()) {
        let v = pva("sl2");
        let p = random(seed, &v, 3, 2);
        let lhs = v.bracket(&p[0], &p[1].mul(&p[2])).unwrap();
        let rhs = v.bracket(&p[0], &p[1]).unwrap().mul_left(&p[2]).add(&v.bracket(&p[0], &p[2]).unwrap().mul_left(&p[1]));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn table_json_roundtrip() {
    let v = pva("sp4");
    let json = v.table.to_json();
    let back = BracketTable::from_json(&json).unwrap();
    assert_eq!(back, v.table);
}

#[test]
fn affine_brackets_at_rational_level() {
    let lie = named_algebra("sl2").unwrap();
    let v = affine_pva(&lie, &RatFunc::from_int(3), "sl2").unwrap();
    let b = v.bracket(&v.parse("e1").unwrap(), &v.parse("f1").unwrap()).unwrap();
    assert_eq!(b.render(v.vars()), "3 * lambda + h1");
    assert!(v.check_axioms().is_ok());
}
