use walgebra_bench::{affine, loop_setup, polys, screening};
use walgebra_core::HalfInt;

#[test]
fn fixtures_build() {
    let pva = affine("A1");
    let ps = polys(&pva, 3, 4, 3, 5);
    assert_eq!(ps.len(), 4);
    assert!(ps.iter().all(|p| p.weight_components().keys().all(|w| *w <= HalfInt::from_int(3))));

    let s = screening("A1");
    assert_eq!(s.joint_kernel(HalfInt::from_int(2)).generator_weights(), vec![HalfInt::from_int(2)]);

    let setup = loop_setup("A1", 3);
    assert!(!setup.s_right().is_empty());
}

#[test]
fn polys_are_seeded() {
    let pva = affine("A2");
    assert_eq!(polys(&pva, 11, 3, 2, 4), polys(&pva, 11, 3, 2, 4));
}
