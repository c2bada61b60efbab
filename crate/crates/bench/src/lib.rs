//! Fixtures shared by the criterion benches.

use walgebra_core::liealg::default_y;
use walgebra_core::loopgeo::LoopSetup;
use walgebra_core::pva::{affine_pva, Pva};
use walgebra_core::sample;
use walgebra_core::screening::Screening;
use walgebra_core::{grade, principal_triple, DiffPoly, HalfInt, RatFunc, SimpleLieAlgebra};

pub fn affine(ty: &str) -> Pva {
    let g = SimpleLieAlgebra::build(ty).expect("built-in type");
    affine_pva(g.lie(), &RatFunc::var(), ty).expect("affine PVA")
}

/// `count` random polynomials of weight at most `max_weight`.
pub fn polys(pva: &Pva, seed: u64, count: usize, max_weight: i64, terms: usize) -> Vec<DiffPoly> {
    let vars = pva.vars().vars();
    let mut rng = sample::rng(seed);
    (0..count)
        .map(|_| sample::poly(&mut rng, &vars, HalfInt::from_int(max_weight), terms))
        .collect()
}

pub fn screening(ty: &str) -> Screening {
    let g = SimpleLieAlgebra::build(ty).expect("built-in type");
    let t = principal_triple(&g).expect("principal triple");
    let gr = grade(&g, &t).expect("grading");
    Screening::new(&g, &t, &gr, RatFunc::var()).expect("screening")
}

pub fn loop_setup(ty: &str, n: usize) -> LoopSetup {
    let g = SimpleLieAlgebra::build(ty).expect("built-in type");
    let t = principal_triple(&g).expect("principal triple");
    let gr = grade(&g, &t).expect("grading");
    let y = default_y(&g, &t, &gr).expect("y");
    LoopSetup::new(&g, &t, &gr, &y, n, RatFunc::var()).expect("loop setup")
}
