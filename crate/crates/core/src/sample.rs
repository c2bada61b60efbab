//! Seeded random elements for property checks and benchmarks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diffpoly::{monomials_of_weight, DiffPoly, Var};
use crate::field::Field;
use crate::ratfunc::RatFunc;
use crate::weight::HalfInt;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random small coefficient: an integer, occasionally times `k` or over `k+1`.
pub fn coeff(rng: &mut SampleRng) -> RatFunc {
    let n = loop {
        let n: i64 = rng.gen_range(-5..=5);
        if n != 0 {
            break n;
        }
    };
    let c = RatFunc::from_int(n);
    match rng.gen_range(0..6) {
        0 => c.times(&RatFunc::var()),
        1 => c.over(&RatFunc::var().plus(&RatFunc::one())),
        _ => c,
    }
}

/// Random homogeneous polynomial of weight `w` with at most `terms` terms.
pub fn homogeneous(rng: &mut SampleRng, vars: &[Var], w: HalfInt, terms: usize) -> DiffPoly {
    let monos = monomials_of_weight(vars, w);
    let mut p = DiffPoly::zero();
    if monos.is_empty() {
        return p;
    }
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        p.add_term(m, coeff(rng));
    }
    p
}

/// Random polynomial with components of weight up to `max_weight`.
pub fn poly(rng: &mut SampleRng, vars: &[Var], max_weight: HalfInt, terms: usize) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for _ in 0..terms {
        let steps = rng.gen_range(0..=max_weight.twice()) as i64;
        let w = HalfInt::from_twice(steps);
        p.add_assign(&homogeneous(rng, vars, w, 1));
    }
    p
}
