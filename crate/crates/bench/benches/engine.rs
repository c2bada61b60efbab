use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;
use walgebra_bench::{affine, loop_setup, polys, screening};
use walgebra_core::HalfInt;

fn diffpoly_mul(c: &mut Criterion) {
    let pva = affine("A2");
    let ps = polys(&pva, 1, 2, 4, 12);
    c.bench_function("diffpoly mul sl3 weight 4", |b| b.iter(|| black_box(ps[0].mul(&ps[1]))));
    c.bench_function("diffpoly d sl3 weight 4", |b| b.iter(|| black_box(ps[0].d())));
}

fn master_bracket(c: &mut Criterion) {
    let pva = affine("A2");
    let ps = polys(&pva, 2, 2, 3, 6);
    c.bench_function("lambda bracket sl3 weight 3", |b| b.iter(|| black_box(pva.bracket(&ps[0], &ps[1]).unwrap())));
}

fn joint_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("joint kernel");
    group.sample_size(10);
    group.bench_function("sl2 weight 6", |b| {
        b.iter_batched(|| screening("A1"), |s| black_box(s.joint_kernel(HalfInt::from_int(6))), BatchSize::LargeInput)
    });
    group.bench_function("sl3 weight 3", |b| {
        b.iter_batched(|| screening("A2"), |s| black_box(s.joint_kernel(HalfInt::from_int(3))), BatchSize::LargeInput)
    });
    group.finish();
}

fn adjoint(c: &mut Criterion) {
    let setup = loop_setup("A2", 4);
    c.bench_function("Ad(K) s sl3 N=4", |b| b.iter(|| black_box(setup.adjoint(&setup.s))));
}

criterion_group!(benches, diffpoly_mul, master_bracket, joint_kernel, adjoint);
criterion_main!(benches);
