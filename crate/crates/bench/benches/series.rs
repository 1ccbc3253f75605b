use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use stripq_core::barnes::{build_integrand, integrand_shift_check};
use stripq_core::dt::product_decompose;
use stripq_core::quantization::{build_quantum_curve, check_annihilation, closed_form_psi, frobenius_solve};
use stripq_core::quiver::{quiver_eval, to_quiver};
use stripq_core::series::{poch_finite, TMono};
use stripq_core::{Basepoint, QLaurent, StripGeometry, Var};

fn arithmetic(c: &mut Criterion) {
    let a = poch_finite(TMono::param(1, Var::Alpha(0)), 8).with_trunc(40);
    let b = poch_finite(TMono::param(2, Var::Beta(0)), 8).inv(40).unwrap();
    c.bench_function("qlaurent_mul_two_params", |bench| bench.iter(|| black_box(&a).mul(black_box(&b))));
    let u = QLaurent::one().sub(&QLaurent::t_pow(1));
    c.bench_function("qlaurent_inv_t60", |bench| bench.iter(|| black_box(&u).inv(60).unwrap()));
}

fn wave_functions(c: &mut Criterion) {
    let mut group = c.benchmark_group("wave_function");
    for (r, s) in [(0, 0), (1, 1), (2, 2)] {
        let g = StripGeometry::symbolic(r, s, 1);
        let op = build_quantum_curve(&g, Basepoint::Infinity);
        let id = format!("r{r}s{s}");
        group.bench_with_input(BenchmarkId::new("closed_form", &id), &g, |bench, g| {
            bench.iter(|| closed_form_psi(g, Basepoint::Infinity, 10, 24).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("frobenius", &id), &op, |bench, op| {
            bench.iter(|| frobenius_solve(op, stripq_core::Direction::AscendingX, 10, 24).unwrap())
        });
        let psi = closed_form_psi(&g, Basepoint::Infinity, 10, 24).unwrap();
        group.bench_with_input(BenchmarkId::new("annihilation", &id), &psi, |bench, psi| {
            bench.iter(|| check_annihilation(&op, psi).unwrap())
        });
    }
    group.finish();
}

fn quivers_and_dt(c: &mut Criterion) {
    let g = StripGeometry::conifold(0);
    let model = to_quiver(&g, Basepoint::One).unwrap();
    c.bench_function("quiver_eval_conifold_bp1", |bench| bench.iter(|| quiver_eval(&model, 6, 20).unwrap()));
    let psi = closed_form_psi(&g, Basepoint::Infinity, 5, 30).unwrap();
    c.bench_function("product_decompose_conifold", |bench| bench.iter(|| product_decompose(&psi, 5, 30).unwrap()));
}

fn barnes(c: &mut Criterion) {
    let ig = build_integrand(&StripGeometry::conifold(-1), Basepoint::One).unwrap();
    c.bench_function("shift_check_conifold_bp1", |bench| bench.iter(|| integrand_shift_check(&ig, 4, 10).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = arithmetic, wave_functions, quivers_and_dt, barnes
}
criterion_main!(benches);
