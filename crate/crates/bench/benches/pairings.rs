use criterion::{criterion_group, criterion_main, Criterion};
use qmod_core::ktheory::{
    index_even, index_odd, modular_index_kernel, podles_projection_p, suq2_unitary_v, KernelOptions,
};
use qmod_core::{
    build_module, Generator, ModuleKind, NCPolynomial, Params, Scalar, TruncationWindow,
};
use std::hint::black_box;

fn modules(c: &mut Criterion) {
    c.bench_function("build podles N=80", |b| {
        b.iter(|| {
            build_module(
                ModuleKind::Podles,
                Params::new(0.5, 0.7),
                TruncationWindow::podles(black_box(80)),
            )
        })
    });
    c.bench_function("build basic N=60 L=8", |b| {
        b.iter(|| {
            build_module(
                ModuleKind::Suq2Basic,
                Params::suq2(0.5),
                TruncationWindow::suq2_basic(60, 8),
            )
        })
    });
}

fn pairings(c: &mut Criterion) {
    let podles = build_module(
        ModuleKind::Podles,
        Params::new(0.5, 0.7),
        TruncationWindow::podles(80),
    )
    .unwrap();
    let (p, delta) = podles_projection_p().unwrap();
    c.bench_function("even index podles", |b| {
        b.iter(|| index_even(&podles, &p, &delta).unwrap())
    });

    let basic = build_module(
        ModuleKind::Suq2Basic,
        Params::suq2(0.5),
        TruncationWindow::suq2_basic(60, 8),
    )
    .unwrap();
    let (v, delta) = suq2_unitary_v().unwrap();
    c.bench_function("odd index basic", |b| {
        b.iter(|| index_odd(&basic, &v, &delta).unwrap())
    });

    let dlssv = build_module(
        ModuleKind::Suq2Dlssv,
        Params::suq2(0.5),
        ModuleKind::Suq2Dlssv.default_window(),
    )
    .unwrap();
    c.bench_function("kernel index dlssv", |b| {
        b.iter(|| modular_index_kernel(&dlssv, &v, &delta, KernelOptions::default()).unwrap())
    });
}

fn rewriting(c: &mut Criterion) {
    use Generator::*;
    let word = [
        BetaStar, Alpha, Beta, AlphaStar, BetaStar, Alpha, Beta, AlphaStar,
    ];
    c.bench_function("normal form length 8", |b| {
        b.iter(|| {
            NCPolynomial::word(
                qmod_core::AlgebraKind::SUq2,
                black_box(&word),
                Scalar::one(),
            )
            .unwrap()
        })
    });
}

criterion_group!(benches, modules, pairings, rewriting);
criterion_main!(benches);
