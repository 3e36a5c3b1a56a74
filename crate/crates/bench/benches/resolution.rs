use criterion::{criterion_group, criterion_main, Criterion};
use dgk_core::dga::DgAlgebra;
use dgk_core::ext::ext_algebra;
use dgk_core::resolution::{resolve_dga, ResolutionOptions, Side, Window};
use dgk_core::{samples, Field};

fn resolve(c: &mut Criterion) {
    let f = Field::Rational;
    let example_a = DgAlgebra::new(samples::example_a(f, 8).unwrap());
    let truncated = DgAlgebra::new(samples::truncated(f, 4, 8).unwrap());
    let w = Window::new(8, 6);
    let opts = ResolutionOptions::default();
    c.bench_function("resolve/example_a/8x6", |b| {
        b.iter(|| resolve_dga(&example_a, w, Side::Left, &opts).unwrap())
    });
    c.bench_function("resolve/k[t]_t4/8x6", |b| {
        b.iter(|| resolve_dga(&truncated, w, Side::Left, &opts).unwrap())
    });
    let r = resolve_dga(&example_a, w, Side::Left, &opts).unwrap();
    c.bench_function("ext/example_a/8x6", |b| b.iter(|| ext_algebra(&r).unwrap()));
}

criterion_group!(benches, resolve);
criterion_main!(benches);
