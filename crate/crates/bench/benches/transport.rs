use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64 as C;

use elliptic_kzb::kzb::KZBConnection;
use elliptic_kzb::modforms::Precision;
use elliptic_kzb::transport::{monodromy, transport, PathSpec, TransportOptions};

fn paths(c: &mut Criterion) {
    let (tau, w) = (C::new(0.1, 1.1), C::new(0.3, -0.2));
    let conn = KZBConnection::new(1, 4, Precision::default()).unwrap();
    let open = PathSpec::polyline(tau, w, &[C::new(0.3, 0.2), C::new(0.7, 0.5), C::new(0.4, 0.9)]);
    let around = PathSpec::circle(tau, w, C::new(0.0, 0.0), 0.2);
    let opts = TransportOptions::default();
    let mut g = c.benchmark_group("transport");
    g.sample_size(10);
    g.bench_function("polyline N=1 L=4", |b| b.iter(|| transport(&open, &conn, 4, 1e-9, &opts).unwrap()));
    g.bench_function("loop at O N=1 L=4", |b| b.iter(|| monodromy(&around, &conn, 4, 1e-9, &opts).unwrap()));
    g.finish();
}

criterion_group!(benches, paths);
criterion_main!(benches);
