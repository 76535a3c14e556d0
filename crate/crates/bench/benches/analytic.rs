use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ekzb_bench::sample_point;
use elliptic_kzb::kzb::{flatness_residual, main_identity_check, KZBConnection};
use elliptic_kzb::modforms::{eisenstein_g, phi_coeffs, theta, Precision};

fn series(c: &mut Criterion) {
    let p = sample_point();
    let prec = Precision::default();
    c.bench_function("theta", |b| b.iter(|| theta(black_box(p.z), p.tau, &prec).unwrap()));
    c.bench_function("phi_coeffs n=8", |b| b.iter(|| phi_coeffs(black_box(p.z), p.w, p.tau, 8, &prec).unwrap()));
    c.bench_function("G_12", |b| b.iter(|| eisenstein_g(12, black_box(p.tau), &prec).unwrap()));
}

fn connection(c: &mut Criterion) {
    let p = sample_point();
    let mut g = c.benchmark_group("connection");
    g.sample_size(20);
    for level in [1u32, 2] {
        g.bench_function(format!("build N={level} L=4"), |b| {
            b.iter(|| KZBConnection::new(level, 4, Precision::default()).unwrap())
        });
        let conn = KZBConnection::new(level, 4, Precision::default()).unwrap();
        g.bench_function(format!("flatness N={level} L=4"), |b| {
            b.iter(|| flatness_residual(&conn, black_box(&p)).unwrap())
        });
        g.bench_function(format!("main identity N={level} L=4"), |b| {
            b.iter(|| main_identity_check(&conn, black_box(&p)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, series, connection);
criterion_main!(benches);
