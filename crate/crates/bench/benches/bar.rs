use criterion::{criterion_group, criterion_main, Criterion};

use elliptic_kzb::bar::{antipode_kzb_check, delta_dual, H0Basis, Presentation};
use elliptic_kzb::ncalg::Alphabet;

fn h0(c: &mut Criterion) {
    let mut g = c.benchmark_group("bar");
    g.sample_size(10);
    for (level, len) in [(1u32, 4usize), (2, 3)] {
        let pres = Presentation::new(level, len as u16).unwrap();
        g.bench_function(format!("H0 N={level} L={len}"), |b| b.iter(|| H0Basis::compute(&pres, len).unwrap()));
        let h = H0Basis::compute(&pres, len).unwrap();
        let al = Alphabet::new(level).unwrap();
        g.bench_function(format!("delta dual N={level} L={len}"), |b| b.iter(|| delta_dual(&h, &al).unwrap()));
    }
    let pres = Presentation::new(2, 3).unwrap();
    let h = H0Basis::compute(&pres, 3).unwrap();
    let al = Alphabet::new(2).unwrap();
    g.bench_function("antipode form N=2 L=3", |b| b.iter(|| antipode_kzb_check(&h, &al).unwrap()));
    g.finish();
}

criterion_group!(benches, h0);
criterion_main!(benches);
