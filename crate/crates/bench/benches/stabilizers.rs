use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fano_core::catalog::{self, Params};
use fano_core::exactmath::{int, Matrix};
use fano_core::{fanodb, signature};

fn stabilizers(c: &mut Criterion) {
    let mut group = c.benchmark_group("stabilizer");
    for name in ["twisted_cubic", "conic_on_quadric", "bidegree12_toric", "veronese_cone"] {
        let case = catalog::build(name, &Params::new()).unwrap();
        group.bench_function(name, |b| b.iter(|| black_box(case.stabilizer().unwrap())));
    }
    group.finish();
}

fn signatures(c: &mut Criterion) {
    let s = catalog::build("quadric_point_P5", &Params::new()).unwrap().stabilizer().unwrap();
    c.bench_function("signature/quadric_point_P5", |b| b.iter(|| black_box(signature(&s).unwrap())));
}

fn linear_algebra(c: &mut Criterion) {
    let n = 24;
    let rows: Vec<Vec<_>> = (0..n).map(|i| (0..n).map(|j| int(((i * 7 + j * 3) % 11) as i64 - 5)).collect()).collect();
    let m = Matrix::from_rows(&rows, n);
    c.bench_function("rref/24x24", |b| b.iter(|| black_box(m.rref())));
}

fn verify_grid(c: &mut Criterion) {
    let grid = catalog::default_grid();
    let mut group = c.benchmark_group("verify_all");
    group.sample_size(10);
    group.bench_function("default_grid", |b| b.iter(|| black_box(catalog::verify_all(&grid))));
    group.finish();
    c.bench_function("fanodb/parse", |b| b.iter(|| black_box(fanodb::FanoDb::parse(fanodb::DATA).unwrap())));
}

criterion_group!(benches, stabilizers, signatures, linear_algebra, verify_grid);
criterion_main!(benches);
