use criterion::{criterion_group, criterion_main, Criterion};
use saxlkit_core::{kronecker, staircase, tensor_square_support, Partition};

fn kronecker_kernels(c: &mut Criterion) {
    let rho5 = staircase(5);
    let nu: Partition = "[5,4,3,2,1]".parse().unwrap();
    c.bench_function("kronecker_staircase_n15", |b| {
        b.iter(|| kronecker(&rho5, &rho5, &nu).unwrap())
    });

    let rho4 = staircase(4);
    c.bench_function("tensor_square_support_n10", |b| {
        b.iter(|| tensor_square_support(&rho4, None).unwrap().len())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = kronecker_kernels
}
criterion_main!(benches);
