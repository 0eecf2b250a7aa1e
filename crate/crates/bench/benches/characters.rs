use criterion::{criterion_group, criterion_main, Criterion};
use saxlkit_core::characters::{character_value, CycleType};
use saxlkit_core::{partitions_of, staircase, Partition};

fn character_columns(c: &mut Criterion) {
    let rho6 = staircase(6);
    let classes: Vec<CycleType> = partitions_of(21).map(CycleType::new).collect();
    c.bench_function("staircase_column_n21", |b| {
        b.iter(|| {
            let mut nonzero = 0u32;
            for class in &classes {
                if !character_value(&rho6, class).unwrap().is_zero() {
                    nonzero += 1;
                }
            }
            nonzero
        })
    });

    let fat: Partition = "[6,5,4,3,2,1]".parse().unwrap();
    let id = CycleType::new(Partition::new(vec![1; 21]).unwrap());
    c.bench_function("identity_column_entry_n21", |b| {
        b.iter(|| character_value(&fat, &id).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = character_columns
}
criterion_main!(benches);
