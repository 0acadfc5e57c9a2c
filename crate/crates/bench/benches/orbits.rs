use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use renner::analysis::{check_hecke_agreement, verify_putcha_conjecture, OrbitData};
use renner::{leq, orbit, rpoly_via_bar, OrbitPoset, PartialPerm, RPolyTable, RankIdempotent};

fn rank2() -> RankIdempotent {
    RankIdempotent::new(4, 2).unwrap()
}

fn bench_order(c: &mut Criterion) {
    let elements = orbit(&rank2());
    c.bench_function("leq/all pairs of rank-2 orbit of R_4", |b| {
        b.iter(|| {
            let mut count = 0usize;
            for x in &elements {
                for y in &elements {
                    count += usize::from(leq(x, y).unwrap());
                }
            }
            black_box(count)
        })
    });
    c.bench_function("OrbitPoset::new/rank-2 orbit of R_4", |b| b.iter(|| black_box(OrbitPoset::new(rank2()))));
}

fn bench_rpoly(c: &mut Criterion) {
    let elements = orbit(&rank2());
    c.bench_function("rpoly/sweep rank-2 orbit of R_4, fresh table", |b| {
        b.iter_batched(
            || RPolyTable::new(rank2()),
            |table| {
                for x in &elements {
                    for y in &elements {
                        black_box(table.rpoly(x, y).unwrap());
                    }
                }
            },
            BatchSize::SmallInput,
        )
    });
    let top: PartialPerm = elements.last().unwrap().clone();
    c.bench_function("rpoly_via_bar/top of rank-2 orbit of R_4", |b| {
        b.iter(|| black_box(rpoly_via_bar(&top).unwrap()))
    });
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    let data = OrbitData::new(rank2());
    group.bench_function("putcha/rank-2 orbit of R_4", |b| b.iter(|| black_box(verify_putcha_conjecture(&data))));
    let data = OrbitData::new(RankIdempotent::new(3, 2).unwrap());
    group.bench_function("hecke/rank-2 orbit of R_3", |b| b.iter(|| black_box(check_hecke_agreement(&data))));
    group.finish();
}

criterion_group!(benches, bench_order, bench_rpoly, bench_verify);
criterion_main!(benches);
