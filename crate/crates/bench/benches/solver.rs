use criterion::{black_box, criterion_group, criterion_main, Criterion};
use helsinki_core::solver::reference;
use helsinki_core::{
    build_chain, build_h_cell, consistency_sweep, loop_universality, state_table, Assignment,
    Solver,
};

fn solving(c: &mut Criterion) {
    let cell = build_h_cell().structure;
    let chain = build_chain(2).unwrap().structure;
    let cell_solver = Solver::new(&cell).unwrap();
    let chain_solver = Solver::new(&chain).unwrap();
    let empty = Assignment::new();

    c.bench_function("h_cell_complete_empty", |b| {
        b.iter(|| cell_solver.complete(black_box(&empty)).unwrap())
    });
    c.bench_function("chain2_count_empty", |b| {
        b.iter(|| chain_solver.count(black_box(&empty)).unwrap())
    });
    c.bench_function("h_cell_naive", |b| {
        b.iter(|| reference::naive_admissible(black_box(&cell)).unwrap())
    });
}

fn analyses(c: &mut Criterion) {
    c.bench_function("state_table", |b| b.iter(state_table));
    c.bench_function("loop_universality", |b| b.iter(loop_universality));

    let mut group = c.benchmark_group("consistency_sweep");
    group.sample_size(10);
    for k in [1usize, 2, 3] {
        group.bench_function(format!("chain_{k}"), |b| {
            b.iter(|| consistency_sweep(black_box(k)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, solving, analyses);
criterion_main!(benches);
