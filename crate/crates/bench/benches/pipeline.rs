use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use knotgroup::fpgroup::{invariant_in, low_index_subgroups, tietze_simplify, DEFAULT_BUDGET};
use knotgroup::lattice::{search_redundant, NeighborMask};
use knotgroup::morse::{coreduction_dvf, CubicalView};
use knotgroup::pipeline::{classify, fund_group_report, ClassifyOptions};
use knotgroup::reduce::{collapsible_subset, shave};
use knotgroup::{CStructure, CellOrder};
use knotgroup_bench::{complement, family, presentation};

fn lattice(c: &mut Criterion) {
    let masks: Vec<NeighborMask> = (0..256u32).map(|i| NeighborMask(i.wrapping_mul(2_654_435_761) & ((1 << 26) - 1))).collect();
    c.bench_function("redundancy search, 256 masks", |b| {
        b.iter(|| masks.iter().filter(|&&m| search_redundant(black_box(m))).count())
    });
    let k = complement("3_1");
    c.bench_function("shave trefoil complement", |b| b.iter(|| shave(black_box(&k), CellOrder::default())));
    let s = shave(&k, CellOrder::default());
    c.bench_function("coreduction field on shaved trefoil", |b| {
        b.iter(|| coreduction_dvf(&CubicalView::new(black_box(&s)), CellOrder::default()))
    });
    c.bench_function("collapsible subset of shaved trefoil", |b| {
        b.iter(|| collapsible_subset(black_box(&s), CellOrder::default()))
    });
    let a = collapsible_subset(&s, CellOrder::default()).unwrap();
    let quotient = CStructure::from_quotient(&s, &a).unwrap();
    c.bench_function("alpha-collapses on trefoil quotient", |b| {
        b.iter_batched(|| quotient.clone(), |mut q| q.reduce_with(CellOrder::default()), BatchSize::SmallInput)
    });
}

fn groups(c: &mut Criterion) {
    for name in ["3_1", "7_4"] {
        let k = complement(name);
        c.bench_function(&format!("fund_group {name}"), |b| {
            b.iter(|| fund_group_report(black_box(&k), CellOrder::default(), DEFAULT_BUDGET))
        });
    }
    let k = complement("7_4");
    let raw = fund_group_report(&k, CellOrder::default(), DEFAULT_BUDGET).unwrap().raw;
    c.bench_function("tietze on raw 7_4 presentation", |b| b.iter(|| tietze_simplify(black_box(&raw), DEFAULT_BUDGET)));
    let p = presentation("7_4");
    for n in [2, 3, 4] {
        c.bench_function(&format!("low-index subgroups of 7_4 group, n = {n}"), |b| {
            b.iter(|| low_index_subgroups(black_box(&p), n))
        });
    }
    c.bench_function("I^3 of 7_4 group", |b| b.iter(|| invariant_in(black_box(&p), 3)));
}

fn classification(c: &mut Criterion) {
    let knots = family(6);
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    g.bench_function("up to 6 crossings", |b| b.iter(|| classify(black_box(&knots), &ClassifyOptions::default())));
    g.finish();
}

criterion_group!(benches, lattice, groups, classification);
criterion_main!(benches);
