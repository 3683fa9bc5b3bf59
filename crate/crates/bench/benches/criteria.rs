use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use regulus::linalg::rank;
use regulus::oracle::{cotangent_dim_arithmetic, cotangent_dim_geometric};
use regulus::{
    arithmetic_jacobian, check_arithmetic, generalized_jacobian, parse_poly, PresentedVariety,
    TriangularPoint,
};
use regulus_bench::{arithmetic_batch, fp_batch};

const BATCH: usize = 60;

fn fixture(c: &mut Criterion) {
    let vars = vec!["x".to_string()];
    let x = PresentedVariety::new(
        vars.clone(),
        vec![parse_poly("x^3 + x + 3", &vars).unwrap()],
    )
    .unwrap();
    let pt = TriangularPoint::with_prime(vec![parse_poly("x^2 + 1", &vars).unwrap()], 3).unwrap();
    c.bench_function("check_arithmetic cubic at (x^2+1, 3)", |b| {
        b.iter(|| check_arithmetic(black_box(&x), black_box(&pt), None).unwrap())
    });
}

fn jacobians(c: &mut Criterion) {
    let fp = fp_batch(BATCH);
    let zz = arithmetic_batch(BATCH);
    c.bench_function("generalized_jacobian + rank, GF(p) batch", |b| {
        b.iter(|| {
            for inst in &fp {
                let j = generalized_jacobian(&inst.variety, &inst.point).unwrap();
                black_box(rank(&j).unwrap());
            }
        })
    });
    c.bench_function("arithmetic_jacobian + rank, Z batch", |b| {
        b.iter(|| {
            for inst in &zz {
                let (j, extra) = arithmetic_jacobian(&inst.variety, &inst.point).unwrap();
                black_box(rank(&j.augment(&extra).unwrap()).unwrap());
            }
        })
    });
}

fn oracles(c: &mut Criterion) {
    let fp = fp_batch(BATCH);
    let zz = arithmetic_batch(BATCH);
    c.bench_function("cotangent_dim_geometric, GF(p) batch", |b| {
        b.iter(|| {
            for inst in &fp {
                black_box(cotangent_dim_geometric(inst.variety.relations(), &inst.point).unwrap());
            }
        })
    });
    c.bench_function("cotangent_dim_arithmetic, Z batch", |b| {
        b.iter(|| {
            for inst in &zz {
                black_box(cotangent_dim_arithmetic(inst.variety.relations(), &inst.point).unwrap());
            }
        })
    });
}

criterion_group!(criteria, fixture, jacobians);
criterion_group!(oracle, oracles);
criterion_main!(criteria, oracle);
