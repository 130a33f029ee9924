use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use mqlearn::{
    find_term, learn_cff, learn_exhaustive, learn_frequent, random_instance, Algorithm,
    Assignment, CffMode, CoverFreeFamily, LearnerConfig, Mdnf, QueryOracle, Term, DEFAULT_LIMIT,
};

fn bench_find_term(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_term");
    for (n, r) in [(256usize, 2usize), (1024, 4), (4096, 8)] {
        let vars: Vec<usize> = (0..r).map(|i| i * (n / r)).collect();
        let target = Mdnf::reduce(n, [Term::new(vars)]);
        group.bench_function(format!("n{n}_r{r}"), |b| {
            b.iter(|| {
                let oracle = QueryOracle::new(target.clone(), None);
                black_box(find_term(&oracle, &Assignment::ones(n), r).unwrap())
            })
        });
    }
    group.finish();
}

fn bench_learners(c: &mut Criterion) {
    let target = random_instance(30, 3, 3, 99).unwrap();
    let mut group = c.benchmark_group("learn_n30_s3_r3");
    group.bench_function("exhaustive", |b| {
        b.iter(|| {
            let oracle = QueryOracle::new(target.clone(), None);
            black_box(learn_exhaustive(&oracle, 3, 3).unwrap())
        })
    });
    group.bench_function("cff", |b| {
        b.iter(|| {
            let oracle = QueryOracle::new(target.clone(), None);
            black_box(learn_cff(&oracle, 3, 3, CffMode::Exhaustive).unwrap())
        })
    });
    group.bench_function("frequent", |b| {
        b.iter(|| {
            let oracle = QueryOracle::new(target.clone(), None);
            black_box(learn_frequent(&oracle, 3, 3, CffMode::Exhaustive).unwrap())
        })
    });
    group.bench_function("cff_random", |b| {
        b.iter(|| {
            let mut config = LearnerConfig::new(Algorithm::CffRandom, 3, 3);
            config.seed = 7;
            black_box(mqlearn::run_learner(&target, &config).unwrap())
        })
    });
    group.finish();
}

fn bench_cff(c: &mut Criterion) {
    let mut group = c.benchmark_group("cff");
    group.bench_function("exhaustive_10_2_3", |b| {
        b.iter(|| black_box(CoverFreeFamily::exhaustive(10, 2, 3, DEFAULT_LIMIT).unwrap()))
    });
    group.bench_function("greedy_8_1_2", |b| {
        b.iter(|| black_box(CoverFreeFamily::greedy(8, 1, 2, DEFAULT_LIMIT).unwrap()))
    });
    group.bench_function("verify_random_8_1_2", |b| {
        b.iter(|| {
            let mut family = CoverFreeFamily::random(8, 1, 2, 0.2, 5).unwrap();
            black_box(family.verify(DEFAULT_LIMIT).unwrap())
        })
    });
    group.finish();
}

criterion_group!(benches, bench_find_term, bench_learners, bench_cff);
criterion_main!(benches);
