//! Acceptance suite: one test per release criterion, each printing a
//! pass line with the measured numbers (run with `-- --nocapture` to
//! see them).

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use mqlearn::{
    adversarial_pair, adversarial_pair_lower_bound, find_term, find_term_query_bound,
    learn_exhaustive_traced, random_instance, run_learner, Algorithm, Assignment,
    CoverFreeFamily, LearnerConfig, Mdnf, QueryOracle, Substitution, Term, DEFAULT_LIMIT,
};

/// 200 seeded instances with n in {10, 20, 30}, s <= 4, r <= 4.
fn corpus() -> Vec<(Mdnf, u64)> {
    (0..200u64)
        .map(|i| {
            let n = [10, 20, 30][(i % 3) as usize];
            let s = 1 + ((i / 3) % 4) as usize;
            let r = 1 + ((i / 12) % 4) as usize;
            let f = random_instance(n, s, r, 1000 + i).expect("corpus instances are feasible");
            (f, 1000 + i)
        })
        .collect()
}

fn config(algorithm: Algorithm, f: &Mdnf, seed: u64) -> LearnerConfig {
    let mut cfg = LearnerConfig::new(algorithm, f.term_count(), f.max_term_size().max(1));
    cfg.seed = seed;
    cfg.delta = 0.1;
    cfg
}

#[test]
fn criterion_01_deterministic_exact_identification() {
    let corpus = corpus();
    for algorithm in [Algorithm::Exhaustive, Algorithm::Cff, Algorithm::Frequent] {
        let mut exact = 0;
        for (f, seed) in &corpus {
            let report = run_learner(f, &config(algorithm, f, *seed)).unwrap();
            assert!(
                report.success,
                "criterion 1: FAIL algorithm {algorithm:?} missed target {f} (seed {seed})"
            );
            exact += 1;
        }
        assert_eq!(exact, 200);
    }
    println!("criterion 1: pass - algorithms 1, 2, 4 exact on 200/200 instances each");
}

#[test]
fn criterion_02_randomized_exact_identification() {
    let corpus = corpus();
    for algorithm in [Algorithm::CffRandom, Algorithm::FrequentRandom] {
        let mut exact = 0;
        for (f, seed) in &corpus {
            let report = run_learner(f, &config(algorithm, f, *seed)).unwrap();
            if report.success {
                exact += 1;
            } else {
                for term in report.hypothesis.terms() {
                    assert!(
                        f.contains_term(term),
                        "criterion 2: FAIL {algorithm:?} fabricated {term} (seed {seed})"
                    );
                }
            }
        }
        assert!(
            exact >= 170,
            "criterion 2: FAIL {algorithm:?} exact on only {exact}/200 runs"
        );
        println!(
            "criterion 2: pass - {algorithm:?} exact on {exact}/200 runs (needs >= 170), failures sound"
        );
    }
}

#[test]
fn criterion_03_find_term_query_bound() {
    for n in [64usize, 256, 1024] {
        for r in [1usize, 2, 4, 8] {
            let vars: Vec<usize> = (0..r).map(|i| i * (n / r)).collect();
            let target = Mdnf::reduce(n, [Term::new(vars.clone())]);
            let oracle = QueryOracle::new(target, None);
            let term = find_term(&oracle, &Assignment::ones(n), r).unwrap();
            assert_eq!(term, Term::new(vars));
            let bound = find_term_query_bound(n, r);
            assert!(
                oracle.query_count() <= bound,
                "criterion 3: FAIL n={n} r={r}: {} queries > bound {bound}",
                oracle.query_count()
            );
        }
    }
    println!("criterion 3: pass - find_term within 2r*ceil(log2(n/2r)) + 4r on all 12 cells");
}

#[test]
fn criterion_04_exhaustive_round_accounting() {
    let corpus = corpus();
    let mut worst_ratio = 0.0f64;
    for (f, seed) in &corpus {
        let (s_max, r_max) = (f.term_count(), f.max_term_size().max(1));
        let oracle = QueryOracle::new(f.clone(), None);
        let (h, trace) = learn_exhaustive_traced(&oracle, s_max, r_max).unwrap();
        assert!(h.equivalent(f), "criterion 4: FAIL inexact on seed {seed}");
        let mut bound = 0u64;
        for round in &trace.rounds {
            let product: u64 = round.known_sizes.iter().map(|&s| s as u64).product();
            assert_eq!(
                round.candidate_queries, product,
                "criterion 4: FAIL round candidates != term-size product (seed {seed})"
            );
            bound += product;
            if round.found.is_some() {
                bound += find_term_query_bound(f.n(), r_max);
            }
        }
        let total = oracle.query_count();
        assert!(
            total <= bound,
            "criterion 4: FAIL total {total} > bound {bound} (seed {seed})"
        );
        worst_ratio = worst_ratio.max(total as f64 / bound as f64);

        // the bound is enforceable as a hard budget
        let mut cfg = config(Algorithm::Exhaustive, f, *seed);
        cfg.budget = Some(bound);
        let budgeted = run_learner(f, &cfg).unwrap();
        assert!(
            budgeted.success && budgeted.queries == total,
            "criterion 4: FAIL budgeted rerun diverged (seed {seed})"
        );
    }
    println!(
        "criterion 4: pass - per-round products exact, totals within bound on 200/200 (worst fill {:.0}%)",
        worst_ratio * 100.0
    );
}

/// Independent re-enumeration of the verifier's constraint set, used to
/// find rows that are the unique witness of some constraint.
fn all_constraints(ground_n: usize, s: usize, r: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let d = s + r;
    let mut out = Vec::new();
    if ground_n >= d {
        for positions in (0..ground_n).combinations(d) {
            for zero_set in positions.iter().copied().combinations(s) {
                out.push((positions.clone(), zero_set));
            }
        }
    } else {
        let positions: Vec<usize> = (0..ground_n).collect();
        for j in ground_n.saturating_sub(r)..=s.min(ground_n) {
            for zero_set in (0..ground_n).combinations(j) {
                out.push((positions.clone(), zero_set));
            }
        }
    }
    out
}

fn witnesses(rows: &[Assignment], positions: &[usize], zero_set: &[usize]) -> Vec<usize> {
    rows.iter()
        .enumerate()
        .filter(|(_, row)| {
            positions.iter().all(|&p| {
                let want_zero = zero_set.contains(&p);
                row.get(p) != want_zero
            })
        })
        .map(|(i, _)| i)
        .collect()
}

#[test]
fn criterion_05_verifier_and_mutation() {
    let mut families = 0;
    let mut mutations = 0;
    for ground_n in 1..=8usize {
        for s in 0..=2usize {
            for r in 0..=3usize {
                let family = CoverFreeFamily::exhaustive(ground_n, s, r, DEFAULT_LIMIT).unwrap();
                let mut check = family.clone();
                assert_eq!(
                    check.verify(DEFAULT_LIMIT).unwrap(),
                    None,
                    "criterion 5: FAIL exhaustive family rejected (g={ground_n} s={s} r={r})"
                );
                families += 1;

                let constraints = all_constraints(ground_n, s, r);
                for deleted in 0..family.len() {
                    let unique: Vec<&(Vec<usize>, Vec<usize>)> = constraints
                        .iter()
                        .filter(|(d, j)| witnesses(family.rows(), d, j) == vec![deleted])
                        .collect();
                    if unique.is_empty() {
                        continue;
                    }
                    let rows: Vec<Assignment> = family
                        .rows()
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != deleted)
                        .map(|(_, row)| row.clone())
                        .collect();
                    let mut mutant = CoverFreeFamily::from_rows(ground_n, s, r, rows);
                    let violation = mutant
                        .verify(DEFAULT_LIMIT)
                        .unwrap()
                        .expect("deleting a unique witness must break the family");
                    assert_eq!(
                        (violation.positions.clone(), violation.zero_set.clone()),
                        (unique[0].0.clone(), unique[0].1.clone()),
                        "criterion 5: FAIL wrong counterexample (g={ground_n} s={s} r={r})"
                    );
                    mutations += 1;
                }
            }
        }
    }
    println!(
        "criterion 5: pass - {families} exhaustive families verified, {mutations} single-row deletions caught with exact counterexamples"
    );
}

#[test]
fn criterion_06_random_family_failure_rate() {
    let mut passes = 0;
    for seed in 0..200u64 {
        let mut family = CoverFreeFamily::random(8, 1, 2, 0.2, seed).unwrap();
        if family.verify(DEFAULT_LIMIT).unwrap().is_none() {
            passes += 1;
        }
    }
    assert!(
        passes >= 148,
        "criterion 6: FAIL only {passes}/200 random families verified"
    );
    println!("criterion 6: pass - {passes}/200 random (8,(1,2)) families verified (needs >= 148)");
}

#[test]
fn criterion_07_restricted_view_equals_substitution() {
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    for case in 0..50 {
        let n = rng.random_range(4..=12usize);
        let s = rng.random_range(1..=4usize);
        let r = rng.random_range(1..=3usize.min(n));
        let f = random_instance(n, s, r, rng.random()).unwrap();
        let mut sub = Substitution::identity(n);
        for v in 0..n {
            match rng.random_range(0..3) {
                0 => sub.fix(v, false),
                1 => sub.fix(v, true),
                _ => {}
            }
        }
        let oracle = QueryOracle::new(f.clone(), None);
        let view = oracle.restricted_view(&sub).unwrap();
        let restricted = f.substitute(&sub);
        for mask in 0u64..(1 << n) {
            let a = Assignment::from_mask(n, mask);
            assert_eq!(
                view.query(&a).unwrap(),
                restricted.eval(&a),
                "criterion 7: FAIL case {case}: view disagrees at {a}"
            );
        }
    }
    println!("criterion 7: pass - 50 restricted views agree with the substituted target pointwise");
}

#[test]
fn criterion_08_adversarial_pair_stress() {
    for (ell, t) in [(4usize, 2usize), (6, 2), (6, 3), (8, 2)] {
        let pair = adversarial_pair(ell, t, 42).unwrap();
        let reference = adversarial_pair_lower_bound(ell, t);
        let (s_max, r_max) = (pair.g.term_count(), pair.g.max_term_size());
        for algorithm in [Algorithm::Exhaustive, Algorithm::Cff, Algorithm::Frequent] {
            for target in [&pair.f, &pair.g] {
                let mut cfg = LearnerConfig::new(algorithm, s_max, r_max);
                cfg.seed = 42;
                let report = run_learner(target, &cfg).unwrap();
                assert!(
                    report.success,
                    "criterion 8: FAIL {algorithm:?} missed (ell={ell}, t={t})"
                );
                if std::ptr::eq(target, &pair.g) {
                    println!(
                        "criterion 8:   (ell={ell}, t={t}) {algorithm:?}: {} queries vs t^m reference {reference}",
                        report.queries
                    );
                }
            }
        }
    }
    println!("criterion 8: pass - every deterministic learner distinguishes all four hard pairs");
}

#[test]
fn criterion_09_brute_force_oracle_agreement() {
    let corpus = corpus();
    let mut checked = 0;
    for (f, seed) in corpus.iter().filter(|(f, _)| f.n() <= 16) {
        for algorithm in [
            Algorithm::Exhaustive,
            Algorithm::Cff,
            Algorithm::CffRandom,
            Algorithm::Frequent,
            Algorithm::FrequentRandom,
        ] {
            let report = run_learner(f, &config(algorithm, f, *seed)).unwrap();
            assert_eq!(
                report.hypothesis.exhaustive_equal(f),
                report.hypothesis.equivalent(f),
                "criterion 9: FAIL truth-table and reduced-form equality disagree (seed {seed})"
            );
            checked += 1;
        }
    }
    assert!(checked >= 300);
    println!(
        "criterion 9: pass - {checked} hypotheses cross-checked against full truth tables"
    );
}

#[test]
fn criterion_10_invariant_property_suite() {
    let mut rng = ChaCha12Rng::seed_from_u64(4242);

    // monotonicity: f(a) <= f(b) whenever a <= b
    for _ in 0..1000 {
        let n = rng.random_range(2..=12usize);
        let f = random_mdnf(&mut rng, n);
        let mut a = Assignment::zeros(n);
        let mut b = Assignment::zeros(n);
        for i in 0..n {
            let hi = rng.random_bool(0.5);
            b.set(i, hi);
            a.set(i, hi && rng.random_bool(0.5));
        }
        assert!(a.le(&b));
        assert!(
            f.eval(&a) <= f.eval(&b),
            "criterion 10: FAIL monotonicity on {f}"
        );
    }

    // reduce idempotence and semantics
    for _ in 0..1000 {
        let n = rng.random_range(2..=10usize);
        let terms: Vec<Term> = (0..rng.random_range(0..=5usize))
            .map(|_| {
                let size = rng.random_range(1..=n.min(4));
                Term::new((0..size).map(|_| rng.random_range(0..n)))
            })
            .collect();
        let reduced = Mdnf::reduce(n, terms.clone());
        let twice = Mdnf::reduce(n, reduced.terms().to_vec());
        assert!(twice.equivalent(&reduced), "criterion 10: FAIL idempotence");
        for mask in 0..(1u64 << n) {
            let a = Assignment::from_mask(n, mask);
            assert_eq!(
                terms.iter().any(|t| t.eval(&a)),
                reduced.eval(&a),
                "criterion 10: FAIL reduce semantics"
            );
        }
    }

    // find_term minterm contract
    for _ in 0..1000 {
        let n = rng.random_range(2..=24usize);
        let f = random_mdnf(&mut rng, n);
        let start = Assignment::ones(n);
        if !f.eval(&start) {
            continue;
        }
        let r = f.max_term_size().max(1);
        let oracle = QueryOracle::new(f.clone(), None);
        let term = find_term(&oracle, &start, r).unwrap();
        let minterm = term.minterm(n);
        assert!(minterm.le(&start));
        assert!(
            f.is_minterm(&minterm),
            "criterion 10: FAIL minterm contract on {f}"
        );
    }

    // query-counter accounting across root and views
    for _ in 0..1000 {
        let n = rng.random_range(2..=10usize);
        let f = random_mdnf(&mut rng, n);
        let oracle = QueryOracle::new(f, None);
        let view = oracle
            .restricted_view(&Substitution::fixing(n, [(0, rng.random_bool(0.5))]))
            .unwrap();
        let mut issued = 0u64;
        for _ in 0..rng.random_range(0..20) {
            let a = Assignment::from_mask(n, rng.random_range(0..(1u64 << n)));
            if rng.random_bool(0.5) {
                oracle.query(&a).unwrap();
            } else {
                view.query(&a).unwrap();
            }
            issued += 1;
        }
        assert_eq!(
            oracle.query_count(),
            issued,
            "criterion 10: FAIL counter accounting"
        );
    }

    // pigeonhole: at most s*r/tau variables are tau-frequent
    for _ in 0..1000 {
        let n = rng.random_range(2..=12usize);
        let f = random_mdnf(&mut rng, n);
        let tau = rng.random_range(1..=4usize);
        let frequent = f.frequent_vars(tau);
        assert!(
            frequent.len() * tau <= f.term_count() * f.max_term_size(),
            "criterion 10: FAIL pigeonhole on {f} (tau {tau})"
        );
    }

    println!("criterion 10: pass - 5 invariant families x 1000 random cases");
}

fn random_mdnf(rng: &mut ChaCha12Rng, n: usize) -> Mdnf {
    let terms: Vec<Term> = (0..rng.random_range(0..=4usize))
        .map(|_| {
            let size = rng.random_range(1..=n.min(4));
            Term::new(rand::seq::index::sample(rng, n, size))
        })
        .collect();
    Mdnf::reduce(n, terms)
}
