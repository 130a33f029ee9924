//! The five exact-learning algorithms.
//!
//! Every learner consumes a sealed [`QueryOracle`] plus upper bounds
//! `s_max` (term count) and `r_max` (term size) and reconstructs the
//! hidden reduced MDNF. The shared round structure: maintain the known
//! terms `h`, search for an assignment that `h` rejects but the oracle
//! accepts, extract a new term from it with [`find_term`], and stop
//! after a round that finds nothing (then `h` is the target).
//!
//! The searches differ:
//! - exhaustive search (1): try every way of clearing one variable per
//!   known term,
//! - cover-free search (2, 3): batch the clearing patterns into a
//!   cover-free family over the known variables, deterministic or
//!   random,
//! - frequent-variable search (4, 5): fix every small subset of the
//!   frequent variables and run the cover-free search on the restricted
//!   oracle, where the known terms are read-bounded.
//!
//! Termination is always by an empty round, never by hitting `s_max`;
//! a round that still finds a term past `s_max` reports an input
//! contract violation.

mod frequent;

pub use frequent::{find_new_term_frequent, learn_frequent, learn_frequent_random, learn_read};

use std::time::Instant;

use itertools::Itertools;
use rand::SeedableRng;

use crate::assignment::Assignment;
use crate::cff::{random_cff_size, CffMode, CffSource, CoverFreeFamily};
use crate::dnf::{Mdnf, Term};
use crate::error::{Error, Result};
use crate::find_term::find_term;
use crate::instances::{bound_values, BoundValues};
use crate::oracle::QueryOracle;

/// The learner selector; indices 1-5 on the CLI surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    /// 1: deterministic exhaustive product search.
    Exhaustive,
    /// 2: deterministic cover-free-family search.
    Cff,
    /// 3: randomized, one random family reused across rounds.
    CffRandom,
    /// 4: deterministic frequent-variable restriction search.
    Frequent,
    /// 5: randomized frequent-variable search, fresh random families.
    FrequentRandom,
}

impl Algorithm {
    pub fn index(self) -> u8 {
        match self {
            Algorithm::Exhaustive => 1,
            Algorithm::Cff => 2,
            Algorithm::CffRandom => 3,
            Algorithm::Frequent => 4,
            Algorithm::FrequentRandom => 5,
        }
    }

    pub fn from_index(index: u8) -> Option<Algorithm> {
        match index {
            1 => Some(Algorithm::Exhaustive),
            2 => Some(Algorithm::Cff),
            3 => Some(Algorithm::CffRandom),
            4 => Some(Algorithm::Frequent),
            5 => Some(Algorithm::FrequentRandom),
            _ => None,
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, Algorithm::CffRandom | Algorithm::FrequentRandom)
    }
}

/// Everything a single learner run needs besides the oracle.
#[derive(Clone, Debug)]
pub struct LearnerConfig {
    pub algorithm: Algorithm,
    pub s_max: usize,
    pub r_max: usize,
    /// Failure probability for the randomized algorithms.
    pub delta: f64,
    pub seed: u64,
    pub cff_mode: CffMode,
    pub budget: Option<u64>,
}

impl LearnerConfig {
    pub fn new(algorithm: Algorithm, s_max: usize, r_max: usize) -> Self {
        LearnerConfig {
            algorithm,
            s_max,
            r_max,
            delta: 0.1,
            seed: 0,
            cff_mode: CffMode::Exhaustive,
            budget: None,
        }
    }
}

/// Outcome of one learner run, with query accounting straight off the
/// oracle counter.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub s_max: usize,
    pub r_max: usize,
    pub delta: Option<f64>,
    pub seed: Option<u64>,
    /// Oracle counter at return: every query, repeats included.
    pub queries: u64,
    /// Distinct assignments among those queries.
    pub queries_dedup: u64,
    /// Candidates skipped because the known terms already accepted them
    /// (checked locally, no oracle spend).
    pub queries_saved: u64,
    pub terms_found: usize,
    pub success: bool,
    pub elapsed_ms: u64,
    pub hypothesis: Mdnf,
    pub bounds: BoundValues,
}

/// Run the configured learner against a fresh oracle sealing `target`,
/// and grade the outcome. Budget exhaustion is reported as a failed run
/// rather than an error; other errors propagate.
pub fn run_learner(target: &Mdnf, config: &LearnerConfig) -> Result<RunReport> {
    let oracle = QueryOracle::new(target.clone(), config.budget);
    let started = Instant::now();
    let outcome = match config.algorithm {
        Algorithm::Exhaustive => {
            learn_exhaustive(&oracle, config.s_max, config.r_max).map(|h| (h, 0))
        }
        Algorithm::Cff => {
            let mut source = CffSource::new(config.cff_mode, config.delta, config.seed);
            learn_cff_counted(&oracle, config.s_max, config.r_max, &mut source)
        }
        Algorithm::CffRandom => learn_cff_random_counted(
            &oracle,
            config.s_max,
            config.r_max,
            config.delta,
            config.seed,
        ),
        Algorithm::Frequent => {
            let mut source = CffSource::new(config.cff_mode, config.delta, config.seed);
            frequent::learn_frequent_with(&oracle, config.s_max, config.r_max, &mut source)
                .map(|h| (h, 0))
        }
        Algorithm::FrequentRandom => learn_frequent_random(
            &oracle,
            config.s_max,
            config.r_max,
            config.delta,
            config.seed,
        )
        .map(|h| (h, 0)),
    };
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let randomized = config.algorithm.is_randomized()
        || matches!(config.cff_mode, CffMode::Random | CffMode::RandomVerified);
    let (hypothesis, queries_saved, success) = match outcome {
        Ok((h, saved)) => {
            let ok = h.equivalent(target);
            (h, saved, ok)
        }
        Err(Error::BudgetExhausted { .. }) => (Mdnf::zero(target.n()), 0, false),
        Err(e) => return Err(e),
    };
    Ok(RunReport {
        algorithm: config.algorithm,
        n: target.n(),
        s_max: config.s_max,
        r_max: config.r_max,
        delta: randomized.then_some(config.delta),
        seed: randomized.then_some(config.seed),
        queries: oracle.query_count(),
        queries_dedup: oracle.distinct_query_count(),
        queries_saved,
        terms_found: hypothesis.term_count(),
        success,
        elapsed_ms,
        hypothesis,
        bounds: bound_values(target.n(), config.s_max.max(1), config.r_max.max(1)),
    })
}

/// Per-round accounting of the exhaustive search, for query audits.
#[derive(Clone, Debug)]
pub struct ExhaustiveRound {
    /// Sizes of the known terms entering the round; the candidate count
    /// is exactly their product (empty product = 1).
    pub known_sizes: Vec<usize>,
    pub candidate_queries: u64,
    pub find_term_queries: u64,
    pub found: Option<Term>,
}

#[derive(Clone, Debug, Default)]
pub struct ExhaustiveTrace {
    pub rounds: Vec<ExhaustiveRound>,
}

/// Algorithm 1: exhaustive product search.
///
/// Each round queries every assignment that is 1 everywhere except one
/// chosen variable per known term (the full Cartesian product, so the
/// round cost is exactly the product of known-term sizes), then extracts
/// a term from the first accepted candidate.
pub fn learn_exhaustive(oracle: &QueryOracle, s_max: usize, r_max: usize) -> Result<Mdnf> {
    Ok(learn_exhaustive_traced(oracle, s_max, r_max)?.0)
}

/// Traced variant of [`learn_exhaustive`].
pub fn learn_exhaustive_traced(
    oracle: &QueryOracle,
    s_max: usize,
    r_max: usize,
) -> Result<(Mdnf, ExhaustiveTrace)> {
    let n = oracle.n();
    let mut h = Mdnf::zero(n);
    let mut trace = ExhaustiveTrace::default();
    loop {
        if h.is_one() {
            break;
        }
        let known_sizes: Vec<usize> = h.terms().iter().map(Term::len).collect();
        let before = oracle.query_count();
        let mut first_positive: Option<Assignment> = None;
        for choice in clearing_choices(h.terms()) {
            let mut a = Assignment::ones(n);
            for &v in &choice {
                a.set(v, false);
            }
            debug_assert!(!h.eval(&a), "candidate must avoid every known term");
            if oracle.query(&a)? && first_positive.is_none() {
                first_positive = Some(a);
            }
        }
        let candidate_queries = oracle.query_count() - before;
        match first_positive {
            Some(a) => {
                let ft_before = oracle.query_count();
                let term = find_term(oracle, &a, r_max.max(1))?;
                trace.rounds.push(ExhaustiveRound {
                    known_sizes,
                    candidate_queries,
                    find_term_queries: oracle.query_count() - ft_before,
                    found: Some(term.clone()),
                });
                admit_term(&mut h, term, s_max)?;
            }
            None => {
                trace.rounds.push(ExhaustiveRound {
                    known_sizes,
                    candidate_queries,
                    find_term_queries: 0,
                    found: None,
                });
                break;
            }
        }
    }
    Ok((h, trace))
}

/// Algorithm 2: cover-free-family search.
///
/// Each round takes a `(|V|, (known-terms, r_max))` family over the
/// known variables `V`, lifts each row to a full assignment (1 off `V`),
/// and queries the rows the known terms reject. Rows the known terms
/// accept are skipped locally without an oracle query.
pub fn learn_cff(oracle: &QueryOracle, s_max: usize, r_max: usize, mode: CffMode) -> Result<Mdnf> {
    let mut source = CffSource::deterministic(mode);
    Ok(learn_cff_counted(oracle, s_max, r_max, &mut source)?.0)
}

pub(crate) fn learn_cff_counted(
    oracle: &QueryOracle,
    s_max: usize,
    r_max: usize,
    source: &mut CffSource,
) -> Result<(Mdnf, u64)> {
    let n = oracle.n();
    let mut h = Mdnf::zero(n);
    let mut saved = 0u64;
    loop {
        if h.is_one() {
            break;
        }
        let vars = h.vars();
        let family = source.family(vars.len(), h.term_count(), r_max)?;
        match positive_from_rows(oracle, &h, &vars, family.rows(), &mut saved)? {
            Some(a) => {
                let term = find_term(oracle, &a, r_max.max(1))?;
                admit_term(&mut h, term, s_max)?;
            }
            None => break,
        }
    }
    Ok((h, saved))
}

/// Algorithm 3: randomized cover-free search.
///
/// One random `(r_max*s_max, (s_max-1, r_max))` family is drawn up
/// front and reused in every round, projected onto the round's known
/// variables. With probability at least `1 - delta` the family covers
/// every split it is asked for and the run is exact; a failed run
/// returns a sub-disjunction of the target.
pub fn learn_cff_random(
    oracle: &QueryOracle,
    s_max: usize,
    r_max: usize,
    delta: f64,
    seed: u64,
) -> Result<Mdnf> {
    Ok(learn_cff_random_counted(oracle, s_max, r_max, delta, seed)?.0)
}

pub(crate) fn learn_cff_random_counted(
    oracle: &QueryOracle,
    s_max: usize,
    r_max: usize,
    delta: f64,
    seed: u64,
) -> Result<(Mdnf, u64)> {
    let n = oracle.n();
    let ground = r_max * s_max;
    let s_param = s_max.saturating_sub(1);
    let master = if s_max == 0 || r_max == 0 {
        // Degenerate bounds: the only candidate that matters is the
        // all-ones assignment.
        CoverFreeFamily::from_rows(ground, s_param, r_max, vec![Assignment::ones(ground)])
    } else {
        let rows = random_cff_size(ground, s_param, r_max, delta)?;
        if rows as u128 > crate::cff::DEFAULT_LIMIT as u128 {
            return Err(Error::LimitExceeded {
                needed: rows as u128,
                limit: crate::cff::DEFAULT_LIMIT as u128,
            });
        }
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        CoverFreeFamily::random_from_rng(ground, s_param, r_max, rows, &mut rng)
    };
    let mut h = Mdnf::zero(n);
    let mut saved = 0u64;
    loop {
        if h.is_one() {
            break;
        }
        let vars = h.vars();
        let family = master.project_prefix(vars.len());
        match positive_from_rows(oracle, &h, &vars, family.rows(), &mut saved)? {
            Some(a) => {
                let term = find_term(oracle, &a, r_max.max(1))?;
                admit_term(&mut h, term, s_max)?;
            }
            None => break,
        }
    }
    Ok((h, saved))
}

/// Scan lifted rows for the first candidate that the known terms reject
/// and the oracle accepts. Rows the known terms accept cost no query
/// and are tallied in `saved`.
fn positive_from_rows(
    oracle: &QueryOracle,
    h: &Mdnf,
    vars: &[usize],
    rows: &[Assignment],
    saved: &mut u64,
) -> Result<Option<Assignment>> {
    for row in rows {
        let a = embed_row(oracle.n(), vars, row);
        if h.eval(&a) {
            *saved += 1;
            continue;
        }
        if oracle.query(&a)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Lift a family row over `vars` to a full assignment: the row's bits on
/// `vars`, 1 everywhere else.
pub(crate) fn embed_row(n: usize, vars: &[usize], row: &Assignment) -> Assignment {
    debug_assert_eq!(vars.len(), row.n());
    let mut a = Assignment::ones(n);
    for (idx, &v) in vars.iter().enumerate() {
        a.set(v, row.get(idx));
    }
    a
}

/// Insert a freshly discovered term, enforcing the `s_max` contract.
///
/// The term comes from `find_term` below an assignment the known terms
/// reject, so it is never already known and never absorbed.
pub(crate) fn admit_term(h: &mut Mdnf, term: Term, s_max: usize) -> Result<()> {
    debug_assert!(!h.contains_term(&term), "rounds only ever find new terms");
    if h.term_count() >= s_max {
        return Err(Error::TooManyTerms { s_max });
    }
    let before = h.term_count();
    *h = Mdnf::reduce(h.n(), h.terms().to_vec().into_iter().chain([term]));
    debug_assert_eq!(h.term_count(), before + 1, "target terms are incomparable");
    Ok(())
}

/// One clearing choice per known term: the Cartesian product of the
/// terms' variable lists, ascending within each term, last term fastest.
/// No known terms means the single empty choice (the all-ones candidate).
fn clearing_choices(terms: &[Term]) -> Box<dyn Iterator<Item = Vec<usize>> + '_> {
    if terms.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(
            terms
                .iter()
                .map(|t| t.vars().iter().copied())
                .multi_cartesian_product(),
        )
    }
}
