//! Frequent-variable search: the learners for targets with many terms.
//!
//! The round primitive restricts the target on the frequent variables of
//! the known terms. Outside that set every variable occurs in few known
//! terms, so the restricted known formula is read-bounded and a
//! moderately sized cover-free family, adjusted per row by clearing one
//! variable of each still-satisfied known term, is guaranteed to expose
//! a new term if one exists.

use itertools::Itertools;

use crate::assignment::Assignment;
use crate::cff::{CffMode, CffSource};
use crate::dnf::{Mdnf, Term};
use crate::error::Result;
use crate::find_term::find_term;
use crate::oracle::QueryOracle;
use crate::substitution::Substitution;

use super::{admit_term, embed_row};

/// Search for an assignment accepted by the (possibly restricted) oracle
/// and rejected by the read-`read_bound` known formula, assuming any new
/// term has at most `new_term_size` variables.
///
/// Takes a `(|V|, (new_term_size * read_bound, new_term_size))` family
/// over the known variables `V`. Each row is lifted to a full assignment
/// (1 off `V`); then, scanning the known terms in canonical order, one
/// variable of every term satisfied by the working assignment is
/// cleared, so the final candidate always evaluates the known formula
/// to 0 and costs exactly one query.
pub fn learn_read(
    oracle: &QueryOracle,
    known: &Mdnf,
    new_term_size: usize,
    read_bound: usize,
    source: &mut CffSource,
) -> Result<Option<Assignment>> {
    assert!(
        !known.is_one(),
        "a constant-1 known formula admits no candidate"
    );
    let n = oracle.n();
    let vars = known.vars();
    let family = source.family(vars.len(), new_term_size * read_bound, new_term_size)?;
    for row in family.rows() {
        let mut working = embed_row(n, &vars, row);
        for term in known.terms() {
            if term.eval(&working) {
                // clearing for one term may falsify later ones, which is
                // why the scan re-evaluates against the working state
                working.set(term.vars()[0], false);
            }
        }
        debug_assert!(!known.eval(&working));
        if oracle.query(&working)? {
            return Ok(Some(working));
        }
    }
    Ok(None)
}

/// One full round of the frequent-variable search: returns a new target
/// term if the target differs from `known`, otherwise `None`.
///
/// With threshold `tau = ceil(sqrt(s_max/d))`, the set `S` of
/// `tau`-frequent known variables has at most `r_max*s_max/tau`
/// members. For every `R` of at most `r_max` of them (ascending size,
/// then lexicographic), the oracle is viewed with `R` fixed to 1 and
/// `S \ R` fixed to 0; outside `S` the restricted known formula is
/// read-`(tau - 1)`, so [`learn_read`] applies. A hit is lifted back
/// through the substitution and handed to [`find_term`] on the root
/// oracle.
pub fn find_new_term_frequent(
    oracle: &QueryOracle,
    known: &Mdnf,
    s_max: usize,
    r_max: usize,
    d: usize,
    source: &mut CffSource,
) -> Result<Option<Term>> {
    assert!(d >= 1, "frequency parameter d must be at least 1");
    let n = oracle.n();
    let tau = ceil_sqrt_ratio(s_max, d).max(1);
    let frequent = known.frequent_vars(tau);
    assert!(
        frequent.len() * tau <= s_max * r_max || frequent.is_empty(),
        "pigeonhole: at most r_max*s_max/tau variables are tau-frequent"
    );
    for size in 0..=r_max.min(frequent.len()) {
        for ones in frequent.iter().copied().combinations(size) {
            let sub = Substitution::fixing(
                n,
                frequent
                    .iter()
                    .map(|&v| (v, ones.binary_search(&v).is_ok())),
            );
            let restricted_known = known.substitute(&sub);
            if restricted_known.is_one() {
                // Every variable of some known term is fixed to 1; a new
                // term under this restriction would be absorbed by it,
                // so the target cannot be reduced and contain one.
                continue;
            }
            let view = oracle.restricted_view(&sub)?;
            if let Some(found) = learn_read(
                &view,
                &restricted_known,
                r_max - size,
                tau.saturating_sub(1),
                source,
            )? {
                let lifted = sub.apply_to(&found);
                let term = find_term(oracle, &lifted, r_max.max(1))?;
                return Ok(Some(term));
            }
        }
    }
    Ok(None)
}

/// Algorithm 4: deterministic frequent-variable search with `d = r_max`
/// and verified families.
pub fn learn_frequent(
    oracle: &QueryOracle,
    s_max: usize,
    r_max: usize,
    mode: CffMode,
) -> Result<Mdnf> {
    let mut source = CffSource::deterministic(mode);
    learn_frequent_with(oracle, s_max, r_max, &mut source)
}

pub(crate) fn learn_frequent_with(
    oracle: &QueryOracle,
    s_max: usize,
    r_max: usize,
    source: &mut CffSource,
) -> Result<Mdnf> {
    let d = r_max.max(1);
    learn_frequent_loop(oracle, s_max, r_max, d, source)
}

/// Algorithm 5: randomized frequent-variable search with `d = 1`; every
/// family any round needs is drawn fresh with per-family failure budget
/// `delta / s_max`.
pub fn learn_frequent_random(
    oracle: &QueryOracle,
    s_max: usize,
    r_max: usize,
    delta: f64,
    seed: u64,
) -> Result<Mdnf> {
    let per_family = delta / s_max.max(1) as f64;
    let mut source = CffSource::new(CffMode::Random, per_family, seed);
    learn_frequent_loop(oracle, s_max, r_max, 1, &mut source)
}

fn learn_frequent_loop(
    oracle: &QueryOracle,
    s_max: usize,
    r_max: usize,
    d: usize,
    source: &mut CffSource,
) -> Result<Mdnf> {
    let mut h = Mdnf::zero(oracle.n());
    loop {
        if h.is_one() {
            break;
        }
        match find_new_term_frequent(oracle, &h, s_max, r_max, d, source)? {
            Some(term) => admit_term(&mut h, term, s_max)?,
            None => break,
        }
    }
    Ok(h)
}

/// Smallest `t >= 1` with `t^2 * d >= s`, i.e. `ceil(sqrt(s/d))` in
/// exact integer arithmetic.
fn ceil_sqrt_ratio(s: usize, d: usize) -> usize {
    let mut t = 1;
    while t * t * d < s {
        t += 1;
    }
    t
}
