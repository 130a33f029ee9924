//! The sealed membership-query interface.
//!
//! A [`QueryOracle`] hides a target [`Mdnf`] and answers membership
//! queries `f(a)`, counting every query. Restricted views layer a
//! [`Substitution`] over the target so learners can work on a
//! restriction of `f` while all queries are still answered (and
//! counted) by the one root oracle.

use std::cell::{Cell, RefCell};
use std::collections::HashSet;
use std::rc::Rc;

use crate::assignment::Assignment;
use crate::dnf::Mdnf;
use crate::error::{Error, Result};
use crate::substitution::Substitution;

struct Shared {
    target: Mdnf,
    budget: Option<u64>,
    count: Cell<u64>,
    distinct: RefCell<HashSet<Vec<u64>>>,
}

/// Membership-query oracle for a hidden monotone DNF.
///
/// Cloneable views created by [`QueryOracle::restricted_view`] share the
/// root's counter and budget. A root oracle and its views belong to a
/// single learner run; distinct runs use distinct oracles.
pub struct QueryOracle {
    shared: Rc<Shared>,
    sub: Substitution,
}

impl QueryOracle {
    /// Seal `target` behind the query interface. With `budget` set, any
    /// query past the budget fails instead of answering.
    pub fn new(target: Mdnf, budget: Option<u64>) -> Self {
        let n = target.n();
        QueryOracle {
            shared: Rc::new(Shared {
                target,
                budget,
                count: Cell::new(0),
                distinct: RefCell::new(HashSet::new()),
            }),
            sub: Substitution::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.shared.target.n()
    }

    /// Answer one membership query; increments the shared counter.
    ///
    /// Through a restricted view the fixed coordinates of the view's
    /// substitution override the corresponding bits of `a` first.
    pub fn query(&self, a: &Assignment) -> Result<bool> {
        if a.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: a.n(),
            });
        }
        if let Some(budget) = self.shared.budget {
            if self.shared.count.get() >= budget {
                return Err(Error::BudgetExhausted { budget });
            }
        }
        let effective = if self.sub.is_identity() {
            a.clone()
        } else {
            self.sub.apply_to(a)
        };
        self.shared.count.set(self.shared.count.get() + 1);
        self.shared
            .distinct
            .borrow_mut()
            .insert(effective.words().to_vec());
        Ok(self.shared.target.eval(&effective))
    }

    /// A view of the oracle under an additional substitution.
    ///
    /// Substitutions stack: re-fixing an already-fixed coordinate to a
    /// different value is an error. The view shares the root counter.
    pub fn restricted_view(&self, sub: &Substitution) -> Result<QueryOracle> {
        Ok(QueryOracle {
            shared: Rc::clone(&self.shared),
            sub: self.sub.merge(sub)?,
        })
    }

    /// Total queries asked through the root and every view.
    pub fn query_count(&self) -> u64 {
        self.shared.count.get()
    }

    /// Number of distinct effective assignments queried so far.
    pub fn distinct_query_count(&self) -> u64 {
        self.shared.distinct.borrow().len() as u64
    }

    pub fn budget(&self) -> Option<u64> {
        self.shared.budget
    }

    /// Test and harness escape hatch: the hidden target.
    ///
    /// Learners must never call this; it exists so tests can validate
    /// hypotheses and report success without spending queries.
    pub fn reveal_target(&self) -> &Mdnf {
        &self.shared.target
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnf::Term;

    fn f(n: usize, terms: &[&[usize]]) -> Mdnf {
        Mdnf::reduce(n, terms.iter().map(|t| Term::new(t.iter().copied())))
    }

    #[test]
    fn answers_and_counts() {
        let oracle = QueryOracle::new(f(3, &[&[0, 1], &[2]]), None);
        assert!(oracle.query(&"110".parse().unwrap()).unwrap());
        assert!(!oracle.query(&"100".parse().unwrap()).unwrap());
        assert_eq!(oracle.query_count(), 2);
    }

    #[test]
    fn single_variable_target() {
        let oracle = QueryOracle::new(f(1, &[&[0]]), None);
        assert!(oracle.query(&"1".parse().unwrap()).unwrap());
        assert_eq!(oracle.query_count(), 1);
    }

    #[test]
    fn constant_zero_target() {
        let oracle = QueryOracle::new(Mdnf::zero(4), None);
        assert!(!oracle.query(&Assignment::ones(4)).unwrap());
    }

    #[test]
    fn zero_budget_rejects_first_query() {
        let oracle = QueryOracle::new(f(2, &[&[0]]), Some(0));
        assert!(matches!(
            oracle.query(&Assignment::ones(2)),
            Err(Error::BudgetExhausted { budget: 0 })
        ));
        assert_eq!(oracle.query_count(), 0);
    }

    #[test]
    fn repeats_count_every_time_with_shared_dedup() {
        let oracle = QueryOracle::new(f(2, &[&[0]]), None);
        let a = Assignment::ones(2);
        let first = oracle.query(&a).unwrap();
        let second = oracle.query(&a).unwrap();
        assert_eq!(first, second);
        assert_eq!(oracle.query_count(), 2);
        assert_eq!(oracle.distinct_query_count(), 1);
    }

    #[test]
    fn restricted_view_overrides_fixed_coordinates() {
        let oracle = QueryOracle::new(f(2, &[&[0, 1]]), None);
        let up = oracle
            .restricted_view(&Substitution::fixing(2, [(0, true)]))
            .unwrap();
        assert!(up.query(&"01".parse().unwrap()).unwrap());
        let down = oracle
            .restricted_view(&Substitution::fixing(2, [(0, false)]))
            .unwrap();
        assert!(!down.query(&"11".parse().unwrap()).unwrap());
        assert_eq!(oracle.query_count(), 2);
    }

    #[test]
    fn views_share_counter_and_conflicts_error() {
        let oracle = QueryOracle::new(f(3, &[&[0]]), None);
        let view = oracle
            .restricted_view(&Substitution::fixing(3, [(1, true)]))
            .unwrap();
        for _ in 0..3 {
            view.query(&Assignment::ones(3)).unwrap();
        }
        assert_eq!(oracle.query_count(), 3);
        // conflicting re-fix through the view
        assert!(view
            .restricted_view(&Substitution::fixing(3, [(1, false)]))
            .is_err());
        // identical re-fix stacks fine
        assert!(view
            .restricted_view(&Substitution::fixing(3, [(1, true), (2, false)]))
            .is_ok());
    }

    #[test]
    fn view_matches_substituted_target_exhaustively() {
        // restricted_view must agree pointwise with Mdnf::substitute.
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.random_range(2..=8usize);
            let terms: Vec<Term> = (0..rng.random_range(1..=4usize))
                .map(|_| {
                    let size = rng.random_range(1..=3);
                    Term::new((0..size).map(|_| rng.random_range(0..n)))
                })
                .collect();
            let target = Mdnf::reduce(n, terms);
            let mut sub = Substitution::identity(n);
            for v in 0..n {
                match rng.random_range(0..3) {
                    0 => sub.fix(v, false),
                    1 => sub.fix(v, true),
                    _ => {}
                }
            }
            let oracle = QueryOracle::new(target.clone(), None);
            let view = oracle.restricted_view(&sub).unwrap();
            let restricted = target.substitute(&sub);
            for mask in 0u64..(1 << n) {
                let a = Assignment::from_mask(n, mask);
                assert_eq!(
                    view.query(&a).unwrap(),
                    restricted.eval(&a),
                    "n={n} target={target} sub={sub} a={a}"
                );
            }
        }
    }
}
