//! Monotone terms and reduced monotone DNF formulas.
//!
//! A [`Term`] is a monotone monomial: the AND of a set of variables,
//! equivalently a hyperedge over the variable set. An [`Mdnf`] is an
//! OR of terms kept in *reduced* form: no term contains another and
//! there are no duplicates. Reduced form is canonical, so two monotone
//! functions are equal iff their reduced term sets are equal.
//!
//! Conventions for the constant functions: an empty term set is the
//! constant 0, and a single empty term is the constant 1.

use std::fmt;

use crate::assignment::Assignment;
use crate::substitution::{Fix, Substitution};

/// A monotone monomial, stored as strictly increasing variable indices.
///
/// The empty term is the constant-1 monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    vars: Vec<usize>,
}

impl Term {
    /// Build a term from arbitrary indices; sorts and deduplicates.
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Self {
        let mut vars: Vec<usize> = vars.into_iter().collect();
        vars.sort_unstable();
        vars.dedup();
        Term { vars }
    }

    /// The constant-1 term.
    pub fn empty() -> Self {
        Term { vars: Vec::new() }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// True iff every variable of the term is 1 in `a`; the empty term
    /// evaluates to true.
    pub fn eval(&self, a: &Assignment) -> bool {
        self.vars.iter().all(|&v| a.get(v))
    }

    /// Sorted-merge subset test.
    pub fn is_subset_of(&self, other: &Term) -> bool {
        let mut it = other.vars.iter();
        'outer: for &v in &self.vars {
            for &w in it.by_ref() {
                match w.cmp(&v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// The term whose variables are exactly the 1-positions of `a`.
    ///
    /// `a` is expected to be a minterm of whatever function is being
    /// reconstructed; this function just reads off the support.
    pub fn of_minterm(a: &Assignment) -> Term {
        Term {
            vars: a.iter_ones().collect(),
        }
    }

    /// The assignment that is 1 exactly on this term's variables.
    pub fn minterm(&self, n: usize) -> Assignment {
        Assignment::from_indices(n, self.vars.iter().copied())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return f.write_str("1");
        }
        for v in &self.vars {
            write!(f, "x{}", v + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A reduced monotone DNF over `n` variables.
///
/// Both the hidden target of a learning run and the learner's hypothesis
/// are values of this type. Terms are kept sorted, with no term a subset
/// of another, so equality of values is equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mdnf {
    n: usize,
    terms: Vec<Term>,
}

impl Mdnf {
    /// The constant-0 function (empty term set).
    pub fn zero(n: usize) -> Self {
        Mdnf {
            n,
            terms: Vec::new(),
        }
    }

    /// The constant-1 function (single empty term).
    pub fn one(n: usize) -> Self {
        Mdnf {
            n,
            terms: vec![Term::empty()],
        }
    }

    /// Reduce an arbitrary collection of terms: drop duplicates and any
    /// term that contains another term. The result represents the same
    /// disjunction and satisfies the reduced-form invariants.
    pub fn reduce(n: usize, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut terms: Vec<Term> = terms.into_iter().collect();
        for t in &terms {
            if let Some(&v) = t.vars().last() {
                assert!(v < n, "term variable x{} out of range (n = {n})", v + 1);
            }
        }
        // Absorption is order independent; sorting by size first means a
        // term only needs checking against already-kept (smaller) terms.
        terms.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        terms.dedup();
        let mut kept: Vec<Term> = Vec::new();
        for t in terms {
            if !kept.iter().any(|k| k.is_subset_of(&t)) {
                kept.push(t);
            }
        }
        kept.sort_unstable();
        Mdnf { n, terms: kept }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms, the `s` of an `s`-term `r`-MDNF.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest term size, the `r` of an `s`-term `r`-MDNF.
    pub fn max_term_size(&self) -> usize {
        self.terms.iter().map(Term::len).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.first().is_some_and(Term::is_empty)
    }

    pub fn contains_term(&self, t: &Term) -> bool {
        self.terms.binary_search(t).is_ok()
    }

    /// OR of the term evaluations; the empty term set evaluates to false.
    pub fn eval(&self, a: &Assignment) -> bool {
        assert_eq!(self.n, a.n(), "dimension mismatch in eval");
        self.terms.iter().any(|t| t.eval(a))
    }

    /// True iff `f(a) = 1` and clearing any single 1-bit of `a` gives 0.
    pub fn is_minterm(&self, a: &Assignment) -> bool {
        if !self.eval(a) {
            return false;
        }
        let mut probe = a.clone();
        for i in a.iter_ones() {
            probe.set(i, false);
            if self.eval(&probe) {
                return false;
            }
            probe.set(i, true);
        }
        true
    }

    /// Sorted union of all term variables.
    pub fn vars(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self.terms.iter().flat_map(|t| t.vars()).copied().collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// Variables occurring in at least `t` terms.
    pub fn frequent_vars(&self, t: usize) -> Vec<usize> {
        assert!(t >= 1, "frequency threshold must be at least 1");
        let mut counts = std::collections::HashMap::new();
        for term in &self.terms {
            for &v in term.vars() {
                *counts.entry(v).or_insert(0usize) += 1;
            }
        }
        let mut out: Vec<usize> = counts
            .into_iter()
            .filter_map(|(v, c)| (c >= t).then_some(v))
            .collect();
        out.sort_unstable();
        out
    }

    /// Fix variables according to `sub` and re-reduce.
    ///
    /// Terms containing a variable fixed to 0 are deleted; variables
    /// fixed to 1 are removed from their terms. For every assignment of
    /// the free variables the result agrees with the original function
    /// on the merged assignment.
    pub fn substitute(&self, sub: &Substitution) -> Mdnf {
        assert_eq!(self.n, sub.n(), "dimension mismatch in substitution");
        let surviving = self.terms.iter().filter_map(|term| {
            let mut vars = Vec::with_capacity(term.len());
            for &v in term.vars() {
                match sub.get(v) {
                    Fix::Zero => return None,
                    Fix::One => {}
                    Fix::Free => vars.push(v),
                }
            }
            Some(Term { vars })
        });
        Mdnf::reduce(self.n, surviving)
    }

    /// Equality of reduced term sets; the canonical-form equality test.
    pub fn equivalent(&self, other: &Mdnf) -> bool {
        assert_eq!(self.n, other.n, "dimension mismatch in equivalence test");
        self.terms == other.terms
    }

    /// Brute-force semantic equality over all `2^n` assignments.
    ///
    /// Independent of [`Mdnf::equivalent`]; kept for use as a test
    /// oracle at small `n`.
    pub fn exhaustive_equal(&self, other: &Mdnf) -> bool {
        assert_eq!(self.n, other.n, "dimension mismatch in equivalence test");
        assert!(self.n <= 24, "exhaustive comparison is for small n only");
        for mask in 0u64..(1u64 << self.n) {
            let a = Assignment::from_mask(self.n, mask);
            if self.eval(&a) != other.eval(&a) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Mdnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mdnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mdnf(n={}, {})", self.n, self)
    }
}
