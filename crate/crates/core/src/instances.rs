//! Test-instance generators and reference query-count calculators.
//!
//! `random_instance` builds seeded random reduced targets for learner
//! corpora. `adversarial_pair` builds the classic hard pair: a blockwise
//! target `f` and the same target plus one transversal term `g`, which
//! agree everywhere except on assignments matching a single hidden
//! index pattern, so any learner needs many queries to tell them apart.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::dnf::{Mdnf, Term};
use crate::error::{Error, Result};

/// A seeded random reduced MDNF with exactly `s` terms of size at most
/// `r`: term sizes uniform in `1..=r`, variables uniform, terms that
/// compare under inclusion with an existing term are redrawn.
pub fn random_instance(n: usize, s: usize, r: usize, seed: u64) -> Result<Mdnf> {
    if r > n {
        return Err(Error::Infeasible(format!(
            "term size bound {r} exceeds variable count {n}"
        )));
    }
    if s > 0 && r == 0 {
        return Err(Error::Infeasible(
            "cannot place nonempty terms with r = 0".into(),
        ));
    }
    if r == 1 && s > n {
        return Err(Error::Infeasible(format!(
            "cannot place {s} incomparable single-variable terms in {n} variables"
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut terms: Vec<Term> = Vec::with_capacity(s);
    let mut attempts = 0usize;
    while terms.len() < s {
        attempts += 1;
        if attempts > 1000 + 200 * s {
            return Err(Error::Infeasible(format!(
                "could not place {s} incomparable terms of size <= {r} in {n} variables"
            )));
        }
        let size = rng.random_range(1..=r);
        let term = Term::new(rand::seq::index::sample(&mut rng, n, size));
        if terms
            .iter()
            .any(|t| t.is_subset_of(&term) || term.is_subset_of(t))
        {
            continue;
        }
        terms.push(term);
    }
    let instance = Mdnf::reduce(n, terms);
    debug_assert_eq!(instance.term_count(), s);
    Ok(instance)
}

/// A hard target pair.
///
/// `f` is the OR of `m = floor(ell/t)` disjoint blocks of `t`
/// consecutive variables each; `g` adds one transversal term built by
/// dropping the `k_j`-th variable from every block. The two functions
/// differ only on assignments that are 1 on the transversal term and 0
/// on each dropped variable, so distinguishing them amounts to guessing
/// the hidden index vector `(k_1..k_m)` among `t^m` possibilities.
#[derive(Clone, Debug)]
pub struct InstancePair {
    pub f: Mdnf,
    pub g: Mdnf,
    /// The transversal term present in `g` but not `f`.
    pub hidden: Term,
    /// Minimal distinguishing assignment: 1 exactly on `hidden`.
    pub witness: Assignment,
    pub ell: usize,
    pub t: usize,
    /// 1-based dropped position per block.
    pub k_vector: Vec<usize>,
}

pub fn adversarial_pair(ell: usize, t: usize, seed: u64) -> Result<InstancePair> {
    if t < 2 {
        return Err(Error::Infeasible("block size t must be at least 2".into()));
    }
    let m = ell / t;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let k_vector: Vec<usize> = (0..m).map(|_| rng.random_range(1..=t)).collect();
    adversarial_pair_with_k(ell, t, k_vector)
}

/// The pair with an explicit index vector; `adversarial_pair` draws the
/// vector from the seed and delegates here.
pub fn adversarial_pair_with_k(ell: usize, t: usize, k_vector: Vec<usize>) -> Result<InstancePair> {
    if t < 2 {
        return Err(Error::Infeasible("block size t must be at least 2".into()));
    }
    let m = ell / t;
    if m < 1 {
        return Err(Error::Infeasible(
            "ell must be at least t (no complete block)".into(),
        ));
    }
    if m < 2 {
        return Err(Error::Infeasible(
            "degenerate pair: with a single block the transversal term absorbs it".into(),
        ));
    }
    if k_vector.len() != m || k_vector.iter().any(|&k| k < 1 || k > t) {
        return Err(Error::Infeasible(format!(
            "index vector must have {m} entries in 1..={t}"
        )));
    }
    let blocks: Vec<Term> = (0..m).map(|j| Term::new(j * t..(j + 1) * t)).collect();
    let hidden = Term::new((0..m).flat_map(|j| {
        let dropped = j * t + k_vector[j] - 1;
        (j * t..(j + 1) * t).filter(move |&v| v != dropped)
    }));
    let f = Mdnf::reduce(ell, blocks.clone());
    let g = Mdnf::reduce(ell, blocks.into_iter().chain([hidden.clone()]));
    debug_assert_eq!(g.term_count(), m + 1);
    let witness = hidden.minterm(ell);
    Ok(InstancePair {
        f,
        g,
        hidden,
        witness,
        ell,
        t,
        k_vector,
    })
}

/// Reference query count for distinguishing an adversarial pair:
/// `t^floor(ell/t)`, the number of index vectors.
pub fn adversarial_pair_lower_bound(ell: usize, t: usize) -> f64 {
    (t as f64).powi((ell / t) as i32)
}

/// Reference query-count formulas for reports.
///
/// All hidden constants are taken as 1 and logs are base 2; the values
/// are reference numbers for comparing measured query counts against,
/// not certified bounds. Values outside their parameter regime are
/// `None`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundValues {
    /// Information-theoretic floor `r*s*log2(n)`.
    pub info_lower: f64,
    /// `(2s/r)^(r/2)`, meaningful when `r <= s`.
    pub lower_r_le_s: Option<f64>,
    /// `(r/s)^(s-1)`, meaningful when `r > s`.
    pub lower_r_gt_s: Option<f64>,
    /// `r^(s-1)`: product-search upper-bound form.
    pub exhaustive_upper: f64,
    /// `(3e)^r * (rs)^(r/2 + 1.5)`: frequent-variable search upper-bound
    /// form.
    pub frequent_upper: f64,
}

pub fn bound_values(n: usize, s: usize, r: usize) -> BoundValues {
    assert!(s >= 1 && r >= 1, "bound formulas need s, r >= 1");
    let (nf, sf, rf) = (n as f64, s as f64, r as f64);
    let three_e = 3.0 * std::f64::consts::E;
    BoundValues {
        info_lower: rf * sf * nf.log2(),
        lower_r_le_s: (r <= s).then(|| (2.0 * sf / rf).powf(rf / 2.0)),
        lower_r_gt_s: (r > s).then(|| (rf / sf).powi(s as i32 - 1)),
        exhaustive_upper: rf.powi(s as i32 - 1),
        frequent_upper: three_e.powi(r as i32) * (rf * sf).powf(rf / 2.0 + 1.5),
    }
}
