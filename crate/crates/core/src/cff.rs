//! Cover-free families over binary ground sets.
//!
//! An `(n,(s,r))`-cover-free family is a set of rows in `{0,1}^n` such
//! that for every choice of `s+r` positions and every split of them
//! into `s` "zero" positions and `r` "one" positions, some row realizes
//! the split. The learners use such families as batched query patterns:
//! one row simultaneously avoids every known term and hits a new one.
//!
//! When the ground set is smaller than `s+r` the family is required to
//! realize every split of the whole ground set with at most `s` zeros
//! and at most `r` ones; that is what the learners actually consume on
//! small variable sets.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::error::{Error, Result};

/// Default cap on enumeration work for verification and construction.
pub const DEFAULT_LIMIT: u64 = 5_000_000;

/// How a learner obtains the family it needs in each round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CffMode {
    /// Brute-force family, covering by construction.
    Exhaustive,
    /// Greedy set cover over the split constraints; smaller, still
    /// covering by construction.
    Greedy,
    /// Random rows redrawn until verification passes.
    RandomVerified,
    /// Random rows, unverified; correct only with probability
    /// `1 - delta`.
    Random,
}

impl fmt::Display for CffMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CffMode::Exhaustive => "exhaustive",
            CffMode::Greedy => "greedy",
            CffMode::RandomVerified => "random-verified",
            CffMode::Random => "random",
        })
    }
}

impl FromStr for CffMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(CffMode::Exhaustive),
            "greedy" => Ok(CffMode::Greedy),
            "random-verified" => Ok(CffMode::RandomVerified),
            "random" => Ok(CffMode::Random),
            other => Err(Error::InvalidDocument(format!(
                "unknown cff mode {other:?}"
            ))),
        }
    }
}

/// A stream of families for a learner run: one mode, one failure budget,
/// one seeded random stream shared by every family drawn.
pub struct CffSource {
    mode: CffMode,
    delta: f64,
    rng: ChaCha12Rng,
    limit: u64,
}

impl CffSource {
    pub fn new(mode: CffMode, delta: f64, seed: u64) -> Self {
        CffSource {
            mode,
            delta,
            rng: ChaCha12Rng::seed_from_u64(seed),
            limit: DEFAULT_LIMIT,
        }
    }

    /// A source for the verified deterministic modes; the random stream
    /// is seeded with 0 and only consulted for the random modes.
    pub fn deterministic(mode: CffMode) -> Self {
        CffSource::new(mode, 0.1, 0)
    }

    /// Produce a family for one round.
    ///
    /// Ground sets smaller than `s + r` always fall back to the (tiny)
    /// exhaustive family, which realizes every feasible split exactly.
    pub fn family(&mut self, ground_n: usize, s: usize, r: usize) -> Result<CoverFreeFamily> {
        if ground_n < s + r {
            return CoverFreeFamily::exhaustive(ground_n, s, r, self.limit);
        }
        match self.mode {
            CffMode::Exhaustive => CoverFreeFamily::exhaustive(ground_n, s, r, self.limit),
            CffMode::Greedy => CoverFreeFamily::greedy(ground_n, s, r, self.limit),
            CffMode::Random => {
                let rows = self.row_budget(ground_n, s, r)?;
                Ok(CoverFreeFamily::random_from_rng(
                    ground_n,
                    s,
                    r,
                    rows,
                    &mut self.rng,
                ))
            }
            CffMode::RandomVerified => {
                let rows = self.row_budget(ground_n, s, r)?;
                for _ in 0..64 {
                    let mut fam =
                        CoverFreeFamily::random_from_rng(ground_n, s, r, rows, &mut self.rng);
                    if fam.verify(self.limit)?.is_none() {
                        return Ok(fam);
                    }
                }
                Err(Error::Infeasible(format!(
                    "no verified random ({ground_n},({s},{r})) family in 64 draws"
                )))
            }
        }
    }

    fn row_budget(&self, ground_n: usize, s: usize, r: usize) -> Result<usize> {
        let rows = random_cff_size(ground_n, s, r, self.delta)?;
        if rows as u128 > self.limit as u128 {
            return Err(Error::LimitExceeded {
                needed: rows as u128,
                limit: self.limit as u128,
            });
        }
        Ok(rows)
    }
}

/// A concrete family of rows with its `(s, r)` parameters.
#[derive(Clone, Debug)]
pub struct CoverFreeFamily {
    ground_n: usize,
    s: usize,
    r: usize,
    rows: Vec<Assignment>,
    verified: bool,
}

/// First uncovered `(positions, zero-set)` pair, in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CffViolation {
    /// The chosen `d = s + r` positions (ascending).
    pub positions: Vec<usize>,
    /// The subset of `positions` that no row maps to zero while mapping
    /// the rest to one.
    pub zero_set: Vec<usize>,
}

impl CoverFreeFamily {
    pub fn from_rows(ground_n: usize, s: usize, r: usize, rows: Vec<Assignment>) -> Self {
        for row in &rows {
            assert_eq!(row.n(), ground_n, "row length mismatch");
        }
        CoverFreeFamily {
            ground_n,
            s,
            r,
            rows,
            verified: false,
        }
    }

    pub fn ground_n(&self) -> usize {
        self.ground_n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rows(&self) -> &[Assignment] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub(crate) fn mark_verified(&mut self, verified: bool) {
        self.verified = verified;
    }

    /// Random construction: each bit is 1 with probability `r/(s+r)` and
    /// the row count comes from [`random_cff_size`]. Identical seeds give
    /// identical families. The result is *not* verified.
    pub fn random(ground_n: usize, s: usize, r: usize, delta: f64, seed: u64) -> Result<Self> {
        let rows = random_cff_size(ground_n, s, r, delta)?;
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        Ok(Self::random_from_rng(ground_n, s, r, rows, &mut rng))
    }

    /// Random construction drawing from a caller-owned stream.
    pub fn random_from_rng(
        ground_n: usize,
        s: usize,
        r: usize,
        row_count: usize,
        rng: &mut ChaCha12Rng,
    ) -> Self {
        let p = if s + r == 0 {
            1.0
        } else {
            r as f64 / (s + r) as f64
        };
        let rows = (0..row_count)
            .map(|_| {
                let mut row = Assignment::zeros(ground_n);
                for i in 0..ground_n {
                    row.set(i, rng.random_bool(p));
                }
                row
            })
            .collect();
        CoverFreeFamily {
            ground_n,
            s,
            r,
            rows,
            verified: false,
        }
    }

    /// Deterministic construction covering every split by brute force:
    /// one row per zero-set `Z` with `|Z| <= min(s, ground_n)`, ones
    /// elsewhere. Size is the binomial sum over zero-set sizes; the
    /// covering property holds by construction.
    pub fn exhaustive(ground_n: usize, s: usize, r: usize, limit: u64) -> Result<Self> {
        let zmax = s.min(ground_n);
        let needed: u128 = (0..=zmax).map(|z| binomial(ground_n, z)).sum();
        if needed > limit as u128 {
            return Err(Error::LimitExceeded {
                needed,
                limit: limit as u128,
            });
        }
        let mut rows = Vec::with_capacity(needed as usize);
        for z in 0..=zmax {
            for zeros in (0..ground_n).combinations(z) {
                let mut row = Assignment::ones(ground_n);
                for i in zeros {
                    row.set(i, false);
                }
                rows.push(row);
            }
        }
        Ok(CoverFreeFamily {
            ground_n,
            s,
            r,
            rows,
            verified: true,
        })
    }

    /// Greedy set cover over the uncovered `(positions, zero-set)`
    /// constraints, drawing rows from the same candidate pool as
    /// [`CoverFreeFamily::exhaustive`]. Never larger than the exhaustive
    /// family and verified by construction.
    pub fn greedy(ground_n: usize, s: usize, r: usize, limit: u64) -> Result<Self> {
        let constraints = enumerate_constraints(ground_n, s, r);
        let zmax = s.min(ground_n);
        let candidate_count: u128 = (0..=zmax).map(|z| binomial(ground_n, z)).sum();
        let work = constraints.len() as u128 * candidate_count.max(1);
        if work > limit as u128 {
            return Err(Error::LimitExceeded {
                needed: work,
                limit: limit as u128,
            });
        }
        let candidates: Vec<(Vec<usize>, Assignment)> = (0..=zmax)
            .flat_map(|z| (0..ground_n).combinations(z))
            .map(|zeros| {
                let mut row = Assignment::ones(ground_n);
                for &i in &zeros {
                    row.set(i, false);
                }
                (zeros, row)
            })
            .collect();
        let mut uncovered: Vec<bool> = vec![true; constraints.len()];
        let mut remaining = constraints.len();
        let mut rows = Vec::new();
        while remaining > 0 {
            let mut best: Option<(usize, usize)> = None; // (gain, candidate index)
            for (ci, (_, row)) in candidates.iter().enumerate() {
                let gain = constraints
                    .iter()
                    .zip(&uncovered)
                    .filter(|(c, u)| **u && row_covers(row, &c.0, &c.1))
                    .count();
                if best.is_none_or(|(g, _)| gain > g) {
                    best = Some((gain, ci));
                }
            }
            let (gain, ci) = best.expect("candidate pool is never empty");
            assert!(gain > 0, "zero-set candidates cover every constraint");
            let (_, row) = &candidates[ci];
            for (c, u) in constraints.iter().zip(uncovered.iter_mut()) {
                if *u && row_covers(row, &c.0, &c.1) {
                    *u = false;
                    remaining -= 1;
                }
            }
            rows.push(row.clone());
        }
        Ok(CoverFreeFamily {
            ground_n,
            s,
            r,
            rows,
            verified: true,
        })
    }

    /// Exhaustively check the covering property.
    ///
    /// Returns `None` when every constraint is realized (marking the
    /// family verified), or the first violated constraint in enumeration
    /// order: position subsets lexicographically, zero-sets within a
    /// subset by size then lexicographically.
    pub fn verify(&mut self, limit: u64) -> Result<Option<CffViolation>> {
        let needed = constraint_count(self.ground_n, self.s, self.r);
        if needed > limit as u128 {
            return Err(Error::LimitExceeded {
                needed,
                limit: limit as u128,
            });
        }
        let violation = self.first_violation();
        self.verified = violation.is_none();
        Ok(violation)
    }

    fn first_violation(&self) -> Option<CffViolation> {
        let d = self.s + self.r;
        let uncovered = |positions: &[usize], zero_set: &[usize]| {
            !self
                .rows
                .iter()
                .any(|row| row_covers(row, positions, zero_set))
        };
        if self.ground_n >= d {
            for positions in (0..self.ground_n).combinations(d) {
                for zero_set in positions.iter().copied().combinations(self.s) {
                    if uncovered(&positions, &zero_set) {
                        return Some(CffViolation {
                            positions,
                            zero_set,
                        });
                    }
                }
            }
        } else {
            let positions: Vec<usize> = (0..self.ground_n).collect();
            for j in self.ground_n.saturating_sub(self.r)..=self.s.min(self.ground_n) {
                for zero_set in (0..self.ground_n).combinations(j) {
                    if uncovered(&positions, &zero_set) {
                        return Some(CffViolation {
                            positions: positions.clone(),
                            zero_set,
                        });
                    }
                }
            }
        }
        None
    }

    /// Restriction to the first `k` ground positions, dropping duplicate
    /// rows (first occurrence wins). Used to reuse one family across
    /// rounds with shrinking variable sets; the result is unverified.
    pub fn project_prefix(&self, k: usize) -> CoverFreeFamily {
        assert!(k <= self.ground_n, "projection wider than ground set");
        let mut seen = std::collections::HashSet::new();
        let mut rows = Vec::new();
        for row in &self.rows {
            let proj = Assignment::from_indices(k, row.iter_ones().filter(|&i| i < k));
            if seen.insert(proj.words().to_vec()) {
                rows.push(proj);
            }
        }
        CoverFreeFamily {
            ground_n: k,
            s: self.s,
            r: self.r,
            rows,
            verified: false,
        }
    }
}

/// Row count for the random construction: the explicit union bound
/// `ceil(((s+r) ln n + ln(1/delta)) / -ln(1 - p^r (1-p)^s))` with
/// `p = r/(s+r)`, covering the at most `n^(s+r)` split events.
pub fn random_cff_size(ground_n: usize, s: usize, r: usize, delta: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&delta) || delta <= 0.0 {
        return Err(Error::Infeasible(format!(
            "failure probability must be in (0,1), got {delta}"
        )));
    }
    let d = s + r;
    if d == 0 {
        return Ok(1);
    }
    if ground_n < d {
        return Err(Error::Infeasible(format!(
            "ground set of {ground_n} cannot host {s}+{r} positions"
        )));
    }
    let p = r as f64 / d as f64;
    let q = p.powi(r as i32) * (1.0 - p).powi(s as i32);
    if q >= 1.0 {
        return Ok(1);
    }
    let numer = d as f64 * (ground_n as f64).ln() + (1.0 / delta).ln();
    let m = (numer / -(1.0 - q).ln()).ceil();
    Ok((m as usize).max(1))
}

/// Reference sizes for reports: a counting lower bound and the two best
/// known deterministic construction bounds. All constants hidden by the
/// asymptotic statements are taken as 1 and logs are base 2 (with the
/// double log clamped at 1), so these are reference numbers, not
/// certified bounds.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CffSizeBounds {
    /// `((s+r)/log C(s+r,s)) * C(s+r,s) * log n`
    pub lower_bound: f64,
    /// `min((2e)^s r^(s+3), (2e)^r s^(r+3)) * log n`
    pub upper_powers: f64,
    /// `C(s+r,r) * 2^((r+s)/log log (r+s)) * log n`
    pub upper_binomial: f64,
}

pub fn cff_size_bounds(s: usize, r: usize, ground_n: usize) -> CffSizeBounds {
    let d = (s + r) as f64;
    let choose = binomial(s + r, s) as f64;
    let log_n = (ground_n as f64).log2();
    let lower_bound = d / choose.log2().max(1.0) * choose * log_n;
    let two_e = 2.0 * std::f64::consts::E;
    let by_s = two_e.powi(s as i32) * (r as f64).powi(s as i32 + 3);
    let by_r = two_e.powi(r as i32) * (s as f64).powi(r as i32 + 3);
    let upper_powers = by_s.min(by_r) * log_n;
    let loglog = d.log2().log2().max(1.0);
    let upper_binomial = choose * (d / loglog).exp2() * log_n;
    CffSizeBounds {
        lower_bound,
        upper_powers,
        upper_binomial,
    }
}

/// Exact number of `(positions, zero-set)` constraints the verifier
/// enumerates for the given parameters.
pub fn constraint_count(ground_n: usize, s: usize, r: usize) -> u128 {
    let d = s + r;
    if ground_n >= d {
        binomial(ground_n, d) * binomial(d, s)
    } else {
        let lo = ground_n.saturating_sub(r);
        let hi = s.min(ground_n);
        (lo..=hi).map(|j| binomial(ground_n, j)).sum()
    }
}

fn enumerate_constraints(ground_n: usize, s: usize, r: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let d = s + r;
    let mut out = Vec::new();
    if ground_n >= d {
        for positions in (0..ground_n).combinations(d) {
            for zero_set in positions.iter().copied().combinations(s) {
                out.push((positions.clone(), zero_set));
            }
        }
    } else {
        // Degenerate ground set: realize every split of all positions
        // with at most s zeros and at most r ones.
        let positions: Vec<usize> = (0..ground_n).collect();
        let lo = ground_n.saturating_sub(r);
        let hi = s.min(ground_n);
        for j in lo..=hi {
            for zero_set in (0..ground_n).combinations(j) {
                out.push((positions.clone(), zero_set));
            }
        }
    }
    out
}

fn row_covers(row: &Assignment, positions: &[usize], zero_set: &[usize]) -> bool {
    let mut zeros = zero_set.iter().peekable();
    for &pos in positions {
        if zeros.peek() == Some(&&pos) {
            zeros.next();
            if row.get(pos) {
                return false;
            }
        } else if !row.get(pos) {
            return false;
        }
    }
    true
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
