//! Minterm extraction below a positive assignment.
//!
//! Starting from an assignment the hidden function accepts, clear bits
//! in blocks until only a minterm is left. With targets of term size at
//! most `r_max` a full block pass clears at least half of the remaining
//! ones, so the query cost from weight `w` is at most
//! `1 + 2r * ceil(log2(max(w, 2r) / 2r)) + 2r`: one precondition check,
//! `2r` queries per halving pass, and one query per surviving bit in
//! the final cleanup.

use crate::assignment::Assignment;
use crate::dnf::Term;
use crate::error::{Error, Result};
use crate::oracle::QueryOracle;

/// Descend from `start` (which the oracle must accept) to a minterm and
/// return it as a [`Term`].
///
/// The returned term `t` satisfies the minterm contract: the assignment
/// that is 1 exactly on `t` is below `start`, is accepted by the
/// oracle, and is rejected once any single bit of it is cleared. If the
/// caller additionally guarantees that some monotone `h` rejects
/// `start`, the result is a term outside `h`.
pub fn find_term(oracle: &QueryOracle, start: &Assignment, r_max: usize) -> Result<Term> {
    assert!(r_max >= 1, "term-size bound must be at least 1");
    if !oracle.query(start)? {
        return Err(Error::NotPositive);
    }
    let mut current = start.clone();
    loop {
        let weight = current.weight();
        if weight <= 2 * r_max {
            break;
        }
        let ones: Vec<usize> = current.iter_ones().collect();
        let block_count = 2 * r_max;
        let base = weight / block_count;
        let extra = weight % block_count;
        let mut offset = 0;
        let mut cleared_any = false;
        for b in 0..block_count {
            let size = base + usize::from(b < extra);
            let block = &ones[offset..offset + size];
            offset += size;
            let mut candidate = current.clone();
            for &i in block {
                candidate.set(i, false);
            }
            if oracle.query(&candidate)? {
                current = candidate;
                cleared_any = true;
            }
        }
        if !cleared_any {
            // No block was clearable, so the r_max bound does not hold
            // for this target. Bit-by-bit cleanup below still reaches a
            // correct minterm, just without the query guarantee.
            break;
        }
    }
    let ones: Vec<usize> = current.iter_ones().collect();
    for i in ones {
        let mut candidate = current.clone();
        candidate.set(i, false);
        if oracle.query(&candidate)? {
            current = candidate;
        }
    }
    Ok(Term::of_minterm(&current))
}

/// The query allowance of [`find_term`] from weight `w` with bound `r`:
/// `2r * ceil(log2(max(w, 2r) / 2r)) + 4r`, the pass cost plus slack for
/// the cleanup phase and the precondition re-check.
pub fn find_term_query_bound(weight: usize, r_max: usize) -> u64 {
    let r = r_max as u64;
    2 * r * ceil_log2_ratio(weight.max(2 * r_max), 2 * r_max) + 4 * r
}

/// Smallest `k` with `den * 2^k >= num` (so `ceil(log2(num/den))`).
fn ceil_log2_ratio(num: usize, den: usize) -> u64 {
    assert!(den > 0);
    let mut k = 0;
    let mut reach = den as u128;
    while reach < num as u128 {
        reach *= 2;
        k += 1;
    }
    k
}
