//! Partial variable substitutions: fix some coordinates to constants,
//! leave the rest free.

use std::fmt;

use crate::assignment::Assignment;
use crate::error::{Error, Result};

/// Action taken on a single variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fix {
    Zero,
    One,
    Free,
}

/// A total map from variable indices to [`Fix`] actions.
#[derive(Clone, PartialEq, Eq)]
pub struct Substitution {
    fixes: Vec<Fix>,
}

impl Substitution {
    /// The identity substitution: every variable free.
    pub fn identity(n: usize) -> Self {
        Substitution {
            fixes: vec![Fix::Free; n],
        }
    }

    /// Substitution fixing exactly the given `(variable, value)` pairs.
    ///
    /// Panics if a variable occurs twice; use [`Substitution::merge`] to
    /// compose independently built substitutions.
    pub fn fixing(n: usize, pairs: impl IntoIterator<Item = (usize, bool)>) -> Self {
        let mut sub = Substitution::identity(n);
        for (var, value) in pairs {
            sub.fix(var, value);
        }
        sub
    }

    /// Fix one variable; panics if it is already fixed.
    pub fn fix(&mut self, var: usize, value: bool) {
        assert!(var < self.fixes.len(), "variable index out of range");
        assert_eq!(self.fixes[var], Fix::Free, "variable x{} fixed twice", var + 1);
        self.fixes[var] = if value { Fix::One } else { Fix::Zero };
    }

    pub fn n(&self) -> usize {
        self.fixes.len()
    }

    pub fn get(&self, var: usize) -> Fix {
        self.fixes[var]
    }

    pub fn is_identity(&self) -> bool {
        self.fixes.iter().all(|f| *f == Fix::Free)
    }

    /// `(variable, value)` pairs of the fixed coordinates, ascending.
    pub fn fixed_pairs(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.fixes.iter().enumerate().filter_map(|(i, f)| match f {
            Fix::Zero => Some((i, false)),
            Fix::One => Some((i, true)),
            Fix::Free => None,
        })
    }

    /// Stack `other` on top of `self`.
    ///
    /// Fixing an already-fixed coordinate to the same value is a no-op;
    /// fixing it to the opposite value is an error.
    pub fn merge(&self, other: &Substitution) -> Result<Substitution> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        let mut merged = self.clone();
        for (var, value) in other.fixed_pairs() {
            match merged.fixes[var] {
                Fix::Free => merged.fixes[var] = if value { Fix::One } else { Fix::Zero },
                Fix::Zero if !value => {}
                Fix::One if value => {}
                _ => return Err(Error::ConflictingFix { index: var }),
            }
        }
        Ok(merged)
    }

    /// Override the fixed coordinates of `a` with their substituted values.
    pub fn apply_to(&self, a: &Assignment) -> Assignment {
        assert_eq!(self.n(), a.n(), "dimension mismatch in substitution");
        let mut out = a.clone();
        for (var, value) in self.fixed_pairs() {
            out.set(var, value);
        }
        out
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fix in &self.fixes {
            f.write_str(match fix {
                Fix::Zero => "0",
                Fix::One => "1",
                Fix::Free => "*",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_overrides_fixed_coordinates() {
        let sub = Substitution::fixing(4, [(0, true), (2, false)]);
        let a: Assignment = "0011".parse().unwrap();
        assert_eq!(sub.apply_to(&a).to_string(), "1001");
    }

    #[test]
    fn merge_detects_conflicts() {
        let a = Substitution::fixing(3, [(1, true)]);
        let same = Substitution::fixing(3, [(1, true), (2, false)]);
        let conflict = Substitution::fixing(3, [(1, false)]);
        let merged = a.merge(&same).unwrap();
        assert_eq!(merged.get(2), Fix::Zero);
        assert!(matches!(
            a.merge(&conflict),
            Err(Error::ConflictingFix { index: 1 })
        ));
    }
}
