//! Exact rational vertex weights in common-denominator form.
//!
//! Every balanced-separator decision in this crate compares component
//! weights against 1/2 in exact integer arithmetic; no floating point is
//! involved anywhere.

use num::{BigUint, Integer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("total weight exceeds one")]
    TotalExceedsOne,
    #[error("weight function has {got} entries for a graph on {expected} vertices")]
    LengthMismatch { got: usize, expected: usize },
    #[error("vertex {v} out of range")]
    VertexOutOfRange { v: usize },
    #[error("vertex {v} assigned a weight twice")]
    DuplicateVertex { v: usize },
}

/// Nonnegative per-vertex rationals with a shared denominator, totaling at
/// most one (a weak weight function); exactly one makes it proper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    numerators: Vec<BigUint>,
    denominator: BigUint,
}

impl WeightFunction {
    pub fn new(numerators: Vec<BigUint>, denominator: BigUint) -> Result<Self, WeightError> {
        if denominator == BigUint::ZERO {
            return Err(WeightError::ZeroDenominator);
        }
        let total: BigUint = numerators.iter().sum();
        if total > denominator {
            return Err(WeightError::TotalExceedsOne);
        }
        Ok(WeightFunction { numerators, denominator })
    }

    /// Weight 1/n on each of n vertices. The empty graph gets the empty
    /// (weak) function.
    pub fn uniform(n: usize) -> Self {
        if n == 0 {
            return WeightFunction { numerators: Vec::new(), denominator: BigUint::from(1u32) };
        }
        WeightFunction { numerators: vec![BigUint::from(1u32); n], denominator: BigUint::from(n) }
    }

    /// All weight on a single vertex.
    pub fn concentrated(n: usize, v: usize) -> Self {
        let mut numerators = vec![BigUint::ZERO; n];
        numerators[v] = BigUint::from(1u32);
        WeightFunction { numerators, denominator: BigUint::from(1u32) }
    }

    /// Builds from per-vertex fractions (vertex, numerator, denominator),
    /// rescaling to the least common denominator. Unlisted vertices weigh 0.
    pub fn from_fractions(n: usize, fractions: &[(usize, BigUint, BigUint)]) -> Result<Self, WeightError> {
        let mut lcm = BigUint::from(1u32);
        for (v, _, den) in fractions {
            if *v >= n {
                return Err(WeightError::VertexOutOfRange { v: *v });
            }
            if *den == BigUint::ZERO {
                return Err(WeightError::ZeroDenominator);
            }
            lcm = lcm.lcm(den);
        }
        let mut numerators = vec![BigUint::ZERO; n];
        let mut seen = vec![false; n];
        for (v, num, den) in fractions {
            if seen[*v] {
                return Err(WeightError::DuplicateVertex { v: *v });
            }
            seen[*v] = true;
            numerators[*v] = num * (&lcm / den);
        }
        WeightFunction::new(numerators, lcm)
    }

    pub fn n(&self) -> usize {
        self.numerators.len()
    }

    pub fn numerator(&self, v: usize) -> &BigUint {
        &self.numerators[v]
    }

    pub fn numerators(&self) -> &[BigUint] {
        &self.numerators
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn total_numerator(&self) -> BigUint {
        self.numerators.iter().sum()
    }

    /// Proper means the weights total exactly one.
    pub fn is_proper(&self) -> bool {
        self.total_numerator() == self.denominator
    }

    pub fn set_numerator(&self, set: &[usize]) -> BigUint {
        set.iter().map(|&v| &self.numerators[v]).sum()
    }

    /// Is `2 * (weight of set) <= 1`? The half comparison behind every
    /// balance decision.
    pub fn set_at_most_half(&self, set: &[usize]) -> bool {
        self.set_numerator(set) * 2u32 <= self.denominator
    }

    /// Regroups weights onto aggregate vertices: entry `i` of the result is
    /// the sum over `groups[i]`. The denominator is unchanged, so the result
    /// is weak whenever the groups are disjoint.
    pub fn aggregate(&self, groups: &[Vec<usize>]) -> WeightFunction {
        let numerators: Vec<BigUint> = groups.iter().map(|g| self.set_numerator(g)).collect();
        WeightFunction { numerators, denominator: self.denominator.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_is_proper() {
        let w = WeightFunction::uniform(3);
        assert!(w.is_proper());
        assert!(w.set_at_most_half(&[1]));
        assert!(!w.set_at_most_half(&[0, 1, 2]));
    }

    #[test]
    fn rejects_total_above_one() {
        let err = WeightFunction::new(vec![BigUint::from(2u32), BigUint::from(2u32)], BigUint::from(3u32));
        assert_eq!(err.unwrap_err(), WeightError::TotalExceedsOne);
    }

    #[test]
    fn fractions_with_distinct_denominators() {
        // 1/2 + 1/3 + 1/6 = 1
        let w = WeightFunction::from_fractions(
            3,
            &[
                (0, BigUint::from(1u32), BigUint::from(2u32)),
                (1, BigUint::from(1u32), BigUint::from(3u32)),
                (2, BigUint::from(1u32), BigUint::from(6u32)),
            ],
        )
        .unwrap();
        assert!(w.is_proper());
        assert_eq!(*w.denominator(), BigUint::from(6u32));
        assert_eq!(*w.numerator(0), BigUint::from(3u32));
    }

    #[test]
    fn aggregate_preserves_denominator() {
        let w = WeightFunction::uniform(4);
        let agg = w.aggregate(&[vec![0, 1], vec![2], vec![3]]);
        assert_eq!(*agg.numerator(0), BigUint::from(2u32));
        assert!(agg.is_proper());
    }
}
