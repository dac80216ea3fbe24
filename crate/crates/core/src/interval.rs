//! Finite unions of closed intervals on the real line.
//!
//! These are used as the Borel sets `G`/`B` over which perimeters and
//! variations are localized. Endpoints may be infinite.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sorted, pairwise disjoint closed intervals. Touching intervals are merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet<T> {
    parts: Vec<(T, T)>,
}

impl<T: Scalar> IntervalSet<T> {
    pub fn new(intervals: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        let mut parts: Vec<(T, T)> = Vec::new();
        for (a, b) in intervals {
            if a.is_nan() || b.is_nan() || a > b {
                return Err(Error::InvalidIntervals(format!("[{a}, {b}] is not an interval")));
            }
            parts.push((a, b));
        }
        parts.sort_by(|l, r| l.0.partial_cmp(&r.0).expect("no NaN"));
        let mut merged: Vec<(T, T)> = Vec::with_capacity(parts.len());
        for (a, b) in parts {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        Ok(IntervalSet { parts: merged })
    }

    pub fn interval(a: T, b: T) -> Result<Self> {
        Self::new([(a, b)])
    }

    /// The whole real line.
    pub fn everything() -> Self {
        IntervalSet { parts: vec![(T::neg_infinity(), T::infinity())] }
    }

    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[(T, T)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: T) -> bool {
        self.parts.iter().any(|&(a, b)| a <= x && x <= b)
    }

    /// Lebesgue measure of `self ∩ [lo, hi]`.
    pub fn overlap_len(&self, lo: T, hi: T) -> T {
        let mut total = T::zero();
        for &(a, b) in &self.parts {
            let l = a.max(lo);
            let r = b.min(hi);
            if r > l {
                total = total + (r - l);
            }
        }
        total
    }

    /// Sub-intervals of `[lo, hi]` that lie in the set.
    pub fn clip(&self, lo: T, hi: T) -> Vec<(T, T)> {
        self.parts
            .iter()
            .filter_map(|&(a, b)| {
                let l = a.max(lo);
                let r = b.min(hi);
                (r >= l).then_some((l, r))
            })
            .collect()
    }

    /// Smallest closed interval containing the set, if bounded and nonempty.
    pub fn hull(&self) -> Option<(T, T)> {
        let lo = self.parts.first()?.0;
        let hi = self.parts.last()?.1;
        (lo.is_finite() && hi.is_finite()).then_some((lo, hi))
    }

    pub fn total_len(&self) -> T {
        self.parts.iter().map(|&(a, b)| b - a).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_overlapping_and_touching() {
        let s = IntervalSet::new([(2.0, 3.0), (0.0, 1.0), (1.0, 1.5), (2.5, 4.0)]).unwrap();
        assert_eq!(s.parts(), &[(0.0, 1.5), (2.0, 4.0)]);
        assert!(s.contains(1.5));
        assert!(!s.contains(1.75));
        assert_eq!(s.overlap_len(1.0, 3.0), 1.5);
    }

    #[test]
    fn rejects_reversed() {
        assert!(IntervalSet::interval(1.0, 0.0).is_err());
    }

    #[test]
    fn whole_line() {
        let s = IntervalSet::<f64>::everything();
        assert!(s.contains(-1e300));
        assert_eq!(s.overlap_len(-2.0, 5.0), 7.0);
        assert!(s.hull().is_none());
    }
}
