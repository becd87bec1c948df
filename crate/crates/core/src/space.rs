//! Finite weighted sample spaces, factor sides of a product structure, and
//! real-valued random variables.
//!
//! A [`SampleSpace`] is an ordered list of distinct outcome identifiers with
//! nonnegative weights summing to one. An optional list of [`FactorSide`]s
//! records a product structure: side `i` projects each outcome to a label in
//! `0..label_count`, and the events measurable in side `i` are exactly the
//! label subsets lifted to the full space (see [`SampleSpace::lift_event`]).
//!
//! All types are immutable after construction and all operations are pure
//! functions with a fixed summation order, so results do not depend on
//! evaluation order or thread count.

use crate::error::{Error, Result};
use std::collections::HashSet;

/// Tolerance for "weights sum to one" at construction time.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// A finite probability space, possibly with product structure.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpace {
    ids: Vec<String>,
    weights: Vec<f64>,
    sides: Vec<FactorSide>,
}

/// One coordinate of a product structure: the label of each outcome under
/// the projection to side `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSide {
    labels: Vec<usize>,
    label_count: usize,
}

impl FactorSide {
    pub fn new(labels: Vec<usize>, label_count: usize) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l >= label_count) {
            return Err(Error::InvalidInput(format!(
                "side label {bad} out of range 0..{label_count}"
            )));
        }
        Ok(FactorSide {
            labels,
            label_count,
        })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label_count(&self) -> usize {
        self.label_count
    }

    #[inline]
    pub fn label_of(&self, outcome: usize) -> usize {
        self.labels[outcome]
    }
}

impl SampleSpace {
    /// Space without product structure.
    pub fn new(ids: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        Self::with_sides(ids, weights, Vec::new())
    }

    /// Space with the given factor sides. Validates that ids are distinct,
    /// weights are nonnegative and sum to one within [`WEIGHT_SUM_TOL`], and
    /// every side labels every outcome.
    pub fn with_sides(
        ids: Vec<String>,
        weights: Vec<f64>,
        sides: Vec<FactorSide>,
    ) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::InvalidInput(
                "a sample space needs at least one outcome".into(),
            ));
        }
        if ids.len() != weights.len() {
            return Err(Error::Mismatch(format!(
                "{} outcome ids vs {} weights",
                ids.len(),
                weights.len()
            )));
        }
        let mut seen = HashSet::with_capacity(ids.len());
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate outcome id {id:?}")));
            }
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidInput(format!("invalid outcome weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidInput(format!(
                "outcome weights sum to {total}, expected 1"
            )));
        }
        for (i, side) in sides.iter().enumerate() {
            if side.labels.len() != ids.len() {
                return Err(Error::Mismatch(format!(
                    "side {i} labels {} outcomes, space has {}",
                    side.labels.len(),
                    ids.len()
                )));
            }
        }
        Ok(SampleSpace {
            ids,
            weights,
            sides,
        })
    }

    /// Uniform space on `n` outcomes labelled `"0".."n-1"`, no sides.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("empty sample space".into()));
        }
        let ids = (0..n).map(|i| i.to_string()).collect();
        Self::new(ids, vec![1.0 / n as f64; n])
    }

    /// Uniform product of two coordinate sets: `n1 * n2` outcomes `(u, v)` in
    /// row-major order, with the two projections attached as factor sides.
    pub fn uniform_product(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidInput("empty product side".into()));
        }
        let n = n1 * n2;
        let mut ids = Vec::with_capacity(n);
        let mut l1 = Vec::with_capacity(n);
        let mut l2 = Vec::with_capacity(n);
        for u in 0..n1 {
            for v in 0..n2 {
                ids.push(format!("{u},{v}"));
                l1.push(u);
                l2.push(v);
            }
        }
        Self::with_sides(
            ids,
            vec![1.0 / n as f64; n],
            vec![FactorSide::new(l1, n1)?, FactorSide::new(l2, n2)?],
        )
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, outcome: usize) -> f64 {
        self.weights[outcome]
    }

    pub fn sides(&self) -> &[FactorSide] {
        &self.sides
    }

    pub fn side(&self, index: usize) -> Result<&FactorSide> {
        self.sides
            .get(index)
            .ok_or_else(|| Error::InvalidInput(format!("no factor side {index}")))
    }

    pub(crate) fn check_len(&self, n: usize, what: &str) -> Result<()> {
        if n != self.ids.len() {
            return Err(Error::Mismatch(format!(
                "{what} has {n} entries, space has {} outcomes",
                self.ids.len()
            )));
        }
        Ok(())
    }

    /// Indicator of the event "the side-`side` label lies in `labels`",
    /// lifted to the full space.
    pub fn lift_event(&self, side: usize, labels: &[usize]) -> Result<RandomVariable> {
        let fs = self.side(side)?;
        let mut mask = vec![false; fs.label_count];
        for &l in labels {
            if l >= fs.label_count {
                return Err(Error::InvalidInput(format!(
                    "unknown label {l} on side {side} (range 0..{})",
                    fs.label_count
                )));
            }
            mask[l] = true;
        }
        Ok(RandomVariable::new(
            fs.labels
                .iter()
                .map(|&l| if mask[l] { 1.0 } else { 0.0 })
                .collect(),
        ))
    }

    /// E(x).
    pub fn expectation(&self, x: &RandomVariable) -> Result<f64> {
        self.check_len(x.len(), "random variable")?;
        Ok(self
            .weights
            .iter()
            .zip(x.values())
            .map(|(w, v)| w * v)
            .sum())
    }

    /// ‖x‖₂ = E(x²)^½.
    pub fn l2_norm(&self, x: &RandomVariable) -> Result<f64> {
        self.check_len(x.len(), "random variable")?;
        Ok(self
            .weights
            .iter()
            .zip(x.values())
            .map(|(w, v)| w * v * v)
            .sum::<f64>()
            .sqrt())
    }
}

/// A real-valued function on the outcomes of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomVariable {
    values: Vec<f64>,
}

impl RandomVariable {
    pub fn new(values: Vec<f64>) -> Self {
        RandomVariable { values }
    }

    pub fn constant(n: usize, value: f64) -> Self {
        RandomVariable {
            values: vec![value; n],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_weights() {
        assert!(SampleSpace::new(vec!["a".into(), "b".into()], vec![0.5, 0.6]).is_err());
        assert!(SampleSpace::new(vec!["a".into(), "b".into()], vec![-0.5, 1.5]).is_err());
        assert!(SampleSpace::new(vec!["a".into(), "a".into()], vec![0.5, 0.5]).is_err());
        assert!(SampleSpace::new(vec![], vec![]).is_err());
    }

    #[test]
    fn uniform_product_sides() {
        let s = SampleSpace::uniform_product(2, 3).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.sides().len(), 2);
        assert_eq!(s.side(0).unwrap().label_count(), 2);
        assert_eq!(s.side(1).unwrap().label_count(), 3);
        // outcome (1, 2) is the last one in row-major order
        assert_eq!(s.side(0).unwrap().label_of(5), 1);
        assert_eq!(s.side(1).unwrap().label_of(5), 2);
    }

    #[test]
    fn lift_event_edges() {
        let s = SampleSpace::uniform_product(2, 2).unwrap();
        let empty = s.lift_event(0, &[]).unwrap();
        assert!(empty.values().iter().all(|&v| v == 0.0));
        let full = s.lift_event(0, &[0, 1]).unwrap();
        assert!(full.values().iter().all(|&v| v == 1.0));
        // first row of a 2x2 product touches two outcomes
        let row = s.lift_event(0, &[0]).unwrap();
        assert_eq!(row.values(), &[1.0, 1.0, 0.0, 0.0]);
        assert!(s.lift_event(0, &[7]).is_err());
        assert!(s.lift_event(2, &[0]).is_err());
    }
}
