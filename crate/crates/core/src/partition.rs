//! Partitions of a sample space playing the role of finite sub-σ-algebras,
//! together with conditional expectation, energy, and the Pythagoras
//! residual.
//!
//! Atom ids are always canonicalized by first-outcome order, so two
//! partitions with the same atom structure compare equal on
//! [`Partition::same_atoms`]. Each partition tracks a `generator_count`: an
//! upper bound on the number of binary events needed to generate it. The
//! bound grows by one per event refinement and is additive under joins; the
//! exact complexity `ceil(log2(#positive-weight atoms))` never exceeds it.

use crate::error::{Error, Result};
use crate::space::{RandomVariable, SampleSpace};

/// ceil(log2(n)), with the convention ceil_log2(0) = ceil_log2(1) = 0.
pub fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        (n - 1).ilog2() + 1
    }
}

/// A partition of the outcomes into atoms, with a tracked complexity bound
/// and an optional side in which it is measurable.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    atom_of: Vec<usize>,
    atom_count: usize,
    generator_count: u32,
    side: Option<usize>,
}

fn canonicalize(raw: &[usize]) -> (Vec<usize>, usize) {
    let max = raw.iter().copied().max().unwrap_or(0);
    let mut relabel = vec![usize::MAX; max + 1];
    let mut next = 0;
    let atom_of = raw
        .iter()
        .map(|&a| {
            if relabel[a] == usize::MAX {
                relabel[a] = next;
                next += 1;
            }
            relabel[a]
        })
        .collect();
    (atom_of, next)
}

impl Partition {
    /// The one-atom partition {Ω}.
    pub fn trivial(space: &SampleSpace) -> Self {
        Partition {
            atom_of: vec![0; space.len()],
            atom_count: 1,
            generator_count: 0,
            side: None,
        }
    }

    /// The partition into singletons.
    pub fn discrete(space: &SampleSpace) -> Self {
        Partition {
            atom_of: (0..space.len()).collect(),
            atom_count: space.len(),
            generator_count: ceil_log2(space.len()),
            side: None,
        }
    }

    /// The partition generated by the side-`side` projection (one atom per
    /// label).
    pub fn from_side_labels(space: &SampleSpace, side: usize) -> Result<Self> {
        let fs = space.side(side)?;
        let (atom_of, atom_count) = canonicalize(fs.labels());
        let mut p = Partition {
            atom_of,
            atom_count,
            generator_count: 0,
            side: Some(side),
        };
        p.generator_count = p.exact_complexity(space)?;
        Ok(p)
    }

    /// The two-atom partition {A, Ω∖A} for the side event given by `labels`,
    /// with generator count 1.
    pub fn from_event(space: &SampleSpace, side: usize, labels: &[usize]) -> Result<Self> {
        let ind = space.lift_event(side, labels)?;
        let raw: Vec<usize> = ind.values().iter().map(|&v| (v == 1.0) as usize).collect();
        let (atom_of, atom_count) = canonicalize(&raw);
        Ok(Partition {
            atom_of,
            atom_count,
            generator_count: 1,
            side: Some(side),
        })
    }

    /// Partition from an explicit atom labelling. Validates the claimed
    /// generator count against the exact complexity and, when `side` is
    /// given, that the labelling factors through that side's projection.
    pub fn from_atom_ids(
        space: &SampleSpace,
        raw: Vec<usize>,
        generator_count: u32,
        side: Option<usize>,
    ) -> Result<Self> {
        space.check_len(raw.len(), "partition labelling")?;
        let (atom_of, atom_count) = canonicalize(&raw);
        let p = Partition {
            atom_of,
            atom_count,
            generator_count,
            side,
        };
        if let Some(s) = side {
            let fs = space.side(s)?;
            let mut atom_of_label = vec![usize::MAX; fs.label_count()];
            for (o, &a) in p.atom_of.iter().enumerate() {
                let l = fs.label_of(o);
                if atom_of_label[l] == usize::MAX {
                    atom_of_label[l] = a;
                } else if atom_of_label[l] != a {
                    return Err(Error::Precondition(format!(
                        "partition does not factor through side {s}"
                    )));
                }
            }
        }
        let exact = p.exact_complexity(space)?;
        if exact > generator_count {
            return Err(Error::Precondition(format!(
                "generator count {generator_count} below exact complexity {exact}"
            )));
        }
        Ok(p)
    }

    #[inline]
    pub fn atom_of(&self, outcome: usize) -> usize {
        self.atom_of[outcome]
    }

    pub fn atom_ids(&self) -> &[usize] {
        &self.atom_of
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn generator_count(&self) -> u32 {
        self.generator_count
    }

    pub fn side(&self) -> Option<usize> {
        self.side
    }

    pub fn len(&self) -> usize {
        self.atom_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atom_of.is_empty()
    }

    /// Same atom structure (canonical ids make this a plain equality).
    pub fn same_atoms(&self, other: &Partition) -> bool {
        self.atom_of == other.atom_of
    }

    /// Outcome lists per atom, in canonical atom order.
    pub fn atom_members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.atom_count];
        for (o, &a) in self.atom_of.iter().enumerate() {
            members[a].push(o);
        }
        members
    }

    /// Total weight per atom.
    pub fn atom_weights(&self, space: &SampleSpace) -> Result<Vec<f64>> {
        space.check_len(self.atom_of.len(), "partition")?;
        let mut w = vec![0.0; self.atom_count];
        for (o, &a) in self.atom_of.iter().enumerate() {
            w[a] += space.weight(o);
        }
        Ok(w)
    }

    /// Number of atoms of positive probability (null atoms are permitted but
    /// ignored by complexity and entropy).
    pub fn positive_atom_count(&self, space: &SampleSpace) -> Result<usize> {
        Ok(self
            .atom_weights(space)?
            .iter()
            .filter(|&&w| w > 0.0)
            .count())
    }

    /// ceil(log2(#positive-weight atoms)): the least number of binary events
    /// generating the partition up to null atoms.
    pub fn exact_complexity(&self, space: &SampleSpace) -> Result<u32> {
        Ok(ceil_log2(self.positive_atom_count(space)?))
    }

    /// The common refinement B ∨ B′: atoms are the nonempty pairwise
    /// intersections; generator counts add; the side survives only if both
    /// operands share it.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        if self.atom_of.len() != other.atom_of.len() {
            return Err(Error::Mismatch(format!(
                "joining partitions over {} and {} outcomes",
                self.atom_of.len(),
                other.atom_of.len()
            )));
        }
        let raw: Vec<usize> = self
            .atom_of
            .iter()
            .zip(&other.atom_of)
            .map(|(&a, &b)| a * other.atom_count + b)
            .collect();
        let (atom_of, atom_count) = canonicalize(&raw);
        Ok(Partition {
            atom_of,
            atom_count,
            generator_count: self.generator_count + other.generator_count,
            side: if self.side == other.side {
                self.side
            } else {
                None
            },
        })
    }

    /// True when every atom of `self` lies inside a single atom of
    /// `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.atom_of.len() != coarser.atom_of.len() {
            return false;
        }
        let mut image = vec![usize::MAX; self.atom_count];
        for (o, &a) in self.atom_of.iter().enumerate() {
            let c = coarser.atom_of[o];
            if image[a] == usize::MAX {
                image[a] = c;
            } else if image[a] != c {
                return false;
            }
        }
        true
    }
}

/// Fold of [`Partition::join`] over a nonempty slice.
pub fn join_all(parts: &[Partition]) -> Result<Partition> {
    let mut iter = parts.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Precondition("join of an empty partition list".into()))?;
    let mut acc = first.clone();
    for p in iter {
        acc = acc.join(p)?;
    }
    Ok(acc)
}

impl SampleSpace {
    /// E(x | b): constant on each atom, equal to the weighted average of `x`
    /// there; atoms of zero probability get value 0.
    pub fn conditional_expectation(
        &self,
        x: &RandomVariable,
        b: &Partition,
    ) -> Result<RandomVariable> {
        self.check_len(x.len(), "random variable")?;
        self.check_len(b.len(), "partition")?;
        let mut wsum = vec![0.0; b.atom_count()];
        let mut xsum = vec![0.0; b.atom_count()];
        for (o, &a) in b.atom_ids().iter().enumerate() {
            let w = self.weight(o);
            wsum[a] += w;
            xsum[a] += w * x.values()[o];
        }
        let avg: Vec<f64> = wsum
            .iter()
            .zip(&xsum)
            .map(|(&w, &s)| if w > 0.0 { s / w } else { 0.0 })
            .collect();
        Ok(RandomVariable::new(
            b.atom_ids().iter().map(|&a| avg[a]).collect(),
        ))
    }

    /// The energy ‖E(x | b)‖₂² of `b` with respect to `x`; lies in [0, 1]
    /// whenever ‖x‖₂ ≤ 1.
    pub fn energy(&self, x: &RandomVariable, b: &Partition) -> Result<f64> {
        let ce = self.conditional_expectation(x, b)?;
        Ok(self
            .weights()
            .iter()
            .zip(ce.values())
            .map(|(w, v)| w * v * v)
            .sum())
    }

    /// ‖E(x | fine) − E(x | coarse)‖₂² for a refining pair; equals
    /// energy(x, fine) − energy(x, coarse) up to roundoff.
    pub fn pythagoras_residual(
        &self,
        x: &RandomVariable,
        coarse: &Partition,
        fine: &Partition,
    ) -> Result<f64> {
        if !fine.refines(coarse) {
            return Err(Error::Precondition(
                "pythagoras_residual needs fine to refine coarse".into(),
            ));
        }
        let cf = self.conditional_expectation(x, fine)?;
        let cc = self.conditional_expectation(x, coarse)?;
        Ok(self
            .weights()
            .iter()
            .zip(cf.values().iter().zip(cc.values()))
            .map(|(w, (f, c))| {
                let d = f - c;
                w * d * d
            })
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_point() -> SampleSpace {
        SampleSpace::uniform(4).unwrap()
    }

    fn halves(space: &SampleSpace) -> Partition {
        Partition::from_atom_ids(space, vec![0, 0, 1, 1], 1, None).unwrap()
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(0), 0);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
    }

    #[test]
    fn join_identity_and_idempotence() {
        let s = four_point();
        let q = halves(&s);
        let t = Partition::trivial(&s);

        let jt = t.join(&q).unwrap();
        assert!(jt.same_atoms(&q));
        assert_eq!(jt.generator_count(), q.generator_count());

        let jq = q.join(&q).unwrap();
        assert!(jq.same_atoms(&q));
        assert_eq!(jq.generator_count(), 2 * q.generator_count());
    }

    #[test]
    fn join_even_odd_with_low_high() {
        // p = {even, odd}, q = {low, high} on 4 equiprobable outcomes
        let s = four_point();
        let p = Partition::from_atom_ids(&s, vec![0, 1, 0, 1], 1, None).unwrap();
        let q = halves(&s);
        let j = p.join(&q).unwrap();
        assert_eq!(j.atom_count(), 4);
        assert_eq!(j.generator_count(), 2);
        assert!(j.refines(&p));
        assert!(j.refines(&q));
    }

    #[test]
    fn conditional_expectation_examples() {
        let s = four_point();
        let x = RandomVariable::new(vec![0.0, 1.0, 2.0, 3.0]);

        let t = Partition::trivial(&s);
        let ce = s.conditional_expectation(&x, &t).unwrap();
        assert!(ce.values().iter().all(|&v| (v - 1.5).abs() < 1e-15));

        let b = halves(&s);
        let ce = s.conditional_expectation(&x, &b).unwrap();
        assert_eq!(ce.values(), &[0.5, 0.5, 2.5, 2.5]);

        // indicator of one atom of probability 1/4
        let b4 = Partition::discrete(&s);
        let e = RandomVariable::new(vec![0.0, 1.0, 0.0, 0.0]);
        let ce = s.conditional_expectation(&e, &b4).unwrap();
        assert_eq!(ce.values(), &[0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn energy_examples() {
        let s = four_point();
        let x = RandomVariable::new(vec![0.0, 1.0, 2.0, 3.0]);
        let b = halves(&s);
        assert!((s.energy(&x, &b).unwrap() - 3.25).abs() < 1e-12);

        // indicator with P(E) = d: trivial energy d², discrete energy d
        let e = RandomVariable::new(vec![1.0, 1.0, 0.0, 0.0]);
        let d = 0.5;
        let t = Partition::trivial(&s);
        assert!((s.energy(&e, &t).unwrap() - d * d).abs() < 1e-15);
        let disc = Partition::discrete(&s);
        assert!((s.energy(&e, &disc).unwrap() - d).abs() < 1e-15);
    }

    #[test]
    fn pythagoras_examples() {
        let s = four_point();
        let e = RandomVariable::new(vec![1.0, 0.0, 0.0, 0.0]);
        let d = 0.25;
        let t = Partition::trivial(&s);
        let disc = Partition::discrete(&s);

        assert_eq!(s.pythagoras_residual(&e, &t, &t).unwrap(), 0.0);
        let r = s.pythagoras_residual(&e, &t, &disc).unwrap();
        assert!((r - d * (1.0 - d)).abs() < 1e-15);

        // non-refining pair is rejected
        let p = Partition::from_atom_ids(&s, vec![0, 1, 0, 1], 1, None).unwrap();
        let q = halves(&s);
        assert!(s.pythagoras_residual(&e, &p, &q).is_err());
    }

    #[test]
    fn null_atoms_are_ignored() {
        let s = SampleSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![0.5, 0.5, 0.0],
        )
        .unwrap();
        let p = Partition::from_atom_ids(&s, vec![0, 1, 2], 1, None).unwrap();
        assert_eq!(p.atom_count(), 3);
        assert_eq!(p.positive_atom_count(&s).unwrap(), 2);
        assert_eq!(p.exact_complexity(&s).unwrap(), 1);
        // zero-probability atom gets conditional expectation 0
        let x = RandomVariable::new(vec![2.0, 4.0, 9.0]);
        let ce = s.conditional_expectation(&x, &p).unwrap();
        assert_eq!(ce.values(), &[2.0, 4.0, 0.0]);
    }

    #[test]
    fn generator_count_validation() {
        let s = four_point();
        // 4 positive atoms need at least 2 generators
        assert!(Partition::from_atom_ids(&s, vec![0, 1, 2, 3], 1, None).is_err());
        assert!(Partition::from_atom_ids(&s, vec![0, 1, 2, 3], 2, None).is_ok());
    }

    #[test]
    fn side_measurability_validation() {
        let s = SampleSpace::uniform_product(2, 2).unwrap();
        // atoms {first row, second row} factor through side 0 but not side 1
        assert!(Partition::from_atom_ids(&s, vec![0, 0, 1, 1], 1, Some(0)).is_ok());
        assert!(Partition::from_atom_ids(&s, vec![0, 0, 1, 1], 1, Some(1)).is_err());
    }
}
