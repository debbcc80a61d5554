//! Singular-value profiles and the degrees-of-freedom step function `ε ↦ N(ε)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed when checking that a profile is non-increasing.
pub const MONOTONE_TOL: f64 = 1e-12;

/// How much a profile entry can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Exact,
    UpperBound,
    Heuristic,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::UpperBound => "upper_bound",
            Provenance::Heuristic => "heuristic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawProfile {
    values: Vec<f64>,
    provenance: Vec<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    maximizers: Option<Vec<Vec<f64>>>,
}

/// Non-increasing list of generalised singular values `ε_1 ≥ ε_2 ≥ … ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct SingularProfile {
    values: Vec<f64>,
    provenance: Vec<Provenance>,
    maximizers: Option<Vec<Vec<f64>>>,
}

impl TryFrom<RawProfile> for SingularProfile {
    type Error = Error;

    fn try_from(raw: RawProfile) -> Result<Self> {
        let mut p = SingularProfile::new(raw.values, raw.provenance)?;
        if let Some(xs) = raw.maximizers {
            p = p.with_maximizers(xs)?;
        }
        Ok(p)
    }
}

impl From<SingularProfile> for RawProfile {
    fn from(p: SingularProfile) -> Self {
        RawProfile {
            values: p.values,
            provenance: p.provenance,
            maximizers: p.maximizers,
        }
    }
}

impl SingularProfile {
    pub fn new(values: Vec<f64>, provenance: Vec<Provenance>) -> Result<Self> {
        if values.len() != provenance.len() {
            return Err(Error::DimensionMismatch {
                expected: values.len(),
                found: provenance.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "singular values must be finite and nonnegative, got {v}"
            )));
        }
        if let Some(w) = values.windows(2).find(|w| w[1] > w[0] + MONOTONE_TOL) {
            return Err(Error::InvalidArgument(format!(
                "singular values must be non-increasing, got {} before {}",
                w[0], w[1]
            )));
        }
        Ok(SingularProfile {
            values,
            provenance,
            maximizers: None,
        })
    }

    /// Profile whose entries are all exact.
    pub fn exact(values: Vec<f64>) -> Result<Self> {
        let provenance = vec![Provenance::Exact; values.len()];
        SingularProfile::new(values, provenance)
    }

    pub fn empty() -> Self {
        SingularProfile {
            values: Vec::new(),
            provenance: Vec::new(),
            maximizers: None,
        }
    }

    /// Attaches the domain points that produced each entry.
    pub fn with_maximizers(mut self, maximizers: Vec<Vec<f64>>) -> Result<Self> {
        if maximizers.len() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                found: maximizers.len(),
            });
        }
        self.maximizers = Some(maximizers);
        Ok(self)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn maximizers(&self) -> Option<&[Vec<f64>]> {
        self.maximizers.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `ε_m` for 1-based `m`.
    pub fn get(&self, m: usize) -> Option<f64> {
        m.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }
}

/// Number of degrees of freedom at `level`: the count of singular values
/// strictly greater than `level`. Levels are expected to be positive.
pub fn dof_at_level(profile: &SingularProfile, level: f64) -> usize {
    profile.values.iter().filter(|v| **v > level).count()
}

/// Right-open step representation of `ε ↦ N(ε)` on `ε > 0`.
///
/// `counts[0] = 0` holds on `[breakpoints[0], ∞)`, `counts[i]` on
/// `[breakpoints[i], breakpoints[i-1])`, and the last count on
/// `(0, breakpoints[last])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DofStepFunction {
    pub breakpoints: Vec<f64>,
    pub counts: Vec<usize>,
}

impl DofStepFunction {
    /// `N(level)` for `level > 0`.
    pub fn eval(&self, level: f64) -> usize {
        match self.breakpoints.iter().position(|b| level >= *b) {
            Some(i) => self.counts[i],
            None => *self.counts.last().unwrap_or(&0),
        }
    }

    pub fn jumps(&self) -> usize {
        self.breakpoints.len()
    }

    /// Checks the shape constraints of a step function that came from a
    /// profile: strictly decreasing positive breakpoints, one more count
    /// than breakpoints, `N = 0` above the top breakpoint and counts that
    /// never decrease as `ε` decreases.
    pub fn validate(&self) -> Result<()> {
        if self.counts.len() != self.breakpoints.len() + 1 {
            return Err(Error::NotADofFunction(format!(
                "{} breakpoints need {} counts, got {}",
                self.breakpoints.len(),
                self.breakpoints.len() + 1,
                self.counts.len()
            )));
        }
        if let Some(b) = self.breakpoints.iter().find(|b| !(b.is_finite() && **b > 0.0)) {
            return Err(Error::NotADofFunction(format!(
                "breakpoints must be positive and finite, got {b}"
            )));
        }
        if self.breakpoints.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::NotADofFunction(
                "breakpoints must be strictly decreasing".into(),
            ));
        }
        if self.counts[0] != 0 {
            return Err(Error::NotADofFunction(format!(
                "N must vanish above the largest breakpoint, got {}",
                self.counts[0]
            )));
        }
        if let Some(i) = self.counts.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::NotADofFunction(format!(
                "count drops from {} to {} as the level decreases past {}",
                self.counts[i],
                self.counts[i + 1],
                self.breakpoints[i]
            )));
        }
        Ok(())
    }

    /// Samples `(ε, N(ε))` for plotting: each breakpoint plus a point just
    /// below it, and one point above the top breakpoint.
    pub fn samples(&self) -> Vec<(f64, usize)> {
        let mut out = Vec::with_capacity(2 * self.breakpoints.len() + 1);
        if let Some(top) = self.breakpoints.first() {
            out.push((2.0 * top, self.counts[0]));
        }
        for (i, b) in self.breakpoints.iter().enumerate() {
            out.push((*b, self.counts[i]));
            let next = self.breakpoints.get(i + 1).copied().unwrap_or(0.0);
            out.push(((b + next) / 2.0, self.counts[i + 1]));
        }
        out
    }
}

/// Step function of a profile. Zero entries are not jumps at any positive
/// level and are left out.
pub fn dof_function(profile: &SingularProfile) -> DofStepFunction {
    let mut breakpoints: Vec<f64> = Vec::new();
    let mut counts = vec![0];
    for v in profile.values.iter().copied().filter(|v| *v > 0.0) {
        if breakpoints.last() == Some(&v) {
            *counts.last_mut().expect("nonempty") += 1;
        } else {
            let below = *counts.last().expect("nonempty") + 1;
            breakpoints.push(v);
            counts.push(below);
        }
    }
    DofStepFunction {
        breakpoints,
        counts,
    }
}

/// Inverse of [`dof_function`]: each jump location becomes a singular value
/// with multiplicity equal to the jump height. The entries are exact values
/// of the given step function, so they are marked [`Provenance::Exact`].
pub fn profile_from_dof(step: &DofStepFunction) -> Result<SingularProfile> {
    step.validate()?;
    let mut values = Vec::with_capacity(*step.counts.last().unwrap_or(&0));
    for (i, b) in step.breakpoints.iter().enumerate() {
        let height = step.counts[i + 1] - step.counts[i];
        values.extend(std::iter::repeat_n(*b, height));
    }
    SingularProfile::exact(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn section_two() -> SingularProfile {
        SingularProfile::exact(vec![1.0, 0.9, 0.85, 0.5, 0.1, 0.05, 0.0005]).unwrap()
    }

    #[test]
    fn rejects_malformed_profiles() {
        assert!(SingularProfile::exact(vec![0.5, 1.0]).is_err());
        assert!(SingularProfile::exact(vec![1.0, -0.1]).is_err());
        assert!(SingularProfile::exact(vec![f64::NAN]).is_err());
        assert!(SingularProfile::new(vec![1.0], vec![]).is_err());
        assert!(SingularProfile::exact(vec![1.0, 1.0 + 1e-13]).is_ok());
    }

    #[test]
    fn counts_values_above_level() {
        let p = section_two();
        assert_eq!(dof_at_level(&p, 0.3), 4);
        assert_eq!(dof_at_level(&p, 1.0), 0);
        assert_eq!(dof_at_level(&p, 0.5), 3);
        assert_eq!(dof_at_level(&p, 1e-9), 7);
    }

    #[test]
    fn repeated_values_give_a_double_jump() {
        let p = SingularProfile::exact(vec![1.0, 1.0, 0.5]).unwrap();
        let step = dof_function(&p);
        assert_eq!(step.breakpoints, vec![1.0, 0.5]);
        assert_eq!(step.counts, vec![0, 2, 3]);
        assert_eq!(step.eval(1.0), 0);
        assert_eq!(step.eval(7.0), 0);
        assert_eq!(step.eval(0.99), 2);
        assert_eq!(step.eval(0.5), 2);
        assert_eq!(step.eval(0.1), 3);
    }

    #[test]
    fn single_value() {
        let step = dof_function(&SingularProfile::exact(vec![0.8]).unwrap());
        assert_eq!(step.breakpoints, vec![0.8]);
        assert_eq!(step.counts, vec![0, 1]);
        assert_eq!(profile_from_dof(&step).unwrap().values(), &[0.8]);
    }

    #[test]
    fn section_two_jumps_and_round_trip() {
        let p = section_two();
        let step = dof_function(&p);
        assert_eq!(step.breakpoints, p.values());
        assert_eq!(step.counts, (0..=7).collect::<Vec<_>>());
        assert_eq!(profile_from_dof(&step).unwrap(), p);
    }

    #[test]
    fn jump_heights_become_multiplicities() {
        let step = DofStepFunction {
            breakpoints: vec![1.0, 0.5],
            counts: vec![0, 2, 3],
        };
        assert_eq!(profile_from_dof(&step).unwrap().values(), &[1.0, 1.0, 0.5]);
    }

    #[test]
    fn rejects_decreasing_counts() {
        let step = DofStepFunction {
            breakpoints: vec![1.0, 0.5],
            counts: vec![0, 3, 2],
        };
        assert!(matches!(profile_from_dof(&step), Err(Error::NotADofFunction(_))));
        let step = DofStepFunction {
            breakpoints: vec![0.5, 1.0],
            counts: vec![0, 1, 2],
        };
        assert!(profile_from_dof(&step).is_err());
        let step = DofStepFunction {
            breakpoints: vec![1.0],
            counts: vec![1, 2],
        };
        assert!(profile_from_dof(&step).is_err());
    }

    #[test]
    fn zero_entries_are_not_jumps() {
        let p = SingularProfile::exact(vec![1.0, 0.0]).unwrap();
        let step = dof_function(&p);
        assert_eq!(step.counts, vec![0, 1]);
        let empty = dof_function(&SingularProfile::empty());
        assert_eq!(empty.counts, vec![0]);
        assert_eq!(empty.eval(0.5), 0);
    }

    #[test]
    fn samples_track_eval() {
        let step = dof_function(&section_two());
        for (eps, n) in step.samples() {
            assert_eq!(step.eval(eps), n);
        }
    }
}
