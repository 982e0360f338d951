use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A stock price at maturity that takes finitely many values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscretePriceLaw {
    atoms: Vec<(f64, f64)>,
}

impl DiscretePriceLaw {
    /// Atoms are `(price, probability)`. They are stored sorted by price with
    /// equal prices merged.
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidParams("discrete law needs at least one atom".into()));
        }
        for &(s, p) in &atoms {
            if !(s > 0.0 && s.is_finite()) || !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidParams(format!(
                    "atom ({s}, {p}) needs price > 0 and probability in (0, 1]"
                )));
            }
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "atom probabilities sum to {total}, not 1"
            )));
        }
        let mut atoms = atoms;
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (s, p) in atoms {
            match merged.last_mut() {
                Some(last) if last.0 == s => last.1 += p,
                _ => merged.push((s, p)),
            }
        }
        Ok(Self { atoms: merged })
    }

    /// Atoms sorted by increasing price.
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|(s, p)| s * p).sum()
    }

    /// `P(S <= d)`
    pub fn cdf(&self, d: f64) -> f64 {
        self.atoms.iter().filter(|a| a.0 <= d).map(|a| a.1).sum()
    }

    /// `E[(S / E S) 1{S <= d}]`, the tilted law of `ln(S / E S)` at `ln(d / E S)`.
    pub fn tilted_cdf(&self, d: f64) -> f64 {
        let m = self.mean();
        self.atoms.iter().filter(|a| a.0 <= d).map(|(s, p)| s * p / m).sum()
    }
}
