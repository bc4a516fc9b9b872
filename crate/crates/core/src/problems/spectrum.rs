use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::FeasibleSet;
use crate::{Error, Result};

/// Maximum, mean and standard deviation of the objective over `F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostStats {
    pub c_max: f64,
    pub c_avg: f64,
    pub sigma: f64,
}

/// Objective values `C(z)` for every feasible `z`, with exact running sums.
#[derive(Debug, Clone, PartialEq)]
pub struct CostSpectrum {
    feasible: FeasibleSet,
    values: Vec<u64>,
    max: u64,
    sum: u128,
    sum_sq: u128,
}

impl CostSpectrum {
    /// `values[i]` is the cost of `feasible.get(i)`.
    pub fn new(feasible: FeasibleSet, values: Vec<u64>) -> Result<Self> {
        if values.len() != feasible.len() {
            return Err(Error::DimensionMismatch {
                expected: feasible.len(),
                actual: values.len(),
            });
        }
        let max = values.iter().copied().max().unwrap_or(0);
        let sum = values.iter().map(|&v| v as u128).sum();
        let sum_sq = values.iter().map(|&v| (v as u128) * (v as u128)).sum();
        Ok(CostSpectrum {
            feasible,
            values,
            max,
            sum,
            sum_sq,
        })
    }

    /// Evaluates `f` on every feasible string.
    pub fn from_fn(feasible: FeasibleSet, f: impl Fn(u64) -> u64) -> Result<Self> {
        let values = feasible.iter().map(f).collect();
        CostSpectrum::new(feasible, values)
    }

    pub fn feasible(&self) -> &FeasibleSet {
        &self.feasible
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn c_max(&self) -> u64 {
        self.max
    }

    /// `sum_i C(i)`.
    pub fn sum(&self) -> u128 {
        self.sum
    }

    /// `sum_i C(i)^2`.
    pub fn sum_sq(&self) -> u128 {
        self.sum_sq
    }

    pub fn c_avg_exact(&self) -> Result<Ratio<i128>> {
        if self.is_empty() {
            return Err(Error::EmptyFeasibleSet);
        }
        Ok(Ratio::new(self.sum as i128, self.len() as i128))
    }

    /// `(N sum C^2 - (sum C)^2) / N^2`, exactly.
    pub fn variance_exact(&self) -> Result<Ratio<i128>> {
        if self.is_empty() {
            return Err(Error::EmptyFeasibleSet);
        }
        let n = self.len() as i128;
        Ok(Ratio::new(self.variance_numerator(), n * n))
    }

    /// `N sum C^2 - (sum C)^2`, which is `N^2 sigma^2` and never negative.
    pub fn variance_numerator(&self) -> i128 {
        let n = self.len() as i128;
        n * self.sum_sq as i128 - (self.sum as i128) * (self.sum as i128)
    }

    /// True when every value is 0 or 1.
    pub fn is_indicator(&self) -> bool {
        self.max <= 1
    }

    /// The same problem with every value multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Result<CostSpectrum> {
        let values = self
            .values
            .iter()
            .map(|&v| {
                v.checked_mul(factor)
                    .ok_or_else(|| Error::invalid("scaled cost overflows u64"))
            })
            .collect::<Result<Vec<_>>>()?;
        CostSpectrum::new(self.feasible.clone(), values)
    }
}

/// Exact statistics of an enumerated spectrum, converted to floating point at
/// the end.
pub fn cost_stats_bruteforce(c: &CostSpectrum) -> Result<CostStats> {
    if c.is_empty() {
        return Err(Error::EmptyFeasibleSet);
    }
    let n = c.len() as f64;
    let num = c.variance_numerator();
    Ok(CostStats {
        c_max: c.c_max() as f64,
        c_avg: c.sum() as f64 / n,
        sigma: (num as f64).sqrt() / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_function() {
        let c = CostSpectrum::from_fn(FeasibleSet::full(4).unwrap(), |_| 5).unwrap();
        let s = cost_stats_bruteforce(&c).unwrap();
        assert_eq!((s.c_max, s.c_avg, s.sigma), (5.0, 5.0, 0.0));
        assert_eq!(c.variance_exact().unwrap(), Ratio::from_integer(0));
    }

    #[test]
    fn single_marked_of_four() {
        let c = CostSpectrum::from_fn(FeasibleSet::full(2).unwrap(), |z| (z == 2) as u64).unwrap();
        let s = cost_stats_bruteforce(&c).unwrap();
        assert_eq!(s.c_max, 1.0);
        assert_eq!(s.c_avg, 0.25);
        assert!((s.sigma - 3f64.sqrt() / 4.0).abs() < 1e-15);
        assert_eq!(c.variance_exact().unwrap(), Ratio::new(3, 16));
    }

    #[test]
    fn empty_feasible_set_errors() {
        let f = FeasibleSet::explicit(3, vec![]).unwrap();
        let c = CostSpectrum::new(f, vec![]).unwrap();
        assert!(matches!(cost_stats_bruteforce(&c), Err(Error::EmptyFeasibleSet)));
    }

    #[test]
    fn length_mismatch() {
        assert!(CostSpectrum::new(FeasibleSet::full(2).unwrap(), vec![1, 2]).is_err());
    }

    #[test]
    fn scaling() {
        let c = CostSpectrum::new(FeasibleSet::full(1).unwrap(), vec![1, 3]).unwrap();
        let d = c.scaled(3).unwrap();
        assert_eq!(d.values(), &[3, 9]);
        assert_eq!(d.c_max(), 9);
    }
}
