use super::fm::{self, Combination, Row, COEFF_TOL};
use super::LinearRateSystem;
use crate::error::{Error, Result};

/// `max_linear` with the elimination done once, symbolically in the rhs.
///
/// Compiling tracks every derived row as a nonnegative combination of the
/// template's rows. Evaluating for new right-hand sides (same coefficient
/// structure) is then a minimum over a few dot products. Right-hand sides
/// must be nonnegative, which is what licenses pruning without knowing them.
#[derive(Debug, Clone)]
pub struct CompiledObjective {
    n_vars: usize,
    coeffs: Vec<Vec<f64>>,
    /// One multiplier vector per upper bound on the objective.
    bounds: Vec<Vec<f64>>,
}

impl CompiledObjective {
    pub fn compile(template: &LinearRateSystem, objective: &[f64]) -> Result<Self> {
        let (lifted, _) = template.lift_objective(objective)?;
        let m = template.ineqs.len();
        let rows: Vec<Row<Combination>> = lifted
            .ineqs
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let mut mult = vec![0.0; m];
                if k < m {
                    mult[k] = 1.0;
                }
                Row {
                    coeffs: r.coeffs.clone(),
                    rhs: Combination(mult),
                }
            })
            .collect();
        let keep = [lifted.vars.len() - 1];
        let zero = Combination(vec![0.0; m]);
        let (_, rows) = fm::project_rows(lifted.vars.clone(), rows, &keep, &zero)
            .map_err(|()| Error::Infeasible)?;
        let bounds: Vec<Vec<f64>> = rows
            .into_iter()
            .filter(|r| r.coeffs[0] > COEFF_TOL)
            .map(|r| r.rhs.0.iter().map(|w| w / r.coeffs[0]).collect())
            .collect();
        if bounds.is_empty() {
            return Err(Error::Unbounded);
        }
        Ok(CompiledObjective {
            n_vars: template.vars.len(),
            coeffs: template.ineqs.iter().map(|r| r.coeffs.clone()).collect(),
            bounds,
        })
    }

    /// Number of distinct upper bounds that survived elimination.
    pub fn n_bounds(&self) -> usize {
        self.bounds.len()
    }

    /// Maximum of the objective for the given right-hand sides.
    pub fn evaluate(&self, rhs: &[f64]) -> Result<f64> {
        if rhs.len() != self.coeffs.len() {
            return Err(Error::Dimension {
                expected: self.coeffs.len(),
                got: rhs.len(),
            });
        }
        if rhs.iter().any(|b| !b.is_finite() || *b < 0.0) {
            return Err(Error::Domain(
                "compiled objectives need finite nonnegative right-hand sides".into(),
            ));
        }
        Ok(self.evaluate_unchecked(rhs))
    }

    #[inline]
    pub(crate) fn evaluate_unchecked(&self, rhs: &[f64]) -> f64 {
        self.bounds
            .iter()
            .map(|w| w.iter().zip(rhs).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::INFINITY, f64::min)
    }

    /// Evaluate against a system that shares the template's coefficients.
    pub fn evaluate_system(&self, sys: &LinearRateSystem) -> Result<f64> {
        let same_shape = sys.vars.len() == self.n_vars
            && sys.ineqs.len() == self.coeffs.len()
            && sys.ineqs.iter().zip(&self.coeffs).all(|(r, c)| {
                r.coeffs
                    .iter()
                    .zip(c)
                    .all(|(a, b)| (a - b).abs() <= COEFF_TOL)
            });
        if !same_shape {
            return Err(Error::Domain(
                "system does not match the compiled template".into(),
            ));
        }
        let rhs: Vec<f64> = sys.ineqs.iter().map(|r| r.rhs).collect();
        self.evaluate(&rhs)
    }
}
