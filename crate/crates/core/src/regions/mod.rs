//! Rate regions as systems of linear inequalities over nonnegative variables.
//!
//! Every system carries an implicit `x >= 0` for each variable. Projection
//! is Fourier–Motzkin elimination with syntactic redundancy removal, which is
//! enough for the handful of rows and variables the rate regions here use.

mod compiled;
mod fm;

use std::fmt;

use crate::error::{Error, Result};

pub use compiled::CompiledObjective;
pub use fm::{COEFF_TOL, FEAS_TOL};

use fm::Row;

/// `coeffs . x <= rhs`
#[derive(Debug, Clone, PartialEq)]
pub struct Inequality {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearRateSystem {
    vars: Vec<String>,
    ineqs: Vec<Inequality>,
}

/// Name of the auxiliary objective variable introduced by `max_linear`.
const OBJECTIVE_VAR: &str = "__objective";

impl LinearRateSystem {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Self {
        LinearRateSystem {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            ineqs: Vec::new(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn ineqs(&self) -> &[Inequality] {
        &self.ineqs
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Append `coeffs . x <= rhs`.
    pub fn push(&mut self, coeffs: Vec<f64>, rhs: f64) -> Result<()> {
        if coeffs.len() != self.vars.len() {
            return Err(Error::Dimension {
                expected: self.vars.len(),
                got: coeffs.len(),
            });
        }
        if !rhs.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("inequality entries must be finite".into()));
        }
        self.ineqs.push(Inequality { coeffs, rhs });
        Ok(())
    }

    /// Append `sum(coef * var) <= rhs` given by variable names.
    pub fn push_terms(&mut self, terms: &[(&str, f64)], rhs: f64) -> Result<()> {
        let mut coeffs = vec![0.0; self.vars.len()];
        for (name, c) in terms {
            coeffs[self.var_index(name)?] += c;
        }
        self.push(coeffs, rhs)
    }

    /// `sum(coef * var) == rhs`, stored as two opposing inequalities.
    pub fn push_equality(&mut self, terms: &[(&str, f64)], rhs: f64) -> Result<()> {
        self.push_terms(terms, rhs)?;
        let neg: Vec<(&str, f64)> = terms.iter().map(|(n, c)| (*n, -c)).collect();
        self.push_terms(&neg, -rhs)
    }

    /// Copy with additional variables appended (zero coefficients in all
    /// existing rows).
    pub fn with_vars<S: AsRef<str>>(&self, extra: &[S]) -> Self {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|v| v.as_ref().to_string()));
        let pad = extra.len();
        let ineqs = self
            .ineqs
            .iter()
            .map(|r| {
                let mut coeffs = r.coeffs.clone();
                coeffs.extend(std::iter::repeat(0.0).take(pad));
                Inequality {
                    coeffs,
                    rhs: r.rhs,
                }
            })
            .collect();
        LinearRateSystem { vars, ineqs }
    }

    /// True when every rhs is nonnegative, i.e. the origin is feasible.
    pub fn origin_feasible(&self) -> bool {
        self.ineqs.iter().all(|r| r.rhs >= 0.0)
    }

    fn rows(&self) -> Vec<Row<f64>> {
        self.ineqs
            .iter()
            .map(|r| Row {
                coeffs: r.coeffs.clone(),
                rhs: r.rhs,
            })
            .collect()
    }

    fn from_rows(vars: Vec<String>, rows: Vec<Row<f64>>) -> Self {
        LinearRateSystem {
            vars,
            ineqs: rows
                .into_iter()
                .map(|r| Inequality {
                    coeffs: r.coeffs,
                    rhs: r.rhs,
                })
                .collect(),
        }
    }

    /// Project out one variable. The result describes exactly the shadow of
    /// the system on the remaining variables.
    pub fn fm_eliminate(&self, var: &str) -> Result<Self> {
        let col = self.var_index(var)?;
        let rows = fm::eliminate(&self.rows(), col, 0.0);
        let mut vars = self.vars.clone();
        vars.remove(col);
        Ok(Self::from_rows(vars, rows))
    }

    /// Eliminate every variable outside `keep`, cheapest pairing first, with
    /// `prune_redundant` after each step.
    pub fn project<S: AsRef<str>>(&self, keep: &[S]) -> Result<Self> {
        let keep = keep
            .iter()
            .map(|k| self.var_index(k.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let (vars, rows) = fm::project_rows(self.vars.clone(), self.rows(), &keep, &0.0)
            .map_err(|()| Error::Infeasible)?;
        Ok(Self::from_rows(vars, rows))
    }

    /// Eliminate the named variables in exactly the given order.
    pub fn eliminate_in_order<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        let mut sys = self.prune_redundant()?;
        for var in order {
            sys = sys.fm_eliminate(var.as_ref())?.prune_redundant()?;
        }
        Ok(sys)
    }

    /// Largest value of `objective . x` over the region.
    ///
    /// The objective must be nonnegative: the auxiliary variable carrying its
    /// value is itself a nonnegative rate variable, which is harmless here
    /// because a nonnegative objective over nonnegative points is never
    /// negative.
    pub fn max_linear(&self, objective: &[f64]) -> Result<f64> {
        let (lifted, keep) = self.lift_objective(objective)?;
        let projected = lifted.project(&[keep.as_str()])?;
        upper_bound_of_single(&projected)
    }

    /// As `max_linear`, eliminating the original variables in `order`.
    pub fn max_linear_in_order<S: AsRef<str>>(&self, objective: &[f64], order: &[S]) -> Result<f64> {
        let (lifted, _) = self.lift_objective(objective)?;
        let projected = lifted.eliminate_in_order(order)?;
        if projected.vars.len() != 1 {
            return Err(Error::Domain(format!(
                "elimination order must cover every variable, {} left over",
                projected.vars.len() - 1
            )));
        }
        upper_bound_of_single(&projected)
    }

    fn lift_objective(&self, objective: &[f64]) -> Result<(Self, String)> {
        if objective.len() != self.vars.len() {
            return Err(Error::Dimension {
                expected: self.vars.len(),
                got: objective.len(),
            });
        }
        if objective.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::Domain(
                "objective coefficients must be finite and >= 0".into(),
            ));
        }
        let mut lifted = self.with_vars(&[OBJECTIVE_VAR]);
        let mut up: Vec<f64> = objective.iter().map(|c| -c).collect();
        up.push(1.0);
        let down: Vec<f64> = up.iter().map(|c| -c).collect();
        lifted.push(up, 0.0)?;
        lifted.push(down, 0.0)?;
        Ok((lifted, OBJECTIVE_VAR.to_string()))
    }

    /// Membership with `tol` slack on every row and on nonnegativity.
    pub fn contains(&self, point: &[f64], tol: f64) -> bool {
        if point.len() != self.vars.len() {
            return false;
        }
        point.iter().all(|x| *x >= -tol)
            && self.ineqs.iter().all(|r| {
                let lhs: f64 = r.coeffs.iter().zip(point).map(|(a, x)| a * x).sum();
                lhs <= r.rhs + tol
            })
    }

    /// Smallest row slack `rhs - a.x` (and `x_i` for nonnegativity); positive
    /// inside, negative outside, near zero on the boundary.
    pub fn slack(&self, point: &[f64]) -> f64 {
        let rows = self.ineqs.iter().map(|r| {
            let lhs: f64 = r.coeffs.iter().zip(point).map(|(a, x)| a * x).sum();
            // scale-free distance for normalized rows
            let norm = r.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs())).max(1.0);
            (r.rhs - lhs) / norm
        });
        point.iter().copied().chain(rows).fold(f64::INFINITY, f64::min)
    }

    /// Drop vacuous, duplicate and same-direction dominated rows.
    pub fn prune_redundant(&self) -> Result<Self> {
        let rows = fm::prune(self.rows()).map_err(|()| Error::Infeasible)?;
        Ok(Self::from_rows(self.vars.clone(), rows))
    }
}

/// Outcome of comparing two regions on a grid of points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipComparison {
    pub checked: usize,
    pub disagreements: usize,
    /// First point found in exactly one of the regions.
    pub first: Option<[f64; 2]>,
}

impl MembershipComparison {
    pub fn equivalent(&self) -> bool {
        self.disagreements == 0
    }
}

/// Compare two 2-variable regions on an `n x n` grid over `[0, rmax]^2`.
///
/// Points within `tol` of either boundary are not counted.
pub fn compare_membership(
    a: &LinearRateSystem,
    b: &LinearRateSystem,
    rmax: f64,
    n: usize,
    tol: f64,
) -> Result<MembershipComparison> {
    if a.vars.len() != 2 || b.vars.len() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: a.vars.len().max(b.vars.len()),
        });
    }
    if n < 2 || !(rmax.is_finite() && rmax > 0.0) {
        return Err(Error::Domain("need n >= 2 and a positive finite rmax".into()));
    }
    let last = (n - 1) as f64;
    let mut out = MembershipComparison {
        checked: 0,
        disagreements: 0,
        first: None,
    };
    for i in 0..n {
        for j in 0..n {
            let p = [rmax * i as f64 / last, rmax * j as f64 / last];
            out.checked += 1;
            let (sa, sb) = (a.slack(&p), b.slack(&p));
            if sa.abs() <= tol || sb.abs() <= tol {
                continue;
            }
            if (sa > 0.0) != (sb > 0.0) {
                out.disagreements += 1;
                out.first.get_or_insert(p);
            }
        }
    }
    Ok(out)
}

fn upper_bound_of_single(sys: &LinearRateSystem) -> Result<f64> {
    debug_assert_eq!(sys.vars.len(), 1);
    let mut upper = f64::INFINITY;
    let mut lower = 0.0f64;
    for r in &sys.ineqs {
        let c = r.coeffs[0];
        if c > COEFF_TOL {
            upper = upper.min(r.rhs / c);
        } else if c < -COEFF_TOL {
            lower = lower.max(r.rhs / c);
        }
    }
    if upper.is_infinite() {
        return Err(Error::Unbounded);
    }
    if upper < lower - FEAS_TOL {
        return Err(Error::Infeasible);
    }
    Ok(upper)
}

/// One inequality per line, `c1*v1 + c2*v2 ... <= rhs`, variables in declared
/// order; zero coefficients are omitted.
impl fmt::Display for LinearRateSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.ineqs {
            let mut first = true;
            for (c, v) in r.coeffs.iter().zip(&self.vars) {
                if c.abs() <= COEFF_TOL {
                    continue;
                }
                if first {
                    write!(f, "{c}*{v}")?;
                } else if *c < 0.0 {
                    write!(f, " - {}*{v}", -c)?;
                } else {
                    write!(f, " + {c}*{v}")?;
                }
                first = false;
            }
            if first {
                write!(f, "0")?;
            }
            writeln!(f, " <= {}", r.rhs)?;
        }
        Ok(())
    }
}
