//! Fourier–Motzkin elimination over rows whose right-hand side is either a
//! number or a symbolic nonnegative combination of base right-hand sides.

/// Zero test for coefficients.
pub const COEFF_TOL: f64 = 1e-12;

/// Slack allowed before a `0 <= rhs` row is declared infeasible.
pub const FEAS_TOL: f64 = 1e-9;

pub(crate) enum ZeroRow {
    Vacuous,
    Infeasible,
}

/// Right-hand side of an inequality row.
pub(crate) trait Bound: Clone {
    fn combine(&self, w_self: f64, other: &Self, w_other: f64) -> Self;
    fn scale(&self, w: f64) -> Self;
    /// `self <= other` for every admissible assignment of the base values.
    fn no_greater(&self, other: &Self) -> bool;
    fn zero_row(&self) -> ZeroRow;
}

impl Bound for f64 {
    fn combine(&self, w_self: f64, other: &Self, w_other: f64) -> Self {
        w_self * self + w_other * other
    }

    fn scale(&self, w: f64) -> Self {
        w * self
    }

    fn no_greater(&self, other: &Self) -> bool {
        self <= other
    }

    fn zero_row(&self) -> ZeroRow {
        if *self < -FEAS_TOL {
            ZeroRow::Infeasible
        } else {
            ZeroRow::Vacuous
        }
    }
}

/// Nonnegative multipliers over the base rows: the row's rhs is
/// `sum_k mult[k] * base_rhs[k]`. Valid only when every base rhs is `>= 0`,
/// which is what makes componentwise comparison a sound dominance test.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Combination(pub Vec<f64>);

impl Bound for Combination {
    fn combine(&self, w_self: f64, other: &Self, w_other: f64) -> Self {
        Combination(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| w_self * a + w_other * b)
                .collect(),
        )
    }

    fn scale(&self, w: f64) -> Self {
        Combination(self.0.iter().map(|a| w * a).collect())
    }

    fn no_greater(&self, other: &Self) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| *a <= *b + COEFF_TOL)
    }

    fn zero_row(&self) -> ZeroRow {
        ZeroRow::Vacuous
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Row<B> {
    pub coeffs: Vec<f64>,
    pub rhs: B,
}

impl<B: Bound> Row<B> {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.abs() <= COEFF_TOL)
    }

    /// Scale so the largest coefficient magnitude is one.
    fn normalized(mut self) -> Self {
        let m = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if m > COEFF_TOL && (m - 1.0).abs() > 0.0 {
            for c in &mut self.coeffs {
                *c /= m;
            }
            self.rhs = self.rhs.scale(1.0 / m);
        }
        for c in &mut self.coeffs {
            if c.abs() <= COEFF_TOL {
                *c = 0.0;
            }
        }
        self
    }

    fn same_coeffs(&self, other: &Self) -> bool {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| (a - b).abs() <= COEFF_TOL)
    }
}

/// Number of combined rows eliminating `col` would produce.
pub(crate) fn pairing_count<B>(rows: &[Row<B>], col: usize) -> usize {
    let pos = rows.iter().filter(|r| r.coeffs[col] > COEFF_TOL).count();
    // the nonnegativity row -x <= 0 joins the negative side
    let neg = rows.iter().filter(|r| r.coeffs[col] < -COEFF_TOL).count() + 1;
    pos * neg
}

/// Eliminate column `col` (a nonnegative variable). `zero` is the rhs of the
/// nonnegativity row. The returned rows no longer contain the column.
pub(crate) fn eliminate<B: Bound>(rows: &[Row<B>], col: usize, zero: B) -> Vec<Row<B>> {
    let n = rows.first().map_or(0, |r| r.coeffs.len());
    let mut nonneg = vec![0.0; n];
    if n > 0 {
        nonneg[col] = -1.0;
    }
    let nonneg = Row {
        coeffs: nonneg,
        rhs: zero,
    };

    let mut pos = Vec::new();
    let mut neg = vec![&nonneg];
    let mut out = Vec::new();
    for r in rows {
        let c = r.coeffs[col];
        if c > COEFF_TOL {
            pos.push(r);
        } else if c < -COEFF_TOL {
            neg.push(r);
        } else {
            out.push(drop_col(r.clone(), col));
        }
    }

    for p in &pos {
        for q in &neg {
            let wp = -q.coeffs[col];
            let wq = p.coeffs[col];
            let coeffs = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(a, b)| wp * a + wq * b)
                .collect();
            let row = Row {
                coeffs,
                rhs: p.rhs.combine(wp, &q.rhs, wq),
            };
            out.push(drop_col(row, col));
        }
    }
    out
}

fn drop_col<B>(mut r: Row<B>, col: usize) -> Row<B> {
    r.coeffs.remove(col);
    r
}

/// Syntactic redundancy removal: vacuous rows, duplicates and rows dominated
/// by a row with identical coefficients. `Err(())` on an infeasible zero row.
pub(crate) fn prune<B: Bound>(rows: Vec<Row<B>>) -> Result<Vec<Row<B>>, ()> {
    let mut kept: Vec<Row<B>> = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.normalized();
        if row.is_zero() {
            match row.rhs.zero_row() {
                ZeroRow::Vacuous => continue,
                ZeroRow::Infeasible => return Err(()),
            }
        }
        let mut dominated = false;
        let mut i = 0;
        while i < kept.len() {
            if kept[i].same_coeffs(&row) {
                if kept[i].rhs.no_greater(&row.rhs) {
                    dominated = true;
                    break;
                }
                if row.rhs.no_greater(&kept[i].rhs) {
                    kept.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        if !dominated {
            kept.push(row);
        }
    }
    Ok(kept)
}

/// Eliminate every variable not in `keep`, cheapest pairing first, pruning
/// after each step. Returns the surviving variable names and rows.
pub(crate) fn project_rows<B: Bound>(
    mut vars: Vec<String>,
    mut rows: Vec<Row<B>>,
    keep: &[usize],
    zero: &B,
) -> Result<(Vec<String>, Vec<Row<B>>), ()> {
    let keep_names: Vec<String> = keep.iter().map(|&i| vars[i].clone()).collect();
    rows = prune(rows)?;
    loop {
        let candidate = (0..vars.len())
            .filter(|&i| !keep_names.contains(&vars[i]))
            .min_by_key(|&i| pairing_count(&rows, i));
        let Some(col) = candidate else { break };
        rows = if rows.is_empty() {
            Vec::new()
        } else {
            eliminate(&rows, col, zero.clone())
        };
        vars.remove(col);
        rows = prune(rows)?;
    }
    Ok((vars, rows))
}
