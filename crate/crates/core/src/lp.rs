//! Exact rational linear programming with certificates.
//!
//! Programs are solved by a dense two-phase primal simplex over
//! [`Rational`] entries with Bland's pivot rule, which guarantees
//! termination in exact arithmetic. Optimal outcomes carry the primal point
//! and an exact dual solution with matching objective value; infeasible
//! outcomes carry a Farkas certificate. Both are re-verified against the
//! original program before being returned, so a successful result is
//! self-checking. No tolerance parameter exists anywhere.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, Rational};

/// `minimize c . x` subject to `A_eq x = b_eq`, `A_le x <= b_le`, and
/// optional per-variable lower bounds. Variables without a lower bound are
/// free.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    a_eq: Vec<Vec<Rational>>,
    b_eq: Vec<Rational>,
    a_le: Vec<Vec<Rational>>,
    b_le: Vec<Rational>,
    lower_bounds: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            lower_bounds: vec![None; num_vars],
            ..Default::default()
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_objective(&mut self, c: Vec<Rational>) {
        self.objective = c;
    }

    pub fn add_eq(&mut self, row: Vec<Rational>, rhs: Rational) {
        self.a_eq.push(row);
        self.b_eq.push(rhs);
    }

    pub fn add_le(&mut self, row: Vec<Rational>, rhs: Rational) {
        self.a_le.push(row);
        self.b_le.push(rhs);
    }

    /// `x[var] >= bound`.
    pub fn set_lower_bound(&mut self, var: usize, bound: Rational) {
        self.lower_bounds[var] = Some(bound);
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars;
        if self.objective.len() != n || self.lower_bounds.len() != n {
            return Err(Error::MalformedProgram(format!(
                "objective/bounds length does not match {n} variables"
            )));
        }
        for row in self.a_eq.iter().chain(&self.a_le) {
            if row.len() != n {
                return Err(Error::MalformedProgram(format!(
                    "constraint row of length {} in a program over {n} variables",
                    row.len()
                )));
            }
        }
        Ok(())
    }
}

/// Exact primal-dual solution.
#[derive(Clone, Debug)]
pub struct Solution {
    pub value: Rational,
    pub point: Vec<Rational>,
    /// One multiplier per equality row (free sign).
    pub eq_duals: Vec<Rational>,
    /// One multiplier per inequality row, always `<= 0` for a minimization.
    pub le_duals: Vec<Rational>,
}

/// Exact certificate of infeasibility: multipliers that aggregate the
/// constraints into an impossible inequality (see [`verify_farkas`]).
#[derive(Clone, Debug)]
pub struct Farkas {
    pub eq_multipliers: Vec<Rational>,
    /// Always `>= 0`.
    pub le_multipliers: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal(Solution),
    Infeasible(Farkas),
    Unbounded,
}

impl LpOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Optimal(_))
    }
}

/// Solves the program exactly; see module docs for guarantees.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    Simplex::build(lp).run()
}

/// Feasibility of `A_eq x = b_eq`, with `x >= 0` when `nonneg` is set
/// (free variables otherwise). Zero objective: the outcome is `Optimal`
/// exactly when a feasible point exists.
pub fn feasible(
    a_eq: Vec<Vec<Rational>>,
    b_eq: Vec<Rational>,
    nonneg: bool,
) -> Result<LpOutcome> {
    let n = a_eq.first().map_or(0, Vec::len);
    let mut lp = LinearProgram::new(n);
    for (row, rhs) in a_eq.into_iter().zip(b_eq) {
        lp.add_eq(row, rhs);
    }
    if nonneg {
        for j in 0..n {
            lp.set_lower_bound(j, Rational::zero());
        }
    }
    solve(&lp)
}

/// Checks that `point` satisfies every constraint of `lp` exactly.
pub fn verify_primal(lp: &LinearProgram, point: &[Rational]) -> Result<()> {
    if point.len() != lp.num_vars {
        return Err(Error::Internal("primal point has wrong length".into()));
    }
    for (row, rhs) in lp.a_eq.iter().zip(&lp.b_eq) {
        if dot(row, point) != *rhs {
            return Err(Error::Internal("equality constraint violated".into()));
        }
    }
    for (row, rhs) in lp.a_le.iter().zip(&lp.b_le) {
        if dot(row, point) > *rhs {
            return Err(Error::Internal("inequality constraint violated".into()));
        }
    }
    for (x, l) in point.iter().zip(&lp.lower_bounds) {
        if let Some(l) = l {
            if x < l {
                return Err(Error::Internal("lower bound violated".into()));
            }
        }
    }
    Ok(())
}

/// Checks the exact weak-duality certificate: with `p` on equality rows and
/// `q <= 0` on inequality rows, `z := A_eq^T p + A_le^T q` must match the
/// objective on free variables and stay `<=` it on bounded ones, and the
/// implied lower bound `p.b_eq + q.b_le + sum (c - z)_j l_j` must equal
/// `value`.
pub fn verify_dual(lp: &LinearProgram, value: &Rational, sol: &Solution) -> Result<()> {
    let p = &sol.eq_duals;
    let q = &sol.le_duals;
    if p.len() != lp.a_eq.len() || q.len() != lp.a_le.len() {
        return Err(Error::Internal("dual vector has wrong length".into()));
    }
    if q.iter().any(|v| v.is_positive()) {
        return Err(Error::Internal("inequality dual must be nonpositive".into()));
    }
    let mut bound = dot(p, &lp.b_eq) + dot(q, &lp.b_le);
    for j in 0..lp.num_vars {
        let mut z = Rational::zero();
        for (row, pi) in lp.a_eq.iter().zip(p) {
            z += &row[j] * pi;
        }
        for (row, qk) in lp.a_le.iter().zip(q) {
            z += &row[j] * qk;
        }
        let slack = &lp.objective[j] - &z;
        match &lp.lower_bounds[j] {
            None => {
                if !slack.is_zero() {
                    return Err(Error::Internal(
                        "dual constraint not tight on a free variable".into(),
                    ));
                }
            }
            Some(l) => {
                if slack.is_negative() {
                    return Err(Error::Internal("dual constraint violated".into()));
                }
                bound += &slack * l;
            }
        }
    }
    if bound != *value {
        return Err(Error::Internal("dual bound does not match optimum".into()));
    }
    Ok(())
}

/// Checks the exact Farkas certificate: with `q >= 0`,
/// `z := A_eq^T p + A_le^T q` must vanish on free variables and be `>= 0`
/// on bounded ones, while `p.b_eq + q.b_le - sum z_j l_j < 0`; any feasible
/// point would contradict that strict inequality.
pub fn verify_farkas(lp: &LinearProgram, cert: &Farkas) -> Result<()> {
    let p = &cert.eq_multipliers;
    let q = &cert.le_multipliers;
    if p.len() != lp.a_eq.len() || q.len() != lp.a_le.len() {
        return Err(Error::Internal("farkas vector has wrong length".into()));
    }
    if q.iter().any(|v| v.is_negative()) {
        return Err(Error::Internal("farkas inequality multiplier negative".into()));
    }
    let mut combined = dot(p, &lp.b_eq) + dot(q, &lp.b_le);
    for j in 0..lp.num_vars {
        let mut z = Rational::zero();
        for (row, pi) in lp.a_eq.iter().zip(p) {
            z += &row[j] * pi;
        }
        for (row, qk) in lp.a_le.iter().zip(q) {
            z += &row[j] * qk;
        }
        match &lp.lower_bounds[j] {
            None => {
                if !z.is_zero() {
                    return Err(Error::Internal(
                        "farkas combination touches a free variable".into(),
                    ));
                }
            }
            Some(l) => {
                if z.is_negative() {
                    return Err(Error::Internal(
                        "farkas combination negative on a bounded variable".into(),
                    ));
                }
                combined -= &z * l;
            }
        }
    }
    if !combined.is_negative() {
        return Err(Error::Internal("farkas combination is not contradictory".into()));
    }
    Ok(())
}

/// How each original variable maps into standard-form columns.
#[derive(Clone)]
enum VarCols {
    /// `x = l + y`, one nonnegative column.
    Shifted(usize),
    /// `x = y_pos - y_neg`, two nonnegative columns.
    Split(usize, usize),
}

/// Origin of each standard-form row.
#[derive(Clone, Copy)]
enum RowOrigin {
    Eq(usize),
    Le(usize),
}

struct Simplex<'a> {
    lp: &'a LinearProgram,
    var_cols: Vec<VarCols>,
    /// Structural columns (split vars then slacks); artificials follow.
    num_structural: usize,
    num_cols: usize,
    /// `rows[r]` has `num_cols + 1` entries, the last being the RHS.
    rows: Vec<Vec<Rational>>,
    origin: Vec<RowOrigin>,
    /// Sign each original row was multiplied by to make the RHS nonnegative.
    row_sign: Vec<Rational>,
    /// Column whose original content was the unit vector of this row.
    unit_col: Vec<usize>,
    is_artificial: Vec<bool>,
    basis: Vec<usize>,
    cost: Vec<Rational>,
    cost_rhs: Rational,
}

impl<'a> Simplex<'a> {
    fn build(lp: &'a LinearProgram) -> Self {
        let n = lp.num_vars;
        let mut var_cols = Vec::with_capacity(n);
        let mut next = 0;
        for l in &lp.lower_bounds {
            match l {
                Some(_) => {
                    var_cols.push(VarCols::Shifted(next));
                    next += 1;
                }
                None => {
                    var_cols.push(VarCols::Split(next, next + 1));
                    next += 2;
                }
            }
        }
        let num_le = lp.a_le.len();
        let num_structural = next + num_le;
        let num_rows = lp.a_eq.len() + num_le;
        let num_cols = num_structural + num_rows; // one artificial slot per row
        let mut rows = Vec::with_capacity(num_rows);
        let mut origin = Vec::with_capacity(num_rows);
        let mut row_sign = Vec::with_capacity(num_rows);
        let mut unit_col = Vec::with_capacity(num_rows);
        let mut is_artificial = vec![false; num_cols];
        let mut basis = Vec::with_capacity(num_rows);

        let all_rows = lp
            .a_eq
            .iter()
            .zip(&lp.b_eq)
            .enumerate()
            .map(|(i, (row, rhs))| (RowOrigin::Eq(i), row, rhs, None))
            .chain(
                lp.a_le
                    .iter()
                    .zip(&lp.b_le)
                    .enumerate()
                    .map(|(k, (row, rhs))| (RowOrigin::Le(k), row, rhs, Some(next + k))),
            );

        for (org, row, rhs, slack_col) in all_rows {
            let r = rows.len();
            let mut std_row = vec![Rational::zero(); num_cols + 1];
            let mut std_rhs = rhs.clone();
            for (j, coeff) in row.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                match &var_cols[j] {
                    VarCols::Shifted(c) => {
                        std_row[*c] = coeff.clone();
                        std_rhs -= coeff * lp.lower_bounds[j].as_ref().unwrap();
                    }
                    VarCols::Split(cp, cn) => {
                        std_row[*cp] = coeff.clone();
                        std_row[*cn] = -coeff.clone();
                    }
                }
            }
            if let Some(sc) = slack_col {
                std_row[sc] = Rational::one();
            }
            let sign = if std_rhs.is_negative() {
                -Rational::one()
            } else {
                Rational::one()
            };
            if sign.is_negative() {
                for v in std_row.iter_mut() {
                    if !v.is_zero() {
                        *v = -std::mem::replace(v, Rational::zero());
                    }
                }
                std_rhs = -std_rhs;
            }
            // A slack column left with +1 serves as the initial basic
            // variable; otherwise an artificial is introduced.
            let basic = match slack_col {
                Some(sc) if std_row[sc].is_one() => sc,
                _ => {
                    let art = num_structural + r;
                    std_row[art] = Rational::one();
                    is_artificial[art] = true;
                    art
                }
            };
            let last = std_row.len() - 1;
            std_row[last] = std_rhs;
            unit_col.push(basic);
            basis.push(basic);
            rows.push(std_row);
            origin.push(org);
            row_sign.push(sign);
        }

        Simplex {
            lp,
            var_cols,
            num_structural,
            num_cols,
            rows,
            origin,
            row_sign,
            unit_col,
            is_artificial,
            basis,
            cost: vec![Rational::zero(); num_cols],
            cost_rhs: Rational::zero(),
        }
    }

    /// Recomputes the reduced-cost row for the given column costs.
    fn load_costs(&mut self, col_cost: impl Fn(usize) -> Rational) {
        self.cost = (0..self.num_cols).map(&col_cost).collect();
        self.cost_rhs = Rational::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = col_cost(b);
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.num_cols {
                let t = &cb * &self.rows[r][j];
                self.cost[j] -= t;
            }
            self.cost_rhs -= &cb * &self.rows[r][self.num_cols];
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        if !pivot.is_one() {
            let inv = pivot.recip();
            for v in self.rows[row].iter_mut() {
                if !v.is_zero() {
                    *v = std::mem::replace(v, Rational::zero()) * &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[row]);
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let factor = other[col].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        let factor = self.cost[col].clone();
        if !factor.is_zero() {
            for (v, p) in self.cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            self.cost_rhs -= &factor * &pivot_row[self.num_cols];
        }
        self.rows[row] = pivot_row;
        self.basis[row] = col;
    }

    /// Primal simplex iterations with Bland's rule; `allowed` filters the
    /// entering candidates. Returns false when the objective is unbounded.
    fn iterate(&mut self, allowed: impl Fn(&Self, usize) -> bool) -> bool {
        loop {
            let entering = (0..self.num_cols)
                .find(|&j| self.cost[j].is_negative() && allowed(self, j));
            let Some(col) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[r][self.num_cols] / a;
                let better = match &leaving {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn run(mut self) -> Result<LpOutcome> {
        // Phase one: minimize the sum of artificial variables.
        let art = self.is_artificial.clone();
        self.load_costs(|j| {
            if art[j] {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        if !self.iterate(|_, _| true) {
            return Err(Error::Internal("phase-one objective unbounded".into()));
        }
        let infeasibility = -self.cost_rhs.clone();
        if infeasibility.is_positive() {
            let cert = self.extract_farkas();
            verify_farkas(self.lp, &cert)?;
            return Ok(LpOutcome::Infeasible(cert));
        }
        self.expel_artificials();

        // Phase two: minimize the real objective over standard columns.
        let std_cost = self.standard_objective();
        let artificial = self.is_artificial.clone();
        self.load_costs(|j| std_cost[j].clone());
        let finished = self.iterate(|_, j| !artificial[j]);
        if !finished {
            return Ok(LpOutcome::Unbounded);
        }

        let point = self.extract_point();
        verify_primal(self.lp, &point)?;
        let value = dot(&self.lp.objective, &point);
        let (eq_duals, le_duals) = self.extract_duals();
        let sol = Solution {
            value: value.clone(),
            point,
            eq_duals,
            le_duals,
        };
        verify_dual(self.lp, &value, &sol)?;
        Ok(LpOutcome::Optimal(sol))
    }

    /// Objective expressed over standard-form columns.
    fn standard_objective(&self) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); self.num_cols];
        for (j, cols) in self.var_cols.iter().enumerate() {
            let cj = &self.lp.objective[j];
            if cj.is_zero() {
                continue;
            }
            match cols {
                VarCols::Shifted(cix) => c[*cix] = cj.clone(),
                VarCols::Split(cp, cn) => {
                    c[*cp] = cj.clone();
                    c[*cn] = -cj.clone();
                }
            }
        }
        c
    }

    /// Pivots zero-level artificial variables out of the basis; rows whose
    /// structural part vanished are redundant and dropped.
    fn expel_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if !self.is_artificial[self.basis[r]] {
                r += 1;
                continue;
            }
            let col = (0..self.num_structural).find(|&j| !self.rows[r][j].is_zero());
            match col {
                Some(col) => {
                    self.pivot(r, col);
                    r += 1;
                }
                None => {
                    // Redundant row; its original constraint keeps a zero
                    // multiplier in the extracted duals.
                    self.rows.remove(r);
                    self.basis.remove(r);
                    self.origin.remove(r);
                    self.row_sign.remove(r);
                    self.unit_col.remove(r);
                }
            }
        }
    }

    fn extract_point(&self) -> Vec<Rational> {
        let mut std_values = vec![Rational::zero(); self.num_cols];
        for (r, &b) in self.basis.iter().enumerate() {
            std_values[b] = self.rows[r][self.num_cols].clone();
        }
        self.var_cols
            .iter()
            .enumerate()
            .map(|(j, cols)| match cols {
                VarCols::Shifted(c) => {
                    &std_values[*c] + self.lp.lower_bounds[j].as_ref().unwrap()
                }
                VarCols::Split(cp, cn) => &std_values[*cp] - &std_values[*cn],
            })
            .collect()
    }

    /// Row duals read off the reduced costs of each row's original unit
    /// column: `w_r = c0_j - cost[j]` with `c0_j` the phase cost of that
    /// column (zero in phase two).
    fn row_duals(&self, unit_cost: impl Fn(usize) -> Rational) -> Vec<Rational> {
        self.unit_col
            .iter()
            .map(|&j| unit_cost(j) - &self.cost[j])
            .collect()
    }

    /// Maps standard-row duals back to multipliers on the original rows;
    /// rows dropped as redundant contribute zero.
    fn original_duals(&self, w: &[Rational], negate: bool) -> (Vec<Rational>, Vec<Rational>) {
        let mut eq = vec![Rational::zero(); self.lp.a_eq.len()];
        let mut le = vec![Rational::zero(); self.lp.a_le.len()];
        for (r, wr) in w.iter().enumerate() {
            let mut v = wr * &self.row_sign[r];
            if negate {
                v = -v;
            }
            match self.origin[r] {
                RowOrigin::Eq(i) => eq[i] = v,
                RowOrigin::Le(k) => le[k] = v,
            }
        }
        (eq, le)
    }

    fn extract_farkas(&self) -> Farkas {
        let art = &self.is_artificial;
        let w = self.row_duals(|j| {
            if art[j] {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (eq_multipliers, le_multipliers) = self.original_duals(&w, true);
        Farkas {
            eq_multipliers,
            le_multipliers,
        }
    }

    fn extract_duals(&self) -> (Vec<Rational>, Vec<Rational>) {
        let std_cost = self.standard_objective();
        let w = self.row_duals(|j| std_cost[j].clone());
        self.original_duals(&w, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn minimize_with_lower_bound() {
        // minimize x subject to x >= 1/3
        let mut lp = LinearProgram::new(1);
        lp.set_objective(vec![rat(1)]);
        lp.set_lower_bound(0, ratio(1, 3));
        let out = solve(&lp).unwrap();
        let sol = out.solution().expect("optimal");
        assert_eq!(sol.value, ratio(1, 3));
        assert_eq!(sol.point, vec![ratio(1, 3)]);
    }

    #[test]
    fn infeasible_with_farkas() {
        // x >= 0 and x <= -1
        let mut lp = LinearProgram::new(1);
        lp.set_lower_bound(0, rat(0));
        lp.add_le(vec![rat(1)], rat(-1));
        match solve(&lp).unwrap() {
            LpOutcome::Infeasible(cert) => {
                verify_farkas(&lp, &cert).unwrap();
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_equalities() {
        // lambda = 1 and lambda = 2
        let mut lp = LinearProgram::new(1);
        lp.add_eq(vec![rat(1)], rat(1));
        lp.add_eq(vec![rat(1)], rat(2));
        match solve(&lp).unwrap() {
            LpOutcome::Infeasible(cert) => verify_farkas(&lp, &cert).unwrap(),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_detected() {
        // minimize -x, x >= 0, no other constraint
        let mut lp = LinearProgram::new(1);
        lp.set_objective(vec![rat(-1)]);
        lp.set_lower_bound(0, rat(0));
        assert!(matches!(solve(&lp).unwrap(), LpOutcome::Unbounded));
    }

    #[test]
    fn feasible_point_on_vertex() {
        // lambda_1 + lambda_2 = 1, lambda >= 0, and the decomposition
        // constraint lambda_1 A_1 + lambda_2 A_2 = A_1 entrywise for two
        // distinct 2x2 deterministic matrices forces lambda = (1, 0).
        // A_1 = [[1,0],[1,0]] (both rows to column 0), A_2 = [[0,1],[0,1]].
        let a1 = [rat(1), rat(0), rat(1), rat(0)];
        let a2 = [rat(0), rat(1), rat(0), rat(1)];
        let mut lp = LinearProgram::new(2);
        lp.set_lower_bound(0, rat(0));
        lp.set_lower_bound(1, rat(0));
        lp.add_eq(vec![rat(1), rat(1)], rat(1));
        for e in 0..4 {
            lp.add_eq(vec![a1[e].clone(), a2[e].clone()], a1[e].clone());
        }
        let out = solve(&lp).unwrap();
        let sol = out.solution().expect("feasible");
        assert_eq!(sol.point, vec![rat(1), rat(0)]);
    }

    #[test]
    fn uniform_2x2_decomposition_feasible() {
        // The uniform 2x2 correlation matrix (all entries 1/2) decomposes
        // over the four 2x2 deterministic matrices with equal weights 1/4.
        // Vertices (row0 -> c0, row1 -> c1): entries [r0c0, r0c1, r1c0, r1c1].
        let verts: [[i64; 4]; 4] = [
            [1, 0, 1, 0],
            [1, 0, 0, 1],
            [0, 1, 1, 0],
            [0, 1, 0, 1],
        ];
        let mut lp = LinearProgram::new(4);
        for j in 0..4 {
            lp.set_lower_bound(j, rat(0));
        }
        lp.add_eq(vec![rat(1); 4], rat(1));
        for e in 0..4 {
            lp.add_eq(verts.iter().map(|v| rat(v[e])).collect(), ratio(1, 2));
        }
        let out = solve(&lp).unwrap();
        let sol = out.solution().expect("feasible");
        // The solution need not be the hand-checked uniform mixture (the
        // decomposition is not unique), but it must reproduce the matrix.
        for e in 0..4 {
            let got = dot(&verts.iter().map(|v| rat(v[e])).collect::<Vec<_>>(), &sol.point);
            assert_eq!(got, ratio(1, 2));
        }
        // And the uniform mixture itself is feasible.
        verify_primal(&lp, &vec![ratio(1, 4); 4]).unwrap();
    }

    #[test]
    fn dual_matches_optimum() {
        // minimize -x - y subject to x + 2y <= 4, 3x + y <= 6, x,y >= 0.
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![rat(-1), rat(-1)]);
        lp.set_lower_bound(0, rat(0));
        lp.set_lower_bound(1, rat(0));
        lp.add_le(vec![rat(1), rat(2)], rat(4));
        lp.add_le(vec![rat(3), rat(1)], rat(6));
        let out = solve(&lp).unwrap();
        let sol = out.solution().expect("optimal");
        assert_eq!(sol.value, ratio(-14, 5));
        assert_eq!(sol.point, vec![ratio(8, 5), ratio(6, 5)]);
        verify_dual(&lp, &sol.value, sol).unwrap();
    }

    #[test]
    fn free_variables_and_equalities() {
        // minimize y subject to y = 3x - 1 and x <= 2, with x, y free:
        // unbounded below. Then add x >= 0 bound via le row and re-check.
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![rat(0), rat(1)]);
        lp.add_eq(vec![rat(3), rat(-1)], rat(1)); // 3x - y = 1
        lp.add_le(vec![rat(1), rat(0)], rat(2)); // x <= 2
        assert!(matches!(solve(&lp).unwrap(), LpOutcome::Unbounded));

        lp.add_le(vec![rat(-1), rat(0)], rat(0)); // -x <= 0
        let out = solve(&lp).unwrap();
        let sol = out.solution().expect("optimal");
        assert_eq!(sol.value, rat(-1));
        assert_eq!(sol.point, vec![rat(0), rat(-1)]);
    }

    #[test]
    fn redundant_rows_are_harmless() {
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![rat(1), rat(1)]);
        lp.set_lower_bound(0, rat(0));
        lp.set_lower_bound(1, rat(0));
        lp.add_eq(vec![rat(1), rat(1)], rat(2));
        lp.add_eq(vec![rat(2), rat(2)], rat(4));
        lp.add_eq(vec![rat(3), rat(3)], rat(6));
        let out = solve(&lp).unwrap();
        assert_eq!(out.solution().unwrap().value, rat(2));
    }

    #[test]
    fn deterministic_across_runs() {
        let mut lp = LinearProgram::new(3);
        lp.set_objective(vec![rat(2), rat(-1), ratio(1, 3)]);
        for j in 0..3 {
            lp.set_lower_bound(j, rat(0));
        }
        lp.add_le(vec![rat(1), rat(1), rat(1)], rat(10));
        lp.add_le(vec![rat(-1), rat(2), rat(0)], rat(3));
        lp.add_eq(vec![rat(1), rat(0), rat(2)], rat(4));
        let a = solve(&lp).unwrap();
        let b = solve(&lp).unwrap();
        let (sa, sb) = (a.solution().unwrap(), b.solution().unwrap());
        assert_eq!(sa.value, sb.value);
        assert_eq!(sa.point, sb.point);
        assert_eq!(sa.eq_duals, sb.eq_duals);
        assert_eq!(sa.le_duals, sb.le_duals);
    }

    #[test]
    fn malformed_dimensions_rejected() {
        let mut lp = LinearProgram::new(2);
        lp.add_eq(vec![rat(1)], rat(0));
        assert!(matches!(solve(&lp), Err(Error::MalformedProgram(_))));
    }

    #[test]
    fn degenerate_cycling_guard() {
        // Classic Beale-style degenerate program; Bland's rule must
        // terminate. minimize -3/4 x1 + 150 x2 - 1/50 x3 + 6 x4
        let mut lp = LinearProgram::new(4);
        lp.set_objective(vec![ratio(-3, 4), rat(150), ratio(-1, 50), rat(6)]);
        for j in 0..4 {
            lp.set_lower_bound(j, rat(0));
        }
        lp.add_le(
            vec![ratio(1, 4), rat(-60), ratio(-1, 25), rat(9)],
            rat(0),
        );
        lp.add_le(
            vec![ratio(1, 2), rat(-90), ratio(-1, 50), rat(3)],
            rat(0),
        );
        lp.add_le(vec![rat(0), rat(0), rat(1), rat(0)], rat(1));
        let out = solve(&lp).unwrap();
        assert_eq!(out.solution().unwrap().value, ratio(-1, 20));
    }
}
