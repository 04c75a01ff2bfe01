//! Exact rational linear programming.
//!
//! A [`LinearProgram`] has free variables, equality rows `a·x = b` and
//! inequality rows `a·x ≥ b`. It is solved by a two-phase dense tableau
//! simplex under Bland's rule. Infeasible programs come back with a Farkas
//! certificate `(y_eq, y_ge)` satisfying
//!
//! * `y_ge ≥ 0`,
//! * `y_eqᵀ·A_eq + y_geᵀ·A_ge = 0`,
//! * `y_eqᵀ·b_eq + y_geᵀ·b_ge > 0`,
//!
//! which combine the rows into the contradiction `0 ≥ (positive)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// One row `coeffs · x (= | ≥) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Constraint { coeffs, rhs }
    }

    pub fn from_ints(coeffs: &[BigInt], rhs: impl Into<BigInt>) -> Self {
        Constraint {
            coeffs: coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
            rhs: BigRational::from_integer(rhs.into()),
        }
    }

    pub fn from_i64(coeffs: &[i64], rhs: i64) -> Self {
        let c: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
        Constraint::from_ints(&c, rhs)
    }

    fn lhs(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearProgram {
    pub variables: usize,
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
    /// Minimized when present.
    pub objective: Option<Vec<BigRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub equality_multipliers: Vec<BigRational>,
    pub inequality_multipliers: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible(FarkasCertificate),
}

impl Feasibility {
    pub fn point(&self) -> Option<&[BigRational]> {
        match self {
            Feasibility::Feasible(p) => Some(p),
            Feasibility::Infeasible(_) => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpSolution {
    Optimal(Vec<BigRational>),
    /// Objective unbounded below; carries a feasible point.
    Unbounded(Vec<BigRational>),
    Infeasible(FarkasCertificate),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LpError {
    #[error("constraint {index} has {found} coefficients, expected {expected}")]
    RowLength {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("objective has {found} coefficients, expected {expected}")]
    ObjectiveLength { found: usize, expected: usize },
}

impl LinearProgram {
    pub fn new(variables: usize) -> Self {
        LinearProgram {
            variables,
            ..Default::default()
        }
    }

    pub fn equal(mut self, c: Constraint) -> Self {
        self.equalities.push(c);
        self
    }

    pub fn at_least(mut self, c: Constraint) -> Self {
        self.inequalities.push(c);
        self
    }

    pub fn minimize(mut self, objective: Vec<BigRational>) -> Self {
        self.objective = Some(objective);
        self
    }

    pub fn validate(&self) -> Result<(), LpError> {
        for (index, c) in self.equalities.iter().chain(&self.inequalities).enumerate() {
            if c.coeffs.len() != self.variables {
                return Err(LpError::RowLength {
                    index,
                    found: c.coeffs.len(),
                    expected: self.variables,
                });
            }
        }
        if let Some(obj) = &self.objective {
            if obj.len() != self.variables {
                return Err(LpError::ObjectiveLength {
                    found: obj.len(),
                    expected: self.variables,
                });
            }
        }
        Ok(())
    }

    /// Exact substitution check of every row.
    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        x.len() == self.variables
            && self.equalities.iter().all(|c| c.lhs(x) == c.rhs)
            && self.inequalities.iter().all(|c| c.lhs(x) >= c.rhs)
    }
}

impl FarkasCertificate {
    /// Exact check that the multipliers prove `p` infeasible.
    pub fn verifies(&self, p: &LinearProgram) -> bool {
        if self.equality_multipliers.len() != p.equalities.len()
            || self.inequality_multipliers.len() != p.inequalities.len()
            || self.inequality_multipliers.iter().any(Signed::is_negative)
        {
            return false;
        }
        let rows = p
            .equalities
            .iter()
            .zip(&self.equality_multipliers)
            .chain(p.inequalities.iter().zip(&self.inequality_multipliers));
        let mut combo = vec![BigRational::zero(); p.variables];
        let mut rhs = BigRational::zero();
        for (c, y) in rows {
            for (acc, a) in combo.iter_mut().zip(&c.coeffs) {
                *acc += a * y;
            }
            rhs += &c.rhs * y;
        }
        combo.iter().all(Zero::is_zero) && rhs.is_positive()
    }
}

/// Decides feasibility exactly. With an objective the returned point is
/// optimal when the program is bounded and merely feasible otherwise.
pub fn lp_feasible(p: &LinearProgram) -> Result<Feasibility, LpError> {
    Ok(match lp_solve(p)? {
        LpSolution::Optimal(x) | LpSolution::Unbounded(x) => Feasibility::Feasible(x),
        LpSolution::Infeasible(c) => Feasibility::Infeasible(c),
    })
}

/// Two-phase simplex. Every returned point or certificate is re-verified.
pub fn lp_solve(p: &LinearProgram) -> Result<LpSolution, LpError> {
    p.validate()?;
    let sol = Tableau::build(p).run(p);
    match &sol {
        LpSolution::Optimal(x) | LpSolution::Unbounded(x) => {
            assert!(p.is_satisfied_by(x), "simplex returned a point violating the program");
        }
        LpSolution::Infeasible(c) => {
            assert!(c.verifies(p), "simplex returned an invalid Farkas certificate");
        }
    }
    Ok(sol)
}

/// Standard-form tableau. Columns: `x⁺` (n), `x⁻` (n), one surplus per
/// inequality row, one artificial per row; last entry of each row is the rhs.
struct Tableau {
    n: usize,
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    /// +1 / −1 multiplier applied to each original row to make rhs ≥ 0.
    signs: Vec<BigRational>,
    structural: usize,
    width: usize,
}

impl Tableau {
    fn build(p: &LinearProgram) -> Self {
        let n = p.variables;
        let e = p.equalities.len();
        let q = p.inequalities.len();
        let m = e + q;
        let structural = 2 * n + q;
        let width = structural + m;
        let mut rows = Vec::with_capacity(m);
        let mut signs = Vec::with_capacity(m);
        for (i, c) in p.equalities.iter().chain(&p.inequalities).enumerate() {
            let mut row = vec![BigRational::zero(); width + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = a.clone();
                row[n + j] = -a;
            }
            if i >= e {
                row[2 * n + (i - e)] = -BigRational::one();
            }
            row[width] = c.rhs.clone();
            let sign = if c.rhs.is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
                -BigRational::one()
            } else {
                BigRational::one()
            };
            row[structural + i] = BigRational::one();
            rows.push(row);
            signs.push(sign);
        }
        Tableau {
            n,
            rows,
            basis: (structural..structural + m).collect(),
            signs,
            structural,
            width,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *x -= pv * &f;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs `c_j − c_B·B⁻¹·a_j` for every column.
    fn reduced_costs(&self, cost: &[BigRational]) -> Vec<BigRational> {
        let mut d = cost.to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (dj, a) in d.iter_mut().zip(row.iter()) {
                *dj -= cb * a;
            }
        }
        d
    }

    /// Bland's rule iterations. Returns `false` on an unbounded direction.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> bool {
        loop {
            let d = self.reduced_costs(cost);
            let Some(enter) = (0..allowed).find(|&j| d[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }

    fn point(&self) -> Vec<BigRational> {
        let mut z = vec![BigRational::zero(); self.width];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            z[b] = row[self.width].clone();
        }
        (0..self.n).map(|j| &z[j] - &z[self.n + j]).collect()
    }

    fn run(mut self, p: &LinearProgram) -> LpSolution {
        let m = self.rows.len();
        let mut phase1 = vec![BigRational::zero(); self.width + 1];
        for c in phase1.iter_mut().take(self.width).skip(self.structural) {
            *c = BigRational::one();
        }
        self.optimize(&phase1[..self.width], self.width);
        let infeasibility: BigRational = self
            .rows
            .iter()
            .zip(&self.basis)
            .filter(|(_, &b)| b >= self.structural)
            .map(|(row, _)| row[self.width].clone())
            .sum();
        if infeasibility.is_positive() {
            let d = self.reduced_costs(&phase1[..self.width]);
            let y: Vec<BigRational> = (0..m)
                .map(|i| (BigRational::one() - &d[self.structural + i]) * &self.signs[i])
                .collect();
            let e = p.equalities.len();
            return LpSolution::Infeasible(FarkasCertificate {
                equality_multipliers: y[..e].to_vec(),
                inequality_multipliers: y[e..].to_vec(),
            });
        }
        // Drive zero-level artificials out where a structural pivot exists;
        // rows without one are redundant and stay inert.
        for r in 0..m {
            if self.basis[r] >= self.structural {
                if let Some(c) = (0..self.structural).find(|&c| !self.rows[r][c].is_zero()) {
                    self.pivot(r, c);
                }
            }
        }
        let Some(obj) = &p.objective else {
            return LpSolution::Optimal(self.point());
        };
        let mut cost = vec![BigRational::zero(); self.width];
        for (j, c) in obj.iter().enumerate() {
            cost[j] = c.clone();
            cost[self.n + j] = -c;
        }
        if self.optimize(&cost, self.structural) {
            LpSolution::Optimal(self.point())
        } else {
            LpSolution::Unbounded(self.point())
        }
    }
}
