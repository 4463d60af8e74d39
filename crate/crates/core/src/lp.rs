//! Dense two-phase simplex with Bland's rule, generic over [`Scalar`].

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::{lorenz_curve, Spectrum, SPECTRAL_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarBound {
    NonNegative,
    Free,
}

#[derive(Clone, Debug)]
pub struct Constraint<F> {
    pub a: Vec<F>,
    pub rel: Relation,
    pub b: F,
}

#[derive(Clone, Debug)]
pub struct LinearProgram<F> {
    pub sense: Sense,
    pub objective: Vec<F>,
    pub constraints: Vec<Constraint<F>>,
    pub bounds: Vec<VarBound>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<F> {
    Optimal(LpSolution<F>),
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<F> {
    pub value: F,
    pub point: Vec<F>,
    /// Indices of constraints satisfied with equality.
    pub tight: Vec<usize>,
    /// One multiplier per constraint; they certify the optimum by
    /// `value = sum_i duals_i b_i`.
    pub duals: Vec<F>,
}

pub const PIVOT_LIMIT: usize = 1_000_000;

/// Entering-column rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Lowest-index improving column; never cycles.
    #[default]
    Bland,
    /// Most negative reduced cost, switching to Bland's rule after a run of
    /// degenerate pivots so termination is kept.
    Dantzig,
}

/// Consecutive degenerate pivots tolerated before Dantzig pricing gives way to Bland's rule.
const DEGENERATE_RUN: usize = 50;

/// Tolerances (used in floating mode) and the pivot rule.
#[derive(Clone, Copy, Debug)]
pub struct LpTolerances {
    /// Pivot elements and reduced costs below this count as zero.
    pub pivot: f64,
    /// Phase-one objective below this counts as feasible.
    pub feasibility: f64,
    /// Post-solve constraint residual allowed before a stall is reported.
    pub residual: f64,
    pub rule: PivotRule,
}

impl Default for LpTolerances {
    fn default() -> Self {
        LpTolerances { pivot: 1e-9, feasibility: 1e-8, residual: 1e-8, rule: PivotRule::Bland }
    }
}

impl<F: Scalar> LinearProgram<F> {
    pub fn new(sense: Sense, objective: Vec<F>) -> Self {
        let n = objective.len();
        LinearProgram { sense, objective, constraints: Vec::new(), bounds: vec![VarBound::NonNegative; n] }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, a: Vec<F>, rel: Relation, b: F) -> &mut Self {
        self.constraints.push(Constraint { a, rel, b });
        self
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.bounds[var] = VarBound::Free;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.bounds.len() != self.n_vars() {
            return Err(Error::Dimension("one bound per variable is required".into()));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.a.len() != self.n_vars() {
                return Err(Error::Dimension(format!(
                    "constraint {i} has {} coefficients for {} variables",
                    c.a.len(),
                    self.n_vars()
                )));
            }
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<LpOutcome<F>> {
        self.solve_with(LpTolerances::default())
    }

    pub fn solve_with(&self, tol: LpTolerances) -> Result<LpOutcome<F>> {
        self.validate()?;
        Tableau::build(self, tol).run(self)
    }
}

/// Column kinds in the working tableau.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Col {
    Var { index: usize, negated: bool },
    Slack,
    Artificial,
}

struct Tableau<F> {
    rows: Vec<Vec<F>>,
    /// Reduced-cost row `z_j - c_j` for maximization, RHS last.
    obj: Vec<F>,
    basis: Vec<usize>,
    cols: Vec<Col>,
    /// Identity column of each row in the initial basis.
    unit_col: Vec<usize>,
    row_negated: Vec<bool>,
    tol: LpTolerances,
    pivots: usize,
}

impl<F: Scalar> Tableau<F> {
    fn build(lp: &LinearProgram<F>, tol: LpTolerances) -> Self {
        let mut cols = Vec::new();
        for (i, b) in lp.bounds.iter().enumerate() {
            cols.push(Col::Var { index: i, negated: false });
            if *b == VarBound::Free {
                cols.push(Col::Var { index: i, negated: true });
            }
        }
        let n_struct = cols.len();
        let m = lp.constraints.len();
        let mut row_negated = vec![false; m];
        let mut rels = Vec::with_capacity(m);
        for (i, c) in lp.constraints.iter().enumerate() {
            let neg = c.b.is_neg(0.0);
            row_negated[i] = neg;
            rels.push(match (c.rel, neg) {
                (Relation::Eq, _) => Relation::Eq,
                (Relation::Le, false) | (Relation::Ge, true) => Relation::Le,
                _ => Relation::Ge,
            });
        }
        // slack/surplus columns then artificials
        let mut slack_of = vec![None; m];
        for (i, r) in rels.iter().enumerate() {
            if *r != Relation::Eq {
                slack_of[i] = Some(cols.len());
                cols.push(Col::Slack);
            }
        }
        let mut art_of = vec![None; m];
        for (i, r) in rels.iter().enumerate() {
            if *r != Relation::Le {
                art_of[i] = Some(cols.len());
                cols.push(Col::Artificial);
            }
        }
        let width = cols.len() + 1;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut unit_col = Vec::with_capacity(m);
        for (i, c) in lp.constraints.iter().enumerate() {
            let sgn = |x: &F| if row_negated[i] { x.neg() } else { x.clone() };
            let mut row = vec![F::zero(); width];
            for (j, col) in cols[..n_struct].iter().enumerate() {
                if let Col::Var { index, negated } = col {
                    let v = sgn(&c.a[*index]);
                    row[j] = if *negated { v.neg() } else { v };
                }
            }
            if let Some(s) = slack_of[i] {
                row[s] = if rels[i] == Relation::Le { F::one() } else { F::one().neg() };
            }
            if let Some(a) = art_of[i] {
                row[a] = F::one();
            }
            row[width - 1] = sgn(&c.b);
            let unit = art_of[i].unwrap_or_else(|| slack_of[i].unwrap());
            basis.push(unit);
            unit_col.push(unit);
            rows.push(row);
        }
        Tableau { rows, obj: vec![F::zero(); width], basis, cols, unit_col, row_negated, tol, pivots: 0 }
    }

    fn width(&self) -> usize {
        self.cols.len() + 1
    }

    /// Sets the objective row for maximizing `cost . x_tableau`.
    fn set_objective(&mut self, cost: &[F]) {
        let w = self.width();
        let mut obj = vec![F::zero(); w];
        for (j, c) in cost.iter().enumerate() {
            obj[j] = c.neg();
        }
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero_tol(0.0) {
                continue;
            }
            for j in 0..w {
                if !self.rows[i][j].is_zero_tol(0.0) {
                    obj[j] = obj[j].add(&cb.mul(&self.rows[i][j]));
                }
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) -> Result<()> {
        self.pivots += 1;
        if self.pivots > PIVOT_LIMIT {
            return Err(Error::Solver(format!("simplex exceeded {PIVOT_LIMIT} pivots")));
        }
        let w = self.width();
        let p = self.rows[r][c].clone();
        let mut nz = Vec::new();
        for j in 0..w {
            if !self.rows[r][j].is_zero_tol(0.0) {
                self.rows[r][j] = self.rows[r][j].div(&p);
                nz.push(j);
            }
        }
        self.rows[r][c] = F::one();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<F>| {
            let f = row[c].clone();
            if f.is_zero_tol(0.0) {
                return;
            }
            for &j in &nz {
                row[j] = row[j].sub(&f.mul(&pivot_row[j]));
            }
            row[c] = F::zero();
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
        Ok(())
    }

    /// Runs Bland's rule on the current objective. Returns false on unboundedness.
    fn optimize(&mut self, allow_artificial: bool) -> Result<bool> {
        let rhs = self.width() - 1;
        let tol = self.tol.pivot;
        let mut degenerate = 0usize;
        loop {
            let eligible =
                |j: usize| (allow_artificial || self.cols[j] != Col::Artificial) && self.obj[j].is_neg(tol);
            let entering = if self.tol.rule == PivotRule::Dantzig && degenerate < DEGENERATE_RUN {
                (0..rhs)
                    .filter(|&j| eligible(j))
                    .min_by(|&a, &b| self.obj[a].to_f64().total_cmp(&self.obj[b].to_f64()))
            } else {
                (0..rhs).find(|&j| eligible(j))
            };
            let Some(c) = entering else { return Ok(true) };
            let mut best: Option<(usize, F)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_pos(tol) {
                    continue;
                }
                let ratio = row[rhs].div(&row[c]);
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let diff = ratio.sub(&br);
                        if diff.is_neg(if F::EXACT { 0.0 } else { tol })
                            || (diff.is_zero_tol(if F::EXACT { 0.0 } else { tol })
                                && self.basis[i] < self.basis[bi])
                        {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            let Some((r, ratio)) = best else { return Ok(false) };
            if ratio.is_zero_tol(if F::EXACT { 0.0 } else { tol }) {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, c)?;
        }
    }

    fn run(mut self, lp: &LinearProgram<F>) -> Result<LpOutcome<F>> {
        let ncols = self.cols.len();
        let rhs = ncols;
        // phase one: maximize -sum(artificials)
        if self.cols.contains(&Col::Artificial) {
            let cost: Vec<F> = self
                .cols
                .iter()
                .map(|c| if *c == Col::Artificial { F::one().neg() } else { F::zero() })
                .collect();
            self.set_objective(&cost);
            self.optimize(true)?;
            let infeas = self.obj[rhs].neg();
            if infeas.is_pos(if F::EXACT { 0.0 } else { self.tol.feasibility }) {
                return Ok(LpOutcome::Infeasible);
            }
            // drive zero-level artificials out of the basis where possible
            for i in 0..self.rows.len() {
                if self.cols[self.basis[i]] != Col::Artificial {
                    continue;
                }
                let col = (0..ncols).find(|&j| {
                    self.cols[j] != Col::Artificial && !self.rows[i][j].is_zero_tol(self.tol.pivot)
                });
                if let Some(j) = col {
                    self.pivot(i, j)?;
                }
            }
        }
        // phase two
        let sign = if lp.sense == Sense::Maximize { F::one() } else { F::one().neg() };
        let cost: Vec<F> = self
            .cols
            .iter()
            .map(|c| match c {
                Col::Var { index, negated } => {
                    let v = lp.objective[*index].mul(&sign);
                    if *negated { v.neg() } else { v }
                }
                _ => F::zero(),
            })
            .collect();
        self.set_objective(&cost);
        if !self.optimize(false)? {
            return Ok(LpOutcome::Unbounded);
        }

        let mut point = vec![F::zero(); lp.n_vars()];
        for (i, &b) in self.basis.iter().enumerate() {
            if let Col::Var { index, negated } = self.cols[b] {
                let v = self.rows[i][rhs].clone();
                point[index] = if negated { point[index].sub(&v) } else { point[index].add(&v) };
            }
        }
        let mut tight = Vec::new();
        for (i, c) in lp.constraints.iter().enumerate() {
            let lhs = crate::scalar::dot(&c.a, &point);
            let diff = lhs.sub(&c.b);
            let scale = 1.0 + c.b.abs_f64();
            let tol = if F::EXACT { 0.0 } else { self.tol.residual * scale };
            let violated = match c.rel {
                Relation::Le => diff.is_pos(tol),
                Relation::Ge => diff.is_neg(tol),
                Relation::Eq => !diff.is_zero_tol(tol),
            };
            if violated {
                return Err(if F::EXACT {
                    Error::Internal(format!("exact simplex returned a point violating constraint {i}"))
                } else {
                    Error::Tolerance(format!(
                        "simplex stalled: constraint {i} violated by {:.3e}",
                        diff.abs_f64()
                    ))
                });
            }
            if diff.is_zero_tol(if F::EXACT { 0.0 } else { self.tol.residual * scale }) {
                tight.push(i);
            }
        }
        let duals = (0..lp.constraints.len())
            .map(|i| {
                let y = self.obj[self.unit_col[i]].clone();
                let y = if self.row_negated[i] { y.neg() } else { y };
                y.mul(&sign)
            })
            .collect();
        let value = crate::scalar::dot(&lp.objective, &point);
        Ok(LpOutcome::Optimal(LpSolution { value, point, tight, duals }))
    }
}

/// Whether some mixture of the generators' descending-sorted spectra
/// majorizes `lam`: `p >= 0`, `sum p = 1`, and for every `k` the mixture's
/// `k`-th partial sum dominates that of `lam`.
pub fn mixture_majorization_feasible(lam: &Spectrum, generators: &[Spectrum]) -> Result<bool> {
    if generators.is_empty() {
        return Err(Error::InvalidArgument("no generator spectra supplied".into()));
    }
    for g in generators {
        if g.len() != lam.len() {
            return Err(Error::Dimension(format!(
                "generator of length {} against spectrum of length {}",
                g.len(),
                lam.len()
            )));
        }
        if (g.trace() - lam.trace()).abs() > SPECTRAL_TOL {
            return Err(Error::ContractViolation(format!(
                "generator sums to {} but spectrum sums to {}",
                g.trace(),
                lam.trace()
            )));
        }
    }
    let curves: Vec<Vec<f64>> = generators.iter().map(lorenz_curve).collect();
    let target = lorenz_curve(lam);
    let mut lp = LinearProgram::new(Sense::Minimize, vec![0.0; generators.len()]);
    lp.add(vec![1.0; generators.len()], Relation::Eq, 1.0);
    for k in 0..lam.len().saturating_sub(1) {
        lp.add(curves.iter().map(|c| c[k]).collect(), Relation::Ge, target[k] - SPECTRAL_TOL);
    }
    Ok(matches!(lp.solve()?, LpOutcome::Optimal(_)))
}

/// Whether `point` is a convex combination of `vertices`.
pub fn convex_hull_contains<F: Scalar>(point: &[F], vertices: &[Vec<F>]) -> Result<bool> {
    if vertices.is_empty() {
        return Ok(false);
    }
    let k = vertices.len();
    let mut lp = LinearProgram::new(Sense::Minimize, vec![F::zero(); k]);
    lp.add(vec![F::one(); k], Relation::Eq, F::one());
    for (c, p) in point.iter().enumerate() {
        lp.add(vertices.iter().map(|v| v[c].clone()).collect(), Relation::Eq, p.clone());
    }
    Ok(matches!(lp.solve()?, LpOutcome::Optimal(_)))
}
