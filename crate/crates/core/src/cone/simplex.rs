//! Exact two-phase primal simplex over rationals, with Bland's rule
//! throughout, so every run terminates. Infeasible systems yield a
//! Farkas certificate read off the artificial columns.

use super::matrix::dot_rat;
use super::Rat;
use num::{One, Signed, Zero};

pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Unbounded,
    Infeasible { farkas: Vec<Rat> },
}

/// Standard-form tableau for min c.x, A x = b, x >= 0. Columns are
/// the n structural variables, then m artificials, then the rhs.
struct Tableau {
    n: usize,
    m: usize,
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    cost: Vec<Rat>,
    flipped: Vec<bool>,
}

impl Tableau {
    fn new(a: &[Vec<Rat>], b: &[Rat]) -> Self {
        let m = a.len();
        let n = if m > 0 { a[0].len() } else { 0 };
        let width = n + m + 1;
        let mut rows = Vec::with_capacity(m);
        let mut flipped = vec![false; m];
        for i in 0..m {
            let mut row = vec![Rat::zero(); width];
            let flip = b[i].is_negative();
            flipped[i] = flip;
            for j in 0..n {
                row[j] = if flip { -&a[i][j] } else { a[i][j].clone() };
            }
            row[n + i] = Rat::one();
            row[width - 1] = if flip { -&b[i] } else { b[i].clone() };
            rows.push(row);
        }
        Tableau {
            n,
            m,
            rows,
            basis: (n..n + m).collect(),
            cost: vec![Rat::zero(); width],
            flipped,
        }
    }

    fn rhs_col(&self) -> usize {
        self.n + self.m
    }

    /// Loads objective coefficients (length n + m) and eliminates the
    /// basic columns so the cost row holds reduced costs.
    fn load_cost(&mut self, c: &[Rat]) {
        let width = self.rhs_col() + 1;
        self.cost = vec![Rat::zero(); width];
        self.cost[..self.n + self.m].clone_from_slice(c);
        for r in 0..self.m {
            let f = self.cost[self.basis[r]].clone();
            if !f.is_zero() {
                for j in 0..width {
                    let v = &self.cost[j] - &f * &self.rows[r][j];
                    self.cost[j] = v;
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let width = self.rhs_col() + 1;
        let inv = self.rows[r][j].clone();
        for k in 0..width {
            let v = &self.rows[r][k] / &inv;
            self.rows[r][k] = v;
        }
        for i in 0..self.m {
            if i != r && !self.rows[i][j].is_zero() {
                let f = self.rows[i][j].clone();
                for k in 0..width {
                    let v = &self.rows[i][k] - &f * &self.rows[r][k];
                    self.rows[i][k] = v;
                }
            }
        }
        let f = self.cost[j].clone();
        if !f.is_zero() {
            for k in 0..width {
                let v = &self.cost[k] - &f * &self.rows[r][k];
                self.cost[k] = v;
            }
        }
        self.basis[r] = j;
    }

    /// Bland's rule: entering column is the lowest-index eligible one
    /// with negative reduced cost; the leaving row breaks ratio ties
    /// by lowest basic index. Returns false on an unbounded direction.
    fn run(&mut self, cols: usize) -> bool {
        let rhs = self.rhs_col();
        loop {
            let Some(j) = (0..cols).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(Rat, usize, usize)> = None;
            for r in 0..self.m {
                if self.rows[r][j].is_positive() {
                    let ratio = &self.rows[r][rhs] / &self.rows[r][j];
                    let better = match &best {
                        None => true,
                        Some((bratio, bbasis, _)) => {
                            ratio < *bratio || (ratio == *bratio && self.basis[r] < *bbasis)
                        }
                    };
                    if better {
                        best = Some((ratio, self.basis[r], r));
                    }
                }
            }
            let Some((_, _, r)) = best else {
                return false;
            };
            self.pivot(r, j);
        }
    }

    fn objective(&self) -> Rat {
        -self.cost[self.rhs_col()].clone()
    }

    fn solution(&self) -> Vec<Rat> {
        let rhs = self.rhs_col();
        let mut x = vec![Rat::zero(); self.n];
        for r in 0..self.m {
            if self.basis[r] < self.n {
                x[self.basis[r]] = self.rows[r][rhs].clone();
            }
        }
        x
    }

    /// Dual vector for the original (unflipped) rows, read from the
    /// reduced costs of the artificial columns: y_i = c_art_i - cost_i.
    fn dual(&self, art_cost: &Rat) -> Vec<Rat> {
        (0..self.m)
            .map(|i| {
                let y = art_cost - &self.cost[self.n + i];
                if self.flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }
}

/// Minimizes c.x subject to A x = b, x >= 0, exactly.
pub fn solve(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    let mut t = Tableau::new(a, b);

    let mut phase1 = vec![Rat::zero(); n + m];
    for pj in phase1.iter_mut().skip(n) {
        *pj = Rat::one();
    }
    t.load_cost(&phase1);
    let ok = t.run(n);
    debug_assert!(ok, "phase 1 objective is bounded below by zero");
    if t.objective().is_positive() {
        return LpOutcome::Infeasible {
            farkas: t.dual(&Rat::one()),
        };
    }

    // Drive leftover artificials out of the basis where possible; a row
    // with no structural entry is a redundant constraint and stays inert.
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, j);
            }
        }
    }

    let mut phase2 = vec![Rat::zero(); n + m];
    phase2[..n].clone_from_slice(c);
    t.load_cost(&phase2);
    if !t.run(n) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal {
        x: t.solution(),
        value: t.objective(),
    }
}

/// Minimizes c.x subject to A x = b where the first `nonneg` variables
/// are sign-constrained and the rest are free (encoded as differences).
pub fn solve_mixed(a: &[Vec<Rat>], b: &[Rat], c: &[Rat], nonneg: usize) -> LpOutcome {
    let nvars = c.len();
    let free = nvars - nonneg;
    let ncols = nonneg + 2 * free;
    let expand = |row: &[Rat]| -> Vec<Rat> {
        let mut out = Vec::with_capacity(ncols);
        out.extend_from_slice(&row[..nonneg]);
        for rj in &row[nonneg..] {
            out.push(rj.clone());
            out.push(-rj);
        }
        out
    };
    let ea: Vec<Vec<Rat>> = a.iter().map(|r| expand(r)).collect();
    let ec = expand(c);
    match solve(&ea, b, &ec) {
        LpOutcome::Optimal { x, value } => {
            let mut out = Vec::with_capacity(nvars);
            out.extend_from_slice(&x[..nonneg]);
            for j in 0..free {
                out.push(&x[nonneg + 2 * j] - &x[nonneg + 2 * j + 1]);
            }
            LpOutcome::Optimal { x: out, value }
        }
        other => other,
    }
}

/// Finds x >= 0 with A x = b, or a Farkas vector y with y.A <= 0
/// componentwise and y.b > 0. Certificates are verified before return.
pub fn feasible(a: &[Vec<Rat>], b: &[Rat]) -> Result<Vec<Rat>, Vec<Rat>> {
    let n = if a.is_empty() { 0 } else { a[0].len() };
    match solve(a, b, &vec![Rat::zero(); n]) {
        LpOutcome::Optimal { x, .. } => {
            debug_assert!(verify_solution(a, b, &x));
            Ok(x)
        }
        LpOutcome::Infeasible { farkas } => {
            assert!(verify_farkas(a, b, &farkas), "invalid Farkas certificate");
            Err(farkas)
        }
        LpOutcome::Unbounded => unreachable!("feasibility phase cannot be unbounded"),
    }
}

pub fn verify_solution(a: &[Vec<Rat>], b: &[Rat], x: &[Rat]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && a.iter()
            .zip(b)
            .all(|(row, bi)| dot_rat(row, x) == *bi)
}

pub fn verify_farkas(a: &[Vec<Rat>], b: &[Rat], y: &[Rat]) -> bool {
    let n = if a.is_empty() { 0 } else { a[0].len() };
    let combo_pos = dot_rat(y, b).is_positive();
    let cols_ok = (0..n).all(|j| {
        let mut s = Rat::zero();
        for (row, yi) in a.iter().zip(y) {
            s += &row[j] * yi;
        }
        !s.is_positive()
    });
    combo_pos && cols_ok
}
