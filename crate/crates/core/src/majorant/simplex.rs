//! Dense simplex over a generic scalar, used to solve the minimal-mass
//! program through its dual:
//!
//!   min Σ_j m_j  s.t.  Σ_j P(z_i, ξ_j) m_j ≥ v_i,  m ≥ 0
//!   max Σ_i v_i y_i  s.t.  Σ_i P(z_i, ξ_j) y_i ≤ 1,  y ≥ 0
//!
//! The dual starts feasible at y = 0 (no phase one); the primal masses are
//! read off the slack reduced costs. Pivoting uses Dantzig's largest-
//! coefficient rule with deterministic lowest-index tie-breaks, falling back
//! to Bland's rule after a run of degenerate pivots so cycling cannot occur.
//!
//! The scalar is either `f64` (production path, small tolerances) or
//! `BigRational` (exact path for the verification suites, tolerance zero).

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};

pub trait LpScalar: Clone + PartialOrd {
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn zero() -> Self;
    fn add_assign(&mut self, o: &Self);
    fn sub_mul(&mut self, a: &Self, b: &Self); // self -= a*b
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// Strictly positive beyond the entering tolerance.
    fn is_entering(&self) -> bool;
    /// Usable as a pivot element.
    fn is_pivot(&self) -> bool;
    /// A ratio-test step too small to make progress (degeneracy detector).
    fn is_tiny_step(&self) -> bool;
}

impl LpScalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn zero() -> Self {
        0.0
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_entering(&self) -> bool {
        *self > 1e-9
    }
    fn is_pivot(&self) -> bool {
        *self > 1e-11
    }
    fn is_tiny_step(&self) -> bool {
        *self < 1e-12
    }
}

impl LpScalar for BigRational {
    fn from_f64(x: f64) -> Self {
        <BigRational as FromPrimitive>::from_f64(x).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_entering(&self) -> bool {
        self.is_positive()
    }
    fn is_pivot(&self) -> bool {
        self.is_positive()
    }
    fn is_tiny_step(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SimplexStatus {
    Optimal,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone)]
pub struct SimplexSolution<T> {
    pub status: SimplexStatus,
    pub objective: T,
    /// Values of the structural variables.
    pub x: Vec<T>,
    /// Dual multipliers of the row constraints (read off slack columns).
    pub row_duals: Vec<T>,
    pub pivots: usize,
}

/// Maximize c·x subject to A x ≤ b, x ≥ 0, with b ≥ 0 componentwise.
pub fn simplex_max<T: LpScalar>(
    a: &[Vec<T>],
    b: &[T],
    c: &[T],
    max_pivots: usize,
) -> SimplexSolution<T> {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    let total = n + m;
    // tableau rows: structural columns then slack identity
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let mut r: Vec<T> = Vec::with_capacity(total);
        r.extend(row.iter().cloned());
        for k in 0..m {
            r.push(if k == i { T::from_f64(1.0) } else { T::zero() });
        }
        t.push(r);
    }
    let mut rhs: Vec<T> = b.to_vec();
    let mut cbar: Vec<T> = Vec::with_capacity(total);
    cbar.extend(c.iter().cloned());
    for _ in 0..m {
        cbar.push(T::zero());
    }
    let mut obj = T::zero();
    let mut basis: Vec<usize> = (n..total).collect();

    let mut pivots = 0usize;
    let mut degenerate_run = 0usize;
    let status = loop {
        // Dantzig: largest reduced cost (ties to the lowest index); after a
        // degenerate stall, Bland's lowest-index rule guarantees escape
        let enter = if degenerate_run < 32 {
            let mut best: Option<usize> = None;
            for j in 0..total {
                if cbar[j].is_entering() {
                    match best {
                        None => best = Some(j),
                        Some(b) => {
                            if cbar[j] > cbar[b] {
                                best = Some(j);
                            }
                        }
                    }
                }
            }
            best
        } else {
            (0..total).find(|j| cbar[*j].is_entering())
        };
        let Some(enter) = enter else {
            break SimplexStatus::Optimal;
        };
        // ratio test; ties toward the lowest basis variable index
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            if !t[i][enter].is_pivot() {
                continue;
            }
            let ratio = rhs[i].div(&t[i][enter]);
            match &leave {
                None => leave = Some((i, ratio)),
                Some((best_i, best_r)) => {
                    if ratio < *best_r
                        || (ratio == *best_r && basis[i] < basis[*best_i])
                    {
                        leave = Some((i, ratio));
                    }
                }
            }
        }
        let Some((r, theta)) = leave else {
            break SimplexStatus::Unbounded;
        };
        pivots += 1;
        if pivots > max_pivots {
            break SimplexStatus::IterationLimit;
        }
        if theta.is_tiny_step() {
            degenerate_run += 1;
        } else {
            degenerate_run = 0;
        }

        // pivot on (r, enter)
        let piv = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v = v.div(&piv);
        }
        rhs[r] = theta.clone();
        for i in 0..m {
            if i == r {
                continue;
            }
            let factor = t[i][enter].clone();
            if factor == T::zero() {
                continue;
            }
            for k in 0..total {
                let d = t[r][k].clone();
                t[i][k].sub_mul(&factor, &d);
            }
            rhs[i].sub_mul(&factor, &theta);
        }
        let cf = cbar[enter].clone();
        obj.add_assign(&cf.mul(&theta));
        for k in 0..total {
            let d = t[r][k].clone();
            cbar[k].sub_mul(&cf, &d);
        }
        basis[r] = enter;
    };

    let mut x = vec![T::zero(); n];
    for (i, bi) in basis.iter().enumerate() {
        if *bi < n {
            x[*bi] = rhs[i].clone();
        }
    }
    // dual of row i = −(reduced cost of slack i)
    let mut row_duals = Vec::with_capacity(m);
    for i in 0..m {
        let mut d = T::zero();
        d.sub_mul(&T::from_f64(1.0), &cbar[n + i]);
        row_duals.push(d);
    }
    SimplexSolution { status, objective: obj, x, row_duals, pivots }
}

/// Brute-force oracle: enumerate the vertices of the dual polytope
/// {y ≥ 0 : Σ_i y_i P_ij ≤ 1} and maximize v·y. Intended for instances with
/// at most ~5 constraints and ~10 angles.
pub fn dual_vertex_oracle(kernel_cols: &[Vec<f64>], values: &[f64]) -> f64 {
    let m = values.len(); // dimension of y
    if m == 0 {
        return 0.0;
    }
    let n = kernel_cols.len(); // number of ≤-hyperplanes
    debug_assert!(kernel_cols.iter().all(|col| col.len() == m));

    // hyperplanes: n rows (P·y = 1) plus m rows (y_i = 0)
    let total = n + m;
    let mut best = 0.0f64; // y = 0 is always feasible
    let mut combo = vec![0usize; m];

    fn solve(mat: &mut [Vec<f64>], rhs: &mut [f64]) -> Option<Vec<f64>> {
        let m = rhs.len();
        for col in 0..m {
            let piv = (col..m).max_by(|&a, &b| {
                mat[a][col].abs().partial_cmp(&mat[b][col].abs()).unwrap()
            })?;
            if mat[piv][col].abs() < 1e-12 {
                return None;
            }
            mat.swap(col, piv);
            rhs.swap(col, piv);
            for r in 0..m {
                if r == col {
                    continue;
                }
                let f = mat[r][col] / mat[col][col];
                for k in col..m {
                    mat[r][k] -= f * mat[col][k];
                }
                rhs[r] -= f * rhs[col];
            }
        }
        Some((0..m).map(|i| rhs[i] / mat[i][i]).collect())
    }

    fn rec(
        combo: &mut Vec<usize>,
        pos: usize,
        start: usize,
        total: usize,
        n: usize,
        m: usize,
        kernel_cols: &[Vec<f64>],
        values: &[f64],
        best: &mut f64,
    ) {
        if pos == m {
            let mut mat: Vec<Vec<f64>> = Vec::with_capacity(m);
            let mut rhs = Vec::with_capacity(m);
            for &h in combo.iter() {
                if h < n {
                    mat.push(kernel_cols[h].clone());
                    rhs.push(1.0);
                } else {
                    let mut row = vec![0.0; m];
                    row[h - n] = 1.0;
                    mat.push(row);
                    rhs.push(0.0);
                }
            }
            if let Some(y) = solve(&mut mat, &mut rhs) {
                if y.iter().all(|v| *v >= -1e-9)
                    && kernel_cols.iter().all(|col| {
                        col.iter().zip(&y).map(|(p, yi)| p * yi).sum::<f64>() <= 1.0 + 1e-9
                    })
                {
                    let obj: f64 = values.iter().zip(&y).map(|(v, yi)| v * yi).sum();
                    if obj > *best {
                        *best = obj;
                    }
                }
            }
            return;
        }
        for h in start..total {
            combo[pos] = h;
            rec(combo, pos + 1, h + 1, total, n, m, kernel_cols, values, best);
        }
    }

    rec(&mut combo, 0, 0, total, n, m, kernel_cols, values, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_solves_textbook_max() {
        // max 3x + 5y s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let a = vec![
            vec![1.0, 0.0],
            vec![0.0, 2.0],
            vec![3.0, 2.0],
        ];
        let b = vec![4.0, 12.0, 18.0];
        let c = vec![3.0, 5.0];
        let sol = simplex_max(&a, &b, &c, 1000);
        assert_eq!(sol.status, SimplexStatus::Optimal);
        assert!((sol.objective - 36.0).abs() < 1e-9);
        assert!((sol.x[0] - 2.0).abs() < 1e-9);
        assert!((sol.x[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn simplex_exact_agrees_with_f64() {
        let a = vec![vec![2.0, 1.0, 1.0], vec![1.0, 3.0, 2.0], vec![2.0, 1.0, 2.0]];
        let b = vec![14.0, 25.0, 26.0];
        let c = vec![3.0, 2.0, 4.0];
        let f = simplex_max(&a, &b, &c, 1000);
        let ar: Vec<Vec<BigRational>> = a
            .iter()
            .map(|r| r.iter().map(|x| <BigRational as LpScalar>::from_f64(*x)).collect())
            .collect();
        let br: Vec<BigRational> = b.iter().map(|x| <BigRational as LpScalar>::from_f64(*x)).collect();
        let cr: Vec<BigRational> = c.iter().map(|x| <BigRational as LpScalar>::from_f64(*x)).collect();
        let e = simplex_max(&ar, &br, &cr, 1000);
        assert_eq!(e.status, SimplexStatus::Optimal);
        assert!((f.objective - e.objective.to_f64()).abs() < 1e-9);
    }

    #[test]
    fn simplex_detects_unbounded() {
        // max x with -x ≤ 1: unbounded
        let sol = simplex_max(&[vec![-1.0]], &[1.0], &[1.0], 100);
        assert_eq!(sol.status, SimplexStatus::Unbounded);
    }

    #[test]
    fn oracle_matches_simplex_on_small_instances() {
        let mut st = crate::sampling::SplitMix64::new(31);
        for _ in 0..50 {
            let m = 1 + (st.next_u64() % 4) as usize;
            let n = 1 + (st.next_u64() % 8) as usize;
            let cols: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..m).map(|_| 0.1 + 3.0 * st.next_f64()).collect())
                .collect();
            let vals: Vec<f64> = (0..m).map(|_| st.next_f64() * 2.0).collect();
            let a: Vec<Vec<f64>> = cols.clone();
            let sol = simplex_max(&a, &vec![1.0; n], &vals, 10_000);
            assert_eq!(sol.status, SimplexStatus::Optimal);
            let oracle = dual_vertex_oracle(&cols, &vals);
            assert!(
                (sol.objective - oracle).abs() < 1e-9,
                "simplex {} vs oracle {}",
                sol.objective,
                oracle
            );
        }
    }
}
