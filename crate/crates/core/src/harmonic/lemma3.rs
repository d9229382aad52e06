//! Inductive construction of a positive harmonic function dominated by a
//! prescribed per-square budget while blowing up along a selected
//! subsequence of squares.
//!
//! Given squares Q_1, Q_2, … with non-increasing side lengths and positive
//! budgets M_j → ∞, the builder selects indices j_1 < j_2 < … and forms
//! H = Σ_m μ_m h_{Q_{j_m}} with μ_m = 2^{m/2}, maintaining the running
//! certificate sup_{Q_j} H^{(k)} ≤ M_j + Σ_{m≤k} 2^{−m/2} for every input
//! square, where sups are computed over fixed per-square grids.

use crate::error::{Error, Result};
use crate::harmonic::{h_q, BoundaryMeasure, HarmonicFn};
use crate::hypgeo::{DiskPoint, WhitneySquare};

/// Snapshot of the certificate after the k-th selection.
#[derive(Debug, Clone)]
pub struct StageRecord {
    /// Number of terms in the partial sum (k).
    pub stage: usize,
    /// Grid sup of the partial sum on each input square.
    pub sups: Vec<f64>,
    /// The bound M_j + Σ_{m≤k} 2^{−m/2} for each input square.
    pub bounds: Vec<f64>,
}

impl StageRecord {
    pub fn holds(&self) -> bool {
        self.sups.iter().zip(&self.bounds).all(|(s, b)| s <= b)
    }
}

#[derive(Debug, Clone)]
pub struct Lemma3Certificate {
    pub stages: Vec<StageRecord>,
    /// Grid sup of the full sum on each selected square.
    pub selected_sups: Vec<f64>,
}

impl Lemma3Certificate {
    pub fn holds(&self) -> bool {
        self.stages.iter().all(StageRecord::holds)
    }
}

#[derive(Debug, Clone)]
pub struct Lemma3Output {
    pub h: HarmonicFn,
    /// Indices into the input square list, strictly increasing.
    pub selected: Vec<usize>,
    /// Coefficients μ_m = 2^{m/2}.
    pub coefficients: Vec<f64>,
    pub certificate: Lemma3Certificate,
}

fn square_grid(q: &WhitneySquare, n: usize) -> Vec<DiskPoint> {
    let mut pts = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let u = i as f64 / (n - 1) as f64;
            let v = j as f64 / (n - 1) as f64;
            pts.push(q.point_at(u, v));
        }
    }
    pts
}

/// Build the blow-up function. `grid_n` is the per-square sample grid side
/// (the certificate uses grid sups; 32 matches the verification suite).
///
/// Squares must be distinct with non-increasing side lengths; budgets must be
/// positive. The scan stops when the finite input cannot support a further
/// selection; failing to make even one selection is an error.
pub fn lemma3_build(
    squares: &[WhitneySquare],
    budgets: &[f64],
    grid_n: usize,
) -> Result<Lemma3Output> {
    if squares.is_empty() || squares.len() != budgets.len() {
        return Err(Error::InvalidParameter(
            "need equally many squares and budgets, at least one".into(),
        ));
    }
    if budgets.iter().any(|m| !(*m > 0.0)) {
        return Err(Error::InvalidParameter("budgets must be positive".into()));
    }
    for w in squares.windows(2) {
        if w[1].side() > w[0].side() {
            return Err(Error::InvalidParameter(
                "square sides must be non-increasing".into(),
            ));
        }
    }
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            if squares[i] == squares[j] {
                return Err(Error::InvalidParameter("squares must be distinct".into()));
            }
        }
    }

    let n_sq = squares.len();
    let grids: Vec<Vec<DiskPoint>> = squares.iter().map(|q| square_grid(q, grid_n)).collect();
    // running values of the partial sum on every grid point
    let mut values: Vec<Vec<f64>> = grids.iter().map(|g| vec![0.0; g.len()]).collect();
    let mut sups = vec![0.0f64; n_sq];

    let mut selected: Vec<usize> = Vec::new();
    let mut coefficients: Vec<f64> = Vec::new();
    let mut stages: Vec<StageRecord> = Vec::new();
    let mut bound_tail = 0.0f64; // Σ_{m≤k} 2^{−m/2}

    loop {
        let k = selected.len();
        let mu_next = (2.0f64).powf((k as f64 + 1.0) / 2.0);

        // threshold index t: all squares from t onward still have room for a
        // full μ_{k+1} bump (the scan realizes the proof's radius R)
        let mut t = None;
        'outer: for cand_t in 0..n_sq {
            for j in cand_t..n_sq {
                if budgets[j] - sups[j] < mu_next {
                    continue 'outer;
                }
            }
            t = Some(cand_t);
            break;
        }
        let Some(t) = t else {
            break; // no admissible tail; truncation reached
        };

        // next selection: the first unselected square at or past t whose h_Q
        // stays below 2^{−k−1} on every earlier square (the proof's R′)
        let kernel_cap = (2.0f64).powi(-(k as i32) - 1);
        let min_index = selected.last().map_or(t, |last| (last + 1).max(t));
        let mut chosen = None;
        'cand: for c in min_index..n_sq {
            if selected.contains(&c) {
                continue;
            }
            for j in 0..t {
                for z in &grids[j] {
                    if h_q(&squares[c], *z) >= kernel_cap {
                        continue 'cand;
                    }
                }
            }
            chosen = Some(c);
            break;
        }
        let Some(c) = chosen else {
            break;
        };

        selected.push(c);
        coefficients.push(mu_next);
        bound_tail += (2.0f64).powf(-((k as f64 + 1.0) / 2.0));

        for (j, grid) in grids.iter().enumerate() {
            let mut sup = 0.0f64;
            for (v, z) in values[j].iter_mut().zip(grid) {
                *v += mu_next * h_q(&squares[c], *z);
                sup = sup.max(*v);
            }
            sups[j] = sup;
        }

        let bounds: Vec<f64> = budgets.iter().map(|m| m + bound_tail).collect();
        let record = StageRecord { stage: selected.len(), sups: sups.clone(), bounds };
        if !record.holds() {
            return Err(Error::SelectionExhausted(format!(
                "certificate violated at stage {}",
                record.stage
            )));
        }
        stages.push(record);
    }

    if selected.is_empty() {
        return Err(Error::SelectionExhausted(
            "input exhausted before the first selection; budgets too small or too few squares"
                .into(),
        ));
    }

    let mut mu = BoundaryMeasure::zero();
    for (idx, coef) in selected.iter().zip(&coefficients) {
        mu.push_arc(squares[*idx].arc(), *coef);
    }
    let selected_sups = selected.iter().map(|idx| sups[*idx]).collect();
    Ok(Lemma3Output {
        h: HarmonicFn::from_measure(mu),
        selected,
        coefficients,
        certificate: Lemma3Certificate { stages, selected_sups },
    })
}
