//! The computational core: decide at truncation scale whether a prescribed
//! function admits a positive harmonic majorant on a prescribed set, via a
//! minimal-mass linear program over discretized positive boundary measures;
//! plus the target-set samplers and the transfer/domination diagnostics.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::blaschke::{log_modulus, ZeroSet};
use crate::constants;
use crate::error::{Error, Result};
use crate::harmonic::{h_lambda, poisson_kernel, BoundaryMeasure, HarmonicFn};
use crate::hypgeo::{mobius, pseudo_dist, whitney_index, DiskPoint, TAU};
use crate::sampling::{hash3, R2Sequence};

pub mod simplex;
use simplex::{dual_vertex_oracle, simplex_max, LpScalar, SimplexStatus};

/// Discretized statement "H(z_i) ≥ v_i": points with required values.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstraintSet {
    constraints: Vec<(DiskPoint, f64)>,
}

#[derive(Serialize, Deserialize)]
struct ConstraintJson {
    re: f64,
    im: f64,
    value: f64,
}

#[derive(Serialize, Deserialize)]
struct ConstraintSetJson {
    constraints: Vec<ConstraintJson>,
}

impl ConstraintSet {
    pub fn new(constraints: Vec<(DiskPoint, f64)>) -> Result<Self> {
        for (i, (_, v)) in constraints.iter().enumerate() {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "constraint {i} has invalid value {v}"
                )));
            }
        }
        Ok(Self { constraints })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn push(&mut self, z: DiskPoint, v: f64) -> Result<()> {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidParameter(format!("invalid constraint value {v}")));
        }
        self.constraints.push((z, v));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn entries(&self) -> &[(DiskPoint, f64)] {
        &self.constraints
    }

    pub fn to_json_string(&self) -> String {
        let j = ConstraintSetJson {
            constraints: self
                .constraints
                .iter()
                .map(|(z, v)| ConstraintJson { re: z.re(), im: z.im(), value: *v })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("constraint set serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: ConstraintSetJson = serde_json::from_str(s)?;
        let mut out = Vec::with_capacity(j.constraints.len());
        for c in j.constraints {
            out.push((DiskPoint::new(c.re, c.im)?, c.value));
        }
        Self::new(out)
    }
}

/// Boundary discretization: equispaced angles plus the radial projections of
/// all constraint points (the single-constraint optimum concentrates there).
#[derive(Debug, Clone)]
pub struct BoundaryGrid {
    pub angles: Vec<f64>,
    /// Index into `angles` of each constraint's projection, when defined.
    pub projection_of: Vec<Option<usize>>,
}

impl BoundaryGrid {
    pub fn build(constraints: &ConstraintSet, n_equispaced: usize) -> Result<Self> {
        if n_equispaced < 1 {
            return Err(Error::InvalidParameter("grid needs at least one angle".into()));
        }
        let mut angles: Vec<f64> = (0..n_equispaced)
            .map(|t| TAU * t as f64 / n_equispaced as f64)
            .collect();
        let mut seen: BTreeMap<u64, usize> = angles
            .iter()
            .enumerate()
            .map(|(i, a)| (a.to_bits(), i))
            .collect();
        let mut projection_of = Vec::with_capacity(constraints.len());
        for (z, _) in constraints.entries() {
            if z.is_origin() {
                projection_of.push(None);
                continue;
            }
            let a = z.arg();
            let idx = *seen.entry(a.to_bits()).or_insert_with(|| {
                angles.push(a);
                angles.len() - 1
            });
            projection_of.push(Some(idx));
        }
        Ok(Self { angles, projection_of })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    InfeasibleNumerics,
    UnboundedImpossible,
}

/// Result of a minimal-mass solve.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub optimal_mass: f64,
    pub measure: BoundaryMeasure,
    /// Per-constraint slack Σ_j P(z_i, ξ_j) m_j − v_i of the returned measure.
    pub slack: Vec<f64>,
    /// Per-constraint dual multipliers (zero off the active set).
    pub dual: Vec<f64>,
    pub rounds: usize,
    pub pivots: usize,
}

#[derive(Debug, Clone)]
pub struct MinMassOptions {
    pub max_rounds: usize,
    pub max_pivots: usize,
    pub init_rows: usize,
    pub row_batch: usize,
    pub col_batch: usize,
}

impl Default for MinMassOptions {
    fn default() -> Self {
        Self {
            max_rounds: 200,
            max_pivots: 400_000,
            init_rows: 512,
            row_batch: 64,
            col_batch: 64,
        }
    }
}

const VIOLATION_TOL: f64 = 1e-10;

/// Minimal total mass of a positive measure on the grid whose Poisson
/// integral dominates every constraint. Exact optimum of the finite LP,
/// solved through its dual with row/column activation so that only the
/// binding part of a large system enters the tableau.
pub fn min_mass(constraints: &ConstraintSet, n_equispaced: usize) -> Result<SolveReport> {
    let grid = BoundaryGrid::build(constraints, n_equispaced)?;
    min_mass_on_grid(constraints, &grid, &MinMassOptions::default())
}

pub fn min_mass_on_grid(
    constraints: &ConstraintSet,
    grid: &BoundaryGrid,
    opts: &MinMassOptions,
) -> Result<SolveReport> {
    let m = constraints.len();
    let angles = &grid.angles;
    if angles.is_empty() {
        return Err(Error::InvalidParameter("empty boundary grid".into()));
    }
    if m == 0 {
        return Ok(SolveReport {
            status: SolveStatus::Optimal,
            optimal_mass: 0.0,
            measure: BoundaryMeasure::zero(),
            slack: Vec::new(),
            dual: Vec::new(),
            rounds: 0,
            pivots: 0,
        });
    }
    let pts: Vec<DiskPoint> = constraints.entries().iter().map(|(z, _)| *z).collect();
    let vals: Vec<f64> = constraints.entries().iter().map(|(_, v)| *v).collect();

    // active sets
    let mut rows: Vec<usize> = if m <= opts.init_rows {
        (0..m).collect()
    } else {
        let mut idx: Vec<usize> = (0..m).collect();
        idx.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).unwrap().then(a.cmp(&b)));
        let mut top: Vec<usize> = idx.into_iter().take(opts.init_rows).collect();
        top.sort_unstable();
        top
    };
    let n_equi = angles.len().min(grid.projection_of.len().max(1));
    let _ = n_equi;
    let mut cols: Vec<usize> = Vec::new();
    {
        let mut in_cols = vec![false; angles.len()];
        let equi_count = angles.len() - grid.projection_of.iter().flatten().count().min(angles.len());
        // equispaced angles come first in the grid, before any projections
        let equi_prefix = grid
            .projection_of
            .iter()
            .flatten()
            .copied()
            .min()
            .unwrap_or(angles.len())
            .min(angles.len());
        let _ = equi_count;
        for j in 0..equi_prefix {
            in_cols[j] = true;
        }
        for &i in &rows {
            if let Some(j) = grid.projection_of[i] {
                in_cols[j] = true;
            }
        }
        for (j, f) in in_cols.iter().enumerate() {
            if *f {
                cols.push(j);
            }
        }
    }

    let mut total_pivots = 0usize;
    let mut in_rows = vec![false; m];
    for &i in &rows {
        in_rows[i] = true;
    }
    let mut in_cols_flag = vec![false; angles.len()];
    for &j in &cols {
        in_cols_flag[j] = true;
    }

    for round in 0..opts.max_rounds {
        // dual sub-LP: rows = active angles, columns = active constraints
        let nr = cols.len();
        let nc = rows.len();
        let mut scale = vec![0.0f64; nc];
        let mut a: Vec<Vec<f64>> = vec![vec![0.0; nc]; nr];
        for (ci, &i) in rows.iter().enumerate() {
            let mut smax = 0.0f64;
            for (ri, &j) in cols.iter().enumerate() {
                let p = poisson_kernel(pts[i], angles[j]);
                a[ri][ci] = p;
                smax = smax.max(p);
            }
            scale[ci] = smax.max(f64::MIN_POSITIVE);
            for row in a.iter_mut() {
                row[ci] /= scale[ci];
            }
        }
        let b = vec![1.0f64; nr];
        let c: Vec<f64> = rows.iter().enumerate().map(|(ci, &i)| vals[i] / scale[ci]).collect();
        let sol = simplex_max(&a, &b, &c, opts.max_pivots);
        total_pivots += sol.pivots;
        match sol.status {
            SimplexStatus::Optimal => {}
            SimplexStatus::Unbounded => {
                return Ok(report_with_status(
                    SolveStatus::UnboundedImpossible,
                    constraints,
                    &[],
                    &[],
                    round + 1,
                    total_pivots,
                ));
            }
            SimplexStatus::IterationLimit => {
                return Ok(report_with_status(
                    SolveStatus::InfeasibleNumerics,
                    constraints,
                    &[],
                    &[],
                    round + 1,
                    total_pivots,
                ));
            }
        }

        // primal masses at active angles, dual weights at active constraints
        let support: Vec<(usize, f64)> = cols
            .iter()
            .enumerate()
            .filter_map(|(ri, &j)| {
                let v = sol.row_duals[ri].max(0.0);
                (v > 1e-14).then_some((j, v))
            })
            .collect();
        let y_support: Vec<(usize, f64)> = rows
            .iter()
            .enumerate()
            .filter_map(|(ci, &i)| {
                let v = sol.x[ci] / scale[ci];
                (v > 1e-18).then_some((i, v))
            })
            .collect();

        // violated primal rows (unsatisfied constraints)
        let mut viol_rows: Vec<(f64, usize)> = Vec::new();
        for i in 0..m {
            if in_rows[i] {
                continue;
            }
            let mut lhs = 0.0;
            for &(j, mass) in &support {
                lhs += mass * poisson_kernel(pts[i], angles[j]);
            }
            let rel = (vals[i] - lhs) / vals[i].max(1.0);
            if rel > VIOLATION_TOL {
                viol_rows.push((rel, i));
            }
        }
        viol_rows.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        viol_rows.truncate(opts.row_batch);

        // violated dual columns (grid angles where the dual packs too much)
        let mut viol_cols: Vec<(f64, usize)> = Vec::new();
        for (j, angle) in angles.iter().enumerate() {
            if in_cols_flag[j] {
                continue;
            }
            let mut s = 0.0;
            for &(i, y) in &y_support {
                s += y * poisson_kernel(pts[i], *angle);
            }
            if s > 1.0 + VIOLATION_TOL {
                viol_cols.push((s, j));
            }
        }
        viol_cols.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        viol_cols.truncate(opts.col_batch);

        if viol_rows.is_empty() && viol_cols.is_empty() {
            // done; assemble the full report
            let mut measure = BoundaryMeasure::zero();
            for &(j, mass) in &support {
                measure.push_atom(angles[j], mass);
            }
            let mut slack = Vec::with_capacity(m);
            for i in 0..m {
                let mut lhs = 0.0;
                for &(j, mass) in &support {
                    lhs += mass * poisson_kernel(pts[i], angles[j]);
                }
                slack.push(lhs - vals[i]);
            }
            let mut dual = vec![0.0; m];
            for &(i, y) in &y_support {
                dual[i] = y;
            }
            let optimal_mass: f64 = support.iter().map(|(_, mass)| mass).sum();
            return Ok(SolveReport {
                status: SolveStatus::Optimal,
                optimal_mass,
                measure,
                slack,
                dual,
                rounds: round + 1,
                pivots: total_pivots,
            });
        }

        for (_, i) in viol_rows {
            in_rows[i] = true;
            rows.push(i);
            if let Some(j) = grid.projection_of[i] {
                if !in_cols_flag[j] {
                    in_cols_flag[j] = true;
                    cols.push(j);
                }
            }
        }
        for (_, j) in viol_cols {
            in_cols_flag[j] = true;
            cols.push(j);
        }
        rows.sort_unstable();
        cols.sort_unstable();
    }

    Ok(report_with_status(
        SolveStatus::InfeasibleNumerics,
        constraints,
        &[],
        &[],
        opts.max_rounds,
        total_pivots,
    ))
}

fn report_with_status(
    status: SolveStatus,
    constraints: &ConstraintSet,
    _support: &[(usize, f64)],
    _dual: &[(usize, f64)],
    rounds: usize,
    pivots: usize,
) -> SolveReport {
    SolveReport {
        status,
        optimal_mass: f64::NAN,
        measure: BoundaryMeasure::zero(),
        slack: vec![f64::NAN; constraints.len()],
        dual: vec![0.0; constraints.len()],
        rounds,
        pivots,
    }
}

/// Exact-arithmetic solve of the full LP on an explicit angle list. Intended
/// for small verification instances; the optimum is an exact rational.
pub struct ExactSolve {
    pub mass: BigRational,
    pub masses: Vec<(usize, BigRational)>,
    pub duals: Vec<BigRational>,
    pub pivots: usize,
}

pub fn min_mass_exact(constraints: &ConstraintSet, angles: &[f64]) -> Result<ExactSolve> {
    let m = constraints.len();
    if angles.is_empty() {
        return Err(Error::InvalidParameter("empty boundary grid".into()));
    }
    if m * angles.len() > 1 << 14 {
        return Err(Error::InvalidParameter(
            "exact solve is reserved for small instances".into(),
        ));
    }
    if m == 0 {
        return Ok(ExactSolve {
            mass: <BigRational as LpScalar>::zero(),
            masses: Vec::new(),
            duals: Vec::new(),
            pivots: 0,
        });
    }
    let one = <BigRational as LpScalar>::from_f64(1.0);
    let a: Vec<Vec<BigRational>> = angles
        .iter()
        .map(|angle| {
            constraints
                .entries()
                .iter()
                .map(|(z, _)| <BigRational as LpScalar>::from_f64(poisson_kernel(*z, *angle)))
                .collect()
        })
        .collect();
    let b = vec![one.clone(); angles.len()];
    let c: Vec<BigRational> = constraints
        .entries()
        .iter()
        .map(|(_, v)| <BigRational as LpScalar>::from_f64(*v))
        .collect();
    let sol = simplex_max(&a, &b, &c, 100_000);
    if sol.status != SimplexStatus::Optimal {
        return Err(Error::SolverFailure(format!("exact simplex: {:?}", sol.status)));
    }
    let zero = <BigRational as LpScalar>::zero();
    let masses: Vec<(usize, BigRational)> = sol
        .row_duals
        .iter()
        .enumerate()
        .filter(|(_, d)| **d > zero)
        .map(|(j, d)| (j, d.clone()))
        .collect();
    Ok(ExactSolve { mass: sol.objective, masses, duals: sol.x, pivots: sol.pivots })
}

pub use simplex::dual_vertex_oracle as dual_oracle;

/// Brute-force optimum for tiny instances, as f64 (the dual-vertex oracle).
pub fn min_mass_oracle(constraints: &ConstraintSet, angles: &[f64]) -> f64 {
    let cols: Vec<Vec<f64>> = angles
        .iter()
        .map(|angle| {
            constraints
                .entries()
                .iter()
                .map(|(z, _)| poisson_kernel(*z, *angle))
                .collect()
        })
        .collect();
    let vals: Vec<f64> = constraints.entries().iter().map(|(_, v)| *v).collect();
    dual_vertex_oracle(&cols, &vals)
}

// ---------------------------------------------------------------------------
// target-set sampling
// ---------------------------------------------------------------------------

/// One retained sample point with its cached value of −log|B|.
#[derive(Debug, Clone, Copy)]
pub struct SamplePoint {
    pub z: DiskPoint,
    pub neg_log_b: f64,
    /// Whitney level of the containing square (samples are per-square).
    pub level: u32,
}

#[derive(Debug, Clone, Default)]
pub struct TargetSample {
    pub points: Vec<SamplePoint>,
    /// Indices of the near-extremal points a(Q), one per square that meets
    /// the 1/2-neighborhood of the zero set and keeps a retained point.
    pub extremal: Vec<usize>,
    pub generated: usize,
}

#[derive(Debug, Clone)]
pub struct SampleOptions {
    pub depth: u32,
    pub per_square: usize,
    pub seed: u64,
    /// Per-square retained cap; the near-extremal point is always kept.
    pub retained_cap: usize,
    /// Angles per probe radius in the near-zero ladders.
    pub ladder_angles: usize,
}

impl SampleOptions {
    pub fn new(depth: u32, per_square: usize, seed: u64) -> Self {
        Self { depth, per_square, seed, retained_cap: 64, ladder_angles: 6 }
    }
}

/// Probe radii for the filter-boundary ladders, as fractions of the filter
/// exponent: points at ρ = e^{−c·H(λ)} around each zero λ. The near-1
/// fraction approaches the boundary of the retained set from outside the
/// excluded zone, which is where −log|B| peaks over the retained sample.
const LADDER_FRACS: [f64; 5] = [0.25, 0.5, 0.75, 0.9, 0.984_375];

/// Deterministic sample of the target set {z : ρ(z, Λ) ≥ e^{−H(z)}}.
///
/// Each Whitney square up to `depth` contributes a low-discrepancy sample of
/// `per_square` points; around every zero a ladder of probe points
/// approaches the filter boundary so that the near-extremal points a(Q) are
/// genuine sample-argmaxes of −log|B| over the retained part of each square.
pub fn sample_target_set(
    zs: &ZeroSet,
    h: &HarmonicFn,
    depth: u32,
    per_square: usize,
    seed: u64,
) -> TargetSample {
    sample_target_set_with(zs, h, &SampleOptions::new(depth, per_square, seed))
}

pub fn sample_target_set_with(
    zs: &ZeroSet,
    h: &HarmonicFn,
    opts: &SampleOptions,
) -> TargetSample {
    // min pseudo distance to Λ and −log|B| in one pass
    let stats = |z: DiskPoint| -> (f64, f64) {
        let mut min_rho = 1.0f64;
        let mut acc = 0.0f64;
        for (lam, m) in zs.entries() {
            let rho = pseudo_dist(z, *lam);
            if rho == 0.0 {
                return (0.0, f64::INFINITY);
            }
            min_rho = min_rho.min(rho);
            acc -= *m as f64 * rho.ln();
        }
        (min_rho, acc)
    };

    // ladder probes, grouped by containing square
    let mut probes: BTreeMap<(u32, u64), Vec<DiskPoint>> = BTreeMap::new();
    for (zi, (lam, _)) in zs.entries().iter().enumerate() {
        let hf = h.eval(*lam);
        if !(hf > 0.0) {
            continue;
        }
        let offset = hash3(opts.seed, 0x1adde5, zi as u64) as f64 / u64::MAX as f64 * TAU;
        for (fi, frac) in LADDER_FRACS.iter().enumerate() {
            let x = (-frac * hf).exp();
            if !(x > 1e-290) || x >= 0.9 {
                continue;
            }
            for t in 0..opts.ladder_angles {
                let theta = offset + TAU * (t as f64 + 0.5 * (fi as f64 % 2.0)) / opts.ladder_angles as f64;
                let w = DiskPoint::new_clamped(x * theta.cos(), x * theta.sin());
                let z = mobius(*lam, w);
                if let Ok(q) = whitney_index(&z) {
                    if q.level() <= opts.depth {
                        probes.entry((q.level(), q.sector())).or_default().push(z);
                    }
                }
            }
        }
    }

    let mut out = TargetSample::default();
    for k in 1..=opts.depth {
        let sectors = 1u64 << k;
        let l = (2.0f64).powi(-(k as i32));
        let w = TAU * l;
        for j in 0..sectors {
            let mut seq = R2Sequence::new(hash3(opts.seed, k as u64, j));
            let mut square_meets_halfzone = false;
            let mut retained: Vec<(DiskPoint, f64)> = Vec::new();
            let consider = |z: DiskPoint,
                                retained: &mut Vec<(DiskPoint, f64)>,
                                meets: &mut bool,
                                generated: &mut usize| {
                *generated += 1;
                let (rho, nlb) = stats(z);
                if rho <= 0.5 {
                    *meets = true;
                }
                if rho > 0.0 && -rho.ln() <= h.eval(z) {
                    retained.push((z, nlb));
                }
            };
            for _ in 0..opts.per_square {
                let (u, v) = seq.next();
                let d = l * (1.0 + u);
                let theta = (j as f64 + v) * w;
                let z = DiskPoint::new_clamped(
                    (1.0 - d) * theta.cos(),
                    (1.0 - d) * theta.sin(),
                );
                consider(z, &mut retained, &mut square_meets_halfzone, &mut out.generated);
            }
            if let Some(extra) = probes.get(&(k, j)) {
                for z in extra {
                    consider(*z, &mut retained, &mut square_meets_halfzone, &mut out.generated);
                }
            }
            if retained.is_empty() {
                continue;
            }
            // a(Q): sample-argmax of −log|B| over the retained sample
            let argmax = retained
                .iter()
                .enumerate()
                .max_by(|(ia, a), (ib, b)| {
                    a.1.partial_cmp(&b.1).unwrap().then(ib.cmp(ia))
                })
                .map(|(i, _)| i)
                .unwrap();
            let base = out.points.len();
            let mark_extremal = square_meets_halfzone;
            let mut kept = 0usize;
            for (i, (z, nlb)) in retained.iter().enumerate() {
                let is_argmax = i == argmax;
                if !is_argmax && kept + 1 >= opts.retained_cap && argmax > i {
                    continue; // leave room for the extremal point
                }
                if kept >= opts.retained_cap && !is_argmax {
                    continue;
                }
                if is_argmax && mark_extremal {
                    out.extremal.push(base + kept);
                }
                out.points.push(SamplePoint { z: *z, neg_log_b: *nlb, level: k });
                kept += 1;
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// sweeps and classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Bounded,
    Growth,
    Inconclusive,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Bounded => write!(f, "bounded"),
            Classification::Growth => write!(f, "growth"),
            Classification::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Classify the tail of a mass sequence: bounded evidence when the last
/// three depths stay within a factor 1.5, growth evidence when they increase
/// monotonically by at least 2x overall.
pub fn classify_masses(masses: &[f64]) -> Classification {
    if masses.len() < 3 {
        return if masses.iter().all(|m| *m <= 1e-12) {
            Classification::Bounded
        } else {
            Classification::Inconclusive
        };
    }
    let a = masses[masses.len() - 3];
    let b = masses[masses.len() - 2];
    let c = masses[masses.len() - 1];
    let increasing = b > a + 1e-12 && c > b + 1e-12;
    if increasing && c >= 2.0 * a {
        return Classification::Growth;
    }
    if c <= 1.5 * a + 1e-9 {
        return Classification::Bounded;
    }
    Classification::Inconclusive
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub depth: u32,
    pub count: usize,
    pub mass: f64,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub rows: Vec<SweepRow>,
    pub classification: Classification,
    /// Fitted slope of ln(mass) against ln(1/l(depth)) = depth·ln 2.
    pub growth_exponent: f64,
    /// Sample points whose −log|B| was infinite and were dropped.
    pub dropped_infinite: usize,
}

impl SweepRecord {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("depth,count,mass,runtime_ms\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{}\n", r.depth, r.count, r.mass, r.runtime_ms));
        }
        s
    }

    pub fn masses(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.mass).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub depths: Vec<u32>,
    pub per_square: usize,
    pub seed: u64,
    pub n_grid_angles: usize,
    pub retained_cap: usize,
    pub solver: MinMassOptions,
}

impl SweepOptions {
    pub fn new(depths: Vec<u32>) -> Self {
        Self {
            depths,
            per_square: 6,
            seed: 1,
            n_grid_angles: 256,
            retained_cap: 64,
            solver: MinMassOptions::default(),
        }
    }
}

fn fit_growth_exponent(rows: &[SweepRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.mass > 0.0)
        .map(|r| (r.depth as f64 * std::f64::consts::LN_2, r.mass.ln()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let den = n * sxx - sx * sx;
    if den.abs() < 1e-12 {
        return 0.0;
    }
    (n * sxy - sx * sy) / den
}

/// Truncation sweep for harmonic-majorant existence: at each depth, sample
/// the target set, constrain H(z) ≥ −log|B(z)| on the sample, and solve for
/// the minimal mass. Nested samples over a fixed grid make the mass
/// sequence nondecreasing; a bounded sequence is majorant evidence, unbounded
/// growth is the obstruction.
pub fn majorant_diagnostic(
    zs: &ZeroSet,
    h: &HarmonicFn,
    opts: &SweepOptions,
) -> Result<SweepRecord> {
    if opts.depths.windows(2).any(|w| w[1] <= w[0]) || opts.depths.is_empty() {
        return Err(Error::InvalidParameter("depths must be strictly increasing".into()));
    }
    let max_depth = *opts.depths.last().unwrap();
    let mut sample_opts = SampleOptions::new(max_depth, opts.per_square, opts.seed);
    sample_opts.retained_cap = opts.retained_cap;
    let full = sample_target_set_with(zs, h, &sample_opts);

    let mut dropped = 0usize;
    let keep: Vec<&SamplePoint> = full
        .points
        .iter()
        .filter(|p| {
            if p.neg_log_b.is_finite() {
                true
            } else {
                dropped += 1;
                false
            }
        })
        .collect();

    // fixed grid across depths: equispaced angles plus projections of every
    // sampled point, so that nested constraint sets solve over one column set
    let full_set = ConstraintSet::new(
        keep.iter().map(|p| (p.z, p.neg_log_b.max(0.0))).collect(),
    )?;
    let grid = BoundaryGrid::build(&full_set, opts.n_grid_angles)?;

    let mut rows = Vec::with_capacity(opts.depths.len());
    for &d in &opts.depths {
        let start = std::time::Instant::now();
        let mut sub = ConstraintSet::empty();
        let mut proj = Vec::new();
        for (i, p) in keep.iter().enumerate() {
            if p.level <= d {
                sub.push(p.z, p.neg_log_b.max(0.0))?;
                proj.push(grid.projection_of[i]);
            }
        }
        let sub_grid = BoundaryGrid { angles: grid.angles.clone(), projection_of: proj };
        let report = min_mass_on_grid(&sub, &sub_grid, &opts.solver)?;
        if report.status != SolveStatus::Optimal {
            return Err(Error::SolverFailure(format!(
                "depth {d}: solver returned {:?}",
                report.status
            )));
        }
        rows.push(SweepRow {
            depth: d,
            count: sub.len(),
            mass: report.optimal_mass,
            runtime_ms: start.elapsed().as_millis() as u64,
        });
    }
    let classification = classify_masses(&rows.iter().map(|r| r.mass).collect::<Vec<_>>());
    let growth_exponent = fit_growth_exponent(&rows);
    Ok(SweepRecord { rows, classification, growth_exponent, dropped_infinite: dropped })
}

/// The embedding-gap sweep: same engine as `majorant_diagnostic` with the
/// filter run at level H1. A bounded mass sequence bounds the best
/// discretized H2(0) for the inequality |B| ≥ e^{−H2} off the e^{−H1}
/// neighborhood of the zeros.
pub fn wep_gap(zs: &ZeroSet, h1: &HarmonicFn, opts: &SweepOptions) -> Result<SweepRecord> {
    majorant_diagnostic(zs, h1, opts)
}

// ---------------------------------------------------------------------------
// corona data
// ---------------------------------------------------------------------------

/// Constraints −log(Σ_i |B_i(z)| + |B(z)|) ≤ H(z) over a grid, from witness
/// zero sets; grid points where every factor vanishes are dropped.
pub fn corona_data(
    lambda_b: &ZeroSet,
    witnesses: &[ZeroSet],
    grid: &[DiskPoint],
) -> Result<(ConstraintSet, usize)> {
    if witnesses.is_empty() {
        return Err(Error::InvalidParameter("need at least one witness".into()));
    }
    let mut out = ConstraintSet::empty();
    let mut dropped = 0usize;
    for z in grid {
        let mut sum = log_modulus(lambda_b, *z).exp();
        for w in witnesses {
            sum += log_modulus(w, *z).exp();
        }
        if sum <= 0.0 {
            dropped += 1;
            continue;
        }
        out.push(*z, (-sum.ln()).max(0.0))?;
    }
    Ok((out, dropped))
}

// ---------------------------------------------------------------------------
// nearby-good-point search and the transfer inequality
// ---------------------------------------------------------------------------

/// Find z̃ with ρ(z̃, Λ) ≥ e^{−H(z̃)} and ρ(z̃, z) ≤ e^{−H(z)/C0}, by scanning
/// a deterministic spiral of candidate centers inside the search disk.
/// Requires e^{H(z)} ≥ max(C0, #(Λ ∩ D_ρ(z, 1/2))) counted with multiplicity.
pub fn lemma4_search(
    zs: &ZeroSet,
    h: &HarmonicFn,
    z: DiskPoint,
    c0: f64,
) -> Result<DiskPoint> {
    if c0 < 1.0 {
        return Err(Error::InvalidParameter("C0 must be at least 1".into()));
    }
    let hz = h.eval(z);
    let half_count: u64 = zs
        .entries()
        .iter()
        .filter(|(lam, _)| pseudo_dist(*lam, z) <= 0.5)
        .map(|(_, m)| *m as u64)
        .sum();
    let needed = c0.max(half_count as f64);
    if hz < needed.ln() {
        return Err(Error::InvalidParameter(format!(
            "hypothesis violated: e^H = e^{hz:.3} < max(C0, local count) = {needed}"
        )));
    }
    let ok = |cand: DiskPoint| -> bool {
        let rho = zs.dist_to(cand);
        rho > 0.0 && -rho.ln() <= h.eval(cand)
    };
    if ok(z) {
        return Ok(z);
    }
    let t = (-hz / c0).exp();
    let n_c = ((1.5 * hz).exp().ceil() as usize).clamp(64, 4096);
    const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;
    for i in 0..n_c {
        let r = t * (((i + 1) as f64) / n_c as f64).sqrt();
        let theta = GOLDEN_ANGLE * i as f64;
        let w = DiskPoint::new_clamped(r * theta.cos(), r * theta.sin());
        let cand = mobius(z, w);
        if ok(cand) {
            return Ok(cand);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no zero-free candidate disk among {n_c} centers within ρ ≤ {t:.3e} of z"
    )))
}

#[derive(Debug, Clone)]
pub struct TransferSample {
    pub z: DiskPoint,
    pub z_tilde: DiskPoint,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct TransferReport {
    pub samples: Vec<TransferSample>,
    pub max_ratio: f64,
    pub skipped: usize,
}

/// Evaluate both sides of the transfer inequality
/// log|B(z)|⁻¹ ≤ C1 (log|B(z̃)|⁻¹ + H_Λ(z̃)) over the sample shell
/// C0⁻¹ ≥ ρ(z, Λ) ≥ e^{−C·H(z)} and report the empirical ratios.
pub fn theorem3_transfer_check(
    zs: &ZeroSet,
    h: &HarmonicFn,
    c: f64,
    samples: &[DiskPoint],
) -> Result<TransferReport> {
    if c <= 1.0 {
        return Err(Error::InvalidParameter("C must exceed 1".into()));
    }
    let c0 = constants::LEMMA4_C0;
    let mut out = TransferReport { samples: Vec::new(), max_ratio: 0.0, skipped: 0 };
    for &z in samples {
        let rho = zs.dist_to(z);
        let hz = h.eval(z);
        let in_shell = rho <= 1.0 / c0 && rho > 0.0 && -rho.ln() <= c * hz;
        let half_count: u64 = zs
            .entries()
            .iter()
            .filter(|(lam, _)| pseudo_dist(*lam, z) <= 0.5)
            .map(|(_, m)| *m as u64)
            .sum();
        let hypothesis = hz >= c0.max(half_count as f64).ln();
        if !(in_shell && hypothesis) {
            out.skipped += 1;
            continue;
        }
        let zt = lemma4_search(zs, h, z, c0)?;
        let lhs = -log_modulus(zs, z);
        let rhs = -log_modulus(zs, zt) + h_lambda(zs, zt);
        let ratio = if zs.is_empty() || rhs <= 0.0 { 1.0 } else { lhs / rhs };
        out.max_ratio = out.max_ratio.max(ratio);
        out.samples.push(TransferSample { z, z_tilde: zt, lhs, rhs, ratio });
    }
    if out.samples.is_empty() && zs.is_empty() {
        out.max_ratio = 1.0;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// per-square count hypothesis and the explicit majorant
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Theorem4Report {
    /// Per occupied square: (level, sector, N(Q)·H(z(Q)), H1(z(Q))).
    pub square_checks: Vec<(u32, u64, f64, f64)>,
    pub hypothesis_holds: bool,
    /// Σ N(Q) H(z(Q)) l(Q) over occupied squares.
    pub corollary_sum: f64,
    /// Outcome of checking C1·H_Λ + C3·H1 ≥ −log|B| on the filtered sample;
    /// `None` when the hypothesis fails and no candidate is built.
    pub majorant_verified: Option<bool>,
    pub min_margin: f64,
    pub sample_size: usize,
}

/// Check N(Q)·H(z(Q)) ≤ H1(z(Q)) on every occupied square up to `depth`,
/// accumulate the weighted count sum, and when the hypothesis holds verify
/// that the explicit candidate C1·H_Λ + C3·H1 dominates −log|B| on the
/// filtered sample.
pub fn theorem4_check(
    zs: &ZeroSet,
    h: &HarmonicFn,
    h1: &HarmonicFn,
    depth: u32,
    per_square: usize,
    seed: u64,
) -> Result<Theorem4Report> {
    let census = crate::blaschke::census(zs);
    let mut square_checks = Vec::new();
    let mut hypothesis_holds = true;
    let mut corollary_sum = 0.0;
    for (q, n) in census.occupied() {
        if q.level() > depth {
            continue;
        }
        let zc = q.center();
        let lhs = n as f64 * h.eval(zc);
        let rhs = h1.eval(zc);
        if lhs > rhs {
            hypothesis_holds = false;
        }
        corollary_sum += n as f64 * h.eval(zc) * q.side();
        square_checks.push((q.level(), q.sector(), lhs, rhs));
    }

    if !hypothesis_holds {
        return Ok(Theorem4Report {
            square_checks,
            hypothesis_holds,
            corollary_sum,
            majorant_verified: None,
            min_margin: f64::NAN,
            sample_size: 0,
        });
    }

    let sample = sample_target_set(zs, h, depth, per_square, seed);
    let mut verified = true;
    let mut min_margin = f64::INFINITY;
    let mut n_pts = 0usize;
    for p in &sample.points {
        if !p.neg_log_b.is_finite() {
            continue;
        }
        n_pts += 1;
        let cand = constants::THM4_C1 * h_lambda(zs, p.z) + constants::THM4_C3 * h1.eval(p.z);
        let margin = cand - p.neg_log_b;
        min_margin = min_margin.min(margin);
        if margin < 0.0 {
            verified = false;
        }
    }
    if n_pts == 0 {
        min_margin = f64::INFINITY;
    }
    Ok(Theorem4Report {
        square_checks,
        hypothesis_holds,
        corollary_sum,
        majorant_verified: Some(verified),
        min_margin,
        sample_size: n_pts,
    })
}
