//! Zero sets with multiplicities, the log-modulus of the associated Blaschke
//! product, per-square zero counts, and the interpolation criteria.
//!
//! Products are only ever evaluated through their log-modulus; unimodular
//! phase factors are dropped.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypgeo::{pseudo_dist, whitney_index, whitney_neighbors, DiskPoint, WhitneySquare};

/// Finite zero divisor: disc points with positive integer multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    entries: Vec<(DiskPoint, u32)>,
}

#[derive(Serialize, Deserialize)]
struct ZeroEntryJson {
    re: f64,
    im: f64,
    #[serde(default = "default_mult")]
    mult: u32,
}

fn default_mult() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
struct ZeroSetJson {
    zeros: Vec<ZeroEntryJson>,
}

impl ZeroSet {
    pub fn new(entries: Vec<(DiskPoint, u32)>) -> Result<Self> {
        for (i, (_, m)) in entries.iter().enumerate() {
            if *m < 1 {
                return Err(Error::InvalidParameter(format!(
                    "zero {i} has multiplicity 0"
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn empty() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(DiskPoint, u32)] {
        &self.entries
    }

    pub fn points(&self) -> impl Iterator<Item = &DiskPoint> {
        self.entries.iter().map(|(z, _)| z)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|(_, m)| *m as u64).sum()
    }

    /// Minimum pseudohyperbolic distance from z to the zero set.
    /// Convention: ρ(z, ∅) = 1.
    pub fn dist_to(&self, z: DiskPoint) -> f64 {
        let mut d = 1.0f64;
        for (lam, _) in &self.entries {
            d = d.min(pseudo_dist(z, *lam));
        }
        d
    }

    pub fn to_json_string(&self) -> String {
        let j = ZeroSetJson {
            zeros: self
                .entries
                .iter()
                .map(|(z, m)| ZeroEntryJson { re: z.re(), im: z.im(), mult: *m })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("zero set serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: ZeroSetJson = serde_json::from_str(s)?;
        let mut entries = Vec::with_capacity(j.zeros.len());
        for e in j.zeros {
            entries.push((DiskPoint::new(e.re, e.im)?, e.mult));
        }
        Self::new(entries)
    }
}

/// Σ_j N_j (1 − |λ_j|).
pub fn blaschke_sum(zs: &ZeroSet) -> f64 {
    zs.entries.iter().map(|(z, m)| *m as f64 * (1.0 - z.abs())).sum()
}

/// log |B(z)| = Σ_k N_k log ρ(z, λ_k) ∈ [−∞, 0]. Returns −∞ exactly when z
/// hits a zero. Accumulation stays in log-space.
pub fn log_modulus(zs: &ZeroSet, z: DiskPoint) -> f64 {
    let mut acc = 0.0f64;
    for (lam, m) in &zs.entries {
        let rho = pseudo_dist(z, *lam);
        if rho == 0.0 {
            return f64::NEG_INFINITY;
        }
        acc += *m as f64 * rho.ln();
    }
    acc
}

/// Carleson interpolation quantity Π_{j≠k} ρ(λ_k, λ_j)^{N_j} ∈ [0, 1].
#[derive(Debug, Clone, Copy)]
pub struct CarlesonQuantity {
    pub value: f64,
    /// Set when λ_k itself has multiplicity > 1; the value is then 0 by
    /// convention (such a set is never an interpolating sequence).
    pub multiple_zero: bool,
}

pub fn carleson_quantity(zs: &ZeroSet, k: usize) -> Result<CarlesonQuantity> {
    let (lam_k, mult_k) = *zs
        .entries
        .get(k)
        .ok_or_else(|| Error::InvalidParameter(format!("zero index {k} out of range")))?;
    if mult_k > 1 {
        return Ok(CarlesonQuantity { value: 0.0, multiple_zero: true });
    }
    let mut log_acc = 0.0f64;
    for (j, (lam, m)) in zs.entries.iter().enumerate() {
        if j == k {
            continue;
        }
        let rho = pseudo_dist(lam_k, *lam);
        if rho == 0.0 {
            return Ok(CarlesonQuantity { value: 0.0, multiple_zero: true });
        }
        log_acc += *m as f64 * rho.ln();
    }
    Ok(CarlesonQuantity { value: log_acc.exp(), multiple_zero: false })
}

/// Per-point outcome of the interpolation criterion
/// (1−|λ_k|²)|B′(λ_k)| ≥ e^{−H(λ_k)}.
#[derive(Debug, Clone)]
pub struct InterpPointReport {
    pub index: usize,
    pub carleson: f64,
    pub threshold: f64,
    /// log carleson + H(λ_k); nonnegative iff the point passes.
    pub margin: f64,
    pub passes: bool,
}

/// Check the interpolation criterion against a harmonic weight. Fails
/// globally when any multiplicity exceeds 1.
pub fn nevanlinna_interp_check<F>(zs: &ZeroSet, h: F) -> Result<Vec<InterpPointReport>>
where
    F: Fn(DiskPoint) -> f64,
{
    for (i, (_, m)) in zs.entries.iter().enumerate() {
        if *m > 1 {
            return Err(Error::MultipleZero { index: i, mult: *m });
        }
    }
    let mut out = Vec::with_capacity(zs.len());
    for k in 0..zs.len() {
        let c = carleson_quantity(zs, k)?;
        let hv = h(zs.entries[k].0);
        let threshold = (-hv).exp();
        let margin = c.value.ln() + hv;
        out.push(InterpPointReport {
            index: k,
            carleson: c.value,
            threshold,
            margin,
            passes: c.value >= threshold,
        });
    }
    Ok(out)
}

/// Zero counts per square: N(Q) counts zeros in Q, M(Q) counts zeros in the
/// neighborhood 𝓤(Q). Zeros with |λ| < 1/2 are tallied in the central cell.
#[derive(Debug, Clone, Default)]
pub struct SquareCensus {
    per_square: BTreeMap<WhitneySquare, CellCount>,
    central_n: u64,
    central_m: u64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CellCount {
    pub n: u64,
    pub m: u64,
}

impl SquareCensus {
    pub fn n(&self, q: &WhitneySquare) -> u64 {
        self.per_square.get(q).map_or(0, |c| c.n)
    }

    pub fn m(&self, q: &WhitneySquare) -> u64 {
        self.per_square.get(q).map_or(0, |c| c.m)
    }

    pub fn central_n(&self) -> u64 {
        self.central_n
    }

    pub fn central_m(&self) -> u64 {
        self.central_m
    }

    /// Squares with N > 0 or M > 0, in (level, sector) order.
    pub fn squares(&self) -> impl Iterator<Item = (&WhitneySquare, &CellCount)> {
        self.per_square.iter()
    }

    /// Squares with N(Q) > 0.
    pub fn occupied(&self) -> impl Iterator<Item = (&WhitneySquare, u64)> {
        self.per_square.iter().filter(|(_, c)| c.n > 0).map(|(q, c)| (q, c.n))
    }

    pub fn total_n(&self) -> u64 {
        self.per_square.values().map(|c| c.n).sum::<u64>() + self.central_n
    }
}

pub fn census(zs: &ZeroSet) -> SquareCensus {
    let mut out = SquareCensus::default();
    let mut occupied: BTreeMap<WhitneySquare, u64> = BTreeMap::new();
    for (z, m) in &zs.entries {
        match whitney_index(z) {
            Ok(q) => *occupied.entry(q).or_insert(0) += *m as u64,
            Err(_) => out.central_n += *m as u64,
        }
    }
    for (q, n) in &occupied {
        out.per_square.entry(*q).or_default().n = *n;
        let nb = whitney_neighbors(q);
        for s in &nb.squares {
            out.per_square.entry(*s).or_default().m += *n;
        }
        if nb.touches_central {
            out.central_m += *n;
        }
    }
    if out.central_n > 0 {
        // the central cell's closure touches every level-1 square
        for j in 0..2u64 {
            let q = WhitneySquare::new(1, j).unwrap();
            out.per_square.entry(q).or_default().m += out.central_n;
        }
        out.central_m += out.central_n;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    fn zs(entries: &[(f64, f64, u32)]) -> ZeroSet {
        ZeroSet::new(entries.iter().map(|&(re, im, m)| (p(re, im), m)).collect()).unwrap()
    }

    #[test]
    fn blaschke_sum_hand_values() {
        assert_eq!(blaschke_sum(&ZeroSet::empty()), 0.0);
        assert!((blaschke_sum(&zs(&[(0.5, 0.0, 1)])) - 0.5).abs() < 1e-15);
        assert!((blaschke_sum(&zs(&[(0.5, 0.0, 2), (0.9, 0.0, 3)])) - 1.3).abs() < 1e-15);
    }

    #[test]
    fn log_modulus_hand_values() {
        let single = zs(&[(0.5, 0.0, 1)]);
        assert!((log_modulus(&single, DiskPoint::origin()) - 0.5f64.ln()).abs() < 1e-15);
        let double = zs(&[(0.5, 0.0, 2)]);
        assert!((log_modulus(&double, DiskPoint::origin()) - 2.0 * 0.5f64.ln()).abs() < 1e-15);
        let two = zs(&[(0.5, 0.0, 1), (-0.5, 0.0, 1)]);
        assert_eq!(log_modulus(&two, p(0.5, 0.0)), f64::NEG_INFINITY);
    }

    #[test]
    fn log_modulus_single_zero_is_log_distance() {
        let a = p(0.3, 0.45);
        let set = ZeroSet::new(vec![(a, 1)]).unwrap();
        let mut st = crate::sampling::SplitMix64::new(3);
        for _ in 0..100 {
            let z = DiskPoint::from_polar(st.next_f64() * 0.95, st.next_f64() * 6.28).unwrap();
            let lhs = log_modulus(&set, z);
            let rhs = pseudo_dist(z, a).ln();
            assert!((lhs - rhs).abs() < 1e-13);
        }
    }

    #[test]
    fn log_modulus_decreases_when_zero_added() {
        let base = zs(&[(0.5, 0.0, 1)]);
        let more = zs(&[(0.5, 0.0, 1), (0.2, 0.3, 1)]);
        let mut st = crate::sampling::SplitMix64::new(5);
        for _ in 0..100 {
            let z = DiskPoint::from_polar(st.next_f64() * 0.9, st.next_f64() * 6.28).unwrap();
            assert!(log_modulus(&more, z) < log_modulus(&base, z));
        }
    }

    #[test]
    fn carleson_hand_values() {
        let two = zs(&[(0.5, 0.0, 1), (-0.5, 0.0, 1)]);
        let c = carleson_quantity(&two, 0).unwrap();
        assert!((c.value - 0.8).abs() < 1e-15);
        assert!(!c.multiple_zero);

        let single = zs(&[(0.5, 0.0, 1)]);
        let c = carleson_quantity(&single, 0).unwrap();
        assert_eq!(c.value, 1.0);

        let doubled = zs(&[(0.5, 0.0, 2), (-0.5, 0.0, 1)]);
        let c = carleson_quantity(&doubled, 0).unwrap();
        assert_eq!(c.value, 0.0);
        assert!(c.multiple_zero);

        // repeated point with multiplicity split across entries
        let repeated = zs(&[(0.5, 0.0, 1), (0.5, 0.0, 1)]);
        let c = carleson_quantity(&repeated, 0).unwrap();
        assert!(c.multiple_zero);
    }

    #[test]
    fn carleson_in_unit_interval() {
        let set = zs(&[(0.5, 0.0, 1), (-0.3, 0.2, 2), (0.1, -0.6, 1)]);
        for k in 0..set.len() {
            let c = carleson_quantity(&set, k).unwrap().value;
            assert!((0.0..=1.0).contains(&c));
            assert!(c < 1.0);
        }
    }

    #[test]
    fn interp_check_hand_values() {
        let two = zs(&[(0.5, 0.0, 1), (-0.5, 0.0, 1)]);
        let rep = nevanlinna_interp_check(&two, |_| 1.0).unwrap();
        assert!(rep.iter().all(|r| r.passes)); // 0.8 ≥ e^{-1}
        let rep = nevanlinna_interp_check(&two, |_| 0.1).unwrap();
        assert!(rep.iter().all(|r| !r.passes)); // 0.8 < e^{-0.1}
        let single = zs(&[(0.5, 0.0, 1)]);
        let rep = nevanlinna_interp_check(&single, |_| 0.0).unwrap();
        assert!(rep[0].passes); // empty product = 1 ≥ 1

        let multi = zs(&[(0.5, 0.0, 2)]);
        assert!(matches!(
            nevanlinna_interp_check(&multi, |_| 1.0),
            Err(Error::MultipleZero { .. })
        ));
    }

    #[test]
    fn census_single_zero() {
        let set = zs(&[(0.9, 0.0, 1)]);
        let c = census(&set);
        let q = WhitneySquare::new(4, 0).unwrap();
        assert_eq!(c.n(&q), 1);
        assert_eq!(c.m(&q), 1);
        let nb = whitney_neighbors(&q);
        for s in &nb.squares {
            assert_eq!(c.m(s), 1);
        }
        assert_eq!(c.squares().count(), nb.squares.len());
    }

    #[test]
    fn census_multiplicity_and_empty() {
        let c = census(&ZeroSet::empty());
        assert_eq!(c.squares().count(), 0);
        assert_eq!(c.total_n(), 0);

        let set = zs(&[(0.9, 0.0, 3)]);
        let c = census(&set);
        assert_eq!(c.n(&WhitneySquare::new(4, 0).unwrap()), 3);
    }

    #[test]
    fn census_conserves_total_multiplicity() {
        let mut st = crate::sampling::SplitMix64::new(17);
        for _ in 0..100 {
            let n = 1 + (st.next_u64() % 12) as usize;
            let mut entries = Vec::new();
            for _ in 0..n {
                let r = st.next_f64() * 0.999;
                let theta = st.next_f64() * std::f64::consts::TAU;
                let m = 1 + (st.next_u64() % 4) as u32;
                entries.push((DiskPoint::from_polar(r, theta).unwrap(), m));
            }
            let set = ZeroSet::new(entries).unwrap();
            let c = census(&set);
            assert_eq!(c.total_n(), set.total_multiplicity());
        }
    }

    #[test]
    fn zero_set_json_round_trip() {
        let set = zs(&[(0.5, 0.25, 2), (-0.125, 0.0, 1)]);
        let s = set.to_json_string();
        let back = ZeroSet::from_json_str(&s).unwrap();
        assert_eq!(set, back);
        // multiplicity defaults to 1 when absent
        let parsed =
            ZeroSet::from_json_str(r#"{"zeros": [{"re": 0.5, "im": 0.0}]}"#).unwrap();
        assert_eq!(parsed.entries()[0].1, 1);
        assert!(ZeroSet::from_json_str(r#"{"zeros": [{"re": 1.5, "im": 0.0}]}"#).is_err());
    }
}
