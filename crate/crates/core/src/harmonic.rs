//! Poisson-kernel machinery: positive harmonic functions represented by
//! positive boundary measures, harmonic measure of arcs in closed form, the
//! square functions h_Q, the shadow sum H_Λ, sharp Harnack bounds, and the
//! inductive majorant builder.

use serde::{Deserialize, Serialize};

use crate::blaschke::ZeroSet;
use crate::error::{Error, Result};
use crate::hypgeo::{privalov_shadow, BoundaryArc, DiskPoint, WhitneySquare, TAU};

mod lemma3;
pub use lemma3::{lemma3_build, Lemma3Certificate, Lemma3Output, StageRecord};

/// Poisson kernel P(z, θ) = (1 − |z|²) / |e^{iθ} − z|².
pub fn poisson_kernel(z: DiskPoint, theta: f64) -> f64 {
    let dre = theta.cos() - z.re();
    let dim = theta.sin() - z.im();
    (1.0 - z.abs_sq()) / (dre * dre + dim * dim)
}

/// Harmonic measure ω(z, I) = ∫_I P(z, θ) dθ/2π ∈ [0, 1], by the closed form:
/// the automorphism w ↦ (w − z)/(1 − z̄w) maps the arc to an arc whose
/// normalized length is the value.
pub fn harmonic_measure(z: DiskPoint, arc: &BoundaryArc) -> f64 {
    if arc.is_full_circle() {
        return 1.0;
    }
    let img_arg = |theta: f64| -> f64 {
        let (s, c) = theta.sin_cos();
        // (e^{iθ} − z) / (1 − z̄ e^{iθ})
        let nre = c - z.re();
        let nim = s - z.im();
        let dre = 1.0 - (z.re() * c + z.im() * s);
        let dim = -(z.re() * s - z.im() * c);
        let den = dre * dre + dim * dim;
        let wre = (nre * dre + nim * dim) / den;
        let wim = (nim * dre - nre * dim) / den;
        wim.atan2(wre)
    };
    let a1 = img_arg(arc.lo());
    let a2 = img_arg(arc.hi());
    let delta = (a2 - a1).rem_euclid(TAU);
    delta / TAU
}

/// h_Q(z): harmonic measure of the radial projection of Q.
pub fn h_q(q: &WhitneySquare, z: DiskPoint) -> f64 {
    harmonic_measure(z, &q.arc())
}

/// H_Λ(z) = Σ_k N_k ∫_{I_k} P(z, θ) |dθ|, the unnormalized Poisson integral
/// over the Privalov shadows. Note the arc-length measure: this equals
/// 2π · Σ_k N_k ω(z, I_k).
pub fn h_lambda(zs: &ZeroSet, z: DiskPoint) -> f64 {
    let mut acc = 0.0;
    for (lam, m) in zs.entries() {
        acc += *m as f64 * TAU * harmonic_measure(z, &privalov_shadow(lam));
    }
    acc
}

/// The representing measure of H_Λ: each shadow carries density 2π·N_k.
pub fn h_lambda_measure(zs: &ZeroSet) -> BoundaryMeasure {
    let mut mu = BoundaryMeasure::zero();
    for (lam, m) in zs.entries() {
        mu.push_arc(privalov_shadow(lam), TAU * *m as f64);
    }
    mu
}

/// Finite positive measure on the circle: atoms plus uniform-on-arc pieces.
/// An arc piece of density d contributes d·|I|/2π to the total mass, i.e. it
/// integrates against dθ/2π.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundaryMeasure {
    atoms: Vec<(f64, f64)>,
    arcs: Vec<(BoundaryArc, f64)>,
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    theta: f64,
    mass: f64,
}

#[derive(Serialize, Deserialize)]
struct ArcJson {
    lo: f64,
    hi: f64,
    density: f64,
}

#[derive(Serialize, Deserialize)]
struct MeasureJson {
    atoms: Vec<AtomJson>,
    arcs: Vec<ArcJson>,
}

impl BoundaryMeasure {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn push_atom(&mut self, theta: f64, mass: f64) {
        assert!(mass >= 0.0, "atom mass must be nonnegative");
        self.atoms.push((theta.rem_euclid(TAU), mass));
    }

    pub fn push_arc(&mut self, arc: BoundaryArc, density: f64) {
        assert!(density >= 0.0, "arc density must be nonnegative");
        self.arcs.push((arc, density));
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn arcs(&self) -> &[(BoundaryArc, f64)] {
        &self.arcs
    }

    pub fn total_mass(&self) -> f64 {
        let a: f64 = self.atoms.iter().map(|(_, m)| m).sum();
        let b: f64 = self.arcs.iter().map(|(arc, d)| d * arc.length() / TAU).sum();
        a + b
    }

    /// Poisson integral of the measure at z.
    pub fn eval(&self, z: DiskPoint) -> f64 {
        let mut acc = 0.0;
        for (theta, mass) in &self.atoms {
            acc += mass * poisson_kernel(z, *theta);
        }
        for (arc, density) in &self.arcs {
            acc += density * harmonic_measure(z, arc);
        }
        acc
    }

    pub fn scale(&self, s: f64) -> Self {
        assert!(s >= 0.0);
        Self {
            atoms: self.atoms.iter().map(|&(t, m)| (t, m * s)).collect(),
            arcs: self.arcs.iter().map(|&(a, d)| (a, d * s)).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        let j = MeasureJson {
            atoms: self.atoms.iter().map(|&(theta, mass)| AtomJson { theta, mass }).collect(),
            arcs: self
                .arcs
                .iter()
                .map(|&(arc, density)| ArcJson { lo: arc.lo(), hi: arc.hi(), density })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("measure serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: MeasureJson = serde_json::from_str(s)?;
        let mut mu = Self::zero();
        for a in j.atoms {
            if a.mass < 0.0 {
                return Err(Error::InvalidParameter("negative atom mass".into()));
            }
            mu.push_atom(a.theta, a.mass);
        }
        for a in j.arcs {
            if a.density < 0.0 {
                return Err(Error::InvalidParameter("negative arc density".into()));
            }
            mu.push_arc(BoundaryArc::new(a.lo, a.hi)?, a.density);
        }
        Ok(mu)
    }
}

/// Positive harmonic function carried by its boundary measure. The value at
/// the origin equals the total mass.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicFn {
    measure: BoundaryMeasure,
}

impl HarmonicFn {
    pub fn from_measure(measure: BoundaryMeasure) -> Self {
        Self { measure }
    }

    /// The constant function c (uniform density c on the full circle).
    pub fn constant(c: f64) -> Self {
        let mut mu = BoundaryMeasure::zero();
        mu.push_arc(BoundaryArc::full_circle(), c);
        Self { measure: mu }
    }

    /// Poisson kernel of a single boundary atom, scaled by `mass`.
    pub fn atom(theta: f64, mass: f64) -> Self {
        let mut mu = BoundaryMeasure::zero();
        mu.push_atom(theta, mass);
        Self { measure: mu }
    }

    pub fn measure(&self) -> &BoundaryMeasure {
        &self.measure
    }

    pub fn eval(&self, z: DiskPoint) -> f64 {
        self.measure.eval(z)
    }

    pub fn mass_at_origin(&self) -> f64 {
        self.measure.total_mass()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { measure: self.measure.scale(s) }
    }
}

/// Sharp Harnack interval for positive harmonic functions:
/// H(z)/H(w) ∈ [(1−r)/(1+r), (1+r)/(1−r)] with r = ρ(z, w).
pub fn harnack_interval(z: DiskPoint, w: DiskPoint) -> (f64, f64) {
    let r = crate::hypgeo::pseudo_dist(z, w);
    ((1.0 - r) / (1.0 + r), (1.0 + r) / (1.0 - r))
}

/// Per-square Harnack constant: minimum of (1−r)/(1+r) over sampled pairs of
/// the square, i.e. the sharp bound at the square's sampled pseudohyperbolic
/// diameter. Converges to a level-independent value as the level grows.
pub fn whitney_gamma(q: &WhitneySquare, grid: usize) -> f64 {
    let n = grid.max(2);
    let mut pts = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let u = i as f64 / (n - 1) as f64;
            let v = j as f64 / (n - 1) as f64;
            pts.push(q.point_at(u, v));
        }
    }
    let mut diam = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            diam = diam.max(crate::hypgeo::pseudo_dist(pts[i], pts[j]));
        }
    }
    (1.0 - diam) / (1.0 + diam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SplitMix64;

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    /// Adaptive Simpson quadrature, the independent oracle for closed-form
    /// harmonic measure.
    fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, m: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
        }
        fn rec<F: Fn(f64) -> f64>(
            f: &F,
            a: f64,
            b: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let left = simpson(f, a, 0.5 * (a + m), m);
            let right = simpson(f, m, 0.5 * (m + b), b);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, m, left, tol * 0.5, depth - 1)
                    + rec(f, m, b, right, tol * 0.5, depth - 1)
            }
        }
        let m = 0.5 * (a + b);
        rec(f, a, b, simpson(f, a, m, b), tol, 48)
    }

    fn quad_measure(z: DiskPoint, arc: &BoundaryArc) -> f64 {
        adaptive_simpson(&|t| poisson_kernel(z, t), arc.lo(), arc.hi(), 1e-13) / TAU
    }

    #[test]
    fn kernel_hand_values() {
        assert!((poisson_kernel(DiskPoint::origin(), 1.234) - 1.0).abs() < 1e-15);
        assert!((poisson_kernel(p(0.5, 0.0), 0.0) - 3.0).abs() < 1e-15);
        // conjugation symmetry
        let z = p(0.3, 0.4);
        let zc = p(0.3, -0.4);
        assert!((poisson_kernel(z, 0.7) - poisson_kernel(zc, -0.7)).abs() < 1e-14);
    }

    #[test]
    fn harmonic_measure_hand_values() {
        let arc = BoundaryArc::new(0.3, 1.1).unwrap();
        let v = harmonic_measure(DiskPoint::origin(), &arc);
        assert!((v - arc.length() / TAU).abs() < 1e-15);
        assert_eq!(harmonic_measure(p(0.4, -0.2), &BoundaryArc::full_circle()), 1.0);

        let upper = BoundaryArc::new(0.0, std::f64::consts::PI).unwrap();
        let v = harmonic_measure(p(0.5, 0.0), &upper);
        assert!(v > 0.0 && v < 1.0);
        assert!((v - quad_measure(p(0.5, 0.0), &upper)).abs() < 1e-10);
    }

    #[test]
    fn harmonic_measure_matches_quadrature() {
        let mut st = SplitMix64::new(99);
        for _ in 0..120 {
            let z = DiskPoint::from_polar(st.next_f64() * 0.97, st.next_f64() * TAU).unwrap();
            let lo = st.next_f64() * TAU;
            let len = 1e-3 + st.next_f64() * (TAU - 2e-3);
            let arc = BoundaryArc::new(lo, lo + len).unwrap();
            let closed = harmonic_measure(z, &arc);
            let quad = quad_measure(z, &arc);
            assert!(
                (closed - quad).abs() < 1e-8,
                "closed {closed} vs quadrature {quad}"
            );
        }
    }

    #[test]
    fn harmonic_measure_wraparound_arc() {
        let arc = BoundaryArc::new(-0.5, 0.5).unwrap();
        let z = p(0.3, 0.1);
        assert!((harmonic_measure(z, &arc) - quad_measure(z, &arc)).abs() < 1e-10);
    }

    #[test]
    fn h_q_arc_fraction_at_origin() {
        for k in 1..10 {
            let q = WhitneySquare::new(k, 0).unwrap();
            let v = h_q(&q, DiskPoint::origin());
            assert!((v - q.side()).abs() < 1e-14);
        }
    }

    #[test]
    fn h_lambda_hand_values() {
        let set = ZeroSet::new(vec![(p(0.5, 0.0), 1)]).unwrap();
        let v = h_lambda(&set, DiskPoint::origin());
        assert!((v - 4.0 * 0.25f64.asin()).abs() < 1e-12);
        assert_eq!(h_lambda(&ZeroSet::empty(), DiskPoint::origin()), 0.0);
        let dbl = ZeroSet::new(vec![(p(0.5, 0.0), 2)]).unwrap();
        assert!((h_lambda(&dbl, DiskPoint::origin()) - 2.0 * v).abs() < 1e-12);
        // measure representation agrees
        let mu = h_lambda_measure(&set);
        let z = p(0.2, -0.4);
        assert!((mu.eval(z) - h_lambda(&set, z)).abs() < 1e-12);
    }

    #[test]
    fn measure_mass_and_positivity() {
        let mut st = SplitMix64::new(7);
        for _ in 0..50 {
            let mut mu = BoundaryMeasure::zero();
            for _ in 0..(1 + st.next_u64() % 4) {
                mu.push_atom(st.next_f64() * TAU, st.next_f64() * 3.0);
            }
            for _ in 0..(st.next_u64() % 4) {
                let lo = st.next_f64() * TAU;
                let len = 0.01 + st.next_f64() * 5.0;
                mu.push_arc(BoundaryArc::new(lo, lo + len.min(TAU)).unwrap(), st.next_f64() * 2.0);
            }
            assert!((mu.eval(DiskPoint::origin()) - mu.total_mass()).abs() < 1e-12);
            for _ in 0..20 {
                let z = DiskPoint::from_polar(st.next_f64() * 0.98, st.next_f64() * TAU).unwrap();
                assert!(mu.eval(z) >= 0.0);
            }
        }
    }

    #[test]
    fn constant_harmonic_fn_is_constant() {
        let h = HarmonicFn::constant(2.5);
        let mut st = SplitMix64::new(13);
        for _ in 0..50 {
            let z = DiskPoint::from_polar(st.next_f64() * 0.99, st.next_f64() * TAU).unwrap();
            assert!((h.eval(z) - 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn harnack_hand_values() {
        let z = p(0.2, 0.1);
        assert_eq!(harnack_interval(z, z), (1.0, 1.0));
        // r = 1/3 → (0.5, 2)
        let (lo, hi) = harnack_interval(DiskPoint::origin(), p(1.0 / 3.0, 0.0));
        assert!((lo - 0.5).abs() < 1e-14 && (hi - 2.0).abs() < 1e-14);
    }

    #[test]
    fn harnack_bounds_hold_for_random_measures() {
        let mut st = SplitMix64::new(21);
        for _ in 0..100 {
            let mut mu = BoundaryMeasure::zero();
            for _ in 0..(1 + st.next_u64() % 3) {
                mu.push_atom(st.next_f64() * TAU, 0.1 + st.next_f64());
            }
            let lo_arc = st.next_f64() * TAU;
            mu.push_arc(
                BoundaryArc::new(lo_arc, lo_arc + 0.2 + st.next_f64()).unwrap(),
                st.next_f64(),
            );
            let z = DiskPoint::from_polar(st.next_f64() * 0.9, st.next_f64() * TAU).unwrap();
            let w = DiskPoint::from_polar(st.next_f64() * 0.9, st.next_f64() * TAU).unwrap();
            let (lo, hi) = harnack_interval(z, w);
            let ratio = mu.eval(z) / mu.eval(w);
            assert!(ratio >= lo - 1e-9 && ratio <= hi + 1e-9);
        }
    }

    #[test]
    fn mean_value_property() {
        let mut mu = BoundaryMeasure::zero();
        mu.push_atom(0.4, 1.3);
        mu.push_arc(BoundaryArc::new(2.0, 4.5).unwrap(), 0.7);
        let h = HarmonicFn::from_measure(mu);
        for r in [0.3, 0.9, 0.99] {
            let n = 1 << 12;
            let mut acc = 0.0;
            for i in 0..n {
                let theta = TAU * i as f64 / n as f64;
                acc += h.eval(DiskPoint::from_polar(r, theta).unwrap());
            }
            let avg = acc / n as f64;
            assert!(
                (avg - h.mass_at_origin()).abs() < 1e-8,
                "mean value off at r={r}: {avg} vs {}",
                h.mass_at_origin()
            );
        }
    }

    #[test]
    fn whitney_gamma_is_level_stable() {
        let g6 = whitney_gamma(&WhitneySquare::new(6, 3).unwrap(), 8);
        let g10 = whitney_gamma(&WhitneySquare::new(10, 77).unwrap(), 8);
        assert!(g6 > 0.0 && g6 < 1.0);
        assert!((g6 - g10).abs() / g6 < 0.05, "γ at levels 6/10: {g6} vs {g10}");
    }

    #[test]
    fn measure_json_round_trip() {
        let mut mu = BoundaryMeasure::zero();
        mu.push_atom(0.5, 2.0);
        mu.push_arc(BoundaryArc::new(1.0, 2.5).unwrap(), 0.25);
        let back = BoundaryMeasure::from_json_str(&mu.to_json_string()).unwrap();
        assert_eq!(mu, back);
    }
}
