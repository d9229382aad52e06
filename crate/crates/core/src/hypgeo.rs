//! Geometry of the unit disc: pseudohyperbolic metric, Möbius automorphisms,
//! pseudohyperbolic disks, the dyadic Whitney decomposition, boundary arcs and
//! Privalov shadows.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TAU: f64 = 2.0 * PI;

/// A point of the open unit disc.
///
/// Construction enforces |z| < 1; all operations on the type may assume it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    re: f64,
    im: f64,
}

impl DiskPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) || re * re + im * im >= 1.0 {
            return Err(Error::PointOutsideDisc { re, im });
        }
        Ok(Self { re, im })
    }

    /// Internal constructor for values known to lie in the disc (results of
    /// disc automorphisms). Clamps the rare last-ulp escape to the boundary.
    pub(crate) fn new_clamped(re: f64, im: f64) -> Self {
        let n = (re * re + im * im).sqrt();
        if n < 1.0 {
            Self { re, im }
        } else {
            let s = (1.0 - 1e-15) / n;
            Self { re: re * s, im: im * s }
        }
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) || !theta.is_finite() {
            return Err(Error::PointOutsideDisc {
                re: r * theta.cos(),
                im: r * theta.sin(),
            });
        }
        Ok(Self { re: r * theta.cos(), im: r * theta.sin() })
    }

    pub fn origin() -> Self {
        Self { re: 0.0, im: 0.0 }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn abs_sq(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(&self) -> f64 {
        self.abs_sq().sqrt()
    }

    /// Argument normalized to [0, 2π).
    pub fn arg(&self) -> f64 {
        let a = self.im.atan2(self.re);
        if a < 0.0 {
            let a = a + TAU;
            // atan2(-0.0, r) + 2π can round back to 2π
            if a >= TAU {
                0.0
            } else {
                a
            }
        } else {
            a
        }
    }

    pub fn is_origin(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

/// Pseudohyperbolic distance ρ(a, b) = |a − b| / |1 − b̄a| ∈ [0, 1).
pub fn pseudo_dist(a: DiskPoint, b: DiskPoint) -> f64 {
    let dre = a.re - b.re;
    let dim = a.im - b.im;
    let num = (dre * dre + dim * dim).sqrt();
    if num == 0.0 {
        return 0.0;
    }
    // 1 − b̄a = 1 − (b.re·a.re + b.im·a.im) − i(b.re·a.im − b.im·a.re)
    let dot = b.re * a.re + b.im * a.im;
    let cross = b.re * a.im - b.im * a.re;
    let dre2 = 1.0 - dot;
    let den = (dre2 * dre2 + cross * cross).sqrt();
    (num / den).min(1.0 - f64::EPSILON)
}

/// Disc automorphism z ↦ (a − z)/(1 − āz); maps a ↦ 0, 0 ↦ a, and is an
/// involution.
pub fn mobius(a: DiskPoint, z: DiskPoint) -> DiskPoint {
    let nre = a.re - z.re;
    let nim = a.im - z.im;
    // 1 − āz = (1 − Re āz) − i·Im āz, with āz = (dot) + i·(cross)
    let dot = a.re * z.re + a.im * z.im;
    let cross = a.re * z.im - a.im * z.re;
    let dre = 1.0 - dot;
    let dim = -cross;
    let den = dre * dre + dim * dim;
    DiskPoint::new_clamped((nre * dre + nim * dim) / den, (nim * dre - nre * dim) / den)
}

/// Euclidean description of a pseudohyperbolic disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanDisk {
    pub center_re: f64,
    pub center_im: f64,
    pub radius: f64,
}

/// Euclidean parameters of D_ρ(z0, t): center z0(1−t²)/(1−t²|z0|²), radius
/// t(1−|z0|²)/(1−t²|z0|²).
pub fn pseudo_disk(center: DiskPoint, t: f64) -> Result<EuclideanDisk> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "pseudo-disk radius must lie in (0,1), got {t}"
        )));
    }
    let a2 = center.abs_sq();
    let den = 1.0 - t * t * a2;
    Ok(EuclideanDisk {
        center_re: center.re * (1.0 - t * t) / den,
        center_im: center.im * (1.0 - t * t) / den,
        radius: t * (1.0 - a2) / den,
    })
}

/// Arc of the unit circle given by angles theta_lo < theta_hi ≤ theta_lo + 2π.
///
/// Angles are stored with theta_lo ∈ [0, 2π); arcs crossing angle 0 keep
/// theta_hi > 2π and are normalized on query.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryArc {
    theta_lo: f64,
    theta_hi: f64,
}

impl BoundaryArc {
    pub fn new(theta_lo: f64, theta_hi: f64) -> Result<Self> {
        if !(theta_lo.is_finite() && theta_hi.is_finite())
            || theta_hi <= theta_lo
            || theta_hi - theta_lo > TAU + 1e-12
        {
            return Err(Error::InvalidArc { lo: theta_lo, hi: theta_hi });
        }
        let len = (theta_hi - theta_lo).min(TAU);
        let lo = theta_lo.rem_euclid(TAU);
        Ok(Self { theta_lo: lo, theta_hi: lo + len })
    }

    pub fn full_circle() -> Self {
        Self { theta_lo: 0.0, theta_hi: TAU }
    }

    pub fn lo(&self) -> f64 {
        self.theta_lo
    }

    pub fn hi(&self) -> f64 {
        self.theta_hi
    }

    pub fn length(&self) -> f64 {
        self.theta_hi - self.theta_lo
    }

    pub fn midpoint(&self) -> f64 {
        (0.5 * (self.theta_lo + self.theta_hi)).rem_euclid(TAU)
    }

    pub fn is_full_circle(&self) -> bool {
        self.length() >= TAU
    }

    pub fn contains(&self, theta: f64) -> bool {
        if self.is_full_circle() {
            return true;
        }
        let t = theta.rem_euclid(TAU);
        if t >= self.theta_lo {
            t < self.theta_hi
        } else {
            t + TAU < self.theta_hi
        }
    }
}

/// Maximum supported dyadic level; beyond this 1 − |z| is not resolvable in
/// f64 anyway.
pub const MAX_LEVEL: u32 = 60;

/// Dyadic Whitney square Q_{k,j}: 2^{−k} ≤ 1 − |z| < 2^{−k+1} and
/// j·2π·2^{−k} ≤ arg z < (j+1)·2π·2^{−k}, with k ≥ 1 and 0 ≤ j < 2^k.
///
/// The set {|z| < 1/2} is the single central cell and is not a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WhitneySquare {
    level: u32,
    sector: u64,
}

impl WhitneySquare {
    pub fn new(level: u32, sector: u64) -> Result<Self> {
        if level < 1 || level > MAX_LEVEL || sector >= (1u64 << level) {
            return Err(Error::InvalidParameter(format!(
                "invalid Whitney square (k={level}, j={sector})"
            )));
        }
        Ok(Self { level, sector })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn sector(&self) -> u64 {
        self.sector
    }

    /// Side length l(Q) = 2^{−k}.
    pub fn side(&self) -> f64 {
        (2.0f64).powi(-(self.level as i32))
    }

    pub fn theta_width(&self) -> f64 {
        TAU * self.side()
    }

    pub fn theta_lo(&self) -> f64 {
        self.sector as f64 * self.theta_width()
    }

    /// Center z(Q): radius 1 − 1.5·l(Q), mid angle.
    pub fn center(&self) -> DiskPoint {
        let l = self.side();
        let r = 1.0 - 1.5 * l;
        let theta = (self.sector as f64 + 0.5) * self.theta_width();
        DiskPoint::new_clamped(r * theta.cos(), r * theta.sin())
    }

    /// Radial projection I(Q) onto the boundary circle.
    pub fn arc(&self) -> BoundaryArc {
        let w = self.theta_width();
        let lo = self.sector as f64 * w;
        BoundaryArc { theta_lo: lo, theta_hi: lo + w }
    }

    pub fn contains(&self, z: &DiskPoint) -> bool {
        let d = 1.0 - z.abs();
        let l = self.side();
        if !(d >= l && d < 2.0 * l) {
            return false;
        }
        let w = self.theta_width();
        let a = z.arg();
        a >= self.sector as f64 * w && a < (self.sector as f64 + 1.0) * w
    }

    /// Point of the closed square at relative radial/angular coordinates
    /// (u, v) ∈ [0,1]²; u = 0 is the inner edge (1−|z| = 2l), v = 0 the lower
    /// angular edge.
    pub fn point_at(&self, u: f64, v: f64) -> DiskPoint {
        let l = self.side();
        let d = l * (2.0 - u); // 1−|z| ranges over [l, 2l]
        let theta = (self.sector as f64 + v) * self.theta_width();
        DiskPoint::new_clamped((1.0 - d) * theta.cos(), (1.0 - d) * theta.sin())
    }
}

/// Locate the dyadic square containing z. Fails with `CentralCell` for
/// |z| < 1/2 (the convention 1 − |z| = 2^{−k} maps to level k).
pub fn whitney_index(z: &DiskPoint) -> Result<WhitneySquare> {
    let d = 1.0 - z.abs();
    if d > 0.5 {
        return Err(Error::CentralCell);
    }
    let mut k = (-d.log2()).ceil() as i64;
    // guard against rounding on exact powers of two
    while k > 1 && (2.0f64).powi(-(k as i32 - 1)) <= d {
        k -= 1;
    }
    while (2.0f64).powi(-(k as i32)) > d {
        k += 1;
    }
    if k < 1 {
        return Err(Error::CentralCell);
    }
    if k > MAX_LEVEL as i64 {
        return Err(Error::DepthExceeded);
    }
    let k = k as u32;
    let w = TAU * (2.0f64).powi(-(k as i32));
    let j = ((z.arg() / w) as u64).min((1u64 << k) - 1);
    WhitneySquare::new(k, j)
}

/// The neighborhood 𝓤(Q): every square whose closure meets the closure of Q,
/// including Q itself. At most 9 squares; level-1 squares also touch the
/// central cell.
#[derive(Debug, Clone)]
pub struct Neighborhood {
    pub squares: Vec<WhitneySquare>,
    pub touches_central: bool,
}

pub fn whitney_neighbors(q: &WhitneySquare) -> Neighborhood {
    let k = q.level;
    let j = q.sector;
    let mut set = std::collections::BTreeSet::new();
    let same = 1u64 << k;
    for dj in [same - 1, 0, 1] {
        set.insert(WhitneySquare { level: k, sector: (j + dj) % same });
    }
    let mut touches_central = false;
    if k == 1 {
        touches_central = true;
    } else {
        // two squares one level closer to the center: the parent and the
        // diagonal neighbor sharing the corner
        let half = 1u64 << (k - 1);
        let p = j >> 1;
        set.insert(WhitneySquare { level: k - 1, sector: p });
        let diag = if j % 2 == 0 { (p + half - 1) % half } else { (p + 1) % half };
        set.insert(WhitneySquare { level: k - 1, sector: diag });
    }
    if k < MAX_LEVEL {
        let dbl = 1u64 << (k + 1);
        for c in [2 * j + dbl - 1, 2 * j, 2 * j + 1, 2 * j + 2] {
            set.insert(WhitneySquare { level: k + 1, sector: c % dbl });
        }
    }
    Neighborhood { squares: set.into_iter().collect(), touches_central }
}

/// Privalov shadow of λ: the boundary arc {ξ : |ξ − λ/|λ|| ≤ 1 − |λ|},
/// centered at arg λ with angular half-width 2·arcsin((1−|λ|)/2).
/// By convention the shadow of the origin is the full circle.
pub fn privalov_shadow(lambda: &DiskPoint) -> BoundaryArc {
    if lambda.is_origin() {
        return BoundaryArc::full_circle();
    }
    let hw = 2.0 * ((1.0 - lambda.abs()) * 0.5).asin();
    let mid = lambda.arg();
    BoundaryArc::new(mid - hw, mid + hw).expect("half-width is in (0, π/3]")
}

/// Separation constant η(A) = min of ρ over distinct pairs.
pub fn separation(points: &[DiskPoint]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::NotEnoughPoints);
    }
    let mut best = 1.0f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.min(pseudo_dist(points[i], points[j]));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    #[test]
    fn disk_point_rejects_boundary() {
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(0.8, 0.7).is_err());
        assert!(DiskPoint::new(f64::NAN, 0.0).is_err());
        assert!(DiskPoint::new(0.999_999, 0.0).is_ok());
    }

    #[test]
    fn pseudo_dist_matches_hand_values() {
        // (a, 0) → |a|
        let a = p(0.3, 0.4);
        assert!((pseudo_dist(a, DiskPoint::origin()) - 0.5).abs() < 1e-15);
        // (0.5, −0.5) → 1 / 1.25
        assert!((pseudo_dist(p(0.5, 0.0), p(-0.5, 0.0)) - 0.8).abs() < 1e-15);
        assert_eq!(pseudo_dist(a, a), 0.0);
    }

    #[test]
    fn mobius_hand_values() {
        let a = p(0.37, -0.11);
        let img = mobius(a, DiskPoint::origin());
        assert!((img.re() - a.re()).abs() < 1e-15 && (img.im() - a.im()).abs() < 1e-15);
        let z = mobius(a, a);
        assert!(z.abs() < 1e-15);
        let w = mobius(p(0.5, 0.0), p(0.25, 0.0));
        assert!((w.re() - 0.25 / 0.875).abs() < 1e-15);
        assert_eq!(w.im(), 0.0);
    }

    #[test]
    fn mobius_is_involution() {
        let a = p(0.62, 0.2);
        let z = p(-0.3, 0.55);
        let back = mobius(a, mobius(a, z));
        assert!((back.re() - z.re()).abs() < 1e-13);
        assert!((back.im() - z.im()).abs() < 1e-13);
    }

    #[test]
    fn pseudo_disk_hand_values() {
        // origin: Euclidean and pseudohyperbolic disks agree
        let d = pseudo_disk(DiskPoint::origin(), 0.37).unwrap();
        assert_eq!(d.center_re, 0.0);
        assert!((d.radius - 0.37).abs() < 1e-15);
        // (0.5, 0.5) → center 0.4, radius 0.4
        let d = pseudo_disk(p(0.5, 0.0), 0.5).unwrap();
        assert!((d.center_re - 0.4).abs() < 1e-15);
        assert!((d.radius - 0.4).abs() < 1e-15);
        assert!(pseudo_disk(p(0.5, 0.0), 0.0).is_err());
        assert!(pseudo_disk(p(0.5, 0.0), 1.0).is_err());
    }

    #[test]
    fn pseudo_disk_boundary_points_lie_on_circle() {
        let z0 = p(0.61, -0.33);
        let t = 0.42;
        let d = pseudo_disk(z0, t).unwrap();
        for i in 0..20 {
            let theta = TAU * i as f64 / 20.0;
            let w = DiskPoint::new_clamped(t * theta.cos(), t * theta.sin());
            let z = mobius(z0, w); // ρ(z, z0) = t exactly
            let dre = z.re() - d.center_re;
            let dim = z.im() - d.center_im;
            let dist = (dre * dre + dim * dim).sqrt();
            assert!((dist - d.radius).abs() < 1e-12, "off-circle by {}", dist - d.radius);
        }
    }

    #[test]
    fn whitney_index_hand_values() {
        let q = whitney_index(&p(0.9, 0.0)).unwrap();
        assert_eq!((q.level(), q.sector()), (4, 0));
        let q = whitney_index(&p(0.5, 0.0)).unwrap();
        assert_eq!((q.level(), q.sector()), (1, 0));
        // 0.75·e^{iπ}: level 2, sector 2
        let q = whitney_index(&p(-0.75, 0.0)).unwrap();
        assert_eq!((q.level(), q.sector()), (2, 2));
        assert!(matches!(whitney_index(&p(0.3, 0.0)), Err(Error::CentralCell)));
    }

    #[test]
    fn whitney_index_exact_powers() {
        for k in 1..30u32 {
            let d = (2.0f64).powi(-(k as i32));
            let z = p(1.0 - d, 0.0);
            let q = whitney_index(&z).unwrap();
            assert_eq!(q.level(), k, "1−|z| = 2^-{k} must map to level {k}");
            assert!(q.contains(&z));
        }
    }

    #[test]
    fn neighbors_interior_level() {
        let q = WhitneySquare::new(4, 5).unwrap();
        let n = whitney_neighbors(&q);
        assert_eq!(n.squares.len(), 9);
        assert!(!n.touches_central);
        assert!(n.squares.contains(&q));
        // 3 at level 4, 2 at level 3, 4 at level 5
        assert_eq!(n.squares.iter().filter(|s| s.level() == 4).count(), 3);
        assert_eq!(n.squares.iter().filter(|s| s.level() == 3).count(), 2);
        assert_eq!(n.squares.iter().filter(|s| s.level() == 5).count(), 4);
        // sector 5 is odd: parent 2, diagonal 3
        assert!(n.squares.contains(&WhitneySquare::new(3, 2).unwrap()));
        assert!(n.squares.contains(&WhitneySquare::new(3, 3).unwrap()));
        for c in [9u64, 10, 11, 12] {
            assert!(n.squares.contains(&WhitneySquare::new(5, c).unwrap()));
        }
    }

    #[test]
    fn neighbors_level_one_touch_central() {
        let q = WhitneySquare::new(1, 0).unwrap();
        let n = whitney_neighbors(&q);
        assert!(n.touches_central);
        assert!(n.squares.len() <= 9);
        assert_eq!(n.squares.iter().filter(|s| s.level() == 1).count(), 2);
        assert_eq!(n.squares.iter().filter(|s| s.level() == 2).count(), 4);
    }

    #[test]
    fn neighbors_cardinality_bound() {
        let mut st = crate::sampling::SplitMix64::new(7);
        for _ in 0..10_000 {
            let k = 1 + (st.next_u64() % 20) as u32;
            let j = st.next_u64() % (1u64 << k);
            let n = whitney_neighbors(&WhitneySquare::new(k, j).unwrap());
            assert!(n.squares.len() <= 9);
        }
    }

    #[test]
    fn shadow_hand_values() {
        let arc = privalov_shadow(&p(0.5, 0.0));
        let expect = 4.0 * (0.25f64).asin();
        assert!((arc.length() - expect).abs() < 1e-15);
        // |λ| → 1: length ~ 2(1−|λ|)
        let lam = p(0.9999, 0.0);
        let len = privalov_shadow(&lam).length();
        assert!((len / (2.0 * (1.0 - lam.abs())) - 1.0).abs() < 1e-4);
        assert!(privalov_shadow(&DiskPoint::origin()).is_full_circle());
    }

    #[test]
    fn shadow_chord_consistency() {
        let mut st = crate::sampling::SplitMix64::new(11);
        for _ in 0..200 {
            let r = 0.05 + 0.9 * st.next_f64();
            let theta = TAU * st.next_f64();
            let lam = DiskPoint::from_polar(r, theta).unwrap();
            let arc = privalov_shadow(&lam);
            let u_re = lam.re() / lam.abs();
            let u_im = lam.im() / lam.abs();
            for (name, t) in [("lo", arc.lo()), ("hi", arc.hi()), ("mid", arc.midpoint())] {
                let dre = t.cos() - u_re;
                let dim = t.sin() - u_im;
                let chord = (dre * dre + dim * dim).sqrt();
                assert!(
                    chord <= 1.0 - lam.abs() + 1e-12,
                    "{name} endpoint violates chord bound"
                );
                if name != "mid" {
                    assert!((chord - (1.0 - lam.abs())).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn separation_hand_values() {
        let pts = [p(0.5, 0.0), p(-0.5, 0.0)];
        assert!((separation(&pts).unwrap() - 0.8).abs() < 1e-15);
        let pts = [p(0.5, 0.0), p(0.5, 0.0)];
        assert_eq!(separation(&pts).unwrap(), 0.0);
        let pts = [DiskPoint::origin(), p(0.5, 0.0), p(-0.5, 0.0)];
        assert!((separation(&pts).unwrap() - 0.5).abs() < 1e-15);
        assert!(separation(&[p(0.1, 0.0)]).is_err());
    }
}
