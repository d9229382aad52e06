//! Deterministic pseudo-random and low-discrepancy sources used by samplers
//! and test drivers. Everything here is a pure function of its seeds.

/// SplitMix64; the standard finalizer-based generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Stateless hash of a key tuple, for per-cell offsets.
pub fn hash3(seed: u64, a: u64, b: u64) -> u64 {
    let mut s = SplitMix64::new(seed ^ a.rotate_left(17) ^ b.rotate_left(41));
    s.next_u64()
}

/// R2 additive low-discrepancy sequence in [0,1)² with a hashed offset.
pub struct R2Sequence {
    u: f64,
    v: f64,
    i: u64,
}

// generalized golden-ratio constants for the R2 sequence
const R2_A1: f64 = 0.754_877_666_246_692_8;
const R2_A2: f64 = 0.569_840_290_998_053_2;

impl R2Sequence {
    pub fn new(offset: u64) -> Self {
        let u = (offset >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let v = ((offset.wrapping_mul(0x9E3779B97F4A7C15)) >> 11) as f64
            * (1.0 / (1u64 << 53) as f64);
        Self { u, v, i: 0 }
    }

    pub fn next(&mut self) -> (f64, f64) {
        self.i += 1;
        let i = self.i as f64;
        ((self.u + R2_A1 * i).fract(), (self.v + R2_A2 * i).fract())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn r2_stays_in_unit_square() {
        let mut s = R2Sequence::new(hash3(1, 2, 3));
        for _ in 0..1000 {
            let (u, v) = s.next();
            assert!((0.0..1.0).contains(&u) && (0.0..1.0).contains(&v));
        }
    }
}
