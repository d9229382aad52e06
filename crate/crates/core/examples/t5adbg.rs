use harmaj::constructions::*;
use harmaj::harmonic::HarmonicFn;
use harmaj::majorant::*;
use harmaj::hypgeo::*;

fn main() {
    let h1 = HarmonicFn::atom(0.0, 1.0);
    let h2 = HarmonicFn::constant(1.0);
    let out = thm5a_build(&h1, &h2, &Thm5aScan::default()).unwrap();
    for r in out.records.iter().rev().take(3) {
        println!("accepted k={} j={} H1={:.2} N={}", r.level, r.sector, r.h1, r.n);
    }
    let sample = sample_target_set(&out.zero_set, &h1, 12, 6, 42);
    println!("sample: {} pts, extremal {}", sample.points.len(), sample.extremal.len());
    // max v per level
    let mut per_level: std::collections::BTreeMap<u32, f64> = Default::default();
    for p in &sample.points {
        let e = per_level.entry(p.level).or_insert(0.0);
        *e = e.max(p.neg_log_b);
    }
    for (k, v) in &per_level {
        println!("level {k}: max v = {v:.1}");
    }
    // look at probes near the deepest accepted zero
    let last = out.records.last().unwrap();
    let lam = DiskPoint::new(last.re, last.im).unwrap();
    println!("deepest zero: level {} H1(lam) = {:.2}", last.level, h1.eval(lam));
    let mut near = 0;
    for p in &sample.points {
        if pseudo_dist(p.z, lam) < 0.1 {
            near += 1;
            if near < 8 { println!("  near-pt rho={:.3e} v={:.1} level={}", pseudo_dist(p.z, lam), p.neg_log_b, p.level); }
        }
    }
    println!("near points: {near}");
}
