use harmaj::constructions::*;
use harmaj::harmonic::HarmonicFn;
use harmaj::majorant::*;

fn main() {
    let t0 = std::time::Instant::now();
    let h = HarmonicFn::atom(0.0, 256.0);
    let params = Thm5bParams::new(h.clone(), 1.0, 0.5, 14).unwrap();
    let out = thm5b_build(&params).unwrap();
    println!("build: {:?}", t0.elapsed());
    for r in &out.records {
        println!(
            "k={} j={} H={:.4} R={:.4} N={} placed={} capped={} theo={:.1} branch_max={} band=[{:.3},{:.3}] term={:.4}",
            r.k, r.sector, r.h, r.r, r.n, r.placed, r.capped, r.theoretical,
            r.checks.branch_max, r.checks.gamma_lo, r.checks.gamma_hi, r.checks.summable_term
        );
    }
    println!("total zeros: {} entries, total mult {}", out.zero_set.len(), out.zero_set.total_multiplicity());

    let t1 = std::time::Instant::now();
    let claims = claims_check(&out, &params, 14, 6, 42);
    println!("claims ({:?}):", t1.elapsed());
    for c in &claims {
        println!("  k={} H={:.3} capped={} claim1={} (viol {}) claim3={} lower_margin={:.3}",
            c.k, c.h, c.capped, c.claim1_ok, c.claim1_violations, c.claim3_ok, c.lower_margin);
    }

    for scale in [1.0f64, 2.0] {
        let t2 = std::time::Instant::now();
        let filt = h.scale(scale);
        let mut opts = SweepOptions::new(vec![8, 10, 12, 14]);
        opts.per_square = 6;
        opts.seed = 42;
        opts.n_grid_angles = 256;
        match majorant_diagnostic(&out.zero_set, &filt, &opts) {
            Ok(rec) => {
                println!("scale {scale}: {:?} in {:?}", rec.classification, t2.elapsed());
                for r in &rec.rows {
                    println!("  depth {} count {} mass {:.4} ({} ms)", r.depth, r.count, r.mass, r.runtime_ms);
                }
            }
            Err(e) => println!("scale {scale}: ERROR {e}"),
        }
    }
}
