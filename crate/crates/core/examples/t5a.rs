use harmaj::constructions::*;
use harmaj::harmonic::HarmonicFn;
use harmaj::majorant::*;

fn main() {
    let h1 = HarmonicFn::atom(0.0, 32.0);
    let h2 = HarmonicFn::constant(1.0);
    let scan = Thm5aScan::default();
    let out = thm5a_build(&h1, &h2, &scan).unwrap();
    for r in &out.records {
        println!("k={} j={} H1={:.3} ratio={:.3} N={} vanish={:.4} blowup={:.3}",
            r.level, r.sector, r.h1, r.ratio, r.n, r.margin_vanish, r.margin_blowup);
    }
    for (name, filt) in [("H1", h1.clone()), ("H2", h2.clone())] {
        let t = std::time::Instant::now();
        let mut opts = SweepOptions::new(vec![6, 8, 10, 12]);
        opts.per_square = 6;
        opts.seed = 42;
        opts.n_grid_angles = 256;
        match wep_gap(&out.zero_set, &filt, &opts) {
            Ok(rec) => {
                println!("filter {name}: {:?} in {:?}", rec.classification, t.elapsed());
                for r in &rec.rows {
                    println!("  depth {} count {} mass {:.4}", r.depth, r.count, r.mass);
                }
            }
            Err(e) => println!("filter {name}: ERROR {e}"),
        }
    }
    // thm2 experiment: geometric zero set, depths {6, 8, 10, 12}
    let zeros: Vec<(harmaj::hypgeo::DiskPoint, u32)> = (1..=12)
        .map(|j| (harmaj::hypgeo::DiskPoint::from_polar(1.0 - (2.0f64).powi(-j), 0.0).unwrap(), 1))
        .collect();
    let zs = harmaj::blaschke::ZeroSet::new(zeros).unwrap();
    let t = std::time::Instant::now();
    match thm2_weights(&zs, 12, 16) {
        Ok(out2) => {
            println!("thm2: {} squares, {} selections in {:?}", out2.weights.len(), out2.builder.selected.len(), t.elapsed());
            println!("selected sups: {:?}", out2.builder.certificate.selected_sups);
            println!("budgets range {:.4}..{:.4}", out2.budgets[0], out2.budgets.last().unwrap());
            let mut opts = SweepOptions::new(vec![6, 8, 10, 12]);
            opts.per_square = 6;
            opts.seed = 42;
            opts.n_grid_angles = 256;
            let t2 = std::time::Instant::now();
            match majorant_diagnostic(&zs, &out2.builder.h, &opts) {
                Ok(rec) => {
                    println!("thm2 diagnostic: {:?} in {:?}", rec.classification, t2.elapsed());
                    for r in &rec.rows { println!("  depth {} count {} mass {:.4}", r.depth, r.count, r.mass); }
                }
                Err(e) => println!("thm2 diagnostic ERROR {e}"),
            }
        }
        Err(e) => println!("thm2 ERROR: {e}"),
    }
}
