fn main() {
    for name in ["geometry", "harmonic", "lp", "lemma1", "lemma3", "thm3", "thm4"] {
        let t0 = std::time::Instant::now();
        let rep = harmaj::verify::run_named_suite(name, 20260331).unwrap();
        print!("{}", rep.render());
        println!("== suite {name}: {} in {:?}", if rep.passed() { "PASS" } else { "FAIL" }, t0.elapsed());
    }
}
