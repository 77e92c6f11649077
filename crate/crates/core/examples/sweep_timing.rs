//! Scratch timing run for the classification sweep.

use std::time::Instant;

use ccv::classify::{classify, theorem_sweep, Verdict};

fn main() {
    let t0 = Instant::now();
    let sweep = theorem_sweep(20, 120).unwrap();
    println!(
        "sweep build: {} instances in {:.1?}",
        sweep.len(),
        t0.elapsed()
    );
    let t1 = Instant::now();
    let mut mismatches = 0usize;
    for (case, spec) in &sweep {
        let g = spec.build().unwrap();
        let res = classify(&g).unwrap();
        if res.verdict != Verdict::Case(*case) {
            mismatches += 1;
            println!("MISMATCH {spec}: {} != {}", res.verdict, case);
        }
    }
    println!(
        "roundtrip: {} instances, {} mismatches, {:.1?}",
        sweep.len(),
        mismatches,
        t1.elapsed()
    );
}
