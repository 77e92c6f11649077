//! Scratch timing of canonical forms and group searches near order 120.

use std::time::Instant;

use ccv::families::{gen_petersen, haar, moebius, sdw};
use ccv::symmetry::{automorphism_group, canonical_form, DEFAULT_GROUP_CAP};

fn time_canon(name: &str, g: &ccv::DartGraph) {
    let t = Instant::now();
    let form = canonical_form(g).unwrap();
    println!("canon {name}: {:.2?} ({} bytes)", t.elapsed(), form.len());
}

fn time_group(name: &str, g: &ccv::DartGraph) {
    let t = Instant::now();
    let grp = automorphism_group(g, DEFAULT_GROUP_CAP).unwrap();
    println!("group {name}: {:.2?} (order {})", t.elapsed(), grp.order);
}

fn main() {
    let cases: Vec<(&str, ccv::DartGraph)> = vec![
        ("Moeb(120)", moebius(120).unwrap()),
        ("Prism(60)", gen_petersen(60, 1).unwrap()),
        ("GP(60,11)", gen_petersen(60, 11).unwrap()),
        ("H(60,1,7)", haar(60, 1, 7).unwrap()),
        ("H(60,1,11)", haar(60, 1, 11).unwrap()),
        ("H(60,4,15)?", haar(60, 4, 15).unwrap_or_else(|_| moebius(4).unwrap())),
        ("SDW(15,3)", sdw(15, 3).unwrap()),
        ("H(59,1,3)", haar(59, 1, 3).unwrap()),
    ];
    for (name, g) in &cases {
        time_canon(name, g);
    }
    for (name, g) in &cases {
        time_group(name, g);
    }
}
