//! The batch verification battery behind the CLI's `verify-all` subcommand:
//! every check emits one `PASS`/`FAIL` ledger line, and the ledger is
//! printed sorted by check id with the seed in the header.

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::classify::{classify, theorem_sweep, ClassifyError, Verdict};
use crate::dart::{DartGraph, GraphError, Walk};
use crate::families::{
    self, haar_is_circulant, known_properties, FamilyError, FamilySpec,
};
use crate::labelled::{LabelError, LabelledGraph};
use crate::quotients::{
    self, compute_q, delta_quotient, enumerate_q0, filter_diagram, multicirculant_quotient,
    probe_candidate, simplified_assignments, QuotientError, Q_ORDER_FLOOR,
};
use crate::symmetry::{
    self, canonical_form, has_regular_cyclic_automorphism, SymError, DEFAULT_GROUP_CAP,
};
use crate::voltage::{
    cover, cover_adjacency_oracle, endset, is_lambda_reduced, lift_final_indices, spanning_tree,
    CcvGraph, VoltageError,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Voltage(#[from] VoltageError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// One ledger line.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub id: String,
    pub pass: bool,
    pub details: String,
}

/// The assembled ledger plus the inputs that produced it.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub max_order: u64,
    pub max_m: u64,
    /// All lines, sorted by check id.
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> Vec<&CheckLine> {
        self.lines.iter().filter(|l| !l.pass).collect()
    }

    /// Header plus one `PASS|FAIL <check-id> <details>` line per check.
    pub fn render(&self) -> String {
        let mut out = format!(
            "# verification ledger: seed={} max-order={} max-m={} checks={} failures={}\n",
            self.seed,
            self.max_order,
            self.max_m,
            self.lines.len(),
            self.failures().len(),
        );
        for line in &self.lines {
            out.push_str(&format!(
                "{} {} {}\n",
                if line.pass { "PASS" } else { "FAIL" },
                line.id,
                line.details
            ));
        }
        out
    }
}

/// Runs one check, turning both negative outcomes and internal errors into
/// FAIL lines so a broken computation cannot abort the rest of the ledger.
fn run_check<F>(lines: &mut Vec<CheckLine>, id: impl Into<String>, f: F)
where
    F: FnOnce() -> Result<(bool, String), VerifyError>,
{
    let id = id.into();
    match f() {
        Ok((pass, details)) => lines.push(CheckLine { id, pass, details }),
        Err(e) => lines.push(CheckLine {
            id,
            pass: false,
            details: format!("error: {e}"),
        }),
    }
}

/// The nine quotient shapes whose covers populate the large-order census:
/// the eight multicirculant shapes plus the four-vertex shape, with stable
/// short names used in check ids.
pub fn named_quotients() -> Result<Vec<(String, LabelledGraph)>, QuotientError> {
    let mut out = Vec::new();
    for k in 1..=8 {
        out.push((format!("mc{k}"), multicirculant_quotient(k)?));
    }
    out.push(("delta12".to_string(), delta_quotient(12)?));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Individual check families.
// ---------------------------------------------------------------------------

/// Census pipeline counts, frozen by earlier enumeration runs.
fn check_census(lines: &mut Vec<CheckLine>, max_m: u64) {
    run_check(lines, "census-stage-counts", || {
        let q0 = enumerate_q0()?;
        let per_vertex: Vec<usize> = (1..=5)
            .map(|n| q0.iter().filter(|c| c.lg.graph().n_vertices() == n).count())
            .collect();
        let diagram = filter_diagram(&q0)?;
        let kept = quotients::filter_artefacts(&diagram)?;
        let got = (per_vertex.clone(), q0.len(), diagram.len(), kept.len());
        let want = (vec![10usize, 44, 179, 936, 5104], 6273usize, 108usize, 79usize);
        Ok((
            got == want,
            format!(
                "per-vertex {:?} total {} diagram {} artefact-clean {}",
                per_vertex,
                q0.len(),
                diagram.len(),
                kept.len()
            ),
        ))
    });

    run_check(lines, "census-large-members", || {
        let q = compute_q(max_m)?;
        let mut keys: BTreeSet<Vec<u8>> = BTreeSet::new();
        for cand in q.iter() {
            keys.insert(symmetry::labelled_canonical_form(&cand.lg)?);
        }
        let mut expected: BTreeSet<Vec<u8>> = BTreeSet::new();
        for k in 1..=8 {
            expected.insert(symmetry::labelled_canonical_form(
                &multicirculant_quotient(k)?,
            )?);
        }
        expected.insert(symmetry::labelled_canonical_form(&delta_quotient(12)?)?);
        if max_m >= 22 {
            Ok((
                keys == expected,
                format!("{} members at max_m={} (expected all nine)", q.len(), max_m),
            ))
        } else {
            // Small boxes cannot witness the one-vertex member, whose covers
            // have order equal to the multiplier; expect a subset.
            Ok((
                keys.is_subset(&expected),
                format!(
                    "{} members at max_m={} (expected a subset of the nine)",
                    q.len(),
                    max_m
                ),
            ))
        }
    });
}

/// Cover construction against the rule-based adjacency oracle.
fn check_cover_oracles(lines: &mut Vec<CheckLine>, max_m: u64) {
    let quotients = match named_quotients() {
        Ok(q) => q,
        Err(e) => {
            lines.push(CheckLine {
                id: "cover-oracle-setup".into(),
                pass: false,
                details: format!("error: {e}"),
            });
            return;
        }
    };
    for (name, lg) in quotients {
        run_check(lines, format!("cover-oracle-{name}"), || {
            let tree = spanning_tree(&lg)?;
            let mut compared = 0u64;
            for m in 1..=max_m.min(6) {
                for ccv in simplified_assignments(&lg, m)?.assignments {
                    let direct: BTreeSet<(usize, usize)> =
                        cover(&ccv)?.graph.to_edge_list()?.into_iter().collect();
                    let oracle = cover_adjacency_oracle(&ccv, &tree)?;
                    if direct != oracle {
                        return Ok((false, format!("edge mismatch at m={m}")));
                    }
                    compared += 1;
                }
            }
            Ok((compared > 0, format!("{compared} covers matched the oracle")))
        });
    }
}

/// Measured invariants of family members against their stated values.
fn check_known_families(lines: &mut Vec<CheckLine>, max_order: u64) {
    let specs = [
        FamilySpec::Prism { m: 4 },
        FamilySpec::Prism { m: 7 },
        FamilySpec::Prism { m: 12 },
        FamilySpec::Moeb { n: 24 },
        FamilySpec::GP { m: 5, r: 2 },
        FamilySpec::GP { m: 8, r: 3 },
        FamilySpec::GP { m: 10, r: 2 },
        FamilySpec::GP { m: 12, r: 5 },
        FamilySpec::GP { m: 13, r: 5 },
        FamilySpec::Haar { n: 7, i: 1, j: 3 },
        FamilySpec::Haar { n: 11, i: 1, j: 3 },
        FamilySpec::X { k: 9 },
        FamilySpec::Y { k: 3 },
        FamilySpec::Y { k: 9 },
        FamilySpec::Sdw { m: 3, t: 3 },
        FamilySpec::Sdw { m: 6, t: 3 },
        FamilySpec::Sdw { m: 9, t: 3 },
        FamilySpec::Tutte8Cage,
        FamilySpec::TruncatedTetrahedron,
    ];
    for spec in specs {
        if spec.order() > max_order {
            continue;
        }
        run_check(lines, format!("family-known-{spec}"), || {
            let known = known_properties(&spec)?;
            let g = spec.build()?;
            let eta = symmetry::eta(&g)?;
            let kappa = symmetry::kappa(&g)?;
            let girth_ok = match known.girth {
                Some(want) => g.girth() == Some(want as usize),
                None => true,
            };
            let pass = g.n_vertices() as u64 == known.order
                && eta == known.eta
                && kappa == known.kappa
                && girth_ok;
            Ok((pass, format!("eta {eta} kappa {kappa}")))
        });
    }
}

/// Probe outcomes for the twelve named candidate shapes, stated so they
/// hold for any sweep box size.
fn check_shape_probes(lines: &mut Vec<CheckLine>, max_m: u64) {
    for k in 1..=12u64 {
        run_check(lines, format!("probe-shape-{k:02}"), || {
            let lg = delta_quotient(k as usize)?;
            let report = probe_candidate(&lg, max_m, Q_ORDER_FLOOR)?;
            let orders: BTreeSet<u64> = report.hit_orders().into_iter().collect();
            let (pass, want): (bool, String) = match k {
                2 | 3 | 9 | 11 => (orders.is_empty(), "no vertex-transitive covers".into()),
                1 => (orders.iter().all(|&o| o == 12), "only order 12".into()),
                7 => (orders.iter().all(|&o| o == 12), "only order 12".into()),
                6 | 10 => (orders.iter().all(|&o| o == 18), "only order 18".into()),
                8 => (orders.iter().all(|&o| o == 6), "only order 6".into()),
                4 | 5 => (
                    orders.iter().all(|&o| o <= Q_ORDER_FLOOR),
                    format!("all orders at most {Q_ORDER_FLOOR}"),
                ),
                12 => {
                    let above: BTreeSet<u64> = orders
                        .iter()
                        .copied()
                        .filter(|&o| o > Q_ORDER_FLOOR)
                        .collect();
                    let expected: BTreeSet<u64> = (5..=max_m)
                        .filter(|m| m % 2 == 1)
                        .map(|m| 6 * m)
                        .collect();
                    (
                        above == expected,
                        format!("large orders exactly {{6m : m odd, 5 <= m <= {max_m}}}"),
                    )
                }
                _ => unreachable!(),
            };
            Ok((pass, format!("hit orders {orders:?}; expected {want}")))
        });
    }
}

/// The parametrised covers of the four-vertex shape against the wreath
/// family: isomorphism two ways plus the cyclic symmetry of the cover.
fn check_gamma12_covers(lines: &mut Vec<CheckLine>, max_order: u64) {
    for m in (5..=11u64).step_by(2) {
        if 6 * m > max_order {
            continue;
        }
        run_check(lines, format!("gamma12-cover-{m:02}"), || {
            let cov = families::gamma12_cover(m, 1, 2)?;
            let sdw = families::sdw(m, 3)?;
            let forms_match = canonical_form(&cov.graph)? == canonical_form(&sdw)?;
            // The explicit vertex map is verified edge-by-edge on build.
            let phi_ok = families::phi_iso(m).is_ok();
            let rho = cov.rho();
            let rho_ok = rho.order() == 2 * m && rho.is_automorphism_of(&cov.graph)?;
            Ok((
                forms_match && phi_ok && rho_ok,
                format!(
                    "canonical forms match: {forms_match}, explicit map: {phi_ok}, \
                     fibre shift has order {} and is an automorphism: {rho_ok}",
                    rho.order()
                ),
            ))
        });
    }
}

/// The structural circulant test for Haar graphs against the group search.
fn check_haar_circulant(lines: &mut Vec<CheckLine>, max_order: u64) {
    for m in 5..=13u64 {
        if 2 * m > max_order {
            continue;
        }
        run_check(lines, format!("haar-circulant-{m:02}"), || {
            let mut agree = 0u64;
            for x in 1..m {
                for y in (x + 1)..m {
                    if m.gcd(&x).gcd(&y) != 1 {
                        continue;
                    }
                    let structural = haar_is_circulant(m, x, y)?;
                    let g = families::haar(m, x, y)?;
                    let direct = has_regular_cyclic_automorphism(&g, DEFAULT_GROUP_CAP)?;
                    if structural != direct {
                        return Ok((
                            false,
                            format!("disagreement at shifts ({x},{y}): structural {structural}, group search {direct}"),
                        ));
                    }
                    agree += 1;
                }
            }
            Ok((agree > 0, format!("{agree} connected shift pairs agree")))
        });
    }
}

/// Every listed family member must carry a large-order automorphism and
/// classify back to its own case.
fn check_classification_sweep(lines: &mut Vec<CheckLine>, max_order: u64) {
    let sweep = match theorem_sweep(20, max_order) {
        Ok(s) => s,
        Err(e) => {
            lines.push(CheckLine {
                id: "classify-sweep-build".into(),
                pass: false,
                details: format!("error: {e}"),
            });
            return;
        }
    };
    let mut by_eta_bound = [0u64; 3];
    let mut forward_fail: Vec<String> = Vec::new();
    let mut roundtrip_fail: Vec<String> = Vec::new();
    let mut checked = 0u64;
    for (case, spec) in &sweep {
        let outcome = (|| -> Result<(), VerifyError> {
            let g = spec.build()?;
            let n = g.n_vertices() as u64;
            let res = classify(&g)?;
            let forward_ok = match &res.witness {
                Some(w) => 3 * w.automorphism_order >= n,
                None => false,
            };
            if !forward_ok {
                forward_fail.push(spec.to_string());
            }
            if res.verdict != Verdict::Case(*case) {
                roundtrip_fail.push(format!("{spec}: {} != {}", res.verdict, case));
            }
            // Track the kappa aggregates alongside, reusing the same group.
            let grp = symmetry::automorphism_group(&g, DEFAULT_GROUP_CAP)?;
            let kappa = grp.min_semiregular_orbit_count()?;
            let meo = grp.max_element_order()?;
            for (slot, bound) in by_eta_bound.iter_mut().zip(1u64..) {
                if n <= bound * meo {
                    *slot = (*slot).max(kappa);
                }
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            roundtrip_fail.push(format!("{spec}: error {e}"));
        }
        checked += 1;
    }
    lines.push(CheckLine {
        id: "classify-forward".into(),
        pass: forward_fail.is_empty(),
        details: if forward_fail.is_empty() {
            format!("{checked} members carry an automorphism of order >= order/3")
        } else {
            format!("missing large automorphism: {forward_fail:?}")
        },
    });
    lines.push(CheckLine {
        id: "classify-roundtrip".into(),
        pass: roundtrip_fail.is_empty(),
        details: if roundtrip_fail.is_empty() {
            format!("{checked} members classify back to their own case")
        } else {
            format!("mismatches: {roundtrip_fail:?}")
        },
    });
    // Aggregates are monotone and, once the sweep reaches the respective
    // first members, pinned: 1 at eta <= 1, 2 at eta <= 2, and 6 at
    // eta <= 3 (3 while only the 30-vertex cage is in range).
    let expected_f3 = if max_order >= 54 {
        6
    } else if max_order >= 30 {
        3
    } else {
        2
    };
    let expected = [1u64, 2, expected_f3];
    lines.push(CheckLine {
        id: "classify-kappa-aggregates".into(),
        pass: by_eta_bound == expected,
        details: format!("max kappa at eta <= [1,2,3]: {by_eta_bound:?}, expected {expected:?}"),
    });
}

/// Statistics from one batch of random-walk law checks.
#[derive(Debug, Clone, Default)]
pub struct WalkLawStats {
    pub walks_checked: u64,
    pub cycles_checked: u64,
    pub violations: Vec<String>,
}

/// Simple cycles of length 3..=max_len through `start`, capped in number.
fn cycles_through(g: &DartGraph, start: usize, max_len: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut cycles = Vec::new();
    // Iterative DFS over dart paths with distinct interior vertices.
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, Vec::new())];
    while let Some((at, path)) = stack.pop() {
        if cycles.len() >= cap {
            break;
        }
        for &x in g.darts_at(at) {
            if let Some(&last) = path.last() {
                if x == g.inv(last) {
                    continue;
                }
            }
            let to = g.end(x);
            if to == start {
                if path.len() >= 2 {
                    let mut cycle = path.clone();
                    cycle.push(x);
                    cycles.push(cycle);
                }
                continue;
            }
            if path.len() + 1 < max_len && !path.iter().any(|&y| g.end(y) == to) {
                let mut next = path.clone();
                next.push(x);
                stack.push((to, next));
            }
        }
    }
    cycles.truncate(cap);
    cycles
}

/// Checks the two walk laws on one voltage assignment: lift end-indices
/// equal the endset for random base walks, and short cover cycles project
/// to lambda-reduced closed walks whose endset contains 0.
pub fn walk_laws(
    ccv: &CcvGraph,
    n_walks: u64,
    rng: &mut ChaCha8Rng,
) -> Result<WalkLawStats, VerifyError> {
    let mut stats = WalkLawStats::default();
    let g = ccv.graph();
    let cov = cover(ccv)?;
    for _ in 0..n_walks {
        let len = rng.gen_range(1..=8usize);
        let mut at = rng.gen_range(0..g.n_vertices());
        let mut darts = Vec::with_capacity(len);
        for _ in 0..len {
            let options = g.darts_at(at);
            let x = options[rng.gen_range(0..options.len())];
            darts.push(x);
            at = g.end(x);
        }
        let walk = Walk::new(g, darts)?;
        let from_lifts = lift_final_indices(ccv, &cov, &walk)?;
        let from_endset = endset(ccv, &walk)?.members();
        stats.walks_checked += 1;
        if from_lifts != from_endset {
            stats.violations.push(format!(
                "walk {:?}: lift indices {:?} != endset {:?}",
                walk.darts(),
                from_lifts,
                from_endset
            ));
        }
    }
    // Cycle projection law, sampled at a random cover vertex.
    let start = rng.gen_range(0..cov.graph.n_vertices());
    for cycle in cycles_through(&cov.graph, start, 8, 16) {
        let projected: Vec<usize> = cycle.iter().map(|&x| cov.proj_d[x]).collect();
        let walk = Walk::new(g, projected)?;
        stats.cycles_checked += 1;
        if !is_lambda_reduced(ccv.base(), &walk) {
            stats
                .violations
                .push(format!("cycle {cycle:?} projects to a reducible walk"));
            continue;
        }
        if !endset(ccv, &walk)?.contains(0) {
            stats
                .violations
                .push(format!("cycle {cycle:?} projects outside its endset"));
        }
    }
    Ok(stats)
}

/// Walk laws across the nine named quotients.
fn check_walk_laws(lines: &mut Vec<CheckLine>, max_m: u64, seed: u64) {
    let quotients = match named_quotients() {
        Ok(q) => q,
        Err(e) => {
            lines.push(CheckLine {
                id: "walk-laws-setup".into(),
                pass: false,
                details: format!("error: {e}"),
            });
            return;
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, lg) in quotients {
        run_check(lines, format!("walk-laws-{name}"), || {
            let mut stats = WalkLawStats::default();
            for m in 1..=max_m {
                for ccv in simplified_assignments(&lg, m)?.assignments.into_iter().take(2) {
                    let batch = walk_laws(&ccv, 20, &mut rng)?;
                    stats.walks_checked += batch.walks_checked;
                    stats.cycles_checked += batch.cycles_checked;
                    stats.violations.extend(batch.violations);
                }
            }
            Ok((
                stats.violations.is_empty() && stats.walks_checked > 0,
                format!(
                    "{} walks and {} cycles checked, {} violations",
                    stats.walks_checked,
                    stats.cycles_checked,
                    stats.violations.len()
                ),
            ))
        });
    }
}

/// Runs the full verification battery. Check granularity and ranges scale
/// with `max_order` (classification sweeps) and `max_m` (voltage sweeps);
/// randomized checks derive from `seed` and are reproducible.
pub fn verify_all(max_order: u64, max_m: u64, seed: u64) -> VerifyReport {
    let mut lines = Vec::new();
    check_census(&mut lines, max_m);
    check_cover_oracles(&mut lines, max_m);
    check_known_families(&mut lines, max_order);
    check_shape_probes(&mut lines, max_m);
    check_gamma12_covers(&mut lines, max_order);
    check_haar_circulant(&mut lines, max_order);
    check_classification_sweep(&mut lines, max_order);
    check_walk_laws(&mut lines, max_m, seed);
    lines.sort_by(|a, b| a.id.cmp(&b.id));
    VerifyReport {
        seed,
        max_order,
        max_m,
        lines,
    }
}
