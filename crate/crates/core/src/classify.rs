//! Placement of cubic vertex-transitive graphs within the classification of
//! those admitting an automorphism of order at least a third of the vertex
//! count, together with the eta/kappa survey table used by the CLI reports.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use thiserror::Error;

use crate::dart::DartGraph;
use crate::families::{self, FamilyError, FamilySpec};
use crate::symmetry::{
    automorphism_group, c_signature, canonical_form, CSignature, PermGroup, SymError,
    DEFAULT_GROUP_CAP,
};

/// Inputs with at most this many vertices fall outside the classification's
/// range and are reported as such rather than matched against families.
pub const SMALL_ORDER_BOUND: u64 = 20;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("graph is acyclic, girth undefined")]
    NoGirth,
    #[error("witness automorphism failed re-verification")]
    WitnessCheck,
}

/// The ten families of the classification, in statement order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    C1a,
    C1b,
    C2a,
    C2b,
    C2c,
    C3a,
    C3b,
    C3c,
    C3d,
    C4,
}

impl CaseId {
    pub const ALL: [CaseId; 10] = [
        CaseId::C1a,
        CaseId::C1b,
        CaseId::C2a,
        CaseId::C2b,
        CaseId::C2c,
        CaseId::C3a,
        CaseId::C3b,
        CaseId::C3c,
        CaseId::C3d,
        CaseId::C4,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseId::C1a => "case-1a",
            CaseId::C1b => "case-1b",
            CaseId::C2a => "case-2a",
            CaseId::C2b => "case-2b",
            CaseId::C2c => "case-2c",
            CaseId::C3a => "case-3a",
            CaseId::C3b => "case-3b",
            CaseId::C3c => "case-3c",
            CaseId::C3d => "case-3d",
            CaseId::C4 => "case-4",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Outcome of classifying one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Isomorphic to a member of the named case.
    Case(CaseId),
    /// Cubic and vertex-transitive, but no family member matches; when the
    /// largest automorphism order is below a third of the vertex count this
    /// is the expected answer, otherwise it signals a discrepancy.
    NotCovered,
    /// Not a simple connected cubic vertex-transitive graph.
    NotCubicVt,
    /// At most [`SMALL_ORDER_BOUND`] vertices, below the classified range.
    TooSmall,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Case(c) => c.label(),
            Verdict::NotCovered => "not-covered",
            Verdict::NotCubicVt => "not-cubic-VT",
            Verdict::TooSmall => "too-small",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Certificate for a positive verdict: the matched family member plus the
/// verified order of a concrete automorphism of the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub family: FamilySpec,
    pub automorphism_order: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    pub order: u64,
    pub verdict: Verdict,
    /// Vertex count divided by the largest automorphism order; present
    /// whenever the input is cubic and vertex-transitive.
    pub eta: Option<BigRational>,
    pub witness: Option<Witness>,
}

impl ClassificationResult {
    /// One-line human-readable account of the verdict.
    pub fn describe(&self) -> String {
        let mut s = format!("order {}: {}", self.order, self.verdict);
        if let Some(eta) = &self.eta {
            s.push_str(&format!(", eta = {eta}"));
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(
                ", isomorphic to {} with an automorphism of order {}",
                w.family, w.automorphism_order
            ));
        }
        s
    }
}

/// A family member of the classification at a fixed vertex count, with the
/// canonical form of its graph.
struct InstanceRow {
    case: CaseId,
    spec: FamilySpec,
    form: Vec<u8>,
}

/// Lexicographically least shift pair reachable from {0, r, s} by the
/// relabellings (x, side) -> (a*x + b, side) with a a unit mod m. These
/// relabellings are graph isomorphisms of the Haar graph, so two parameter
/// pairs with the same class value give isomorphic graphs and only one
/// needs to be listed or built.
fn haar_shift_class(m: u64, r: u64, s: u64) -> (u64, u64) {
    let mut best = (m, m);
    for a in 1..m {
        if m.gcd(&a) != 1 {
            continue;
        }
        // An affine image of {0, r, s} contains 0 exactly when the offset
        // cancels one element u; the image is then {a*(v-u) : v != u}.
        for u in [0, r, s] {
            let mut img = [0u64; 2];
            let mut k = 0;
            for v in [0, r, s] {
                if v != u {
                    img[k] = (a * ((v + m - u) % m)) % m;
                    k += 1;
                }
            }
            let pair = (img[0].min(img[1]), img[0].max(img[1]));
            best = best.min(pair);
        }
    }
    best
}

/// For odd fibre counts the bicirculant Haar case excludes two shift pairs;
/// those pairs describe connection sets closed under affine rescaling, so
/// the circulant test screens every parameter pair equivalent to an
/// excluded one. The screened graphs are prisms or Moebius ladders and
/// already appear under the first two cases.
fn odd_haar_excluded(m: u64, r: u64, s: u64) -> Result<bool, ClassifyError> {
    let (lo, hi) = (r.min(s), r.max(s));
    if (lo, hi) == (1, 2) || (lo, hi) == (1, m - 1) {
        return Ok(true);
    }
    if m >= 5 {
        Ok(families::haar_is_circulant(m, r, s)?)
    } else {
        Ok(false)
    }
}

/// Raw per-case parameter enumeration at a fixed vertex count, in statement
/// order, before duplicate graphs are dropped.
fn candidate_specs(n: u64) -> Result<Vec<(CaseId, FamilySpec)>, ClassifyError> {
    let mut out = Vec::new();
    if n % 2 != 0 {
        // Every family member has even order.
        return Ok(out);
    }
    let m = n / 2;
    if m >= 3 && m % 2 == 1 {
        out.push((CaseId::C1a, FamilySpec::Prism { m }));
    }
    if n >= 4 {
        out.push((CaseId::C1b, FamilySpec::Moeb { n }));
    }
    if m >= 4 && m % 2 == 0 {
        out.push((CaseId::C2a, FamilySpec::Prism { m }));
    }
    if m >= 5 {
        for r in 2..m.div_ceil(2) {
            let sq = (r * r) % m;
            if sq == 1 || sq == m - 1 || (m, r) == (10, 2) {
                out.push((CaseId::C2b, FamilySpec::GP { m, r }));
            }
        }
    }
    if m >= 3 {
        let mut seen_classes = std::collections::BTreeSet::new();
        for r in 1..m {
            if m % r != 0 {
                continue;
            }
            for s in 1..m {
                if s == r || r.gcd(&s) != 1 {
                    continue;
                }
                if m % 2 == 1 && odd_haar_excluded(m, r, s)? {
                    continue;
                }
                if !seen_classes.insert(haar_shift_class(m, r, s)) {
                    continue;
                }
                out.push((CaseId::C2c, FamilySpec::Haar { n: m, i: r, j: s }));
            }
        }
    }
    if n % 6 == 0 && (n / 6) % 6 == 3 {
        let k = n / 6;
        out.push((CaseId::C3a, FamilySpec::X { k }));
        out.push((CaseId::C3b, FamilySpec::Y { k }));
        if k >= 9 {
            out.push((CaseId::C4, FamilySpec::Sdw { m: k, t: 3 }));
        }
    }
    if n == 30 {
        out.push((CaseId::C3c, FamilySpec::Tutte8Cage));
    }
    if n == 12 {
        out.push((CaseId::C3d, FamilySpec::TruncatedTetrahedron));
    }
    out.sort_by_key(|(case, _)| *case);
    Ok(out)
}

static INSTANCE_TABLE: OnceLock<Mutex<HashMap<u64, Arc<Vec<InstanceRow>>>>> = OnceLock::new();

/// Builds (and caches) the deduplicated instance table at one vertex count.
/// An instance whose graph already occurs under an earlier entry is
/// dropped, so every listed instance classifies as its own case; parameter
/// lists of different cases can describe the same graph (for example a
/// Haar graph with shifts {1, m-1} is a prism).
fn instance_table(n: u64) -> Result<Arc<Vec<InstanceRow>>, ClassifyError> {
    let cache = INSTANCE_TABLE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("instance table lock").get(&n) {
        return Ok(hit.clone());
    }
    let mut rows: Vec<InstanceRow> = Vec::new();
    for (case, spec) in candidate_specs(n)? {
        let g = spec.build()?;
        let form = canonical_form(&g)?;
        if rows.iter().any(|row| row.form == form) {
            continue;
        }
        rows.push(InstanceRow { case, spec, form });
    }
    let arc = Arc::new(rows);
    cache
        .lock()
        .expect("instance table lock")
        .insert(n, arc.clone());
    Ok(arc)
}

/// Every listed family member with the given vertex count, paired with its
/// case, in statement order and with duplicate graphs dropped.
pub fn theorem_instances(n: u64) -> Result<Vec<(CaseId, FamilySpec)>, ClassifyError> {
    Ok(instance_table(n)?
        .iter()
        .map(|row| (row.case, row.spec))
        .collect())
}

/// All listed members with vertex count in `(min_order, max_order]`, sorted
/// by vertex count then statement order.
pub fn theorem_sweep(
    min_order: u64,
    max_order: u64,
) -> Result<Vec<(CaseId, FamilySpec)>, ClassifyError> {
    let mut out = Vec::new();
    for n in (min_order + 1)..=max_order {
        out.extend(theorem_instances(n)?);
    }
    Ok(out)
}

/// Largest automorphism order, re-checked on a concrete group element so
/// the returned witness does not rest on the group search alone.
fn verified_max_order(g: &DartGraph, grp: &PermGroup) -> Result<u64, ClassifyError> {
    let best = grp
        .elements
        .as_deref()
        .ok_or(SymError::CapExceeded { order: grp.order })?
        .iter()
        .max_by_key(|p| p.order())
        .expect("a group contains at least the identity");
    if !best.is_automorphism_of(g)? {
        return Err(ClassifyError::WitnessCheck);
    }
    Ok(best.order())
}

/// Decides where a graph lands in the classification. Matching is by
/// construction: all family members of the same vertex count are built and
/// compared by canonical form, first case in statement order wins. A
/// positive verdict carries the matched member and a re-verified
/// automorphism order of at least a third of the vertex count.
pub fn classify(g: &DartGraph) -> Result<ClassificationResult, ClassifyError> {
    let n = g.n_vertices() as u64;
    let mut result = ClassificationResult {
        order: n,
        verdict: Verdict::NotCubicVt,
        eta: None,
        witness: None,
    };
    let cubic =
        n > 0 && g.is_simple() && g.is_connected() && g.vertices().all(|v| g.valence(v) == 3);
    if !cubic {
        return Ok(result);
    }
    let grp = automorphism_group(g, DEFAULT_GROUP_CAP)?;
    if !grp.is_transitive()? {
        return Ok(result);
    }
    let max_order = verified_max_order(g, &grp)?;
    result.eta = Some(BigRational::new(BigInt::from(n), BigInt::from(max_order)));
    if n <= SMALL_ORDER_BOUND {
        result.verdict = Verdict::TooSmall;
        return Ok(result);
    }
    result.verdict = Verdict::NotCovered;
    if 3 * max_order < n {
        return Ok(result);
    }
    let form = canonical_form(g)?;
    for row in instance_table(n)?.iter() {
        if row.form == form {
            result.verdict = Verdict::Case(row.case);
            result.witness = Some(Witness {
                family: row.spec,
                automorphism_order: max_order,
            });
            break;
        }
    }
    // A cubic vertex-transitive graph on more than 20 vertices with an
    // automorphism of order >= n/3 must match a listed member; falling
    // through to NotCovered here flags a discrepancy for the caller.
    Ok(result)
}

/// The five family members whose vertex count is not divisible by their
/// largest automorphism order, with the exact ratio; every other surveyed
/// member has a whole-number ratio.
pub fn fractional_eta_members() -> Vec<(FamilySpec, BigRational)> {
    let ratio = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
    vec![
        (FamilySpec::Prism { m: 4 }, ratio(4, 3)),
        (FamilySpec::GP { m: 5, r: 2 }, ratio(5, 3)),
        (FamilySpec::Haar { n: 7, i: 1, j: 3 }, ratio(7, 4)),
        (FamilySpec::GP { m: 8, r: 3 }, ratio(4, 3)),
        (FamilySpec::Sdw { m: 3, t: 3 }, ratio(3, 2)),
    ]
}

/// One survey row: measured invariants of a family member.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub spec: FamilySpec,
    pub order: u64,
    pub eta: BigRational,
    pub kappa: u64,
    pub girth: u64,
    /// Girth-cycle counts per dart at a base vertex; equal at every vertex
    /// for the surveyed (vertex-transitive) members.
    pub signature: CSignature,
}

/// Survey table over a list of family members.
#[derive(Debug, Clone)]
pub struct EtaKappaReport {
    pub rows: Vec<ReportRow>,
}

/// Measures order, eta, kappa, girth and the girth-cycle signature for each
/// spec, in input order.
pub fn report_eta_kappa(specs: &[FamilySpec]) -> Result<EtaKappaReport, ClassifyError> {
    let mut rows = Vec::with_capacity(specs.len());
    for spec in specs {
        let g = spec.build()?;
        let n = g.n_vertices() as u64;
        let grp = automorphism_group(&g, DEFAULT_GROUP_CAP)?;
        let max_order = grp.max_element_order()?;
        let girth = g.girth().ok_or(ClassifyError::NoGirth)? as u64;
        rows.push(ReportRow {
            spec: *spec,
            order: n,
            eta: BigRational::new(BigInt::from(n), BigInt::from(max_order)),
            kappa: grp.min_semiregular_orbit_count()?,
            girth,
            signature: c_signature(&g, 0, girth as usize)?,
        });
    }
    Ok(EtaKappaReport { rows })
}

impl EtaKappaReport {
    /// Largest kappa among rows with eta at most `bound`.
    pub fn max_kappa_at_eta_le(&self, bound: u64) -> Option<u64> {
        let b = BigRational::from_integer(BigInt::from(bound));
        self.rows
            .iter()
            .filter(|row| row.eta <= b)
            .map(|row| row.kappa)
            .max()
    }

    /// Plain-text table plus aggregate lines for eta bounds 1, 2 and 3.
    pub fn render(&self) -> String {
        let mut out = String::from(
            "family                order     eta   kappa   girth   cycles-per-dart\n",
        );
        for row in &self.rows {
            out.push_str(&format!(
                "{:<20} {:>6} {:>7} {:>7} {:>7}   {:?}\n",
                row.spec.to_string(),
                row.order,
                row.eta.to_string(),
                row.kappa,
                row.girth,
                row.signature.eps,
            ));
        }
        for bound in 1..=3 {
            match self.max_kappa_at_eta_le(bound) {
                Some(k) => out.push_str(&format!("max kappa with eta <= {bound}: {k}\n")),
                None => out.push_str(&format!("max kappa with eta <= {bound}: none\n")),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        gen_petersen, haar, known_properties, prism, truncate_cubic, truncated_tetrahedron,
        tutte_8_cage,
    };
    use crate::symmetry::is_isomorphic;

    fn whole(k: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(k))
    }

    #[test]
    fn verdict_labels_are_stable() {
        assert_eq!(Verdict::Case(CaseId::C1a).label(), "case-1a");
        assert_eq!(Verdict::Case(CaseId::C2c).label(), "case-2c");
        assert_eq!(Verdict::Case(CaseId::C4).label(), "case-4");
        assert_eq!(Verdict::NotCovered.label(), "not-covered");
        assert_eq!(Verdict::NotCubicVt.label(), "not-cubic-VT");
        assert_eq!(Verdict::TooSmall.label(), "too-small");
        assert_eq!(CaseId::ALL.len(), 10);
        assert_eq!(format!("{}", CaseId::C3d), "case-3d");
    }

    #[test]
    fn odd_orders_have_no_instances() {
        assert!(theorem_instances(23).unwrap().is_empty());
        assert!(theorem_instances(27).unwrap().is_empty());
    }

    #[test]
    fn instance_table_spans_expected_cases_at_24() {
        let rows = theorem_instances(24).unwrap();
        let cases: Vec<CaseId> = rows.iter().map(|(c, _)| *c).collect();
        assert!(cases.contains(&CaseId::C1b));
        assert!(cases.contains(&CaseId::C2a));
        assert!(cases.contains(&CaseId::C2b));
        assert!(cases.contains(&CaseId::C2c));
        assert!(!cases.contains(&CaseId::C1a));
        assert!(!cases.contains(&CaseId::C3a));
        assert!(!cases.contains(&CaseId::C4));
        assert!(rows.contains(&(CaseId::C2b, FamilySpec::GP { m: 12, r: 5 })));
        // Case order within the table follows statement order.
        let mut sorted = cases.clone();
        sorted.sort();
        assert_eq!(cases, sorted);
    }

    #[test]
    fn duplicate_graphs_keep_their_first_case() {
        // A Haar graph with shifts {1, m-1} over an even modulus is a prism:
        // the two shift-1 orbits form the rails and the shift-0 edges the
        // rungs. The instance table must list the graph once, under the
        // prism case, and classification must agree.
        let h = haar(12, 1, 11).unwrap();
        assert!(is_isomorphic(&h, &prism(12).unwrap()).unwrap());
        let rows = theorem_instances(24).unwrap();
        assert!(!rows.contains(&(CaseId::C2c, FamilySpec::Haar { n: 12, i: 1, j: 11 })));
        let res = classify(&h).unwrap();
        assert_eq!(res.verdict, Verdict::Case(CaseId::C2a));
        assert_eq!(res.witness.unwrap().family, FamilySpec::Prism { m: 12 });
    }

    #[test]
    fn odd_haar_exclusions_cover_affine_images() {
        // {1, (m+1)/2} rescales to {1, 2} by doubling, so it must be
        // excluded alongside the two literal pairs.
        assert!(odd_haar_excluded(11, 1, 2).unwrap());
        assert!(odd_haar_excluded(11, 1, 10).unwrap());
        assert!(odd_haar_excluded(11, 1, 6).unwrap());
        assert!(!odd_haar_excluded(11, 1, 3).unwrap());
        // Shift pairs with a divisor component above 1 are never circulant.
        assert!(!odd_haar_excluded(9, 3, 2).unwrap());
    }

    #[test]
    fn classify_identifies_prisms_and_ladders() {
        let res = classify(&prism(11).unwrap()).unwrap();
        assert_eq!(res.verdict, Verdict::Case(CaseId::C1a));
        assert_eq!(res.eta, Some(whole(1)));
        let w = res.witness.unwrap();
        assert_eq!(w.family, FamilySpec::Prism { m: 11 });
        assert!(3 * w.automorphism_order >= 22);

        let res = classify(&families::moebius(22).unwrap()).unwrap();
        assert_eq!(res.verdict, Verdict::Case(CaseId::C1b));
        assert_eq!(res.eta, Some(whole(1)));

        let res = classify(&prism(12).unwrap()).unwrap();
        assert_eq!(res.verdict, Verdict::Case(CaseId::C2a));
        assert_eq!(res.eta, Some(whole(2)));
    }

    #[test]
    fn classify_identifies_petersen_and_haar_members() {
        // 5*5 = 25 = -1 mod 13.
        let res = classify(&gen_petersen(13, 5).unwrap()).unwrap();
        assert_eq!(res.verdict, Verdict::Case(CaseId::C2b));
        assert_eq!(res.witness.unwrap().family, FamilySpec::GP { m: 13, r: 5 });

        let res = classify(&haar(11, 1, 3).unwrap()).unwrap();
        assert_eq!(res.verdict, Verdict::Case(CaseId::C2c));
        assert_eq!(res.eta, Some(whole(2)));
    }

    #[test]
    fn classify_identifies_tricirculants_and_wreaths() {
        let res = classify(&families::x_graph(9).unwrap()).unwrap();
        assert_eq!(res.verdict, Verdict::Case(CaseId::C3a));
        assert_eq!(res.eta, Some(whole(3)));

        let res = classify(&families::y_graph(9).unwrap()).unwrap();
        assert_eq!(res.verdict, Verdict::Case(CaseId::C3b));

        let res = classify(&tutte_8_cage()).unwrap();
        assert_eq!(res.verdict, Verdict::Case(CaseId::C3c));
        assert_eq!(res.eta, Some(whole(3)));

        let res = classify(&families::sdw(9, 3).unwrap()).unwrap();
        assert_eq!(res.verdict, Verdict::Case(CaseId::C4));
        assert_eq!(res.eta, Some(whole(3)));
        let w = res.witness.unwrap();
        assert_eq!(w.family, FamilySpec::Sdw { m: 9, t: 3 });
        assert_eq!(w.automorphism_order, 18);
    }

    #[test]
    fn small_graphs_report_too_small() {
        // The truncated tetrahedron sits at 12 vertices, inside the small
        // range, so its case is never reached through classification.
        let res = classify(&truncated_tetrahedron()).unwrap();
        assert_eq!(res.verdict, Verdict::TooSmall);
        assert_eq!(res.eta, Some(whole(3)));

        // The 20-vertex boundary itself is excluded.
        let res = classify(&gen_petersen(10, 2).unwrap()).unwrap();
        assert_eq!(res.verdict, Verdict::TooSmall);
        assert_eq!(res.eta, Some(whole(2)));
    }

    #[test]
    fn non_candidates_are_rejected() {
        // Wrong valence.
        let c5 = DartGraph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(classify(&c5).unwrap().verdict, Verdict::NotCubicVt);

        // Cubic but disconnected: two copies of K4.
        let mut edges = Vec::new();
        for a in 0..4usize {
            for b in (a + 1)..4 {
                edges.push((a, b));
                edges.push((a + 4, b + 4));
            }
        }
        let two_k4 = DartGraph::from_edge_list(8, &edges).unwrap();
        assert_eq!(classify(&two_k4).unwrap().verdict, Verdict::NotCubicVt);

        // Cubic and connected but not vertex-transitive: the truncation of
        // a prism whose triangle and square edges are inequivalent.
        let t = truncate_cubic(&prism(3).unwrap()).unwrap();
        assert_eq!(classify(&t).unwrap().verdict, Verdict::NotCubicVt);
    }

    #[test]
    fn large_eta_reports_not_covered() {
        // Truncating an arc-transitive graph keeps vertex transitivity but
        // caps automorphism orders well below a third of the new size.
        let t = truncate_cubic(&tutte_8_cage()).unwrap();
        let res = classify(&t).unwrap();
        assert_eq!(res.verdict, Verdict::NotCovered);
        assert!(res.eta.unwrap() > whole(3));
    }

    #[test]
    fn fractional_eta_members_measure_correctly() {
        for (spec, expected) in fractional_eta_members() {
            let g = spec.build().unwrap();
            let measured = crate::symmetry::eta(&g).unwrap();
            assert_eq!(measured, expected, "eta mismatch for {spec}");
            let known = known_properties(&spec).unwrap();
            assert_eq!(known.eta, expected, "stated value mismatch for {spec}");
        }
    }

    #[test]
    fn survey_report_rows_and_aggregates() {
        let specs = [
            FamilySpec::Moeb { n: 24 },
            FamilySpec::Prism { m: 11 },
            FamilySpec::Prism { m: 12 },
            FamilySpec::GP { m: 13, r: 5 },
            FamilySpec::Sdw { m: 9, t: 3 },
        ];
        let report = report_eta_kappa(&specs).unwrap();
        assert_eq!(report.rows.len(), specs.len());
        for row in &report.rows {
            let known = known_properties(&row.spec).unwrap();
            assert_eq!(row.order, known.order, "order mismatch for {}", row.spec);
            assert_eq!(row.eta, known.eta, "eta mismatch for {}", row.spec);
            assert_eq!(row.kappa, known.kappa, "kappa mismatch for {}", row.spec);
            assert_eq!(row.signature.c as u64, row.girth);
        }
        assert_eq!(report.max_kappa_at_eta_le(1), Some(1));
        assert_eq!(report.max_kappa_at_eta_le(2), Some(2));
        assert_eq!(report.max_kappa_at_eta_le(3), Some(6));
        let text = report.render();
        assert!(text.contains("max kappa with eta <= 3: 6"));
        assert!(text.contains("SDW(9,3)"));
    }

    #[test]
    fn every_instance_of_order_24_roundtrips() {
        for (case, spec) in theorem_instances(24).unwrap() {
            let g = spec.build().unwrap();
            let res = classify(&g).unwrap();
            assert_eq!(
                res.verdict,
                Verdict::Case(case),
                "{spec} classified as {} instead of {}",
                res.verdict,
                case
            );
            let w = res.witness.expect("positive verdicts carry a witness");
            assert!(3 * w.automorphism_order >= 24);
        }
    }
}
