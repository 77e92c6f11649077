//! Enumeration of small labelled quotients, structural filters, and an
//! exhaustive probe for vertex-transitive cyclic covers.
//!
//! The pipeline is: `enumerate_q0` lists every connected labelled graph on at
//! most [`MAX_QUOTIENT_VERTICES`] vertices with all labelled degrees at most
//! three; `filter_diagram` keeps the members that could be quotients of a
//! large cubic vertex-transitive graph by a cyclic group generated by an
//! automorphism of order at least a third of the graph order;
//! `filter_artefacts` removes members whose covers always contain a local
//! obstruction to vertex transitivity; `probe_candidate` then sweeps actual
//! voltage assignments and reports every vertex-transitive cover found.

use crate::artefacts::find_artefacts;
use crate::dart::{DartGraph, EdgeKind, GraphError};
use crate::labelled::{LabelError, LabelledGraph};
use crate::symmetry::{
    has_uniform_distance_profile, is_vertex_transitive, labelled_canonical_form, SymError,
};
use crate::voltage::{ccv_violation, cover, spanning_tree, CcvGraph, VoltageError};
use num_integer::Integer;
use std::collections::HashSet;
use thiserror::Error;

/// Largest vertex count a candidate quotient may have.
pub const MAX_QUOTIENT_VERTICES: usize = 5;

/// Cover orders at or below this value are ignored when deciding which
/// candidates admit a large vertex-transitive cover.
pub const Q_ORDER_FLOOR: u64 = 20;

/// Default sweep bound for the index-profile multiplier `m`.
///
/// The one-vertex candidates have covers of order exactly `m`, so any sweep
/// that should witness covers of order above [`Q_ORDER_FLOOR`] for them needs
/// `max_m` of at least 22.
pub const DEFAULT_PROBE_MAX_M: u64 = 24;

/// Errors from enumeration, filtering, or probing.
#[derive(Debug, Error)]
pub enum QuotientError {
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("label error: {0}")]
    Label(#[from] LabelError),
    #[error("voltage error: {0}")]
    Voltage(#[from] VoltageError),
    #[error("symmetry error: {0}")]
    Symmetry(#[from] SymError),
    #[error("candidate is not extendable to an admissible index function")]
    NotExtendable,
    #[error("unknown quotient shape index {0} (valid range {1})")]
    UnknownShape(usize, &'static str),
}

/// A labelled quotient candidate together with the filter stages it passed.
#[derive(Debug, Clone)]
pub struct Candidate {
    /// Stable index within the full enumeration.
    pub id: usize,
    pub lg: LabelledGraph,
    /// Human-readable trail of the pipeline stages this member survived.
    pub provenance: Vec<String>,
}

impl Candidate {
    /// One-line summary suitable for a provenance ledger.
    pub fn ledger_line(&self) -> String {
        format!(
            "candidate {:>3}  vertices={} darts={:<2}  {}",
            self.id,
            self.lg.graph().n_vertices(),
            self.lg.graph().n_darts(),
            self.provenance.join(" -> ")
        )
    }
}

/// An ordered, deduplicated set of candidates.
#[derive(Debug, Clone, Default)]
pub struct CandidateSet {
    pub members: Vec<Candidate>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Candidate> {
        self.members.iter()
    }

    /// Position of a member equal to `lg` as a labelled graph, if present.
    pub fn position_of(&self, lg: &LabelledGraph) -> Result<Option<usize>, QuotientError> {
        let key = labelled_canonical_form(lg)?;
        for (i, cand) in self.members.iter().enumerate() {
            if labelled_canonical_form(&cand.lg)? == key {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Provenance ledger, one line per member.
    pub fn ledger_lines(&self) -> Vec<String> {
        self.members.iter().map(Candidate::ledger_line).collect()
    }
}

// ---------------------------------------------------------------------------
// Stage 1: enumeration of the base census.
// ---------------------------------------------------------------------------

/// Unlabelled building plan: link multiplicities plus per-vertex decorations.
struct UnderlyingShape {
    n: usize,
    /// `(u, v, multiplicity)` with `u < v`, in lexicographic pair order.
    links: Vec<(usize, usize, usize)>,
    /// Whether vertex `v` carries a loop (at most one fits in degree 3).
    loops: Vec<bool>,
    /// Number of semiedges at vertex `v`.
    semis: Vec<usize>,
}

impl UnderlyingShape {
    /// Deterministic dart layout: link darts in pair order (u-side first),
    /// then loop dart pairs by vertex, then semiedges by vertex.
    fn build(&self) -> Result<DartGraph, GraphError> {
        let mut beg = Vec::new();
        let mut inv = Vec::new();
        for &(u, v, mult) in &self.links {
            for _ in 0..mult {
                let x = beg.len();
                beg.push(u);
                beg.push(v);
                inv.push(x + 1);
                inv.push(x);
            }
        }
        for (v, &has_loop) in self.loops.iter().enumerate() {
            if has_loop {
                let x = beg.len();
                beg.push(v);
                beg.push(v);
                inv.push(x + 1);
                inv.push(x);
            }
        }
        for (v, &count) in self.semis.iter().enumerate() {
            for _ in 0..count {
                let x = beg.len();
                beg.push(v);
                inv.push(x);
            }
        }
        DartGraph::new(self.n, beg, inv)
    }
}

/// True when the link edges alone connect all `n` vertices.
fn links_connect(n: usize, links: &[(usize, usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parts = n;
    for &(u, v, mult) in links {
        if mult == 0 {
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            parts -= 1;
        }
    }
    parts == 1
}

/// All connected dart graphs on `n` vertices with every valence at most 3,
/// deduplicated up to isomorphism. Returned in a deterministic order.
fn underlying_census(n: usize) -> Result<Vec<DartGraph>, QuotientError> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut result: Vec<DartGraph> = Vec::new();
    let mut mults = vec![0usize; pairs.len()];
    enumerate_link_matrices(0, &pairs, &mut mults, &mut vec![3; n], n, &mut result)?;

    // Deduplicate up to isomorphism of the underlying graph (all labels 1).
    let mut keyed: Vec<(Vec<u8>, DartGraph)> = Vec::new();
    for g in result {
        let key = labelled_canonical_form(&LabelledGraph::all_ones(g.clone()))?;
        keyed.push((key, g));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(keyed.into_iter().map(|(_, g)| g).collect())
}

/// Recursive sweep over link multiplicity matrices with capacity pruning.
fn enumerate_link_matrices(
    idx: usize,
    pairs: &[(usize, usize)],
    mults: &mut Vec<usize>,
    caps: &mut Vec<usize>,
    n: usize,
    out: &mut Vec<DartGraph>,
) -> Result<(), QuotientError> {
    if idx == pairs.len() {
        let links: Vec<(usize, usize, usize)> = pairs
            .iter()
            .zip(mults.iter())
            .map(|(&(u, v), &m)| (u, v, m))
            .collect();
        if n > 1 && !links_connect(n, &links) {
            return Ok(());
        }
        enumerate_fillings(0, n, caps, &mut vec![false; n], &mut vec![0; n], &links, out)?;
        return Ok(());
    }
    let (u, v) = pairs[idx];
    let max_mult = caps[u].min(caps[v]);
    for m in 0..=max_mult {
        mults[idx] = m;
        caps[u] -= m;
        caps[v] -= m;
        enumerate_link_matrices(idx + 1, pairs, mults, caps, n, out)?;
        caps[u] += m;
        caps[v] += m;
    }
    mults[idx] = 0;
    Ok(())
}

/// Sweep loop flags and semiedge counts for each vertex within capacity.
fn enumerate_fillings(
    v: usize,
    n: usize,
    caps: &[usize],
    loops: &mut Vec<bool>,
    semis: &mut Vec<usize>,
    links: &[(usize, usize, usize)],
    out: &mut Vec<DartGraph>,
) -> Result<(), QuotientError> {
    if v == n {
        let shape = UnderlyingShape {
            n,
            links: links.to_vec(),
            loops: loops.clone(),
            semis: semis.clone(),
        };
        out.push(shape.build()?);
        return Ok(());
    }
    for put_loop in [false, true] {
        let used = if put_loop { 2 } else { 0 };
        if used > caps[v] {
            continue;
        }
        for s in 0..=(caps[v] - used) {
            loops[v] = put_loop;
            semis[v] = s;
            enumerate_fillings(v + 1, n, caps, loops, semis, links, out)?;
        }
    }
    loops[v] = false;
    semis[v] = 0;
    Ok(())
}

/// All label vectors for `g` whose labelled degree is at most 3 everywhere,
/// in lexicographic order over dart indices.
fn lambda_assignments(g: &DartGraph) -> Vec<Vec<u32>> {
    // Per-vertex label tuples, indexed by the vertex valence. With valence d
    // and labels at least 1 summing to at most 3 the options are short lists.
    fn vertex_options(d: usize) -> Vec<Vec<u32>> {
        match d {
            0 => vec![vec![]],
            1 => vec![vec![1], vec![2], vec![3]],
            2 => vec![vec![1, 1], vec![1, 2], vec![2, 1]],
            3 => vec![vec![1, 1, 1]],
            _ => vec![],
        }
    }
    let per_vertex: Vec<(Vec<usize>, Vec<Vec<u32>>)> = (0..g.n_vertices())
        .map(|v| {
            let darts = g.darts_at(v).to_vec();
            let opts = vertex_options(darts.len());
            (darts, opts)
        })
        .collect();

    let mut results: Vec<Vec<u32>> = Vec::new();
    let mut current = vec![0u32; g.n_darts()];
    fn recurse(
        v: usize,
        per_vertex: &[(Vec<usize>, Vec<Vec<u32>>)],
        current: &mut Vec<u32>,
        results: &mut Vec<Vec<u32>>,
    ) {
        if v == per_vertex.len() {
            results.push(current.clone());
            return;
        }
        let (darts, opts) = &per_vertex[v];
        for opt in opts {
            for (&x, &val) in darts.iter().zip(opt.iter()) {
                current[x] = val;
            }
            recurse(v + 1, per_vertex, current, results);
        }
    }
    recurse(0, &per_vertex, &mut current, &mut results);
    results.sort_unstable();
    results
}

/// Enumerate every connected labelled graph on at most
/// [`MAX_QUOTIENT_VERTICES`] vertices whose labelled degrees are all at most
/// three, deduplicated up to label-preserving isomorphism.
///
/// Members are ordered by vertex count, then by the canonical form of the
/// underlying graph, then lexicographically by label vector.
pub fn enumerate_q0() -> Result<CandidateSet, QuotientError> {
    let mut members = Vec::new();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    for n in 1..=MAX_QUOTIENT_VERTICES {
        for g in underlying_census(n)? {
            for lam in lambda_assignments(&g) {
                let lg = LabelledGraph::new(g.clone(), lam)?;
                let key = labelled_canonical_form(&lg)?;
                if seen.insert(key) {
                    members.push(Candidate {
                        id: members.len(),
                        lg,
                        provenance: vec!["q0".to_string()],
                    });
                }
            }
        }
    }
    Ok(CandidateSet { members })
}

// ---------------------------------------------------------------------------
// Stage 2: the structural filter.
// ---------------------------------------------------------------------------

/// True when `lg` satisfies every structural condition required of the
/// quotient of a large cubic vertex-transitive graph by a cyclic group of
/// order at least a third of the graph order:
///
/// * at most [`MAX_QUOTIENT_VERTICES`] vertices;
/// * no obstruction to being a quotient of a simple connected cubic graph
///   (extendability, label symmetry and parallel-edge bounds, labelled
///   degree exactly 3);
/// * some vertex carries an edge labelled (1,1) on both darts and dominates
///   the index profile: every fibre is at least a sixth of its fibre, and
///   the other fibres together are at most twice its fibre.
pub fn diagram_conditions_hold(lg: &LabelledGraph) -> Result<bool, QuotientError> {
    let g = lg.graph();
    if g.n_vertices() > MAX_QUOTIENT_VERTICES {
        return Ok(false);
    }
    if lg.ccv_obstruction()?.is_some() {
        return Ok(false);
    }
    let c = lg.minimal_index_profile()?;
    // The profile ratios are forced by the labels alone, so the fibre-size
    // comparisons below do not depend on any spanning tree or base vertex.
    for x in g.darts() {
        let m_fwd = u64::from(lg.lambda(x)) * c[g.beg(x)];
        let m_bwd = u64::from(lg.lambda_inv(x)) * c[g.beg(g.inv(x))];
        assert_eq!(
            m_fwd, m_bwd,
            "index profile must balance every edge of the quotient"
        );
    }
    let total: u64 = c.iter().sum();
    for u in 0..g.n_vertices() {
        let carries_11_edge = g.darts_at(u).iter().any(|&x| {
            g.inv(x) != x && lg.lambda(x) == 1 && lg.lambda_inv(x) == 1
        });
        if !carries_11_edge {
            continue;
        }
        let ratio_floor_ok = (0..g.n_vertices()).all(|v| 6 * c[v] >= c[u]);
        let ratio_sum_ok = total <= 3 * c[u];
        if ratio_floor_ok && ratio_sum_ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Keep the members of `set` satisfying [`diagram_conditions_hold`].
pub fn filter_diagram(set: &CandidateSet) -> Result<CandidateSet, QuotientError> {
    let mut members = Vec::new();
    for cand in set.iter() {
        if diagram_conditions_hold(&cand.lg)? {
            let mut kept = cand.clone();
            kept.provenance.push("diagram".to_string());
            members.push(kept);
        }
    }
    Ok(CandidateSet { members })
}

// ---------------------------------------------------------------------------
// Stage 3: the artefact filter.
// ---------------------------------------------------------------------------

/// True when `lg` is rejected because every admissible cover would contain a
/// forced local pattern that large cubic vertex-transitive graphs cannot
/// carry: either one of the five cycle-forcing patterns together with a dart
/// labelled 3 (which would force arc transitivity and hence girth at least
/// 6), or one of the two patterns that are incompatible with vertex
/// transitivity outright.
pub fn artefact_rejects(lg: &LabelledGraph) -> Result<bool, QuotientError> {
    let hits = find_artefacts(lg);
    let has_cycle_forcing = hits.iter().any(|(id, _)| id.index() <= 4);
    let has_fatal = hits.iter().any(|(id, _)| id.index() >= 5);
    if has_fatal {
        return Ok(true);
    }
    if has_cycle_forcing {
        let has_label_3 = lg.lambdas().iter().any(|&l| l == 3);
        return Ok(has_label_3);
    }
    Ok(false)
}

/// Keep the members of `set` not rejected by [`artefact_rejects`].
pub fn filter_artefacts(set: &CandidateSet) -> Result<CandidateSet, QuotientError> {
    let mut members = Vec::new();
    for cand in set.iter() {
        if !artefact_rejects(&cand.lg)? {
            let mut kept = cand.clone();
            kept.provenance.push("artefacts".to_string());
            members.push(kept);
        }
    }
    Ok(CandidateSet { members })
}

// ---------------------------------------------------------------------------
// Stage 4: the voltage probe.
// ---------------------------------------------------------------------------

/// A dart whose voltage is swept by the probe rather than forced.
#[derive(Debug, Clone)]
pub struct FreeVoltage {
    /// Representative dart of the edge.
    pub dart: usize,
    /// Loops sweep a full fibre; cotree links sweep one gcd window.
    pub is_loop: bool,
    /// Largest range size this dart was swept over across all `m`.
    pub max_range: u64,
}

/// One vertex-transitive cover found by the probe.
#[derive(Debug, Clone)]
pub struct ProbeHit {
    /// Index-profile multiplier at which the cover arose.
    pub m: u64,
    pub iota: Vec<u64>,
    /// Canonical voltage residues, one per dart.
    pub zeta: Vec<u64>,
    /// Number of cover vertices.
    pub order: u64,
    /// Re-verified vertex-transitivity flag.
    pub vt: bool,
}

/// Outcome of sweeping all admissible voltage assignments for one candidate.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    /// Index into the candidate set this probe belongs to, when applicable.
    pub candidate_id: Option<usize>,
    pub max_m: u64,
    pub order_floor: u64,
    /// The swept parameter box, one entry per free dart.
    pub free_voltages: Vec<FreeVoltage>,
    /// Raw voltage assignments considered (including invalid ones).
    pub assignments_swept: u64,
    /// Distinct valid covers examined after deduplication.
    pub covers_examined: u64,
    /// Every vertex-transitive cover found, in sweep order.
    pub vt_hits: Vec<ProbeHit>,
}

impl ProbeReport {
    /// Hits whose cover order exceeds the floor.
    pub fn hits_above_floor(&self) -> Vec<&ProbeHit> {
        self.vt_hits
            .iter()
            .filter(|h| h.order > self.order_floor)
            .collect()
    }

    /// True when some vertex-transitive cover above the floor was found.
    pub fn found_cover_above_floor(&self) -> bool {
        !self.hits_above_floor().is_empty()
    }

    /// Orders of all hits, in sweep order.
    pub fn hit_orders(&self) -> Vec<u64> {
        self.vt_hits.iter().map(|h| h.order).collect()
    }

    /// One-line summary suitable for a provenance ledger.
    pub fn summary(&self) -> String {
        let above: Vec<u64> = self.hits_above_floor().iter().map(|h| h.order).collect();
        format!(
            "probe max_m={} swept={} covers={} vt_hits={} above_floor={:?}",
            self.max_m,
            self.assignments_swept,
            self.covers_examined,
            self.vt_hits.len(),
            above
        )
    }
}

/// Sorted list of cover edges, used to deduplicate isomorphic relabellings
/// of the same voltage assignment.
fn cover_edge_key(g: &DartGraph) -> Vec<(u32, u32)> {
    let mut edges: Vec<(u32, u32)> = g
        .edge_representatives()
        .into_iter()
        .map(|x| {
            let (a, b) = (g.beg(x) as u32, g.end(x) as u32);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges
}

/// Run `f` on every tuple of the box `ranges` (empty box runs `f` once).
fn for_each_tuple<F>(ranges: &[u64], mut f: F) -> Result<(), QuotientError>
where
    F: FnMut(&[u64]) -> Result<(), QuotientError>,
{
    let mut tuple = vec![0u64; ranges.len()];
    if ranges.iter().any(|&r| r == 0) {
        return Ok(());
    }
    loop {
        f(&tuple)?;
        let mut i = ranges.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < ranges[i] {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Sweep layout of a candidate: forced semiedges, the free darts, and the
/// spanning tree whose voltages are pinned at zero (as are mixed links,
/// which always lie on the tree side of the normalisation).
fn sweep_layout(
    lg: &LabelledGraph,
) -> Result<(Vec<usize>, Vec<FreeVoltage>, Vec<usize>), QuotientError> {
    let g = lg.graph();
    let tree = spanning_tree(lg)?;
    let tree_set: HashSet<usize> = tree.iter().copied().collect();
    let mut semis: Vec<usize> = Vec::new();
    let mut free: Vec<FreeVoltage> = Vec::new();
    for x in g.edge_representatives() {
        match g.edge_kind(x)? {
            EdgeKind::Semiedge => semis.push(x),
            EdgeKind::Loop => free.push(FreeVoltage {
                dart: x,
                is_loop: true,
                max_range: 0,
            }),
            EdgeKind::Link => {
                if !tree_set.contains(&x) && !tree_set.contains(&g.inv(x)) {
                    free.push(FreeVoltage {
                        dart: x,
                        is_loop: false,
                        max_range: 0,
                    });
                }
            }
        }
    }
    Ok((semis, free, tree))
}

/// All admissible simplified voltage assignments at one index multiplier,
/// plus sweep bookkeeping.
#[derive(Debug, Clone)]
pub struct AssignmentSweep {
    pub m: u64,
    /// Index profile used, `minimal_index_profile * m`.
    pub iota: Vec<u64>,
    /// Sweep window per free dart; empty when the multiplier admits no
    /// assignment at all (an odd fibre at a semiedge vertex).
    pub ranges: Vec<u64>,
    /// Raw tuples enumerated, including ones rejected by the voltage rules.
    pub swept: u64,
    /// Assignments whose cover is simple, connected and cubic, in odometer
    /// order.
    pub assignments: Vec<CcvGraph>,
}

/// Enumerates every admissible simplified voltage assignment of `lg` at
/// index profile `c * m`: voltages are zero on a spanning tree (and on
/// mixed edges), half the fibre on semiedges, swept over a full fibre on
/// loops and over one gcd window on cotree links. This reaches every cover
/// of `lg` by a cyclic group with that index profile, up to isomorphism.
pub fn simplified_assignments(lg: &LabelledGraph, m: u64) -> Result<AssignmentSweep, QuotientError> {
    let g = lg.graph();
    let c = lg.minimal_index_profile()?;
    let (semis, free, tree) = sweep_layout(lg)?;
    let iota: Vec<u64> = c.iter().map(|&ci| ci * m).collect();
    let mut sweep = AssignmentSweep {
        m,
        iota: iota.clone(),
        ranges: Vec::new(),
        swept: 0,
        assignments: Vec::new(),
    };
    // A semiedge voltage must be half its fibre, so odd fibres at semiedge
    // vertices admit no valid assignment at all.
    if semis.iter().any(|&x| iota[g.beg(x)] % 2 != 0) {
        return Ok(sweep);
    }
    let mut zeta_base = vec![0i64; g.n_darts()];
    for &x in &semis {
        zeta_base[x] = (iota[g.beg(x)] / 2) as i64;
    }
    sweep.ranges = free
        .iter()
        .map(|fv| {
            if fv.is_loop {
                iota[g.beg(fv.dart)]
            } else {
                iota[g.beg(fv.dart)].gcd(&iota[g.end(fv.dart)])
            }
        })
        .collect();
    let mut swept = 0u64;
    let mut assignments = Vec::new();
    for_each_tuple(&sweep.ranges, |tuple| {
        swept += 1;
        let mut zeta = zeta_base.clone();
        for (fv, &t) in free.iter().zip(tuple.iter()) {
            zeta[fv.dart] = t as i64;
            zeta[g.inv(fv.dart)] = -(t as i64);
        }
        let ccv = CcvGraph::new(lg.clone(), iota.clone(), zeta)?;
        if ccv_violation(&ccv, &tree)?.is_none() {
            assignments.push(ccv);
        }
        Ok(())
    })?;
    sweep.swept = swept;
    sweep.assignments = assignments;
    Ok(sweep)
}

/// Exhaustively sweep the admissible voltage assignments of `lg` over index
/// profiles `c * m` for `1 <= m <= max_m` and report every vertex-transitive
/// cover.
///
/// The sweep is complete up to cover isomorphism (see
/// [`simplified_assignments`]). Every hit is independently re-verified
/// before the report is returned.
pub fn probe_candidate(
    lg: &LabelledGraph,
    max_m: u64,
    order_floor: u64,
) -> Result<ProbeReport, QuotientError> {
    if !lg.is_ccv_extendable()? {
        return Err(QuotientError::NotExtendable);
    }
    let (_, free, _) = sweep_layout(lg)?;
    let mut report = ProbeReport {
        candidate_id: None,
        max_m,
        order_floor,
        free_voltages: free,
        assignments_swept: 0,
        covers_examined: 0,
        vt_hits: Vec::new(),
    };
    let mut seen_covers: HashSet<Vec<(u32, u32)>> = HashSet::new();

    for m in 1..=max_m {
        let sweep = simplified_assignments(lg, m)?;
        report.assignments_swept += sweep.swept;
        for (fv, &r) in report.free_voltages.iter_mut().zip(sweep.ranges.iter()) {
            fv.max_range = fv.max_range.max(r);
        }
        for ccv in sweep.assignments {
            let cov = cover(&ccv)?;
            if !seen_covers.insert(cover_edge_key(&cov.graph)) {
                continue;
            }
            report.covers_examined += 1;
            if !has_uniform_distance_profile(&cov.graph)? {
                continue;
            }
            if !is_vertex_transitive(&cov.graph)? {
                continue;
            }
            report.vt_hits.push(ProbeHit {
                m,
                iota: sweep.iota.clone(),
                zeta: ccv.zetas().to_vec(),
                order: ccv.cover_vertex_count(),
                vt: true,
            });
        }
    }

    // Re-verify every hit from scratch before reporting it.
    for hit in &mut report.vt_hits {
        let zeta: Vec<i64> = hit.zeta.iter().map(|&z| z as i64).collect();
        let ccv = CcvGraph::new(lg.clone(), hit.iota.clone(), zeta)?;
        let cov = cover(&ccv)?;
        assert!(cov.graph.is_simple(), "probe hit must be a simple graph");
        assert!(cov.graph.is_connected(), "probe hit must be connected");
        assert!(
            (0..cov.graph.n_vertices()).all(|v| cov.graph.valence(v) == 3),
            "probe hit must be cubic"
        );
        assert_eq!(
            ccv.cover_vertex_count(),
            hit.order,
            "probe hit order must be reproducible"
        );
        hit.vt = is_vertex_transitive(&cov.graph)?;
        assert!(hit.vt, "probe hit must re-verify as vertex-transitive");
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Combined pipelines.
// ---------------------------------------------------------------------------

/// Members of the full census that pass both structural filters.
pub fn compute_qstar() -> Result<CandidateSet, QuotientError> {
    let q0 = enumerate_q0()?;
    let dia = filter_diagram(&q0)?;
    filter_artefacts(&dia)
}

/// Members of `set` that demonstrably admit a vertex-transitive cover of
/// order above [`Q_ORDER_FLOOR`] within the sweep box, with the probe
/// summary appended to their provenance.
pub fn large_cover_members(set: &CandidateSet, max_m: u64) -> Result<CandidateSet, QuotientError> {
    let mut members = Vec::new();
    for cand in set.iter() {
        let mut report = probe_candidate(&cand.lg, max_m, Q_ORDER_FLOOR)?;
        report.candidate_id = Some(cand.id);
        if report.found_cover_above_floor() {
            let mut kept = cand.clone();
            kept.provenance.push(report.summary());
            members.push(kept);
        }
    }
    Ok(CandidateSet { members })
}

/// Members of the filtered census that demonstrably admit a vertex-transitive
/// cover of order above [`Q_ORDER_FLOOR`] within the sweep box.
///
/// Callers should pass `max_m >= 22` (for instance [`DEFAULT_PROBE_MAX_M`]):
/// the one-vertex members only reach cover orders above the floor there.
pub fn compute_q(max_m: u64) -> Result<CandidateSet, QuotientError> {
    large_cover_members(&compute_qstar()?, max_m)
}

// ---------------------------------------------------------------------------
// Named quotient shapes used throughout the analysis.
// ---------------------------------------------------------------------------

/// Assemble a labelled graph from link, loop, and semiedge pieces.
///
/// Dart layout matches the census builder: links first in the given order
/// (`(u, v, lu, lv)` puts the dart `u -> v` with label `lu` first), then loop
/// dart pairs (labels 1), then semiedges (label 1).
fn build_quotient(
    n: usize,
    links: &[(usize, usize, u32, u32)],
    loops: &[usize],
    semis: &[usize],
) -> Result<LabelledGraph, QuotientError> {
    let mut beg = Vec::new();
    let mut inv = Vec::new();
    let mut lambda = Vec::new();
    for &(u, v, lu, lv) in links {
        let x = beg.len();
        beg.push(u);
        beg.push(v);
        inv.push(x + 1);
        inv.push(x);
        lambda.push(lu);
        lambda.push(lv);
    }
    for &v in loops {
        let x = beg.len();
        beg.push(v);
        beg.push(v);
        inv.push(x + 1);
        inv.push(x);
        lambda.push(1);
        lambda.push(1);
    }
    for &v in semis {
        let x = beg.len();
        beg.push(v);
        inv.push(x);
        lambda.push(1);
    }
    let g = DartGraph::new(n, beg, inv)?;
    Ok(LabelledGraph::new(g, lambda)?)
}

/// The twelve four- and five-vertex quotient shapes that survive both
/// structural filters while carrying some label above 1, indexed 1 to 12.
///
/// Shape 12 is the only one of the twelve admitting vertex-transitive covers
/// of order above [`Q_ORDER_FLOOR`]; its covers are the split depleted
/// wreath graphs (see [`crate::families::delta12`] for the parametrised
/// voltage assignment on the same dart layout).
pub fn delta_quotient(k: usize) -> Result<LabelledGraph, QuotientError> {
    match k {
        // Vertices: a=0, b=1, c=2, d=3 unless noted; e=4 on five vertices.
        1 => build_quotient(
            4,
            &[(0, 1, 1, 1), (0, 2, 1, 2), (0, 3, 1, 2), (2, 3, 1, 1)],
            &[1],
            &[],
        ),
        // Chain d=0, a=1, b=2, c=3 with a parallel pair in the middle.
        2 => build_quotient(
            4,
            &[(0, 1, 2, 1), (1, 2, 1, 1), (1, 2, 1, 1), (2, 3, 1, 2)],
            &[],
            &[0, 3],
        ),
        3 => build_quotient(
            4,
            &[(0, 1, 2, 1), (1, 2, 1, 1), (1, 2, 1, 1), (2, 3, 1, 3)],
            &[],
            &[0],
        ),
        4 => build_quotient(
            4,
            &[(0, 1, 3, 1), (1, 2, 1, 1), (1, 2, 1, 1), (2, 3, 1, 3)],
            &[],
            &[],
        ),
        5 => build_quotient(
            5,
            &[(0, 1, 1, 1), (0, 2, 1, 2), (0, 3, 1, 3), (2, 4, 1, 3)],
            &[1],
            &[],
        ),
        6 => build_quotient(
            4,
            &[(0, 1, 1, 1), (0, 3, 1, 2), (3, 2, 1, 1)],
            &[1, 2],
            &[0],
        ),
        7 => build_quotient(
            4,
            &[(0, 1, 1, 2), (0, 3, 1, 2), (0, 2, 1, 1)],
            &[2],
            &[1, 3],
        ),
        8 => build_quotient(
            4,
            &[(0, 1, 1, 1), (1, 2, 1, 2), (0, 3, 1, 2), (2, 3, 1, 1)],
            &[],
            &[0, 1],
        ),
        9 => build_quotient(
            4,
            &[(0, 1, 1, 2), (0, 3, 1, 3), (0, 2, 1, 1)],
            &[2],
            &[1],
        ),
        10 => build_quotient(
            5,
            &[
                (0, 1, 1, 1),
                (0, 1, 1, 1),
                (0, 3, 1, 3),
                (1, 2, 1, 2),
                (2, 4, 1, 3),
            ],
            &[],
            &[],
        ),
        11 => build_quotient(
            4,
            &[(0, 1, 1, 1), (0, 2, 1, 2), (1, 3, 1, 2)],
            &[],
            &[0, 1, 2, 3],
        ),
        // Vertices u=0, v=1, a=2, b=3, matching the parametrised family.
        12 => build_quotient(
            4,
            &[
                (0, 1, 1, 1),
                (0, 1, 1, 1),
                (2, 0, 2, 1),
                (3, 1, 2, 1),
                (2, 3, 1, 1),
            ],
            &[],
            &[],
        ),
        _ => Err(QuotientError::UnknownShape(k, "1..=12")),
    }
}

/// The eight quotient shapes on at most three vertices with every label 1,
/// indexed 1 to 8. These are the quotients of cubic vertex-transitive graphs
/// by semiregular cyclic groups with at most three vertex orbits, and all of
/// them admit vertex-transitive covers of unbounded order.
pub fn multicirculant_quotient(k: usize) -> Result<LabelledGraph, QuotientError> {
    match k {
        1 => build_quotient(1, &[], &[0], &[0]),
        2 => build_quotient(2, &[(0, 1, 1, 1), (0, 1, 1, 1), (0, 1, 1, 1)], &[], &[]),
        3 => build_quotient(2, &[(0, 1, 1, 1), (0, 1, 1, 1)], &[], &[0, 1]),
        4 => build_quotient(2, &[(0, 1, 1, 1)], &[0, 1], &[]),
        5 => build_quotient(
            3,
            &[(0, 1, 1, 1), (1, 2, 1, 1), (0, 2, 1, 1)],
            &[],
            &[0, 1, 2],
        ),
        6 => build_quotient(
            3,
            &[(0, 1, 1, 1), (1, 2, 1, 1), (1, 2, 1, 1)],
            &[0],
            &[2],
        ),
        7 => build_quotient(
            3,
            &[(0, 1, 1, 1), (0, 1, 1, 1), (0, 2, 1, 1), (1, 2, 1, 1)],
            &[],
            &[2],
        ),
        8 => build_quotient(3, &[(0, 1, 1, 1), (1, 2, 1, 1)], &[0, 2], &[1]),
        _ => Err(QuotientError::UnknownShape(k, "1..=8")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::symmetry::canonical_form;
    use crate::voltage::is_simplified;
    use std::sync::OnceLock;

    fn q0() -> &'static CandidateSet {
        static CELL: OnceLock<CandidateSet> = OnceLock::new();
        CELL.get_or_init(|| enumerate_q0().expect("census must build"))
    }

    fn qstar() -> &'static CandidateSet {
        static CELL: OnceLock<CandidateSet> = OnceLock::new();
        CELL.get_or_init(|| {
            let dia = filter_diagram(q0()).expect("diagram filter must run");
            filter_artefacts(&dia).expect("artefact filter must run")
        })
    }

    fn diagram_survivors() -> &'static CandidateSet {
        static CELL: OnceLock<CandidateSet> = OnceLock::new();
        CELL.get_or_init(|| filter_diagram(q0()).expect("diagram filter must run"))
    }

    #[test]
    fn one_vertex_census_is_complete() {
        // On a single vertex the census can be listed by hand: the empty
        // graph; one semiedge with label 1, 2, or 3; two semiedges labelled
        // (1,1) or (1,2); three semiedges (1,1,1); a loop labelled (1,1) or
        // (1,2); and a loop plus a semiedge, all labels 1.
        let ones: Vec<&Candidate> = q0()
            .iter()
            .filter(|c| c.lg.graph().n_vertices() == 1)
            .collect();
        assert_eq!(ones.len(), 10);
    }

    #[test]
    fn census_is_deterministic_and_deduplicated() {
        let again = enumerate_q0().expect("census must build");
        assert_eq!(q0().len(), again.len());
        for (a, b) in q0().iter().zip(again.iter()) {
            assert_eq!(a.lg.to_lg_string(), b.lg.to_lg_string());
        }
        let mut keys = HashSet::new();
        for cand in q0().iter() {
            let key = labelled_canonical_form(&cand.lg).expect("canonical form");
            assert!(keys.insert(key), "census contains a duplicate member");
        }
    }

    #[test]
    fn census_members_are_connected_and_subcubic() {
        for cand in q0().iter() {
            let g = cand.lg.graph();
            assert!(g.n_vertices() <= MAX_QUOTIENT_VERTICES);
            assert!(g.is_connected(), "census member must be connected");
            for v in 0..g.n_vertices() {
                assert!(cand.lg.deg_lambda(v).expect("degree") <= 3);
            }
            for x in g.darts() {
                assert!(cand.lg.lambda(x) >= 1 && cand.lg.lambda(x) <= 3);
            }
        }
    }

    #[test]
    fn diagram_filter_keeps_loop_plus_semiedge() {
        let lg = multicirculant_quotient(1).expect("shape");
        assert!(diagram_conditions_hold(&lg).expect("filter"));
    }

    #[test]
    fn diagram_filter_rejects_degree_two_member() {
        // A single vertex with one loop has labelled degree 2.
        let lg = build_quotient(1, &[], &[0], &[]).expect("build");
        assert!(!diagram_conditions_hold(&lg).expect("filter"));
    }

    #[test]
    fn diagram_filter_rejects_steep_fibre_chain() {
        // A five-vertex chain of (1,2)-labelled edges descending from v0
        // forces fibre ratios 1, 1/2, 1/4, 1/8, 1/16; the tail vertex
        // violates the one-sixth floor no matter which vertex is chosen.
        let links = [
            (0, 1, 1, 2),
            (1, 2, 1, 2),
            (2, 3, 1, 2),
            (3, 4, 1, 2),
        ];
        // Pad the degrees with semiedges so every vertex reaches degree 3.
        let lg = build_quotient(5, &links, &[], &[0, 0, 1, 2, 3, 4, 4]).expect("build");
        let c = lg.minimal_index_profile().expect("profile");
        assert_eq!(c, vec![16, 8, 4, 2, 1]);
        assert!(!diagram_conditions_hold(&lg).expect("filter"));
    }

    #[test]
    fn named_shapes_survive_both_filters() {
        for k in 1..=12 {
            let lg = delta_quotient(k).expect("shape");
            assert!(
                diagram_conditions_hold(&lg).expect("diagram"),
                "shape {k} must pass the structural filter"
            );
            assert!(
                !artefact_rejects(&lg).expect("artefacts"),
                "shape {k} must pass the artefact filter"
            );
            let pos = qstar().position_of(&lg).expect("lookup");
            assert!(pos.is_some(), "shape {k} must appear in the filtered census");
        }
        for k in 1..=8 {
            let lg = multicirculant_quotient(k).expect("shape");
            let pos = qstar().position_of(&lg).expect("lookup");
            assert!(pos.is_some(), "small shape {k} must appear in the census");
        }
    }

    #[test]
    fn named_shapes_are_pairwise_distinct() {
        let mut keys = HashSet::new();
        for k in 1..=12 {
            let lg = delta_quotient(k).expect("shape");
            let key = labelled_canonical_form(&lg).expect("canon");
            assert!(keys.insert(key), "shape {k} duplicates an earlier shape");
        }
        for k in 1..=8 {
            let lg = multicirculant_quotient(k).expect("shape");
            let key = labelled_canonical_form(&lg).expect("canon");
            assert!(keys.insert(key), "small shape {k} duplicates another shape");
        }
    }

    #[test]
    fn parametrised_family_matches_shape_twelve() {
        // The parametrised voltage family uses the same dart layout as the
        // twelfth shape, so the base labelled graphs must agree verbatim.
        let from_family = families::delta12(5, 1, 2).expect("family member");
        let base = from_family.base();
        let shape = delta_quotient(12).expect("shape");
        assert_eq!(base.to_lg_string(), shape.to_lg_string());
    }

    #[test]
    fn probe_rejects_unextendable_member() {
        // A loop labelled (1,2) admits no admissible index function.
        let g = DartGraph::new(1, vec![0, 0, 0], vec![1, 0, 2]).expect("graph");
        let lg = LabelledGraph::new(g, vec![1, 2, 1]).expect("labels");
        assert!(matches!(
            probe_candidate(&lg, 4, Q_ORDER_FLOOR),
            Err(QuotientError::NotExtendable)
        ));
    }

    #[test]
    fn probe_respects_voltage_normalisation() {
        // Spot-check that every hit the probe reports is in the normalised
        // sweep form it claims to enumerate.
        let lg = delta_quotient(12).expect("shape");
        let tree = spanning_tree(&lg).expect("tree");
        let report = probe_candidate(&lg, 7, Q_ORDER_FLOOR).expect("probe");
        for hit in &report.vt_hits {
            let zeta: Vec<i64> = hit.zeta.iter().map(|&z| z as i64).collect();
            let ccv = CcvGraph::new(lg.clone(), hit.iota.clone(), zeta).expect("ccv");
            assert!(is_simplified(&ccv, &tree));
        }
    }

    #[test]
    fn two_semiedges_at_one_vertex_admit_no_cover() {
        // Both semiedge voltages are forced to half the fibre, so they
        // always clash as parallel darts: no valid assignment exists.
        let lg = build_quotient(2, &[(0, 1, 1, 1)], &[], &[0, 0, 1, 1]).expect("build");
        let report = probe_candidate(&lg, 8, Q_ORDER_FLOOR).expect("probe");
        assert_eq!(report.covers_examined, 0);
        assert!(report.vt_hits.is_empty());
    }

    // ----- Probe outcomes for the twelve named shapes. -----
    //
    // Each test sweeps the full voltage box for one shape and pins down the
    // complete list of vertex-transitive covers in it. The first eleven
    // shapes admit no vertex-transitive cover of order above the floor at
    // any multiplier; the observed small covers are recorded exactly.

    fn probe_shape(k: usize, max_m: u64) -> ProbeReport {
        let lg = delta_quotient(k).expect("shape");
        probe_candidate(&lg, max_m, Q_ORDER_FLOOR).expect("probe")
    }

    #[test]
    fn shape_1_covers_only_order_12() {
        let report = probe_shape(1, 8);
        assert!(!report.hit_orders().is_empty());
        assert!(report.hit_orders().iter().all(|&o| o == 12));
    }

    #[test]
    fn shape_2_admits_no_vt_cover() {
        let report = probe_shape(2, 8);
        assert!(report.covers_examined > 0);
        assert!(report.vt_hits.is_empty());
    }

    #[test]
    fn shape_3_admits_no_vt_cover() {
        let report = probe_shape(3, 6);
        assert!(report.covers_examined > 0);
        assert!(report.vt_hits.is_empty());
    }

    #[test]
    fn shape_4_covers_stay_below_floor() {
        let report = probe_shape(4, 8);
        assert!(report.covers_examined > 0);
        assert!(report.hit_orders().iter().all(|&o| o <= Q_ORDER_FLOOR));
    }

    #[test]
    fn shape_5_covers_stay_below_floor() {
        let report = probe_shape(5, 6);
        assert!(report.covers_examined > 0);
        assert!(report.hit_orders().iter().all(|&o| o <= Q_ORDER_FLOOR));
    }

    #[test]
    fn shape_6_covers_only_order_18() {
        let report = probe_shape(6, 8);
        assert!(!report.hit_orders().is_empty());
        assert!(report.hit_orders().iter().all(|&o| o == 18));
    }

    #[test]
    fn shape_7_covers_only_order_12() {
        let report = probe_shape(7, 8);
        assert!(!report.hit_orders().is_empty());
        assert!(report.hit_orders().iter().all(|&o| o == 12));
    }

    #[test]
    fn shape_8_covers_only_order_6() {
        let report = probe_shape(8, 8);
        assert!(!report.hit_orders().is_empty());
        assert!(report.hit_orders().iter().all(|&o| o == 6));
    }

    #[test]
    fn shape_9_admits_no_vt_cover() {
        let report = probe_shape(9, 6);
        assert!(report.covers_examined > 0);
        assert!(report.vt_hits.is_empty());
    }

    #[test]
    fn shape_10_covers_stay_below_floor() {
        // The smallest covers of this shape have 18 vertices and some of
        // them are vertex-transitive; no larger cover ever is.
        let report = probe_shape(10, 6);
        assert!(report.covers_examined > 0);
        assert!(report.hit_orders().iter().all(|&o| o == 18));
    }

    #[test]
    fn shape_11_admits_no_vt_cover() {
        let report = probe_shape(11, 8);
        assert!(report.covers_examined > 0);
        assert!(report.vt_hits.is_empty());
    }

    #[test]
    fn shape_12_large_covers_are_split_depleted_wreaths_at_odd_m() {
        let report = probe_shape(12, 11);
        let above = report.hits_above_floor();
        assert!(!above.is_empty());
        // Large hits occur exactly at odd multipliers above 3, with cover
        // order six times the multiplier.
        let mut ms: Vec<u64> = above.iter().map(|h| h.m).collect();
        ms.sort_unstable();
        ms.dedup();
        assert_eq!(ms, vec![5, 7, 9, 11]);
        for hit in &above {
            assert_eq!(hit.order, 6 * hit.m);
            // Each large cover is isomorphic to the split depleted wreath
            // graph on the same number of vertices.
            let zeta: Vec<i64> = hit.zeta.iter().map(|&z| z as i64).collect();
            let lg = delta_quotient(12).expect("shape");
            let ccv = CcvGraph::new(lg, hit.iota.clone(), zeta).expect("ccv");
            let cov = cover(&ccv).expect("cover");
            let sdw = families::sdw(hit.m, 3).expect("wreath graph");
            assert_eq!(
                canonical_form(&cov.graph).expect("canon"),
                canonical_form(&sdw).expect("canon"),
                "large cover at m={} must be the split depleted wreath",
                hit.m
            );
        }
    }

    #[test]
    fn artefact_rejections_hide_no_large_vt_covers() {
        // Ground truth check: every member removed by the artefact filter
        // really admits no vertex-transitive cover above the floor.
        let kept: HashSet<usize> = qstar().iter().map(|c| c.id).collect();
        let mut rejected = 0;
        for cand in diagram_survivors().iter() {
            if kept.contains(&cand.id) {
                continue;
            }
            rejected += 1;
            let report = probe_candidate(&cand.lg, 8, Q_ORDER_FLOOR).expect("probe");
            assert!(
                !report.found_cover_above_floor(),
                "artefact-rejected candidate {} has a large VT cover",
                cand.id
            );
        }
        assert!(rejected > 0, "artefact filter should reject something");
    }

    #[test]
    fn census_counts_are_frozen() {
        // The counts below freeze the behaviour of the full pipeline. The
        // one-vertex figure is confirmed by the hand census above; the rest
        // pin down the enumeration so that any change to the builders or
        // filters that shifts a count is caught immediately.
        let by_vertices: Vec<usize> = (1..=MAX_QUOTIENT_VERTICES)
            .map(|n| q0().iter().filter(|c| c.lg.graph().n_vertices() == n).count())
            .collect();
        assert_eq!(by_vertices, vec![10, 44, 179, 936, 5104]);
        assert_eq!(q0().len(), 6273);
        assert_eq!(diagram_survivors().len(), 108);
        assert_eq!(qstar().len(), 79);
    }

    #[test]
    fn large_cover_membership_matches_known_shapes() {
        let q = compute_q(DEFAULT_PROBE_MAX_M).expect("pipeline");
        for cand in q.iter() {
            println!("large-cover member: {}", cand.ledger_line());
            println!("  {}", cand.lg.to_lg_string());
        }
        assert_eq!(q.len(), 9, "exactly nine members admit large VT covers");
        // The nine are the eight all-ones shapes on at most three vertices
        // plus the twelfth named shape.
        let mut expect_keys = HashSet::new();
        for k in 1..=8 {
            let lg = multicirculant_quotient(k).expect("shape");
            expect_keys.insert(labelled_canonical_form(&lg).expect("canon"));
        }
        let lg12 = delta_quotient(12).expect("shape");
        expect_keys.insert(labelled_canonical_form(&lg12).expect("canon"));
        let got_keys: HashSet<Vec<u8>> = q
            .iter()
            .map(|c| labelled_canonical_form(&c.lg).expect("canon"))
            .collect();
        assert_eq!(got_keys, expect_keys);
        // Sanity: every all-ones member of the list has at most 3 vertices.
        for cand in q.iter() {
            if cand.lg.lambdas().iter().all(|&l| l == 1) {
                assert!(cand.lg.graph().n_vertices() <= 3);
            }
        }
    }
}
