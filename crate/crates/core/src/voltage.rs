//! Cyclic generalized voltage graphs and their covers.
//!
//! A voltage datum assigns each vertex a fibre size `iota(v)` and each dart
//! a voltage `zeta(x)`, subject to the ratio equation
//! `lambda(x) iota(beg x) = lambda(inv x) iota(beg inv x)` and the inverse
//! equation `zeta(inv x) = -zeta(x)` modulo that common value. The cover has
//! `iota(v)` vertices over `v` and `lambda(x) iota(beg x)` darts over `x`,
//! with the cyclic group acting by shifting fibre indices; this module
//! builds covers, checks when they are cubic, normalises voltages along a
//! spanning tree, and lifts walks.

use crate::dart::{DartGraph, EdgeKind, GraphError, Walk};
use crate::labelled::{LabelError, LabelledGraph};
use crate::symmetry::{self, Permutation, SymError};
use num_integer::Integer;
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

/// Bound on the number of lifts a single walk may branch into.
pub const MAX_LIFTS: usize = 100_000;

/// Errors for voltage data and cover construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VoltageError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("symmetry check failed: {0}")]
    Sym(#[from] SymError),
    #[error("iota table has {got} entries for {want} vertices")]
    IotaLengthMismatch { got: usize, want: usize },
    #[error("vertex {vertex}: iota must be at least 1")]
    IotaZero { vertex: usize },
    #[error("zeta table has {got} entries for {want} darts")]
    ZetaLengthMismatch { got: usize, want: usize },
    #[error("dart {dart} violates the ratio equation")]
    RatioViolation { dart: usize },
    #[error("dart {dart} violates the inverse-voltage equation")]
    InvvoltViolation { dart: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("the mixed-type edges contain a cycle (dart {dart}); no suitable spanning tree exists")]
    MixedEdgeCycle { dart: usize },
    #[error("voltage is not zero on spanning-tree dart {dart}")]
    NotTreeNormalised { dart: usize },
    #[error("voltage is not simplified")]
    NotSimplified,
    #[error("no adjacency rule covers edge type [{small},{big}] (dart {dart})")]
    UnsupportedEdgeType { dart: usize, small: u32, big: u32 },
    #[error("input is not a ccv graph: its cover is not cubic")]
    CoverNotCubic,
    #[error("voltage simplification produced a non-isomorphic cover")]
    SimplifyCheckFailed,
    #[error("walk has more than {MAX_LIFTS} lifts")]
    LiftExplosion,
    #[error("ccv parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// The first violated condition of the five-part cubic-cover test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcvViolation {
    /// (1) A dart with gcd(lambda(x), lambda(inv x)) > 1.
    LambdaNotCoprime { dart: usize },
    /// (2) Two parallel darts with congruent voltages (cover not simple).
    ParallelVoltageClash { dart: usize, other: usize },
    /// (3) A semiedge dart with voltage 0 mod its fibre size.
    SemiedgeVoltageZero { dart: usize },
    /// (4) gcd of all voltages and fibre sizes above 1 (cover disconnected).
    GlobalGcdAbove1 { gcd: u64 },
    /// (5) A vertex with label degree different from 3.
    DegreeNot3 { vertex: usize },
}

impl std::fmt::Display for CcvViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CcvViolation::LambdaNotCoprime { dart } => {
                write!(f, "condition 1: labels at dart {dart} share a factor")
            }
            CcvViolation::ParallelVoltageClash { dart, other } => {
                write!(f, "condition 2: parallel darts {dart},{other} have congruent voltages")
            }
            CcvViolation::SemiedgeVoltageZero { dart } => {
                write!(f, "condition 3: semiedge dart {dart} has zero voltage")
            }
            CcvViolation::GlobalGcdAbove1 { gcd } => {
                write!(f, "condition 4: voltages and fibre sizes share the factor {gcd}")
            }
            CcvViolation::DegreeNot3 { vertex } => {
                write!(f, "condition 5: vertex {vertex} has label degree other than 3")
            }
        }
    }
}

/// A labelled graph with a validated voltage datum (fibre sizes and
/// voltages). Voltages are stored as canonical residues in
/// `[0, lambda(x) iota(beg x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CcvGraph {
    base: LabelledGraph,
    iota: Vec<u64>,
    zeta: Vec<u64>,
}

impl CcvGraph {
    /// Validates the ratio and inverse-voltage equations and reduces every
    /// voltage to its canonical residue.
    pub fn new(base: LabelledGraph, iota: Vec<u64>, zeta: Vec<i64>) -> Result<Self, VoltageError> {
        let g = base.graph();
        if iota.len() != g.n_vertices() {
            return Err(VoltageError::IotaLengthMismatch {
                got: iota.len(),
                want: g.n_vertices(),
            });
        }
        if let Some(vertex) = iota.iter().position(|&i| i == 0) {
            return Err(VoltageError::IotaZero { vertex });
        }
        if zeta.len() != g.n_darts() {
            return Err(VoltageError::ZetaLengthMismatch {
                got: zeta.len(),
                want: g.n_darts(),
            });
        }
        for x in g.darts() {
            let mx = base.lambda(x) as u64 * iota[g.beg(x)];
            let mi = base.lambda(g.inv(x)) as u64 * iota[g.beg(g.inv(x))];
            if mx != mi {
                return Err(VoltageError::RatioViolation { dart: x });
            }
        }
        let reduced: Vec<u64> = zeta
            .iter()
            .enumerate()
            .map(|(x, &z)| {
                let m = base.lambda(x) as i64 * iota[g.beg(x)] as i64;
                (z.rem_euclid(m)) as u64
            })
            .collect();
        for x in g.darts() {
            let m = base.lambda(x) as u64 * iota[g.beg(x)];
            if (reduced[x] + reduced[g.inv(x)]) % m != 0 {
                return Err(VoltageError::InvvoltViolation { dart: x });
            }
        }
        Ok(CcvGraph {
            base,
            iota,
            zeta: reduced,
        })
    }

    pub fn base(&self) -> &LabelledGraph {
        &self.base
    }

    pub fn graph(&self) -> &DartGraph {
        self.base.graph()
    }

    pub fn iota(&self, v: usize) -> u64 {
        self.iota[v]
    }

    pub fn iotas(&self) -> &[u64] {
        &self.iota
    }

    pub fn zeta(&self, x: usize) -> u64 {
        self.zeta[x]
    }

    pub fn zetas(&self) -> &[u64] {
        &self.zeta
    }

    /// The modulus `lambda(x) iota(beg x)`, which is also the fibre size
    /// over the dart `x`.
    pub fn modulus(&self, x: usize) -> u64 {
        self.base.lambda(x) as u64 * self.iota[self.graph().beg(x)]
    }

    /// Number of cover vertices.
    pub fn cover_vertex_count(&self) -> u64 {
        self.iota.iter().sum()
    }

    /// Order of the canonical covering transformation: the lcm of the dart
    /// fibre sizes.
    pub fn rho_order(&self) -> u64 {
        self.graph()
            .darts()
            .fold(1u64, |acc, x| acc.lcm(&self.modulus(x)))
    }

    /// Serializes in the `ccv` text format: the `lg` block followed by
    /// `iota <vertex> <value>` and `zeta <dart> <value>` lines.
    pub fn to_ccv_string(&self) -> String {
        let mut s = self.base.to_lg_string();
        for v in self.graph().vertices() {
            s.push_str(&format!("iota {} {}\n", v, self.iota[v]));
        }
        for x in self.graph().darts() {
            s.push_str(&format!("zeta {} {}\n", x, self.zeta[x]));
        }
        s
    }

    /// Parses the `ccv` text format; `zeta` values may be negative and are
    /// reduced to canonical residues.
    pub fn parse_ccv(input: &str) -> Result<Self, VoltageError> {
        let mut lg_part = String::new();
        let mut iota_lines: Vec<(usize, &str)> = Vec::new();
        let mut zeta_lines: Vec<(usize, &str)> = Vec::new();
        for (no, line) in input.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.starts_with("iota") {
                iota_lines.push((no + 1, trimmed));
            } else if trimmed.starts_with("zeta") {
                zeta_lines.push((no + 1, trimmed));
            } else {
                lg_part.push_str(line);
                lg_part.push('\n');
            }
        }
        let base = LabelledGraph::parse_lg(&lg_part)?;
        let g = base.graph();
        let parse3 = |line: usize, text: &str, label: &str| -> Result<(usize, i64), VoltageError> {
            let f: Vec<&str> = text.split_whitespace().collect();
            if f.len() != 3 {
                return Err(VoltageError::Parse {
                    line,
                    msg: format!("expected `{label} <id> <value>`"),
                });
            }
            let id = f[1].parse().map_err(|_| VoltageError::Parse {
                line,
                msg: format!("bad id `{}`", f[1]),
            })?;
            let val = f[2].parse().map_err(|_| VoltageError::Parse {
                line,
                msg: format!("bad value `{}`", f[2]),
            })?;
            Ok((id, val))
        };
        let mut iota: Vec<Option<u64>> = vec![None; g.n_vertices()];
        for (line, text) in iota_lines {
            let (v, val) = parse3(line, text, "iota")?;
            if v >= iota.len() || iota[v].is_some() || val < 1 {
                return Err(VoltageError::Parse {
                    line,
                    msg: format!("bad or repeated iota for vertex {v}"),
                });
            }
            iota[v] = Some(val as u64);
        }
        let mut zeta: Vec<Option<i64>> = vec![None; g.n_darts()];
        for (line, text) in zeta_lines {
            let (x, val) = parse3(line, text, "zeta")?;
            if x >= zeta.len() || zeta[x].is_some() {
                return Err(VoltageError::Parse {
                    line,
                    msg: format!("bad or repeated zeta for dart {x}"),
                });
            }
            zeta[x] = Some(val);
        }
        let iota: Vec<u64> = iota
            .into_iter()
            .enumerate()
            .map(|(v, o)| {
                o.ok_or(VoltageError::Parse {
                    line: 0,
                    msg: format!("missing iota for vertex {v}"),
                })
            })
            .collect::<Result<_, _>>()?;
        let zeta: Vec<i64> = zeta
            .into_iter()
            .enumerate()
            .map(|(x, o)| {
                o.ok_or(VoltageError::Parse {
                    line: 0,
                    msg: format!("missing zeta for dart {x}"),
                })
            })
            .collect::<Result<_, _>>()?;
        CcvGraph::new(base, iota, zeta)
    }
}

/// Deterministic spanning tree (as edge-representative darts) that contains
/// every mixed-type edge: mixed edges are seeded first (an error if they
/// already close a cycle), then the tree is completed by a breadth-first
/// sweep from the lowest vertex with dart-id tie-breaks.
pub fn spanning_tree(lg: &LabelledGraph) -> Result<Vec<usize>, VoltageError> {
    let g = lg.graph();
    if !g.is_connected() {
        return Err(VoltageError::Disconnected);
    }
    let n = g.n_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut tree = Vec::new();
    for x in g.edge_representatives() {
        if g.edge_kind(x)? != EdgeKind::Link || lg.lambda(x) == lg.lambda(g.inv(x)) {
            continue;
        }
        let (ru, rv) = (find(&mut parent, g.beg(x)), find(&mut parent, g.end(x)));
        if ru == rv {
            return Err(VoltageError::MixedEdgeCycle { dart: x });
        }
        parent[ru] = rv;
        let moved = std::mem::take(&mut members[ru]);
        members[rv].extend(moved);
        tree.push(x);
    }
    // Complete by BFS from vertex 0; absorbing a seeded component enqueues
    // all of its vertices so growth continues through it.
    let root = find(&mut parent, 0);
    let mut start = members[root].clone();
    start.sort_unstable();
    let mut in_main = vec![false; n];
    for &v in &start {
        in_main[v] = true;
    }
    let mut queue: VecDeque<usize> = start.into_iter().collect();
    while let Some(v) = queue.pop_front() {
        for &x in g.darts_at(v) {
            if g.edge_kind(x)? != EdgeKind::Link {
                continue;
            }
            let w = g.end(x);
            if in_main[w] {
                continue;
            }
            tree.push(x.min(g.inv(x)));
            let rw = find(&mut parent, w);
            let mut absorbed = std::mem::take(&mut members[rw]);
            absorbed.sort_unstable();
            for &a in &absorbed {
                in_main[a] = true;
            }
            queue.extend(absorbed);
        }
    }
    tree.sort_unstable();
    debug_assert_eq!(tree.len(), n - 1);
    Ok(tree)
}

/// True iff the voltage vanishes on both darts of every tree edge.
pub fn is_tree_normalised(c: &CcvGraph, tree: &[usize]) -> bool {
    tree.iter()
        .all(|&x| c.zeta(x) == 0 && c.zeta(c.graph().inv(x)) == 0)
}

/// Checks the five cubic-cover conditions in order against a tree-normalised
/// voltage and reports the first failure, or `None` when the cover is a
/// cubic graph: (1) coprime labels per edge, (2) parallel darts carry
/// distinct voltages modulo the gcd of their endpoint fibre sizes, (3)
/// nonzero voltage on semiedges, (4) voltages and fibre sizes globally
/// coprime, (5) label degree 3 everywhere.
pub fn ccv_violation(c: &CcvGraph, tree: &[usize]) -> Result<Option<CcvViolation>, VoltageError> {
    if let Some(&x) = tree
        .iter()
        .find(|&&x| c.zeta(x) != 0 || c.zeta(c.graph().inv(x)) != 0)
    {
        return Err(VoltageError::NotTreeNormalised { dart: x });
    }
    let g = c.graph();
    let lg = c.base();
    for x in g.darts() {
        if (lg.lambda(x) as u64).gcd(&(lg.lambda(g.inv(x)) as u64)) > 1 {
            return Ok(Some(CcvViolation::LambdaNotCoprime { dart: x }));
        }
    }
    // Parallel darts share both endpoints; this includes the two darts of a
    // loop and any two semiedge darts at one vertex, so the scan groups all
    // darts by (beg, end) and compares every pair in a group.
    let mut keyed: Vec<(usize, usize, usize)> =
        g.darts().map(|x| (g.beg(x), g.end(x), x)).collect();
    keyed.sort_unstable();
    let mut i = 0;
    while i < keyed.len() {
        let mut j = i;
        while j < keyed.len() && keyed[j].0 == keyed[i].0 && keyed[j].1 == keyed[i].1 {
            j += 1;
        }
        let modulus = c.iota(keyed[i].0).gcd(&c.iota(keyed[i].1));
        for a in i..j {
            for b in a + 1..j {
                let (x, y) = (keyed[a].2, keyed[b].2);
                if (c.zeta(x) % modulus) == (c.zeta(y) % modulus) {
                    return Ok(Some(CcvViolation::ParallelVoltageClash { dart: x, other: y }));
                }
            }
        }
        i = j;
    }
    for x in g.darts() {
        if g.inv(x) == x && c.zeta(x) % c.iota(g.beg(x)) == 0 {
            return Ok(Some(CcvViolation::SemiedgeVoltageZero { dart: x }));
        }
    }
    let mut d = 0u64;
    for x in g.darts() {
        d = d.gcd(&c.zeta(x));
    }
    for v in g.vertices() {
        d = d.gcd(&c.iota(v));
    }
    if d > 1 {
        return Ok(Some(CcvViolation::GlobalGcdAbove1 { gcd: d }));
    }
    for v in g.vertices() {
        if lg.deg_lambda(v)? != 3 {
            return Ok(Some(CcvViolation::DegreeNot3 { vertex: v }));
        }
    }
    Ok(None)
}

/// True iff all five cubic-cover conditions hold.
pub fn is_ccv(c: &CcvGraph, tree: &[usize]) -> Result<bool, VoltageError> {
    Ok(ccv_violation(c, tree)?.is_none())
}

/// Checks that the cover is a cubic graph directly from its definition:
/// simple, connected and 3-valent. Independent of the condition-based test.
pub fn is_ccv_by_cover(c: &CcvGraph) -> Result<bool, VoltageError> {
    let cov = cover(c)?;
    let g = &cov.graph;
    Ok(g.is_simple() && g.is_connected() && g.vertices().all(|v| g.valence(v) == 3))
}

/// True iff the voltage is simplified with respect to `tree`: zero on the
/// tree, the tree contains every mixed edge, every voltage is below the gcd
/// of its endpoint fibre sizes, semiedges carry exactly half a fibre, and
/// loops avoid 0 and half a fibre.
pub fn is_simplified(c: &CcvGraph, tree: &[usize]) -> bool {
    let g = c.graph();
    let lg = c.base();
    if !is_tree_normalised(c, tree) {
        return false;
    }
    let tree_set: BTreeSet<usize> = tree.iter().copied().collect();
    for x in g.edge_representatives() {
        let is_link = g.inv(x) != x && g.beg(x) != g.end(x);
        if is_link && lg.lambda(x) != lg.lambda(g.inv(x)) && !tree_set.contains(&x) {
            return false;
        }
    }
    for x in g.darts() {
        let gcd_iota = c.iota(g.beg(x)).gcd(&c.iota(g.beg(g.inv(x))));
        if c.zeta(x) >= gcd_iota {
            return false;
        }
        let iota = c.iota(g.beg(x));
        if g.inv(x) == x && c.zeta(x) * 2 != iota {
            return false;
        }
        if g.inv(x) != x && g.beg(x) == g.end(x) {
            let z = c.zeta(x);
            if z == 0 || z * 2 == iota {
                return false;
            }
        }
    }
    true
}

/// The cover of a voltage graph, with projections, fibre indices and the
/// canonical covering transformation.
#[derive(Debug, Clone)]
pub struct CoverGraph {
    pub graph: DartGraph,
    /// Base vertex under each cover vertex.
    pub proj_v: Vec<usize>,
    /// Fibre index of each cover vertex.
    pub index_v: Vec<u64>,
    /// Base dart under each cover dart.
    pub proj_d: Vec<usize>,
    /// Fibre index of each cover dart.
    pub index_d: Vec<u64>,
    rho_v: Permutation,
    rho_d: Vec<usize>,
    voff: Vec<usize>,
    doff: Vec<usize>,
    rho_order: u64,
}

impl CoverGraph {
    /// Cover vertex id of `(v, i)`.
    pub fn vertex_id(&self, v: usize, i: u64) -> usize {
        self.voff[v] + i as usize
    }

    /// Cover dart id of `(x, i)`.
    pub fn dart_id(&self, x: usize, i: u64) -> usize {
        self.doff[x] + i as usize
    }

    /// The vertices over `v`.
    pub fn fibre_vertices(&self, v: usize) -> std::ops::Range<usize> {
        self.voff[v]..self.voff[v] + self.fibre_size(v)
    }

    fn fibre_size(&self, v: usize) -> usize {
        if v + 1 < self.voff.len() {
            self.voff[v + 1] - self.voff[v]
        } else {
            self.graph.n_vertices() - self.voff[v]
        }
    }

    /// The darts over `x`.
    pub fn fibre_darts(&self, x: usize) -> std::ops::Range<usize> {
        let end = if x + 1 < self.doff.len() {
            self.doff[x + 1]
        } else {
            self.graph.n_darts()
        };
        self.doff[x]..end
    }

    /// The canonical covering transformation on vertices: `(v,i) -> (v,i+1)`.
    pub fn rho(&self) -> &Permutation {
        &self.rho_v
    }

    /// Its action on cover darts: `(x,i) -> (x,i+1)`.
    pub fn rho_dart_images(&self) -> &[usize] {
        &self.rho_d
    }

    /// Order of the covering transformation (as a graph automorphism, i.e.
    /// acting on vertices and darts simultaneously).
    pub fn rho_order(&self) -> u64 {
        self.rho_order
    }
}

/// Builds the cover: vertices `(v,i)` for `i < iota(v)`, darts `(x,i)` for
/// `i < lambda(x) iota(beg x)`, with `beg(x,i) = (beg x, i mod iota(beg x))`
/// and `(x,i)^{-1} = (inv x, i + zeta(x))`.
pub fn cover(c: &CcvGraph) -> Result<CoverGraph, VoltageError> {
    let g = c.graph();
    let mut voff = Vec::with_capacity(g.n_vertices());
    let mut acc = 0usize;
    for v in g.vertices() {
        voff.push(acc);
        acc += c.iota(v) as usize;
    }
    let n_cover_v = acc;
    let mut doff = Vec::with_capacity(g.n_darts());
    let mut acc_d = 0usize;
    for x in g.darts() {
        doff.push(acc_d);
        acc_d += c.modulus(x) as usize;
    }
    let n_cover_d = acc_d;
    let mut beg = vec![0usize; n_cover_d];
    let mut inv = vec![0usize; n_cover_d];
    let mut proj_d = vec![0usize; n_cover_d];
    let mut index_d = vec![0u64; n_cover_d];
    for x in g.darts() {
        let m = c.modulus(x);
        for i in 0..m {
            let id = doff[x] + i as usize;
            proj_d[id] = x;
            index_d[id] = i;
            beg[id] = voff[g.beg(x)] + (i % c.iota(g.beg(x))) as usize;
            inv[id] = doff[g.inv(x)] + ((i + c.zeta(x)) % m) as usize;
        }
    }
    let graph = DartGraph::new(n_cover_v, beg, inv)?;
    let mut proj_v = vec![0usize; n_cover_v];
    let mut index_v = vec![0u64; n_cover_v];
    let mut rho_images = vec![0usize; n_cover_v];
    for v in g.vertices() {
        let iv = c.iota(v);
        for i in 0..iv {
            let id = voff[v] + i as usize;
            proj_v[id] = v;
            index_v[id] = i;
            rho_images[id] = voff[v] + ((i + 1) % iv) as usize;
        }
    }
    let rho_v = Permutation::new(rho_images).expect("fibre shift is a bijection");
    let mut rho_d = vec![0usize; n_cover_d];
    for x in g.darts() {
        let m = c.modulus(x);
        for i in 0..m {
            rho_d[doff[x] + i as usize] = doff[x] + ((i + 1) % m) as usize;
        }
    }
    Ok(CoverGraph {
        graph,
        proj_v,
        index_v,
        proj_d,
        index_d,
        rho_v,
        rho_d,
        voff,
        doff,
        rho_order: c.rho_order(),
    })
}

/// Cover edge set produced solely from the four adjacency rules for
/// simplified voltages; an independent oracle against `cover()`. Supports
/// the edge types `[1,1]`, `[1,j]`, loops and semiedges.
pub fn cover_adjacency_oracle(
    c: &CcvGraph,
    tree: &[usize],
) -> Result<BTreeSet<(usize, usize)>, VoltageError> {
    if !is_simplified(c, tree) {
        return Err(VoltageError::NotSimplified);
    }
    let g = c.graph();
    let lg = c.base();
    let mut voff = Vec::with_capacity(g.n_vertices());
    let mut acc = 0usize;
    for v in g.vertices() {
        voff.push(acc);
        acc += c.iota(v) as usize;
    }
    let vid = |v: usize, i: u64| voff[v] + (i % c.iota(v)) as usize;
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        edges.insert((a.min(b), a.max(b)));
    };
    for x in g.edge_representatives() {
        match g.edge_kind(x)? {
            EdgeKind::Semiedge => {
                let u = g.beg(x);
                for i in 0..c.iota(u) {
                    add(vid(u, i), vid(u, i + c.iota(u) / 2));
                }
            }
            EdgeKind::Loop => {
                let u = g.beg(x);
                for i in 0..c.iota(u) {
                    add(vid(u, i), vid(u, i + c.zeta(x)));
                    add(vid(u, i), vid(u, i + c.iota(u) - c.zeta(x)));
                }
            }
            EdgeKind::Link => {
                let (a, b) = (lg.lambda(x), lg.lambda(g.inv(x)));
                if a == 1 && b == 1 {
                    let (u, v) = (g.beg(x), g.end(x));
                    for i in 0..c.iota(u) {
                        add(vid(u, i), vid(v, i + c.zeta(x)));
                    }
                } else if a.min(b) == 1 {
                    // Orient from the label-1 side, whose fibre is j times
                    // larger; the voltage is zero because mixed edges lie on
                    // the tree.
                    let y = if a == 1 { x } else { g.inv(x) };
                    let (u, v) = (g.beg(y), g.end(y));
                    let j = lg.lambda(g.inv(y)) as u64;
                    for i in 0..c.iota(v) {
                        for k in 0..j {
                            add(vid(u, i + k * c.iota(v)), vid(v, i));
                        }
                    }
                } else {
                    return Err(VoltageError::UnsupportedEdgeType {
                        dart: x,
                        small: a.min(b),
                        big: a.max(b),
                    });
                }
            }
        }
    }
    Ok(edges)
}

/// Re-gauges the voltage to a simplified one with an isomorphic cover:
/// fibres are shifted so tree voltages vanish (loop and semiedge voltages
/// are gauge-invariant and stay put). The construction is self-verified by
/// comparing canonical forms of the two covers.
pub fn simplify_voltage(c: &CcvGraph) -> Result<CcvGraph, VoltageError> {
    if !is_ccv_by_cover(c)? {
        return Err(VoltageError::CoverNotCubic);
    }
    let g = c.graph();
    let tree = spanning_tree(c.base())?;
    let tree_set: BTreeSet<usize> = tree.iter().copied().collect();
    // Fibre shift per vertex, propagated over the tree so that every tree
    // dart ends up with zero voltage.
    let mut sigma: Vec<Option<i128>> = vec![None; g.n_vertices()];
    sigma[0] = Some(0);
    let mut tree_at: Vec<Vec<usize>> = vec![Vec::new(); g.n_vertices()];
    for &x in &tree {
        tree_at[g.beg(x)].push(x);
        tree_at[g.end(x)].push(g.inv(x));
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &x in &tree_at[u] {
            let v = g.end(x);
            if sigma[v].is_none() {
                let iv = c.iota(v) as i128;
                let s = (sigma[u].unwrap() - c.zeta(x) as i128).rem_euclid(iv);
                sigma[v] = Some(s);
                queue.push_back(v);
            }
        }
    }
    let sigma: Vec<i128> = sigma
        .into_iter()
        .map(|s| s.expect("spanning tree reaches every vertex"))
        .collect();
    let mut zeta: Vec<i64> = vec![0; g.n_darts()];
    for x in g.darts() {
        let rep = x.min(g.inv(x));
        if tree_set.contains(&rep) {
            zeta[x] = 0;
        } else if g.beg(x) == g.end(x) {
            // Loop or semiedge: shifting the single fibre cancels out.
            zeta[x] = c.zeta(x) as i64;
        } else {
            let m = c.modulus(x) as i128;
            let z = (c.zeta(x) as i128 + sigma[g.end(x)] - sigma[g.beg(x)]).rem_euclid(m);
            zeta[x] = z as i64;
        }
    }
    let simplified = CcvGraph::new(c.base().clone(), c.iota.clone(), zeta)?;
    let before = symmetry::canonical_form(&cover(c)?.graph)?;
    let after = symmetry::canonical_form(&cover(&simplified)?.graph)?;
    if before != after {
        return Err(VoltageError::SimplifyCheckFailed);
    }
    Ok(simplified)
}

/// The set of fibre indices reachable at the end of a walk's lifts:
/// `offset + <stride>` modulo the fibre size of the final vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Endset {
    pub offset: u64,
    pub stride: u64,
    pub modulus: u64,
}

impl Endset {
    /// Effective step between members.
    fn step(&self) -> u64 {
        self.stride.gcd(&self.modulus)
    }

    pub fn contains(&self, j: u64) -> bool {
        (j % self.modulus + self.modulus - self.offset % self.modulus) % self.step() == 0
    }

    pub fn members(&self) -> BTreeSet<u64> {
        let step = self.step();
        (0..self.modulus / step)
            .map(|k| (self.offset + k * step) % self.modulus)
            .collect()
    }
}

/// Endset of a base walk: voltages summed modulo the final fibre size, plus
/// the subgroup generated by the gcd of the fibre sizes along the walk.
pub fn endset(c: &CcvGraph, w: &Walk) -> Result<Endset, VoltageError> {
    let g = c.graph();
    validate_walk(g, w)?;
    let last = *w.darts().last().expect("walks are nonempty");
    let modulus = c.iota(g.end(last));
    let mut offset = 0u64;
    let mut stride = 0u64;
    for &x in w.darts() {
        offset = (offset + c.zeta(x)) % modulus;
        stride = stride.gcd(&c.iota(g.beg(x)));
    }
    Ok(Endset {
        offset,
        stride,
        modulus,
    })
}

fn validate_walk(g: &DartGraph, w: &Walk) -> Result<(), VoltageError> {
    for &x in w.darts() {
        if x >= g.n_darts() {
            return Err(GraphError::UnknownDart(x).into());
        }
    }
    for pair in w.darts().windows(2) {
        if g.beg(pair[1]) != g.end(pair[0]) {
            return Err(GraphError::NotAWalk {
                prev: pair[0],
                next: pair[1],
            }
            .into());
        }
    }
    Ok(())
}

/// All lifts of a base walk starting at index 0 of its initial fibre, as
/// walks in the given cover. Branching factor is `lambda(x)` per step.
pub fn lifts(c: &CcvGraph, cov: &CoverGraph, w: &Walk) -> Result<Vec<Walk>, VoltageError> {
    let g = c.graph();
    validate_walk(g, w)?;
    let start = g.beg(w.darts()[0]);
    let mut partial: Vec<(usize, Vec<usize>)> = vec![(cov.vertex_id(start, 0), Vec::new())];
    for &x in w.darts() {
        let iota_u = c.iota(g.beg(x));
        let m = c.modulus(x);
        let mut next = Vec::with_capacity(partial.len() * c.base().lambda(x) as usize);
        for (at, darts) in partial {
            let i0 = cov.index_v[at];
            let mut i = i0;
            while i < m {
                let lifted = cov.dart_id(x, i);
                let landing = cov.graph.end(lifted);
                let mut ext = darts.clone();
                ext.push(lifted);
                next.push((landing, ext));
                i += iota_u;
            }
        }
        partial = next;
        if partial.len() > MAX_LIFTS {
            return Err(VoltageError::LiftExplosion);
        }
    }
    partial
        .into_iter()
        .map(|(_, darts)| Walk::new(&cov.graph, darts).map_err(VoltageError::from))
        .collect()
}

/// Final-vertex fibre indices over all lifts of a walk.
pub fn lift_final_indices(
    c: &CcvGraph,
    cov: &CoverGraph,
    w: &Walk,
) -> Result<BTreeSet<u64>, VoltageError> {
    Ok(lifts(c, cov, w)?
        .iter()
        .map(|l| cov.index_v[l.last_vertex(&cov.graph)])
        .collect())
}

/// A walk is lambda-reduced when it never backtracks over a dart whose
/// reverse has label 1, including across the wrap-around when the last dart
/// returns to the start.
pub fn is_lambda_reduced(lg: &LabelledGraph, w: &Walk) -> bool {
    let g = lg.graph();
    for pair in w.darts().windows(2) {
        if pair[1] == g.inv(pair[0]) && lg.lambda(g.inv(pair[0])) == 1 {
            return false;
        }
    }
    let first = w.darts()[0];
    let last = *w.darts().last().expect("walks are nonempty");
    if last == g.inv(first) && lg.lambda(first) == 1 {
        return false;
    }
    true
}
