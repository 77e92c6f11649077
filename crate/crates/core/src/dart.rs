//! Dart-based multigraph model.
//!
//! A graph is a set of vertices together with a set of darts (half-edges),
//! a map `beg` assigning to each dart its initial vertex, and an involution
//! `inv` pairing each dart with its reverse. Fixed points of `inv` are
//! semiedges; a non-fixed dart whose reverse starts at the same vertex is a
//! loop dart; everything else is a link dart. This model subsumes simple
//! graphs, multigraphs with parallel edges, loops and semiedges, and is the
//! substrate for both quotient and cover graphs.

use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

/// Largest vertex count accepted by the cycle-counting routines.
pub const MAX_CYCLE_VERTICES: usize = 5000;
/// Largest cycle length accepted by the cycle-counting routines.
pub const MAX_CYCLE_LEN: usize = 12;

/// Errors for graph construction, validation and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("beg table has {beg} entries but inv table has {inv}")]
    TableLengthMismatch { beg: usize, inv: usize },
    #[error("dart {dart}: beg vertex {vertex} does not exist ({n_vertices} vertices)")]
    BegOutOfRange {
        dart: usize,
        vertex: usize,
        n_vertices: usize,
    },
    #[error("dart {dart}: inv target {target} does not exist ({n_darts} darts)")]
    InvOutOfRange {
        dart: usize,
        target: usize,
        n_darts: usize,
    },
    #[error("inv not involution: inv(inv({dart})) = {round_trip} != {dart}")]
    InvNotInvolution { dart: usize, round_trip: usize },
    #[error("unknown dart id {0}")]
    UnknownDart(usize),
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("operation requires a simple graph")]
    NotSimple,
    #[error("cycle length {len} exceeds supported bound {max}")]
    CycleLenTooLarge { len: usize, max: usize },
    #[error("graph has {n} vertices, exceeding supported bound {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("not a walk: dart {next} does not start where dart {prev} ends")]
    NotAWalk { prev: usize, next: usize },
    #[error("walk is empty")]
    EmptyWalk,
    #[error("edge list endpoint {vertex} out of range ({n_vertices} vertices)")]
    EdgeEndpointOutOfRange { vertex: usize, n_vertices: usize },
    #[error("dg parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Classification of a dart's edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// `inv(x) = x`: a dangling half-edge.
    Semiedge,
    /// `inv(x) != x` but both darts start at the same vertex.
    Loop,
    /// An edge with two distinct endpoints.
    Link,
}

/// Multigraph with explicit darts. Immutable once constructed; all
/// operations are pure queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DartGraph {
    n_vertices: usize,
    beg: Vec<usize>,
    inv: Vec<usize>,
    /// Darts starting at each vertex, in increasing dart order.
    at: Vec<Vec<usize>>,
}

impl DartGraph {
    /// Builds a graph from the `beg` and `inv` tables, rejecting any input
    /// that violates the dart-graph invariants.
    pub fn new(n_vertices: usize, beg: Vec<usize>, inv: Vec<usize>) -> Result<Self, GraphError> {
        Self::check_tables(n_vertices, &beg, &inv)?;
        let mut at = vec![Vec::new(); n_vertices];
        for (x, &v) in beg.iter().enumerate() {
            at[v].push(x);
        }
        Ok(DartGraph {
            n_vertices,
            beg,
            inv,
            at,
        })
    }

    fn check_tables(n_vertices: usize, beg: &[usize], inv: &[usize]) -> Result<(), GraphError> {
        if n_vertices == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        if beg.len() != inv.len() {
            return Err(GraphError::TableLengthMismatch {
                beg: beg.len(),
                inv: inv.len(),
            });
        }
        let n_darts = beg.len();
        for (x, &v) in beg.iter().enumerate() {
            if v >= n_vertices {
                return Err(GraphError::BegOutOfRange {
                    dart: x,
                    vertex: v,
                    n_vertices,
                });
            }
        }
        for (x, &y) in inv.iter().enumerate() {
            if y >= n_darts {
                return Err(GraphError::InvOutOfRange {
                    dart: x,
                    target: y,
                    n_darts,
                });
            }
        }
        for x in 0..n_darts {
            let round_trip = inv[inv[x]];
            if round_trip != x {
                return Err(GraphError::InvNotInvolution { dart: x, round_trip });
            }
        }
        Ok(())
    }

    /// Re-checks every construction invariant; reports the first violation.
    pub fn validate(&self) -> Result<(), GraphError> {
        Self::check_tables(self.n_vertices, &self.beg, &self.inv)
    }

    /// Builds a simple graph from an undirected edge list: darts `2i` and
    /// `2i+1` are the two directions of edge `i`.
    pub fn from_edge_list(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut beg = Vec::with_capacity(2 * edges.len());
        let mut inv = Vec::with_capacity(2 * edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for &w in &[u, v] {
                if w >= n_vertices {
                    return Err(GraphError::EdgeEndpointOutOfRange {
                        vertex: w,
                        n_vertices,
                    });
                }
            }
            beg.push(u);
            beg.push(v);
            inv.push(2 * i + 1);
            inv.push(2 * i);
        }
        Self::new(n_vertices, beg, inv)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_darts(&self) -> usize {
        self.beg.len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n_vertices
    }

    pub fn darts(&self) -> std::ops::Range<usize> {
        0..self.beg.len()
    }

    /// Initial vertex of a dart.
    pub fn beg(&self, x: usize) -> usize {
        self.beg[x]
    }

    /// Reverse dart.
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// Terminal vertex of a dart: `end(x) = beg(inv(x))`.
    pub fn end(&self, x: usize) -> usize {
        self.beg[self.inv[x]]
    }

    /// Darts starting at `v`, in increasing order.
    pub fn darts_at(&self, v: usize) -> &[usize] {
        &self.at[v]
    }

    /// Number of darts starting at `v`.
    pub fn valence(&self, v: usize) -> usize {
        self.at[v].len()
    }

    /// Classifies the edge underlying a dart.
    pub fn edge_kind(&self, x: usize) -> Result<EdgeKind, GraphError> {
        if x >= self.n_darts() {
            return Err(GraphError::UnknownDart(x));
        }
        let y = self.inv[x];
        if y == x {
            Ok(EdgeKind::Semiedge)
        } else if self.beg[y] == self.beg[x] {
            Ok(EdgeKind::Loop)
        } else {
            Ok(EdgeKind::Link)
        }
    }

    /// One representative dart per edge: the smaller dart id of each
    /// `inv`-orbit.
    pub fn edge_representatives(&self) -> Vec<usize> {
        self.darts().filter(|&x| x <= self.inv[x]).collect()
    }

    /// True when two distinct darts underlie parallel edges: same begin and
    /// same end (loops at a common vertex, semiedges at a common vertex, and
    /// repeated links all count as parallel).
    pub fn are_parallel(&self, x: usize, y: usize) -> bool {
        x != y
            && self.inv[x] != y
            && self.beg[x] == self.beg[y]
            && self.end(x) == self.end(y)
    }

    /// A dart that is parallel to some other dart of a different edge, if any.
    pub fn find_parallel_pair(&self) -> Option<(usize, usize)> {
        // Group darts by (beg, end); loops contribute both their darts, so a
        // single loop is not reported, but two loops at one vertex are.
        let mut keyed: Vec<(usize, usize, usize)> = self
            .darts()
            .map(|x| (self.beg[x], self.end(x), x))
            .collect();
        keyed.sort_unstable();
        for w in keyed.windows(2) {
            let (b0, e0, x) = w[0];
            let (b1, e1, y) = w[1];
            if b0 == b1 && e0 == e1 && self.inv[x] != y && x != y {
                return Some((x, y));
            }
        }
        None
    }

    /// True iff the graph has no loops, no semiedges and no parallel edges.
    pub fn is_simple(&self) -> bool {
        for x in self.darts() {
            match self.edge_kind(x).expect("dart id from range") {
                EdgeKind::Semiedge | EdgeKind::Loop => return false,
                EdgeKind::Link => {}
            }
        }
        self.find_parallel_pair().is_none()
    }

    /// Neighbour vertices of `v` (with multiplicity, semiedges excluded).
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.at[v]
            .iter()
            .filter(|&&x| self.inv[x] != x)
            .map(|&x| self.end(x))
            .collect()
    }

    /// True iff every vertex is reachable from vertex 0 (semiedges do not
    /// contribute to connectivity).
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n_vertices];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &x in &self.at[v] {
                let w = self.end(x);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n_vertices
    }

    /// Length of a shortest cycle: a loop is a 1-cycle, a pair of parallel
    /// edges a 2-cycle, semiedges never lie on cycles. `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        if self
            .darts()
            .any(|x| matches!(self.edge_kind(x), Ok(EdgeKind::Loop)))
        {
            return Some(1);
        }
        if self.find_parallel_pair().is_some() {
            return Some(2);
        }
        // No loops or parallel edges remain, so cycles have length >= 3 and
        // live in the simple graph spanned by the links. For each edge {u,v},
        // a shortest cycle through it is 1 + d(u,v) in the graph minus that
        // edge.
        let mut best: Option<usize> = None;
        for x in self.edge_representatives() {
            if self.inv[x] == x {
                continue;
            }
            let (u, v) = (self.beg[x], self.end(x));
            if let Some(d) = self.dist_avoiding(u, v, x) {
                let cand = d + 1;
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        best
    }

    /// BFS distance from `u` to `v` that never traverses dart `banned` or its
    /// inverse.
    fn dist_avoiding(&self, u: usize, v: usize, banned: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.n_vertices];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(w) = queue.pop_front() {
            if w == v {
                return Some(dist[w]);
            }
            for &x in &self.at[w] {
                if x == banned || x == self.inv[banned] || self.inv[x] == x {
                    continue;
                }
                let t = self.end(x);
                if dist[t] == usize::MAX {
                    dist[t] = dist[w] + 1;
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Number of distinct `c`-cycles (as cyclic edge sets) through the edge
    /// of dart `x`. Requires a simple graph; refuses lengths above
    /// [`MAX_CYCLE_LEN`] and graphs above [`MAX_CYCLE_VERTICES`] vertices.
    pub fn count_c_cycles_through(&self, x: usize, c: usize) -> Result<usize, GraphError> {
        if x >= self.n_darts() {
            return Err(GraphError::UnknownDart(x));
        }
        if !self.is_simple() {
            return Err(GraphError::NotSimple);
        }
        if c > MAX_CYCLE_LEN {
            return Err(GraphError::CycleLenTooLarge {
                len: c,
                max: MAX_CYCLE_LEN,
            });
        }
        if self.n_vertices > MAX_CYCLE_VERTICES {
            return Err(GraphError::TooManyVertices {
                n: self.n_vertices,
                max: MAX_CYCLE_VERTICES,
            });
        }
        if c < 3 {
            // Simple graphs have no 1- or 2-cycles.
            return Ok(0);
        }
        // Each c-cycle through edge {u,v} contains exactly one simple path
        // from v back to u of length c-1 avoiding the edge itself.
        let (u, v) = (self.beg[x], self.end(x));
        let mut on_path = vec![false; self.n_vertices];
        on_path[v] = true;
        Ok(self.count_paths(v, u, c - 1, &mut on_path, x))
    }

    fn count_paths(
        &self,
        from: usize,
        target: usize,
        remaining: usize,
        on_path: &mut Vec<bool>,
        banned: usize,
    ) -> usize {
        if remaining == 0 {
            return usize::from(from == target);
        }
        let mut total = 0;
        for &y in &self.at[from] {
            if y == banned || y == self.inv[banned] || self.inv[y] == y {
                continue;
            }
            let w = self.end(y);
            if w == target {
                if remaining == 1 {
                    total += 1;
                }
                continue;
            }
            if !on_path[w] && remaining > 1 {
                on_path[w] = true;
                total += self.count_paths(w, target, remaining - 1, on_path, banned);
                on_path[w] = false;
            }
        }
        total
    }

    /// Undirected edge list of a simple graph, each edge once with `u < v`.
    pub fn to_edge_list(&self) -> Result<Vec<(usize, usize)>, GraphError> {
        if !self.is_simple() {
            return Err(GraphError::NotSimple);
        }
        let mut out: BTreeSet<(usize, usize)> = BTreeSet::new();
        for x in self.edge_representatives() {
            let (u, v) = (self.beg[x], self.end(x));
            out.insert((u.min(v), u.max(v)));
        }
        Ok(out.into_iter().collect())
    }

    /// Serializes in the `dg` text format.
    pub fn to_dg_string(&self) -> String {
        let mut s = format!("dartgraph {} {}\n", self.n_vertices, self.n_darts());
        for x in self.darts() {
            s.push_str(&format!("dart {} {} {}\n", x, self.beg[x], self.inv[x]));
        }
        s
    }

    /// Parses the `dg` text format: a `dartgraph <nV> <nD>` header followed
    /// by `nD` lines `dart <id> <beg> <inv>`. Blank lines and `#` comments
    /// are ignored.
    pub fn parse_dg(input: &str) -> Result<Self, GraphError> {
        let mut lines = numbered_lines(input);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing dartgraph header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "dartgraph" {
            return Err(parse_err(line_no, "expected `dartgraph <nV> <nD>`"));
        }
        let n_vertices = parse_num(fields[1], line_no)?;
        let n_darts: usize = parse_num(fields[2], line_no)?;
        let mut beg = vec![usize::MAX; n_darts];
        let mut inv = vec![usize::MAX; n_darts];
        for _ in 0..n_darts {
            let (line_no, line) = lines
                .next()
                .ok_or_else(|| parse_err(usize::MAX, "unexpected end of dart lines"))?;
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 || f[0] != "dart" {
                return Err(parse_err(line_no, "expected `dart <id> <beg> <inv>`"));
            }
            let id: usize = parse_num(f[1], line_no)?;
            if id >= n_darts {
                return Err(parse_err(line_no, &format!("dart id {id} out of range")));
            }
            if beg[id] != usize::MAX {
                return Err(parse_err(line_no, &format!("dart id {id} repeated")));
            }
            beg[id] = parse_num(f[2], line_no)?;
            inv[id] = parse_num(f[3], line_no)?;
        }
        Self::new(n_vertices, beg, inv)
    }
}

fn numbered_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: &str) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T, GraphError> {
    s.parse()
        .map_err(|_| parse_err(line, &format!("expected a number, got `{s}`")))
}

/// A nonempty sequence of consecutively incident darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    darts: Vec<usize>,
}

impl Walk {
    /// Validates incidence: each dart must start where the previous ends.
    pub fn new(g: &DartGraph, darts: Vec<usize>) -> Result<Self, GraphError> {
        if darts.is_empty() {
            return Err(GraphError::EmptyWalk);
        }
        for &x in &darts {
            if x >= g.n_darts() {
                return Err(GraphError::UnknownDart(x));
            }
        }
        for w in darts.windows(2) {
            if g.beg(w[1]) != g.end(w[0]) {
                return Err(GraphError::NotAWalk {
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(Walk { darts })
    }

    pub fn darts(&self) -> &[usize] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first_vertex(&self, g: &DartGraph) -> usize {
        g.beg(self.darts[0])
    }

    pub fn last_vertex(&self, g: &DartGraph) -> usize {
        g.end(*self.darts.last().expect("walk nonempty"))
    }

    /// Closed: ends where it began.
    pub fn is_closed(&self, g: &DartGraph) -> bool {
        self.last_vertex(g) == self.first_vertex(g)
    }

    /// Reduced: never immediately followed by the inverse dart.
    pub fn is_reduced(&self, g: &DartGraph) -> bool {
        self.darts.windows(2).all(|w| w[1] != g.inv(w[0]))
    }

    /// The reverse traversal.
    pub fn inverse(&self, g: &DartGraph) -> Walk {
        Walk {
            darts: self.darts.iter().rev().map(|&x| g.inv(x)).collect(),
        }
    }

    /// Concatenation; the second walk must start where the first ends.
    pub fn concat(&self, g: &DartGraph, other: &Walk) -> Result<Walk, GraphError> {
        let mut darts = self.darts.clone();
        darts.extend_from_slice(&other.darts);
        Walk::new(g, darts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K4 on vertices 0..4 as a dart graph.
    pub(crate) fn k4() -> DartGraph {
        DartGraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn single_vertex_no_darts_is_valid() {
        let g = DartGraph::new(1, vec![], vec![]).unwrap();
        assert!(g.validate().is_ok());
        assert_eq!(g.n_vertices(), 1);
        assert_eq!(g.n_darts(), 0);
    }

    #[test]
    fn non_involutory_inv_rejected() {
        // inv(0)=1, inv(1)=2, inv(2)=0 is a 3-cycle, not an involution.
        let err = DartGraph::new(1, vec![0, 0, 0], vec![1, 2, 0]).unwrap_err();
        assert!(matches!(err, GraphError::InvNotInvolution { .. }));
    }

    #[test]
    fn k4_is_valid_and_simple() {
        let g = k4();
        assert!(g.validate().is_ok());
        assert_eq!(g.n_darts(), 12);
        assert!(g.is_simple());
        for x in g.darts() {
            assert_eq!(g.edge_kind(x).unwrap(), EdgeKind::Link);
        }
    }

    #[test]
    fn edge_kind_classification() {
        // Vertex 0 with a semiedge (dart 0), a loop (darts 1,2) and a link to
        // vertex 1 (darts 3,4).
        let g = DartGraph::new(2, vec![0, 0, 0, 0, 1], vec![0, 2, 1, 4, 3]).unwrap();
        assert_eq!(g.edge_kind(0).unwrap(), EdgeKind::Semiedge);
        assert_eq!(g.edge_kind(1).unwrap(), EdgeKind::Loop);
        assert_eq!(g.edge_kind(2).unwrap(), EdgeKind::Loop);
        assert_eq!(g.edge_kind(3).unwrap(), EdgeKind::Link);
        assert!(!g.is_simple());
        assert_eq!(g.end(3), 1);
        assert_eq!(g.end(0), 0);
    }

    #[test]
    fn semiedge_only_graph_not_simple() {
        let g = DartGraph::new(1, vec![0], vec![0]).unwrap();
        assert!(!g.is_simple());
    }

    #[test]
    fn parallel_links_not_simple() {
        let g = DartGraph::new(2, vec![0, 1, 0, 1], vec![1, 0, 3, 2]).unwrap();
        assert!(!g.is_simple());
        assert_eq!(g.girth(), Some(2));
    }

    #[test]
    fn girth_of_multigraph_cases() {
        // A loop makes girth 1 regardless of anything else.
        let loop_graph = DartGraph::new(1, vec![0, 0], vec![1, 0]).unwrap();
        assert_eq!(loop_graph.girth(), Some(1));
        // A semiedge alone has no cycles at all.
        let semi = DartGraph::new(1, vec![0], vec![0]).unwrap();
        assert_eq!(semi.girth(), None);
        // A tree has no cycles.
        let path = DartGraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
        assert_eq!(k4().girth(), Some(3));
    }

    #[test]
    fn k4_triangle_counts() {
        let g = k4();
        for x in g.darts() {
            assert_eq!(g.count_c_cycles_through(x, 3).unwrap(), 2);
            // c below the girth finds nothing.
            assert_eq!(g.count_c_cycles_through(x, 2).unwrap(), 0);
        }
    }

    #[test]
    fn cycle_count_guards() {
        let g = k4();
        assert!(matches!(
            g.count_c_cycles_through(0, 13),
            Err(GraphError::CycleLenTooLarge { .. })
        ));
        let multi = DartGraph::new(2, vec![0, 1, 0, 1], vec![1, 0, 3, 2]).unwrap();
        assert!(matches!(
            multi.count_c_cycles_through(0, 3),
            Err(GraphError::NotSimple)
        ));
    }

    #[test]
    fn c4_cycle_counts() {
        let c4 = DartGraph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.girth(), Some(4));
        assert_eq!(c4.count_c_cycles_through(0, 4).unwrap(), 1);
        assert_eq!(c4.count_c_cycles_through(0, 3).unwrap(), 0);
    }

    #[test]
    fn valence_counts_darts() {
        let g = DartGraph::new(2, vec![0, 0, 0, 0, 1], vec![0, 2, 1, 4, 3]).unwrap();
        // Semiedge contributes 1, loop 2, link 1.
        assert_eq!(g.valence(0), 4);
        assert_eq!(g.valence(1), 1);
        // Sum of valences equals the number of darts.
        let total: usize = g.vertices().map(|v| g.valence(v)).sum();
        assert_eq!(total, g.n_darts());
    }

    #[test]
    fn edge_list_round_trip() {
        let edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = DartGraph::from_edge_list(4, &edges).unwrap();
        assert_eq!(g.to_edge_list().unwrap(), edges);
    }

    #[test]
    fn dg_round_trip() {
        let g = DartGraph::new(2, vec![0, 0, 0, 0, 1], vec![0, 2, 1, 4, 3]).unwrap();
        let text = g.to_dg_string();
        let h = DartGraph::parse_dg(&text).unwrap();
        assert_eq!(h.n_vertices(), g.n_vertices());
        assert_eq!((0..h.n_darts()).map(|x| h.beg(x)).collect::<Vec<_>>(),
                   (0..g.n_darts()).map(|x| g.beg(x)).collect::<Vec<_>>());
        assert_eq!((0..h.n_darts()).map(|x| h.inv(x)).collect::<Vec<_>>(),
                   (0..g.n_darts()).map(|x| g.inv(x)).collect::<Vec<_>>());
    }

    #[test]
    fn dg_parse_rejects_malformed() {
        assert!(DartGraph::parse_dg("dartgraph 1").is_err());
        assert!(DartGraph::parse_dg("dartgraph 1 1\ndart 0 0 5\n").is_err());
        assert!(DartGraph::parse_dg("dartgraph 0 0\n").is_err());
    }

    #[test]
    fn walk_validation_and_reduction() {
        let g = k4();
        // Dart 0 goes 0->1; dart 6 goes 1->2 (edge list order: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)).
        let w = Walk::new(&g, vec![0, 6]).unwrap();
        assert_eq!(w.first_vertex(&g), 0);
        assert_eq!(w.last_vertex(&g), 2);
        assert!(!w.is_closed(&g));
        assert!(w.is_reduced(&g));
        // Immediate backtrack is not reduced.
        let back = Walk::new(&g, vec![0, 1]).unwrap();
        assert!(!back.is_reduced(&g));
        // Non-incident darts are rejected.
        assert!(Walk::new(&g, vec![0, 2]).is_err());
        assert!(Walk::new(&g, vec![]).is_err());
    }

    #[test]
    fn walk_inverse_and_concat() {
        let g = k4();
        let w = Walk::new(&g, vec![0, 6]).unwrap();
        let wi = w.inverse(&g);
        assert_eq!(wi.first_vertex(&g), 2);
        assert_eq!(wi.last_vertex(&g), 0);
        let closed = w.concat(&g, &wi).unwrap();
        assert!(closed.is_closed(&g));
        assert!(!closed.is_reduced(&g));
    }

    #[test]
    fn connectivity() {
        let g = DartGraph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert!(k4().is_connected());
    }
}
