//! Artefact patterns: small labelled fragments whose presence in a quotient
//! candidate signals that every large enough symmetric cover would contain a
//! short cycle or another excluded configuration. Detection is a fast
//! pre-filter for the quotient census; the cover probe remains the ground
//! truth, so a pattern match is never the sole authority for rejection.

use crate::dart::{DartGraph, EdgeKind, GraphError};
use crate::labelled::{LabelError, LabelledGraph};
use std::sync::OnceLock;
use thiserror::Error;

/// Raw text of the embedded pattern data file.
pub const BUILTIN_PATTERN_TEXT: &str = include_str!("data/artefact_patterns.lg");

/// Errors for pattern construction and pattern-file parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtefactError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown artefact id `{0}`")]
    UnknownId(String),
    #[error("pattern fragment must be connected with no isolated vertex")]
    NotConnected,
    #[error("lambda table has {got} entries for {want} darts")]
    LambdaLengthMismatch { got: usize, want: usize },
    #[error("pattern file parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Identifier of one of the seven shipped artefact patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArtefactId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
}

impl ArtefactId {
    pub const ALL: [ArtefactId; 7] = [
        ArtefactId::A1,
        ArtefactId::A2,
        ArtefactId::A3,
        ArtefactId::A4,
        ArtefactId::A5,
        ArtefactId::A6,
        ArtefactId::A7,
    ];

    /// Position within `ALL`, so ids can index small tables.
    pub fn index(self) -> usize {
        self as usize
    }
}

impl std::fmt::Display for ArtefactId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "A{}", self.index() + 1)
    }
}

impl std::str::FromStr for ArtefactId {
    type Err = ArtefactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ArtefactId::ALL
            .into_iter()
            .find(|id| id.to_string() == s)
            .ok_or_else(|| ArtefactError::UnknownId(s.to_string()))
    }
}

/// How one step of the precomputed matching plan extends a partial embedding.
/// Every step consumes one pattern edge whose base vertex is already placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StepKind {
    /// The edge is a semiedge at a placed vertex.
    Semiedge,
    /// The edge is a loop at a placed vertex.
    Loop,
    /// A link whose far endpoint is placed by this step.
    LinkNew,
    /// A link between two vertices that are both already placed.
    LinkKnown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PlanStep {
    dart: usize,
    kind: StepKind,
}

/// A labelled fragment to be located inside quotient candidates as a
/// labelled subgraph. Label 0 on a pattern dart is a wildcard that matches
/// any label; subject graphs never carry 0 labels, so the convention is
/// unambiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtefactPattern {
    id: ArtefactId,
    reconstructed: bool,
    graph: DartGraph,
    lambda: Vec<u32>,
    plan: Vec<PlanStep>,
}

/// An occurrence of a pattern inside a subject graph: injective images for
/// the pattern's vertices and darts that commute with `beg` and `inv` and
/// respect labels (pattern label 0 matches anything). Injectivity plus the
/// commuting rules force semiedges onto semiedges, loops onto loops and
/// links onto links.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Embedding {
    pub vertex_image: Vec<usize>,
    pub dart_image: Vec<usize>,
}

impl ArtefactPattern {
    /// Builds a pattern. The fragment must be connected with no isolated
    /// vertices so the matcher can grow an embedding edge by edge from a
    /// single anchor vertex.
    pub fn new(
        id: ArtefactId,
        reconstructed: bool,
        graph: DartGraph,
        lambda: Vec<u32>,
    ) -> Result<Self, ArtefactError> {
        if lambda.len() != graph.n_darts() {
            return Err(ArtefactError::LambdaLengthMismatch {
                got: lambda.len(),
                want: graph.n_darts(),
            });
        }
        let plan = build_plan(&graph)?;
        Ok(ArtefactPattern {
            id,
            reconstructed,
            graph,
            lambda,
            plan,
        })
    }

    pub fn id(&self) -> ArtefactId {
        self.id
    }

    pub fn reconstructed(&self) -> bool {
        self.reconstructed
    }

    pub fn graph(&self) -> &DartGraph {
        &self.graph
    }

    /// Per-dart labels of the fragment; 0 means wildcard.
    pub fn lambdas(&self) -> &[u32] {
        &self.lambda
    }

    /// The fragment as a genuine labelled graph, substituting `wildcard` for
    /// every label-0 dart (useful for matching a pattern against itself).
    pub fn instantiate(&self, wildcard: u32) -> Result<LabelledGraph, LabelError> {
        let lambda = self
            .lambda
            .iter()
            .map(|&l| if l == 0 { wildcard } else { l })
            .collect();
        LabelledGraph::new(self.graph.clone(), lambda)
    }

    /// Serializes as one pattern-file block: the `pattern` header followed
    /// by the fragment in lg format.
    pub fn to_pattern_string(&self) -> String {
        let mut s = format!("pattern {} reconstructed {}\n", self.id, self.reconstructed);
        s.push_str(&self.graph.to_dg_string());
        for x in self.graph.darts() {
            s.push_str(&format!("lambda {} {}\n", x, self.lambda[x]));
        }
        s
    }

    /// All embeddings of this pattern into `lg`, in a deterministic order:
    /// the image of pattern vertex 0 ascends, and each plan step tries host
    /// darts in ascending id order.
    pub fn embeddings(&self, lg: &LabelledGraph) -> Vec<Embedding> {
        let host = lg.graph();
        let mut state = MatchState {
            vertex_image: vec![usize::MAX; self.graph.n_vertices()],
            dart_image: vec![usize::MAX; self.graph.n_darts()],
            vertex_used: vec![false; host.n_vertices()],
            dart_used: vec![false; host.n_darts()],
            found: Vec::new(),
        };
        for anchor in host.vertices() {
            state.vertex_image[0] = anchor;
            state.vertex_used[anchor] = true;
            self.extend(0, lg, &mut state);
            state.vertex_used[anchor] = false;
        }
        state.found
    }

    /// True when the pattern label on `px` accepts the host label `hl`.
    fn label_fits(&self, px: usize, hl: u32) -> bool {
        self.lambda[px] == 0 || self.lambda[px] == hl
    }

    fn extend(&self, step: usize, lg: &LabelledGraph, st: &mut MatchState) {
        if step == self.plan.len() {
            st.found.push(Embedding {
                vertex_image: st.vertex_image.clone(),
                dart_image: st.dart_image.clone(),
            });
            return;
        }
        let host = lg.graph();
        let PlanStep { dart: px, kind } = self.plan[step];
        let py = self.graph.inv(px);
        let hu = st.vertex_image[self.graph.beg(px)];
        // Host candidates for px all begin at the image of its base vertex.
        for &hx in host.darts_at(hu) {
            if st.dart_used[hx] || !self.label_fits(px, lg.lambda(hx)) {
                continue;
            }
            let hy = host.inv(hx);
            match kind {
                StepKind::Semiedge => {
                    if hy != hx {
                        continue;
                    }
                    st.dart_image[px] = hx;
                    st.dart_used[hx] = true;
                    self.extend(step + 1, lg, st);
                    st.dart_used[hx] = false;
                    st.dart_image[px] = usize::MAX;
                }
                StepKind::Loop => {
                    if hy == hx || host.beg(hy) != hu || st.dart_used[hy] {
                        continue;
                    }
                    if !self.label_fits(py, lg.lambda(hy)) {
                        continue;
                    }
                    self.assign_pair(px, py, hx, hy, st);
                    self.extend(step + 1, lg, st);
                    self.unassign_pair(px, py, hx, hy, st);
                }
                StepKind::LinkNew => {
                    if hy == hx || st.dart_used[hy] {
                        continue;
                    }
                    let hv = host.beg(hy);
                    if hv == hu || st.vertex_used[hv] {
                        continue;
                    }
                    if !self.label_fits(py, lg.lambda(hy)) {
                        continue;
                    }
                    let pv = self.graph.end(px);
                    st.vertex_image[pv] = hv;
                    st.vertex_used[hv] = true;
                    self.assign_pair(px, py, hx, hy, st);
                    self.extend(step + 1, lg, st);
                    self.unassign_pair(px, py, hx, hy, st);
                    st.vertex_used[hv] = false;
                    st.vertex_image[pv] = usize::MAX;
                }
                StepKind::LinkKnown => {
                    if hy == hx || st.dart_used[hy] {
                        continue;
                    }
                    if host.beg(hy) != st.vertex_image[self.graph.end(px)] {
                        continue;
                    }
                    if !self.label_fits(py, lg.lambda(hy)) {
                        continue;
                    }
                    self.assign_pair(px, py, hx, hy, st);
                    self.extend(step + 1, lg, st);
                    self.unassign_pair(px, py, hx, hy, st);
                }
            }
        }
    }

    fn assign_pair(&self, px: usize, py: usize, hx: usize, hy: usize, st: &mut MatchState) {
        st.dart_image[px] = hx;
        st.dart_image[py] = hy;
        st.dart_used[hx] = true;
        st.dart_used[hy] = true;
    }

    fn unassign_pair(&self, px: usize, py: usize, hx: usize, hy: usize, st: &mut MatchState) {
        st.dart_used[hy] = false;
        st.dart_used[hx] = false;
        st.dart_image[py] = usize::MAX;
        st.dart_image[px] = usize::MAX;
    }
}

struct MatchState {
    vertex_image: Vec<usize>,
    dart_image: Vec<usize>,
    vertex_used: Vec<bool>,
    dart_used: Vec<bool>,
    found: Vec<Embedding>,
}

/// Orders the pattern's edges so each step's base vertex is already placed,
/// starting from vertex 0. Fails when the fragment is disconnected or has
/// an isolated vertex.
fn build_plan(graph: &DartGraph) -> Result<Vec<PlanStep>, ArtefactError> {
    if graph.n_vertices() == 0 {
        return Err(ArtefactError::NotConnected);
    }
    let reps = graph.edge_representatives();
    let mut placed = vec![false; graph.n_vertices()];
    placed[0] = true;
    let mut done = vec![false; reps.len()];
    let mut plan = Vec::with_capacity(reps.len());
    for _ in 0..reps.len() {
        // The lowest-id representative touching the placed set keeps the
        // plan, and hence the matcher's output order, deterministic.
        let pick = reps
            .iter()
            .enumerate()
            .find(|&(i, &r)| !done[i] && (placed[graph.beg(r)] || placed[graph.end(r)]));
        let Some((i, &r)) = pick else {
            return Err(ArtefactError::NotConnected);
        };
        done[i] = true;
        let dart = if placed[graph.beg(r)] { r } else { graph.inv(r) };
        let kind = match graph.edge_kind(dart)? {
            EdgeKind::Semiedge => StepKind::Semiedge,
            EdgeKind::Loop => StepKind::Loop,
            EdgeKind::Link => {
                let far = graph.end(dart);
                if placed[far] {
                    StepKind::LinkKnown
                } else {
                    placed[far] = true;
                    StepKind::LinkNew
                }
            }
        };
        plan.push(PlanStep { dart, kind });
    }
    if placed.iter().any(|&p| !p) {
        return Err(ArtefactError::NotConnected);
    }
    Ok(plan)
}

/// The seven shipped patterns, parsed once from the embedded data file.
pub fn builtin_patterns() -> &'static [ArtefactPattern] {
    static PATTERNS: OnceLock<Vec<ArtefactPattern>> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        let pats =
            parse_pattern_file(BUILTIN_PATTERN_TEXT).expect("embedded pattern file is well-formed");
        let ids: Vec<ArtefactId> = pats.iter().map(|p| p.id()).collect();
        assert_eq!(ids, ArtefactId::ALL, "embedded file must ship A1..A7 in order");
        pats
    })
}

/// Locates every embedding of every shipped pattern in `lg`. Results are
/// grouped by pattern id in A1..A7 order; within one pattern they follow
/// the matcher's deterministic discovery order.
pub fn find_artefacts(lg: &LabelledGraph) -> Vec<(ArtefactId, Embedding)> {
    let mut out = Vec::new();
    for p in builtin_patterns() {
        for e in p.embeddings(lg) {
            out.push((p.id(), e));
        }
    }
    out
}

/// Parses a pattern file: one or more blocks, each a line
/// `pattern <id> reconstructed <bool>` followed by the fragment in lg
/// format, where label 0 is the wildcard. Blank lines and `#` comments are
/// ignored; ids must not repeat.
pub fn parse_pattern_file(text: &str) -> Result<Vec<ArtefactPattern>, ArtefactError> {
    let mut blocks: Vec<(usize, &str, String)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with("pattern") {
            blocks.push((no + 1, line, String::new()));
        } else if let Some((_, _, body)) = blocks.last_mut() {
            body.push_str(line);
            body.push('\n');
        } else {
            return Err(ArtefactError::Parse {
                line: no + 1,
                msg: "content before the first `pattern` header".into(),
            });
        }
    }
    if blocks.is_empty() {
        return Err(ArtefactError::Parse {
            line: 0,
            msg: "no pattern blocks found".into(),
        });
    }
    let mut out: Vec<ArtefactPattern> = Vec::new();
    for (line, header, body) in blocks {
        let f: Vec<&str> = header.split_whitespace().collect();
        if f.len() != 4 || f[0] != "pattern" || f[2] != "reconstructed" {
            return Err(ArtefactError::Parse {
                line,
                msg: "expected `pattern <id> reconstructed <bool>`".into(),
            });
        }
        let id: ArtefactId = f[1].parse()?;
        let reconstructed: bool = f[3].parse().map_err(|_| ArtefactError::Parse {
            line,
            msg: format!("bad bool `{}`", f[3]),
        })?;
        if out.iter().any(|p| p.id() == id) {
            return Err(ArtefactError::Parse {
                line,
                msg: format!("pattern {id} repeated"),
            });
        }
        let (graph, lambda) = parse_fragment(&body, line)?;
        out.push(ArtefactPattern::new(id, reconstructed, graph, lambda)?);
    }
    Ok(out)
}

/// Parses a fragment body: the dg block plus `lambda <dart> <value>` lines,
/// with 0 allowed as the wildcard label. Errors cite `block_line`, the file
/// line of the block's `pattern` header.
fn parse_fragment(body: &str, block_line: usize) -> Result<(DartGraph, Vec<u32>), ArtefactError> {
    let mut dg_part = String::new();
    let mut lambda_lines: Vec<&str> = Vec::new();
    for line in body.lines() {
        if line.trim_start().starts_with("lambda") {
            lambda_lines.push(line.trim());
        } else {
            dg_part.push_str(line);
            dg_part.push('\n');
        }
    }
    let graph = DartGraph::parse_dg(&dg_part)?;
    let mut lambda: Vec<Option<u32>> = vec![None; graph.n_darts()];
    for text in lambda_lines {
        let f: Vec<&str> = text.split_whitespace().collect();
        let parsed = if f.len() == 3 {
            f[1].parse::<usize>().ok().zip(f[2].parse::<u32>().ok())
        } else {
            None
        };
        let Some((x, val)) = parsed else {
            return Err(ArtefactError::Parse {
                line: block_line,
                msg: format!("bad lambda line `{text}`"),
            });
        };
        if x >= graph.n_darts() || lambda[x].is_some() {
            return Err(ArtefactError::Parse {
                line: block_line,
                msg: format!("lambda for dart {x} out of range or repeated"),
            });
        }
        lambda[x] = Some(val);
    }
    let mut table = Vec::with_capacity(graph.n_darts());
    for (x, l) in lambda.into_iter().enumerate() {
        match l {
            Some(v) => table.push(v),
            None => {
                return Err(ArtefactError::Parse {
                    line: block_line,
                    msg: format!("missing lambda for dart {x}"),
                })
            }
        }
    }
    Ok((graph, table))
}
