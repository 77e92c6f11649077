//! Labelled graphs: dart labellings and the fibre-ratio walk calculus.
//!
//! A labelled graph pairs a multigraph with a positive integer `lambda(x)`
//! per dart. In a cyclic cover, `lambda(x)` counts the darts over `x` at
//! each vertex over `beg x`, so the ratio `lambda(x)/lambda(inv x)` measures
//! how fibre sizes change across the edge. The product of these ratios along
//! a walk (`lambda_star`) is therefore the fibre-size ratio between the
//! walk's endpoints, and a labelling extends to a valid index function
//! exactly when `lambda_star` is 1 on every closed walk.

use crate::dart::{DartGraph, EdgeKind, GraphError, Walk};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use std::collections::VecDeque;
use thiserror::Error;

/// Errors for labelled-graph construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("lambda table has {got} entries for {want} darts")]
    LambdaLengthMismatch { got: usize, want: usize },
    #[error("dart {dart}: lambda must be at least 1")]
    LambdaZero { dart: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge type is undefined for semiedge dart {0}")]
    SemiedgeHasNoType(usize),
    #[error("labelling does not extend to an index function")]
    NotExtendable,
    #[error("index value at vertex {vertex} does not fit in u64")]
    IndexOverflow { vertex: usize },
    #[error("lg parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// The `[i,j]` type of a non-semiedge edge, with `small <= big`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeType {
    pub small: u32,
    pub big: u32,
}

impl EdgeType {
    /// An edge is mixed when its two darts carry different labels; mixed
    /// edges force distinct fibre sizes at their endpoints.
    pub fn is_mixed(&self) -> bool {
        self.small != self.big
    }
}

impl std::fmt::Display for EdgeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.small, self.big)
    }
}

/// The first violated condition of the five-part ccv-extendability test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcvObstruction {
    /// (1) Some closed walk has fibre ratio different from 1.
    NotExtendable,
    /// (2) A dart with `lambda(x) = lambda(inv x) > 1`.
    SymmetricLabelAbove1 { dart: usize },
    /// (3) A dart parallel to another dart without both labels being 1.
    ParallelLabelAbove1 { dart: usize, other: usize },
    /// (4) A semiedge dart with `lambda > 1`.
    SemiedgeLabelAbove1 { dart: usize },
    /// (5) A vertex whose label degree is not 3.
    DegreeNot3 { vertex: usize, deg: u32 },
}

impl std::fmt::Display for CcvObstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CcvObstruction::NotExtendable => write!(f, "condition 1: not extendable"),
            CcvObstruction::SymmetricLabelAbove1 { dart } => {
                write!(f, "condition 2: dart {dart} has equal labels above 1")
            }
            CcvObstruction::ParallelLabelAbove1 { dart, other } => {
                write!(f, "condition 3: parallel darts {dart},{other} not both labelled 1")
            }
            CcvObstruction::SemiedgeLabelAbove1 { dart } => {
                write!(f, "condition 4: semiedge dart {dart} labelled above 1")
            }
            CcvObstruction::DegreeNot3 { vertex, deg } => {
                write!(f, "condition 5: vertex {vertex} has label degree {deg}")
            }
        }
    }
}

/// A multigraph together with a positive integer label per dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    graph: DartGraph,
    lambda: Vec<u32>,
}

impl LabelledGraph {
    /// Pairs a graph with a labelling; every dart needs a label `>= 1`.
    pub fn new(graph: DartGraph, lambda: Vec<u32>) -> Result<Self, LabelError> {
        if lambda.len() != graph.n_darts() {
            return Err(LabelError::LambdaLengthMismatch {
                got: lambda.len(),
                want: graph.n_darts(),
            });
        }
        if let Some(dart) = lambda.iter().position(|&l| l == 0) {
            return Err(LabelError::LambdaZero { dart });
        }
        Ok(LabelledGraph { graph, lambda })
    }

    /// The labelling that is 1 on every dart.
    pub fn all_ones(graph: DartGraph) -> Self {
        let lambda = vec![1; graph.n_darts()];
        LabelledGraph { graph, lambda }
    }

    pub fn graph(&self) -> &DartGraph {
        &self.graph
    }

    pub fn lambda(&self, x: usize) -> u32 {
        self.lambda[x]
    }

    pub fn lambdas(&self) -> &[u32] {
        &self.lambda
    }

    /// Label of the reverse dart.
    pub fn lambda_inv(&self, x: usize) -> u32 {
        self.lambda[self.graph.inv(x)]
    }

    /// Sum of labels over the darts beginning at `v`.
    pub fn deg_lambda(&self, v: usize) -> Result<u32, LabelError> {
        if v >= self.graph.n_vertices() {
            return Err(GraphError::UnknownVertex(v).into());
        }
        Ok(self.graph.darts_at(v).iter().map(|&x| self.lambda[x]).sum())
    }

    /// The `[i,j]` type of the edge under a dart; semiedges have no type.
    pub fn edge_type(&self, x: usize) -> Result<EdgeType, LabelError> {
        if x >= self.graph.n_darts() {
            return Err(GraphError::UnknownDart(x).into());
        }
        if self.graph.inv(x) == x {
            return Err(LabelError::SemiedgeHasNoType(x));
        }
        let (a, b) = (self.lambda[x], self.lambda_inv(x));
        Ok(EdgeType {
            small: a.min(b),
            big: a.max(b),
        })
    }

    /// Fibre-size ratio accumulated along a walk: the product of
    /// `lambda(x)/lambda(inv x)` over its darts, as an exact rational.
    pub fn lambda_star(&self, w: &Walk) -> Result<BigRational, LabelError> {
        for &x in w.darts() {
            if x >= self.graph.n_darts() {
                return Err(GraphError::UnknownDart(x).into());
            }
        }
        for pair in w.darts().windows(2) {
            if self.graph.beg(pair[1]) != self.graph.end(pair[0]) {
                return Err(GraphError::NotAWalk {
                    prev: pair[0],
                    next: pair[1],
                }
                .into());
            }
        }
        let mut acc = BigRational::one();
        for &x in w.darts() {
            acc *= BigRational::new(
                BigInt::from(self.lambda[x]),
                BigInt::from(self.lambda_inv(x)),
            );
        }
        Ok(acc)
    }

    /// Fibre-ratio potential per vertex: `phi(0) = 1` and
    /// `phi(end x) = phi(beg x) * lambda(x)/lambda(inv x)` along a BFS tree.
    /// For an extendable labelling this is `lambda_star` of any walk from
    /// vertex 0, independent of the walk.
    pub fn fibre_ratio_potentials(&self) -> Result<Vec<BigRational>, LabelError> {
        if !self.graph.is_connected() {
            return Err(LabelError::Disconnected);
        }
        let n = self.graph.n_vertices();
        let mut phi: Vec<Option<BigRational>> = vec![None; n];
        phi[0] = Some(BigRational::one());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &x in self.graph.darts_at(v) {
                let w = self.graph.end(x);
                if phi[w].is_none() {
                    let ratio = BigRational::new(
                        BigInt::from(self.lambda[x]),
                        BigInt::from(self.lambda_inv(x)),
                    );
                    phi[w] = Some(phi[v].clone().expect("v visited") * ratio);
                    queue.push_back(w);
                }
            }
        }
        Ok(phi.into_iter().map(|p| p.expect("connected")).collect())
    }

    /// True iff `lambda_star(C) = 1` for every closed walk. Checking each
    /// dart against the tree potentials covers all fundamental cycles, which
    /// suffices by multiplicativity of `lambda_star`.
    pub fn is_extendable(&self) -> Result<bool, LabelError> {
        let phi = self.fibre_ratio_potentials()?;
        for x in self.graph.darts() {
            let ratio = BigRational::new(
                BigInt::from(self.lambda[x]),
                BigInt::from(self.lambda_inv(x)),
            );
            if phi[self.graph.end(x)] != phi[self.graph.beg(x)].clone() * ratio {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The componentwise-smallest positive integer index profile `c`
    /// satisfying `lambda(x) c(beg x) = lambda(inv x) c(beg inv x)`; every
    /// valid index function is `c` times a positive integer.
    pub fn minimal_index_profile(&self) -> Result<Vec<u64>, LabelError> {
        if !self.is_extendable()? {
            return Err(LabelError::NotExtendable);
        }
        let phi = self.fibre_ratio_potentials()?;
        let mut denom_lcm = BigInt::one();
        for p in &phi {
            denom_lcm = denom_lcm.lcm(p.denom());
        }
        let scaled: Vec<BigInt> = phi
            .iter()
            .map(|p| (p * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::from(0);
        for t in &scaled {
            g = g.gcd(t);
        }
        scaled
            .iter()
            .enumerate()
            .map(|(v, t)| {
                (t / &g)
                    .to_u64()
                    .ok_or(LabelError::IndexOverflow { vertex: v })
            })
            .collect()
    }

    /// Checks the five ccv-extendability conditions in order and reports the
    /// first failure, or `None` when the labelling extends to a ccv-graph
    /// candidate: (1) extendable, (2) equal labels only at 1, (3) parallel
    /// darts labelled 1, (4) semiedge darts labelled 1, (5) label degree 3
    /// everywhere.
    pub fn ccv_obstruction(&self) -> Result<Option<CcvObstruction>, LabelError> {
        if !self.is_extendable()? {
            return Ok(Some(CcvObstruction::NotExtendable));
        }
        for x in self.graph.darts() {
            // Semiedges satisfy lambda(x) = lambda(inv x) trivially; they are
            // reported under condition 4 instead.
            if self.graph.inv(x) != x && self.lambda[x] == self.lambda_inv(x) && self.lambda[x] > 1
            {
                return Ok(Some(CcvObstruction::SymmetricLabelAbove1 { dart: x }));
            }
        }
        for x in self.graph.darts() {
            // Only link pairs can reach this point: a loop dart with label
            // above 1 already failed condition 2 (extendability forces equal
            // labels on a loop) and semiedges report under condition 4.
            // Parallel partners share the begin vertex, so a local scan at
            // beg(x) sees every pair.
            if self.graph.edge_kind(x)? != EdgeKind::Link {
                continue;
            }
            for &y in self.graph.darts_at(self.graph.beg(x)) {
                if self.graph.are_parallel(x, y) && (self.lambda[x] > 1 || self.lambda[y] > 1) {
                    return Ok(Some(CcvObstruction::ParallelLabelAbove1 { dart: x, other: y }));
                }
            }
        }
        for x in self.graph.darts() {
            if self.graph.edge_kind(x)? == EdgeKind::Semiedge && self.lambda[x] > 1 {
                return Ok(Some(CcvObstruction::SemiedgeLabelAbove1 { dart: x }));
            }
        }
        for v in self.graph.vertices() {
            let deg = self.deg_lambda(v)?;
            if deg != 3 {
                return Ok(Some(CcvObstruction::DegreeNot3 { vertex: v, deg }));
            }
        }
        Ok(None)
    }

    /// True iff all five ccv-extendability conditions hold.
    pub fn is_ccv_extendable(&self) -> Result<bool, LabelError> {
        Ok(self.ccv_obstruction()?.is_none())
    }

    /// Serializes in the `lg` text format: the `dg` block followed by one
    /// `lambda <dart> <value>` line per dart.
    pub fn to_lg_string(&self) -> String {
        let mut s = self.graph.to_dg_string();
        for x in self.graph.darts() {
            s.push_str(&format!("lambda {} {}\n", x, self.lambda[x]));
        }
        s
    }

    /// Parses the `lg` text format. The `lambda` lines may be interleaved
    /// anywhere after the header; every dart needs exactly one.
    pub fn parse_lg(input: &str) -> Result<Self, LabelError> {
        let mut dg_part = String::new();
        let mut lambda_lines: Vec<(usize, &str)> = Vec::new();
        for (no, line) in input.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.starts_with("lambda") {
                lambda_lines.push((no + 1, trimmed));
            } else {
                dg_part.push_str(line);
                dg_part.push('\n');
            }
        }
        let graph = DartGraph::parse_dg(&dg_part)?;
        let mut lambda = vec![0u32; graph.n_darts()];
        for (line, text) in lambda_lines {
            let f: Vec<&str> = text.split_whitespace().collect();
            if f.len() != 3 {
                return Err(LabelError::Parse {
                    line,
                    msg: "expected `lambda <dart> <value>`".into(),
                });
            }
            let x: usize = f[1].parse().map_err(|_| LabelError::Parse {
                line,
                msg: format!("bad dart id `{}`", f[1]),
            })?;
            let val: u32 = f[2].parse().map_err(|_| LabelError::Parse {
                line,
                msg: format!("bad lambda value `{}`", f[2]),
            })?;
            if x >= graph.n_darts() {
                return Err(LabelError::Parse {
                    line,
                    msg: format!("dart id {x} out of range"),
                });
            }
            if lambda[x] != 0 {
                return Err(LabelError::Parse {
                    line,
                    msg: format!("lambda for dart {x} repeated"),
                });
            }
            lambda[x] = val;
        }
        if let Some(x) = lambda.iter().position(|&l| l == 0) {
            return Err(LabelError::Parse {
                line: 0,
                msg: format!("missing or zero lambda for dart {x}"),
            });
        }
        LabelledGraph::new(graph, lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// One vertex carrying a loop (darts 0,1) and a semiedge (dart 2),
    /// everything labelled 1.
    fn loop_semiedge() -> LabelledGraph {
        let g = DartGraph::new(1, vec![0, 0, 0], vec![1, 0, 2]).unwrap();
        LabelledGraph::all_ones(g)
    }

    /// Two vertices joined by a single edge with labels (a, b) on its darts.
    fn single_edge(a: u32, b: u32) -> LabelledGraph {
        let g = DartGraph::from_edge_list(2, &[(0, 1)]).unwrap();
        LabelledGraph::new(g, vec![a, b]).unwrap()
    }

    #[test]
    fn label_table_validation() {
        let g = DartGraph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            LabelledGraph::new(g.clone(), vec![1]),
            Err(LabelError::LambdaLengthMismatch { .. })
        ));
        assert!(matches!(
            LabelledGraph::new(g, vec![1, 0]),
            Err(LabelError::LambdaZero { dart: 1 })
        ));
    }

    #[test]
    fn edge_types_and_mixedness() {
        let lg = single_edge(1, 2);
        let t = lg.edge_type(0).unwrap();
        assert_eq!(t, EdgeType { small: 1, big: 2 });
        assert!(t.is_mixed());
        assert_eq!(lg.edge_type(1).unwrap(), t);
        let semi = loop_semiedge();
        assert!(matches!(
            semi.edge_type(2),
            Err(LabelError::SemiedgeHasNoType(2))
        ));
        assert!(!semi.edge_type(0).unwrap().is_mixed());
    }

    #[test]
    fn lambda_star_of_single_darts() {
        let lg = single_edge(1, 2);
        let g = lg.graph();
        // From the lambda=1 side the fibre shrinks by half.
        let w = Walk::new(g, vec![0]).unwrap();
        assert_eq!(lg.lambda_star(&w).unwrap(), rat(1, 2));
        let back = Walk::new(g, vec![1]).unwrap();
        assert_eq!(lg.lambda_star(&back).unwrap(), rat(2, 1));
        // Round trip cancels.
        let round = Walk::new(g, vec![0, 1]).unwrap();
        assert_eq!(lg.lambda_star(&round).unwrap(), rat(1, 1));
    }

    #[test]
    fn lambda_star_is_multiplicative() {
        // Path 0-1-2 with a mixed and a plain edge.
        let g = DartGraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let lg = LabelledGraph::new(g, vec![1, 2, 3, 1]).unwrap();
        let w1 = Walk::new(lg.graph(), vec![0]).unwrap();
        let w2 = Walk::new(lg.graph(), vec![2]).unwrap();
        let w12 = w1.concat(lg.graph(), &w2).unwrap();
        assert_eq!(
            lg.lambda_star(&w12).unwrap(),
            lg.lambda_star(&w1).unwrap() * lg.lambda_star(&w2).unwrap()
        );
        let inv = w12.inverse(lg.graph());
        assert_eq!(
            lg.lambda_star(&inv).unwrap() * lg.lambda_star(&w12).unwrap(),
            rat(1, 1)
        );
    }

    #[test]
    fn extendability_cases() {
        // Trees are always extendable regardless of labels.
        let path = DartGraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let lg = LabelledGraph::new(path, vec![3, 2, 1, 3]).unwrap();
        assert!(lg.is_extendable().unwrap());
        // A triangle with one mixed edge cannot balance.
        let tri = DartGraph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let bad = LabelledGraph::new(tri.clone(), vec![1, 2, 1, 1, 1, 1]).unwrap();
        assert!(!bad.is_extendable().unwrap());
        // All-ones is always extendable.
        assert!(LabelledGraph::all_ones(tri).is_extendable().unwrap());
        // Two mixed edges around a triangle can balance if ratios cancel.
        let tri2 = DartGraph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let balanced = LabelledGraph::new(tri2, vec![1, 2, 2, 1, 1, 1]).unwrap();
        assert!(balanced.is_extendable().unwrap());
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = DartGraph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let lg = LabelledGraph::all_ones(g);
        assert!(matches!(
            lg.is_extendable(),
            Err(LabelError::Disconnected)
        ));
    }

    #[test]
    fn minimal_index_profile_follows_ratios() {
        // 0 -[1,2]- 1 -[1,3]- 2: fibre sizes fall by 2 then by 3.
        let g = DartGraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let lg = LabelledGraph::new(g, vec![1, 2, 1, 3]).unwrap();
        assert_eq!(lg.minimal_index_profile().unwrap(), vec![6, 3, 1]);
        let ones = LabelledGraph::all_ones(
            DartGraph::from_edge_list(2, &[(0, 1)]).unwrap(),
        );
        assert_eq!(ones.minimal_index_profile().unwrap(), vec![1, 1]);
    }

    #[test]
    fn ccv_extendable_loop_semiedge_vertex() {
        let lg = loop_semiedge();
        assert_eq!(lg.ccv_obstruction().unwrap(), None);
        assert!(lg.is_ccv_extendable().unwrap());
    }

    #[test]
    fn ccv_obstruction_order_and_cases() {
        // Equal labels above 1 trip condition 2.
        let lg = single_edge(2, 2);
        assert_eq!(
            lg.ccv_obstruction().unwrap(),
            Some(CcvObstruction::SymmetricLabelAbove1 { dart: 0 })
        );
        // Parallel links must both carry label 1; labels (1,2) on each copy
        // keep the pair extendable so the scan reaches condition 3.
        let dbl = DartGraph::new(2, vec![0, 1, 0, 1], vec![1, 0, 3, 2]).unwrap();
        let par = LabelledGraph::new(dbl, vec![1, 2, 1, 2]).unwrap();
        assert!(matches!(
            par.ccv_obstruction().unwrap(),
            Some(CcvObstruction::ParallelLabelAbove1 { .. })
        ));
        // Semiedge label above 1 trips condition 4.
        let semi = DartGraph::new(1, vec![0, 0, 0], vec![1, 0, 2]).unwrap();
        let bad_semi = LabelledGraph::new(semi, vec![1, 1, 2]).unwrap();
        assert_eq!(
            bad_semi.ccv_obstruction().unwrap(),
            Some(CcvObstruction::SemiedgeLabelAbove1 { dart: 2 })
        );
        // Degree 4 trips condition 5.
        let sq =
            DartGraph::from_edge_list(2, &[(0, 1)]).unwrap();
        let deg1 = LabelledGraph::all_ones(sq);
        assert_eq!(
            deg1.ccv_obstruction().unwrap(),
            Some(CcvObstruction::DegreeNot3 { vertex: 0, deg: 1 })
        );
    }

    #[test]
    fn ccv_extendable_allows_only_known_edge_types() {
        let lg = loop_semiedge();
        assert!(lg.is_ccv_extendable().unwrap());
        for x in lg.graph().darts() {
            if lg.graph().inv(x) != x {
                let t = lg.edge_type(x).unwrap();
                assert!(matches!(
                    (t.small, t.big),
                    (1, 1) | (1, 2) | (1, 3) | (2, 3)
                ));
            }
        }
    }

    #[test]
    fn lg_round_trip_and_parse_errors() {
        let g = DartGraph::new(2, vec![0, 0, 0, 0, 1], vec![0, 2, 1, 4, 3]).unwrap();
        let lg = LabelledGraph::new(g, vec![1, 1, 1, 2, 1]).unwrap();
        let text = lg.to_lg_string();
        let back = LabelledGraph::parse_lg(&text).unwrap();
        assert_eq!(back.lambdas(), lg.lambdas());
        assert_eq!(back.graph().n_darts(), lg.graph().n_darts());
        // Missing lambda line.
        let partial = "dartgraph 1 2\ndart 0 0 1\ndart 1 0 0\nlambda 0 1\n";
        assert!(LabelledGraph::parse_lg(partial).is_err());
        // Repeated lambda line.
        let repeated =
            "dartgraph 1 2\ndart 0 0 1\ndart 1 0 0\nlambda 0 1\nlambda 0 2\nlambda 1 1\n";
        assert!(LabelledGraph::parse_lg(repeated).is_err());
    }

    #[test]
    fn deg_lambda_sums_and_bounds() {
        let lg = loop_semiedge();
        assert_eq!(lg.deg_lambda(0).unwrap(), 3);
        assert!(lg.deg_lambda(1).is_err());
        let mixed = single_edge(1, 2);
        assert_eq!(mixed.deg_lambda(0).unwrap(), 1);
        assert_eq!(mixed.deg_lambda(1).unwrap(), 2);
    }
}
