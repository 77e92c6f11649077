//! Automorphism search and symmetry parameters for simple graphs.
//!
//! The central routine is an individualization-refinement search over vertex
//! colorings. Every leaf of the search tree is a discrete coloring, i.e. a
//! candidate relabelling; leaves whose relabelled edge lists coincide differ
//! by an automorphism, and the lexicographically smallest relabelled edge
//! list is a canonical form. Correctness of the search does not depend on
//! how strong the refinement is, only on visiting all leaves, and is
//! cross-checked against brute-force bijection enumeration on small graphs.

use crate::dart::{DartGraph, GraphError};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::{BTreeSet, HashSet, VecDeque};
use thiserror::Error;

/// Hard bound on vertex count for the group search.
pub const MAX_SYMMETRY_VERTICES: usize = 512;
/// Default cap on full group enumeration.
pub const DEFAULT_GROUP_CAP: u64 = 1_000_000;
/// Vertex bound for the factorial labelled canonical form.
pub const MAX_LABELLED_CANON_VERTICES: usize = 8;

/// Errors for symmetry computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is not simple")]
    NotSimple,
    #[error("graph has {n} vertices, above the symmetry bound {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("automorphism group of order {order} exceeds the enumeration cap")]
    CapExceeded { order: u64 },
    #[error("search tree exceeded its leaf budget")]
    SearchBudget,
    #[error("image table is not a bijection")]
    NotBijection,
    #[error("permutation is not an automorphism")]
    NotAutomorphism,
    #[error("vertex {0} is not 3-valent")]
    NonCubic(usize),
    #[error("labelled graph has {n} vertices, above the canonical-form bound {max}")]
    TooManyForLabelled { n: usize, max: usize },
}

/// A permutation of `0..n`, stored by images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, SymError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(SymError::NotBijection);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (v, &im) in self.images.iter().enumerate() {
            inv[im] = v;
        }
        Permutation { images: inv }
    }

    /// Orbits of the cyclic group generated by this permutation.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut v = self.images[start];
            while v != start {
                seen[v] = true;
                orbit.push(v);
                v = self.images[v];
            }
            out.push(orbit);
        }
        out
    }

    /// Multiplicative order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut ord: u64 = 1;
        for orbit in self.orbits() {
            ord = num_integer::lcm(ord, orbit.len() as u64);
        }
        ord
    }

    /// True iff this permutation preserves adjacency in `g` (simple graphs).
    pub fn is_automorphism_of(&self, g: &DartGraph) -> Result<bool, SymError> {
        let adj = simple_adjacency(g)?;
        if self.images.len() != g.n_vertices() {
            return Ok(false);
        }
        for v in 0..adj.len() {
            let mut mapped: Vec<usize> = adj[v].iter().map(|&u| self.images[u]).collect();
            mapped.sort_unstable();
            if mapped != adj[self.images[v]] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// An automorphism group: exact order, a generating set, and the full
/// element list when it fits under the enumeration cap.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub generators: Vec<Permutation>,
    pub elements: Option<Vec<Permutation>>,
    pub order: u64,
    pub size_cap: u64,
}

impl PermGroup {
    /// Number of points the group acts on.
    pub fn degree(&self) -> usize {
        self.generators
            .first()
            .map(|p| p.n())
            .or_else(|| self.elements.as_ref().and_then(|e| e.first().map(|p| p.n())))
            .unwrap_or(0)
    }

    fn require_elements(&self) -> Result<&[Permutation], SymError> {
        self.elements
            .as_deref()
            .ok_or(SymError::CapExceeded { order: self.order })
    }

    /// Maximum element order over the fully enumerated group.
    pub fn max_element_order(&self) -> Result<u64, SymError> {
        Ok(self
            .require_elements()?
            .iter()
            .map(|p| p.order())
            .max()
            .unwrap_or(1))
    }

    /// Minimum orbit count of a nontrivial semiregular element, or the
    /// degree when none exists.
    pub fn min_semiregular_orbit_count(&self) -> Result<u64, SymError> {
        let n = self.degree() as u64;
        let mut best = n;
        for p in self.require_elements()? {
            if p.is_identity() {
                continue;
            }
            let orbits = p.orbits();
            let size = orbits[0].len();
            if orbits.iter().all(|o| o.len() == size) {
                best = best.min(n / size as u64);
            }
        }
        Ok(best)
    }

    /// True iff the group is transitive on points.
    pub fn is_transitive(&self) -> Result<bool, SymError> {
        self.require_elements()?;
        let n = self.degree();
        Ok(orbit_of(0, n, &self.generators).len() == n)
    }
}

fn simple_adjacency(g: &DartGraph) -> Result<Vec<Vec<usize>>, SymError> {
    if !g.is_simple() {
        return Err(SymError::NotSimple);
    }
    let mut adj: Vec<Vec<usize>> = (0..g.n_vertices()).map(|v| g.neighbors(v)).collect();
    for row in &mut adj {
        row.sort_unstable();
    }
    Ok(adj)
}

fn orbit_of(start: usize, n: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut orbit = vec![start];
    while let Some(v) = queue.pop_front() {
        for p in gens {
            let w = p.apply(v);
            if !seen[w] {
                seen[w] = true;
                orbit.push(w);
                queue.push_back(w);
            }
        }
    }
    orbit
}

/// Equitable refinement: repeatedly re-color vertices by (color, sorted
/// multiset of neighbor colors) until the number of color classes is stable.
/// Color ids are assigned by sorted signature, so the result is invariant
/// under isomorphism.
fn refine(adj: &[Vec<usize>], colors: &mut Vec<u32>) {
    let n = adj.len();
    loop {
        let mut sigs: Vec<(Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut s = Vec::with_capacity(adj[v].len() + 1);
                s.push(colors[v]);
                let mut nb: Vec<u32> = adj[v].iter().map(|&u| colors[u]).collect();
                nb.sort_unstable();
                s.extend(nb);
                (s, v)
            })
            .collect();
        sigs.sort();
        let old_count = colors.iter().collect::<BTreeSet<_>>().len();
        let mut next = 0u32;
        let mut prev: Option<&[u32]> = None;
        let mut new_colors = vec![0u32; n];
        for (sig, v) in &sigs {
            if prev.map_or(true, |p| p != sig.as_slice()) {
                if prev.is_some() {
                    next += 1;
                }
                prev = Some(sig);
            }
            new_colors[*v] = next;
        }
        let new_count = (next + 1) as usize;
        *colors = new_colors;
        if new_count == old_count {
            return;
        }
    }
}

/// First smallest non-singleton color class, as (color, members).
fn target_cell(colors: &[u32]) -> Option<(u32, Vec<usize>)> {
    let k = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (v, &c) in colors.iter().enumerate() {
        cells[c as usize].push(v);
    }
    cells
        .iter()
        .enumerate()
        .filter(|(_, cell)| cell.len() >= 2)
        .min_by_key(|(c, cell)| (cell.len(), *c))
        .map(|(c, cell)| (c as u32, cell.clone()))
}

/// Relabelled sorted edge list of a discrete coloring, as a byte string.
fn leaf_certificate(adj: &[Vec<usize>], colors: &[u32]) -> Vec<u8> {
    let n = adj.len();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for v in 0..n {
        for &u in &adj[v] {
            if v < u {
                let (a, b) = (colors[v].min(colors[u]), colors[v].max(colors[u]));
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    let mut cert = Vec::with_capacity(4 + edges.len() * 4);
    cert.extend_from_slice(&(n as u16).to_be_bytes());
    cert.extend_from_slice(&(edges.len() as u16).to_be_bytes());
    for (a, b) in edges {
        cert.extend_from_slice(&(a as u16).to_be_bytes());
        cert.extend_from_slice(&(b as u16).to_be_bytes());
    }
    cert
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    cap: u64,
    max_leaves: u64,
    leaves: u64,
    base: Option<(Vec<u8>, Vec<usize>)>,
    min_cert: Vec<u8>,
    matches: u64,
    auts: Vec<Permutation>,
    store: bool,
}

impl<'a> Search<'a> {
    fn run(&mut self, colors: &mut Vec<u32>) -> Result<(), SymError> {
        refine(self.adj, colors);
        if let Some((_, cell)) = target_cell(colors) {
            let fresh = colors.iter().copied().max().unwrap_or(0) + 1;
            for v in cell {
                let mut child = colors.clone();
                child[v] = fresh;
                self.run(&mut child)?;
            }
            return Ok(());
        }
        // Discrete coloring: a leaf.
        self.leaves += 1;
        if self.leaves > self.max_leaves {
            return Err(SymError::SearchBudget);
        }
        let cert = leaf_certificate(self.adj, colors);
        if self.min_cert.is_empty() || cert < self.min_cert {
            self.min_cert = cert.clone();
        }
        match &self.base {
            None => {
                let n = self.adj.len();
                // Position -> vertex map of the base leaf.
                let mut inv = vec![0usize; n];
                for (v, &c) in colors.iter().enumerate() {
                    inv[c as usize] = v;
                }
                self.base = Some((cert, inv));
                self.matches = 1;
                if self.store {
                    self.auts.push(Permutation::identity(n));
                }
            }
            Some((base_cert, base_inv)) => {
                if cert == *base_cert {
                    self.matches += 1;
                    if self.matches > self.cap {
                        self.store = false;
                        self.auts.clear();
                    }
                    if self.store {
                        let images: Vec<usize> =
                            colors.iter().map(|&c| base_inv[c as usize]).collect();
                        self.auts.push(Permutation { images });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Greedy reduction of a full element list to a small generating set.
fn reduce_generators(elements: &[Permutation]) -> Vec<Permutation> {
    let n = elements.first().map(|p| p.n()).unwrap_or(0);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut known: HashSet<Vec<usize>> = HashSet::new();
    known.insert(Permutation::identity(n).images.clone());
    for e in elements {
        if known.contains(&e.images) {
            continue;
        }
        gens.push(e.clone());
        // Closure of the current generators by breadth-first products.
        let mut queue: Vec<Vec<usize>> = known.iter().cloned().collect();
        while let Some(imgs) = queue.pop() {
            for gen in &gens {
                let prod: Vec<usize> = imgs.iter().map(|&v| gen.images[v]).collect();
                if known.insert(prod.clone()) {
                    queue.push(prod);
                }
            }
        }
        if known.len() as u64 > DEFAULT_GROUP_CAP {
            break;
        }
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(n));
    }
    gens
}

/// Full automorphism group of a simple graph by individualization-refinement.
/// Enumerates all elements when the order is at most `cap`; otherwise the
/// exact order is still returned but `elements` is `None` and order-sensitive
/// queries fail with a cap error.
pub fn automorphism_group(g: &DartGraph, cap: u64) -> Result<PermGroup, SymError> {
    let n = g.n_vertices();
    if n > MAX_SYMMETRY_VERTICES {
        return Err(SymError::TooManyVertices {
            n,
            max: MAX_SYMMETRY_VERTICES,
        });
    }
    let adj = simple_adjacency(g)?;
    let mut search = Search {
        adj: &adj,
        cap,
        max_leaves: cap.saturating_mul(20).max(2_000_000),
        leaves: 0,
        base: None,
        min_cert: Vec::new(),
        matches: 0,
        auts: Vec::new(),
        store: true,
    };
    let mut colors = vec![0u32; n];
    search.run(&mut colors)?;
    let order = search.matches;
    if search.store {
        let mut elements = search.auts;
        elements.sort();
        let generators = reduce_generators(&elements);
        Ok(PermGroup {
            generators,
            elements: Some(elements),
            order,
            size_cap: cap,
        })
    } else {
        Ok(PermGroup {
            generators: Vec::new(),
            elements: None,
            order,
            size_cap: cap,
        })
    }
}

/// All adjacency-preserving vertex bijections by pruned exhaustive search.
/// Exponential; intended as an independent oracle for graphs with at most
/// about 10 vertices.
pub fn brute_force_automorphisms(g: &DartGraph) -> Result<Vec<Permutation>, SymError> {
    let adj = simple_adjacency(g)?;
    let n = adj.len();
    let masks: Vec<u64> = (0..n)
        .map(|v| adj[v].iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect();
    let mut out = Vec::new();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        v: usize,
        n: usize,
        adj: &[Vec<usize>],
        masks: &[u64],
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Permutation>,
    ) {
        if v == n {
            out.push(Permutation {
                images: images.clone(),
            });
            return;
        }
        'cand: for w in 0..n {
            if used[w] || adj[v].len() != adj[w].len() {
                continue;
            }
            // Every already-assigned neighbor of v must map into N(w).
            for &u in &adj[v] {
                if images[u] != usize::MAX && masks[w] & (1 << images[u]) == 0 {
                    continue 'cand;
                }
            }
            // And non-neighbors must stay non-neighbors.
            for u in 0..v {
                if masks[v] & (1 << u) == 0 && masks[w] & (1 << images[u]) != 0 {
                    continue 'cand;
                }
            }
            images[v] = w;
            used[w] = true;
            go(v + 1, n, adj, masks, images, used, out);
            images[v] = usize::MAX;
            used[w] = false;
        }
    }
    go(0, n, &adj, &masks, &mut images, &mut used, &mut out);
    out.sort();
    Ok(out)
}

/// Maximum order of an automorphism, under the default enumeration cap.
pub fn meo(g: &DartGraph) -> Result<u64, SymError> {
    automorphism_group(g, DEFAULT_GROUP_CAP)?.max_element_order()
}

/// The symmetry quotient |V| / meo as an exact rational.
pub fn eta(g: &DartGraph) -> Result<BigRational, SymError> {
    let m = meo(g)?;
    Ok(BigRational::new(
        BigInt::from(g.n_vertices()),
        BigInt::from(m),
    ))
}

/// True iff `p` is a nontrivial automorphism all of whose orbits share one
/// length. The identity returns false by convention.
pub fn is_semiregular(g: &DartGraph, p: &Permutation) -> Result<bool, SymError> {
    if !p.is_automorphism_of(g)? {
        return Err(SymError::NotAutomorphism);
    }
    if p.is_identity() {
        return Ok(false);
    }
    let orbits = p.orbits();
    let size = orbits[0].len();
    Ok(orbits.iter().all(|o| o.len() == size))
}

/// Minimum vertex-orbit count over nontrivial semiregular automorphisms;
/// |V| when no such automorphism exists.
pub fn kappa(g: &DartGraph) -> Result<u64, SymError> {
    automorphism_group(g, DEFAULT_GROUP_CAP)?.min_semiregular_orbit_count()
}

/// True iff the automorphism group has a single vertex orbit.
pub fn is_vertex_transitive(g: &DartGraph) -> Result<bool, SymError> {
    automorphism_group(g, DEFAULT_GROUP_CAP)?.is_transitive()
}

/// True iff some automorphism cycles all vertices in a single orbit, i.e.
/// the graph admits a regular cyclic group of symmetries. For simple
/// graphs this is the defining property of a circulant.
pub fn has_regular_cyclic_automorphism(g: &DartGraph, cap: u64) -> Result<bool, SymError> {
    let grp = automorphism_group(g, cap)?;
    let elems = grp
        .elements
        .as_deref()
        .ok_or(SymError::CapExceeded { order: grp.order })?;
    Ok(elems.iter().any(|p| p.orbits().len() == 1))
}

/// True iff the automorphism group has a single orbit on ordered adjacent
/// pairs. Edge-free graphs count as arc-transitive vacuously.
pub fn is_arc_transitive(g: &DartGraph) -> Result<bool, SymError> {
    let group = automorphism_group(g, DEFAULT_GROUP_CAP)?;
    group.require_elements()?;
    let adj = simple_adjacency(g)?;
    let mut arc_id = std::collections::HashMap::new();
    let mut arcs = Vec::new();
    for v in 0..adj.len() {
        for &u in &adj[v] {
            arc_id.insert((v, u), arcs.len());
            arcs.push((v, u));
        }
    }
    if arcs.is_empty() {
        return Ok(true);
    }
    let mut seen = vec![false; arcs.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut count = 1;
    while let Some(i) = queue.pop_front() {
        let (v, u) = arcs[i];
        for p in &group.generators {
            let j = arc_id[&(p.apply(v), p.apply(u))];
            if !seen[j] {
                seen[j] = true;
                count += 1;
                queue.push_back(j);
            }
        }
    }
    Ok(count == arcs.len())
}

/// Cheap necessary condition for vertex-transitivity: every vertex sees the
/// same multiset of BFS distances. Useful as a prefilter before the full
/// group search; a `false` answer is conclusive, a `true` answer is not.
pub fn has_uniform_distance_profile(g: &DartGraph) -> Result<bool, SymError> {
    let adj = simple_adjacency(g)?;
    let n = adj.len();
    let mut reference: Option<Vec<usize>> = None;
    for start in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist.sort_unstable();
        match &reference {
            None => reference = Some(dist),
            Some(r) => {
                if *r != dist {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Sorted triple of c-cycle counts over the three edges at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CSignature {
    pub c: usize,
    pub eps: [u64; 3],
}

/// The c-signature at `v`: for each of the three edges at `v`, the number of
/// c-cycles containing it, sorted ascending.
pub fn c_signature(g: &DartGraph, v: usize, c: usize) -> Result<CSignature, SymError> {
    if !g.is_simple() {
        return Err(SymError::NotSimple);
    }
    if v >= g.n_vertices() {
        return Err(SymError::Graph(GraphError::UnknownVertex(v)));
    }
    let darts = g.darts_at(v);
    if darts.len() != 3 {
        return Err(SymError::NonCubic(v));
    }
    let mut eps = [0u64; 3];
    for (i, &x) in darts.iter().enumerate() {
        eps[i] = g.count_c_cycles_through(x, c)? as u64;
    }
    eps.sort_unstable();
    Ok(CSignature { c, eps })
}

/// True iff every vertex carries the same c-signature.
pub fn is_cycle_regular(g: &DartGraph, c: usize) -> Result<bool, SymError> {
    let mut reference: Option<CSignature> = None;
    for v in g.vertices() {
        let sig = c_signature(g, v, c)?;
        match &reference {
            None => reference = Some(sig),
            Some(r) => {
                if *r != sig {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Label-invariant canonical byte string: the minimal relabelled sorted edge
/// list over all leaves of the individualization-refinement tree.
pub fn canonical_form(g: &DartGraph) -> Result<Vec<u8>, SymError> {
    let n = g.n_vertices();
    if n > MAX_SYMMETRY_VERTICES {
        return Err(SymError::TooManyVertices {
            n,
            max: MAX_SYMMETRY_VERTICES,
        });
    }
    let adj = simple_adjacency(g)?;
    let mut search = Search {
        adj: &adj,
        cap: 0,
        max_leaves: DEFAULT_GROUP_CAP.saturating_mul(20).max(2_000_000),
        leaves: 0,
        base: None,
        min_cert: Vec::new(),
        matches: 0,
        auts: Vec::new(),
        store: false,
    };
    let mut colors = vec![0u32; n];
    search.run(&mut colors)?;
    Ok(search.min_cert)
}

/// Isomorphism of simple graphs by comparing canonical forms.
pub fn is_isomorphic(g1: &DartGraph, g2: &DartGraph) -> Result<bool, SymError> {
    Ok(canonical_form(g1)? == canonical_form(g2)?)
}

/// Canonical byte string of a labelled multigraph under label-preserving
/// isomorphism: the minimal encoding over all vertex bijections. Factorial
/// in |V|, intended for small quotient graphs.
pub fn labelled_canonical_form(lg: &crate::labelled::LabelledGraph) -> Result<Vec<u8>, SymError> {
    let g = lg.graph();
    let n = g.n_vertices();
    if n > MAX_LABELLED_CANON_VERTICES {
        return Err(SymError::TooManyForLabelled {
            n,
            max: MAX_LABELLED_CANON_VERTICES,
        });
    }
    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let enc = encode_labelled(lg, &perm);
        if best.as_ref().map_or(true, |b| enc < *b) {
            best = Some(enc);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.unwrap_or_default())
}

/// Label-preserving isomorphism of labelled multigraphs.
pub fn is_labelled_isomorphic(
    a: &crate::labelled::LabelledGraph,
    b: &crate::labelled::LabelledGraph,
) -> Result<bool, SymError> {
    Ok(labelled_canonical_form(a)? == labelled_canonical_form(b)?)
}

/// Encoding of a labelled multigraph under a vertex relabelling: per vertex
/// pair, the sorted multiset of edge descriptors (kind plus both labels).
fn encode_labelled(lg: &crate::labelled::LabelledGraph, perm: &[usize]) -> Vec<u8> {
    let g = lg.graph();
    // Descriptor: (new endpoint a, new endpoint b, kind, label list) with
    // a <= b; kind 0 = semiedge, 1 = loop, 2 = link.
    let mut items: Vec<(u16, u16, u8, [u8; 2])> = Vec::new();
    for x in g.edge_representatives() {
        let u = perm[g.beg(x)] as u16;
        let v = perm[g.end(x)] as u16;
        let lx = lg.lambda(x) as u8;
        let li = lg.lambda(g.inv(x)) as u8;
        if g.inv(x) == x {
            items.push((u, u, 0, [lx, lx]));
        } else if u == v {
            items.push((u, u, 1, [lx.min(li), lx.max(li)]));
        } else if u < v {
            items.push((u, v, 2, [lx, li]));
        } else {
            items.push((v, u, 2, [li, lx]));
        }
    }
    items.sort_unstable();
    let mut out = Vec::with_capacity(2 + items.len() * 7);
    out.extend_from_slice(&(g.n_vertices() as u16).to_be_bytes());
    for (a, b, kind, labels) in items {
        out.extend_from_slice(&a.to_be_bytes());
        out.extend_from_slice(&b.to_be_bytes());
        out.push(kind);
        out.extend_from_slice(&labels);
    }
    out
}

/// In-place lexicographic successor; false when wrapped around.
fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.sort_unstable();
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dart::DartGraph;
    use crate::labelled::LabelledGraph;

    fn k4() -> DartGraph {
        DartGraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k33() -> DartGraph {
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        DartGraph::from_edge_list(6, &edges).unwrap()
    }

    fn cycle(n: usize) -> DartGraph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        DartGraph::from_edge_list(n, &edges).unwrap()
    }

    fn petersen() -> DartGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        DartGraph::from_edge_list(10, &edges).unwrap()
    }

    fn prism(m: usize) -> DartGraph {
        let mut edges = Vec::new();
        for i in 0..m {
            edges.push((i, (i + 1) % m));
            edges.push((m + i, m + (i + 1) % m));
            edges.push((i, m + i));
        }
        DartGraph::from_edge_list(2 * m, &edges).unwrap()
    }

    fn moebius(n: usize) -> DartGraph {
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        for i in 0..n / 2 {
            edges.push((i, i + n / 2));
        }
        DartGraph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn permutation_algebra() {
        let p = Permutation::new(vec![1, 2, 0, 3]).unwrap();
        assert_eq!(p.order(), 3);
        assert!(p.then(&p.inverse()).is_identity());
        let q = Permutation::new(vec![0, 1, 3, 2]).unwrap();
        assert_eq!(p.then(&q).apply(1), 3);
        assert_eq!(q.then(&p).apply(2), 3);
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        // Order is the lcm of cycle lengths.
        let r = Permutation::new(vec![1, 0, 3, 4, 2]).unwrap();
        assert_eq!(r.order(), 6);
    }

    #[test]
    fn group_orders_match_brute_force_on_small_graphs() {
        for (g, expect) in [
            (k4(), 24u64),
            (k33(), 72),
            (cycle(6), 12),
            (petersen(), 120),
        ] {
            let group = automorphism_group(&g, DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(group.order, expect);
            let brute = brute_force_automorphisms(&g).unwrap();
            assert_eq!(brute.len() as u64, expect);
            let mut listed = group.elements.clone().unwrap();
            listed.sort();
            assert_eq!(listed, brute);
            for p in &group.generators {
                assert!(p.is_automorphism_of(&g).unwrap());
            }
        }
    }

    #[test]
    fn meo_eta_on_known_graphs() {
        assert_eq!(meo(&petersen()).unwrap(), 6);
        let e = eta(&petersen()).unwrap();
        assert_eq!(
            e,
            BigRational::new(BigInt::from(5), BigInt::from(3))
        );
        assert_eq!(meo(&cycle(6)).unwrap(), 6);
        assert_eq!(eta(&cycle(6)).unwrap(), BigRational::from_integer(BigInt::from(1)));
        assert_eq!(meo(&k33()).unwrap(), 6);
    }

    #[test]
    fn semiregularity_and_kappa() {
        let c6 = cycle(6);
        let rot = Permutation::new(vec![1, 2, 3, 4, 5, 0]).unwrap();
        assert!(is_semiregular(&c6, &rot).unwrap());
        // A reflection through two vertices fixes them: not semiregular.
        let refl = Permutation::new(vec![0, 5, 4, 3, 2, 1]).unwrap();
        assert!(!is_semiregular(&c6, &refl).unwrap());
        assert!(!is_semiregular(&c6, &Permutation::identity(6)).unwrap());
        let not_aut = Permutation::new(vec![1, 0, 2, 3, 4, 5]).unwrap();
        assert!(matches!(
            is_semiregular(&c6, &not_aut),
            Err(SymError::NotAutomorphism)
        ));
        assert_eq!(kappa(&c6).unwrap(), 1);
        assert_eq!(kappa(&petersen()).unwrap(), 2);
        // The 3-path has only the end-swap, which fixes the middle vertex:
        // no nontrivial semiregular element, so kappa falls back to |V|.
        let p3 = DartGraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(kappa(&p3).unwrap(), 3);
    }

    #[test]
    fn transitivity_checks() {
        assert!(is_vertex_transitive(&petersen()).unwrap());
        assert!(is_arc_transitive(&petersen()).unwrap());
        assert!(is_vertex_transitive(&k33()).unwrap());
        assert!(is_arc_transitive(&k33()).unwrap());
        let p3 = DartGraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_vertex_transitive(&p3).unwrap());
        // The prism over a 5-gon is VT but not AT (spokes vs rim edges).
        assert!(is_vertex_transitive(&prism(5)).unwrap());
        assert!(!is_arc_transitive(&prism(5)).unwrap());
        assert!(has_uniform_distance_profile(&petersen()).unwrap());
        assert!(!has_uniform_distance_profile(&p3).unwrap());
    }

    #[test]
    fn regular_cyclic_automorphisms_detect_circulants() {
        // K33 is the circulant on Z6 with steps {1, 3}.
        assert!(has_regular_cyclic_automorphism(&k33(), DEFAULT_GROUP_CAP).unwrap());
        // Petersen's group has no element of order 10, let alone a 10-cycle.
        assert!(!has_regular_cyclic_automorphism(&petersen(), DEFAULT_GROUP_CAP).unwrap());
        // Prisms over odd cycles are circulants; over even ones they are not.
        assert!(has_regular_cyclic_automorphism(&prism(5), DEFAULT_GROUP_CAP).unwrap());
        assert!(!has_regular_cyclic_automorphism(&prism(4), DEFAULT_GROUP_CAP).unwrap());
    }

    #[test]
    fn signatures_and_cycle_regularity() {
        // Petersen: girth 5, twelve 5-cycles, each edge on four of them.
        let pet = petersen();
        assert_eq!(pet.girth(), Some(5));
        let sig = c_signature(&pet, 0, 5).unwrap();
        assert_eq!(sig.eps, [4, 4, 4]);
        assert!(is_cycle_regular(&pet, 5).unwrap());
        // Prism(5): each spoke lies on two squares, each rim edge on one.
        // Parity check: the counts at a vertex must sum to twice the number
        // of squares through it (two here), so the triple is (1,1,2).
        let pr = prism(5);
        assert_eq!(pr.girth(), Some(4));
        assert_eq!(c_signature(&pr, 0, 4).unwrap().eps, [1, 1, 2]);
        assert!(is_cycle_regular(&pr, 4).unwrap());
        let p3 = DartGraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(c_signature(&p3, 0, 4), Err(SymError::NonCubic(0))));
    }

    #[test]
    fn canonical_forms_detect_isomorphism() {
        // Vertex relabelling leaves the form unchanged.
        let pet = petersen();
        let perm = Permutation::new(vec![3, 7, 1, 9, 0, 5, 2, 8, 4, 6]).unwrap();
        let edges = pet.to_edge_list().unwrap();
        let relabelled: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| (perm.apply(u), perm.apply(v)))
            .collect();
        let pet2 = DartGraph::from_edge_list(10, &relabelled).unwrap();
        assert_eq!(canonical_form(&pet).unwrap(), canonical_form(&pet2).unwrap());
        assert!(is_isomorphic(&pet, &pet2).unwrap());
        // Prism(4) and Moeb(8) are cubic on 8 vertices but not isomorphic.
        assert!(!is_isomorphic(&prism(4), &moebius(8)).unwrap());
    }

    #[test]
    fn labelled_canonical_form_respects_labels() {
        let g1 = DartGraph::from_edge_list(2, &[(0, 1)]).unwrap();
        let a = LabelledGraph::new(g1.clone(), vec![1, 2]).unwrap();
        // Same graph with the vertex roles swapped.
        let g2 = DartGraph::from_edge_list(2, &[(1, 0)]).unwrap();
        let b = LabelledGraph::new(g2, vec![1, 2]).unwrap();
        assert!(is_labelled_isomorphic(&a, &b).unwrap());
        let c = LabelledGraph::new(g1, vec![1, 3]).unwrap();
        assert!(!is_labelled_isomorphic(&a, &c).unwrap());
        // Loop plus semiedge differs from three semiedges.
        let ls = LabelledGraph::all_ones(
            DartGraph::new(1, vec![0, 0, 0], vec![1, 0, 2]).unwrap(),
        );
        let sss = LabelledGraph::all_ones(
            DartGraph::new(1, vec![0, 0, 0], vec![0, 1, 2]).unwrap(),
        );
        assert!(!is_labelled_isomorphic(&ls, &sss).unwrap());
    }

    #[test]
    fn meo_equals_longest_orbit_on_cubic_vt_examples() {
        // For these cubic VT graphs the maximum element order is realized as
        // an orbit length of the cyclic group it generates.
        for g in [petersen(), prism(4), moebius(8)] {
            let group = automorphism_group(&g, DEFAULT_GROUP_CAP).unwrap();
            let meo = group.max_element_order().unwrap();
            let max_orbit = group
                .elements
                .as_ref()
                .unwrap()
                .iter()
                .flat_map(|p| p.orbits().into_iter().map(|o| o.len() as u64))
                .max()
                .unwrap();
            assert_eq!(meo, max_orbit);
        }
    }
}
