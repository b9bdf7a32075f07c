//! Graphs, layout semantics, crossing predicates, and classical brute-force
//! solvers. Everything in the quantum and annealing stacks is validated
//! against this module.

mod brute;
mod io;

pub use brute::{BruteForceLimits, BruteForceReport, brute_force_solve, tlcm_optimum};
pub use io::{read_graph_str, write_graph_json, write_graph_text, GraphInput};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex index {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("edge index {0} out of range (m = {1})")]
    EdgeOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("order is not a permutation of the expected vertex set")]
    BadPermutation,
    #[error("instance too large for brute force: {0}")]
    TooLarge(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GraphError>;

/// An undirected simple graph; edge index `i` is the position in `edges`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Graph { n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph { n, edges }
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// True when the two edges share no endpoint.
    pub fn independent(&self, a: usize, b: usize) -> bool {
        let (a0, a1) = self.edges[a];
        let (b0, b1) = self.edges[b];
        a0 != b0 && a0 != b1 && a1 != b0 && a1 != b1
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    fn components(&self) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_forest(&self) -> bool {
        let comp = self.components();
        let count = comp.iter().copied().max().map_or(0, |c| c + 1);
        self.edges.len() + count == self.n
    }
}

/// A bipartite graph with parts `U` and `V`. Edges store local indices
/// `(u, v)` with `u < size_u` and `v < size_v`; in the combined vertex
/// numbering, `u_i` keeps label `i` and `v_j` gets label `size_u + j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub size_u: usize,
    pub size_v: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(size_u: usize, size_v: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u >= size_u {
                return Err(GraphError::VertexOutOfRange(u, size_u));
            }
            if v >= size_v {
                return Err(GraphError::VertexOutOfRange(v, size_v));
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(BipartiteGraph {
            size_u,
            size_v,
            edges,
        })
    }

    pub fn complete(size_u: usize, size_v: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..size_u {
            for v in 0..size_v {
                edges.push((u, v));
            }
        }
        BipartiteGraph {
            size_u,
            size_v,
            edges,
        }
    }

    pub fn n(&self) -> usize {
        self.size_u + self.size_v
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn independent(&self, a: usize, b: usize) -> bool {
        let (ua, va) = self.edges[a];
        let (ub, vb) = self.edges[b];
        ua != ub && va != vb
    }

    /// The same graph over the combined vertex numbering.
    pub fn to_general(&self) -> Graph {
        Graph {
            n: self.n(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (u, self.size_u + v))
                .collect(),
        }
    }
}

/// A two-level drawing: the left-to-right sequence of each layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoLevelOrder {
    pub order_u: Vec<usize>,
    pub order_v: Vec<usize>,
}

impl TwoLevelOrder {
    pub fn new(order_u: Vec<usize>, order_v: Vec<usize>) -> Result<Self> {
        if !is_permutation(&order_u) || !is_permutation(&order_v) {
            return Err(GraphError::BadPermutation);
        }
        Ok(TwoLevelOrder { order_u, order_v })
    }

    /// Position of each u-vertex (inverse of `order_u`).
    pub fn pos_u(&self) -> Vec<usize> {
        invert(&self.order_u)
    }

    pub fn pos_v(&self) -> Vec<usize> {
        invert(&self.order_v)
    }
}

/// A spine order for book layouts: the left-to-right vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineOrder {
    pub order: Vec<usize>,
}

impl SpineOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        if !is_permutation(&order) {
            return Err(GraphError::BadPermutation);
        }
        Ok(SpineOrder { order })
    }

    pub fn pos(&self) -> Vec<usize> {
        invert(&self.order)
    }
}

/// A page index per edge, each below `tau`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageAssignment {
    pub pages: Vec<usize>,
    pub tau: usize,
}

impl PageAssignment {
    pub fn new(pages: Vec<usize>, tau: usize) -> Result<Self> {
        if let Some(&p) = pages.iter().find(|&&p| p >= tau) {
            return Err(GraphError::Parameter(format!(
                "page {p} out of range (tau = {tau})"
            )));
        }
        Ok(PageAssignment { pages, tau })
    }
}

/// A set of edge indices marked for removal.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EdgeRemovalSet {
    pub indices: BTreeSet<usize>,
}

impl EdgeRemovalSet {
    pub fn new(indices: impl IntoIterator<Item = usize>, m: usize) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&i) = indices.iter().find(|&&i| i >= m) {
            return Err(GraphError::EdgeOutOfRange(i, m));
        }
        Ok(EdgeRemovalSet { indices })
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn is_permutation(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    order.iter().all(|&v| {
        if v < seen.len() && !seen[v] {
            seen[v] = true;
            true
        } else {
            false
        }
    })
}

fn invert(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    pos
}

/// Whether edges `a` and `b` cross in the two-level drawing: their endpoint
/// orders disagree between the layers. Pairs sharing an endpoint never cross
/// (drawings are simple).
pub fn two_level_cross(
    graph: &BipartiteGraph,
    order: &TwoLevelOrder,
    a: usize,
    b: usize,
) -> Result<bool> {
    let m = graph.m();
    if a >= m {
        return Err(GraphError::EdgeOutOfRange(a, m));
    }
    if b >= m {
        return Err(GraphError::EdgeOutOfRange(b, m));
    }
    if !graph.independent(a, b) {
        return Ok(false);
    }
    let pos_u = order.pos_u();
    let pos_v = order.pos_v();
    let (ua, va) = graph.edges[a];
    let (ub, vb) = graph.edges[b];
    Ok((pos_u[ua] < pos_u[ub]) != (pos_v[va] < pos_v[vb]))
}

/// Whether edges `a` and `b` cross in the 1-page layout given by `order`:
/// their endpoints interleave along the spine (exactly one endpoint of `b`
/// lies strictly between the endpoints of `a`). Shared endpoints never cross.
pub fn book_cross(graph: &Graph, order: &SpineOrder, a: usize, b: usize) -> Result<bool> {
    let m = graph.m();
    if a >= m {
        return Err(GraphError::EdgeOutOfRange(a, m));
    }
    if b >= m {
        return Err(GraphError::EdgeOutOfRange(b, m));
    }
    if !graph.independent(a, b) {
        return Ok(false);
    }
    let pos = order.pos();
    let (a0, a1) = graph.edges[a];
    let (b0, b1) = graph.edges[b];
    Ok(spine_interleave(pos[a0], pos[a1], pos[b0], pos[b1]))
}

/// Interleaving test on spine positions.
pub(crate) fn spine_interleave(a0: usize, a1: usize, b0: usize, b1: usize) -> bool {
    let (lo, hi) = (a0.min(a1), a0.max(a1));
    let inside0 = lo < b0 && b0 < hi;
    let inside1 = lo < b1 && b1 < hi;
    inside0 != inside1
}

/// Total crossing pairs of a two-level drawing, skipping removed edges.
pub fn count_two_level_crossings(
    graph: &BipartiteGraph,
    order: &TwoLevelOrder,
    removed: Option<&EdgeRemovalSet>,
) -> Result<u64> {
    let pos_u = order.pos_u();
    let pos_v = order.pos_v();
    let mut total = 0;
    for a in 0..graph.m() {
        if removed.is_some_and(|r| r.contains(a)) {
            continue;
        }
        for b in a + 1..graph.m() {
            if removed.is_some_and(|r| r.contains(b)) {
                continue;
            }
            if !graph.independent(a, b) {
                continue;
            }
            let (ua, va) = graph.edges[a];
            let (ub, vb) = graph.edges[b];
            if (pos_u[ua] < pos_u[ub]) != (pos_v[va] < pos_v[vb]) {
                total += 1;
            }
        }
    }
    Ok(total)
}

/// Crossings per edge in a two-level drawing.
pub fn per_edge_two_level_crossings(
    graph: &BipartiteGraph,
    order: &TwoLevelOrder,
) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; graph.m()];
    for a in 0..graph.m() {
        for b in a + 1..graph.m() {
            if two_level_cross(graph, order, a, b)? {
                counts[a] += 1;
                counts[b] += 1;
            }
        }
    }
    Ok(counts)
}

/// Total crossing pairs of a 1-page layout, skipping removed edges.
pub fn count_book_crossings(
    graph: &Graph,
    order: &SpineOrder,
    removed: Option<&EdgeRemovalSet>,
) -> Result<u64> {
    let pos = order.pos();
    let mut total = 0;
    for a in 0..graph.m() {
        if removed.is_some_and(|r| r.contains(a)) {
            continue;
        }
        for b in a + 1..graph.m() {
            if removed.is_some_and(|r| r.contains(b)) {
                continue;
            }
            if !graph.independent(a, b) {
                continue;
            }
            let (a0, a1) = graph.edges[a];
            let (b0, b1) = graph.edges[b];
            if spine_interleave(pos[a0], pos[a1], pos[b0], pos[b1]) {
                total += 1;
            }
        }
    }
    Ok(total)
}

/// No three edges pairwise cross in the two-level drawing.
pub fn is_quasi_planar_two_level(graph: &BipartiteGraph, order: &TwoLevelOrder) -> Result<bool> {
    let m = graph.m();
    let mut cross = vec![vec![false; m]; m];
    for a in 0..m {
        for b in a + 1..m {
            let c = two_level_cross(graph, order, a, b)?;
            cross[a][b] = c;
            cross[b][a] = c;
        }
    }
    for a in 0..m {
        for b in a + 1..m {
            if !cross[a][b] {
                continue;
            }
            for c in b + 1..m {
                if cross[a][c] && cross[b][c] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A same-page crossing exists in the book layout?
pub fn book_embedding_valid(
    graph: &Graph,
    order: &SpineOrder,
    pages: &PageAssignment,
) -> Result<bool> {
    if pages.pages.len() != graph.m() {
        return Err(GraphError::Parameter(
            "page assignment length must equal edge count".into(),
        ));
    }
    let pos = order.pos();
    for a in 0..graph.m() {
        for b in a + 1..graph.m() {
            if pages.pages[a] != pages.pages[b] || !graph.independent(a, b) {
                continue;
            }
            let (a0, a1) = graph.edges[a];
            let (b0, b1) = graph.edges[b];
            if spine_interleave(pos[a0], pos[a1], pos[b0], pos[b1]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff the graph is a forest whose trees become paths (possibly empty)
/// once all leaves are removed.
pub fn is_caterpillar_forest(graph: &Graph) -> bool {
    if !graph.is_forest() {
        return false;
    }
    let deg = graph.degrees();
    // spine candidates: vertices of degree >= 2
    let spine: Vec<bool> = deg.iter().map(|&d| d >= 2).collect();
    for v in 0..graph.n {
        if !spine[v] {
            continue;
        }
        let spine_deg = graph
            .edges
            .iter()
            .filter(|&&(a, b)| (a == v && spine[b]) || (b == v && spine[a]))
            .count();
        if spine_deg > 2 {
            return false;
        }
    }
    true
}

/// Remaining graph after deleting the given edges (vertex set unchanged).
pub fn remove_edges(graph: &Graph, removed: &EdgeRemovalSet) -> Graph {
    Graph {
        n: graph.n,
        edges: graph
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(*i))
            .map(|(_, &e)| e)
            .collect(),
    }
}

/// Remaining bipartite graph after deleting the given edges.
pub fn remove_edges_bipartite(graph: &BipartiteGraph, removed: &EdgeRemovalSet) -> BipartiteGraph {
    BipartiteGraph {
        size_u: graph.size_u,
        size_v: graph.size_v,
        edges: graph
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(*i))
            .map(|(_, &e)| e)
            .collect(),
    }
}

/// 1-page book embeddability. Density gives a fast rejection (outerplanar
/// graphs have at most 2n-3 edges); otherwise spine orders are enumerated
/// with the first vertex pinned (cutting the cyclic symmetry).
pub fn is_outerplanar(graph: &Graph, max_vertices: usize) -> Result<bool> {
    let n = graph.n;
    if n <= 2 {
        return Ok(true);
    }
    if graph.m() > 2 * n - 3 {
        return Ok(false);
    }
    if n > max_vertices {
        return Err(GraphError::TooLarge(format!(
            "outerplanarity brute force guard: n = {n} > {max_vertices}"
        )));
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let found = for_each_permutation(&mut rest, &mut |perm| {
        let mut order = Vec::with_capacity(n);
        order.push(0);
        order.extend_from_slice(perm);
        let spine = SpineOrder { order };
        count_book_crossings(graph, &spine, None).unwrap() == 0
    });
    Ok(found)
}

/// Visit every permutation of `items` (in place); stops early when the
/// visitor returns true. Returns whether any visit returned true.
pub(crate) fn for_each_permutation<T, F>(items: &mut [T], visit: &mut F) -> bool
where
    F: FnMut(&[T]) -> bool,
{
    fn rec<T, F: FnMut(&[T]) -> bool>(items: &mut [T], k: usize, visit: &mut F) -> bool {
        if k == items.len() {
            return visit(items);
        }
        for i in k..items.len() {
            items.swap(k, i);
            if rec(items, k + 1, visit) {
                items.swap(k, i);
                return true;
            }
            items.swap(k, i);
        }
        false
    }
    rec(items, 0, visit)
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    for_each_permutation(&mut items, &mut |p| {
        out.push(p.to_vec());
        false
    });
    out
}

/// The seven supported layout problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Tlcm,
    Tlkp,
    Tlqp,
    Tls,
    Opcm,
    Bt,
    Bs,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Tlcm => "tlcm",
            ProblemKind::Tlkp => "tlkp",
            ProblemKind::Tlqp => "tlqp",
            ProblemKind::Tls => "tls",
            ProblemKind::Opcm => "opcm",
            ProblemKind::Bt => "bt",
            ProblemKind::Bs => "bs",
        }
    }
}

/// A problem instance: a graph plus the problem's parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "lowercase")]
pub enum ProblemInstance {
    Tlcm { graph: BipartiteGraph, rho: u64 },
    Tlkp { graph: BipartiteGraph, k: u64 },
    Tlqp { graph: BipartiteGraph },
    Tls { graph: BipartiteGraph, sigma: usize },
    Opcm { graph: Graph, rho: u64 },
    Bt { graph: Graph, tau: usize },
    Bs { graph: Graph, sigma: usize },
}

impl ProblemInstance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemInstance::Tlcm { .. } => ProblemKind::Tlcm,
            ProblemInstance::Tlkp { .. } => ProblemKind::Tlkp,
            ProblemInstance::Tlqp { .. } => ProblemKind::Tlqp,
            ProblemInstance::Tls { .. } => ProblemKind::Tls,
            ProblemInstance::Opcm { .. } => ProblemKind::Opcm,
            ProblemInstance::Bt { .. } => ProblemKind::Bt,
            ProblemInstance::Bs { .. } => ProblemKind::Bs,
        }
    }

    /// Total vertex count of the underlying graph.
    pub fn n(&self) -> usize {
        match self {
            ProblemInstance::Tlcm { graph, .. }
            | ProblemInstance::Tlkp { graph, .. }
            | ProblemInstance::Tlqp { graph }
            | ProblemInstance::Tls { graph, .. } => graph.n(),
            ProblemInstance::Opcm { graph, .. }
            | ProblemInstance::Bt { graph, .. }
            | ProblemInstance::Bs { graph, .. } => graph.n,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            ProblemInstance::Tlcm { graph, .. }
            | ProblemInstance::Tlkp { graph, .. }
            | ProblemInstance::Tlqp { graph }
            | ProblemInstance::Tls { graph, .. } => graph.m(),
            ProblemInstance::Opcm { graph, .. }
            | ProblemInstance::Bt { graph, .. }
            | ProblemInstance::Bs { graph, .. } => graph.m(),
        }
    }

    /// Width of the search register: `n log n` for the vertex order, plus
    /// `m log tau` for page assignments, plus `sigma log m` for removal sets.
    pub fn search_bits(&self) -> usize {
        use crate::combin::log2_ceil;
        let n = self.n();
        let base = n * log2_ceil(n.max(1));
        match self {
            ProblemInstance::Bt { graph, tau } => base + graph.m() * log2_ceil((*tau).max(1)),
            ProblemInstance::Tls { graph, sigma } => base + sigma * log2_ceil(graph.m().max(1)),
            ProblemInstance::Bs { graph, sigma } => base + sigma * log2_ceil(graph.m().max(1)),
            _ => base,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ProblemInstance::Tls { graph, sigma } => {
                if *sigma == 0 || *sigma > graph.m() {
                    return Err(GraphError::Parameter(format!(
                        "sigma = {sigma} must be in 1..=m = {}",
                        graph.m()
                    )));
                }
            }
            ProblemInstance::Bs { graph, sigma } => {
                if *sigma == 0 || *sigma > graph.m() {
                    return Err(GraphError::Parameter(format!(
                        "sigma = {sigma} must be in 1..=m = {}",
                        graph.m()
                    )));
                }
            }
            ProblemInstance::Bt { tau, .. } => {
                if *tau == 0 {
                    return Err(GraphError::Parameter("tau must be positive".into()));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// A decoded, checkable answer to a problem instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Solution {
    TwoLevel {
        order: TwoLevelOrder,
    },
    TwoLevelSkew {
        removed: EdgeRemovalSet,
        order: Option<TwoLevelOrder>,
    },
    Spine {
        order: SpineOrder,
    },
    Book {
        order: SpineOrder,
        pages: PageAssignment,
    },
    BookSkew {
        removed: EdgeRemovalSet,
        order: Option<SpineOrder>,
    },
}

/// Verify a solution against its instance. `max_vertices` guards the
/// outerplanarity brute force used for order-free book skewness witnesses.
pub fn verify_solution(
    instance: &ProblemInstance,
    solution: &Solution,
    max_vertices: usize,
) -> Result<bool> {
    match (instance, solution) {
        (ProblemInstance::Tlcm { graph, rho }, Solution::TwoLevel { order }) => {
            Ok(count_two_level_crossings(graph, order, None)? <= *rho)
        }
        (ProblemInstance::Tlkp { graph, k }, Solution::TwoLevel { order }) => {
            let counts = per_edge_two_level_crossings(graph, order)?;
            Ok(counts.iter().all(|&c| c <= *k))
        }
        (ProblemInstance::Tlqp { graph }, Solution::TwoLevel { order }) => {
            is_quasi_planar_two_level(graph, order)
        }
        (ProblemInstance::Tls { graph, sigma }, Solution::TwoLevelSkew { removed, order }) => {
            if removed.len() > *sigma {
                return Ok(false);
            }
            match order {
                Some(order) => {
                    Ok(count_two_level_crossings(graph, order, Some(removed))? == 0)
                }
                None => Ok(is_caterpillar_forest(&remove_edges(
                    &graph.to_general(),
                    removed,
                ))),
            }
        }
        (ProblemInstance::Opcm { graph, rho }, Solution::Spine { order }) => {
            Ok(count_book_crossings(graph, order, None)? <= *rho)
        }
        (ProblemInstance::Bt { graph, tau }, Solution::Book { order, pages }) => {
            if pages.tau != *tau {
                return Ok(false);
            }
            book_embedding_valid(graph, order, pages)
        }
        (ProblemInstance::Bs { graph, sigma }, Solution::BookSkew { removed, order }) => {
            if removed.len() > *sigma {
                return Ok(false);
            }
            match order {
                Some(order) => Ok(count_book_crossings(graph, order, Some(removed))? == 0),
                None => is_outerplanar(&remove_edges(graph, removed), max_vertices),
            }
        }
        _ => Err(GraphError::Parameter(
            "solution form does not match problem".into(),
        )),
    }
}
