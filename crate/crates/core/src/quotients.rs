//! Graded ideals `I(H)`: the quotient graph `E/H` with its morphism, socle
//! membership, the restriction graph `ₕE`, and right denominators in `KE`.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::analysis::{
    component_vertex_sets, hereditary_saturated_closure, is_hereditary, is_saturated, line_points,
};
use crate::builders;
use crate::element::{Element, Monomial};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId, VertexSet};
use crate::scalar::Field;

fn check_set(g: &Graph, h: &VertexSet, saturated: bool) -> Result<()> {
    if h.iter().any(|v| !g.contains_vertex(v)) {
        return Err(Error::Precondition("vertex set not contained in the graph".into()));
    }
    if !is_hereditary(g, h) || (saturated && !is_saturated(g, h)) {
        return Err(Error::NotHereditarySaturated);
    }
    Ok(())
}

/// The surjection `π: L_K(E) → L_K(E/H)` with kernel `I(H)`.
#[derive(Debug, Clone)]
pub struct QuotientMorphism {
    source: Arc<Graph>,
    hereditary: VertexSet,
    target: Arc<Graph>,
    vertex_map: Vec<Option<VertexId>>,
    edge_map: Vec<Option<EdgeId>>,
}

/// `E/H`: drop `H` and every edge whose range lies in `H`. Named `<name>_quot`.
///
/// The graph is well defined as soon as `H` is hereditary; only the
/// morphism onto `L_K(E/H)` needs `H` saturated as well.
pub fn quotient_graph(g: &Graph, h: &VertexSet) -> Result<Graph> {
    Ok(QuotientMorphism::build(g, h, false)?.0)
}

impl QuotientMorphism {
    fn build(
        g: &Graph,
        h: &VertexSet,
        saturated: bool,
    ) -> Result<(Graph, Vec<Option<VertexId>>, Vec<Option<EdgeId>>)> {
        check_set(g, h, saturated)?;
        let mut b = Graph::builder(format!("{}_quot", g.name()));
        let mut vertex_map = vec![None; g.vertex_count()];
        for v in g.vertices().filter(|&v| !h.contains(v)) {
            vertex_map[v.0] = Some(b.vertex(g.vertex_name(v))?);
        }
        let mut edge_map = vec![None; g.edge_count()];
        for e in g.edges().filter(|&e| !h.contains(g.range(e))) {
            let (s, r) = (g.vertex_name(g.source(e)), g.vertex_name(g.range(e)));
            edge_map[e.0] = Some(b.edge(g.edge_name(e), s, r)?);
        }
        Ok((b.finish(), vertex_map, edge_map))
    }

    pub fn new(g: &Arc<Graph>, h: &VertexSet) -> Result<QuotientMorphism> {
        let (target, vertex_map, edge_map) = QuotientMorphism::build(g, h, true)?;
        Ok(QuotientMorphism {
            source: g.clone(),
            hereditary: h.clone(),
            target: Arc::new(target),
            vertex_map,
            edge_map,
        })
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn hereditary_set(&self) -> &VertexSet {
        &self.hereditary
    }

    fn map_path(&self, p: &Path) -> Option<Path> {
        if p.is_trivial() {
            return self.vertex_map[p.source().0].map(Path::vertex);
        }
        let edges: Option<Vec<EdgeId>> = p.edges().iter().map(|e| self.edge_map[e.0]).collect();
        Some(Path::from_edges(&self.target, &edges?).expect("image of a path composes"))
    }

    fn map_monomial(&self, m: &Monomial) -> Option<Monomial> {
        let real = self.map_path(m.real())?;
        let ghost = self.map_path(m.ghost())?;
        Some(Monomial::new(real, ghost).expect("ranges preserved"))
    }

    /// `π(x)`, re-normalized in `E/H` (designated edges may differ there).
    pub fn apply(&self, x: &Element) -> Result<Element> {
        if **x.graph() != *self.source {
            return Err(Error::GraphMismatch);
        }
        let raw: Vec<(Monomial, _)> = x
            .terms()
            .filter_map(|(m, c)| self.map_monomial(m).map(|m2| (m2, c.clone())))
            .collect();
        Ok(Element::from_terms(&self.target, x.field(), raw))
    }

    /// Images of every vertex, edge and ghost edge, in declaration order.
    pub fn generator_images(&self) -> Vec<(String, String)> {
        let g = &self.source;
        let mut out: Vec<(String, String)> = Vec::new();
        let name = |x: Option<String>| x.unwrap_or_else(|| "0".into());
        for v in g.vertices() {
            let img = self.vertex_map[v.0].map(|w| self.target.vertex_name(w).to_string());
            out.push((g.vertex_name(v).to_string(), name(img)));
        }
        for e in g.edges() {
            let img = self.edge_map[e.0].map(|f| self.target.edge_name(f).to_string());
            out.push((g.edge_name(e).to_string(), name(img)));
        }
        for e in g.edges() {
            let img = self.edge_map[e.0].map(|f| format!("{}'", self.target.edge_name(f)));
            out.push((format!("{}'", g.edge_name(e)), name(img)));
        }
        out
    }
}

/// `π(x)` for `π: L_K(E) → L_K(E/H)`.
pub fn quotient_morphism(x: &Element, h: &VertexSet) -> Result<Element> {
    QuotientMorphism::new(x.graph(), h)?.apply(x)
}

/// Membership in the graded ideal `I(H)`, decided as `π(x) = 0`.
pub fn in_graded_ideal(x: &Element, h: &VertexSet) -> Result<bool> {
    Ok(quotient_morphism(x, h)?.is_zero())
}

/// The hereditary saturated set generating the socle: the closure of the line points.
pub fn socle_set(g: &Graph) -> VertexSet {
    hereditary_saturated_closure(g, &line_points(g))
}

/// Membership in `Soc(L_K(E)) = I(H)` with `H` the closure of the line points.
pub fn in_socle(x: &Element) -> bool {
    let h = socle_set(x.graph());
    in_graded_ideal(x, &h).expect("closure is hereditary and saturated")
}

/// The restriction graph `ₕE` with `F_E(H)` enumerated up to a length bound.
#[derive(Debug, Clone)]
pub struct RestrictionGraph {
    source: Arc<Graph>,
    hereditary: VertexSet,
    graph: Arc<Graph>,
    bound: usize,
    complete: bool,
    /// `F_E(H)` in the vertex order of `graph`.
    paths: Vec<Path>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionSummary {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
    pub bound: usize,
    pub complete: bool,
}

impl RestrictionGraph {
    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn hereditary_set(&self) -> &VertexSet {
        &self.hereditary
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Whether every path of `F_E(H)` has length at most the bound.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn summary(&self) -> RestrictionSummary {
        let g = &self.graph;
        RestrictionSummary {
            vertices: g.vertices().map(|v| g.vertex_name(v).to_string()).collect(),
            edges: g
                .edges()
                .map(|e| {
                    (
                        g.edge_name(e).to_string(),
                        g.vertex_name(g.source(e)).to_string(),
                        g.vertex_name(g.range(e)).to_string(),
                    )
                })
                .collect(),
            bound: self.bound,
            complete: self.complete,
        }
    }

    fn path_image(&self, p: &Path, field: Field) -> Element {
        let (g, e) = (&self.graph, &self.source);
        let h_count = self.hereditary.len();
        if p.is_trivial() {
            let v = p.source();
            return if v.0 < h_count {
                Element::vertex(e, field, e.vertex_id(g.vertex_name(v)).expect("H vertex"))
            } else {
                let alpha = Element::path(e, field, &self.paths[v.0 - h_count]);
                &alpha * &alpha.involution()
            };
        }
        let mut edges: Vec<EdgeId> = Vec::new();
        for &x in p.edges() {
            let name = g.edge_name(x);
            if name.starts_with("bar:") {
                let alpha = &self.paths[g.source(x).0 - h_count];
                edges.extend_from_slice(alpha.edges());
            } else {
                edges.push(e.edge_id(name).expect("edge of E"));
            }
        }
        Element::path(e, field, &Path::from_edges(e, &edges).expect("image composes"))
    }

    /// The embedding `L_K(ₕE) → I(H) ⊆ L_K(E)`: `u ↦ u` on `H`,
    /// `α ↦ αα*`, `e ↦ e`, `ᾱ ↦ α`. The truncated `ₕE` is a complete
    /// subgraph, so every element over it has an image.
    pub fn embed(&self, y: &Element) -> Result<Element> {
        if **y.graph() != *self.graph {
            return Err(Error::GraphMismatch);
        }
        let field = y.field();
        let mut acc = Element::zero(&self.source, field);
        for (m, c) in y.terms() {
            let a = self.path_image(m.real(), field);
            let b = self.path_image(m.ghost(), field).involution();
            acc = &acc + &(&a * &b).scale(c);
        }
        Ok(acc)
    }
}

/// `ₕE` for nonempty hereditary `H`, with `F_E(H)` listed up to
/// length `bound`. Vertices: `H` in declaration order, then `path:<edges>`
/// by length and edge order. Edges: those leaving `H`, then `bar:<edges>`.
pub fn restriction_graph(g: &Arc<Graph>, h: &VertexSet, bound: usize) -> Result<RestrictionGraph> {
    if h.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    check_set(g, h, false)?;
    // Paths avoiding H, grown one edge at a time; those stepping into H qualify.
    let mut frontier: Vec<Path> = g.vertices().filter(|&v| !h.contains(v)).map(Path::vertex).collect();
    let mut paths: Vec<Path> = Vec::new();
    let mut complete = true;
    for len in 1..=bound + 1 {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in g.out_edges(p.range()) {
                let q = p.extended(g, e).expect("composable");
                if h.contains(g.range(e)) {
                    if len > bound {
                        complete = false;
                    } else {
                        paths.push(q);
                    }
                } else {
                    next.push(q);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.edges().cmp(b.edges())));

    let joined = |p: &Path| p.edges().iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(".");
    let mut b = Graph::builder(format!("{}_restrict", g.name()));
    for v in h.iter() {
        b.vertex(g.vertex_name(v))?;
    }
    for p in &paths {
        b.vertex(&format!("path:{}", joined(p)))?;
    }
    for e in g.edges().filter(|&e| h.contains(g.source(e))) {
        b.edge(g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e)))?;
    }
    for p in &paths {
        let name = joined(p);
        b.edge(&format!("bar:{name}"), &format!("path:{name}"), g.vertex_name(p.range()))?;
    }
    Ok(RestrictionGraph {
        source: g.clone(),
        hereditary: h.clone(),
        graph: Arc::new(b.finish()),
        bound,
        complete,
        paths,
    })
}

/// Restriction-graph embedding as a free function.
pub fn restriction_embedding(rg: &RestrictionGraph, y: &Element) -> Result<Element> {
    rg.embed(y)
}

/// The socle of the ladder example as a finite graph: `ₕE` for the
/// truncation [`builders::ladder`] with `k + 1` columns and `H` the closure
/// of the line points, enumerated to length `k`, keeping the components of
/// the sinks `v₁, …, v_k`. The component of `v_j` has `j + 1` vertices.
/// The last column is dropped because the truncation cap makes its
/// `F_E(H)` infinite.
pub fn ladder_socle_graph(k: usize) -> Result<Graph> {
    let g = Arc::new(builders::ladder(k + 1));
    let h = socle_set(&g);
    let rg = restriction_graph(&g, &h, k)?;
    let rgraph = rg.graph();
    let keep: BTreeSet<VertexId> = (1..=k)
        .map(|j| rgraph.vertex_id(&format!("v{j}")))
        .collect::<Result<_>>()?;
    let mut set = VertexSet::new();
    for part in component_vertex_sets(rgraph) {
        if part.iter().any(|v| keep.contains(&v)) {
            for v in part.iter() {
                set.insert(v);
            }
        }
    }
    Ok(rgraph.induced_subgraph(&format!("LadderSocle{k}"), &set))
}

/// A right denominator `r` for `(p, q)`: `p·r ≠ 0` and `q·r ∈ KE`.
#[derive(Debug, Clone)]
pub struct Denominator {
    pub r: Element,
    pub path: Path,
    /// Edges appended after `p·μ` landed in `KE`.
    pub iterations: usize,
    /// Largest ghost length in the normal form of `q`.
    pub bound: usize,
}

/// Candidate paths `μ` explored before giving up on `pμ ∈ KE ∖ {0}`.
pub const DENOMINATOR_SEARCH_CAP: usize = 10_000;

/// Finds `r` as in the proof that `L_K(E)` is a ring of right quotients of
/// `KE`: first a path `μ` with `0 ≠ pμ ∈ KE`, trying the ghost paths of `p`
/// longest first and then their extensions breadth first, then extending
/// `μ` by the first edge at `r(μ)` while `qμ ∉ KE`. Each extension lowers
/// the ghost length of `qμ`, so at most `bound` extensions happen.
pub fn right_denominator(p: &Element, q: &Element) -> Result<Denominator> {
    if p.is_zero() {
        return Err(Error::ZeroElement);
    }
    if **p.graph() != **q.graph() || p.field() != q.field() {
        return Err(Error::GraphMismatch);
    }
    let g = p.graph();
    let field = p.field();
    let mut ghosts: Vec<Path> = p.terms().map(|(m, _)| m.ghost().clone()).collect();
    ghosts.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    ghosts.dedup();

    let good = |mu: &Path| {
        let pm = p * &Element::path(g, field, mu);
        !pm.is_zero() && pm.is_in_path_algebra()
    };
    let mut mu = None;
    let mut seen: BTreeSet<Path> = BTreeSet::new();
    let mut queue: VecDeque<Path> = VecDeque::new();
    for c in &ghosts {
        if seen.insert(c.clone()) {
            queue.push_back(c.clone());
        }
    }
    let mut tried = 0;
    while let Some(c) = queue.pop_front() {
        tried += 1;
        if good(&c) {
            mu = Some(c);
            break;
        }
        if tried >= DENOMINATOR_SEARCH_CAP {
            break;
        }
        for &e in g.out_edges(c.range()) {
            let next = c.extended(g, e).expect("composable");
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut mu = mu.ok_or(Error::NotFoundWithinBounds)?;

    let bound = q.degree().ghost;
    let mut iterations = 0;
    loop {
        let qm = q * &Element::path(g, field, &mu);
        if qm.is_in_path_algebra() {
            break;
        }
        let Some(&h) = g.out_edges(mu.range()).first() else {
            unreachable!("q·μ lies in KE when μ ends at a sink");
        };
        mu = mu.extended(g, h).expect("composable");
        iterations += 1;
    }
    Ok(Denominator { r: Element::path(g, field, &mu), path: mu, iterations, bound })
}
