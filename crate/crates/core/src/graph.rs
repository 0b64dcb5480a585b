//! Finite directed graphs, paths, walks and vertex sets.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ident {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// A generator name resolved against a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// A finite directed graph `(E⁰, E¹, r, s)`.
///
/// Vertices and edges keep their declaration order, which is observable:
/// it fixes the designated edge at every vertex and the ordering of all
/// reports. Vertex and edge identifiers share one namespace so element
/// expressions can refer to either unambiguously.
#[derive(Debug, Clone)]
pub struct Graph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
    lookup: HashMap<String, Ident>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.structurally_eq(other)
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn builder(name: impl Into<String>) -> GraphBuilder {
        GraphBuilder {
            graph: Graph {
                name: name.into(),
                vertices: Vec::new(),
                edges: Vec::new(),
                lookup: HashMap::new(),
                out_edges: Vec::new(),
                in_edges: Vec::new(),
            },
        }
    }

    /// Convenience constructor from name lists.
    pub fn from_parts(name: &str, vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Graph> {
        let mut b = Graph::builder(name);
        for v in vertices {
            b.vertex(v)?;
        }
        for (e, s, r) in edges {
            b.edge(e, s, r)?;
        }
        Ok(b.finish())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    pub fn edge_record(&self, e: EdgeId) -> &EdgeRecord {
        &self.edges[e.0]
    }

    /// `s⁻¹(v)` in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// `r⁻¹(v)` in declaration order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges[v.0].len()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.0].is_empty()
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_sink(v)).collect()
    }

    /// The last-declared edge leaving `v`; the pivot of the normal-form rewrite rule.
    pub fn designated_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.out_edges[v.0].last().copied()
    }

    pub fn is_designated(&self, e: EdgeId) -> bool {
        self.designated_edge(self.source(e)) == Some(e)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.0 < self.vertices.len()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<VertexId> {
        if self.contains_vertex(v) {
            Ok(v)
        } else {
            Err(Error::UnknownVertex(format!("#{}", v.0)))
        }
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        match self.lookup.get(name) {
            Some(Ident::Vertex(v)) => Ok(*v),
            _ => Err(Error::UnknownVertex(name.to_string())),
        }
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId> {
        match self.lookup.get(name) {
            Some(Ident::Edge(e)) => Ok(*e),
            _ => Err(Error::UnknownIdentifier(name.to_string())),
        }
    }

    pub fn generator(&self, name: &str) -> Result<Generator> {
        match self.lookup.get(name) {
            Some(Ident::Vertex(v)) => Ok(Generator::Vertex(*v)),
            Some(Ident::Edge(e)) => Ok(Generator::Edge(*e)),
            None => Err(Error::UnknownIdentifier(name.to_string())),
        }
    }

    /// Same vertices and edges in the same order, ignoring the graph name.
    pub fn structurally_eq(&self, other: &Graph) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names
            .iter()
            .map(|n| self.vertex_id(n.as_ref()))
            .collect::<Result<BTreeSet<_>>>()
            .map(VertexSet)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet(self.vertices().collect())
    }

    pub fn vertex_names(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.vertex_name(v).to_string()).collect()
    }

    /// Edge names of a path, or the vertex name for a trivial path.
    pub fn path_names(&self, p: &Path) -> Vec<String> {
        if p.is_trivial() {
            vec![self.vertex_name(p.source()).to_string()]
        } else {
            p.edges().iter().map(|&e| self.edge_name(e).to_string()).collect()
        }
    }

    /// The subgraph induced by `set`, keeping every edge whose endpoints both lie in it.
    pub fn induced_subgraph(&self, name: &str, set: &VertexSet) -> Graph {
        let mut b = Graph::builder(name);
        for v in set.iter() {
            b.vertex(self.vertex_name(v)).expect("names unique in parent");
        }
        for e in self.edges() {
            let rec = &self.edges[e.0];
            if set.contains(rec.source) && set.contains(rec.range) {
                b.edge(
                    &rec.name,
                    self.vertex_name(rec.source),
                    self.vertex_name(rec.range),
                )
                .expect("endpoints present");
            }
        }
        b.finish()
    }

    /// All paths of length exactly `len` (trivial paths for `len == 0`).
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = self.vertices().map(Path::vertex).collect();
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|p| {
                    self.out_edges(p.range())
                        .iter()
                        .map(move |&e| p.extended(self, e).expect("composable"))
                })
                .collect();
        }
        layer.sort();
        layer
    }

    /// All paths of length at most `max_len`, sorted.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = (0..=max_len).flat_map(|l| self.paths_of_length(l)).collect();
        all.sort();
        all
    }

    /// A shortest walk from `from` to `to` in the underlying undirected graph.
    pub fn walk_between(&self, from: VertexId, to: VertexId) -> Option<Walk> {
        let mut prev: Vec<Option<(VertexId, WalkStep)>> = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([from]);
        seen[from.0] = true;
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            let forward = self.out_edges(u).iter().map(|&e| (self.range(e), WalkStep::Forward(e)));
            let backward = self.in_edges(u).iter().map(|&e| (self.source(e), WalkStep::Backward(e)));
            for (w, step) in forward.chain(backward) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    prev[w.0] = Some((u, step));
                    queue.push_back(w);
                }
            }
        }
        if !seen[to.0] {
            return None;
        }
        let mut steps = Vec::new();
        let mut cur = to;
        while let Some((p, step)) = prev[cur.0] {
            steps.push(step);
            cur = p;
        }
        steps.reverse();
        Some(Walk { start: from, steps })
    }

    /// Renders the graph in the DSL accepted by [`crate::dsl::parse_graph`].
    pub fn to_dsl(&self) -> String {
        let mut out = format!("graph {}\n", self.name);
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} {} {}\n",
                e.name, self.vertices[e.source.0], self.vertices[e.range.0]
            ));
        }
        out
    }
}

pub struct GraphBuilder {
    graph: Graph,
}

impl GraphBuilder {
    pub fn vertex(&mut self, name: &str) -> Result<VertexId> {
        let g = &mut self.graph;
        if g.lookup.contains_key(name) {
            return Err(Error::DuplicateIdentifier(name.to_string()));
        }
        let id = VertexId(g.vertices.len());
        g.vertices.push(name.to_string());
        g.out_edges.push(Vec::new());
        g.in_edges.push(Vec::new());
        g.lookup.insert(name.to_string(), Ident::Vertex(id));
        Ok(id)
    }

    pub fn edge(&mut self, name: &str, source: &str, range: &str) -> Result<EdgeId> {
        let g = &mut self.graph;
        if g.lookup.contains_key(name) {
            return Err(Error::DuplicateIdentifier(name.to_string()));
        }
        let endpoint = |v: &str| match g.lookup.get(v) {
            Some(Ident::Vertex(id)) => Ok(*id),
            _ => Err(Error::UndeclaredEndpoint {
                edge: name.to_string(),
                vertex: v.to_string(),
            }),
        };
        let (s, r) = (endpoint(source)?, endpoint(range)?);
        let id = EdgeId(g.edges.len());
        g.edges.push(EdgeRecord {
            name: name.to_string(),
            source: s,
            range: r,
        });
        g.out_edges[s.0].push(id);
        g.in_edges[r.0].push(id);
        g.lookup.insert(name.to_string(), Ident::Edge(id));
        Ok(id)
    }

    pub fn has_name(&self, name: &str) -> bool {
        self.graph.lookup.contains_key(name)
    }

    pub fn finish(self) -> Graph {
        self.graph
    }
}

/// A path `e₁…eₙ` with `r(eᵢ) = s(eᵢ₊₁)`, or a trivial path at a vertex.
///
/// Paths order by length, then source, then edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            source: v,
            range: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Path {
        Path {
            source: g.source(e),
            range: g.range(e),
            edges: vec![e],
        }
    }

    pub fn from_edges(g: &Graph, edges: &[EdgeId]) -> Result<Path> {
        let (first, rest) = edges
            .split_first()
            .ok_or_else(|| Error::Precondition("path needs at least one edge".into()))?;
        let mut p = Path::edge(g, *first);
        for &e in rest {
            p = p
                .extended(g, e)
                .ok_or_else(|| Error::Precondition(format!("edge `{}` does not compose", g.edge_name(e))))?;
        }
        Ok(p)
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// `self · e`, if `s(e) = r(self)`.
    pub fn extended(&self, g: &Graph, e: EdgeId) -> Option<Path> {
        (g.source(e) == self.range).then(|| {
            let mut edges = self.edges.clone();
            edges.push(e);
            Path {
                source: self.source,
                range: g.range(e),
                edges,
            }
        })
    }

    /// Drops the last edge. `None` for trivial paths.
    pub fn truncated(&self, g: &Graph) -> Option<Path> {
        let (&last, init) = self.edges.split_last()?;
        Some(Path {
            source: self.source,
            range: g.source(last),
            edges: init.to_vec(),
        })
    }

    /// Concatenation, if `r(self) = s(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        (self.range == other.source).then(|| {
            let mut edges = self.edges.clone();
            edges.extend_from_slice(&other.edges);
            Path {
                source: self.source,
                range: other.range,
                edges,
            }
        })
    }

    /// Returns `t` with `self = prefix · t`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if prefix.source != self.source || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            source: prefix.range,
            range: self.range,
            edges: self.edges[prefix.edges.len()..].to_vec(),
        })
    }

    /// The vertex set `μ⁰`.
    pub fn vertex_list(&self, g: &Graph) -> Vec<VertexId> {
        let mut vs = vec![self.source];
        vs.extend(self.edges.iter().map(|&e| g.range(e)));
        vs
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then(self.source.cmp(&other.source))
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A closed path whose edges have pairwise distinct sources.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Path);

impl Cycle {
    pub fn new(g: &Graph, path: Path) -> Result<Cycle> {
        if path.is_trivial() {
            return Err(Error::NotACycle("trivial path".into()));
        }
        if path.source() != path.range() {
            return Err(Error::NotACycle("path is not closed".into()));
        }
        let mut sources = BTreeSet::new();
        for &e in path.edges() {
            if !sources.insert(g.source(e)) {
                return Err(Error::NotACycle(format!(
                    "vertex `{}` repeated",
                    g.vertex_name(g.source(e))
                )));
            }
        }
        Ok(Cycle(path))
    }

    pub fn path(&self) -> &Path {
        &self.0
    }

    pub fn base(&self) -> VertexId {
        self.0.source()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WalkStep {
    Forward(EdgeId),
    /// A formal reversed edge, written `e*`.
    Backward(EdgeId),
}

/// A path in the underlying undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    start: VertexId,
    steps: Vec<WalkStep>,
}

impl Walk {
    pub fn new(g: &Graph, start: VertexId, steps: Vec<WalkStep>) -> Result<Walk> {
        let mut at = g.check_vertex(start)?;
        for step in &steps {
            let (from, to) = match *step {
                WalkStep::Forward(e) => (g.source(e), g.range(e)),
                WalkStep::Backward(e) => (g.range(e), g.source(e)),
            };
            if from != at {
                return Err(Error::Precondition("walk steps do not compose".into()));
            }
            at = to;
        }
        Ok(Walk { start, steps })
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self, g: &Graph) -> VertexId {
        match self.steps.last() {
            None => self.start,
            Some(WalkStep::Forward(e)) => g.range(*e),
            Some(WalkStep::Backward(e)) => g.source(*e),
        }
    }

    pub fn steps(&self) -> &[WalkStep] {
        &self.steps
    }
}

/// A subset of `E⁰`, iterated in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct VertexSet(BTreeSet<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}
