//! Matrix decompositions of `L_K(E)` for finite acyclic graphs.
//!
//! For a finite acyclic graph every vertex is a sum of `pp*` over the paths
//! `p` from it to a sink, so `L_K(E) ≅ ⊕_{sinks s} M_{n(s)}(K)` where
//! `n(s)` counts the paths ending at `s`. The matrix unit `E_{jk}` of the
//! block of `s` is `p_j p_k*` for the `j`-th and `k`-th paths into `s`.
//! Paths are indexed by source in declaration order, then length, then edge
//! order; the isomorphism depends on this choice.
//!
//! When the graph also has no bifurcations every path into a sink is
//! determined by its source, the blocks are the connected components and
//! the matrix units are the reduced monomials `μ_{jk}` read off the walk
//! from the `j`-th to the `k`-th vertex.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::analysis::{bifurcations, component_vertex_sets, is_acyclic};
use crate::element::{Element, Monomial};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId, WalkStep};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

fn require_acyclic(g: &Graph) -> Result<()> {
    if is_acyclic(g) {
        Ok(())
    } else {
        Err(Error::HasCycle)
    }
}

fn require_no_bifurcation(g: &Graph) -> Result<()> {
    require_acyclic(g)?;
    match bifurcations(g).iter().next() {
        Some(v) => Err(Error::HasBifurcation(g.vertex_name(v).to_string())),
        None => Ok(()),
    }
}

/// The unique shortest `(α, β)` with `x = αβ*` in a graph without cycles
/// or bifurcations: there `ee* = s(e)` for every edge, so common trailing
/// edges cancel.
pub fn reduced_expression(g: &Graph, x: &Monomial) -> Result<(Path, Path)> {
    require_no_bifurcation(g)?;
    let m = x.strip_common_suffix(g);
    Ok((m.real().clone(), m.ghost().clone()))
}

/// One connected component of a bifurcation-free acyclic graph with its
/// reduced monomials: `units[j][k] = μ_{jk}`, read along the walk from
/// `vertices[j]` to `vertices[k]`.
#[derive(Debug, Clone)]
pub struct ReducedComponent {
    pub vertices: Vec<VertexId>,
    pub units: Vec<Vec<Monomial>>,
}

/// The monomial spelled by a walk: forward steps on the real side, backward
/// steps on the ghost side, then reduced.
fn walk_monomial(g: &Graph, from: VertexId, steps: &[WalkStep]) -> Monomial {
    let mut real = Path::vertex(from);
    let mut back = Vec::new();
    for step in steps {
        match *step {
            WalkStep::Forward(e) if back.is_empty() => {
                real = real.extended(g, e).expect("walk composes");
            }
            WalkStep::Backward(e) => back.push(e),
            WalkStep::Forward(_) => unreachable!("walks in an in-forest go down, then up"),
        }
    }
    back.reverse();
    let ghost = if back.is_empty() {
        Path::vertex(real.range())
    } else {
        Path::from_edges(g, &back).expect("walk composes")
    };
    Monomial::new(real, ghost).expect("walk meets itself").strip_common_suffix(g)
}

/// The reduced monomial basis: `α²` monomials per component of `α` vertices.
pub fn reduced_monomial_basis(g: &Graph) -> Result<Vec<ReducedComponent>> {
    require_no_bifurcation(g)?;
    let mut out = Vec::new();
    for part in component_vertex_sets(g) {
        let vertices: Vec<VertexId> = part.iter().collect();
        let units = vertices
            .iter()
            .map(|&a| {
                vertices
                    .iter()
                    .map(|&b| {
                        let walk = g.walk_between(a, b).expect("same component");
                        walk_monomial(g, a, walk.steps())
                    })
                    .collect()
            })
            .collect();
        out.push(ReducedComponent { vertices, units });
    }
    Ok(out)
}

/// One matrix block: the paths ending at `sink`, in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub sink: VertexId,
    pub index: Vec<Path>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.index.len()
    }
}

/// `L_K(E) ≅ ⊕ M_{n(s)}(K)` for a finite acyclic graph.
#[derive(Debug, Clone)]
pub struct MatrixDecomposition {
    graph: Arc<Graph>,
    blocks: Vec<Block>,
    position: HashMap<Path, (usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub sink: String,
    pub size: usize,
    pub index: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub components: Vec<BlockReport>,
    pub sizes: Vec<usize>,
    pub basis_count: usize,
    pub bifurcation_free: bool,
}

fn path_label(g: &Graph, p: &Path) -> String {
    g.path_names(p).join("*")
}

/// Paths ending at each vertex, found by walking edges backwards.
fn paths_into(g: &Graph, sink: VertexId) -> Vec<Path> {
    let mut out = vec![Path::vertex(sink)];
    let mut frontier = vec![Path::vertex(sink)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in g.in_edges(p.source()) {
                let q = Path::edge(g, e).concat(p).expect("composable");
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort_by(|a, b| {
        a.source()
            .cmp(&b.source())
            .then(a.len().cmp(&b.len()))
            .then_with(|| a.edges().cmp(b.edges()))
    });
    out
}

pub fn matrix_decomposition(g: &Arc<Graph>) -> Result<MatrixDecomposition> {
    require_acyclic(g)?;
    let blocks: Vec<Block> = g
        .sinks()
        .into_iter()
        .map(|s| Block { sink: s, index: paths_into(g, s) })
        .collect();
    let mut position = HashMap::new();
    for (b, block) in blocks.iter().enumerate() {
        for (i, p) in block.index.iter().enumerate() {
            position.insert(p.clone(), (b, i));
        }
    }
    Ok(MatrixDecomposition { graph: g.clone(), blocks, position })
}

impl MatrixDecomposition {
    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::size).collect()
    }

    /// `dim L_K(E) = Σ n(s)²`.
    pub fn basis_count(&self) -> usize {
        self.blocks.iter().map(|b| b.size() * b.size()).sum()
    }

    pub fn report(&self) -> DecompositionReport {
        let g = &self.graph;
        DecompositionReport {
            components: self
                .blocks
                .iter()
                .map(|b| BlockReport {
                    sink: g.vertex_name(b.sink).to_string(),
                    size: b.size(),
                    index: b.index.iter().map(|p| path_label(g, p)).collect(),
                })
                .collect(),
            sizes: self.sizes(),
            basis_count: self.basis_count(),
            bifurcation_free: bifurcations(g).is_empty(),
        }
    }

    pub fn zero(&self, field: Field) -> BlockMatrix {
        BlockMatrix {
            blocks: self.blocks.iter().map(|b| Matrix::zeros(field, b.size(), b.size())).collect(),
        }
    }

    fn check_graph(&self, x: &Element) -> Result<()> {
        if **x.graph() == *self.graph {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    /// `φ(pq*) = Σ_t E_{pt, qt}` over the paths `t` from `r(p)` to a sink.
    pub fn to_matrix(&self, x: &Element) -> Result<BlockMatrix> {
        self.check_graph(x)?;
        let mut out = self.zero(x.field());
        let mut tails: HashMap<VertexId, Vec<Path>> = HashMap::new();
        for (m, c) in x.terms() {
            let u = m.real().range();
            let ts = tails.entry(u).or_insert_with(|| {
                self.blocks
                    .iter()
                    .flat_map(|b| b.index.iter().filter(|p| p.source() == u).cloned())
                    .collect()
            });
            for t in ts.iter() {
                let (b, j) = self.position[&m.real().concat(t).expect("composable")];
                let (_, k) = self.position[&m.ghost().concat(t).expect("composable")];
                let block = &mut out.blocks[b];
                let x = block.get(j, k) + c;
                block.set(j, k, x);
            }
        }
        Ok(out)
    }

    /// `Σ m_{jk} p_j p_k*`.
    pub fn from_matrix(&self, m: &BlockMatrix) -> Result<Element> {
        if m.blocks.len() != self.blocks.len()
            || m.blocks.iter().zip(&self.blocks).any(|(a, b)| a.rows() != b.size() || a.cols() != b.size())
        {
            return Err(Error::DimensionMismatch("block sizes differ from the decomposition".into()));
        }
        let field = m.field();
        let mut terms = Vec::new();
        for (mat, block) in m.blocks.iter().zip(&self.blocks) {
            for (j, k, c) in mat.nonzeros() {
                let p = &block.index[j];
                let q = &block.index[k];
                terms.push((Monomial::new(p.clone(), q.clone()).expect("both end at the sink"), c.clone()));
            }
        }
        Ok(Element::from_terms(&self.graph, field, terms))
    }
}

/// An element of `⊕ M_{nᵢ}(K)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BlockMatrix {
    blocks: Vec<Matrix>,
}

impl BlockMatrix {
    pub fn new(blocks: Vec<Matrix>) -> BlockMatrix {
        assert!(blocks.iter().all(Matrix::is_square), "blocks must be square");
        BlockMatrix { blocks }
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn field(&self) -> Field {
        self.blocks.first().map_or(Field::Rationals, Matrix::field)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    fn zip(&self, other: &BlockMatrix, f: impl Fn(&Matrix, &Matrix) -> Result<Matrix>) -> Result<BlockMatrix> {
        if self.blocks.len() != other.blocks.len() {
            return Err(Error::DimensionMismatch("different numbers of blocks".into()));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Ok(BlockMatrix { blocks })
    }

    pub fn checked_mul(&self, other: &BlockMatrix) -> Result<BlockMatrix> {
        self.zip(other, Matrix::checked_mul)
    }

    pub fn checked_add(&self, other: &BlockMatrix) -> Result<BlockMatrix> {
        self.zip(other, Matrix::checked_add)
    }

    pub fn scale(&self, c: &Scalar) -> BlockMatrix {
        BlockMatrix { blocks: self.blocks.iter().map(|m| m.scale(c)).collect() }
    }

    /// Blockwise group inverse; fails on the first block whose rank drops
    /// when squared.
    pub fn group_inverse(&self) -> Result<BlockMatrix> {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(block, m)| {
                m.group_inverse()
                    .map_err(|(rank, rank_of_square)| Error::NotGroupInvertible { block, rank, rank_of_square })
            })
            .collect::<Result<_>>()?;
        Ok(BlockMatrix { blocks })
    }

    /// Whether `a b a = a`, `b a b = b` and `a b = b a`.
    pub fn satisfies_group_inverse_axioms(&self, b: &BlockMatrix) -> bool {
        let a = self;
        let (Ok(ab), Ok(ba)) = (a.checked_mul(b), b.checked_mul(a)) else {
            return false;
        };
        ab == ba && ab.checked_mul(a).as_ref() == Ok(a) && ba.checked_mul(b).as_ref() == Ok(b)
    }
}

/// The group inverse of an element of `L_K(E)`, computed in matrix form.
pub fn element_group_inverse(x: &Element) -> Result<Element> {
    let d = matrix_decomposition(x.graph())?;
    let m = d.to_matrix(x)?;
    d.from_matrix(&m.group_inverse()?)
}

/// In a semisimple algebra `x` is square-cancellable exactly when it is
/// group invertible, i.e. `rank φ(x) = rank φ(x)²` in every block.
pub fn is_square_cancellable(x: &Element) -> Result<bool> {
    let d = matrix_decomposition(x.graph())?;
    Ok(d.to_matrix(x)?.group_inverse().is_ok())
}

/// Outcome of checking `q = a b♯` with `a, b` in a subalgebra `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FgVerdict {
    Witness,
    ANotMember,
    BNotMember,
    BNotSquareCancellable,
    Mismatch,
}

impl FgVerdict {
    pub fn holds(self) -> bool {
        self == FgVerdict::Witness
    }
}

/// Checks a Fountain-Gould witness `q = a b♯` with `a, b ∈ A` and `b`
/// square-cancellable. `A` is given by its membership predicate.
pub fn verify_fg_witness(
    a: &Element,
    b: &Element,
    q: &Element,
    membership: impl Fn(&Element) -> bool,
) -> Result<FgVerdict> {
    let d = matrix_decomposition(q.graph())?;
    let (ma, mb, mq) = (d.to_matrix(a)?, d.to_matrix(b)?, d.to_matrix(q)?);
    if !membership(a) {
        return Ok(FgVerdict::ANotMember);
    }
    if !membership(b) {
        return Ok(FgVerdict::BNotMember);
    }
    let Ok(bs) = mb.group_inverse() else {
        return Ok(FgVerdict::BNotSquareCancellable);
    };
    Ok(if ma.checked_mul(&bs)? == mq { FgVerdict::Witness } else { FgVerdict::Mismatch })
}

/// Bounds for [`search_fg_witness`]: `a` and `b` range over combinations of
/// at most `max_support` spanning elements with coefficients from `coefficients`.
#[derive(Debug, Clone)]
pub struct SearchBounds {
    pub coefficients: Vec<i64>,
    pub max_support: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { coefficients: vec![-1, 1, 2], max_support: 3 }
    }
}

fn combinations(span: &[Element], bounds: &SearchBounds, field: Field, zero: &Element) -> Vec<Element> {
    let mut out = vec![zero.clone()];
    // (element, support size, next index to use)
    let mut frontier: Vec<(Element, usize, usize)> = vec![(zero.clone(), 0, 0)];
    while let Some((x, size, start)) = frontier.pop() {
        if size == bounds.max_support {
            continue;
        }
        for (i, s) in span.iter().enumerate().skip(start) {
            for &c in &bounds.coefficients {
                if c == 0 {
                    continue;
                }
                let y = &x + &s.scale(&field.from_i64(c));
                out.push(y.clone());
                frontier.push((y, size + 1, i + 1));
            }
        }
    }
    out
}

/// Searches for `a, b` in the span of `span` with `q = a b♯`. Exhaustive
/// within the bounds; `NotFoundWithinBounds` otherwise.
pub fn search_fg_witness(q: &Element, span: &[Element], bounds: &SearchBounds) -> Result<(Element, Element)> {
    let d = matrix_decomposition(q.graph())?;
    let mq = d.to_matrix(q)?;
    let zero = Element::zero(q.graph(), q.field());
    let candidates = combinations(span, bounds, q.field(), &zero);
    let mats: Vec<BlockMatrix> = candidates.iter().map(|x| d.to_matrix(x)).collect::<Result<_>>()?;
    for (b, mb) in candidates.iter().zip(&mats) {
        let Ok(bs) = mb.group_inverse() else { continue };
        for (a, ma) in candidates.iter().zip(&mats) {
            if ma.checked_mul(&bs)? == mq {
                return Ok((a.clone(), b.clone()));
            }
        }
    }
    Err(Error::NotFoundWithinBounds)
}
