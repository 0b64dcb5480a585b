//! The algebraic Toeplitz algebra `T = L_K(E)` of the graph with a loop `e`
//! at `v` and an edge `f: v → w`, and the family `E(n, F)` sharing its
//! structure.
//!
//! `T` sits in `0 → Soc(T) → T → K[x, x⁻¹] → 0`, and acts faithfully on the
//! left ideal `T·w`, whose basis is the paths into the sink:
//! `b₀ = w`, `b_{k+1} = eᵏf`. Left multiplication on this basis gives
//! row-and-column-finite matrices, with the socle landing in the finitely
//! supported ones. Matrices are computed on a finite window `b₀ … b_{N-1}`.

use std::sync::Arc;

use serde::Serialize;

use crate::analysis::{cycles, is_acyclic, line_points, tree_of_set};
use crate::element::{basis_monomials_up_to, Element, Monomial};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId, VertexSet};
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::quotients::{in_socle, QuotientMorphism};
use crate::scalar::Field;

/// Vertices `v, w`; loop `e` at `v`; edge `f: v → w`.
pub fn toeplitz_graph() -> Graph {
    crate::builders::toeplitz()
}

fn connector_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["f".to_string()]
    } else {
        (1..=n).map(|i| format!("f{i}")).collect()
    }
}

fn connects_to_line_point_within(f: &Graph) -> bool {
    let lp = line_points(f);
    f.vertices().all(|u| tree_of_set(f, [u]).iter().any(|x| lp.contains(x)))
}

/// `E(n, F)`: a new vertex `v` with a loop `e` and connectors `e₁ … eₙ`
/// into `F`, `r(eᵢ) = attach[i]`. Connectors are named `f` when `n = 1`
/// and `f1 … fn` otherwise; vertices are `v` then those of `F`, edges are
/// `e`, the connectors, then those of `F`.
pub fn build_toeplitz_family<S: AsRef<str>>(n: usize, f: &Graph, attach: &[S]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if attach.len() != n {
        return Err(Error::Precondition(format!("{n} attachment vertices expected, got {}", attach.len())));
    }
    if !is_acyclic(f) {
        return Err(Error::HasCycle);
    }
    if !connects_to_line_point_within(f) {
        return Err(Error::Precondition("every vertex of F must connect to a line point of F".into()));
    }
    let connectors = connector_names(n);
    for name in ["v", "e"].into_iter().chain(connectors.iter().map(String::as_str)) {
        if f.generator(name).is_ok() {
            return Err(Error::NameCollision(name.to_string()));
        }
    }
    let mut b = Graph::builder(format!("E{n}_{}", f.name()));
    b.vertex("v")?;
    for u in f.vertices() {
        b.vertex(f.vertex_name(u))?;
    }
    b.edge("e", "v", "v")?;
    for (name, target) in connectors.iter().zip(attach) {
        f.vertex_id(target.as_ref())?;
        b.edge(name, "v", target.as_ref())?;
    }
    for x in f.edges() {
        b.edge(f.edge_name(x), f.vertex_name(f.source(x)), f.vertex_name(f.range(x)))?;
    }
    Ok(b.finish())
}

/// A graph recognized as `E(n, F)`.
#[derive(Debug, Clone)]
pub struct ToeplitzDecomposition {
    pub loop_vertex: VertexId,
    pub loop_edge: EdgeId,
    pub connectors: Vec<EdgeId>,
    pub f_vertices: VertexSet,
    pub f_graph: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionSummary {
    pub loop_vertex: String,
    pub loop_edge: String,
    pub connectors: Vec<String>,
    pub f_vertices: Vec<String>,
    pub f_edges: Vec<String>,
}

impl ToeplitzDecomposition {
    pub fn summary(&self, g: &Graph) -> DecompositionSummary {
        DecompositionSummary {
            loop_vertex: g.vertex_name(self.loop_vertex).to_string(),
            loop_edge: g.edge_name(self.loop_edge).to_string(),
            connectors: self.connectors.iter().map(|&c| g.edge_name(c).to_string()).collect(),
            f_vertices: g.vertex_names(&self.f_vertices),
            f_edges: self.f_graph.edges().map(|x| self.f_graph.edge_name(x).to_string()).collect(),
        }
    }
}

/// Matches `g` against `E(n, F)`: the only cycle is a loop `e` at `v`, the
/// other edges at `v` leave it, no other edge touches `v`, and every
/// vertex of `F = E ∖ {v}` connects inside `F` to a line point of `F`.
pub fn recognize_toeplitz(g: &Graph) -> Option<ToeplitzDecomposition> {
    let cs = cycles(g);
    let [c] = cs.as_slice() else { return None };
    if c.path().len() != 1 {
        return None;
    }
    let loop_edge = c.path().edges()[0];
    let v = g.source(loop_edge);
    let connectors: Vec<EdgeId> = g.out_edges(v).iter().copied().filter(|&x| x != loop_edge).collect();
    if connectors.is_empty() || connectors.iter().any(|&x| g.range(x) == v) {
        return None;
    }
    if g.in_edges(v).iter().any(|&x| x != loop_edge) {
        return None;
    }
    let f_vertices: VertexSet = g.vertices().filter(|&u| u != v).collect();
    let f_graph = g.induced_subgraph(&format!("{}_F", g.name()), &f_vertices);
    if !connects_to_line_point_within(&f_graph) {
        return None;
    }
    Some(ToeplitzDecomposition { loop_vertex: v, loop_edge, connectors, f_vertices, f_graph })
}

/// `L_K(E) → L_K(E/F⁰) ≅ K[x, x⁻¹]`, `e ↦ x`, `e* ↦ x⁻¹`, `v ↦ 1`.
#[derive(Debug, Clone)]
pub struct LaurentQuotient {
    pi: QuotientMorphism,
}

impl LaurentQuotient {
    pub fn new(g: &Arc<Graph>) -> Result<LaurentQuotient> {
        let d = recognize_toeplitz(g).ok_or(Error::NotToeplitzFamily)?;
        Ok(LaurentQuotient { pi: QuotientMorphism::new(g, &d.f_vertices)? })
    }

    pub fn apply(&self, x: &Element) -> Result<LaurentPoly> {
        let y = self.pi.apply(x)?;
        let mut out = LaurentPoly::zero(x.field());
        // E/F⁰ is a single loop, so every basis monomial is eᵃ(eᵇ)*.
        for (m, c) in y.terms() {
            out.add_term(m.degree(), c);
        }
        Ok(out)
    }
}

pub fn laurent_quotient(x: &Element) -> Result<LaurentPoly> {
    LaurentQuotient::new(x.graph())?.apply(x)
}

/// Exactness of `0 → Soc → L_K(E) → K[x, x⁻¹] → 0` on basis monomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub degree: usize,
    pub monomials_checked: usize,
    pub socle_monomials: usize,
    /// `in_socle(b) ⇔ quotient(b) = 0` on every checked monomial.
    pub kernel_is_socle: bool,
    /// Every `x^k`, `|k| ≤ degree`, is the image of a checked monomial.
    pub surjective: bool,
    pub preimages: Vec<(i64, String)>,
    pub counterexamples: Vec<String>,
    pub pass: bool,
}

pub fn exact_sequence_report(g: &Arc<Graph>, degree: usize) -> Result<ExactSequenceReport> {
    let lq = LaurentQuotient::new(g)?;
    let field = Field::Rationals;
    let basis = basis_monomials_up_to(g, degree);
    let mut counterexamples = Vec::new();
    let mut socle_monomials = 0;
    let mut preimages: Vec<(i64, String)> = Vec::new();
    for m in &basis {
        let x = Element::monomial(g, field, m.clone());
        let image = lq.apply(&x)?;
        let soc = in_socle(&x);
        socle_monomials += usize::from(soc);
        if soc != image.is_zero() {
            counterexamples.push(format!("{x}: in socle {soc}, image {image}"));
        }
        let k = m.degree();
        if k.unsigned_abs() as usize <= degree
            && image.is_monomial(k)
            && !preimages.iter().any(|(j, _)| *j == k)
        {
            preimages.push((k, x.to_string()));
        }
    }
    preimages.sort();
    let d = degree as i64;
    let surjective = (-d..=d).all(|k| preimages.iter().any(|(j, _)| *j == k));
    let kernel_is_socle = counterexamples.is_empty();
    Ok(ExactSequenceReport {
        degree,
        monomials_checked: basis.len(),
        socle_monomials,
        kernel_is_socle,
        surjective,
        preimages,
        counterexamples,
        pass: kernel_is_socle && surjective,
    })
}

/// The action of an element on `b₀ … b_{N-1}`. Entry `(i, j)` is the
/// coefficient of `bᵢ` in `x·bⱼ` and is exact for every `i, j < N`;
/// products of windows agree with windows of products on
/// `i, j < validity_bound = N − total degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixWindow {
    pub size: usize,
    pub validity_bound: usize,
    pub matrix: Matrix,
    /// The last row and column are zero. Socle elements of degree `d` have
    /// this once `N ≥ d + 2`; anything with an infinite diagonal tail
    /// reaches the border of every window.
    pub finitely_supported: bool,
    /// No row holds more nonzeros than `x` has monomials.
    pub row_finite_on_window: bool,
    pub col_finite_on_window: bool,
}

impl MatrixWindow {
    /// Largest `|i − j|` over the nonzero entries.
    pub fn bandwidth(&self) -> usize {
        self.matrix.nonzeros().map(|(i, j, _)| i.abs_diff(j)).max().unwrap_or(0)
    }
}

fn require_canonical(g: &Graph) -> Result<()> {
    if g.structurally_eq(&toeplitz_graph()) {
        Ok(())
    } else {
        Err(Error::NotToeplitzFamily)
    }
}

/// `bⱼ` as a path: `w` for `j = 0`, `e^{j-1} f` otherwise.
fn basis_path(g: &Graph, j: usize) -> Path {
    let w = g.vertex_id("w").expect("canonical graph");
    if j == 0 {
        return Path::vertex(w);
    }
    let e = g.edge_id("e").expect("canonical graph");
    let f = g.edge_id("f").expect("canonical graph");
    let mut edges = vec![e; j - 1];
    edges.push(f);
    Path::from_edges(g, &edges).expect("eᵏf composes")
}

/// Index of a path into `w`: `w ↦ 0`, `eᵏf ↦ k + 1`.
fn basis_index(p: &Path) -> usize {
    if p.is_trivial() {
        0
    } else {
        p.len()
    }
}

/// `bⱼ` as an element.
pub fn toeplitz_basis_element(g: &Arc<Graph>, field: Field, j: usize) -> Element {
    Element::path(g, field, &basis_path(g, j))
}

fn window_flags(x: &Element, size: usize, matrix: Matrix) -> MatrixWindow {
    let validity_bound = size.saturating_sub(x.total_degree());
    let limit = x.support_len();
    let mut rows = vec![0usize; size];
    let mut cols = vec![0usize; size];
    let mut finitely_supported = true;
    for (i, j, _) in matrix.nonzeros() {
        rows[i] += 1;
        cols[j] += 1;
        if i + 1 >= size || j + 1 >= size {
            finitely_supported = false;
        }
    }
    MatrixWindow {
        size,
        validity_bound,
        finitely_supported,
        row_finite_on_window: rows.iter().all(|&c| c <= limit),
        col_finite_on_window: cols.iter().all(|&c| c <= limit),
        matrix,
    }
}

/// The window without the `N > total degree` precondition. Entries are
/// still exact; only the validity bound degenerates.
pub(crate) fn window_unchecked(x: &Element, size: usize) -> MatrixWindow {
    let g = x.graph();
    let mut m = Matrix::zeros(x.field(), size, size);
    for j in 0..size {
        let y = x * &toeplitz_basis_element(g, x.field(), j);
        for (mono, c) in y.terms() {
            debug_assert!(mono.ghost().is_trivial(), "T·w is spanned by paths into w");
            let i = basis_index(mono.real());
            if i < size {
                m.set(i, j, c.clone());
            }
        }
    }
    window_flags(x, size, m)
}

/// Left multiplication by `x` on `b₀ … b_{N-1}`, computed in the algebra.
pub fn rcfm_representation(x: &Element, size: usize) -> Result<MatrixWindow> {
    require_canonical(x.graph())?;
    let degree = x.total_degree();
    if size <= degree {
        return Err(Error::WindowTooSmall { window: size, degree });
    }
    Ok(window_unchecked(x, size))
}

/// The window of a single generator, from the explicit action table:
/// `w·b₀ = b₀`; `v` fixes `bₖ` for `k ≥ 1`; `f·b₀ = b₁`; `f*·b₁ = b₀`;
/// `e·bₖ = bₖ₊₁` and `e*·bₖ₊₁ = bₖ` for `k ≥ 1`; every other action is zero.
pub fn generator_window(field: Field, generator: &str, size: usize) -> Result<Matrix> {
    let mut m = Matrix::zeros(field, size, size);
    let mut put = |i: usize, j: usize| {
        if i < size && j < size {
            m.set(i, j, field.one());
        }
    };
    match generator {
        "w" => put(0, 0),
        "v" => (1..size).for_each(|k| put(k, k)),
        "f" => put(1, 0),
        "f'" => put(0, 1),
        "e" => (1..size).for_each(|k| put(k + 1, k)),
        "e'" => (2..size).for_each(|k| put(k - 1, k)),
        other => return Err(Error::UnknownIdentifier(other.to_string())),
    }
    Ok(m)
}

/// The window of `x` assembled from generator windows, letter by letter.
/// Agrees with [`rcfm_representation`] on `i, j < N − total degree`.
pub fn window_from_generators(x: &Element, size: usize) -> Result<Matrix> {
    require_canonical(x.graph())?;
    let g = x.graph();
    let field = x.field();
    let mut acc = Matrix::zeros(field, size, size);
    for (m, c) in x.terms() {
        let mut letters: Vec<String> = Vec::new();
        if m.real().is_trivial() && m.ghost().is_trivial() {
            letters.push(g.vertex_name(m.source()).to_string());
        }
        letters.extend(m.real().edges().iter().map(|&e| g.edge_name(e).to_string()));
        letters.extend(m.ghost().edges().iter().rev().map(|&e| format!("{}'", g.edge_name(e))));
        let mut w = Matrix::identity(field, size);
        for l in &letters {
            w = &w * &generator_window(field, l, size)?;
        }
        acc = &acc + &w.scale(c);
    }
    Ok(acc)
}

/// The sandwich `M_∞(K) ⊆ T ⊆ RCFM(K)` checked on windows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    pub degree: usize,
    pub window: usize,
    pub monomials_checked: usize,
    pub socle_monomials: usize,
    /// (a) socle monomials give finitely supported windows.
    pub socle_finitely_supported: bool,
    /// (b) every monomial gives row- and column-finite windows.
    pub row_col_finite: bool,
    /// (c) every `E_{jk}`, `j, k ≤ N − 2`, is the window of `bⱼbₖ*`.
    pub matrix_units_checked: usize,
    pub matrix_units_realized: bool,
    /// Window of a product equals the product of windows, generator pairs,
    /// inside the validity bound.
    pub generator_pairs_multiplicative: bool,
    /// Windows of the checked monomials are linearly independent.
    pub faithful: bool,
    pub failures: Vec<String>,
    pub pass: bool,
}

const GENERATORS: [&str; 6] = ["v", "w", "e", "f", "e'", "f'"];

/// Whether two windows agree on `i, j < bound`.
pub fn agree_within(a: &Matrix, b: &Matrix, bound: usize) -> bool {
    (0..bound).all(|i| (0..bound).all(|j| a.get(i, j) == b.get(i, j)))
}

/// Whether the flattened windows are linearly independent.
pub fn windows_independent(windows: &[Matrix]) -> bool {
    let Some(first) = windows.first() else { return true };
    let n = first.rows() * first.cols();
    let stacked = Matrix::from_fn(first.field(), windows.len(), n, |r, k| {
        windows[r].get(k / first.cols(), k % first.cols()).clone()
    });
    stacked.rank() == windows.len()
}

pub fn sandwich_report(degree: usize, window: usize) -> Result<SandwichReport> {
    if window <= degree + 1 {
        return Err(Error::WindowTooSmall { window, degree });
    }
    let g = Arc::new(toeplitz_graph());
    let field = Field::Rationals;
    let mut failures = Vec::new();

    let basis = basis_monomials_up_to(&g, degree);
    let mut socle_monomials = 0;
    let mut socle_ok = true;
    let mut finite_ok = true;
    let mut windows = Vec::new();
    for m in &basis {
        let x = Element::monomial(&g, field, m.clone());
        let w = rcfm_representation(&x, window)?;
        if in_socle(&x) {
            socle_monomials += 1;
            if !w.finitely_supported {
                socle_ok = false;
                failures.push(format!("socle monomial {x} not finitely supported"));
            }
        }
        if !(w.row_finite_on_window && w.col_finite_on_window) {
            finite_ok = false;
            failures.push(format!("{x} not row/column finite"));
        }
        windows.push(w.matrix);
    }

    let mut units_ok = true;
    let mut units_checked = 0;
    for j in 0..=window - 2 {
        for k in 0..=window - 2 {
            let bj = toeplitz_basis_element(&g, field, j);
            let bk = toeplitz_basis_element(&g, field, k);
            let x = &bj * &bk.involution();
            units_checked += 1;
            if !in_socle(&x) || window_unchecked(&x, window).matrix != Matrix::unit(field, window, j, k) {
                units_ok = false;
                failures.push(format!("E_{j}{k} is not the window of b{j}b{k}*"));
            }
        }
    }

    let mut mult_ok = true;
    for a in GENERATORS {
        for b in GENERATORS {
            let x = crate::expr::parse_element(&g, a)?;
            let y = crate::expr::parse_element(&g, b)?;
            let xy = &x * &y;
            let bound = window - x.total_degree() - y.total_degree();
            let lhs = rcfm_representation(&xy, window)?.matrix;
            let rhs = &rcfm_representation(&x, window)?.matrix * &rcfm_representation(&y, window)?.matrix;
            if !agree_within(&lhs, &rhs, bound) {
                mult_ok = false;
                failures.push(format!("window({a}*{b}) differs from window({a})*window({b})"));
            }
        }
    }

    let faithful = windows_independent(&windows);
    if !faithful {
        failures.push("monomial windows are linearly dependent".into());
    }
    Ok(SandwichReport {
        degree,
        window,
        monomials_checked: basis.len(),
        socle_monomials,
        socle_finitely_supported: socle_ok,
        row_col_finite: finite_ok,
        matrix_units_checked: units_checked,
        matrix_units_realized: units_ok,
        generator_pairs_multiplicative: mult_ok,
        faithful,
        pass: socle_ok && finite_ok && units_ok && mult_ok && faithful,
        failures,
    })
}

/// Everything `toeplitz-check` reports about a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToeplitzCheck {
    pub recognized: bool,
    pub decomposition: Option<DecompositionSummary>,
    pub exact_sequence: Option<ExactSequenceReport>,
    /// Only for the canonical graph, where the window basis is defined.
    pub sandwich: Option<SandwichReport>,
}

pub fn toeplitz_check(g: &Arc<Graph>, degree: usize, window: usize) -> Result<ToeplitzCheck> {
    let Some(d) = recognize_toeplitz(g) else {
        return Ok(ToeplitzCheck { recognized: false, decomposition: None, exact_sequence: None, sandwich: None });
    };
    let sandwich = if g.structurally_eq(&toeplitz_graph()) {
        Some(sandwich_report(degree, window)?)
    } else {
        None
    };
    Ok(ToeplitzCheck {
        recognized: true,
        decomposition: Some(d.summary(g)),
        exact_sequence: Some(exact_sequence_report(g, degree)?),
        sandwich,
    })
}

/// Monomials `eᵏ(eᵏ)*` etc. are handy in tests; this builds `eᵃ (eᵇ)*`
/// on the canonical graph.
pub fn loop_monomial(g: &Graph, a: usize, b: usize) -> Monomial {
    let e = g.edge_id("e").expect("canonical graph");
    let v = g.vertex_id("v").expect("canonical graph");
    let path = |k: usize| if k == 0 { Path::vertex(v) } else { Path::from_edges(g, &vec![e; k]).expect("loop") };
    Monomial::new(path(a), path(b)).expect("both end at v")
}
