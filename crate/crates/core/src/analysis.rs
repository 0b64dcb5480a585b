//! Graph-theoretic analyzers: trees, line points, cycles, hereditary and
//! saturated sets, and the structural criteria built on them.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{Cycle, Graph, Path, VertexId, VertexSet};

/// `T(v)`: every vertex reachable from `v`, including `v`.
pub fn tree(g: &Graph, v: VertexId) -> Result<VertexSet> {
    g.check_vertex(v)?;
    Ok(tree_of_set(g, std::iter::once(v)))
}

/// `T(X) = ⋃ T(x)`.
pub fn tree_of_set(g: &Graph, roots: impl IntoIterator<Item = VertexId>) -> VertexSet {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    for r in roots {
        if !seen[r.0] {
            seen[r.0] = true;
            queue.push_back(r);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &e in g.out_edges(u) {
            let w = g.range(e);
            if !seen[w.0] {
                seen[w.0] = true;
                queue.push_back(w);
            }
        }
    }
    g.vertices().filter(|v| seen[v.0]).collect()
}

/// `u ≥ w`: there is a path from `u` to `w`.
pub fn connects_to(g: &Graph, u: VertexId, w: VertexId) -> Result<bool> {
    g.check_vertex(w)?;
    Ok(tree(g, u)?.contains(w))
}

pub fn bifurcations(g: &Graph) -> VertexSet {
    g.vertices().filter(|&v| g.out_degree(v) >= 2).collect()
}

/// Strongly connected components (Tarjan). Returns the component index of
/// every vertex; components are numbered in reverse topological order.
pub fn strongly_connected_components(g: &Graph) -> Vec<usize> {
    struct State {
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        next_index: usize,
        next_comp: usize,
    }
    let n = g.vertex_count();
    let mut st = State {
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        comp: vec![usize::MAX; n],
        next_index: 0,
        next_comp: 0,
    };
    // Iterative DFS: frames hold (vertex, position in its out-edge list).
    for root in 0..n {
        if st.index[root].is_some() {
            continue;
        }
        let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
        st.index[root] = Some(st.next_index);
        st.low[root] = st.next_index;
        st.next_index += 1;
        st.stack.push(root);
        st.on_stack[root] = true;
        while let Some(&mut (u, ref mut pos)) = frames.last_mut() {
            let outs = g.out_edges(VertexId(u));
            if *pos < outs.len() {
                let w = g.range(outs[*pos]).0;
                *pos += 1;
                match st.index[w] {
                    None => {
                        st.index[w] = Some(st.next_index);
                        st.low[w] = st.next_index;
                        st.next_index += 1;
                        st.stack.push(w);
                        st.on_stack[w] = true;
                        frames.push((w, 0));
                    }
                    Some(iw) if st.on_stack[w] => st.low[u] = st.low[u].min(iw),
                    _ => {}
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    st.low[parent] = st.low[parent].min(st.low[u]);
                }
                if Some(st.low[u]) == st.index[u] {
                    loop {
                        let w = st.stack.pop().expect("tarjan stack");
                        st.on_stack[w] = false;
                        st.comp[w] = st.next_comp;
                        if w == u {
                            break;
                        }
                    }
                    st.next_comp += 1;
                }
            }
        }
    }
    st.comp
}

/// Vertices lying on some cycle: members of a nontrivial strongly connected
/// component, or carriers of a loop.
pub fn vertices_on_cycles(g: &Graph) -> VertexSet {
    let comp = strongly_connected_components(g);
    let mut size = vec![0usize; g.vertex_count()];
    for &c in &comp {
        size[c] += 1;
    }
    g.vertices()
        .filter(|&v| {
            size[comp[v.0]] > 1 || g.out_edges(v).iter().any(|&e| g.range(e) == v)
        })
        .collect()
}

pub fn is_acyclic(g: &Graph) -> bool {
    vertices_on_cycles(g).is_empty()
}

/// `P_l(E)`: vertices whose tree contains neither bifurcations nor vertices on cycles.
pub fn line_points(g: &Graph) -> VertexSet {
    let bad = vertices_on_cycles(g);
    g.vertices()
        .filter(|&u| {
            tree_of_set(g, [u])
                .iter()
                .all(|w| g.out_degree(w) <= 1 && !bad.contains(w))
        })
        .collect()
}

/// All cycles, one per rotation class. Each is rotated to start at its
/// least vertex in declaration order; the list is sorted.
pub fn cycles(g: &Graph) -> Vec<Cycle> {
    fn extend(g: &Graph, start: VertexId, path: &Path, visited: &mut Vec<bool>, out: &mut Vec<Cycle>) {
        for &e in g.out_edges(path.range()) {
            let w = g.range(e);
            if w < start {
                continue;
            }
            let next = path.extended(g, e).expect("composable");
            if w == start {
                out.push(Cycle::new(g, next).expect("simple closed path"));
            } else if !visited[w.0] {
                visited[w.0] = true;
                extend(g, start, &next, visited, out);
                visited[w.0] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut visited = vec![false; g.vertex_count()];
    for start in g.vertices() {
        visited[start.0] = true;
        extend(g, start, &Path::vertex(start), &mut visited, &mut out);
        visited[start.0] = false;
    }
    out.sort();
    out
}

/// An exit of `c` is an edge `e` with `s(e) = s(eᵢ)` and `e ≠ eᵢ` for some `i`.
pub fn cycle_has_exit(g: &Graph, c: &Cycle) -> bool {
    c.path()
        .edges()
        .iter()
        .any(|&ci| g.out_edges(g.source(ci)).iter().any(|&e| e != ci))
}

pub fn is_hereditary(g: &Graph, x: &VertexSet) -> bool {
    x.iter()
        .all(|v| g.out_edges(v).iter().all(|&e| x.contains(g.range(e))))
}

/// `s⁻¹(v) ≠ ∅` and `r(s⁻¹(v)) ⊆ X` imply `v ∈ X`.
pub fn is_saturated(g: &Graph, x: &VertexSet) -> bool {
    g.vertices().all(|v| {
        x.contains(v)
            || g.is_sink(v)
            || !g.out_edges(v).iter().all(|&e| x.contains(g.range(e)))
    })
}

/// The least hereditary saturated superset of `x`, computed as the fixpoint
/// of `Λ₀(X) = T(X)`, `Λₙ(X) = Λₙ₋₁(X) ∪ {y : s⁻¹(y) ≠ ∅, r(s⁻¹(y)) ⊆ Λₙ₋₁(X)}`.
pub fn hereditary_saturated_closure(g: &Graph, x: &VertexSet) -> VertexSet {
    let mut current = tree_of_set(g, x.iter());
    loop {
        let added: Vec<VertexId> = g
            .vertices()
            .filter(|&y| {
                !current.contains(y)
                    && !g.is_sink(y)
                    && g.out_edges(y).iter().all(|&e| current.contains(g.range(e)))
            })
            .collect();
        if added.is_empty() {
            return current;
        }
        for y in added {
            current.insert(y);
        }
    }
}

/// Whether the path algebra `KE` is semiprime: every path admits a return
/// path. Decided edge by edge, since return paths for edges compose into
/// return paths for longer paths: every edge must stay inside one strongly
/// connected component.
pub fn is_path_algebra_semiprime(g: &Graph) -> bool {
    let comp = strongly_connected_components(g);
    g.edges().all(|e| comp[g.source(e).0] == comp[g.range(e).0])
}

/// Whether every vertex connects to a line point.
pub fn socle_is_essential(g: &Graph) -> bool {
    let lp = line_points(g);
    g.vertices().all(|v| tree_of_set(g, [v]).iter().any(|w| lp.contains(w)))
}

/// Vertex classes of the underlying undirected graph, ordered by their
/// first vertex.
pub fn component_vertex_sets(g: &Graph) -> Vec<VertexSet> {
    let mut label = vec![usize::MAX; g.vertex_count()];
    let mut parts = Vec::new();
    for root in g.vertices() {
        if label[root.0] != usize::MAX {
            continue;
        }
        let id = parts.len();
        let mut part = VertexSet::new();
        let mut queue = VecDeque::from([root]);
        label[root.0] = id;
        while let Some(u) = queue.pop_front() {
            part.insert(u);
            let nbrs = g
                .out_edges(u)
                .iter()
                .map(|&e| g.range(e))
                .chain(g.in_edges(u).iter().map(|&e| g.source(e)));
            for w in nbrs {
                if label[w.0] == usize::MAX {
                    label[w.0] = id;
                    queue.push_back(w);
                }
            }
        }
        parts.push(part);
    }
    parts
}

/// Connected components as induced subgraphs named `<graph>_<i>`.
pub fn connected_components(g: &Graph) -> Vec<Graph> {
    component_vertex_sets(g)
        .iter()
        .enumerate()
        .map(|(i, part)| g.induced_subgraph(&format!("{}_{}", g.name(), i), part))
        .collect()
}

pub fn is_acyclic_no_bifurcation(g: &Graph) -> bool {
    bifurcations(g).is_empty() && is_acyclic(g)
}

/// The structural report emitted by the `analyze` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub semiprime_path_algebra: bool,
    pub line_points: Vec<String>,
    pub socle_essential: bool,
    pub cycles: Vec<Vec<String>>,
    pub bifurcations: Vec<String>,
    pub components: Vec<Vec<String>>,
}

pub fn analyze(g: &Graph) -> AnalysisReport {
    AnalysisReport {
        semiprime_path_algebra: is_path_algebra_semiprime(g),
        line_points: g.vertex_names(&line_points(g)),
        socle_essential: socle_is_essential(g),
        cycles: cycles(g).iter().map(|c| g.path_names(c.path())).collect(),
        bifurcations: g.vertex_names(&bifurcations(g)),
        components: component_vertex_sets(g).iter().map(|p| g.vertex_names(p)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    fn names(g: &Graph, s: &VertexSet) -> Vec<String> {
        g.vertex_names(s)
    }

    #[test]
    fn trees_and_reachability() {
        let t = builders::toeplitz();
        let v = t.vertex_id("v").unwrap();
        let w = t.vertex_id("w").unwrap();
        assert_eq!(names(&t, &tree(&t, v).unwrap()), ["v", "w"]);
        assert_eq!(names(&t, &tree(&t, w).unwrap()), ["w"]);
        let a2 = builders::a2();
        let u = a2.vertex_id("u").unwrap();
        let w2 = a2.vertex_id("w").unwrap();
        assert_eq!(names(&a2, &tree(&a2, u).unwrap()), ["u", "w"]);
        assert!(connects_to(&a2, u, w2).unwrap());
        assert!(!connects_to(&a2, w2, u).unwrap());
        assert!(connects_to(&a2, w2, w2).unwrap());
        assert!(tree(&a2, VertexId(7)).is_err());
    }

    #[test]
    fn line_points_examples() {
        let t = builders::toeplitz();
        assert_eq!(names(&t, &line_points(&t)), ["w"]);
        let ladder = builders::ladder(4);
        assert_eq!(names(&ladder, &line_points(&ladder)), ["v1", "v2", "v3", "v4"]);
        assert!(line_points(&builders::r1()).is_empty());
    }

    #[test]
    fn bifurcation_examples() {
        let t = builders::toeplitz();
        assert_eq!(names(&t, &bifurcations(&t)), ["v"]);
        assert!(bifurcations(&builders::a2()).is_empty());
        assert!(bifurcations(&builders::p1()).is_empty());
    }

    #[test]
    fn cycle_examples() {
        let t = builders::toeplitz();
        let cs = cycles(&t);
        assert_eq!(cs.len(), 1);
        assert_eq!(t.path_names(cs[0].path()), ["e"]);
        assert!(cycle_has_exit(&t, &cs[0]));
        let r1 = builders::r1();
        let cs = cycles(&r1);
        assert_eq!(cs.len(), 1);
        assert!(!cycle_has_exit(&r1, &cs[0]));
        assert!(cycles(&builders::a2()).is_empty());
    }

    #[test]
    fn cycles_are_canonically_rotated() {
        let g = Graph::from_parts(
            "C",
            &["a", "b", "c"],
            &[("x", "b", "c"), ("y", "c", "a"), ("z", "a", "b"), ("w", "a", "c")],
        )
        .unwrap();
        let cs: Vec<Vec<String>> = cycles(&g).iter().map(|c| g.path_names(c.path())).collect();
        assert_eq!(cs, vec![vec!["w", "y"], vec!["z", "x", "y"]]);
    }

    #[test]
    fn hereditary_and_saturated_examples() {
        let t = builders::toeplitz();
        let w = t.vertex_set(&["w"]).unwrap();
        assert!(is_hereditary(&t, &w));
        assert!(is_saturated(&t, &w));
        assert!(!is_hereditary(&t, &t.vertex_set(&["v"]).unwrap()));
        let all = t.all_vertices();
        assert!(is_hereditary(&t, &all) && is_saturated(&t, &all));
    }

    #[test]
    fn closure_examples() {
        let t = builders::toeplitz();
        let w = t.vertex_set(&["w"]).unwrap();
        assert_eq!(hereditary_saturated_closure(&t, &w), w);
        assert!(hereditary_saturated_closure(&t, &VertexSet::new()).is_empty());
        let ladder = builders::ladder(3);
        let vs = ladder.vertex_set(&["v1", "v2", "v3"]).unwrap();
        assert_eq!(hereditary_saturated_closure(&ladder, &vs), vs);
        // Saturation climbs a line from its sink.
        let line = builders::oriented_line(3);
        let sink = line.vertex_set(&["v3"]).unwrap();
        assert_eq!(hereditary_saturated_closure(&line, &sink), line.all_vertices());
    }

    #[test]
    fn semiprime_examples() {
        assert!(!is_path_algebra_semiprime(&builders::a2()));
        assert!(is_path_algebra_semiprime(&builders::r1()));
        assert!(!is_path_algebra_semiprime(&builders::toeplitz()));
        assert!(is_path_algebra_semiprime(&builders::p1()));
    }

    #[test]
    fn essential_socle_examples() {
        assert!(socle_is_essential(&builders::toeplitz()));
        assert!(socle_is_essential(&builders::ladder(5)));
        assert!(!socle_is_essential(&builders::r1()));
    }

    #[test]
    fn component_examples() {
        assert_eq!(connected_components(&builders::two_a2()).len(), 2);
        assert_eq!(connected_components(&builders::toeplitz()).len(), 1);
        let comb = builders::comb(4);
        let parts = connected_components(&comb);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].edge_count(), comb.edge_count());
    }

    #[test]
    fn acyclic_no_bifurcation_examples() {
        assert!(is_acyclic_no_bifurcation(&builders::a2()));
        assert!(!is_acyclic_no_bifurcation(&builders::toeplitz()));
        assert!(is_acyclic_no_bifurcation(&builders::oriented_line(3)));
    }

    #[test]
    fn scc_numbering() {
        let g = Graph::from_parts(
            "S",
            &["a", "b", "c", "d"],
            &[("x", "a", "b"), ("y", "b", "a"), ("z", "b", "c"), ("t", "c", "d"), ("s", "d", "c")],
        )
        .unwrap();
        let comp = strongly_connected_components(&g);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[2], comp[3]);
        assert_ne!(comp[0], comp[2]);
        assert_eq!(vertices_on_cycles(&g).len(), 4);
    }
}
