//! Named graphs and truncation builders.
//!
//! Infinite graphs are represented by finite truncations. Each builder
//! documents which properties of the infinite graph its truncation keeps.

use crate::dsl::parse_graph;
use crate::graph::Graph;

macro_rules! corpus_graph {
    ($($(#[$doc:meta])* $name:ident => $file:literal;)*) => {
        $(
            $(#[$doc])*
            pub fn $name() -> Graph {
                parse_graph(include_str!(concat!("../corpus/", $file))).expect("corpus graph parses")
            }
        )*

        /// Every graph shipped in `corpus/`, in a fixed order.
        pub fn corpus() -> Vec<Graph> {
            vec![$($name()),*]
        }
    };
}

corpus_graph! {
    /// Loop `e` at `v` and an edge `f: v → w`; its Leavitt path algebra is the Toeplitz algebra.
    toeplitz => "toeplitz.graph";
    /// A single edge `f: u → w`.
    a2 => "a2.graph";
    /// One isolated vertex.
    p1 => "p1.graph";
    /// A single loop, a cycle without exits.
    r1 => "r1.graph";
    /// Two loops at one vertex.
    r2 => "r2.graph";
    line3 => "line3.graph";
    two_a2 => "two_a2.graph";
    diamond => "diamond.graph";
    fork => "fork.graph";
    cycle2 => "cycle2.graph";
    e2_a2 => "e2a2.graph";
    cycle_exit => "cycle_exit.graph";
}

/// The oriented line `v1 → v2 → … → vn` with edges `a1, …, a(n-1)`.
pub fn oriented_line(n: usize) -> Graph {
    assert!(n >= 1);
    let mut b = Graph::builder(format!("L{n}"));
    for i in 1..=n {
        b.vertex(&format!("v{i}")).unwrap();
    }
    for i in 1..n {
        b.edge(&format!("a{i}"), &format!("v{i}"), &format!("v{}", i + 1)).unwrap();
    }
    b.finish()
}

/// Truncation of the ladder `u₁ → u₂ → …` with rungs `eₙ: uₙ → vₙ` and rails
/// `fₙ: uₙ → uₙ₊₁`, keeping `k` columns.
///
/// The rail leaving the last column is replaced by a loop `f_k: u_k → u_k`,
/// which stands in for the infinite tail: every `uₙ` still has a bifurcation
/// and a cycle in its tree, so the line points stay `{v₁, …, v_k}`, every
/// vertex still connects to a line point, and `{v₁, …, v_k}` stays
/// hereditary and saturated. Anything depending on the tail being acyclic
/// (e.g. paths into `v_k` through `u_k`) is an artifact of the cap.
pub fn ladder(k: usize) -> Graph {
    assert!(k >= 1);
    let mut b = Graph::builder(format!("Ladder{k}"));
    for i in 1..=k {
        b.vertex(&format!("v{i}")).unwrap();
    }
    for i in 1..=k {
        b.vertex(&format!("u{i}")).unwrap();
    }
    for i in 1..=k {
        b.edge(&format!("e{i}"), &format!("u{i}"), &format!("v{i}")).unwrap();
    }
    for i in 1..=k {
        let next = if i < k { i + 1 } else { k };
        b.edge(&format!("f{i}"), &format!("u{i}"), &format!("u{next}")).unwrap();
    }
    b.finish()
}

/// Truncation of the restriction graph of the Toeplitz graph at its sink:
/// a sink `w` with `k` tooth vertices `p0, …, p(k-1)`, each sending one edge
/// `bi` into `w`. The infinite comb has countably many teeth; every finite
/// truncation is connected, acyclic and bifurcation-free.
pub fn comb(k: usize) -> Graph {
    let mut b = Graph::builder(format!("Comb{k}"));
    b.vertex("w").unwrap();
    for i in 0..k {
        b.vertex(&format!("p{i}")).unwrap();
    }
    for i in 0..k {
        b.edge(&format!("b{i}"), &format!("p{i}"), "w").unwrap();
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_parses() {
        let all = corpus();
        assert_eq!(all.len(), 12);
        assert!(all.iter().all(|g| g.vertex_count() <= 5));
    }

    #[test]
    fn ladder_shape() {
        let g = ladder(3);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
        let u3 = g.vertex_id("u3").unwrap();
        assert_eq!(g.out_degree(u3), 2);
    }

    #[test]
    fn line_shape() {
        let g = oriented_line(3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.sinks().len(), 1);
    }
}
