//! A second normal-form route: rewriting words over the letters `v`, `e`, `e*`.
//!
//! Where [`crate::element`] multiplies monomials and then removes designated
//! endings, this module works on raw words in the generators and applies
//! local rules to adjacent letters:
//!
//! ```text
//! x y           → 0            if r(x) ≠ s(y)
//! v x, x v      → x            (vertex next to a composable letter)
//! e* e'         → δ(e,e') r(e)
//! f f*          → s(f) − Σ_{e ≠ f, s(e) = s(f)} e e*    (f designated)
//! ```
//!
//! Irreducible words are exactly the basis monomials `pq*`, so the two
//! routes can be compared term by term. The redex is chosen either leftmost
//! in the newest pending term or uniformly at random; agreement of the two
//! strategies is the executable confluence check.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::element::{Element, Monomial};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    Vertex(VertexId),
    Edge(EdgeId),
    Ghost(EdgeId),
}

impl Letter {
    fn left(self, g: &Graph) -> VertexId {
        match self {
            Letter::Vertex(v) => v,
            Letter::Edge(e) => g.source(e),
            Letter::Ghost(e) => g.range(e),
        }
    }

    fn right(self, g: &Graph) -> VertexId {
        match self {
            Letter::Vertex(v) => v,
            Letter::Edge(e) => g.range(e),
            Letter::Ghost(e) => g.source(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost redex of the newest pending term.
    Leftmost,
    /// Random pending term, random redex, from a seeded generator.
    Random(u64),
}

#[derive(Debug, Clone)]
pub struct Rewritten {
    pub element: Element,
    /// Number of rule applications.
    pub steps: usize,
}

enum Redex {
    Zero,
    Replace(Vec<(Scalar, Vec<Letter>)>),
}

/// The rule applying at positions `(i, i+1)` of `w`, if any.
fn redex_at(g: &Graph, field: Field, w: &[Letter], i: usize) -> Option<Redex> {
    let (a, b) = (w[i], w[i + 1]);
    if a.right(g) != b.left(g) {
        return Some(Redex::Zero);
    }
    let splice = |mid: &[Letter]| -> Vec<Letter> {
        let mut out = w[..i].to_vec();
        out.extend_from_slice(mid);
        out.extend_from_slice(&w[i + 2..]);
        out
    };
    match (a, b) {
        (Letter::Vertex(_), _) => Some(Redex::Replace(vec![(field.one(), splice(&[b]))])),
        (_, Letter::Vertex(_)) => Some(Redex::Replace(vec![(field.one(), splice(&[a]))])),
        (Letter::Ghost(e), Letter::Edge(e2)) => Some(if e == e2 {
            Redex::Replace(vec![(field.one(), splice(&[Letter::Vertex(g.range(e))]))])
        } else {
            Redex::Zero
        }),
        (Letter::Edge(f), Letter::Ghost(f2)) if f == f2 && g.is_designated(f) => {
            let v = g.source(f);
            let mut out = vec![(field.one(), splice(&[Letter::Vertex(v)]))];
            for &e in g.out_edges(v) {
                if e != f {
                    out.push((-field.one(), splice(&[Letter::Edge(e), Letter::Ghost(e)])));
                }
            }
            Some(Redex::Replace(out))
        }
        _ => None,
    }
}

fn redexes(g: &Graph, field: Field, w: &[Letter]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| redex_at(g, field, w, i).is_some())
        .collect()
}

/// Reads an irreducible word as a monomial `pq*`.
fn word_to_monomial(g: &Graph, w: &[Letter]) -> Monomial {
    if let [Letter::Vertex(v)] = w {
        return Monomial::vertex(*v);
    }
    let split = w.iter().position(|l| matches!(l, Letter::Ghost(_))).unwrap_or(w.len());
    let reals: Vec<EdgeId> = w[..split]
        .iter()
        .map(|l| match l {
            Letter::Edge(e) => *e,
            _ => unreachable!("irreducible words are edges then ghosts"),
        })
        .collect();
    let ghosts: Vec<EdgeId> = w[split..]
        .iter()
        .rev()
        .map(|l| match l {
            Letter::Ghost(e) => *e,
            _ => unreachable!("irreducible words are edges then ghosts"),
        })
        .collect();
    let mid = if split == 0 { w[0].left(g) } else { w[split - 1].right(g) };
    let real = if reals.is_empty() { Path::vertex(mid) } else { Path::from_edges(g, &reals).expect("word composes") };
    let ghost = if ghosts.is_empty() { Path::vertex(mid) } else { Path::from_edges(g, &ghosts).expect("word composes") };
    Monomial::new(real, ghost).expect("ranges agree")
}

/// Rewrites `Σ cᵢ wᵢ` to an irreducible combination.
pub fn rewrite(
    graph: &Arc<Graph>,
    field: Field,
    input: Vec<(Scalar, Vec<Letter>)>,
    strategy: Strategy,
) -> Rewritten {
    let g: &Graph = graph;
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        Strategy::Leftmost => None,
    };
    let mut pending: Vec<(Scalar, Vec<Letter>)> = input.into_iter().filter(|(c, w)| !c.is_zero() && !w.is_empty()).collect();
    let mut done: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    let mut steps = 0;
    while !pending.is_empty() {
        let k = match rng.as_mut() {
            Some(r) => r.gen_range(0..pending.len()),
            None => pending.len() - 1,
        };
        let (c, w) = pending.swap_remove(k);
        let positions = redexes(g, field, &w);
        let Some(&first) = positions.first() else {
            let m = word_to_monomial(g, &w);
            let slot = done.entry(m).or_insert_with(|| field.zero());
            *slot = &*slot + &c;
            continue;
        };
        let i = match rng.as_mut() {
            Some(r) => positions[r.gen_range(0..positions.len())],
            None => first,
        };
        steps += 1;
        if let Some(Redex::Replace(terms)) = redex_at(g, field, &w, i) {
            for (d, w2) in terms {
                pending.push((&c * &d, w2));
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    let element = Element::from_terms(graph, field, done);
    Rewritten { element, steps }
}

/// The word `e₁ … eₙ qₘ* … q₁*` spelling a monomial.
pub fn monomial_word(m: &Monomial) -> Vec<Letter> {
    if m.real().is_trivial() && m.ghost().is_trivial() {
        return vec![Letter::Vertex(m.source())];
    }
    let mut w: Vec<Letter> = m.real().edges().iter().map(|&e| Letter::Edge(e)).collect();
    w.extend(m.ghost().edges().iter().rev().map(|&e| Letter::Ghost(e)));
    w
}

/// Evaluates a word by multiplying its letters as elements.
pub fn evaluate_word(graph: &Arc<Graph>, field: Field, w: &[Letter]) -> Element {
    let mut acc = Element::identity(graph, field);
    for &l in w {
        let x = match l {
            Letter::Vertex(v) => Element::vertex(graph, field, v),
            Letter::Edge(e) => Element::edge(graph, field, e),
            Letter::Ghost(e) => Element::ghost_edge(graph, field, e),
        };
        acc = &acc * &x;
    }
    acc
}

/// A uniformly random word of length `len` over all letters of `g`.
/// Most such words vanish; `composable` restricts each letter to start
/// where the previous one ended.
pub fn random_word(g: &Graph, rng: &mut impl Rng, len: usize, composable: bool) -> Vec<Letter> {
    let letters: Vec<Letter> = g
        .vertices()
        .map(Letter::Vertex)
        .chain(g.edges().map(Letter::Edge))
        .chain(g.edges().map(Letter::Ghost))
        .collect();
    let mut w: Vec<Letter> = Vec::with_capacity(len);
    for _ in 0..len {
        let pool: Vec<Letter> = match w.last() {
            Some(prev) if composable => letters.iter().copied().filter(|l| l.left(g) == prev.right(g)).collect(),
            _ => letters.clone(),
        };
        w.push(pool[rng.gen_range(0..pool.len())]);
    }
    w
}
