use std::collections::BTreeSet;
use std::sync::Arc;

use leavitt_core::analysis::{hereditary_saturated_closure, is_acyclic, tree_of_set};
use leavitt_core::builders;
use leavitt_core::matrix::Matrix;
use leavitt_core::quotients::{right_denominator, restriction_graph, socle_set, QuotientMorphism};
use leavitt_core::semisimple::{matrix_decomposition, BlockMatrix};
use leavitt_core::toeplitz::{agree_within, laurent_quotient, rcfm_representation, toeplitz_graph, windows_independent};
use leavitt_core::{basis_monomials_up_to, Element, Field, Graph, Monomial, Scalar, VertexSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rationals;

fn corpus_graph(i: usize) -> Arc<Graph> {
    let c = builders::corpus();
    Arc::new(c[i % c.len()].clone())
}

fn acyclic_graph(i: usize) -> Arc<Graph> {
    let c: Vec<Graph> = builders::corpus().into_iter().filter(is_acyclic).collect();
    Arc::new(c[i % c.len()].clone())
}

fn random_element(g: &Arc<Graph>, rng: &mut impl Rng, max_len: usize) -> Element {
    let basis = basis_monomials_up_to(g, max_len);
    let k = rng.gen_range(1..=3);
    let terms: Vec<(Monomial, Scalar)> = (0..k)
        .map(|_| (basis.choose(rng).unwrap().clone(), Q.from_i64(rng.gen_range(-3..=3))))
        .collect();
    Element::from_terms(g, Q, terms)
}

fn random_graph(rng: &mut impl Rng, max_vertices: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=2 * n);
    let names: Vec<String> = (0..n).map(|k| format!("v{k}")).collect();
    let edge_names: Vec<String> = (0..m).map(|k| format!("e{k}")).collect();
    let edges: Vec<(&str, &str, &str)> = edge_names
        .iter()
        .map(|e| (e.as_str(), names[rng.gen_range(0..n)].as_str(), names[rng.gen_range(0..n)].as_str()))
        .collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    Graph::from_parts("R", &vs, &edges).unwrap()
}

fn mask_set(g: &Graph, mask: u32) -> VertexSet {
    g.vertices().filter(|v| mask & (1 << v.0) != 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(gi in 0usize..12, seed in any::<u64>()) {
        let g = corpus_graph(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&g, &mut rng, 3);
        let y = random_element(&g, &mut rng, 3);
        let z = random_element(&g, &mut rng, 3);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x * &Element::identity(&g, Q), x.clone());
    }

    #[test]
    fn involution_and_grading(gi in 0usize..12, seed in any::<u64>()) {
        let g = corpus_graph(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&g, &mut rng, 3);
        let y = random_element(&g, &mut rng, 3);
        prop_assert_eq!((&x * &y).involution(), &y.involution() * &x.involution());
        prop_assert_eq!(x.involution().involution(), x.clone());
        for (a, xa) in x.homogeneous_components() {
            for (b, yb) in y.homogeneous_components() {
                let p = &xa * &yb;
                prop_assert!(p.is_zero() || p.homogeneous_degree() == Some(a + b));
            }
        }
    }

    #[test]
    fn paths_independent(gi in 0usize..12, len in 0usize..4) {
        let g = corpus_graph(gi);
        let elems: Vec<Element> = g.paths_up_to(len).iter().map(|p| Element::path(&g, Q, p)).collect();
        let support: Vec<Monomial> = elems.iter().flat_map(|x| x.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>())
            .collect::<BTreeSet<_>>().into_iter().collect();
        let m = Matrix::from_fn(Q, elems.len(), support.len(), |r, c| elems[r].coefficient(&support[c]));
        prop_assert_eq!(m.rank(), elems.len());
    }

    #[test]
    fn quotient_is_a_surjective_morphism(gi in 0usize..12, mask in 0u32..64, seed in any::<u64>()) {
        let g = corpus_graph(gi);
        let h = hereditary_saturated_closure(&g, &mask_set(&g, mask));
        let pi = QuotientMorphism::new(&g, &h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&g, &mut rng, 3);
        let y = random_element(&g, &mut rng, 3);
        let (px, py) = (pi.apply(&x).unwrap(), pi.apply(&y).unwrap());
        prop_assert_eq!(pi.apply(&(&x * &y)).unwrap(), &px * &py);
        prop_assert_eq!(pi.apply(&(&x + &y)).unwrap(), &px + &py);
        prop_assert_eq!(pi.apply(&x.involution()).unwrap(), px.involution());
        // every generator of E/H is hit
        let images: BTreeSet<String> = pi.generator_images().into_iter().map(|(_, img)| img).collect();
        let t = pi.target();
        for v in t.vertices() {
            prop_assert!(images.contains(t.vertex_name(v)));
        }
        for e in t.edges() {
            prop_assert!(images.contains(t.edge_name(e)));
        }
    }

    #[test]
    fn restriction_embedding_is_injective_morphism(gi in 0usize..12, seed in any::<u64>()) {
        let g = corpus_graph(gi);
        let h = socle_set(&g);
        prop_assume!(!h.is_empty());
        let rg = restriction_graph(&g, &h, 3).unwrap();
        let hg = rg.graph().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&hg, &mut rng, 2);
        let y = random_element(&hg, &mut rng, 2);
        let (ex, ey) = (rg.embed(&x).unwrap(), rg.embed(&y).unwrap());
        prop_assert_eq!(rg.embed(&(&x * &y)).unwrap(), &ex * &ey);
        prop_assert_eq!(rg.embed(&x.involution()).unwrap(), ex.involution());
        prop_assert_eq!(x.is_zero(), ex.is_zero());
        prop_assert_eq!(rg.embed(&Element::identity(&hg, Q)).unwrap().is_zero(), false);
    }

    #[test]
    fn denominators(gi in 0usize..12, seed in any::<u64>()) {
        let g = corpus_graph(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_element(&g, &mut rng, 3);
        prop_assume!(!p.is_zero());
        let q = random_element(&g, &mut rng, 3);
        let d = right_denominator(&p, &q).unwrap();
        prop_assert!(!(&p * &d.r).is_zero());
        prop_assert!((&q * &d.r).is_in_path_algebra());
        prop_assert!(d.iterations <= d.bound);
    }

    #[test]
    fn matrix_decomposition_is_an_isomorphism(gi in 0usize..6, seed in any::<u64>()) {
        let g = acyclic_graph(gi);
        let d = matrix_decomposition(&g).unwrap();
        let total: usize = d.sizes().iter().map(|n| n * n).sum();
        prop_assert_eq!(d.basis_count(), total);
        prop_assert_eq!(basis_monomials_up_to(&g, 2 * g.vertex_count()).len(), total);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&g, &mut rng, 4);
        let y = random_element(&g, &mut rng, 4);
        let (mx, my) = (d.to_matrix(&x).unwrap(), d.to_matrix(&y).unwrap());
        prop_assert_eq!(d.to_matrix(&(&x * &y)).unwrap(), mx.checked_mul(&my).unwrap());
        prop_assert_eq!(d.from_matrix(&mx).unwrap(), x);
        let m = BlockMatrix::new(d.sizes().iter().map(|&n| Matrix::from_fn(Q, n, n, |_, _| Q.from_i64(rng.gen_range(-2..=2)))).collect());
        prop_assert_eq!(d.to_matrix(&d.from_matrix(&m).unwrap()).unwrap(), m);
    }

    #[test]
    fn group_inverse_is_unique(entries in prop::collection::vec(-2i64..=2, 13), j in 0usize..3, k in 0usize..3) {
        let a = BlockMatrix::new(vec![
            Matrix::from_fn(Q, 2, 2, |r, c| Q.from_i64(entries[2 * r + c])),
            Matrix::from_fn(Q, 3, 3, |r, c| Q.from_i64(entries[4 + 3 * r + c])),
        ]);
        match a.group_inverse() {
            Ok(b) => {
                prop_assert!(a.satisfies_group_inverse_axioms(&b));
                let bump = BlockMatrix::new(vec![Matrix::zeros(Q, 2, 2), Matrix::unit(Q, 3, j, k)]);
                prop_assert!(!a.satisfies_group_inverse_axioms(&b.checked_add(&bump).unwrap()));
            }
            Err(_) => {
                let dropped = a.blocks().iter().any(|m| m.rank() != (m * m).rank());
                prop_assert!(dropped);
            }
        }
    }

    #[test]
    fn windows_multiply(seed in any::<u64>()) {
        let g = Arc::new(toeplitz_graph());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&g, &mut rng, 3);
        let y = random_element(&g, &mut rng, 3);
        let n = 10;
        let bound = n - x.total_degree() - y.total_degree();
        let lhs = rcfm_representation(&(&x * &y), n).unwrap().matrix;
        let rhs = &rcfm_representation(&x, n).unwrap().matrix * &rcfm_representation(&y, n).unwrap().matrix;
        prop_assert!(agree_within(&lhs, &rhs, bound));
    }

    #[test]
    fn windows_faithful(seed in any::<u64>(), count in 1usize..16) {
        let g = Arc::new(toeplitz_graph());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = basis_monomials_up_to(&g, 4);
        let windows: Vec<Matrix> = basis.choose_multiple(&mut rng, count)
            .map(|m| rcfm_representation(&Element::monomial(&g, Q, m.clone()), 12).unwrap().matrix)
            .collect();
        prop_assert!(windows_independent(&windows));
    }

    #[test]
    fn laurent_quotient_multiplies(seed in any::<u64>(), family in 0usize..2) {
        let g = Arc::new(if family == 0 { toeplitz_graph() } else { builders::e2_a2() });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&g, &mut rng, 3);
        let y = random_element(&g, &mut rng, 3);
        let (lx, ly) = (laurent_quotient(&x).unwrap(), laurent_quotient(&y).unwrap());
        prop_assert_eq!(laurent_quotient(&(&x * &y)).unwrap(), &lx * &ly);
        prop_assert_eq!(laurent_quotient(&x.involution()).unwrap(), lx.invert_variable());
    }

    #[test]
    fn trees_and_closures_match_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 5);
        let n = g.vertex_count();
        let paths = g.paths_up_to(n);
        for v in g.vertices() {
            let want: BTreeSet<_> = paths.iter().filter(|p| p.source() == v).map(|p| p.range()).collect();
            let got: BTreeSet<_> = tree_of_set(&g, [v]).iter().collect();
            prop_assert_eq!(got, want);
        }
        let closed = |y: u32| {
            let inside = |v: usize| y & (1 << v) != 0;
            g.edges().all(|e| !inside(g.source(e).0) || inside(g.range(e).0))
                && g.vertices().all(|v| g.out_edges(v).is_empty() || inside(v.0)
                    || !g.out_edges(v).iter().all(|&e| inside(g.range(e).0)))
        };
        for x in 0..1u32 << n {
            let want = (0..1u32 << n).filter(|&y| y & x == x && closed(y)).fold((1u32 << n) - 1, |a, b| a & b);
            let got = hereditary_saturated_closure(&g, &mask_set(&g, x)).iter().fold(0u32, |a, v| a | (1 << v.0));
            prop_assert_eq!(got, want);
        }
    }
}
