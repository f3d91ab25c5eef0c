use std::sync::OnceLock;

use arcalg::algebra::ArcAlgebra;
use arcalg::diagram::{cap_diagram, circle_decomposition, clockwise_arcs, cup_diagram, is_oriented, orientations_of};
use arcalg::structure::{check_associativity, check_degree_homogeneity, Sampling};
use arcalg::weight::{bruhat_leq, enumerate_weights, is_compact, max_weight, rotate_pd, Label, Weight};
use proptest::prelude::*;

fn weight() -> impl Strategy<Value = Weight> {
    proptest::collection::vec(any::<bool>(), 1..=9).prop_map(|bits| {
        let labels: Vec<Label> = bits.into_iter().map(|b| if b { Label::Down } else { Label::Up }).collect();
        Weight::from_labels(&labels).unwrap()
    })
}

/// Two weights of the same length and number of `∨`.
fn weight_pair() -> impl Strategy<Value = (Weight, Weight)> {
    (1usize..=8).prop_flat_map(|m| (0..=m).prop_map(move |n| (n, m))).prop_flat_map(|(n, m)| {
        let ws = enumerate_weights(n, m).unwrap();
        let k = ws.len();
        (0..k, 0..k).prop_map(move |(i, j)| (ws[i], ws[j]))
    })
}

/// Two compact weights in `Λ_{m,2m}`.
fn compact_pair() -> impl Strategy<Value = (Weight, Weight)> {
    (1usize..=4).prop_flat_map(|m| {
        let ws: Vec<Weight> = enumerate_weights(m, 2 * m).unwrap().into_iter().filter(is_compact).collect();
        let k = ws.len();
        (0..k, 0..k).prop_map(move |(i, j)| (ws[i], ws[j]))
    })
}

fn k25() -> &'static ArcAlgebra {
    static K: OnceLock<ArcAlgebra> = OnceLock::new();
    K.get_or_init(|| ArcAlgebra::k(2, 5).unwrap())
}

proptest! {
    #[test]
    fn cup_diagrams_are_planar_matchings(w in weight()) {
        let d = cup_diagram(&w);
        prop_assert!(d.is_planar());
        let mut seen = vec![0; w.len() + 1];
        for &(i, j) in &d.arcs {
            seen[i] += 1;
            seen[j] += 1;
        }
        for &r in &d.rays {
            seen[r] += 1;
        }
        prop_assert!(seen[1..].iter().all(|&c| c == 1));
    }

    #[test]
    fn orientation_count((b, a) in weight_pair()) {
        let dec = circle_decomposition(&b, &a).unwrap();
        let count = orientations_of(&b, &a).unwrap().len();
        let full = 1usize << dec.circles();
        if dec.lines() == 0 {
            prop_assert_eq!(count, full);
        } else {
            prop_assert!(count == 0 || count == full);
        }
    }

    #[test]
    fn orientations_lie_above_both_ends((b, a) in weight_pair()) {
        for l in orientations_of(&b, &a).unwrap() {
            prop_assert!(is_oriented(&b, &l, &a).unwrap());
            prop_assert!(bruhat_leq(&b, &l).unwrap());
            prop_assert!(bruhat_leq(&a, &l).unwrap());
        }
    }

    #[test]
    fn max_weight_is_the_unique_maximum(w in weight()) {
        let os = orientations_of(&w, &w).unwrap();
        let top = max_weight(&w);
        prop_assert!(os.contains(&top));
        for o in &os {
            prop_assert!(bruhat_leq(o, &top).unwrap());
            if *o != top {
                prop_assert!(!bruhat_leq(&top, o).unwrap());
            }
        }
    }

    #[test]
    fn rotation_is_an_involution(w in weight()) {
        prop_assert_eq!(rotate_pd(&rotate_pd(&w)), w);
        prop_assert_eq!(rotate_pd(&w).downs(), w.len() - w.downs());
    }

    #[test]
    fn basis_symmetries(i in 0usize..10_000) {
        let k = k25();
        let d = k.basis()[i % k.dim()];
        prop_assert_eq!(d.degree(), d.cup_degree() + d.cap_degree());
        prop_assert_eq!(d.cup_degree(), clockwise_arcs(&cup_diagram(&d.cup), &d.mid));
        prop_assert_eq!(d.cap_degree(), clockwise_arcs(&cap_diagram(&d.cap), &d.mid));
        prop_assert_eq!(d.reflect().reflect(), d);
        prop_assert_eq!(d.reflect().degree(), d.degree());
        let r = d.rotate_pd();
        prop_assert_eq!(r.rotate_pd(), d);
        prop_assert_eq!(r.degree(), d.degree());
        prop_assert!(is_oriented(&r.cup, &r.mid, &r.cap).unwrap());
    }

    #[test]
    fn compact_weights_give_closed_circles((b, a) in compact_pair()) {
        prop_assert_eq!(circle_decomposition(&b, &a).unwrap().lines(), 0);
    }

    #[test]
    fn products_have_nonnegative_integer_coefficients(i in 0usize..10_000, j in 0usize..10_000) {
        let k = k25();
        let (i, j) = (i % k.dim(), j % k.dim());
        for &(_, c) in k.multiply_basis(i, j).iter() {
            prop_assert!(c > 0);
        }
    }

    #[test]
    fn surgery_order_does_not_matter(i in 0usize..10_000, j in 0usize..10_000, keys in proptest::collection::vec(any::<u16>(), 8)) {
        let k = k25();
        let (i, j) = (i % k.dim(), j % k.dim());
        let cups = k.surgery_count(i);
        let mut order: Vec<usize> = (0..cups).collect();
        order.sort_by_key(|&c| (keys[c % keys.len()], c));
        let product = k.multiply_basis(i, j);
        prop_assert_eq!(k.multiply_basis_ordered(i, j, Some(&order)).unwrap(), product.to_vec());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn random_sweeps_in_h3(seed in any::<u64>()) {
        let h = ArcAlgebra::h(3).unwrap();
        let sampling = Sampling::Random { samples: 300, seed };
        prop_assert!(check_associativity(&h, sampling).pass());
        prop_assert!(check_degree_homogeneity(&h, sampling).pass());
    }
}
