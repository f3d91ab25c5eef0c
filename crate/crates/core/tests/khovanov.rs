use arcalg::braid::BraidWord;
use arcalg::field::{PrimeField, Rationals};
use arcalg::khovanov::{jones, kh_cube};
use proptest::prelude::*;

fn word(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        let g = n as i64 - 1;
        proptest::collection::vec((1..=g, any::<bool>()), 0..=max_len)
            .prop_map(move |ls| BraidWord::new(n, ls.into_iter().map(|(i, s)| if s { i } else { -i }).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_characteristic_is_jones(w in word(4, 6)) {
        prop_assert_eq!(kh_cube(&Rationals, &w).unwrap().euler, jones(&w));
    }

    #[test]
    fn mirror_negates_gradings(w in word(3, 5)) {
        let a = kh_cube(&Rationals, &w).unwrap();
        let b = kh_cube(&Rationals, &w.mirror()).unwrap();
        let flipped: std::collections::BTreeMap<i64, std::collections::BTreeMap<i64, usize>> = a
            .ranks
            .iter()
            .map(|(h, qs)| (-h, qs.iter().map(|(q, r)| (-q, *r)).collect()))
            .collect();
        prop_assert_eq!(b.ranks, flipped);
    }

    #[test]
    fn conjugation_preserves_khovanov(w in word(3, 4), s in 1i64..=2, neg in any::<bool>()) {
        prop_assume!(s < w.strands() as i64);
        let c = w.conjugate(if neg { -s } else { s }).unwrap();
        prop_assert_eq!(kh_cube(&Rationals, &c).unwrap().ranks, kh_cube(&Rationals, &w).unwrap().ranks);
    }

    #[test]
    fn mod_two_rank_is_at_least_rational_rank(w in word(3, 5)) {
        let f2 = PrimeField::new(2).unwrap();
        prop_assert!(kh_cube(&f2, &w).unwrap().total >= kh_cube(&Rationals, &w).unwrap().total);
    }
}

#[test]
fn stabilization_keeps_the_unknot() {
    for w in [BraidWord::new(2, vec![-1]).unwrap(), BraidWord::new(4, vec![1, 2, 3]).unwrap(), BraidWord::new(3, vec![-1, 2]).unwrap()] {
        assert_eq!(kh_cube(&Rationals, &w).unwrap().total, 2, "[{w}]");
    }
}
