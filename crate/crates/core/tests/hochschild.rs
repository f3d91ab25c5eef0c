use arcalg::algebra::ArcAlgebra;
use arcalg::bimodule::{tensor_over, Bimodule};
use arcalg::braid::{Letter, TangleBimodule};
use arcalg::field::{Field, PrimeField, Rationals};
use arcalg::hh::{relative_bar_hochschild, BimoduleComplex};
use proptest::prelude::*;

fn hh_ranks<F: Field>(alg: &ArcAlgebra, field: &F, m: Bimodule<F>, depth: usize) -> Vec<usize> {
    let r = relative_bar_hochschild(alg, field, &BimoduleComplex::single(m), depth, None).unwrap();
    r.ranks.values().copied().collect()
}

/// The same bimodule with basis vector `i` renamed to `perm⁻¹(i)`.
fn permuted<F: Field>(alg: &ArcAlgebra, m: &Bimodule<F>, perm: &[usize]) -> Bimodule<F> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let relabel = |v: &Vec<(usize, F::Elem)>| {
        let mut out: Vec<_> = v.iter().map(|(k, c)| (inv[*k], c.clone())).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    };
    Bimodule::from_actions(
        alg,
        format!("{}'", m.name),
        perm.iter().map(|&p| m.left_idem[p]).collect(),
        perm.iter().map(|&p| m.right_idem[p]).collect(),
        m.degrees.as_ref().map(|d| perm.iter().map(|&p| d[p]).collect()),
        perm.iter().map(|&p| m.labels[p].clone()).collect(),
        |x, i| relabel(m.left_act(x, perm[i])),
        |i, x| relabel(m.right_act(perm[i], x)),
    )
}

fn shuffle(n: usize, keys: &[u32]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.sort_by_key(|&i| (keys[i % keys.len()].wrapping_mul(i as u32 + 1), i));
    p
}

#[test]
fn trace_property_for_cup_caps() {
    let alg = ArcAlgebra::k(1, 3).unwrap();
    let f = Rationals;
    let u1 = TangleBimodule::new(&alg, &f, Letter::U(1)).unwrap().module;
    let u2 = TangleBimodule::new(&alg, &f, Letter::U(2)).unwrap().module;
    let a = tensor_over(&alg, &f, &u1, &u2).unwrap().module;
    let b = tensor_over(&alg, &f, &u2, &u1).unwrap().module;
    assert_ne!(a.dim(), 0);
    let (ra, rb) = (hh_ranks(&alg, &f, a, 5), hh_ranks(&alg, &f, b, 5));
    assert!(ra.iter().sum::<usize>() > 0);
    assert_eq!(ra, rb);
}

#[test]
fn characteristic_two_agrees_on_the_diagonal() {
    let alg = ArcAlgebra::k(1, 3).unwrap();
    let q = hh_ranks(&alg, &Rationals, Bimodule::diagonal(&alg, &Rationals), 4);
    let f2 = PrimeField::new(2).unwrap();
    assert_eq!(hh_ranks(&alg, &f2, Bimodule::diagonal(&alg, &f2), 4), q);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ranks_ignore_basis_order(keys in proptest::collection::vec(any::<u32>(), 1..16)) {
        let alg = ArcAlgebra::k(1, 3).unwrap();
        let f = Rationals;
        let diag = Bimodule::diagonal(&alg, &f);
        let perm = shuffle(diag.dim(), &keys);
        prop_assert_eq!(hh_ranks(&alg, &f, permuted(&alg, &diag, &perm), 4), hh_ranks(&alg, &f, diag, 4));

        let u = TangleBimodule::new(&alg, &f, Letter::U(1)).unwrap().module;
        let perm = shuffle(u.dim(), &keys);
        let p = permuted(&alg, &u, &perm);
        prop_assert!(p.check(&alg, &f).pass());
        prop_assert_eq!(hh_ranks(&alg, &f, p, 5), hh_ranks(&alg, &f, u, 5));
    }
}
