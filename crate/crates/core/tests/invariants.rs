//! Property tests for the algebraic invariants: exact arithmetic laws,
//! multiset identities against brute-force oracles, normal-ordering
//! algebra laws on random words, and the module-map property of the
//! tensor action.

use std::collections::BTreeSet;

use proptest::prelude::*;

use sl21_core::algebra::{Algebra, BasisId};
use sl21_core::multiset::{multisets_up_to, permutations, Multiset};
use sl21_core::pbw::{normal_form, Generator, UElem, WordFactor};
use sl21_core::rational::{binomial_i64, rat, Int, Rational};
use sl21_core::sl21::{GenId, ALL_GENERATORS};
use sl21_core::tensor::{act_elem, ts_basis, v_vector, TsSolver};

// ---------------------------------------------------------------------------
// rational arithmetic laws
// ---------------------------------------------------------------------------

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn rational_add_mul_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }
}

// ---------------------------------------------------------------------------
// multiset identities against a brute-force oracle
// ---------------------------------------------------------------------------

/// Count the distinct arrangements of the multiset directly.
fn arrangements_oracle(chi: &Multiset) -> Int {
    let mut word = Vec::new();
    for (b, k) in chi.iter() {
        for _ in 0..k {
            word.push(b);
        }
    }
    let mut seen: BTreeSet<Vec<BasisId>> = BTreeSet::new();
    for perm in permutations(word.len()) {
        seen.insert(perm.iter().map(|&j| word[j]).collect());
    }
    Int::from(seen.len())
}

fn small_multiset() -> impl Strategy<Value = Multiset> {
    proptest::collection::vec((0usize..3, 1u32..3), 0..3).prop_map(|pairs| {
        let pairs: Vec<(BasisId, u32)> = pairs.into_iter().map(|(i, k)| (BasisId(i), k)).collect();
        Multiset::from_pairs(&pairs)
    })
}

proptest! {
    #[test]
    fn multinomial_matches_arrangement_count(chi in small_multiset()) {
        prop_assume!(chi.size() <= 5);
        prop_assert_eq!(chi.multinomial(), arrangements_oracle(&chi));
    }

    /// The multinomial convolution: splitting the arrangements of chi at a
    /// fixed set of k positions classifies them by the sub-multiset there.
    #[test]
    fn multinomial_convolution(chi in small_multiset(), k in 0u32..6) {
        prop_assume!(chi.size() <= 5 && k <= chi.size());
        let total: Int = chi
            .subsets_of_size(k)
            .iter()
            .map(|psi| psi.multinomial() * chi.sub(psi).unwrap().multinomial())
            .sum();
        prop_assert_eq!(total, chi.multinomial());
    }

    #[test]
    fn composition_count_formula(chi in small_multiset(), k in 1usize..4) {
        let expect: Int = chi
            .iter()
            .map(|(_, c)| binomial_i64(c as i64 + k as i64 - 1, k as u32 - 1))
            .product();
        prop_assert_eq!(Int::from(chi.compositions(k).len()), expect);
        // every composition really sums back to chi, no duplicates
        let comps = chi.compositions(k);
        let as_set: BTreeSet<_> = comps.iter().cloned().collect();
        prop_assert_eq!(as_set.len(), comps.len());
        for parts in &comps {
            let sum = parts.iter().fold(Multiset::empty(), |acc, p| acc.add(p));
            prop_assert_eq!(&sum, &chi);
        }
    }
}

// ---------------------------------------------------------------------------
// coefficient algebra laws
// ---------------------------------------------------------------------------

#[test]
fn basis_products_commute_and_associate() {
    for alg in [Algebra::Poly, Algebra::Trunc(2), Algebra::Trunc(3)] {
        let window = alg.dim().unwrap_or(4);
        for i in 0..window {
            for j in 0..window {
                let ij = alg.mul_basis(BasisId(i), BasisId(j)).unwrap();
                let ji = alg.mul_basis(BasisId(j), BasisId(i)).unwrap();
                assert_eq!(ij, ji);
                for k in 0..window {
                    let left = alg
                        .mul(&ij, &sl21_core::AlgElem::basis(BasisId(k)))
                        .unwrap();
                    let jk = alg.mul_basis(BasisId(j), BasisId(k)).unwrap();
                    let right = alg.mul(&sl21_core::AlgElem::basis(BasisId(i)), &jk).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn basis_product_map_is_multiplicative_on_multisets() {
    // pi(psi + phi) = pi(psi) pi(phi) for |psi| + |phi| <= 4, window <= 3
    for alg in [Algebra::Poly, Algebra::Trunc(3)] {
        for psi in multisets_up_to(3, 2) {
            for phi in multisets_up_to(3, 2) {
                let left = alg.product_of_basis(&psi.add(&phi)).unwrap();
                let right = alg
                    .mul(
                        &alg.product_of_basis(&psi).unwrap(),
                        &alg.product_of_basis(&phi).unwrap(),
                    )
                    .unwrap();
                assert_eq!(left, right, "psi={psi} phi={phi}");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// normal ordering laws on random words
// ---------------------------------------------------------------------------

fn word_strategy(window: usize, max_len: usize) -> impl Strategy<Value = Vec<WordFactor>> {
    proptest::collection::vec((0usize..8, 0usize..window), 0..=max_len).prop_map(|pairs| {
        pairs
            .into_iter()
            .map(|(g, b)| WordFactor::Gen(Generator::new(ALL_GENERATORS[g], BasisId(b))))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(
        wu in word_strategy(2, 3),
        wv in word_strategy(2, 3),
        ww in word_strategy(2, 3),
    ) {
        let alg = Algebra::Trunc(2);
        let u = normal_form(&alg, &wu).unwrap();
        let v = normal_form(&alg, &wv).unwrap();
        let w = normal_form(&alg, &ww).unwrap();
        let left = u.mul(&v, &alg).unwrap().mul(&w, &alg).unwrap();
        let right = u.mul(&v.mul(&w, &alg).unwrap(), &alg).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_respects_parity_and_filtration(
        wu in word_strategy(3, 3),
        wv in word_strategy(3, 3),
    ) {
        let alg = Algebra::Trunc(3);
        let u = normal_form(&alg, &wu).unwrap();
        let v = normal_form(&alg, &wv).unwrap();
        let prod = u.mul(&v, &alg).unwrap();
        if let (Some(pu), Some(pv), Some(pp)) = (u.parity(), v.parity(), prod.parity()) {
            prop_assert_eq!(pp, (pu + pv) % 2);
        }
        prop_assert!(prod.total_degree() <= u.total_degree() + v.total_degree());
    }

    /// Acting by a product equals acting twice: the tensor power is a module.
    #[test]
    fn action_is_a_module_map(
        wu in word_strategy(2, 2),
        wv in word_strategy(2, 2),
        pick in 0usize..19,
    ) {
        let alg = Algebra::Trunc(2);
        let u = normal_form(&alg, &wu).unwrap();
        let v = normal_form(&alg, &wv).unwrap();
        let basis = ts_basis(2, 2);
        let t = v_vector(&alg, &basis[pick % basis.len()]).unwrap();
        let joined = act_elem(&alg, &u.mul(&v, &alg).unwrap(), &t).unwrap();
        let stepped = act_elem(&alg, &u, &act_elem(&alg, &v, &t).unwrap()).unwrap();
        prop_assert_eq!(joined, stepped);
    }
}

// ---------------------------------------------------------------------------
// the symmetric subspace is a submodule
// ---------------------------------------------------------------------------

#[test]
fn action_preserves_the_symmetric_subspace() {
    // >= 100 sampled (element, basis vector) pairs at m <= 3 over trunc:2
    use rand::{Rng, SeedableRng};
    let alg = Algebra::Trunc(2);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let mut checked = 0;
    for m in 1..=3usize {
        let mut solver = TsSolver::new(&alg, m, 2).unwrap();
        let indices: Vec<_> = solver.indices().to_vec();
        for _ in 0..40 {
            let len = rng.gen_range(0..=2);
            let word: Vec<WordFactor> = (0..len)
                .map(|_| {
                    WordFactor::Gen(Generator::new(
                        ALL_GENERATORS[rng.gen_range(0..8)],
                        BasisId(rng.gen_range(0..2)),
                    ))
                })
                .collect();
            let u = normal_form(&alg, &word).unwrap();
            let idx = &indices[rng.gen_range(0..indices.len())];
            let t = v_vector(&alg, idx).unwrap();
            let image = act_elem(&alg, &u, &t).unwrap();
            solver
                .express(&image)
                .unwrap_or_else(|e| panic!("image left the subspace at m={m}, {idx:?}: {e}"));
            checked += 1;
        }
    }
    assert!(checked >= 100);
}

// ---------------------------------------------------------------------------
// weight structure of the basis vectors
// ---------------------------------------------------------------------------

#[test]
fn cartan_eigenvalues_on_every_index() {
    let alg = Algebra::Trunc(2);
    for m in 0..=3usize {
        for idx in ts_basis(m, 2) {
            let t = v_vector(&alg, &idx).unwrap();
            let h1 = UElem::gen(Generator::new(GenId::H1, BasisId(0)));
            let h2 = UElem::gen(Generator::new(GenId::H2, BasisId(0)));
            let ev1 = idx.phi1.size() as i64 - idx.phi2.size() as i64;
            let ev2 = idx.phi2.size() as i64 + idx.xi.len() as i64;
            assert_eq!(
                act_elem(&alg, &h1, &t).unwrap(),
                t.scale(&Rational::from_integer(Int::from(ev1)))
            );
            assert_eq!(
                act_elem(&alg, &h2, &t).unwrap(),
                t.scale(&Rational::from_integer(Int::from(ev2)))
            );
        }
    }
}
