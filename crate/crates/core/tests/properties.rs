mod common;

use proptest::prelude::*;

use common::{factorize, Ring, SquareTable, EISENSTEIN, GAUSSIAN};
use resmat::cyclotomic::{
    check_cubic_reciprocity, check_quartic_reciprocity, cubic_symbol, power_residue,
    power_residue_general, primary_generator, quartic_symbol, EisensteinInt, GaussianInt,
    PrimaryPrime, QuadInt,
};
use resmat::higher::{
    cubic_matrix, cubic_witness, is_quartic_residue_matrix, quartic_matrix, quartic_witness,
};
use resmat::matrix::{
    all_sign_matrices, all_skew_sign_matrices, all_symmetric_sign_matrices, canonical_form,
    conjugate, equivalence_classes, Permutation, RootMatrix,
};
use resmat::qr::{is_qr_matrix, jacobi_matrix, qr_matrix_from_primes};
use resmat::rational::{is_prime, jacobi, legendre, prime_in_progression, OddPrime};

fn matrix_strategy(max_n: usize, m: u8) -> impl Strategy<Value = RootMatrix> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), prop::collection::vec(0..m, n * n)))
        .prop_map(move |(n, exps)| RootMatrix::from_fn(n, m, |i, j| exps[i * n + j]).unwrap())
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn matrix_and_perms(
    max_n: usize,
    m: u8,
) -> impl Strategy<Value = (RootMatrix, Permutation, Permutation)> {
    matrix_strategy(max_n, m).prop_flat_map(|mat| {
        let n = mat.n();
        (Just(mat), perm_strategy(n), perm_strategy(n))
    })
}

#[test]
fn conjugation_is_a_group_action_exhaustively_up_to_three() {
    for n in 1..=3 {
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        for m in all_sign_matrices(n) {
            for s in &perms {
                for t in &perms {
                    let lhs = conjugate(&m, &s.compose(t).unwrap()).unwrap();
                    let rhs = conjugate(&conjugate(&m, t).unwrap(), s).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugation_is_a_group_action((m, s, t) in matrix_and_perms(6, 4)) {
        let lhs = conjugate(&m, &s.compose(&t).unwrap()).unwrap();
        let rhs = conjugate(&conjugate(&m, &t).unwrap(), &s).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let back = conjugate(&conjugate(&m, &s).unwrap(), &s.inverse()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn canonical_form_is_idempotent_and_orbit_constant(
        (m, s, _t) in prop_oneof![matrix_and_perms(5, 2), matrix_and_perms(5, 3), matrix_and_perms(5, 4)]
    ) {
        let c = canonical_form(&m).unwrap();
        prop_assert_eq!(canonical_form(&c).unwrap(), c.clone());
        prop_assert_eq!(canonical_form(&conjugate(&m, &s).unwrap()).unwrap(), c.clone());
        prop_assert!(c <= m);
    }

    #[test]
    fn qr_verdict_matches_transpose_and_negation(m in matrix_strategy(6, 2)) {
        let v = is_qr_matrix(&m).unwrap().verdict;
        prop_assert_eq!(is_qr_matrix(&m.transpose()).unwrap().verdict, v);
        prop_assert_eq!(is_qr_matrix(&m.negated().unwrap()).unwrap().verdict, v);
    }
}

#[test]
fn sign_matrix_class_counts() {
    let sym = [2, 4, 11, 34];
    let skew = [1, 2, 4, 12];
    for n in 2..=5 {
        assert_eq!(
            equivalence_classes(&all_symmetric_sign_matrices(n))
                .unwrap()
                .len(),
            sym[n - 2]
        );
        assert_eq!(
            equivalence_classes(&all_skew_sign_matrices(n))
                .unwrap()
                .len(),
            skew[n - 2]
        );
    }
}

#[test]
fn legendre_matches_square_enumeration() {
    let table = SquareTable::new(400);
    for p in common::odd_primes_below(400) {
        let op = OddPrime::new(p).unwrap();
        for a in -(2 * p as i64)..=(2 * p as i64) {
            assert_eq!(legendre(a, op), table.legendre(a, p), "({a}/{p})");
        }
    }
}

#[test]
fn jacobi_matches_legendre_products() {
    let table = SquareTable::new(10_000);
    for n in (1..=10_000u64).step_by(2) {
        let f = factorize(n);
        for a in (-10_000i64..=10_000).step_by(97) {
            assert_eq!(jacobi(a, n).unwrap(), table.jacobi(a, &f), "({a}/{n})");
        }
    }
    for (a, n) in [(2, 15), (7, 15), (-1, 15), (5, 1), (0, 1), (0, 9)] {
        let f = factorize(n);
        assert_eq!(jacobi(a, n).unwrap(), table.jacobi(a, &f));
    }
    assert!(jacobi(3, 4).is_err());
}

proptest! {
    #[test]
    fn jacobi_random_pairs(a in -10_000i64..=10_000, k in 0u64..5_000) {
        let n = 2 * k + 1;
        let table = SquareTable::new(n.max(3));
        prop_assert_eq!(jacobi(a, n).unwrap(), table.jacobi(a, &factorize(n)));
    }

    #[test]
    fn progression_search_is_minimal(residue in 0i128..60, modulus in 1u128..60) {
        let g = resmat::rational::gcd(residue.rem_euclid(modulus as i128) as u128, modulus);
        let found = prime_in_progression(residue, modulus, 100_000);
        if g != 1 {
            prop_assert!(found.is_err());
        } else {
            let p = found.unwrap().get();
            prop_assert!(common::is_prime_td(p));
            prop_assert_eq!((p as i128 - residue).rem_euclid(modulus as i128), 0);
            let floor = modulus.max(2) as u64;
            prop_assert!(p > floor);
            for q in floor + 1..p {
                let hit = q % 2 == 1 && common::is_prime_td(q)
                    && (q as i128 - residue).rem_euclid(modulus as i128) == 0;
                prop_assert!(!hit, "{} is smaller", q);
            }
        }
    }
}

#[test]
fn miller_rabin_agrees_with_trial_division_on_large_values() {
    for n in (1u64 << 40)..(1u64 << 40) + 2_000 {
        assert_eq!(is_prime(n), common::is_prime_td(n), "{n}");
    }
}

fn exactly_one_primary_associate<T: QuadInt>(ring: Ring, bound: i64) {
    let primes = ring.primary_primes(bound);
    assert!(!primes.is_empty());
    for &(a, b) in &primes {
        let x = T::new(a, b);
        let primary: Vec<T> = T::units()
            .iter()
            .map(|&u| u * x)
            .filter(|y| ring.is_primary(y.parts()))
            .collect();
        assert_eq!(primary, vec![x]);
        for &u in T::units() {
            assert_eq!(primary_generator(u * x).unwrap().element(), x);
        }
    }
}

#[test]
fn exactly_one_primary_associate_gaussian() {
    exactly_one_primary_associate::<GaussianInt>(GAUSSIAN, 10_000);
}

#[test]
fn exactly_one_primary_associate_eisenstein() {
    exactly_one_primary_associate::<EisensteinInt>(EISENSTEIN, 10_000);
}

#[test]
fn gaussian_norm_congruences() {
    for (a, b) in GAUSSIAN.primary_primes(10_000) {
        let n = GAUSSIAN.norm((a, b));
        if (a.rem_euclid(4), b.rem_euclid(4)) == (1, 0) {
            assert_eq!(n % 8, 1, "{a}+{b}i");
        } else {
            assert_eq!(n % 8, 5, "{a}+{b}i");
        }
    }
}

#[test]
fn supplementary_law_for_minus_one() {
    for (a, b) in GAUSSIAN.primary_primes(10_000) {
        let q = PrimaryPrime::new(GaussianInt::new(a, b)).unwrap();
        let e = quartic_symbol(GaussianInt::new(-1, 0), q).unwrap();
        let want = if (a - 1).div_euclid(2) % 2 == 0 { 0 } else { 2 };
        assert_eq!(e, want, "(-1 / {q})");
        assert_eq!(e == 0, a.rem_euclid(4) == 1 && b.rem_euclid(4) == 0);
    }
}

#[test]
fn symbols_match_reference_over_small_primes() {
    let xs: Vec<(i64, i64)> = (-6..=6)
        .flat_map(|a| (-6..=6).map(move |b| (a, b)))
        .collect();
    for q in GAUSSIAN.primary_primes(400) {
        let qq = PrimaryPrime::new(GaussianInt::new(q.0, q.1)).unwrap();
        for &x in &xs {
            let got = quartic_symbol(GaussianInt::new(x.0, x.1), qq).ok();
            assert_eq!(got, GAUSSIAN.symbol(x, q), "({x:?} / {q:?})_4");
        }
    }
    for q in EISENSTEIN.primary_primes(400) {
        let qq = PrimaryPrime::new(EisensteinInt::new(q.0, q.1)).unwrap();
        for &x in &xs {
            let got = cubic_symbol(EisensteinInt::new(x.0, x.1), qq).ok();
            assert_eq!(got, EISENSTEIN.symbol(x, q), "({x:?} / {q:?})_3");
        }
    }
}

#[test]
fn fast_and_general_paths_agree() {
    for q in GAUSSIAN.primary_primes(2_000) {
        let qq = GaussianInt::new(q.0, q.1);
        for a in -4..=4 {
            for b in -4..=4 {
                let x = GaussianInt::new(a, b);
                assert_eq!(power_residue(x, qq).ok(), power_residue_general(x, qq).ok());
            }
        }
    }
    for q in EISENSTEIN.primary_primes(2_000) {
        let qq = EisensteinInt::new(q.0, q.1);
        for a in -4..=4 {
            for b in -4..=4 {
                let x = EisensteinInt::new(a, b);
                assert_eq!(power_residue(x, qq).ok(), power_residue_general(x, qq).ok());
            }
        }
    }
}

#[test]
fn reciprocity_over_norm_below_one_thousand() {
    let g: Vec<_> = GAUSSIAN
        .primary_primes(1_000)
        .into_iter()
        .map(|(a, b)| PrimaryPrime::new(GaussianInt::new(a, b)).unwrap())
        .collect();
    for (i, &p) in g.iter().enumerate() {
        for &q in &g[i + 1..] {
            assert!(check_quartic_reciprocity(p, q).unwrap(), "{p} {q}");
        }
        assert!(check_quartic_reciprocity(p, p).is_err());
    }
    let e: Vec<_> = EISENSTEIN
        .primary_primes(1_000)
        .into_iter()
        .map(|(a, b)| PrimaryPrime::new(EisensteinInt::new(a, b)).unwrap())
        .collect();
    for (i, &p) in e.iter().enumerate() {
        for &q in &e[i + 1..] {
            assert!(check_cubic_reciprocity(p, q).unwrap(), "{p} {q}");
        }
    }
}

fn primary_gaussian(bound: i64) -> Vec<PrimaryPrime<GaussianInt>> {
    GAUSSIAN
        .primary_primes(bound)
        .into_iter()
        .map(|(a, b)| PrimaryPrime::new(GaussianInt::new(a, b)).unwrap())
        .collect()
}

fn primary_eisenstein(bound: i64) -> Vec<PrimaryPrime<EisensteinInt>> {
    EISENSTEIN
        .primary_primes(bound)
        .into_iter()
        .map(|(a, b)| PrimaryPrime::new(EisensteinInt::new(a, b)).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quartic_symbol_is_multiplicative(
        k in 0usize..1_000, xa in -50i64..50, xb in -50i64..50, ya in -50i64..50, yb in -50i64..50
    ) {
        let qs = primary_gaussian(10_000);
        let q = qs[k % qs.len()];
        let (x, y) = (GaussianInt::new(xa, xb), GaussianInt::new(ya, yb));
        if let (Ok(ex), Ok(ey)) = (quartic_symbol(x, q), quartic_symbol(y, q)) {
            prop_assert_eq!(quartic_symbol(x * y, q).unwrap(), (ex + ey) % 4);
        }
    }

    #[test]
    fn cubic_symbol_is_multiplicative(
        k in 0usize..1_000, xa in -50i64..50, xb in -50i64..50, ya in -50i64..50, yb in -50i64..50
    ) {
        let qs = primary_eisenstein(10_000);
        let q = qs[k % qs.len()];
        let (x, y) = (EisensteinInt::new(xa, xb), EisensteinInt::new(ya, yb));
        if let (Ok(ex), Ok(ey)) = (cubic_symbol(x, q), cubic_symbol(y, q)) {
            prop_assert_eq!(cubic_symbol(x * y, q).unwrap(), (ex + ey) % 3);
        }
    }

    #[test]
    fn quartic_matrices_from_primes_pass_the_test(
        picks in prop::collection::btree_set(0usize..1_200, 1..=4)
    ) {
        let qs = primary_gaussian(10_000);
        let primes: Vec<_> = picks.iter().map(|&k| qs[k % qs.len()]).collect();
        let mut primes_dedup = primes.clone();
        primes_dedup.dedup_by(|a, b| a.same_ideal(*b));
        prop_assume!(primes_dedup.len() == primes.len());
        let m = quartic_matrix(&primes).unwrap();
        let d = is_quartic_residue_matrix(&m).unwrap();
        prop_assert!(d.verdict);
        let skew: Vec<bool> = primes.iter().map(|p| p.element().is_three_plus_two_i_class()).collect();
        let count = skew.iter().filter(|&&b| b).count();
        if count >= 2 {
            prop_assert_eq!(d.s, Some(count));
        } else {
            prop_assert_eq!(d.s, Some(1));
        }
        // m_jk · conj(m_kj) is -1 exactly inside the skew block
        for j in 0..m.n() {
            for k in 0..m.n() {
                if j != k {
                    let prod = (4 + m.exponent(j, k).unwrap() - m.exponent(k, j).unwrap()) % 4;
                    prop_assert_eq!(prod, if skew[j] && skew[k] { 2 } else { 0 });
                }
            }
        }
    }

    #[test]
    fn cubic_matrices_from_primes_are_symmetric(
        picks in prop::collection::btree_set(0usize..1_200, 2..=3)
    ) {
        let qs = primary_eisenstein(10_000);
        let primes: Vec<_> = picks.iter().map(|&k| qs[k % qs.len()]).collect();
        prop_assume!((0..primes.len()).all(|i| (0..i).all(|j| !primes[i].same_ideal(primes[j]))));
        prop_assert!(cubic_matrix(&primes).unwrap().is_symmetric());
    }

    #[test]
    fn qr_soundness(picks in prop::collection::btree_set(0usize..1_228, 1..=5)) {
        let primes = common::odd_primes_below(10_000);
        let chosen: Vec<u64> = picks.iter().map(|&k| primes[k % primes.len()]).collect();
        let m = qr_matrix_from_primes(&chosen).unwrap();
        let oracle = common::qr_matrix_oracle(&chosen);
        prop_assert_eq!(m.to_signs(), oracle);
        let d = is_qr_matrix(&m).unwrap();
        prop_assert!(d.verdict);
        let count = chosen.iter().filter(|&&p| p % 4 == 3).count();
        prop_assert_eq!(d.s, Some(count.max(1)));
    }

    #[test]
    fn jacobi_matrices_are_qr_matrices(values in prop::collection::vec(1u64..2_000, 1..=5)) {
        let odd: Vec<u64> = values.iter().map(|v| 2 * v + 1).collect();
        let coprime = (0..odd.len()).all(|i| (0..i).all(|j| resmat::rational::gcd(odd[i] as u128, odd[j] as u128) == 1));
        prop_assume!(coprime);
        let m = jacobi_matrix(&odd).unwrap();
        prop_assert!(is_qr_matrix(&m).unwrap().verdict);
    }
}

#[test]
fn witnesses_are_deterministic() {
    let m = RootMatrix::from_exponents(4, &[vec![None, Some(1)], vec![Some(3), None]]).unwrap();
    assert_eq!(
        quartic_witness(&m, 1_000_000).unwrap(),
        quartic_witness(&m, 1_000_000).unwrap()
    );
    let c = RootMatrix::from_exponents(3, &[vec![None, Some(2)], vec![Some(2), None]]).unwrap();
    assert_eq!(
        cubic_witness(&c, 1_000_000).unwrap(),
        cubic_witness(&c, 1_000_000).unwrap()
    );
}
