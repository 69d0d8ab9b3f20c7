//! Property tests for the invariants that hold for arbitrary inputs.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use e8galois::chevalley::DIM;
use e8galois::exactpoly::crt::reconstruct;
use e8galois::exactpoly::{
    charpoly_exact, charpoly_mod, factor_degree_pattern, read_poly, reciprocal_expand,
    reciprocal_transform, write_poly, IntPoly,
};
use e8galois::groupelem::{GeneratorWord, Letter};
use e8galois::matrix::{IntMatrix, SparseMatrix};
use e8galois::rootsystem::{RootSystem, NUM_ROOTS};
use e8galois::weyl::WeylGroup;
use e8galois::zp::Zp;

use common::{berkowitz, group};

fn rs() -> &'static RootSystem {
    group().algebra().root_system()
}

fn weyl() -> &'static WeylGroup {
    static W: std::sync::OnceLock<WeylGroup> = std::sync::OnceLock::new();
    W.get_or_init(|| WeylGroup::build(rs()))
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=7).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
}

fn monic(deg: std::ops::RangeInclusive<usize>, c: i64) -> impl Strategy<Value = IntPoly> {
    deg.prop_flat_map(move |d| prop::collection::vec(-c..=c, d))
        .prop_map(|mut v| {
            v.push(1);
            IntPoly::from_i64(&v)
        })
}

fn small_word() -> impl Strategy<Value = GeneratorWord> {
    prop::collection::vec((0..NUM_ROOTS, -2i64..=2), 1..6).prop_map(|ls| {
        GeneratorWord::new(ls.into_iter().map(|(root, u)| Letter { root, u }).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn charpoly_matches_berkowitz(rows in small_matrix()) {
        let cp = charpoly_exact(&IntMatrix::from_rows(&rows)).unwrap();
        let want = berkowitz(&rows);
        prop_assert_eq!(cp.coeffs(), want.as_slice());
    }

    #[test]
    fn charpoly_reduces_to_modular_charpoly(rows in small_matrix(), p in prop::sample::select(vec![2u64, 3, 7, 101, 65521])) {
        let m = IntMatrix::from_rows(&rows);
        let cp = charpoly_exact(&m).unwrap();
        prop_assert_eq!(cp.reduce(p), charpoly_mod(&m.to_mod_matrix(Zp::new(p))));
    }

    #[test]
    fn crt_recovers_signed_values(vals in prop::collection::vec(any::<i32>(), 1..10)) {
        let primes = [2147483647u64, 2147483629, 2147483587];
        let residues: Vec<Vec<u64>> = primes
            .iter()
            .map(|&p| vals.iter().map(|&v| Zp::new(p).from_i64(v as i64)).collect())
            .collect();
        let back = reconstruct(&primes, &residues);
        let want: Vec<BigInt> = vals.iter().map(|&v| BigInt::from(v)).collect();
        prop_assert_eq!(back, want);
    }

    #[test]
    fn reciprocal_round_trip(q in monic(0..=12, 50)) {
        let p = reciprocal_expand(&q);
        prop_assert!(p.is_palindromic());
        prop_assert_eq!(p.degree(), q.degree().map(|d| 2 * d));
        prop_assert_eq!(reciprocal_transform(&p).unwrap(), q);
    }

    #[test]
    fn squarefree_patterns_account_for_the_degree(f in monic(1..=40, 20), p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 101])) {
        let pat = factor_degree_pattern(&f, p).unwrap();
        if pat.squarefree {
            prop_assert_eq!(pat.total_degree(), f.degree().unwrap());
        }
    }

    #[test]
    fn poly_files_round_trip(f in monic(0..=30, 1_000_000)) {
        let mut buf = Vec::new();
        write_poly(&f, &mut buf).unwrap();
        let back = read_poly(buf.as_slice()).unwrap();
        let mut again = Vec::new();
        write_poly(&back, &mut again).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(buf, again);
    }

    #[test]
    fn word_files_round_trip(w in small_word()) {
        prop_assert_eq!(w.to_string().parse::<GeneratorWord>().unwrap(), w);
    }

    #[test]
    fn root_unipotents_are_cubically_nilpotent(root in 0..NUM_ROOTS, u in -3i64..=3) {
        let n = group().ad_unipotent(root, u).sub(&SparseMatrix::identity(DIM));
        prop_assert!(n.mul(&n).mul(&n).is_zero());
    }

    #[test]
    fn structure_constants_are_units(a in 0..NUM_ROOTS, b in 0..NUM_ROOTS) {
        let n = group().algebra().constants().n(a, b);
        match rs().root_sum_index(a, b) {
            Some(_) => prop_assert_eq!(n.abs(), 1),
            None => prop_assert_eq!(n, 0),
        }
    }

    #[test]
    fn reflections_are_involutions(b in 0..NUM_ROOTS, a in 0..NUM_ROOTS) {
        let r = rs();
        prop_assert_eq!(r.reflect_root(r.reflect_root(b, a), a), b);
        prop_assert_eq!(r.reflect_root(a, a), r.negation(a));
    }

    #[test]
    fn weyl_elements_commute_with_negation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = weyl().bsgs().random_element(&mut rng);
        let h = weyl().bsgs().random_element(&mut rng);
        prop_assert!(g.commutes_with_negation(rs()));
        prop_assert!(weyl().bsgs().contains(&g.then(&h)));
        prop_assert!(g.then(&g.inverse()).is_identity());
    }

    #[test]
    fn word_inverse_cancels(w in small_word()) {
        let m = group().word_product(&w.concat(&w.inverse()));
        prop_assert_eq!(m, IntMatrix::identity(DIM));
    }
}
