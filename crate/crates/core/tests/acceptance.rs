//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.
//!
//! `cargo test -p e8-galois --test acceptance` runs all ten; trailing
//! numbers select a subset, e.g. `-- 3 5`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use e8galois::certify::{self, WalkSpec, TARGET_ODD_4_8, TARGET_REGULAR15};
use e8galois::chevalley::{cocycle_structure_constants, E8Algebra};
use e8galois::exactpoly::{
    annihilation_check, charpoly_exact, charpoly_mod, check_divisors, discriminant_exact,
    factor_degree_pattern, factor_degree_sieve, irreducibility_scan, parse_prime_powers,
    proper_factor_degrees,
};
use e8galois::groupelem::{AdjointGroup, GeneratorWord};
use e8galois::matrix::IntMatrix;
use e8galois::rootsystem::{RootSystem, NUM_ROOTS};
use e8galois::weyl::{CycleType, WeylGroup};
use e8galois::zp::Zp;

use common::{berkowitz, default_charpoly, default_matrix, default_p, group};

// Budgets and tolerances.
const REPRODUCTION_BUDGET: Duration = Duration::from_secs(60);
const PATTERN_BUDGET: Duration = Duration::from_secs(5);
const WEYL_BUDGET: Duration = Duration::from_secs(10);
const DISC_BUDGET: Duration = Duration::from_secs(300);
const SAMPLING_BUDGET: Duration = Duration::from_secs(600);
const SAMPLING_SIGMAS: f64 = 3.0;
const DISC_DIGITS: (usize, usize) = (14940, 14960);

const EXPECTED_NONZEROS: usize = 6661;
const EXPECTED_MAX_ENTRY: i64 = 16;
const WEYL_ORDER: u128 = 696_729_600;
const WEYL_ORDER_FACTORS: [(u128, u32); 4] = [(2, 14), (3, 5), (5, 2), (7, 1)];

/// Published divisors of disc(P); the cofactor is a square.
const DISC_DIVISORS: &str =
    "2^3640 * 3^300 * 5^30 * 73^28 * 109^2 * 113^4 * 131^4 * 331^28 * 419^28 \
    * 1033^4 * 1103^57 * 3307^28 * 4649^4 * 11467^4 * 629569^4 * 87087881^4 * 508141873^2 \
    * 8321263487^28 * 58276913161^2 * 126454995466730813^4 * 202992518210175167^57 \
    * 1644357711723148873333^28 * 17520591390337947024593065297057^2";

/// Spot-check coefficients `(k, coefficient of T^k in Q)` transcribed from
/// the published table. The source text available here does not contain the
/// table, so there is nothing to transcribe.
const Q_TABLE_SPOT_CHECKS: &[(usize, &str)] = &[];

type Verdict = Result<String, String>;

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_1() -> Verdict {
    let t0 = Instant::now();
    let th = certify::reproduce_default(group()).map_err(|e| e.to_string())?;
    let took = t0.elapsed();
    let p = &th.p;
    let q = &th.q;
    let structural = p.degree() == Some(240)
        && p.is_monic()
        && p.is_palindromic()
        && q.degree() == Some(120)
        && q.is_monic()
        && th.certificate.is_certified()
        && took < REPRODUCTION_BUDGET;
    let detail = format!(
        "P degree {:?}, monic {}, self-reciprocal {}; Q degree {:?}, monic {}; certified {}; {:.1?}",
        p.degree(),
        p.is_monic(),
        p.is_palindromic(),
        q.degree(),
        q.is_monic(),
        th.certificate.is_certified(),
        took
    );
    if !structural {
        return Err(detail);
    }
    if Q_TABLE_SPOT_CHECKS.len() < 12 {
        return Err(format!(
            "{detail}; coefficient table unavailable, {} of the required 12 spot checks transcribed",
            Q_TABLE_SPOT_CHECKS.len()
        ));
    }
    let bad: Vec<usize> = Q_TABLE_SPOT_CHECKS
        .iter()
        .filter(|(k, v)| q.coeff(*k) != v.parse::<BigInt>().expect("table literal"))
        .map(|(k, _)| *k)
        .collect();
    check(
        bad.is_empty(),
        format!("{detail}; spot-check mismatches at {bad:?}"),
    )
}

fn criterion_2() -> Verdict {
    let m = default_matrix();
    let nnz = m.nonzero_count();
    let max = m.max_abs();
    check(
        nnz == EXPECTED_NONZEROS && max == BigInt::from(EXPECTED_MAX_ENTRY),
        format!("nonzeros {nnz} (expected {EXPECTED_NONZEROS}), max |entry| {max} (expected {EXPECTED_MAX_ENTRY})"),
    )
}

fn criterion_3() -> Verdict {
    let p = default_p();
    let t0 = Instant::now();
    let p7 = factor_degree_pattern(p, 7).map_err(|e| e.to_string())?;
    let p11 = factor_degree_pattern(p, 11).map_err(|e| e.to_string())?;
    let took = t0.elapsed();
    let ok = p7.squarefree
        && p7.is(&[(4, 2), (8, 29)])
        && p11.squarefree
        && p11.is(&[(15, 16)])
        && took < PATTERN_BUDGET;
    let show = |f: &e8galois::exactpoly::FactorPattern| CycleType(f.degrees.clone()).to_string();
    check(
        ok,
        format!(
            "mod 7 {} (squarefree {}), mod 11 {} (squarefree {}), {:.1?}",
            show(&p7),
            p7.squarefree,
            show(&p11),
            p11.squarefree,
            took
        ),
    )
}

fn factor_u128(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn criterion_4() -> Verdict {
    let t0 = Instant::now();
    let rs = RootSystem::build().map_err(|e| e.to_string())?;
    let w = WeylGroup::build(&rs);
    let order = w.order();
    let factors = factor_u128(order);
    let relations = w.coxeter_relations_hold();
    let c2 = w.coxeter_element().pow(2).cycle_type();
    let odd_sign = CycleType::odd_4_8().signature();
    let took = t0.elapsed();
    let ok = order == WEYL_ORDER
        && factors == WEYL_ORDER_FACTORS
        && relations
        && c2 == CycleType::regular15()
        && odd_sign == -1
        && took < WEYL_BUDGET;
    check(
        ok,
        format!("order {order} = {factors:?}, Coxeter relations {relations}, c^2 {c2}, sign{{4:2, 8:29}} {odd_sign}, {took:.1?}"),
    )
}

fn criterion_5() -> Verdict {
    let t0 = Instant::now();
    let d = discriminant_exact(default_p()).map_err(|e| e.to_string())?;
    let factors = parse_prime_powers(DISC_DIVISORS).map_err(|e| e.to_string())?;
    let rep = check_divisors(&d, &factors);
    let digits = d.magnitude().to_string().len();
    let took = t0.elapsed();
    let ok = rep.divides
        && rep.cofactor_is_square
        && (DISC_DIGITS.0..=DISC_DIGITS.1).contains(&digits)
        && took < DISC_BUDGET;
    check(
        ok,
        format!(
            "divides {}, cofactor square {} ({} digits), |disc| has {digits} digits, {took:.1?}",
            rep.divides, rep.cofactor_is_square, rep.cofactor_digits
        ),
    )
}

fn criterion_6() -> Verdict {
    let base = default_charpoly();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut mismatched = Vec::new();
    for _ in 0..5 {
        let signs: [i64; 8] = std::array::from_fn(|_| if rng.gen::<bool>() { 1 } else { -1 });
        let m = group().word_product(&GeneratorWord::signed_default_word(signs));
        if &charpoly_exact(&m).map_err(|e| e.to_string())? != base {
            mismatched.push(signs);
        }
    }
    let rs = RootSystem::build().map_err(|e| e.to_string())?;
    let sc = cocycle_structure_constants(&rs).map_err(|e| e.to_string())?;
    let cocycle = AdjointGroup::new(E8Algebra::new(rs, sc)).map_err(|e| e.to_string())?;
    let cm = cocycle.word_product(&GeneratorWord::default_word());
    let cocycle_same = &charpoly_exact(&cm).map_err(|e| e.to_string())? == base;
    check(
        mismatched.is_empty() && cocycle_same,
        format!("sign vectors with a different charpoly: {mismatched:?}; cocycle table agrees {cocycle_same}"),
    )
}

fn criterion_7() -> Verdict {
    let alg = group().algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let jacobi = alg.check_jacobi_random(&mut rng, 1000);
    let nilpotent = (0..NUM_ROOTS)
        .filter(|&r| {
            let a = group().ad(r);
            !a.mul(a).mul(a).is_zero()
        })
        .count();
    let ann = annihilation_check(default_matrix(), default_p(), 1000);
    check(
        jacobi.is_ok() && nilpotent == 0 && ann.holds && ann.exhaustive,
        format!(
            "Jacobi on 1000 triples {:?}; roots with ad^3 != 0: {nilpotent}; (M - 1)P(M) = 0 mod {} primes, holds {}, proof {}",
            jacobi.map_err(|e| e.to_string()),
            ann.primes.len(),
            ann.holds,
            ann.exhaustive
        ),
    )
}

fn criterion_8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    for i in 0..50 {
        let rows: Vec<Vec<i64>> = (0..20)
            .map(|_| (0..20).map(|_| rng.gen_range(-100..=100)).collect())
            .collect();
        let m = IntMatrix::from_rows(&rows);
        match charpoly_exact(&m) {
            Err(e) => failures.push(format!("#{i}: {e}")),
            Ok(cp) => {
                if cp.coeffs() != berkowitz(&rows).as_slice() {
                    failures.push(format!("#{i}: differs from oracle"));
                }
                for p in [101, 65521] {
                    let zp = Zp::new(p);
                    if cp.reduce(p) != charpoly_mod(&m.to_mod_matrix(zp)) {
                        failures.push(format!("#{i}: reduction mod {p}"));
                    }
                }
            }
        }
    }
    check(
        failures.is_empty(),
        format!("50 matrices 20x20 in [-100, 100]; failures {failures:?}"),
    )
}

fn within_sigmas(count: usize, n: usize, target: f64) -> (bool, f64) {
    let f = count as f64 / n as f64;
    let sigma = (target * (1.0 - target) / n as f64).sqrt();
    let z = (f - target) / sigma;
    (z.abs() <= SAMPLING_SIGMAS, z)
}

fn criterion_9() -> Verdict {
    let t0 = Instant::now();
    let rs = RootSystem::build().map_err(|e| e.to_string())?;
    let w = WeylGroup::build(&rs);
    let n = 100_000;
    let freq = w.class_frequency_experiment(n, 2024);
    let count = |ct: CycleType| freq.get(&ct).copied().unwrap_or(0);
    let (ok15, z15) = within_sigmas(count(CycleType::regular15()), n, TARGET_REGULAR15);
    let (ok48, z48) = within_sigmas(count(CycleType::odd_4_8()), n, TARGET_ODD_4_8);

    let spec = WalkSpec {
        p: 101,
        steps: 40,
        samples: 5000,
        seed: 2024,
    };
    let walk = certify::walk_statistics(group(), &spec).map_err(|e| e.to_string())?;
    let walk_ok = walk.targets.iter().all(|t| t.within);
    let took = t0.elapsed();
    let targets: Vec<String> = walk
        .targets
        .iter()
        .map(|t| {
            format!(
                "{} {:.4} vs {:.4} ± {:.4}",
                t.cycle_type, t.frequency, t.expected, t.tolerance
            )
        })
        .collect();
    check(
        ok15 && ok48 && walk_ok && took < SAMPLING_BUDGET,
        format!(
            "uniform W: z({{15:16}}) = {z15:.2}, z({{4:2, 8:29}}) = {z48:.2}; walk p=101 k=40 N=5000: {}, degenerate {}, not squarefree {}; {took:.1?}",
            targets.join(", "),
            walk.degenerate,
            walk.not_squarefree
        ),
    )
}

fn criterion_10() -> Verdict {
    let p = default_p();
    let pats = [factor_degree_pattern(p, 7), factor_degree_pattern(p, 11)];
    let pats: Vec<_> = pats
        .into_iter()
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let after_two = proper_factor_degrees(&factor_degree_sieve(&pats), 240);
    let allowed: BTreeSet<usize> = [60, 120, 180].into();
    let scan = irreducibility_scan(p, &[7, 11], 13, 200).map_err(|e| e.to_string())?;
    let extra: Vec<u64> = scan.patterns.iter().skip(2).map(|f| f.prime).collect();
    check(
        after_two.is_subset(&allowed) && scan.irreducible && scan.feasible.is_empty(),
        format!(
            "after 7, 11: {after_two:?}; after {extra:?}: {:?}; irreducible {}",
            scan.feasible, scan.irreducible
        ),
    )
}

fn main() {
    let criteria: [fn() -> Verdict; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let selected: BTreeSet<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = Vec::new();
    for (i, f) in criteria.iter().enumerate() {
        let n = i + 1;
        if !selected.is_empty() && !selected.contains(&n) {
            continue;
        }
        match f() {
            Ok(d) => println!("PASS criterion {n}: {d}"),
            Err(d) => {
                println!("FAIL criterion {n}: {d}");
                failed.push(n);
            }
        }
    }
    if !failed.is_empty() {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: all selected criteria pass");
}
