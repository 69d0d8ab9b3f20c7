//! Integer polynomials and the exact kernels built on them.

pub mod charpoly;
pub mod crt;
pub mod kernel;
pub mod polymod;

mod disc;
mod io;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, ModMatrix};
use crate::zp::{primes_below, Zp, CRT_PRIME_CEILING};

pub use charpoly::{charpoly_exact, charpoly_mod};
pub use disc::{
    check_divisors, discriminant_bound_log2, discriminant_exact, discriminant_mod,
    parse_prime_powers, DivisorReport,
};
pub use io::{read_poly, write_poly};

/// Polynomial over `Z` with ascending coefficients and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// `(T − 1)^k`.
    pub fn unit_power(k: usize) -> Self {
        let mut p = IntPoly::from_i64(&[1]);
        for _ in 0..k {
            p = p.mul(&IntPoly::from_i64(&[-1, 1]));
        }
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce(&self, p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.coeffs.iter().map(|c| crt::big_mod(c, p)).collect();
        polymod::trim(&mut v);
        v
    }

    /// Whether `c_k = c_{d−k}` for all `k`.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }

    /// Synthetic division by `T − 1`, returning quotient and remainder.
    fn div_unit(&self) -> (IntPoly, BigInt) {
        let n = self.coeffs.len();
        if n == 0 {
            return (IntPoly::zero(), BigInt::zero());
        }
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for k in (0..n).rev() {
            carry += &self.coeffs[k];
            if k > 0 {
                q[k - 1] = carry.clone();
            }
        }
        (IntPoly::new(q), carry)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "T".to_string(),
                (1, false) => format!("{mag}*T"),
                (_, true) => format!("T^{k}"),
                (_, false) => format!("{mag}*T^{k}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Quotient of [`strip_unit_eigenvalue`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stripped {
    pub quotient: IntPoly,
    /// `quotient(1) == 0`: eigenvalue 1 has multiplicity above `k`.
    pub vanishes_at_one: bool,
}

/// Divides `cp` by `(T − 1)^k`, which must divide it exactly.
pub fn strip_unit_eigenvalue(cp: &IntPoly, k: usize) -> Result<Stripped> {
    let mut q = cp.clone();
    for _ in 0..k {
        let (next, r) = q.div_unit();
        if !r.is_zero() || q.is_zero() {
            return Err(Error::UnitMultiplicity { expected: k });
        }
        q = next;
    }
    let vanishes_at_one = q.div_unit().1.is_zero();
    Ok(Stripped {
        quotient: q,
        vanishes_at_one,
    })
}

/// Divides out the largest power of `(T − 1)`; returns the power and the
/// quotient.
pub fn strip_unit_maximal(cp: &IntPoly) -> (usize, IntPoly) {
    let mut q = cp.clone();
    let mut k = 0;
    while !q.is_zero() {
        let (next, r) = q.div_unit();
        if !r.is_zero() {
            break;
        }
        q = next;
        k += 1;
    }
    (k, q)
}

/// The unique `Q` of degree `m` with `P(T) = T^m · Q(T + T⁻¹)` for a
/// palindromic `P` of degree `2m`.
pub fn reciprocal_transform(p: &IntPoly) -> Result<IntPoly> {
    let d = p.degree().ok_or(Error::DegeneratePoly("zero"))?;
    if d % 2 != 0 || !p.is_palindromic() {
        return Err(Error::NotPalindromic);
    }
    let m = d / 2;
    // T^{−m}·P = c_m + Σ_{j≥1} c_{m+j}(T^j + T^{−j}), and T^j + T^{−j} = p_j(t)
    // with p_0 = 2, p_1 = t, p_j = t·p_{j−1} − p_{j−2}.
    let t = IntPoly::from_i64(&[0, 1]);
    let mut q = IntPoly::new(vec![p.coeff(m)]);
    let mut prev = IntPoly::from_i64(&[2]);
    let mut cur = t.clone();
    for j in 1..=m {
        q = q.add(&cur.scale(&p.coeff(m + j)));
        let next = t.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    Ok(q)
}

/// `T^m · Q(T + T⁻¹)` for `Q` of degree `m`, expanded through
/// `Σ q_j T^{m−j} (T² + 1)^j`.
pub fn reciprocal_expand(q: &IntPoly) -> IntPoly {
    let m = match q.degree() {
        None => return IntPoly::zero(),
        Some(m) => m,
    };
    let mut out = vec![BigInt::zero(); 2 * m + 1];
    let mut binom = vec![BigInt::one()];
    for j in 0..=m {
        // binom = coefficients of (1 + X)^j
        let qj = q.coeff(j);
        if !qj.is_zero() {
            for (i, b) in binom.iter().enumerate() {
                out[m - j + 2 * i] += &qj * b;
            }
        }
        let mut next = vec![BigInt::one(); j + 2];
        for i in 1..=j {
            next[i] = &binom[i - 1] + &binom[i];
        }
        binom = next;
    }
    IntPoly::new(out)
}

impl IntPoly {
    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

/// Multiset of irreducible-factor degrees of a polynomial modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPattern {
    pub prime: u64,
    pub squarefree: bool,
    /// Degree → number of irreducible factors of that degree; empty when
    /// the reduction is not squarefree.
    pub degrees: BTreeMap<usize, usize>,
}

impl FactorPattern {
    pub fn total_degree(&self) -> usize {
        self.degrees.iter().map(|(d, c)| d * c).sum()
    }

    pub fn is(&self, pattern: &[(usize, usize)]) -> bool {
        self.squarefree && self.degrees == pattern.iter().copied().collect()
    }
}

/// Degree pattern of `P mod p` via squarefreeness and distinct-degree
/// factorization.
pub fn factor_degree_pattern(p: &IntPoly, prime: u64) -> Result<FactorPattern> {
    let zp = Zp::new(prime);
    let f = p.reduce(prime);
    if f.len() != p.coeffs().len() {
        return Err(Error::BadPrime(prime));
    }
    Ok(pattern_of_residues(&f, zp))
}

/// Same as [`factor_degree_pattern`] for an already-reduced polynomial.
pub fn pattern_of_residues(f: &[u64], zp: Zp) -> FactorPattern {
    let mut f = f.to_vec();
    polymod::make_monic(&mut f, zp);
    let d = polymod::derivative(&f, zp);
    let g = polymod::gcd(&f, &d, zp);
    let squarefree = !d.is_empty() && g.len() == 1 || f.len() == 1;
    let degrees = if squarefree {
        polymod::distinct_degree_pattern(&f, zp)
    } else {
        BTreeMap::new()
    };
    FactorPattern {
        prime: zp.p(),
        squarefree,
        degrees,
    }
}

/// Subset sums of a degree multiset.
pub fn subset_sums(pattern: &FactorPattern) -> BTreeSet<usize> {
    let n = pattern.total_degree();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for (&d, &count) in &pattern.degrees {
        for _ in 0..count {
            for s in (d..=n).rev() {
                if reach[s - d] {
                    reach[s] = true;
                }
            }
        }
    }
    reach
        .iter()
        .enumerate()
        .filter(|(_, &r)| r)
        .map(|(s, _)| s)
        .collect()
}

/// Intersection of the subset-sum sets of several squarefree patterns:
/// the possible degrees of a factor over `Q`. Non-squarefree patterns are
/// skipped.
pub fn factor_degree_sieve(patterns: &[FactorPattern]) -> BTreeSet<usize> {
    let mut out: Option<BTreeSet<usize>> = None;
    for pat in patterns.iter().filter(|p| p.squarefree) {
        let sums = subset_sums(pat);
        out = Some(match out {
            None => sums,
            Some(acc) => acc.intersection(&sums).copied().collect(),
        });
    }
    out.unwrap_or_default()
}

/// Feasible degrees strictly between `0` and `deg P`.
pub fn proper_factor_degrees(sieve: &BTreeSet<usize>, degree: usize) -> BTreeSet<usize> {
    sieve
        .iter()
        .copied()
        .filter(|&d| d != 0 && d != degree)
        .collect()
}

/// Result of the sieve scan over primes.
#[derive(Clone, Debug, Serialize)]
pub struct SieveReport {
    pub patterns: Vec<FactorPattern>,
    pub feasible: BTreeSet<usize>,
    pub irreducible: bool,
}

/// Applies the sieve to `initial` primes, then scans further primes upward
/// from `scan_from` until the feasible proper-degree set is empty or
/// `budget` extra primes have been tried.
pub fn irreducibility_scan(
    p: &IntPoly,
    initial: &[u64],
    scan_from: u64,
    budget: usize,
) -> Result<SieveReport> {
    let deg = p.degree().ok_or(Error::DegeneratePoly("zero"))?;
    let mut patterns = Vec::new();
    for &q in initial {
        patterns.push(factor_degree_pattern(p, q)?);
    }
    let mut feasible = proper_factor_degrees(&factor_degree_sieve(&patterns), deg);
    let mut tried = 0;
    let mut q = scan_from;
    while !feasible.is_empty() && tried < budget {
        if crate::zp::is_prime(q) && !initial.contains(&q) {
            tried += 1;
            if let Ok(pat) = factor_degree_pattern(p, q) {
                if pat.squarefree {
                    let next = proper_factor_degrees(&factor_degree_sieve(std::slice::from_ref(&pat)), deg);
                    let shrinks = feasible.iter().any(|d| !next.contains(d));
                    if shrinks {
                        feasible = feasible.intersection(&next).copied().collect();
                        patterns.push(pat);
                    }
                }
            }
        }
        q += 1;
    }
    let irreducible = feasible.is_empty() && patterns.iter().any(|pt| pt.squarefree);
    Ok(SieveReport {
        patterns,
        feasible,
        irreducible,
    })
}

/// Outcome of [`annihilation_check`].
#[derive(Clone, Debug, Serialize)]
pub struct AnnihilationReport {
    pub holds: bool,
    pub primes: Vec<u64>,
    /// The primes' product exceeds twice the entry bound of `(M − Id)·P(M)`,
    /// so vanishing modulo all of them proves vanishing over `Z`.
    pub exhaustive: bool,
}

/// `log₂` of a bound on the entries of `(M − Id)·P(M)`.
pub fn annihilation_bound_log2(m: &IntMatrix, p: &IntPoly) -> f64 {
    // ‖M‖∞ bounds the entries of every power through the max row sum.
    let n = m.dim();
    let row_sum = (0..n)
        .map(|r| m.row(r).iter().map(|v| v.abs()).sum::<BigInt>())
        .max()
        .unwrap_or_default();
    let r = if row_sum.is_zero() {
        0.0
    } else {
        crate::matrix::big_log2(&row_sum)
    }
    .max(0.0);
    let cmax = charpoly::max_coeff_log2(p);
    let d = p.degree().unwrap_or(0) as f64;
    // Σ|p_k|‖M‖^k ≤ (d+1)·max|p_k|·‖M‖^d, then one more factor ‖M − Id‖.
    cmax + (d + 1.0).log2() + d * r + (r.exp2() + 1.0).log2() + (n as f64).log2()
}

/// Checks `(M − Id)·P(M) = 0` modulo up to `n_primes` fresh primes below
/// 2³¹, exiting at the first nonzero residue matrix or once the primes
/// suffice for a proof.
pub fn annihilation_check(m: &IntMatrix, p: &IntPoly, n_primes: usize) -> AnnihilationReport {
    let bound = annihilation_bound_log2(m, p);
    let mut used = Vec::new();
    let mut credit = 0f64;
    for q in primes_below(CRT_PRIME_CEILING - (1 << 20)).take(n_primes) {
        let zq = Zp::new(q);
        let mm = m.to_mod_matrix(zq);
        used.push(q);
        credit += (q as f64).log2().floor();
        if !annihilates_mod(&mm, &p.reduce(q)) {
            return AnnihilationReport {
                holds: false,
                primes: used,
                exhaustive: true,
            };
        }
        if credit > bound + 1.0 {
            break;
        }
    }
    AnnihilationReport {
        holds: true,
        primes: used,
        exhaustive: credit > bound + 1.0,
    }
}

/// `(M − Id)·P(M) == 0` over `F_p`, with `P(M)` by Paterson–Stockmeyer.
pub fn annihilates_mod(m: &ModMatrix, p: &[u64]) -> bool {
    let pm = eval_poly_ps(m, p);
    pm.mul(&m.sub_scalar(1)).is_zero()
}

/// Polynomial evaluation at a matrix with about `2√d` matrix products.
pub fn eval_poly_ps(m: &ModMatrix, coeffs: &[u64]) -> ModMatrix {
    let n = m.dim();
    let zp = m.modulus();
    if coeffs.is_empty() {
        return ModMatrix::zeros(n, zp);
    }
    let s = ((coeffs.len() as f64).sqrt().ceil() as usize).max(1);
    let mut powers = vec![ModMatrix::identity(n, zp)];
    for _ in 1..=s {
        let next = powers.last().unwrap().mul(m);
        powers.push(next);
    }
    let ms = powers.pop().unwrap();
    let mut acc = ModMatrix::zeros(n, zp);
    for block in coeffs.chunks(s).rev() {
        acc = acc.mul(&ms);
        for (j, &c) in block.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let pj = &powers[j];
            for r in 0..n {
                for col in 0..n {
                    let v = pj.get(r, col);
                    if v != 0 {
                        let cur = acc.get(r, col);
                        acc.set(r, col, zp.add(cur, zp.mul(c, v)));
                    }
                }
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_examples() {
        let tp1 = IntPoly::from_i64(&[1, 1]);
        let s = strip_unit_eigenvalue(&IntPoly::unit_power(8).mul(&tp1), 8).unwrap();
        assert_eq!(s.quotient, tp1);
        assert!(!s.vanishes_at_one);
        let s = strip_unit_eigenvalue(&IntPoly::unit_power(9).mul(&tp1), 8).unwrap();
        assert_eq!(s.quotient, IntPoly::from_i64(&[-1, 0, 1]));
        assert!(s.vanishes_at_one);
        assert!(matches!(
            strip_unit_eigenvalue(&IntPoly::unit_power(7).mul(&tp1), 8),
            Err(Error::UnitMultiplicity { expected: 8 })
        ));
        assert_eq!(
            strip_unit_maximal(&IntPoly::unit_power(5).mul(&tp1)),
            (5, tp1)
        );
    }

    #[test]
    fn reciprocal_examples() {
        let q = reciprocal_transform(&IntPoly::from_i64(&[1, -3, 1])).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[-3, 1]));
        let q = reciprocal_transform(&IntPoly::from_i64(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[-1, 1, 1]));
        assert_eq!(reciprocal_expand(&q), IntPoly::from_i64(&[1, 1, 1, 1, 1]));
        assert!(matches!(
            reciprocal_transform(&IntPoly::from_i64(&[1, 2, 3])),
            Err(Error::NotPalindromic)
        ));
        assert!(reciprocal_transform(&IntPoly::from_i64(&[1, 1])).is_err());
    }

    #[test]
    fn pattern_examples() {
        let pat = factor_degree_pattern(&IntPoly::from_i64(&[1, 0, 1]), 5).unwrap();
        assert!(pat.is(&[(1, 2)]));
        let sq = factor_degree_pattern(&IntPoly::from_i64(&[1, 2, 1]), 5).unwrap();
        assert!(!sq.squarefree);
        assert!(sq.degrees.is_empty());
        assert!(matches!(
            factor_degree_pattern(&IntPoly::from_i64(&[1, 0, 5]), 5),
            Err(Error::BadPrime(5))
        ));
    }

    #[test]
    fn sieve_examples() {
        let a = FactorPattern {
            prime: 7,
            squarefree: true,
            degrees: BTreeMap::from([(4, 2), (8, 29)]),
        };
        let b = FactorPattern {
            prime: 11,
            squarefree: true,
            degrees: BTreeMap::from([(15, 16)]),
        };
        let s = factor_degree_sieve(&[a, b]);
        assert!(s.iter().all(|d| [0, 60, 120, 180, 240].contains(d)));
        let lin = FactorPattern {
            prime: 3,
            squarefree: true,
            degrees: BTreeMap::from([(1, 6)]),
        };
        assert_eq!(factor_degree_sieve(&[lin]), (0..=6).collect());
    }

    #[test]
    fn annihilation_small() {
        let id = IntMatrix::identity(4);
        assert!(annihilation_check(&id, &IntPoly::from_i64(&[1]), 3).holds);
        let comp = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        assert!(!annihilation_check(&comp, &IntPoly::from_i64(&[-1, 1]), 3).holds);
        assert!(annihilation_check(&comp, &IntPoly::from_i64(&[1, 0, 1]), 3).holds);
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[1, -3, 1]).to_string(), "T^2 - 3*T + 1");
    }
}
