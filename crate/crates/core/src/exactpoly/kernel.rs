//! Exact kernels of `M − Id` from modular row reduction.
//!
//! The reduced row echelon basis of a rational kernel is unique, so its
//! entries can be lifted from residues by CRT and rational reconstruction.
//! Every lifted vector is then checked with exact integer arithmetic, which
//! makes the result independent of how lucky the chosen primes were.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::crt::CrtAccumulator;
use crate::matrix::IntMatrix;
use crate::zp::{primes_below, Zp, CRT_PRIME_CEILING};

/// Pivot columns and the kernel basis (one vector per free column) of
/// `M − c·Id` modulo `p`.
fn kernel_mod(m: &IntMatrix, c: i64, zp: Zp) -> (Vec<usize>, Vec<Vec<u64>>) {
    let n = m.dim();
    let mut a = m
        .to_mod_matrix(zp)
        .sub_scalar(zp.from_i64(c))
        .data()
        .to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(piv) = (row..n).find(|&r| a[r * n + col] != 0) else {
            continue;
        };
        for j in 0..n {
            a.swap(piv * n + j, row * n + j);
        }
        let inv = zp.inv(a[row * n + col]);
        for j in 0..n {
            a[row * n + j] = zp.mul(a[row * n + j], inv);
        }
        let prow: Vec<u64> = a[row * n..(row + 1) * n].to_vec();
        for r in 0..n {
            let f = a[r * n + col];
            if r != row && f != 0 {
                let nf = zp.p() - f;
                for j in col..n {
                    a[r * n + j] = zp.reduce(a[r * n + j] + nf * prow[j]);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = zp.neg(a[i * n + f]);
            }
            v
        })
        .collect();
    (pivots, basis)
}

/// `a/b ≡ r (mod N)` with `|a|, b ≤ √(N/2)`, if it exists.
pub fn rational_reconstruct(r: &BigInt, modulus: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (modulus >> 1u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), r.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (a, b) = if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    (a.gcd(&b).is_one()).then_some((a, b))
}

/// Integer vectors spanning `ker(M − c·Id)` over `Q`, each verified exactly.
/// Returns `None` if the lift does not stabilise within `max_primes` primes.
pub fn exact_eigenspace(m: &IntMatrix, c: i64, max_primes: usize) -> Option<Vec<Vec<BigInt>>> {
    let n = m.dim();
    let mut shape: Option<Vec<usize>> = None;
    let mut acc: Vec<Vec<CrtAccumulator>> = Vec::new();
    let mut modulus = BigInt::one();
    for p in primes_below(CRT_PRIME_CEILING - (1 << 22)).take(max_primes) {
        let zp = Zp::new(p);
        let (pivots, basis) = kernel_mod(m, c, zp);
        match &shape {
            // unlucky primes show a larger kernel; skip them
            Some(s) if pivots.len() < s.len() => continue,
            Some(s) if pivots != *s => {
                acc.clear();
                modulus = BigInt::one();
                shape = Some(pivots);
            }
            None => shape = Some(pivots),
            _ => {}
        }
        if acc.is_empty() {
            acc = vec![vec![CrtAccumulator::default(); n]; basis.len()];
        }
        for (a, v) in acc.iter_mut().zip(&basis) {
            for (x, &r) in a.iter_mut().zip(v) {
                x.push(r, p);
            }
        }
        modulus *= p;
        if let Some(vs) = lift(&acc, &modulus) {
            if vs.iter().all(|v| is_eigenvector(m, c, v)) {
                return Some(vs);
            }
        }
    }
    None
}

fn lift(acc: &[Vec<CrtAccumulator>], modulus: &BigInt) -> Option<Vec<Vec<BigInt>>> {
    acc.iter()
        .map(|a| {
            let fracs: Option<Vec<(BigInt, BigInt)>> = a
                .iter()
                .map(|x| rational_reconstruct(&x.symmetric(), modulus))
                .collect();
            let fracs = fracs?;
            let den = fracs.iter().fold(BigInt::one(), |l, (_, b)| l.lcm(b));
            Some(fracs.into_iter().map(|(a, b)| a * (&den / b)).collect())
        })
        .collect()
}

fn is_eigenvector(m: &IntMatrix, c: i64, v: &[BigInt]) -> bool {
    let n = m.dim();
    let c = BigInt::from(c);
    (0..n).all(|r| {
        let s: BigInt = m
            .row(r)
            .iter()
            .zip(v)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum();
        s == &c * &v[r]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_fractions() {
        let n = BigInt::from(1_000_003u64);
        let r = BigInt::from(3) * BigInt::from(7).modpow(&(&n - 2), &n) % &n;
        assert_eq!(
            rational_reconstruct(&r, &n),
            Some((BigInt::from(3), BigInt::from(7)))
        );
        assert_eq!(
            rational_reconstruct(&BigInt::from(-5), &n),
            Some((BigInt::from(-5), BigInt::one()))
        );
    }

    #[test]
    fn eigenspaces() {
        // block diag(1, 1, [[2, 1], [0, 3]]) conjugated by a shear
        let m = IntMatrix::from_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 2, 1],
            vec![0, 0, 0, 3],
        ]);
        let k = exact_eigenspace(&m, 1, 4).unwrap();
        assert_eq!(k.len(), 2);
        // a Jordan block has a one-dimensional eigenspace
        let j = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(exact_eigenspace(&j, 1, 4).unwrap().len(), 1);
        // rational kernel vector with a denominator
        let r = IntMatrix::from_rows(&[vec![4, 3], vec![0, 1]]);
        let v = exact_eigenspace(&r, 1, 4).unwrap();
        assert_eq!(v, vec![vec![BigInt::from(-1), BigInt::from(1)]]);
    }
}
