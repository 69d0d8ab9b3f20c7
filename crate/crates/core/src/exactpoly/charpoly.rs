//! Characteristic polynomials: Hessenberg reduction over `F_p`, and exact
//! integer results by multi-modular reconstruction.

use rayon::prelude::*;

use super::crt::{reconstruct, CrtPlan};
use super::IntPoly;
use crate::error::{Error, Result};
use crate::matrix::{big_log2, IntMatrix, ModMatrix};
use crate::zp::Zp;

/// `det(T − M) mod p`, ascending and monic of degree `n`.
///
/// The matrix is brought to upper Hessenberg form by similarity transforms
/// with row pivoting, which only ever divides by a nonzero pivot, and the
/// polynomial is then read off by the usual three-term recurrence.
pub fn charpoly_mod(m: &ModMatrix) -> Vec<u64> {
    let n = m.dim();
    let zp = m.modulus();
    let mut a = m.data().to_vec();
    if n == 0 {
        return vec![1];
    }

    for k in 0..n.saturating_sub(2) {
        let piv = match (k + 1..n).find(|&i| a[i * n + k] != 0) {
            Some(i) => i,
            None => continue,
        };
        if piv != k + 1 {
            let r = k + 1;
            for c in 0..n {
                a.swap(piv * n + c, r * n + c);
            }
            for row in 0..n {
                a.swap(row * n + piv, row * n + r);
            }
        }
        let inv = zp.inv(a[(k + 1) * n + k]);
        // multipliers from the untouched column k
        let cs: Vec<(usize, u64)> = ((k + 2)..n)
            .filter_map(|i| {
                let x = a[i * n + k];
                (x != 0).then(|| (i, zp.mul(x, inv)))
            })
            .collect();
        if cs.is_empty() {
            continue;
        }
        // rows: row_i −= c_i·row_{k+1}; these commute, all reading row k+1
        let src: Vec<u64> = a[(k + 1) * n + k..(k + 2) * n].to_vec();
        for &(i, c) in &cs {
            let nc = zp.p() - c;
            let dst = &mut a[i * n + k..(i + 1) * n];
            for (d, &s) in dst.iter_mut().zip(&src) {
                *d = zp.reduce(*d + nc * s);
            }
        }
        // columns: col_{k+1} += Σ c_i·col_i, one pass per row
        let p = u128::from(zp.p());
        for row in a.chunks_exact_mut(n) {
            let mut acc = u128::from(row[k + 1]);
            for &(i, c) in &cs {
                acc += u128::from(c * row[i]);
            }
            row[k + 1] = (acc % p) as u64;
        }
    }

    // polys[m] = characteristic polynomial of the leading m×m block
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for mi in 1..=n {
        let h = |r: usize, c: usize| a[(r - 1) * n + (c - 1)];
        let prev = &polys[mi - 1];
        let mut cur = vec![0u64; mi + 1];
        let hmm = h(mi, mi);
        for (k, &c) in prev.iter().enumerate() {
            cur[k + 1] = zp.add(cur[k + 1], c);
            cur[k] = zp.sub(cur[k], zp.mul(hmm, c));
        }
        let mut t = 1u64;
        for i in (1..mi).rev() {
            t = zp.mul(t, h(i + 1, i));
            if t == 0 {
                break;
            }
            let coef = zp.mul(h(i, mi), t);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[i - 1].iter().enumerate() {
                cur[k] = zp.sub(cur[k], zp.mul(coef, c));
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}

/// `log₂` of a bound on every coefficient of `det(T − M)`.
///
/// The coefficient of `T^{n−k}` is a signed sum of the `C(n,k)` principal
/// `k×k` minors, each bounded by Hadamard's inequality by the product of its
/// row norms, hence by the product of the `k` largest row norms of `M`.
pub fn charpoly_bound_log2(m: &IntMatrix) -> f64 {
    let n = m.dim();
    let mut norms = m.row_norm_log2();
    norms.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut best = 0f64;
    let mut log_binom = 0f64;
    let mut prod = 0f64;
    for k in 1..=n {
        log_binom += ((n - k + 1) as f64).log2() - (k as f64).log2();
        prod += norms[k - 1];
        if prod == f64::NEG_INFINITY {
            break;
        }
        best = best.max(log_binom + prod);
    }
    best
}

/// Exact `det(T − M)` over the integers.
pub fn charpoly_exact(m: &IntMatrix) -> Result<IntPoly> {
    let plan = CrtPlan::new(charpoly_bound_log2(m), 2, |_| false);
    charpoly_with_plan(m, &plan)
}

pub fn charpoly_with_plan(m: &IntMatrix, plan: &CrtPlan) -> Result<IntPoly> {
    let residues: Vec<Vec<u64>> = plan
        .primes
        .par_iter()
        .map(|&p| charpoly_mod(&m.to_mod_matrix(Zp::new(p))))
        .collect();
    let coeffs = reconstruct(&plan.primes, &residues);
    let poly = IntPoly::new(coeffs);
    for &q in &plan.control {
        let zq = Zp::new(q);
        if charpoly_mod(&m.to_mod_matrix(zq)) != poly.reduce(q) {
            return Err(Error::ControlMismatch { prime: q });
        }
    }
    Ok(poly)
}

/// Magnitude of the largest coefficient of a polynomial in bits.
pub fn max_coeff_log2(p: &IntPoly) -> f64 {
    p.coeffs()
        .iter()
        .filter(|c| c.bits() > 0)
        .map(big_log2)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_companion() {
        let zp = Zp::new(5);
        let id = ModMatrix::identity(2, zp);
        // (T−1)² = T² − 2T + 1
        assert_eq!(charpoly_mod(&id), vec![1, zp.from_i64(-2), 1]);
        let zp = Zp::new(7);
        // companion of T³ + 2T + 1
        let c = ModMatrix::from_rows(&[vec![0, 0, -1], vec![1, 0, -2], vec![0, 1, 0]], zp);
        assert_eq!(charpoly_mod(&c), vec![1, 2, 0, 1]);
    }

    #[test]
    fn pivoting_needed() {
        // zero subdiagonal entry forces a swap
        let zp = Zp::new(11);
        let m = ModMatrix::from_rows(&[vec![1, 2, 3], vec![0, 4, 5], vec![6, 7, 8]], zp);
        // det(T−M) = T³ − 13T² − 9T + 15 by cofactor expansion
        let want: Vec<u64> = [15i64, -9, -13, 1]
            .iter()
            .map(|&v| zp.from_i64(v))
            .collect();
        assert_eq!(charpoly_mod(&m), want);
    }

    #[test]
    fn exact_small() {
        let m = IntMatrix::from_rows(&[vec![2, -1], vec![1, 3]]);
        let cp = charpoly_exact(&m).unwrap();
        assert_eq!(cp, IntPoly::from_i64(&[7, -5, 1]));
        let id = IntMatrix::identity(6);
        let cp = charpoly_exact(&id).unwrap();
        assert_eq!(cp, IntPoly::from_i64(&[1, -6, 15, -20, 15, -6, 1]));
    }
}
