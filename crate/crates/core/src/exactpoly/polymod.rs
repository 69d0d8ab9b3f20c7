//! Dense univariate polynomials over `F_p`, ascending coefficients.

use std::collections::BTreeMap;

use crate::zp::Zp;

pub type PolyP = Vec<u64>;

pub fn trim(a: &mut PolyP) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn mul(a: &[u64], b: &[u64], zp: Zp) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += u128::from(x * y);
        }
    }
    let p = u128::from(zp.p());
    let mut out: PolyP = acc.into_iter().map(|v| (v % p) as u64).collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], zp: Zp) -> PolyP {
    let n = a.len().max(b.len());
    let mut out: PolyP = (0..n)
        .map(|i| {
            zp.sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], zp: Zp) -> (PolyP, PolyP) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r: PolyP = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = zp.inv(b[db]);
    let mut q = vec![0u64; r.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        let f = zp.mul(c, inv);
        q[k - db] = f;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let idx = k - db + j;
            r[idx] = zp.sub(r[idx], zp.mul(f, bj));
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u64], b: &[u64], zp: Zp) -> PolyP {
    divrem(a, b, zp).1
}

pub fn make_monic(a: &mut PolyP, zp: Zp) {
    trim(a);
    if let Some(&lc) = a.last() {
        let inv = zp.inv(lc);
        for c in a.iter_mut() {
            *c = zp.mul(*c, inv);
        }
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(a: &[u64], b: &[u64], zp: Zp) -> PolyP {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, zp);
        x = y;
        y = r;
    }
    make_monic(&mut x, zp);
    x
}

pub fn derivative(a: &[u64], zp: Zp) -> PolyP {
    let mut out: PolyP = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| zp.mul(c, (k as u64) % zp.p()))
        .collect();
    trim(&mut out);
    out
}

pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], zp: Zp) -> PolyP {
    rem(&mul(a, b, zp), f, zp)
}

pub fn powmod(base: &[u64], mut e: u64, f: &[u64], zp: Zp) -> PolyP {
    let mut acc = rem(&[1], f, zp);
    let mut b = rem(base, f, zp);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, f, zp);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(&b, &b, f, zp);
        }
    }
    acc
}

/// Resultant of `a` and `b` taken with their actual degrees.
pub fn resultant(a: &[u64], b: &[u64], zp: Zp) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut acc = 1u64;
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return zp.mul(acc, zp.pow(b[0], da as u64));
        }
        let r = rem(&a, &b, zp);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        // res(a, b) = (−1)^{da·db} lc(b)^{da − dr} res(b, r)
        if (da * db) % 2 == 1 {
            acc = zp.neg(acc);
        }
        acc = zp.mul(acc, zp.pow(b[db], (da - dr) as u64));
        a = b;
        b = r;
    }
}

/// Matrix of the Frobenius `h ↦ h^p` on `F_p[x]/(f)`: row `i` holds
/// `x^{ip} mod f`. `f` must be monic of degree ≥ 1.
fn frobenius_rows(f: &[u64], zp: Zp) -> Vec<PolyP> {
    let n = f.len() - 1;
    let p = zp.p();
    let mut rows = Vec::with_capacity(n);
    let mut cur = vec![0u64; n];
    cur[0] = 1;
    rows.push(cur.clone());
    if (p as usize) < 2 * n {
        // multiply by x, p times per row
        let shift = |v: &mut Vec<u64>| {
            let top = v[n - 1];
            for k in (1..n).rev() {
                v[k] = zp.sub(v[k - 1], zp.mul(top, f[k]));
            }
            v[0] = zp.neg(zp.mul(top, f[0]));
        };
        for _ in 1..n {
            for _ in 0..p {
                shift(&mut cur);
            }
            rows.push(cur.clone());
        }
    } else {
        let xp = powmod(&[0, 1], p, f, zp);
        let mut c = rows[0].clone();
        trim(&mut c);
        for _ in 1..n {
            c = mulmod(&c, &xp, f, zp);
            let mut padded = c.clone();
            padded.resize(n, 0);
            rows.push(padded);
        }
    }
    rows
}

fn apply_frobenius(h: &[u64], rows: &[PolyP], zp: Zp) -> PolyP {
    let n = rows.len();
    let mut acc = vec![0u128; n];
    for (i, &c) in h.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (a, &r) in acc.iter_mut().zip(&rows[i]) {
            *a += u128::from(c * r);
        }
    }
    let p = u128::from(zp.p());
    let mut out: PolyP = acc.into_iter().map(|v| (v % p) as u64).collect();
    trim(&mut out);
    out
}

/// Distinct-degree factorization of a monic squarefree `f`: map from
/// irreducible-factor degree to the number of such factors.
pub fn distinct_degree_pattern(f: &[u64], zp: Zp) -> BTreeMap<usize, usize> {
    let mut f = f.to_vec();
    make_monic(&mut f, zp);
    let mut out = BTreeMap::new();
    let n = match degree(&f) {
        None | Some(0) => return out,
        Some(n) => n,
    };
    if n == 1 {
        out.insert(1, 1);
        return out;
    }
    let rows = frobenius_rows(&f, zp);
    let mut rest = f.clone();
    let mut h: PolyP = vec![0, 1];
    let mut d = 0usize;
    while let Some(dr) = degree(&rest) {
        if dr == 0 {
            break;
        }
        d += 1;
        if 2 * d > dr {
            *out.entry(dr).or_insert(0) += 1;
            break;
        }
        h = apply_frobenius(&h, &rows, zp);
        let g = gcd(&rest, &sub(&h, &[0, 1], zp), zp);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 {
            debug_assert_eq!(dg % d, 0);
            out.insert(d, dg / d);
            rest = divrem(&rest, &g, zp).0;
        }
    }
    out
}
