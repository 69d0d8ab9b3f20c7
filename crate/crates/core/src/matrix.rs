//! Exact square matrices: sparse `i64` triplets, dense big-integer and dense
//! residues modulo a prime.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::zp::Zp;

/// Sparse square matrix as row-major `(row, col, value)` triplets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    /// Builds from unsorted triplets; duplicates are summed and zeros dropped.
    pub fn from_triplets(n: usize, mut entries: Vec<(usize, usize, i64)>) -> Self {
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, i64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            assert!(r < n && c < n, "entry ({r},{c}) out of range");
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != 0);
        SparseMatrix { n, entries: merged }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            n,
            entries: (0..n).map(|i| (i, i, 1)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries
            .binary_search_by_key(&(r, c), |&(a, b, _)| (a, b))
            .map(|k| self.entries[k].2)
            .unwrap_or(0)
    }

    pub fn trace(&self) -> i64 {
        self.entries
            .iter()
            .filter(|e| e.0 == e.1)
            .map(|e| e.2)
            .sum()
    }

    pub fn max_abs(&self) -> i64 {
        self.entries.iter().map(|e| e.2.abs()).max().unwrap_or(0)
    }

    pub fn scale(&self, k: i64) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|&(r, c, v)| (r, c, v.checked_mul(k).expect("sparse entry overflow")))
            .collect();
        SparseMatrix::from_triplets(self.n, entries)
    }

    pub fn add(&self, other: &SparseMatrix) -> Self {
        assert_eq!(self.n, other.n);
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        SparseMatrix::from_triplets(self.n, e)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &SparseMatrix) -> Self {
        assert_eq!(self.n, other.n);
        let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.n];
        for &(r, c, v) in &other.entries {
            rows[r].push((c, v));
        }
        let mut out = Vec::new();
        for &(r, k, v) in &self.entries {
            for &(c, w) in &rows[k] {
                out.push((r, c, v.checked_mul(w).expect("sparse entry overflow")));
            }
        }
        SparseMatrix::from_triplets(self.n, out)
    }

    /// Exact division of every entry, or `None` if some entry is not divisible.
    pub fn div_exact(&self, d: i64) -> Option<Self> {
        if self.entries.iter().any(|e| e.2 % d != 0) {
            return None;
        }
        Some(SparseMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|&(r, c, v)| (r, c, v / d))
                .collect(),
        })
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n);
        for &(r, c, v) in &self.entries {
            m.data[r * self.n + c] = BigInt::from(v);
        }
        m
    }

    pub fn to_mod_matrix(&self, zp: Zp) -> ModMatrix {
        let mut m = ModMatrix::zeros(self.n, zp);
        for &(r, c, v) in &self.entries {
            m.data[r * self.n + c] = zp.from_i64(v);
        }
        m
    }
}

/// Dense square matrix with arbitrary-precision entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * n + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.n + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    /// `self · s` for a sparse right factor.
    pub fn mul_sparse(&self, s: &SparseMatrix) -> IntMatrix {
        assert_eq!(self.n, s.dim());
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for &(k, c, v) in s.entries() {
            let v = BigInt::from(v);
            for r in 0..n {
                let a = &self.data[r * n + k];
                if !a.is_zero() {
                    out.data[r * n + c] += a * &v;
                }
            }
        }
        out
    }

    pub fn to_mod_matrix(&self, zp: Zp) -> ModMatrix {
        let p = BigInt::from(zp.p());
        let data = self
            .data
            .iter()
            .map(|v| {
                if let Some(x) = v.to_i64() {
                    zp.from_i64(x)
                } else {
                    let r: BigInt = ((v % &p) + &p) % &p;
                    r.to_u64().unwrap()
                }
            })
            .collect();
        ModMatrix {
            n: self.n,
            zp,
            data,
        }
    }

    /// Euclidean norm of each row as `log₂`, rounded up.
    pub fn row_norm_log2(&self) -> Vec<f64> {
        (0..self.n)
            .map(|r| {
                let sq: BigInt = self.row(r).iter().map(|v| v * v).sum();
                if sq.is_zero() {
                    f64::NEG_INFINITY
                } else {
                    big_log2(&sq) / 2.0
                }
            })
            .collect()
    }
}

/// `log₂ |v|` for a nonzero big integer.
pub fn big_log2(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 53 {
        return v.abs().to_f64().unwrap().log2();
    }
    let shift = bits - 53;
    let top: BigInt = v.abs() >> shift;
    top.to_f64().unwrap().log2() + shift as f64
}

/// Dense square matrix modulo a prime, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    n: usize,
    zp: Zp,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(n: usize, zp: Zp) -> Self {
        ModMatrix {
            n,
            zp,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize, zp: Zp) -> Self {
        let mut m = Self::zeros(n, zp);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>], zp: Zp) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n, zp);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * n + j] = zp.from_i64(v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Zp {
        self.zp
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.n + c] = v;
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul_sparse(&self, s: &SparseMatrix) -> ModMatrix {
        assert_eq!(self.n, s.dim());
        let n = self.n;
        let zp = self.zp;
        let mut out = ModMatrix::zeros(n, zp);
        for &(k, c, v) in s.entries() {
            let v = zp.from_i64(v);
            for r in 0..n {
                let a = self.data[r * n + k];
                if a != 0 {
                    let cell = &mut out.data[r * n + c];
                    *cell = zp.add(*cell, zp.mul(a, v));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let zp = self.zp;
        let mut out = ModMatrix::zeros(n, zp);
        // entries are below 2^31, so each product fits in u64 and a row of
        // partial sums fits comfortably in u128
        let mut acc = vec![0u128; n];
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * n..(k + 1) * n];
                for (d, &b) in acc.iter_mut().zip(orow) {
                    *d += u128::from(a * b);
                }
            }
            let p = u128::from(zp.p());
            for (d, &a) in out.data[i * n..(i + 1) * n].iter_mut().zip(&acc) {
                *d = (a % p) as u64;
            }
        }
        out
    }

    /// `self − c·I`.
    pub fn sub_scalar(&self, c: u64) -> ModMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            let v = out.data[i * self.n + i];
            out.data[i * self.n + i] = self.zp.sub(v, c);
        }
        out
    }

    /// Evaluates a polynomial (ascending residues) at this matrix by Horner.
    pub fn eval_poly(&self, coeffs: &[u64]) -> ModMatrix {
        let mut acc = ModMatrix::zeros(self.n, self.zp);
        for &c in coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.n {
                let v = acc.data[i * self.n + i];
                acc.data[i * self.n + i] = self.zp.add(v, c);
            }
        }
        acc
    }
}
