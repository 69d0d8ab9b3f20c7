//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use e8galois::exactpoly::{charpoly_exact, strip_unit_eigenvalue, IntPoly};
use e8galois::groupelem::{AdjointGroup, GeneratorWord};
use e8galois::matrix::IntMatrix;

pub fn group() -> &'static AdjointGroup {
    static G: OnceLock<AdjointGroup> = OnceLock::new();
    G.get_or_init(|| AdjointGroup::standard().expect("standard group"))
}

/// `Ad(g)` for the default 16-letter word.
pub fn default_matrix() -> &'static IntMatrix {
    static M: OnceLock<IntMatrix> = OnceLock::new();
    M.get_or_init(|| group().word_product(&GeneratorWord::default_word()))
}

/// `det(T − Ad(g))` for the default word.
pub fn default_charpoly() -> &'static IntPoly {
    static C: OnceLock<IntPoly> = OnceLock::new();
    C.get_or_init(|| charpoly_exact(default_matrix()).expect("charpoly"))
}

/// The degree-240 factor `P`.
pub fn default_p() -> &'static IntPoly {
    static P: OnceLock<IntPoly> = OnceLock::new();
    P.get_or_init(|| {
        strip_unit_eigenvalue(default_charpoly(), 8)
            .expect("strip")
            .quotient
    })
}

/// Berkowitz's division-free characteristic polynomial, coefficients from
/// the constant term upward. Shares no code with the library.
pub fn berkowitz(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    let big = |v: i64| BigInt::from(v);
    // c holds det(λ − A_r) from the leading coefficient down
    let mut c = vec![BigInt::one(), -big(a[0][0])];
    for r in 1..n {
        // A_{r+1} = [[A_r, s], [row, a_rr]]
        let s: Vec<BigInt> = (0..r).map(|i| big(a[i][r])).collect();
        let row: Vec<BigInt> = (0..r).map(|j| big(a[r][j])).collect();
        let mut col = vec![BigInt::one(), -big(a[r][r])];
        let mut v = s;
        for _ in 0..r {
            let d: BigInt = row.iter().zip(&v).map(|(x, y)| x * y).sum();
            col.push(-d);
            v = (0..r)
                .map(|i| (0..r).map(|j| big(a[i][j]) * &v[j]).sum())
                .collect();
        }
        // Toeplitz product: new[k] = Σ_j col[k−j]·c[j]
        let mut next = vec![BigInt::zero(); r + 2];
        for (k, slot) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate().take(k + 1) {
                *slot += &col[k - j] * cj;
            }
        }
        c = next;
    }
    c.reverse();
    c
}
