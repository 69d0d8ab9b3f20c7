//! The E8 root system in doubled integer coordinates.
//!
//! Every root is stored as twice its Euclidean coordinates, so the
//! half-integer family `½(±x₁ ± … ± x₈)` becomes a vector of odd integers
//! and all arithmetic stays in `i8`/`i32`. The inner product of two doubled
//! vectors is four times the true inner product.
//!
//! Roots are kept in a canonical order: the 120 positive roots sorted by
//! height, ties broken by the simple-root coefficient vector in descending
//! lexicographic order (so the simple roots `α₁ … α₈` occupy indices
//! `0 … 7`), followed by the negative roots with `−roots[i]` at `i + 120`.

use std::collections::HashMap;
use std::io::Write;

use crate::error::{Error, Result};

/// Number of roots of E8.
pub const NUM_ROOTS: usize = 240;
/// Number of positive roots.
pub const NUM_POSITIVE: usize = 120;
/// Rank of E8.
pub const RANK: usize = 8;

/// Coxeter-diagram edges of E8 in Bourbaki numbering (1-based).
pub const DYNKIN_EDGES: [(usize, usize); 7] =
    [(1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8)];

/// A vector of the E8 lattice stored as twice its real coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub [i8; 8]);

impl RootVector {
    /// Four times the squared length.
    pub fn norm4(&self) -> i32 {
        self.0.iter().map(|&c| i32::from(c) * i32::from(c)).sum()
    }

    /// Four times the standard inner product.
    pub fn dot4(&self, other: &RootVector) -> i32 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| i32::from(a) * i32::from(b))
            .sum()
    }

    pub fn add(&self, other: &RootVector) -> Option<RootVector> {
        let mut out = [0i8; 8];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.0[k].checked_add(other.0[k])?;
        }
        Some(RootVector(out))
    }

    pub fn neg(&self) -> RootVector {
        RootVector(self.0.map(|c| -c))
    }

    pub fn scale(&self, k: i8) -> Option<RootVector> {
        let mut out = [0i8; 8];
        for (o, &c) in out.iter_mut().zip(self.0.iter()) {
            *o = c.checked_mul(k)?;
        }
        Some(RootVector(out))
    }

    /// Whether the vector is one of the 240 norm-2 vectors of Γ8.
    pub fn is_e8_root(&self) -> bool {
        if self.norm4() != 8 {
            return false;
        }
        let all_even = self.0.iter().all(|c| c % 2 == 0);
        let all_odd = self.0.iter().all(|c| c % 2 != 0);
        if all_even {
            true
        } else if all_odd {
            // even number of minus signs
            self.0.iter().filter(|&&c| c < 0).count() % 2 == 0
        } else {
            false
        }
    }
}

/// Bourbaki simple roots of E8, doubled.
pub fn bourbaki_simple_roots() -> [RootVector; 8] {
    let mut s = [RootVector([0; 8]); 8];
    s[0] = RootVector([1, -1, -1, -1, -1, -1, -1, 1]);
    s[1] = RootVector([2, 2, 0, 0, 0, 0, 0, 0]);
    // α₃ = x₂ − x₁, α_{k} = x_{k−1} − x_{k−2} for k = 4..8
    for k in 2..8 {
        let mut c = [0i8; 8];
        c[k - 1] = 2;
        c[k - 2] = -2;
        s[k] = RootVector(c);
    }
    s
}

/// The Cartan matrix read off the Dynkin diagram.
pub fn dynkin_cartan_matrix() -> [[i32; 8]; 8] {
    let mut c = [[0i32; 8]; 8];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in DYNKIN_EDGES.iter() {
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    }
    c
}

/// Coxeter exponent `m(i, j)` (1-based indices).
pub fn coxeter_m(i: usize, j: usize) -> usize {
    if i == j {
        1
    } else if DYNKIN_EDGES.contains(&(i.min(j), i.max(j))) {
        3
    } else {
        2
    }
}

/// The E8 root system with its combinatorial tables.
#[derive(Clone, Debug)]
pub struct RootSystem {
    roots: Vec<RootVector>,
    coeffs: Vec<[i8; 8]>,
    simple: [usize; 8],
    cartan: [[i32; 8]; 8],
    sum_table: Vec<u16>,
    height: Vec<i32>,
    negation: Vec<usize>,
    index: HashMap<RootVector, usize>,
}

const NO_ROOT: u16 = u16::MAX;

impl RootSystem {
    /// Builds the 240 roots in canonical order with all tables.
    pub fn build() -> Result<Self> {
        let simple_vecs = bourbaki_simple_roots();

        let mut all = HashMap::new();
        for v in enumerate_lattice_roots() {
            all.insert(v, ());
        }
        if all.len() != NUM_ROOTS {
            return Err(Error::RootSystem(format!("enumerated {} roots", all.len())));
        }

        // Grow positive roots from the simple roots by adding simple roots.
        let mut positive: HashMap<RootVector, [i8; 8]> = HashMap::new();
        let mut frontier = Vec::new();
        for (i, s) in simple_vecs.iter().enumerate() {
            if !s.is_e8_root() {
                return Err(Error::RootSystem(format!(
                    "simple root {} is not a root",
                    i + 1
                )));
            }
            let mut c = [0i8; 8];
            c[i] = 1;
            positive.insert(*s, c);
            frontier.push(*s);
        }
        while let Some(v) = frontier.pop() {
            let c = positive[&v];
            for (i, s) in simple_vecs.iter().enumerate() {
                let w = v.add(s).expect("doubled coordinates stay small");
                if all.contains_key(&w) && !positive.contains_key(&w) {
                    let mut cw = c;
                    cw[i] += 1;
                    positive.insert(w, cw);
                    frontier.push(w);
                }
            }
        }
        if positive.len() != NUM_POSITIVE {
            return Err(Error::RootSystem(format!(
                "found {} positive roots",
                positive.len()
            )));
        }

        let mut pos: Vec<(RootVector, [i8; 8])> = positive.into_iter().collect();
        pos.sort_by(|a, b| {
            let ha: i32 = a.1.iter().map(|&x| i32::from(x)).sum();
            let hb: i32 = b.1.iter().map(|&x| i32::from(x)).sum();
            ha.cmp(&hb).then_with(|| b.1.cmp(&a.1))
        });

        let mut roots = Vec::with_capacity(NUM_ROOTS);
        let mut coeffs = Vec::with_capacity(NUM_ROOTS);
        for (v, c) in &pos {
            roots.push(*v);
            coeffs.push(*c);
        }
        for (v, c) in &pos {
            roots.push(v.neg());
            coeffs.push(c.map(|x| -x));
        }

        let index: HashMap<RootVector, usize> =
            roots.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        if index.len() != NUM_ROOTS || roots.iter().any(|v| !all.contains_key(v)) {
            return Err(Error::RootSystem(
                "positive and negative roots do not cover Γ8".into(),
            ));
        }

        let mut simple = [0usize; 8];
        for (i, s) in simple_vecs.iter().enumerate() {
            simple[i] = index[s];
        }

        let mut cartan = [[0i32; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                // ⟨α_i, α_j^∨⟩ = 2(α_i, α_j)/(α_j, α_j) = (α_i, α_j) for norm 2
                cartan[i][j] = simple_vecs[i].dot4(&simple_vecs[j]) / 4;
            }
        }
        if cartan != dynkin_cartan_matrix() {
            return Err(Error::RootSystem(
                "Cartan matrix does not match the E8 diagram".into(),
            ));
        }

        let mut sum_table = vec![NO_ROOT; NUM_ROOTS * NUM_ROOTS];
        for i in 0..NUM_ROOTS {
            for j in 0..NUM_ROOTS {
                if let Some(w) = roots[i].add(&roots[j]) {
                    if let Some(&k) = index.get(&w) {
                        sum_table[i * NUM_ROOTS + j] = k as u16;
                    }
                }
            }
        }

        let height = coeffs
            .iter()
            .map(|c| c.iter().map(|&x| i32::from(x)).sum())
            .collect();
        let negation = roots.iter().map(|v| index[&v.neg()]).collect();

        Ok(RootSystem {
            roots,
            coeffs,
            simple,
            cartan,
            sum_table,
            height,
            negation,
            index,
        })
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> RootVector {
        self.roots[i]
    }

    /// Index of simple root `α_k`, `k` in `1..=8`.
    pub fn simple(&self, k: usize) -> usize {
        self.simple[k - 1]
    }

    pub fn simple_indices(&self) -> [usize; 8] {
        self.simple
    }

    pub fn cartan(&self) -> &[[i32; 8]; 8] {
        &self.cartan
    }

    /// Coefficients of root `i` over the simple roots.
    pub fn coefficients(&self, i: usize) -> [i8; 8] {
        self.coeffs[i]
    }

    pub fn index_of(&self, v: &RootVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < NUM_POSITIVE
    }

    pub fn negation(&self, i: usize) -> usize {
        self.negation[i]
    }

    pub fn height(&self, i: usize) -> i32 {
        self.height[i]
    }

    /// Index of `roots[i] + roots[j]` when that sum is a root.
    pub fn root_sum_index(&self, i: usize, j: usize) -> Option<usize> {
        match self.sum_table[i * NUM_ROOTS + j] {
            NO_ROOT => None,
            k => Some(usize::from(k)),
        }
    }

    /// `(β, α)` between two roots given by index.
    pub fn pairing(&self, beta: usize, alpha: usize) -> i32 {
        self.roots[beta].dot4(&self.roots[alpha]) / 4
    }

    /// Index of `s_α(β) = β − ⟨β, α^∨⟩α`.
    pub fn reflect_root(&self, beta: usize, alpha: usize) -> usize {
        let c = self.pairing(beta, alpha);
        match c {
            0 => beta,
            2 => self.negation[beta],
            -2 => self.negation[beta],
            1 => self
                .root_sum_index(beta, self.negation[alpha])
                .expect("β − α is a root when (β, α) = 1"),
            -1 => self
                .root_sum_index(beta, alpha)
                .expect("β + α is a root when (β, α) = −1"),
            _ => unreachable!("pairing of two roots lies in [−2, 2]"),
        }
    }

    /// Index of the highest root.
    pub fn highest_root(&self) -> usize {
        NUM_POSITIVE - 1
    }

    /// Writes one root per line as eight doubled coordinates.
    pub fn dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for r in &self.roots {
            let line: Vec<String> = r.0.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// The `(β, α^∨)` pairing for arbitrary lattice vector `β` and root `α`.
pub fn cartan_pairing(beta: &RootVector, alpha: &RootVector) -> Result<i32> {
    if !alpha.is_e8_root() {
        return Err(Error::NotARoot(alpha.0));
    }
    let d = beta.dot4(alpha);
    if d % 4 != 0 {
        return Err(Error::NotARoot(beta.0));
    }
    Ok(d / 4)
}

/// All vectors `±x_i ± x_j` and `½(±x₁ … ±x₈)` with an even number of minus
/// signs, doubled.
pub fn enumerate_lattice_roots() -> Vec<RootVector> {
    let mut out = Vec::with_capacity(NUM_ROOTS);
    for i in 0..8 {
        for j in (i + 1)..8 {
            for si in [-2i8, 2] {
                for sj in [-2i8, 2] {
                    let mut c = [0i8; 8];
                    c[i] = si;
                    c[j] = sj;
                    out.push(RootVector(c));
                }
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let mut c = [1i8; 8];
            for (k, ck) in c.iter_mut().enumerate() {
                if mask & (1 << k) != 0 {
                    *ck = -1;
                }
            }
            out.push(RootVector(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs() -> RootSystem {
        RootSystem::build().unwrap()
    }

    #[test]
    fn counts_by_family() {
        let rs = rs();
        assert_eq!(rs.roots().len(), 240);
        let integral = rs
            .roots()
            .iter()
            .filter(|r| r.0.iter().all(|c| c % 2 == 0))
            .count();
        assert_eq!(integral, 4 * 28);
        assert_eq!(240 - integral, 128);
        assert!(rs.roots().iter().all(|r| r.norm4() == 8));
    }

    #[test]
    fn simple_roots_first() {
        let rs = rs();
        for k in 1..=8 {
            assert_eq!(rs.simple(k), k - 1);
            assert_eq!(rs.height(k - 1), 1);
        }
        assert_eq!(rs.cartan(), &dynkin_cartan_matrix());
    }

    #[test]
    fn pairing_examples() {
        let rs = rs();
        let a1 = rs.root(rs.simple(1));
        let a2 = rs.root(rs.simple(2));
        let a3 = rs.root(rs.simple(3));
        assert_eq!(cartan_pairing(&a1, &a1).unwrap(), 2);
        assert_eq!(cartan_pairing(&a1, &a3).unwrap(), -1);
        assert_eq!(cartan_pairing(&a1, &a2).unwrap(), 0);
        assert!(cartan_pairing(&a1, &a1.scale(2).unwrap()).is_err());
    }

    #[test]
    fn sums_and_reflections() {
        let rs = rs();
        let (a1, a2, a3) = (rs.simple(1), rs.simple(2), rs.simple(3));
        let s13 = rs.root_sum_index(a1, a3).unwrap();
        assert_eq!(rs.root(s13), rs.root(a1).add(&rs.root(a3)).unwrap());
        assert_eq!(rs.root_sum_index(a1, rs.negation(a1)), None);
        assert_eq!(rs.root_sum_index(a1, a2), None);
        assert_eq!(rs.reflect_root(a1, a1), rs.negation(a1));
        assert_eq!(rs.reflect_root(a3, a1), s13);
        assert_eq!(rs.reflect_root(a2, a1), a2);
    }

    #[test]
    fn heights() {
        let rs = rs();
        assert_eq!(rs.height(rs.simple(4)), 1);
        assert_eq!(rs.height(rs.negation(rs.simple(4))), -1);
        let max = (0..NUM_POSITIVE).map(|i| rs.height(i)).max().unwrap();
        assert_eq!(max, 29);
        assert_eq!(rs.height(rs.highest_root()), 29);
        assert_eq!(rs.coefficients(rs.highest_root()), [2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn closure_and_orthogonal_counts() {
        let rs = rs();
        for i in 0..NUM_ROOTS {
            assert_eq!(rs.negation(rs.negation(i)), i);
            for k in 1..=8 {
                let j = rs.reflect_root(i, rs.simple(k));
                assert_eq!(rs.reflect_root(j, rs.simple(k)), i);
            }
            let orth = (0..NUM_ROOTS).filter(|&j| rs.pairing(i, j) == 0).count();
            assert_eq!(orth, 126);
            let c = rs.coefficients(i);
            assert!(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0));
        }
    }

    #[test]
    fn sum_table_symmetric() {
        let rs = rs();
        for i in 0..NUM_ROOTS {
            for j in 0..NUM_ROOTS {
                assert_eq!(rs.root_sum_index(i, j), rs.root_sum_index(j, i));
            }
        }
    }
}
