//! Chevalley-basis structure constants for E8 and the adjoint action `ad`.
//!
//! Basis slots of the 248-dimensional algebra: `h₁ … h₈` occupy slots
//! `0 … 7`, and `e_α` for root index `r` occupies slot `8 + r`.
//!
//! The bracket is
//!
//! * `[h_i, e_α] = ⟨α, α_i^∨⟩ e_α`,
//! * `[e_α, e_{−α}] = h_α = Σ_k c_k(α) h_k` where `c_k(α)` are the simple-root
//!   coefficients of `α`,
//! * `[e_α, e_β] = N(α, β) e_{α+β}` when `α + β` is a root.
//!
//! `N` is fixed by a sign on each of the 112 extraspecial pairs; the
//! remaining constants follow from antisymmetry, `N(−α, −β) = −N(α, β)`, the
//! cyclic relation for `α + β + γ = 0` and the four-term relation for
//! `α + β + γ + δ = 0`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::rootsystem::{RootSystem, NUM_POSITIVE, NUM_ROOTS, RANK};

/// Dimension of the Lie algebra.
pub const DIM: usize = 248;
/// Number of extraspecial pairs.
pub const NUM_EXTRASPECIAL: usize = 112;

/// Basis slot of `h_k` (`k` in `1..=8`).
pub fn h_slot(k: usize) -> usize {
    k - 1
}

/// Basis slot of `e_α` for root index `r`.
pub fn e_slot(r: usize) -> usize {
    RANK + r
}

/// Root index stored in a basis slot, if the slot is a root vector.
pub fn slot_root(slot: usize) -> Option<usize> {
    slot.checked_sub(RANK)
}

/// The decomposition `γ = α + β` chosen for a non-simple positive root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtraspecialPair {
    pub alpha: usize,
    pub beta: usize,
    pub sum: usize,
}

/// For each non-simple positive root `γ` (in canonical order), the pair
/// `(α, β)` of positive roots with `α + β = γ` and `α` minimal.
pub fn compute_extraspecial_pairs(rs: &RootSystem) -> Vec<ExtraspecialPair> {
    let mut out = Vec::with_capacity(NUM_EXTRASPECIAL);
    for gamma in 0..NUM_POSITIVE {
        if rs.height(gamma) < 2 {
            continue;
        }
        let alpha = (0..NUM_POSITIVE)
            .find(|&a| matches!(rs.root_sum_index(gamma, rs.negation(a)), Some(b) if rs.is_positive(b)))
            .expect("every non-simple positive root is a sum of two positive roots");
        let beta = rs.root_sum_index(gamma, rs.negation(alpha)).unwrap();
        out.push(ExtraspecialPair {
            alpha,
            beta,
            sum: gamma,
        });
    }
    out
}

/// Table of `N(α, β)` plus the coroot expansion of each `h_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    n: Vec<i8>,
    coroot_rows: Vec<[i8; 8]>,
    extraspecial: Vec<(ExtraspecialPair, i8)>,
}

impl StructureConstants {
    pub fn n(&self, a: usize, b: usize) -> i8 {
        self.n[a * NUM_ROOTS + b]
    }

    /// `h_α` expressed over `h₁ … h₈`.
    pub fn coroot_row(&self, a: usize) -> [i8; 8] {
        self.coroot_rows[a]
    }

    pub fn extraspecial(&self) -> &[(ExtraspecialPair, i8)] {
        &self.extraspecial
    }

    /// The table obtained by replacing `e_α` with `s(α) e_α`, where
    /// `s(−α) = s(α)` so that each `h_α` is unchanged.
    pub fn rescaled(&self, rs: &RootSystem, signs: &[i8]) -> StructureConstants {
        assert_eq!(signs.len(), NUM_ROOTS);
        let mut n = self.n.clone();
        for a in 0..NUM_ROOTS {
            for b in 0..NUM_ROOTS {
                if let Some(c) = rs.root_sum_index(a, b) {
                    n[a * NUM_ROOTS + b] *= signs[a] * signs[b] * signs[c];
                }
            }
        }
        let extraspecial = self
            .extraspecial
            .iter()
            .map(|&(p, _)| (p, n[p.alpha * NUM_ROOTS + p.beta]))
            .collect();
        StructureConstants {
            n,
            coroot_rows: self.coroot_rows.clone(),
            extraspecial,
        }
    }

    /// Checks antisymmetry, the negation rule, support on root sums and the
    /// cyclic relation `N(α,β) = N(β,γ) = N(γ,α)` for `α + β + γ = 0`.
    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        for a in 0..NUM_ROOTS {
            for b in 0..NUM_ROOTS {
                let v = self.n(a, b);
                match rs.root_sum_index(a, b) {
                    None if v != 0 => {
                        return Err(Error::StructureConstants(format!(
                            "N({a},{b}) set off root sums"
                        )))
                    }
                    Some(c) => {
                        if v.abs() != 1 {
                            return Err(Error::StructureConstants(format!("|N({a},{b})| != 1")));
                        }
                        if self.n(b, a) != -v {
                            return Err(Error::StructureConstants(format!(
                                "N({a},{b}) not antisymmetric"
                            )));
                        }
                        if self.n(rs.negation(a), rs.negation(b)) != -v {
                            return Err(Error::StructureConstants(format!(
                                "N(-{a},-{b}) != -N({a},{b})"
                            )));
                        }
                        let g = rs.negation(c);
                        if self.n(b, g) != v || self.n(g, a) != v {
                            return Err(Error::StructureConstants(format!(
                                "cyclic relation fails at ({a},{b})"
                            )));
                        }
                    }
                    None => {}
                }
            }
        }
        Ok(())
    }
}

/// Reads `N(x, y)` for arbitrary roots from a table whose positive pairs
/// are filled in, using antisymmetry-free reductions only.
fn reduce_n(rs: &RootSystem, n: &[i8], x: usize, y: usize) -> i8 {
    let z = rs
        .root_sum_index(x, y)
        .expect("reduce_n called on a pair whose sum is not a root");
    let px = rs.is_positive(x);
    let py = rs.is_positive(y);
    if px && py {
        return n[x * NUM_ROOTS + y];
    }
    if !px && !py {
        return -n[rs.negation(x) * NUM_ROOTS + rs.negation(y)];
    }
    // x + y + (−z) = 0, so N(x,y) = N(y,−z) = N(−z,x); pick the same-sign pair.
    let mz = rs.negation(z);
    let (a, b) = if rs.is_positive(y) == rs.is_positive(mz) {
        (y, mz)
    } else {
        (mz, x)
    };
    if rs.is_positive(a) {
        n[a * NUM_ROOTS + b]
    } else {
        -n[rs.negation(a) * NUM_ROOTS + rs.negation(b)]
    }
}

/// Structure constants determined by the extraspecial signs (`+1` for the
/// standard table).
pub fn compute_structure_constants(rs: &RootSystem, signs: &[i8]) -> Result<StructureConstants> {
    if signs.len() != NUM_EXTRASPECIAL || signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::StructureConstants(format!(
            "expected {NUM_EXTRASPECIAL} signs in {{-1, +1}}"
        )));
    }
    let pairs = compute_extraspecial_pairs(rs);
    let mut n = vec![0i8; NUM_ROOTS * NUM_ROOTS];

    // Positive roots are in height order, so every constant used on the
    // right-hand side below has a sum of strictly smaller height.
    for (pair, &sign) in pairs.iter().zip(signs) {
        let xi = pair.sum;
        let (g, d) = (pair.alpha, pair.beta);
        n[g * NUM_ROOTS + d] = sign;
        n[d * NUM_ROOTS + g] = -sign;
        for alpha in 0..NUM_POSITIVE {
            let beta = match rs.root_sum_index(xi, rs.negation(alpha)) {
                Some(b) if rs.is_positive(b) && alpha < b => b,
                _ => continue,
            };
            if alpha == g {
                continue;
            }
            let mut acc = 0i8;
            if rs.root_sum_index(beta, rs.negation(g)).is_some() {
                acc += reduce_n(rs, &n, beta, rs.negation(g))
                    * reduce_n(rs, &n, alpha, rs.negation(d));
            }
            if rs.root_sum_index(alpha, rs.negation(g)).is_some() {
                acc += reduce_n(rs, &n, rs.negation(g), alpha)
                    * reduce_n(rs, &n, beta, rs.negation(d));
            }
            let v = sign * acc;
            if v.abs() != 1 {
                return Err(Error::StructureConstants(format!(
                    "four-term relation gives N({alpha},{beta}) = {v}"
                )));
            }
            n[alpha * NUM_ROOTS + beta] = v;
            n[beta * NUM_ROOTS + alpha] = -v;
        }
    }

    let mut full = n.clone();
    for a in 0..NUM_ROOTS {
        for b in 0..NUM_ROOTS {
            if rs.root_sum_index(a, b).is_some() && !(rs.is_positive(a) && rs.is_positive(b)) {
                full[a * NUM_ROOTS + b] = reduce_n(rs, &n, a, b);
            }
        }
    }

    let sc = StructureConstants {
        n: full,
        coroot_rows: coroot_rows(rs),
        extraspecial: pairs.into_iter().zip(signs.iter().copied()).collect(),
    };
    sc.validate(rs)?;
    Ok(sc)
}

/// The table with every extraspecial sign equal to `+1`.
pub fn standard_structure_constants(rs: &RootSystem) -> Result<StructureConstants> {
    compute_structure_constants(rs, &[1; NUM_EXTRASPECIAL])
}

fn coroot_rows(rs: &RootSystem) -> Vec<[i8; 8]> {
    (0..NUM_ROOTS).map(|a| rs.coefficients(a)).collect()
}

/// Structure constants from a bimultiplicative sign cocycle on the root
/// lattice, independent of any ordering of the roots.
pub fn cocycle_structure_constants(rs: &RootSystem) -> Result<StructureConstants> {
    let cartan = rs.cartan();
    // log₂ of ε(α, β) = Π ε(α_i, α_j)^{a_i b_j}
    let eps_parity = |a: &[i8; 8], b: &[i8; 8]| -> i32 {
        let mut s = 0i32;
        for i in 0..8 {
            let ai = i32::from(a[i]);
            if ai == 0 {
                continue;
            }
            s += ai * i32::from(b[i]);
            for j in (i + 1)..8 {
                s += ai * i32::from(b[j]) * cartan[i][j];
            }
        }
        s.rem_euclid(2)
    };
    let sigma = |r: usize| if rs.is_positive(r) { 1i8 } else { -1i8 };
    let mut n = vec![0i8; NUM_ROOTS * NUM_ROOTS];
    for a in 0..NUM_ROOTS {
        for b in 0..NUM_ROOTS {
            if let Some(c) = rs.root_sum_index(a, b) {
                let eps = if eps_parity(&rs.coefficients(a), &rs.coefficients(b)) == 0 {
                    1
                } else {
                    -1
                };
                n[a * NUM_ROOTS + b] = sigma(a) * sigma(b) * sigma(c) * eps;
            }
        }
    }
    let extraspecial = compute_extraspecial_pairs(rs)
        .into_iter()
        .map(|p| (p, n[p.alpha * NUM_ROOTS + p.beta]))
        .collect();
    let sc = StructureConstants {
        n,
        coroot_rows: coroot_rows(rs),
        extraspecial,
    };
    sc.validate(rs)?;
    Ok(sc)
}

/// Sparse vector over the Lie basis: `(slot, coefficient)` pairs.
pub type SparseVec = Vec<(usize, i64)>;

/// The Lie algebra `𝔢₈` over `Z` in a Chevalley basis.
#[derive(Clone, Debug)]
pub struct E8Algebra {
    rs: RootSystem,
    sc: StructureConstants,
}

impl E8Algebra {
    pub fn new(rs: RootSystem, sc: StructureConstants) -> Self {
        E8Algebra { rs, sc }
    }

    /// Root system with the all-`+1` extraspecial table.
    pub fn standard() -> Result<Self> {
        let rs = RootSystem::build()?;
        let sc = standard_structure_constants(&rs)?;
        Ok(E8Algebra { rs, sc })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.sc
    }

    /// Bracket of two basis elements.
    pub fn bracket_basis(&self, x: usize, y: usize) -> SparseVec {
        match (slot_root(x), slot_root(y)) {
            (None, None) => Vec::new(),
            (None, Some(b)) => {
                let c = self.rs.pairing(b, self.rs.simple(x + 1));
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(y, i64::from(c))]
                }
            }
            (Some(a), None) => {
                let c = self.rs.pairing(a, self.rs.simple(y + 1));
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(x, -i64::from(c))]
                }
            }
            (Some(a), Some(b)) => {
                if b == self.rs.negation(a) {
                    self.sc
                        .coroot_row(a)
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| (k, i64::from(c)))
                        .collect()
                } else if let Some(c) = self.rs.root_sum_index(a, b) {
                    vec![(e_slot(c), i64::from(self.sc.n(a, b)))]
                } else {
                    Vec::new()
                }
            }
        }
    }

    /// Bracket of two dense coefficient vectors of length 248.
    pub fn bracket(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), DIM);
        assert_eq!(y.len(), DIM);
        let mut out = vec![0i64; DIM];
        for (i, &xi) in x.iter().enumerate().filter(|(_, &v)| v != 0) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, &v)| v != 0) {
                let w = xi.checked_mul(yj).expect("bracket coefficient overflow");
                for (k, c) in self.bracket_basis(i, j) {
                    out[k] = out[k]
                        .checked_add(w.checked_mul(c).expect("bracket coefficient overflow"))
                        .expect("bracket coefficient overflow");
                }
            }
        }
        out
    }

    /// Bracket of two sparse vectors.
    pub fn bracket_sparse(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> SparseVec {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for &(i, xi) in x {
            for &(j, yj) in y {
                for (k, c) in self.bracket_basis(i, j) {
                    *acc.entry(k).or_insert(0) += xi * yj * c;
                }
            }
        }
        let mut v: SparseVec = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort_unstable();
        v
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` for three basis elements.
    pub fn jacobiator(&self, x: usize, y: usize, z: usize) -> SparseVec {
        let ex = vec![(x, 1)];
        let ey = vec![(y, 1)];
        let ez = vec![(z, 1)];
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (a, b, c) in [(&ex, &ey, &ez), (&ey, &ez, &ex), (&ez, &ex, &ey)] {
            let inner = self.bracket_sparse(b, c);
            for (k, v) in self.bracket_sparse(a, &inner) {
                *acc.entry(k).or_insert(0) += v;
            }
        }
        let mut v: SparseVec = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort_unstable();
        v
    }

    /// Checks the Jacobi identity on `count` random basis triples.
    pub fn check_jacobi_random<R: Rng>(&self, rng: &mut R, count: usize) -> Result<()> {
        for _ in 0..count {
            let (x, y, z) = (
                rng.gen_range(0..DIM),
                rng.gen_range(0..DIM),
                rng.gen_range(0..DIM),
            );
            let j = self.jacobiator(x, y, z);
            if !j.is_empty() {
                return Err(Error::StructureConstants(format!(
                    "Jacobi fails on ({x},{y},{z})"
                )));
            }
        }
        Ok(())
    }

    /// Matrix of `ad(e_α)` acting on column vectors.
    pub fn ad_root_matrix(&self, alpha: usize) -> SparseMatrix {
        self.ad_basis_matrix(e_slot(alpha))
    }

    /// Matrix of `ad(b)` for a basis slot `b`.
    pub fn ad_basis_matrix(&self, slot: usize) -> SparseMatrix {
        let mut entries = Vec::new();
        for j in 0..DIM {
            for (i, c) in self.bracket_basis(slot, j) {
                entries.push((i, j, c));
            }
        }
        SparseMatrix::from_triplets(DIM, entries)
    }
}

/// Hex digest identifying the root ordering.
pub fn ordering_hash(rs: &RootSystem) -> String {
    let mut h = Sha256::new();
    for r in rs.roots() {
        h.update(r.0.map(|c| c as u8));
    }
    hex::encode(h.finalize())
}

/// Hex digest of a sign vector.
pub fn signs_hash(signs: &[i8]) -> String {
    let mut h = Sha256::new();
    h.update(signs.iter().map(|&s| s as u8).collect::<Vec<_>>());
    hex::encode(h.finalize())
}

const CACHE_MAGIC: &str = "e8-structure-constants v1";

impl StructureConstants {
    /// Text dump: header, 240 coroot rows, then 240 rows of `N` as `-0+`.
    pub fn to_cache_string(&self, rs: &RootSystem) -> String {
        let signs: Vec<i8> = self.extraspecial.iter().map(|&(_, s)| s).collect();
        let mut out = String::new();
        writeln!(out, "{CACHE_MAGIC}").unwrap();
        writeln!(out, "ordering {}", ordering_hash(rs)).unwrap();
        writeln!(out, "signs {}", signs_hash(&signs)).unwrap();
        writeln!(
            out,
            "extraspecial {}",
            signs
                .iter()
                .map(|&s| if s > 0 { '+' } else { '-' })
                .collect::<String>()
        )
        .unwrap();
        for row in &self.coroot_rows {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
        for a in 0..NUM_ROOTS {
            let line: String = (0..NUM_ROOTS)
                .map(|b| match self.n(a, b) {
                    1 => '+',
                    -1 => '-',
                    _ => '0',
                })
                .collect();
            writeln!(out, "{line}").unwrap();
        }
        out
    }

    /// Parses a cache dump, returning `None` when its hashes do not match.
    pub fn from_cache_string(rs: &RootSystem, text: &str, signs: &[i8]) -> Result<Option<Self>> {
        let mut lines = text.lines().enumerate();
        let mut next = |what: &str| {
            lines.next().ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("truncated cache, missing {what}"),
            })
        };
        let (_, magic) = next("header")?;
        if magic != CACHE_MAGIC {
            return Ok(None);
        }
        let (_, ord) = next("ordering")?;
        let (_, sg) = next("signs")?;
        if ord != format!("ordering {}", ordering_hash(rs))
            || sg != format!("signs {}", signs_hash(signs))
        {
            return Ok(None);
        }
        next("extraspecial")?;
        let mut coroots = Vec::with_capacity(NUM_ROOTS);
        for _ in 0..NUM_ROOTS {
            let (ln, l) = next("coroot row")?;
            let vals: std::result::Result<Vec<i8>, _> =
                l.split_whitespace().map(str::parse).collect();
            let vals = vals.map_err(|e| Error::Parse {
                line: ln + 1,
                msg: e.to_string(),
            })?;
            let row: [i8; 8] = vals.try_into().map_err(|_| Error::Parse {
                line: ln + 1,
                msg: "expected 8 entries".into(),
            })?;
            coroots.push(row);
        }
        let mut n = vec![0i8; NUM_ROOTS * NUM_ROOTS];
        for a in 0..NUM_ROOTS {
            let (ln, l) = next("N row")?;
            if l.len() != NUM_ROOTS {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: "expected 240 cells".into(),
                });
            }
            for (b, ch) in l.chars().enumerate() {
                n[a * NUM_ROOTS + b] = match ch {
                    '+' => 1,
                    '-' => -1,
                    '0' => 0,
                    _ => {
                        return Err(Error::Parse {
                            line: ln + 1,
                            msg: format!("bad cell {ch:?}"),
                        })
                    }
                };
            }
        }
        let extraspecial = compute_extraspecial_pairs(rs)
            .into_iter()
            .map(|p| (p, n[p.alpha * NUM_ROOTS + p.beta]))
            .collect();
        let sc = StructureConstants {
            n,
            coroot_rows: coroots,
            extraspecial,
        };
        sc.validate(rs)?;
        Ok(Some(sc))
    }
}

/// Cache directory from `E8_CACHE_DIR`, defaulting to `./.e8cache`.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("E8_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".e8cache"))
}

/// Loads the table from `dir`, rebuilding and rewriting it on a miss or a
/// hash mismatch.
pub fn load_or_build(rs: &RootSystem, signs: &[i8], dir: &Path) -> Result<StructureConstants> {
    let path = dir.join(format!("constants-{}.txt", &signs_hash(signs)[..16]));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(Some(sc)) = StructureConstants::from_cache_string(rs, &text, signs) {
            return Ok(sc);
        }
    }
    let sc = compute_structure_constants(rs, signs)?;
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, sc.to_cache_string(rs))?;
    Ok(sc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn extraspecial_pairs() {
        let rs = RootSystem::build().unwrap();
        let pairs = compute_extraspecial_pairs(&rs);
        assert_eq!(pairs.len(), 112);
        let a13 = rs.root_sum_index(rs.simple(1), rs.simple(3)).unwrap();
        let p = pairs.iter().find(|p| p.sum == a13).unwrap();
        assert_eq!((p.alpha, p.beta), (rs.simple(1), rs.simple(3)));
        let mut sums: Vec<usize> = pairs.iter().map(|p| p.sum).collect();
        sums.dedup();
        assert_eq!(sums.len(), 112);
        for p in &pairs {
            assert!(rs.height(p.sum) >= 2);
            assert_eq!(rs.root_sum_index(p.alpha, p.beta), Some(p.sum));
            assert!(p.alpha < p.beta);
        }
    }

    #[test]
    fn standard_signs() {
        let rs = RootSystem::build().unwrap();
        let sc = standard_structure_constants(&rs).unwrap();
        let (a1, a3) = (rs.simple(1), rs.simple(3));
        assert_eq!(sc.n(a1, a3), 1);
        assert_eq!(sc.n(a3, a1), -1);
        let mut signs = [1i8; NUM_EXTRASPECIAL];
        let idx = sc
            .extraspecial()
            .iter()
            .position(|(p, _)| p.alpha == a1 && p.beta == a3)
            .unwrap();
        signs[idx] = -1;
        let flipped = compute_structure_constants(&rs, &signs).unwrap();
        assert_eq!(flipped.n(a1, a3), -1);
        assert_eq!(flipped.n(a3, a1), 1);
    }

    #[test]
    fn rejects_bad_signs() {
        let rs = RootSystem::build().unwrap();
        assert!(compute_structure_constants(&rs, &[1; 10]).is_err());
        assert!(compute_structure_constants(&rs, &[0; NUM_EXTRASPECIAL]).is_err());
    }

    #[test]
    fn jacobi_on_random_triples() {
        let alg = E8Algebra::standard().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        alg.check_jacobi_random(&mut rng, 1000).unwrap();
        let cocycle = E8Algebra::new(
            alg.rs.clone(),
            cocycle_structure_constants(&alg.rs).unwrap(),
        );
        cocycle.check_jacobi_random(&mut rng, 1000).unwrap();
    }

    #[test]
    fn cartan_acts_by_pairing() {
        let alg = E8Algebra::standard().unwrap();
        let rs = alg.root_system();
        for i in 1..=8 {
            for j in 1..=8 {
                assert!(alg.bracket_basis(h_slot(i), h_slot(j)).is_empty());
            }
            for a in 0..NUM_ROOTS {
                let c = rs.pairing(a, rs.simple(i));
                let expect: SparseVec = if c == 0 {
                    vec![]
                } else {
                    vec![(e_slot(a), i64::from(c))]
                };
                assert_eq!(alg.bracket_basis(h_slot(i), e_slot(a)), expect);
            }
        }
    }

    #[test]
    fn coroot_acts_by_cartan_pairing() {
        let alg = E8Algebra::standard().unwrap();
        let rs = alg.root_system();
        for a in 0..NUM_ROOTS {
            let ha = alg.bracket_basis(e_slot(a), e_slot(rs.negation(a)));
            for b in 0..NUM_ROOTS {
                let got = alg.bracket_sparse(&ha, &[(e_slot(b), 1)]);
                let c = i64::from(rs.pairing(b, a));
                let expect: SparseVec = if c == 0 { vec![] } else { vec![(e_slot(b), c)] };
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn bracket_dense_is_antisymmetric() {
        let alg = E8Algebra::standard().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x: Vec<i64> = (0..DIM).map(|_| rng.gen_range(-3..=3)).collect();
        let y: Vec<i64> = (0..DIM).map(|_| rng.gen_range(-3..=3)).collect();
        let xy = alg.bracket(&x, &y);
        let yx = alg.bracket(&y, &x);
        assert!(xy.iter().zip(&yx).all(|(a, b)| *a == -*b));
        assert!(alg.bracket(&x, &x).iter().all(|&v| v == 0));
    }

    #[test]
    fn cocycle_agrees_up_to_rescaling() {
        let rs = RootSystem::build().unwrap();
        let std = standard_structure_constants(&rs).unwrap();
        let coc = cocycle_structure_constants(&rs).unwrap();
        // Choose s on positive roots so the cocycle table has all-+1
        // extraspecial signs, then compare the whole table.
        let mut s = vec![1i8; NUM_ROOTS];
        for (p, sign) in coc.extraspecial() {
            s[p.sum] = sign * s[p.alpha] * s[p.beta];
            s[rs.negation(p.sum)] = s[p.sum];
        }
        let resigned = coc.rescaled(&rs, &s);
        assert_eq!(resigned, std);
    }

    #[test]
    fn cache_round_trip() {
        let rs = RootSystem::build().unwrap();
        let sc = standard_structure_constants(&rs).unwrap();
        let text = sc.to_cache_string(&rs);
        let back = StructureConstants::from_cache_string(&rs, &text, &[1; NUM_EXTRASPECIAL])
            .unwrap()
            .unwrap();
        assert_eq!(back, sc);
        let mut other = [1i8; NUM_EXTRASPECIAL];
        other[5] = -1;
        assert!(StructureConstants::from_cache_string(&rs, &text, &other)
            .unwrap()
            .is_none());
    }
}
