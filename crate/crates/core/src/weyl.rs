//! The Weyl group as a permutation group on the 240 roots.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactpoly::FactorPattern;
use crate::rootsystem::{RootSystem, NUM_ROOTS, RANK};

/// Order of W(E8).
pub const WEYL_ORDER: u64 = 696_729_600;

/// Indices of the maximal subgroups of W(E8), largest index first.
/// Reference data only; nothing here recomputes them.
pub const MAXIMAL_SUBGROUP_INDICES: [u64; 9] = [12096, 11200, 2025, 1575, 1120, 960, 135, 120, 2];

/// A permutation of the roots; `x ↦ images[x]`. Products act left to right:
/// `(a * b)(x) = b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation240 {
    images: Vec<u8>,
}

impl fmt::Debug for Permutation240 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation240({})", self.cycle_type())
    }
}

impl Permutation240 {
    pub fn identity() -> Self {
        Permutation240 {
            images: (0..NUM_ROOTS as u16).map(|x| x as u8).collect(),
        }
    }

    /// `None` unless `images` is a bijection of `0..240`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        if images.len() != NUM_ROOTS {
            return None;
        }
        let mut seen = [false; NUM_ROOTS];
        for &x in images {
            if x >= NUM_ROOTS || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Permutation240 {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        usize::from(self.images[x])
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| usize::from(x))
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Permutation240) -> Permutation240 {
        Permutation240 {
            images: self
                .images
                .iter()
                .map(|&x| other.images[usize::from(x)])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation240 {
        let mut inv = vec![0u8; NUM_ROOTS];
        for (x, &y) in self.images.iter().enumerate() {
            inv[usize::from(y)] = x as u8;
        }
        Permutation240 { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation240 {
        let mut acc = Permutation240::identity();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&b);
            }
            b = b.then(&b);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, &y)| x == usize::from(y))
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = [false; NUM_ROOTS];
        let mut out = Vec::new();
        for start in 0..NUM_ROOTS {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut m = BTreeMap::new();
        for l in self.cycle_lengths() {
            *m.entry(l).or_insert(0) += 1;
        }
        CycleType(m)
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    pub fn signature(&self) -> i32 {
        self.cycle_type().signature()
    }

    /// `w(−α) = −w(α)` for every root.
    pub fn commutes_with_negation(&self, rs: &RootSystem) -> bool {
        (0..NUM_ROOTS).all(|a| self.apply(rs.negation(a)) == rs.negation(self.apply(a)))
    }
}

/// Multiset of cycle lengths (or factor degrees): length → count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CycleType(pub BTreeMap<usize, usize>);

impl CycleType {
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        CycleType(pairs.iter().copied().collect())
    }

    /// `{15: 16}`, the type of the square of a Coxeter element.
    pub fn regular15() -> Self {
        Self::from_pairs(&[(15, 16)])
    }

    /// `{4: 2, 8: 29}`.
    pub fn odd_4_8() -> Self {
        Self::from_pairs(&[(4, 2), (8, 29)])
    }

    pub fn points(&self) -> usize {
        self.0.iter().map(|(l, c)| l * c).sum()
    }

    /// Sign of any permutation with this cycle type.
    pub fn signature(&self) -> i32 {
        let transpositions: usize = self.0.iter().map(|(l, c)| (l - 1) * c).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The cycle type a Frobenius element must have, given a squarefree
    /// factorization pattern.
    pub fn of_pattern(p: &FactorPattern) -> Option<Self> {
        p.squarefree.then(|| CycleType(p.degrees.clone()))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (l, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}:{c}")?;
        }
        write!(f, "}}")
    }
}

/// `β ↦ s_{α_i}(β)`, `i` in `1..=8`.
pub fn simple_reflection_perm(rs: &RootSystem, i: usize) -> Permutation240 {
    let a = rs.simple(i);
    let images: Vec<usize> = (0..NUM_ROOTS).map(|b| rs.reflect_root(b, a)).collect();
    Permutation240::from_images(&images).expect("reflections permute the roots")
}

/// Stabilizer chain: base points, strong generators and, per level, the
/// transversal `u_β` (mapping the base point to `β`) for each orbit point.
#[derive(Clone, Debug)]
pub struct Bsgs {
    base: Vec<usize>,
    strong: Vec<Permutation240>,
    transversals: Vec<Vec<Option<Permutation240>>>,
    orbits: Vec<Vec<usize>>,
}

impl Bsgs {
    /// Deterministic Schreier–Sims. Base points are taken greedily as the
    /// first point moved by some generator that fixes the current base.
    pub fn build(gens: &[Permutation240]) -> Self {
        let mut b = Bsgs {
            base: Vec::new(),
            strong: gens.iter().filter(|g| !g.is_identity()).cloned().collect(),
            transversals: Vec::new(),
            orbits: Vec::new(),
        };
        for g in b.strong.clone() {
            b.extend_base_for(&g);
        }
        b.rebuild_levels();
        let mut level = b.base.len() as isize - 1;
        while level >= 0 {
            let i = level as usize;
            match b.find_missing_schreier(i) {
                Some((h, j)) => {
                    b.extend_base_for(&h);
                    b.strong.push(h);
                    b.rebuild_levels();
                    level = j as isize;
                }
                None => level -= 1,
            }
        }
        b
    }

    fn extend_base_for(&mut self, g: &Permutation240) {
        if self.base.iter().all(|&x| g.apply(x) == x) {
            if let Some(x) = (0..NUM_ROOTS).find(|&x| g.apply(x) != x) {
                self.base.push(x);
            }
        }
    }

    fn level_gens(&self, i: usize) -> Vec<&Permutation240> {
        let fixed = &self.base[..i];
        self.strong
            .iter()
            .filter(|g| fixed.iter().all(|&x| g.apply(x) == x))
            .collect()
    }

    fn rebuild_levels(&mut self) {
        self.transversals.clear();
        self.orbits.clear();
        for i in 0..self.base.len() {
            let gens = self.level_gens(i);
            let mut table: Vec<Option<Permutation240>> = vec![None; NUM_ROOTS];
            let b0 = self.base[i];
            table[b0] = Some(Permutation240::identity());
            let mut orbit = vec![b0];
            let mut k = 0;
            while k < orbit.len() {
                let g = orbit[k];
                let ug = table[g].clone().unwrap();
                for s in &gens {
                    let d = s.apply(g);
                    if table[d].is_none() {
                        table[d] = Some(ug.then(s));
                        orbit.push(d);
                    }
                }
                k += 1;
            }
            self.transversals.push(table);
            self.orbits.push(orbit);
        }
    }

    /// Sifts `g` from level `from` on; returns the residue and the level
    /// where sifting stopped (`base.len()` if it went through).
    fn sift_from(&self, mut g: Permutation240, from: usize) -> (Permutation240, usize) {
        for l in from..self.base.len() {
            let b = g.apply(self.base[l]);
            match &self.transversals[l][b] {
                None => return (g, l),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        (g, self.base.len())
    }

    fn find_missing_schreier(&self, i: usize) -> Option<(Permutation240, usize)> {
        let gens = self.level_gens(i);
        for &beta in &self.orbits[i] {
            let ub = self.transversals[i][beta].as_ref().unwrap();
            for s in &gens {
                let gamma = s.apply(beta);
                let ug = self.transversals[i][gamma].as_ref().unwrap();
                let sg = ub.then(s).then(&ug.inverse());
                let (h, j) = self.sift_from(sg, i + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Permutation240] {
        &self.strong
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn order(&self) -> u128 {
        self.orbits.iter().map(|o| o.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation240) -> bool {
        let (h, _) = self.sift_from(g.clone(), 0);
        h.is_identity()
    }

    /// Uniform element: a random transversal entry per level, composed
    /// deepest level first.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation240 {
        let mut g = Permutation240::identity();
        for l in (0..self.base.len()).rev() {
            let orbit = &self.orbits[l];
            let b = orbit[rng.gen_range(0..orbit.len())];
            g = g.then(self.transversals[l][b].as_ref().unwrap());
        }
        g
    }
}

/// W(E8) with its simple reflections and stabilizer chain.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    generators: Vec<Permutation240>,
    bsgs: Bsgs,
}

impl WeylGroup {
    pub fn build(rs: &RootSystem) -> Self {
        let generators: Vec<Permutation240> =
            (1..=RANK).map(|i| simple_reflection_perm(rs, i)).collect();
        let bsgs = Bsgs::build(&generators);
        WeylGroup { generators, bsgs }
    }

    /// `s_i`, `i` in `1..=8`.
    pub fn generator(&self, i: usize) -> &Permutation240 {
        &self.generators[i - 1]
    }

    pub fn generators(&self) -> &[Permutation240] {
        &self.generators
    }

    pub fn bsgs(&self) -> &Bsgs {
        &self.bsgs
    }

    pub fn order(&self) -> u128 {
        self.bsgs.order()
    }

    /// `c = s₁s₂…s₈`.
    pub fn coxeter_element(&self) -> Permutation240 {
        self.generators
            .iter()
            .fold(Permutation240::identity(), |acc, s| acc.then(s))
    }

    /// Whether `(s_i s_j)^{m(i,j)} = 1` for all `i ≤ j`.
    pub fn coxeter_relations_hold(&self) -> bool {
        (1..=RANK).all(|i| {
            (i..=RANK).all(|j| {
                let m = crate::rootsystem::coxeter_m(i, j) as u64;
                self.generator(i)
                    .then(self.generator(j))
                    .pow(m)
                    .is_identity()
            })
        })
    }

    /// Cycle-type tally of `n` uniform samples. Samples are drawn in fixed
    /// chunks, chunk `c` from stream `c` of a generator seeded by `seed`, so
    /// the table does not depend on the thread count.
    pub fn class_frequency_experiment(&self, n: usize, seed: u64) -> BTreeMap<CycleType, usize> {
        const CHUNK: usize = 4096;
        let chunks = n.div_ceil(CHUNK);
        let partial: Vec<BTreeMap<CycleType, usize>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(c as u64);
                let mut tally = BTreeMap::new();
                let len = CHUNK.min(n - c * CHUNK);
                for _ in 0..len {
                    *tally
                        .entry(self.bsgs.random_element(&mut rng).cycle_type())
                        .or_insert(0) += 1;
                }
                tally
            })
            .collect();
        let mut out = BTreeMap::new();
        for t in partial {
            for (k, v) in t {
                *out.entry(k).or_insert(0) += v;
            }
        }
        out
    }

    /// Each generator, and `c`, is an automorphism of the root lattice.
    pub fn lattice_automorphism_check(&self, rs: &RootSystem) -> bool {
        self.generators
            .iter()
            .chain(std::iter::once(&self.coxeter_element()))
            .all(|w| {
                let m = linear_map_of(rs, w);
                is_lattice_automorphism(rs, &m)
                    && (0..NUM_ROOTS).all(|a| {
                        apply_linear(&m, &rs.coefficients(a))
                            == coeffs_i64(&rs.coefficients(w.apply(a)))
                    })
            })
    }
}

/// Columns hold the simple-root coordinates of `w(α_i)`.
pub fn linear_map_of(rs: &RootSystem, w: &Permutation240) -> [[i64; 8]; 8] {
    let mut m = [[0i64; 8]; 8];
    for i in 0..RANK {
        let img = rs.coefficients(w.apply(rs.simple(i + 1)));
        for r in 0..RANK {
            m[r][i] = i64::from(img[r]);
        }
    }
    m
}

fn coeffs_i64(c: &[i8; 8]) -> [i64; 8] {
    c.map(i64::from)
}

fn apply_linear(m: &[[i64; 8]; 8], v: &[i8; 8]) -> [i64; 8] {
    let mut out = [0i64; 8];
    for (r, o) in out.iter_mut().enumerate() {
        *o = (0..RANK).map(|k| m[r][k] * i64::from(v[k])).sum();
    }
    out
}

/// `M` (on simple-root coordinates of Γ8) preserves the Cartan form, i.e.
/// `MᵀCM = C`, and maps every root to a root.
pub fn is_lattice_automorphism(rs: &RootSystem, m: &[[i64; 8]; 8]) -> bool {
    let c = rs.cartan();
    for i in 0..RANK {
        for j in 0..RANK {
            let mut s = 0i64;
            for a in 0..RANK {
                for b in 0..RANK {
                    s += m[a][i] * i64::from(c[a][b]) * m[b][j];
                }
            }
            if s != i64::from(c[i][j]) {
                return false;
            }
        }
    }
    let roots: std::collections::HashSet<[i64; 8]> = (0..NUM_ROOTS)
        .map(|a| coeffs_i64(&rs.coefficients(a)))
        .collect();
    (0..NUM_ROOTS).all(|a| roots.contains(&apply_linear(m, &rs.coefficients(a))))
}
