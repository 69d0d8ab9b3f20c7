//! Elements `Ad(x_α(u)) = Id + u·ad(e_α) + (u²/2)·ad(e_α)²` of the adjoint
//! group and products of them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chevalley::{E8Algebra, DIM};
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, ModMatrix, SparseMatrix};
use crate::rootsystem::{NUM_POSITIVE, NUM_ROOTS};
use crate::zp::Zp;

/// One factor `x_α(u)` of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    /// Root index in canonical order.
    pub root: usize,
    pub u: i64,
}

/// An ordered product of root-group elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorWord {
    letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Word("word is empty".into()));
        }
        if let Some(l) = letters.iter().find(|l| l.root >= NUM_ROOTS) {
            return Err(Error::Word(format!("root index {} out of range", l.root)));
        }
        Ok(GeneratorWord { letters })
    }

    /// `x_{α₁}(ε₁)…x_{α₈}(ε₈) x_{−α₁}(ε₁)…x_{−α₈}(ε₈)`.
    pub fn signed_default_word(signs: [i64; 8]) -> Self {
        let mut letters = Vec::with_capacity(16);
        for (k, &s) in signs.iter().enumerate() {
            letters.push(Letter { root: k, u: s });
        }
        for (k, &s) in signs.iter().enumerate() {
            letters.push(Letter {
                root: NUM_POSITIVE + k,
                u: s,
            });
        }
        GeneratorWord { letters }
    }

    /// The sixteen-letter word `x_{α₁}(1)…x_{α₈}(1) x_{−α₁}(1)…x_{−α₈}(1)`.
    pub fn default_word() -> Self {
        Self::signed_default_word([1; 8])
    }

    /// The product of the first `len` letters of [`GeneratorWord::default_word`].
    pub fn default_prefix(len: usize) -> Result<Self> {
        let mut w = Self::default_word();
        w.letters.truncate(len);
        Self::new(w.letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reversed letters with negated parameters.
    pub fn inverse(&self) -> Self {
        GeneratorWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    root: l.root,
                    u: -l.u,
                })
                .collect(),
        }
    }

    pub fn concat(&self, other: &GeneratorWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GeneratorWord { letters }
    }
}

fn format_root(root: usize) -> String {
    if root < 8 {
        format!("{}", root + 1)
    } else if (NUM_POSITIVE..NUM_POSITIVE + 8).contains(&root) {
        format!("-{}", root - NUM_POSITIVE + 1)
    } else {
        format!("r{root}")
    }
}

impl fmt::Display for GeneratorWord {
    /// One letter per line: `<±i | r<k>> <u>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            writeln!(f, "{} {}", format_root(l.root), l.u)?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;

    /// Parses the word file format. A token `i` or `-i` with `i` in `1..=8`
    /// names `±α_i`; `r<k>` names root index `k` in canonical order. Blank
    /// lines and `#` comments are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (ln, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: ln + 1, msg };
            let mut parts = line.split_whitespace();
            let tok = parts.next().unwrap();
            let u: i64 = parts
                .next()
                .ok_or_else(|| err("missing parameter u".into()))?
                .parse()
                .map_err(|e| err(format!("bad parameter: {e}")))?;
            if parts.next().is_some() {
                return Err(err("trailing tokens".into()));
            }
            let root = if let Some(k) = tok.strip_prefix('r') {
                let k: usize = k.parse().map_err(|e| err(format!("bad root index: {e}")))?;
                if k >= NUM_ROOTS {
                    return Err(err(format!("root index {k} out of range")));
                }
                k
            } else {
                let i: i64 = tok
                    .parse()
                    .map_err(|e| err(format!("bad simple index: {e}")))?;
                match i {
                    1..=8 => (i - 1) as usize,
                    -8..=-1 => NUM_POSITIVE + (-i - 1) as usize,
                    _ => return Err(err(format!("simple index {i} out of range"))),
                }
            };
            letters.push(Letter { root, u });
        }
        GeneratorWord::new(letters)
    }
}

/// Precomputed `ad(e_α)` and `ad(e_α)²/2` for every root.
#[derive(Clone, Debug)]
pub struct AdjointGroup {
    alg: E8Algebra,
    ad: Vec<SparseMatrix>,
    half_sq: Vec<SparseMatrix>,
}

impl AdjointGroup {
    pub fn new(alg: E8Algebra) -> Result<Self> {
        let mut ad = Vec::with_capacity(NUM_ROOTS);
        let mut half_sq = Vec::with_capacity(NUM_ROOTS);
        for a in 0..NUM_ROOTS {
            let m = alg.ad_root_matrix(a);
            let sq = m.mul(&m);
            let h = sq
                .div_exact(2)
                .ok_or(Error::NonIntegralHalfSquare { root: a })?;
            if !sq.mul(&m).is_zero() {
                return Err(Error::StructureConstants(format!("ad(e_{a})^3 != 0")));
            }
            ad.push(m);
            half_sq.push(h);
        }
        Ok(AdjointGroup { alg, ad, half_sq })
    }

    pub fn standard() -> Result<Self> {
        Self::new(E8Algebra::standard()?)
    }

    pub fn algebra(&self) -> &E8Algebra {
        &self.alg
    }

    pub fn ad(&self, root: usize) -> &SparseMatrix {
        &self.ad[root]
    }

    /// `Id + u·ad(e_α) + u²·(ad(e_α)²/2)`.
    pub fn ad_unipotent(&self, root: usize, u: i64) -> SparseMatrix {
        let u2 = u.checked_mul(u).expect("parameter overflow");
        SparseMatrix::identity(DIM)
            .add(&self.ad[root].scale(u))
            .add(&self.half_sq[root].scale(u2))
    }

    /// `Ad(w)` over the integers.
    pub fn word_product(&self, word: &GeneratorWord) -> IntMatrix {
        let mut m = IntMatrix::identity(DIM);
        for l in word.letters() {
            m = m.mul_sparse(&self.ad_unipotent(l.root, l.u));
        }
        m
    }

    /// `Ad(w)` reduced modulo `p`, computed factor by factor.
    pub fn word_product_mod(&self, word: &GeneratorWord, zp: Zp) -> ModMatrix {
        let mut m = ModMatrix::identity(DIM, zp);
        for l in word.letters() {
            m = m.mul_sparse(&self.ad_unipotent(l.root, l.u));
        }
        m
    }

    /// `Ad(g)` for `g = x_{α₁}(1)…x_{α₈}(1) x_{−α₁}(1)…x_{−α₈}(1)`.
    pub fn build_default_element(&self) -> IntMatrix {
        self.word_product(&GeneratorWord::default_word())
    }
}
