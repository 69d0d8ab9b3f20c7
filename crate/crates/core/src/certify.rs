//! Galois certificates for `P = det(T − Ad(g)) / (T − 1)^8`, reproduction
//! of the degree-240 polynomial, and random-walk statistics.
//!
//! The argument: the splitting field of `P` has Galois group `G ⊆ W(E8)`
//! acting on the roots of `P` as on the 240 roots of E8. A squarefree
//! reduction mod `p` gives the cycle type of a Frobenius element. An odd
//! cycle type puts `G` outside `ker ε`; the type `{15:16}` is that of `c²`
//! for a Coxeter element `c`. The two imported group-theoretic facts then
//! force `G = W(E8)`.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactpoly::kernel::exact_eigenspace;
use crate::exactpoly::{
    annihilation_check, charpoly_exact, charpoly_mod, factor_degree_pattern, pattern_of_residues,
    polymod, reciprocal_transform, strip_unit_eigenvalue, write_poly, FactorPattern, IntPoly,
};
use crate::groupelem::{AdjointGroup, GeneratorWord, Letter};
use crate::matrix::IntMatrix;
use crate::rootsystem::{NUM_POSITIVE, RANK};
use crate::weyl::CycleType;
use crate::zp::{is_prime, Zp};

pub const CERTIFICATE_VERSION: u32 = 1;

/// Multiplicity of the eigenvalue 1 for a regular element: the rank.
pub const UNIT_MULTIPLICITY: usize = RANK;

/// Primes used by default: they exhibit the odd type `{4:2, 8:29}` and the
/// type `{15:16}` for the default element.
pub const DEFAULT_PRIMES: [u64; 2] = [7, 11];

/// Walk tolerance: `|f − e| ≤ WALK_SIGMAS·σ + WALK_RELATIVE_BAND·e`.
pub const WALK_SIGMAS: f64 = 3.0;
pub const WALK_RELATIVE_BAND: f64 = 0.30;

pub const AXIOM_CLASS_UNIQUENESS: &str =
    "The elements of W(E8) acting on the 240 roots with cycle type {15:16} form a single conjugacy class, the class of c^2 for a Coxeter element c.";
pub const AXIOM_MAXIMAL_SUBGROUPS: &str =
    "A proper subgroup of W(E8) containing an element conjugate to c^2 (c a Coxeter element) lies in the index-2 subgroup ker(sign).";

const CITE_CLASS: &str = "Springer, Regular elements of finite reflection groups, Invent. Math. 25 (1974); c^2 is regular of order 15";
const CITE_MAXIMAL: &str = "maximal subgroups of W(E8) = 2.O8+(2).2, of indices 12096, 11200, 2025, 1575, 1120, 960, 135, 120, 2 (ATLAS of Finite Groups)";
const CITE_TORUS: &str = "eigenvalues of Ad(t) on the root spaces are the values alpha(t); Gal(Qbar/Q) permutes them through the Weyl group of the torus";
const CITE_DEDEKIND: &str = "Dedekind: at a prime not dividing disc(P), Frobenius has cycle type equal to the factor degrees of P mod p";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Checked by this program.
    Computed,
    /// A standard theorem applied to computed data.
    Theorem,
    /// An imported fact, not recomputed here.
    Axiom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deduction {
    pub statement: String,
    pub basis: Basis,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub citation: Option<String>,
}

impl Deduction {
    fn computed(s: impl Into<String>) -> Self {
        Deduction {
            statement: s.into(),
            basis: Basis::Computed,
            citation: None,
        }
    }

    fn theorem(s: impl Into<String>, cite: &str) -> Self {
        Deduction {
            statement: s.into(),
            basis: Basis::Theorem,
            citation: Some(cite.into()),
        }
    }

    fn axiom(s: &str, cite: &str) -> Self {
        Deduction {
            statement: s.into(),
            basis: Basis::Axiom,
            citation: Some(cite.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub p: u64,
    pub squarefree: bool,
    pub degrees: BTreeMap<usize, usize>,
}

impl From<&FactorPattern> for PrimeRecord {
    fn from(f: &FactorPattern) -> Self {
        PrimeRecord {
            p: f.prime,
            squarefree: f.squarefree,
            degrees: f.degrees.clone(),
        }
    }
}

impl PrimeRecord {
    fn cycle_type(&self) -> Option<CycleType> {
        self.squarefree.then(|| CycleType(self.degrees.clone()))
    }

    fn is_odd_witness(&self) -> bool {
        self.cycle_type()
            .is_some_and(|c| c.points() == 240 && c.signature() == -1)
    }

    fn is_regular15(&self) -> bool {
        self.cycle_type() == Some(CycleType::regular15())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    #[serde(rename = "W(E8)-certified")]
    Certified,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    /// Word-file lines.
    pub word: Vec<String>,
    /// SHA-256 of `P` in the polynomial file format; absent when `P` was only
    /// determined modulo the listed primes.
    pub poly_sha: Option<String>,
    pub primes: Vec<PrimeRecord>,
    pub deductions: Vec<Deduction>,
    pub assumptions: Vec<String>,
    pub conclusion: Conclusion,
}

impl Certificate {
    fn new(word: &GeneratorWord) -> Self {
        Certificate {
            version: CERTIFICATE_VERSION,
            word: word.to_string().lines().map(str::to_owned).collect(),
            poly_sha: None,
            primes: Vec::new(),
            deductions: Vec::new(),
            assumptions: Vec::new(),
            conclusion: Conclusion::Inconclusive,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.conclusion == Conclusion::Certified
    }

    pub fn axiom_count(&self) -> usize {
        self.deductions
            .iter()
            .filter(|d| d.basis == Basis::Axiom)
            .count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// The soundness gate, checked from the certificate alone: a certified
    /// conclusion needs a squarefree reduction, an odd cycle type, the type
    /// `{15:16}`, and both imported facts.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.version != CERTIFICATE_VERSION {
            return Err(format!("unsupported version {}", self.version));
        }
        for r in &self.primes {
            if !is_prime(r.p) {
                return Err(format!("{} is not prime", r.p));
            }
            if r.squarefree && r.degrees.iter().map(|(d, c)| d * c).sum::<usize>() != 240 {
                return Err(format!("pattern at {} does not have degree 240", r.p));
            }
        }
        if !self.is_certified() {
            return Ok(());
        }
        if !self.primes.iter().any(|r| r.squarefree) {
            return Err("no squarefree reduction".into());
        }
        if !self.primes.iter().any(PrimeRecord::is_odd_witness) {
            return Err("no odd cycle type".into());
        }
        if !self.primes.iter().any(PrimeRecord::is_regular15) {
            return Err("no {15:16} cycle type".into());
        }
        for ax in [AXIOM_CLASS_UNIQUENESS, AXIOM_MAXIMAL_SUBGROUPS] {
            let declared = self
                .deductions
                .iter()
                .any(|d| d.basis == Basis::Axiom && d.statement == ax);
            if !declared || !self.assumptions.iter().any(|a| a == ax) {
                return Err(format!("axiom not declared: {ax}"));
            }
        }
        if self.axiom_count() != 2 {
            return Err("unexpected axioms".into());
        }
        Ok(())
    }

    /// Adds the group-theoretic conclusion when the records support it.
    fn conclude(&mut self) {
        let odd = self.primes.iter().find(|r| r.is_odd_witness()).map(|r| r.p);
        let reg = self.primes.iter().find(|r| r.is_regular15()).map(|r| r.p);
        let sep = self.primes.iter().any(|r| r.squarefree);
        match (sep, odd, reg) {
            (true, Some(po), Some(pr)) => {
                let ct = CycleType(
                    self.primes
                        .iter()
                        .find(|r| r.p == po)
                        .unwrap()
                        .degrees
                        .clone(),
                );
                self.deductions.push(Deduction::theorem(
                    format!("Frobenius at {po} has cycle type {ct} of sign -1, so G is not contained in ker(sign)"),
                    CITE_DEDEKIND,
                ));
                self.deductions.push(Deduction::theorem(
                    format!("Frobenius at {pr} has cycle type {{15:16}}"),
                    CITE_DEDEKIND,
                ));
                self.deductions
                    .push(Deduction::axiom(AXIOM_CLASS_UNIQUENESS, CITE_CLASS));
                self.deductions
                    .push(Deduction::axiom(AXIOM_MAXIMAL_SUBGROUPS, CITE_MAXIMAL));
                self.assumptions = vec![
                    AXIOM_CLASS_UNIQUENESS.into(),
                    AXIOM_MAXIMAL_SUBGROUPS.into(),
                ];
                self.deductions.push(Deduction::computed(
                    "G contains a conjugate of c^2 and is not inside ker(sign), hence G = W(E8)",
                ));
                self.conclusion = Conclusion::Certified;
            }
            _ => {
                let mut missing = Vec::new();
                if !sep {
                    missing.push("a squarefree reduction");
                }
                if odd.is_none() {
                    missing.push("an odd cycle type");
                }
                if reg.is_none() {
                    missing.push("the cycle type {15:16}");
                }
                self.deductions.push(Deduction::computed(format!(
                    "not found among the primes tried: {}",
                    missing.join(", ")
                )));
            }
        }
    }
}

/// SHA-256 of the polynomial file text.
pub fn poly_sha(p: &IntPoly) -> String {
    let mut buf = Vec::new();
    write_poly(p, &mut buf).expect("writing to memory");
    hex::encode(Sha256::digest(&buf))
}

/// Exact certification result together with the polynomials computed.
#[derive(Clone, Debug)]
pub struct CertifyOutcome {
    pub certificate: Certificate,
    pub charpoly: IntPoly,
    /// `P`, when `(T − 1)^8` divides the characteristic polynomial.
    pub poly: Option<IntPoly>,
}

/// Exact pipeline: `Ad(w)` over `Z`, its characteristic polynomial, `P`,
/// factor patterns at `primes`, semisimplicity, and the conclusion.
pub fn certify_w_e8(
    group: &AdjointGroup,
    word: &GeneratorWord,
    primes: &[u64],
) -> Result<CertifyOutcome> {
    let m = group.word_product(word);
    certify_matrix(word, &m, primes)
}

pub(crate) fn certify_matrix(
    word: &GeneratorWord,
    m: &IntMatrix,
    primes: &[u64],
) -> Result<CertifyOutcome> {
    let mut cert = Certificate::new(word);
    let cp = charpoly_exact(m).map_err(Error::at_stage("characteristic polynomial"))?;
    let stripped = match strip_unit_eigenvalue(&cp, UNIT_MULTIPLICITY) {
        Ok(s) if !s.vanishes_at_one => s,
        Ok(_) | Err(Error::UnitMultiplicity { .. }) => {
            cert.deductions.push(Deduction::computed(
                "element not regular at 1: the eigenvalue 1 of Ad(w) does not have multiplicity exactly 8",
            ));
            return Ok(CertifyOutcome {
                certificate: cert,
                charpoly: cp,
                poly: None,
            });
        }
        Err(e) => return Err(e),
    };
    let p = stripped.quotient;
    cert.poly_sha = Some(poly_sha(&p));
    cert.deductions.push(Deduction::computed(
        "det(T - Ad(w)) = (T - 1)^8 P(T) with P monic of degree 240 and P(1) != 0",
    ));

    for &q in primes {
        let pat = factor_degree_pattern(&p, q).map_err(Error::at_stage("factor patterns"))?;
        cert.primes.push(PrimeRecord::from(&pat));
    }
    if let Some(r) = cert.primes.iter().find(|r| r.squarefree) {
        cert.deductions.push(Deduction::computed(format!(
            "P mod {} is squarefree, so P is separable and its 240 roots are distinct",
            r.p
        )));
        cert.deductions.push(Deduction::theorem(
            "P separable with P(1) != 0 makes the semisimple part of g regular, so Gal(P) embeds in W(E8) acting on the 240 roots",
            CITE_TORUS,
        ));
        let ann = annihilation_check(m, &p, 3);
        if ann.holds {
            cert.deductions.push(Deduction::computed(format!(
                "(Ad(w) - Id) P(Ad(w)) = 0 modulo the primes {:?}",
                ann.primes
            )));
        }
        if let Some(ker) = exact_eigenspace(m, 1, 8) {
            if ker.len() == UNIT_MULTIPLICITY && ann.holds {
                cert.deductions.push(Deduction::computed(
                    "ker(Ad(w) - Id) contains 8 independent integer vectors, verified exactly; with P squarefree the minimal polynomial of Ad(w) is (T - 1) P and w is semisimple",
                ));
            }
        }
    }
    cert.conclude();
    Ok(CertifyOutcome {
        certificate: cert,
        charpoly: cp,
        poly: Some(p),
    })
}

/// Outcome of reducing one element modulo one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModOutcome {
    /// The eigenvalue 1 has multiplicity other than 8 mod `p`.
    Degenerate {
        unit_multiplicity: usize,
    },
    /// `P mod p` is not squarefree.
    NotSquarefree,
    Pattern(CycleType),
}

/// Characteristic polynomial of `Ad(w) mod p` with the maximal power of
/// `(T − 1)` removed, and its factor pattern.
pub fn reduce_element(group: &AdjointGroup, word: &GeneratorWord, zp: Zp) -> ModOutcome {
    let m = group.word_product_mod(word, zp);
    let mut f = charpoly_mod(&m);
    let one = [zp.p() - 1, 1];
    let mut k = 0;
    loop {
        let (q, r) = polymod::divrem(&f, &one, zp);
        if !r.is_empty() || f.len() <= 1 {
            break;
        }
        f = q;
        k += 1;
    }
    if k != UNIT_MULTIPLICITY {
        return ModOutcome::Degenerate {
            unit_multiplicity: k,
        };
    }
    let pat = pattern_of_residues(&f, zp);
    match CycleType::of_pattern(&pat) {
        Some(c) => ModOutcome::Pattern(c),
        None => ModOutcome::NotSquarefree,
    }
}

/// Consecutive primes with the wrong multiplicity of the eigenvalue 1 after
/// which [`certify_modular`] gives up on an element.
pub const DEGENERATE_STREAK: usize = 3;

/// Certification without integer polynomials: primes from `start` upward,
/// at most `budget` of them, until both witnesses appear.
///
/// Every characteristic polynomial of `Ad(g)` is divisible by `(T − 1)^8`
/// (it equals that of the semisimple part, which centralizes a torus), so
/// multiplicity exactly 8 modulo `p` implies it over `Z`, and the reduction
/// of `P` is the stripped polynomial mod `p`.
pub fn certify_modular(
    group: &AdjointGroup,
    word: &GeneratorWord,
    start: u64,
    budget: usize,
) -> Certificate {
    let mut cert = Certificate::new(word);
    cert.deductions.push(Deduction::theorem(
        "(T - 1)^8 divides det(T - Ad(w)) over Z; P is determined modulo each listed prime",
        CITE_TORUS,
    ));
    let mut q = start.max(2);
    let mut tried = 0;
    let (mut odd, mut reg) = (false, false);
    let mut streak = 0;
    while tried < budget && !(odd && reg) {
        if is_prime(q) {
            tried += 1;
            let outcome = reduce_element(group, word, Zp::new(q));
            if let ModOutcome::Degenerate { unit_multiplicity } = outcome {
                streak += 1;
                if streak == DEGENERATE_STREAK {
                    cert.deductions.push(Deduction::computed(format!(
                        "the eigenvalue 1 has multiplicity {unit_multiplicity} != 8 modulo {DEGENERATE_STREAK} consecutive primes up to {q}; element not regular"
                    )));
                    break;
                }
            } else {
                streak = 0;
            }
            let rec = match outcome {
                ModOutcome::Pattern(c) => PrimeRecord {
                    p: q,
                    squarefree: true,
                    degrees: c.0,
                },
                _ => PrimeRecord {
                    p: q,
                    squarefree: false,
                    degrees: BTreeMap::new(),
                },
            };
            let new_odd = !odd && rec.is_odd_witness();
            let new_reg = !reg && rec.is_regular15();
            let first_sep = rec.squarefree && !cert.primes.iter().any(|r| r.squarefree);
            odd |= new_odd;
            reg |= new_reg;
            if new_odd || new_reg || first_sep {
                cert.primes.push(rec);
            }
        }
        q += 1;
    }
    if let Some(r) = cert.primes.iter().find(|r| r.squarefree) {
        cert.deductions.push(Deduction::computed(format!(
            "modulo {} the eigenvalue 1 has multiplicity exactly 8 and P is squarefree, so P is separable with P(1) != 0",
            r.p
        )));
        cert.deductions.push(Deduction::theorem(
            "P separable with P(1) != 0 makes the semisimple part of g regular, so Gal(P) embeds in W(E8) acting on the 240 roots",
            CITE_TORUS,
        ));
    }
    cert.conclude();
    cert
}

/// Primes scanned for the two witness types.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub patterns: Vec<FactorPattern>,
    pub regular15_at: Option<u64>,
    pub odd_at: Option<u64>,
    pub scanned: usize,
    pub complete: bool,
}

/// Factor patterns of `P` at successive primes from 2, until an odd type and
/// `{15:16}` have both appeared or `budget` primes have been tried.
pub fn prime_scan(p: &IntPoly, budget: usize) -> ScanReport {
    let mut rep = ScanReport {
        patterns: Vec::new(),
        regular15_at: None,
        odd_at: None,
        scanned: 0,
        complete: false,
    };
    let mut q = 2;
    while rep.scanned < budget && !rep.complete {
        if is_prime(q) {
            rep.scanned += 1;
            if let Ok(pat) = factor_degree_pattern(p, q) {
                let rec = PrimeRecord::from(&pat);
                if rep.odd_at.is_none() && rec.is_odd_witness() {
                    rep.odd_at = Some(q);
                }
                if rep.regular15_at.is_none() && rec.is_regular15() {
                    rep.regular15_at = Some(q);
                }
                rep.patterns.push(pat);
            }
            rep.complete = rep.odd_at.is_some() && rep.regular15_at.is_some();
        }
        q += 1;
    }
    rep
}

/// Everything the default element produces.
#[derive(Clone, Debug)]
pub struct Reproduction {
    pub matrix_nonzeros: usize,
    pub matrix_max: BigInt,
    pub charpoly: IntPoly,
    pub p: IntPoly,
    pub q: IntPoly,
    pub certificate: Certificate,
}

/// End-to-end run on the default sixteen-letter word with primes 7 and 11.
pub fn reproduce_default(group: &AdjointGroup) -> Result<Reproduction> {
    let word = GeneratorWord::default_word();
    let m = group.word_product(&word);
    let out = certify_matrix(&word, &m, &DEFAULT_PRIMES)?;
    let p = out
        .poly
        .ok_or(Error::UnitMultiplicity {
            expected: UNIT_MULTIPLICITY,
        })
        .map_err(Error::at_stage("strip (T - 1)^8"))?;
    let q = reciprocal_transform(&p).map_err(Error::at_stage("reciprocal transform"))?;
    Ok(Reproduction {
        matrix_nonzeros: m.nonzero_count(),
        matrix_max: m.max_abs(),
        charpoly: out.charpoly,
        p,
        q,
        certificate: out.certificate,
    })
}

/// Writes `P.txt`, `Q.txt` and `certificate.json` into `dir`.
pub fn write_reproduction(t: &Reproduction, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_poly(&t.p, std::fs::File::create(dir.join("P.txt"))?)?;
    write_poly(&t.q, std::fs::File::create(dir.join("Q.txt"))?)?;
    std::fs::write(dir.join("certificate.json"), t.certificate.to_json())?;
    Ok(())
}

/// The 32 walk steps: `x_{±α_i}(±1)`.
pub fn walk_letters() -> Vec<Letter> {
    let mut out = Vec::with_capacity(32);
    for u in [1, -1] {
        for k in 0..RANK {
            out.push(Letter { root: k, u });
            out.push(Letter {
                root: NUM_POSITIVE + k,
                u,
            });
        }
    }
    out
}

/// Word of `len` uniform steps from [`walk_letters`]; `None` for `len = 0`.
pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> Option<GeneratorWord> {
    let letters = walk_letters();
    let w: Vec<Letter> = (0..len)
        .map(|_| letters[rng.gen_range(0..letters.len())])
        .collect();
    GeneratorWord::new(w).ok()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WalkSpec {
    pub p: u64,
    pub steps: usize,
    pub samples: usize,
    pub seed: u64,
}

impl WalkSpec {
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) || self.p >= 1 << 31 {
            return Err(Error::BadPrime(self.p));
        }
        if self.samples == 0 {
            return Err(Error::Word("walk needs at least one sample".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetStat {
    pub cycle_type: CycleType,
    pub expected: f64,
    pub observed: usize,
    pub frequency: f64,
    pub sigma: f64,
    pub tolerance: f64,
    pub within: bool,
}

impl TargetStat {
    pub fn new(cycle_type: CycleType, expected: f64, observed: usize, n: usize) -> Self {
        let frequency = observed as f64 / n as f64;
        let sigma = (expected * (1.0 - expected) / n as f64).sqrt();
        let tolerance = WALK_SIGMAS * sigma + WALK_RELATIVE_BAND * expected;
        TargetStat {
            cycle_type,
            expected,
            observed,
            frequency,
            sigma,
            tolerance,
            within: (frequency - expected).abs() <= tolerance,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternCount {
    pub cycle_type: CycleType,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WalkReport {
    pub spec: WalkSpec,
    /// Samples whose eigenvalue 1 did not have multiplicity 8 mod `p`.
    pub degenerate: usize,
    pub not_squarefree: usize,
    pub patterns: Vec<PatternCount>,
    pub targets: Vec<TargetStat>,
    pub tolerance_rule: String,
}

/// Expected proportions of the two witness types in W(E8).
pub const TARGET_REGULAR15: f64 = 1.0 / 30.0;
pub const TARGET_ODD_4_8: f64 = 1.0 / 16.0;

/// Tallies the factor patterns of `N` random walks of length `k` mod `p`.
/// Sample `i` draws from stream `i` of a generator seeded with the spec's
/// seed, so results do not depend on the thread count.
pub fn walk_statistics(group: &AdjointGroup, spec: &WalkSpec) -> Result<WalkReport> {
    spec.validate()?;
    let zp = Zp::new(spec.p);
    let outcomes: Vec<ModOutcome> = (0..spec.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(i as u64);
            match random_word(&mut rng, spec.steps) {
                Some(w) => reduce_element(group, &w, zp),
                None => ModOutcome::Degenerate {
                    unit_multiplicity: 248,
                },
            }
        })
        .collect();
    let mut degenerate = 0;
    let mut not_squarefree = 0;
    let mut tally: BTreeMap<CycleType, usize> = BTreeMap::new();
    for o in outcomes {
        match o {
            ModOutcome::Degenerate { .. } => degenerate += 1,
            ModOutcome::NotSquarefree => not_squarefree += 1,
            ModOutcome::Pattern(c) => *tally.entry(c).or_insert(0) += 1,
        }
    }
    let n = spec.samples;
    let targets = vec![
        TargetStat::new(
            CycleType::regular15(),
            TARGET_REGULAR15,
            tally.get(&CycleType::regular15()).copied().unwrap_or(0),
            n,
        ),
        TargetStat::new(
            CycleType::odd_4_8(),
            TARGET_ODD_4_8,
            tally.get(&CycleType::odd_4_8()).copied().unwrap_or(0),
            n,
        ),
    ];
    let mut patterns: Vec<PatternCount> = tally
        .into_iter()
        .map(|(cycle_type, count)| PatternCount { cycle_type, count })
        .collect();
    patterns.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then_with(|| a.cycle_type.cmp(&b.cycle_type))
    });
    Ok(WalkReport {
        spec: spec.clone(),
        degenerate,
        not_squarefree,
        patterns,
        targets,
        tolerance_rule: format!(
            "|f - e| <= {WALK_SIGMAS} sigma + {WALK_RELATIVE_BAND} e, sigma = sqrt(e(1-e)/N)"
        ),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RandomWordEntry {
    pub index: usize,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct RandomWordsReport {
    pub words: usize,
    pub length: usize,
    pub seed: u64,
    pub prime_budget: usize,
    pub certified: usize,
    pub entries: Vec<RandomWordEntry>,
}

/// Certifies `n` random words of length `len` by the modular route. With
/// `exact`, each certified word also gets its exact `P` (and `poly_sha`).
pub fn random_words_experiment(
    group: &AdjointGroup,
    n: usize,
    len: usize,
    seed: u64,
    prime_budget: usize,
    exact: bool,
) -> Result<(RandomWordsReport, Vec<Option<IntPoly>>)> {
    let results: Vec<Result<(Certificate, Option<IntPoly>)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let w = random_word(&mut rng, len)
                .ok_or_else(|| Error::Word("length must be positive".into()))?;
            let mut cert = certify_modular(group, &w, 3, prime_budget);
            let mut poly = None;
            if exact && cert.is_certified() {
                let cp = charpoly_exact(&group.word_product(&w))?;
                let p = strip_unit_eigenvalue(&cp, UNIT_MULTIPLICITY)?.quotient;
                cert.poly_sha = Some(poly_sha(&p));
                poly = Some(p);
            }
            Ok((cert, poly))
        })
        .collect();
    let mut entries = Vec::with_capacity(n);
    let mut polys = Vec::with_capacity(n);
    for (index, r) in results.into_iter().enumerate() {
        let (certificate, p) = r?;
        entries.push(RandomWordEntry { index, certificate });
        polys.push(p);
    }
    let certified = entries
        .iter()
        .filter(|e| e.certificate.is_certified())
        .count();
    Ok((
        RandomWordsReport {
            words: n,
            length: len,
            seed,
            prime_budget,
            certified,
            entries,
        },
        polys,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn group() -> &'static AdjointGroup {
        static G: OnceLock<AdjointGroup> = OnceLock::new();
        G.get_or_init(|| AdjointGroup::standard().unwrap())
    }

    #[test]
    fn default_word_certifies() {
        let out = certify_w_e8(group(), &GeneratorWord::default_word(), &DEFAULT_PRIMES).unwrap();
        let c = &out.certificate;
        assert!(c.is_certified(), "{}", c.to_json());
        assert_eq!(c.axiom_count(), 2);
        assert!(c.validate().is_ok());
        assert!(c.primes[0].is_odd_witness());
        assert!(c.primes[1].is_regular15());
        assert!(c
            .deductions
            .iter()
            .any(|d| d.statement.contains("verified exactly")));
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(&back, c);
    }

    #[test]
    fn identity_is_inconclusive() {
        let w = GeneratorWord::new(vec![Letter { root: 0, u: 0 }]).unwrap();
        let out = certify_w_e8(group(), &w, &DEFAULT_PRIMES).unwrap();
        assert!(!out.certificate.is_certified());
        assert!(out.poly.is_none());
        assert_eq!(out.charpoly, IntPoly::unit_power(248));
    }

    #[test]
    fn gate_rejects_tampering() {
        let out = certify_w_e8(group(), &GeneratorWord::default_word(), &DEFAULT_PRIMES).unwrap();
        let mut c = out.certificate.clone();
        c.primes.retain(|r| !r.is_regular15());
        assert!(c.validate().is_err());
        let mut c = out.certificate.clone();
        c.deductions.retain(|d| d.basis != Basis::Axiom);
        assert!(c.validate().is_err());
        let mut c = out.certificate;
        c.primes[0].degrees = BTreeMap::from([(8, 30)]);
        assert!(c.validate().is_err());
    }

    #[test]
    fn modular_route_agrees() {
        let w = GeneratorWord::default_word();
        assert_eq!(
            reduce_element(group(), &w, Zp::new(7)),
            ModOutcome::Pattern(CycleType::odd_4_8())
        );
        assert_eq!(
            reduce_element(group(), &w, Zp::new(11)),
            ModOutcome::Pattern(CycleType::regular15())
        );
        let c = certify_modular(group(), &w, 7, 2);
        assert!(c.is_certified());
        assert!(c.poly_sha.is_none());
        assert!(c.validate().is_ok());
    }

    #[test]
    fn zero_step_walks_are_degenerate() {
        let spec = WalkSpec {
            p: 101,
            steps: 0,
            samples: 5,
            seed: 1,
        };
        let r = walk_statistics(group(), &spec).unwrap();
        assert_eq!(r.degenerate, 5);
        assert!(r.patterns.is_empty());
    }
}
