use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use e8galois::certify::{self, Certificate, WalkSpec};
use e8galois::chevalley::{default_cache_dir, load_or_build, E8Algebra, NUM_EXTRASPECIAL};
use e8galois::exactpoly::{self, IntPoly};
use e8galois::groupelem::{AdjointGroup, GeneratorWord};
use e8galois::rootsystem::RootSystem;
use e8galois::weyl::{CycleType, WeylGroup, MAXIMAL_SUBGROUP_INDICES};
use e8galois::zp::is_prime;

/// Exact E8 adjoint characteristic polynomials and W(E8) Galois certificates.
#[derive(Parser, Debug)]
#[command(name = "e8galois", version)]
struct Cli {
    /// Master seed for every randomized step.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Compute P = det(T - Ad(g)) / (T - 1)^8 for a word.
    BuildPoly(BuildPoly),
    /// Certify that the Galois group of P is W(E8).
    Certify(CertifyArgs),
    /// Factor-degree pattern of a polynomial modulo a prime.
    Factor(FactorArgs),
    /// Exact discriminant of a polynomial.
    Disc(DiscArgs),
    /// Irreducibility sieve from factor patterns.
    Sieve(SieveArgs),
    /// W(E8) as a permutation group on the roots.
    Weyl(WeylArgs),
    /// Factor-pattern statistics of random walks modulo a prime.
    Walk(WalkArgs),
    /// The 240 roots in doubled coordinates, canonical order.
    DumpRoots(OutArg),
    /// The structure-constant table (cache format).
    DumpConstants(OutArg),
}

#[derive(Args, Debug)]
struct WordArg {
    /// `default` or a word file.
    #[arg(long, default_value = "default")]
    word: String,
}

#[derive(Args, Debug)]
struct OutArg {
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BuildPoly {
    #[command(flatten)]
    word: WordArg,
    /// Where to write P.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write Q with P(T) = T^120 Q(T + 1/T).
    #[arg(long)]
    q_out: Option<PathBuf>,
    /// Where to write the full characteristic polynomial.
    #[arg(long)]
    charpoly_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    word: WordArg,
    /// Primes for the factor patterns.
    #[arg(long, value_delimiter = ',', default_values_t = certify::DEFAULT_PRIMES)]
    primes: Vec<u64>,
    /// Where to write the certificate JSON (stdout if omitted).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Scan primes upward instead of using --primes, working modulo p only.
    #[arg(long)]
    modular: bool,
    /// Prime budget for --modular and --random.
    #[arg(long, default_value_t = 200)]
    budget: usize,
    /// Re-validate an existing certificate file instead of computing.
    #[arg(long, conflicts_with_all = ["modular", "random"])]
    check: Option<PathBuf>,
    /// Certify this many seeded random words instead of --word.
    #[arg(long)]
    random: Option<usize>,
    /// Length of the random words.
    #[arg(long, default_value_t = 20)]
    length: usize,
    /// With --random, also compute the exact P of each certified word.
    #[arg(long)]
    exact: bool,
}

#[derive(Args, Debug)]
struct FactorArgs {
    #[arg(long)]
    poly: PathBuf,
    #[arg(long = "mod", value_delimiter = ',', required = true)]
    primes: Vec<u64>,
}

#[derive(Args, Debug)]
struct DiscArgs {
    #[arg(long)]
    poly: PathBuf,
    /// Write the decimal value here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Check divisibility by a product like `2^3640*3^300*...`.
    #[arg(long)]
    divisors: Option<String>,
}

#[derive(Args, Debug)]
struct SieveArgs {
    #[arg(long)]
    poly: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = certify::DEFAULT_PRIMES)]
    primes: Vec<u64>,
    /// Further primes to try, upward from 13, while degrees remain feasible.
    #[arg(long, default_value_t = 200)]
    budget: usize,
}

#[derive(Args, Debug)]
struct WeylArgs {
    /// Uniform samples for the cycle-type frequency table.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
}

#[derive(Args, Debug)]
struct WalkArgs {
    #[arg(long = "mod", default_value_t = 101)]
    p: u64,
    /// Walk lengths; one report per value.
    #[arg(long, value_delimiter = ',', default_values_t = [40usize])]
    steps: Vec<usize>,
    #[arg(long, default_value_t = 5000)]
    samples: usize,
}

/// Failure classes mapped to exit codes.
enum Fail {
    Usage(String),
    Compute(String),
}

impl From<e8galois::Error> for Fail {
    fn from(e: e8galois::Error) -> Self {
        Fail::Compute(e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail::Compute(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(Fail::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.cmd {
        Cmd::BuildPoly(a) => build_poly(a),
        Cmd::Certify(a) => certify_cmd(a, cli.seed),
        Cmd::Factor(a) => factor(a),
        Cmd::Disc(a) => disc(a),
        Cmd::Sieve(a) => sieve(a),
        Cmd::Weyl(a) => weyl(a, cli.seed),
        Cmd::Walk(a) => walk(a, cli.seed),
        Cmd::DumpRoots(a) => {
            let rs = RootSystem::build()?;
            let mut buf = Vec::new();
            rs.dump(&mut buf)?;
            emit_bytes(&buf, a.out.as_deref())
        }
        Cmd::DumpConstants(a) => {
            let rs = RootSystem::build()?;
            let sc = load_or_build(&rs, &[1; NUM_EXTRASPECIAL], &default_cache_dir())?;
            emit_bytes(sc.to_cache_string(&rs).as_bytes(), a.out.as_deref())
        }
    }
}

fn emit_bytes(bytes: &[u8], out: Option<&Path>) -> CmdResult {
    match out {
        Some(p) => fs::write(p, bytes)?,
        None => io::stdout().write_all(bytes)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_json(v: &Value, out: Option<&Path>) -> Result<(), Fail> {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    emit_bytes(s.as_bytes(), out)?;
    Ok(())
}

fn group() -> Result<AdjointGroup, Fail> {
    let rs = RootSystem::build()?;
    let sc = load_or_build(&rs, &[1; NUM_EXTRASPECIAL], &default_cache_dir())?;
    Ok(AdjointGroup::new(E8Algebra::new(rs, sc))?)
}

fn read_word(spec: &str) -> Result<GeneratorWord, Fail> {
    if spec == "default" {
        return Ok(GeneratorWord::default_word());
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| Fail::Usage(format!("cannot read word file {spec}: {e}")))?;
    text.parse()
        .map_err(|e| Fail::Usage(format!("{spec}: {e}")))
}

fn read_poly_file(path: &Path) -> Result<IntPoly, Fail> {
    let f = fs::File::open(path)
        .map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))?;
    exactpoly::read_poly(BufReader::new(f))
        .map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn check_primes(ps: &[u64]) -> Result<(), Fail> {
    match ps.iter().find(|&&p| !is_prime(p) || p >= 1 << 31) {
        Some(p) => Err(Fail::Usage(format!("{p} is not a prime below 2^31"))),
        None => Ok(()),
    }
}

fn write_poly_file(p: &IntPoly, out: Option<&Path>) -> Result<(), Fail> {
    let mut buf = Vec::new();
    exactpoly::write_poly(p, &mut buf)?;
    emit_bytes(&buf, out)?;
    Ok(())
}

fn build_poly(a: &BuildPoly) -> CmdResult {
    let word = read_word(&a.word.word)?;
    let g = group()?;
    let m = g.word_product(&word);
    let cp = exactpoly::charpoly_exact(&m)?;
    if let Some(path) = &a.charpoly_out {
        write_poly_file(&cp, Some(path))?;
    }
    let p = exactpoly::strip_unit_eigenvalue(&cp, certify::UNIT_MULTIPLICITY)?.quotient;
    write_poly_file(&p, a.out.as_deref())?;
    let q = exactpoly::reciprocal_transform(&p).ok();
    if let Some(path) = &a.q_out {
        let q = q
            .as_ref()
            .ok_or_else(|| Fail::Compute("P is not self-reciprocal".into()))?;
        write_poly_file(q, Some(path))?;
    }
    let summary = json!({
        "matrix_nonzeros": m.nonzero_count(),
        "matrix_max_abs": m.max_abs().to_string(),
        "degree": p.degree(),
        "monic": p.is_monic(),
        "self_reciprocal": p.is_palindromic(),
        "value_at_one": p.eval(&1.into()).to_string(),
        "poly_sha": certify::poly_sha(&p),
    });
    // the polynomial may be on stdout, so the summary goes to stderr
    eprintln!("{}", serde_json::to_string_pretty(&summary).expect("json"));
    Ok(ExitCode::SUCCESS)
}

fn certify_cmd(a: &CertifyArgs, seed: u64) -> CmdResult {
    if let Some(path) = &a.check {
        let text = fs::read_to_string(path)
            .map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))?;
        let cert = Certificate::from_json(&text)?;
        let verdict = cert.validate();
        emit_json(
            &json!({
                "valid": verdict.is_ok(),
                "reason": verdict.as_ref().err(),
                "conclusion": cert.conclusion,
            }),
            a.report.as_deref(),
        )?;
        return Ok(if verdict.is_ok() && cert.is_certified() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }
    let g = group()?;
    if let Some(n) = a.random {
        if a.length == 0 {
            return Err(Fail::Usage("--length must be positive".into()));
        }
        let (rep, _) = certify::random_words_experiment(&g, n, a.length, seed, a.budget, a.exact)?;
        emit_json(
            &serde_json::to_value(&rep).expect("json"),
            a.report.as_deref(),
        )?;
        return Ok(if rep.certified > 0 {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }
    let word = read_word(&a.word.word)?;
    let cert = if a.modular {
        certify::certify_modular(&g, &word, 2, a.budget)
    } else {
        check_primes(&a.primes)?;
        certify::certify_w_e8(&g, &word, &a.primes)?.certificate
    };
    emit_bytes(cert.to_json().as_bytes(), a.report.as_deref())?;
    Ok(if cert.is_certified() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn factor(a: &FactorArgs) -> CmdResult {
    check_primes(&a.primes)?;
    let p = read_poly_file(&a.poly)?;
    let pats: Result<Vec<_>, _> = a
        .primes
        .iter()
        .map(|&q| exactpoly::factor_degree_pattern(&p, q))
        .collect();
    let pats = pats?;
    let v = if pats.len() == 1 {
        serde_json::to_value(&pats[0])
    } else {
        serde_json::to_value(&pats)
    };
    emit_json(&v.expect("json"), None)?;
    Ok(ExitCode::SUCCESS)
}

fn disc(a: &DiscArgs) -> CmdResult {
    let p = read_poly_file(&a.poly)?;
    let factors = match &a.divisors {
        Some(s) => Some(exactpoly::parse_prime_powers(s).map_err(|e| Fail::Usage(e.to_string()))?),
        None => None,
    };
    let d = exactpoly::discriminant_exact(&p)?;
    let text = d.to_string();
    if let Some(path) = &a.out {
        fs::write(path, format!("{text}\n"))?;
    }
    let mut v = json!({
        "degree": p.degree(),
        "sign": if text.starts_with('-') { -1 } else if d == 0.into() { 0 } else { 1 },
        "digits": d.magnitude().to_string().len(),
    });
    if let Some(f) = factors {
        v["divisors"] = serde_json::to_value(exactpoly::check_divisors(&d, &f)).expect("json");
    }
    emit_json(&v, None)?;
    Ok(ExitCode::SUCCESS)
}

fn sieve(a: &SieveArgs) -> CmdResult {
    check_primes(&a.primes)?;
    let p = read_poly_file(&a.poly)?;
    let rep = exactpoly::irreducibility_scan(&p, &a.primes, 13, a.budget)?;
    emit_json(&serde_json::to_value(&rep).expect("json"), None)?;
    Ok(if rep.irreducible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn weyl(a: &WeylArgs, seed: u64) -> CmdResult {
    let rs = RootSystem::build()?;
    let w = WeylGroup::build(&rs);
    let c = w.coxeter_element();
    let freq = w.class_frequency_experiment(a.samples, seed);
    let table: Vec<Value> = freq
        .iter()
        .map(|(ct, n)| json!({ "cycle_type": ct, "count": n, "signature": ct.signature() }))
        .collect();
    let count = |ct: &CycleType| freq.get(ct).copied().unwrap_or(0);
    emit_json(
        &json!({
            "order": w.order().to_string(),
            "base": w.bsgs().base(),
            "orbit_sizes": w.bsgs().orbit_sizes(),
            "coxeter_relations": w.coxeter_relations_hold(),
            "lattice_automorphisms": w.lattice_automorphism_check(&rs),
            "generator_cycle_types": w.generators().iter().map(|g| g.cycle_type()).collect::<Vec<_>>(),
            "coxeter": {
                "order": c.order(),
                "cycle_type": c.cycle_type(),
                "square_cycle_type": c.pow(2).cycle_type(),
                "square_signature": c.pow(2).signature(),
            },
            "maximal_subgroup_indices": MAXIMAL_SUBGROUP_INDICES,
            "samples": a.samples,
            "seed": seed,
            "regular15_count": count(&CycleType::regular15()),
            "odd_4_8_count": count(&CycleType::odd_4_8()),
            "frequencies": table,
        }),
        None,
    )?;
    Ok(ExitCode::SUCCESS)
}

fn walk(a: &WalkArgs, seed: u64) -> CmdResult {
    let g = group()?;
    let mut reports = Vec::new();
    for &k in &a.steps {
        let spec = WalkSpec {
            p: a.p,
            steps: k,
            samples: a.samples,
            seed,
        };
        spec.validate().map_err(|e| Fail::Usage(e.to_string()))?;
        reports.push(certify::walk_statistics(&g, &spec)?);
    }
    let v = if reports.len() == 1 {
        serde_json::to_value(&reports[0])
    } else {
        serde_json::to_value(&reports)
    };
    emit_json(&v.expect("json"), None)?;
    Ok(ExitCode::SUCCESS)
}
