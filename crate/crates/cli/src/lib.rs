//! Command implementations for the `chevalley` binary. Every command returns
//! its report as a string so that output is reproducible byte for byte.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use chevalley::chevalley::{Chevalley, GroupElement, Letter, Pairing, Word};
use chevalley::norm::{self, DEFAULT_MEM_CAP};
use chevalley::ring::{Elem, Ring, RingConfig, RingSpec};
use chevalley::roots::{Root, RootSystem, WitnessCase};
use chevalley::witness::{self, CongruenceSubgroup, CosetTable};

#[derive(Debug, Parser)]
#[command(name = "chevalley", version, about = "Exact experiments with Chevalley groups over rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Roots, lengths and Cartan matrix of a root system.
    Roots(RootsArgs),
    /// Commutator formula, torus action and additivity on random parameters.
    Verify(VerifyArgs),
    /// Bounded-length words for powers of root elements.
    Witness(WitnessArgs),
    /// Split a product of root letters in a congruence subgroup into conjugates and coset representatives.
    Rewrite(RewriteArgs),
    /// Write an element of a type-A elementary group as root letters.
    Factor(FactorArgs),
    /// Word-norm diameters of E(Phi, Z/m) for a conjugation-closed generating set.
    Diameter(DiameterArgs),
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Ring description as JSON; defaults to the integers.
    #[arg(long, conflicts_with = "modulus")]
    pub ring: Option<PathBuf>,
    /// Work over Z/m.
    #[arg(long = "mod", value_name = "M")]
    pub modulus: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub system: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub system: String,
    #[command(flatten)]
    pub ring: RingArgs,
    /// Random parameter pairs per ordered root pair.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub system: String,
    /// `long`, `b2-short` or `g2-short`.
    #[arg(long)]
    pub case: String,
    /// Target root; defaults to the first root of the requested case.
    #[arg(long)]
    pub root: Option<String>,
    #[arg(long, default_value = "2")]
    pub p: BigInt,
    #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000")]
    pub n: Vec<BigInt>,
    /// Basis elements xi to use, by index; defaults to the whole basis.
    #[arg(long, value_delimiter = ',')]
    pub xi: Vec<usize>,
    #[command(flatten)]
    pub ring: RingArgs,
}

#[derive(Debug, Args)]
pub struct RewriteArgs {
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub level: BigInt,
    /// File holding a word of root letters.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub ring: RingArgs,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[arg(long)]
    pub system: String,
    /// File holding a word whose value is factored.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub ring: RingArgs,
}

#[derive(Debug, Args)]
pub struct DiameterArgs {
    #[arg(long, default_value = "A2")]
    pub system: String,
    #[arg(long = "mod", value_delimiter = ',', default_value = "2,3,4,5")]
    pub moduli: Vec<u64>,
    /// Seed words whose conjugacy classes generate; defaults to `x[r](1)` for the first root.
    #[arg(long)]
    pub class: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MEM_CAP)]
    pub mem_cap: usize,
    /// Fill the `seconds` column (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

/// A rendered report and whether every requested check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Roots(a) => cmd_roots(a, fmt.unwrap_or(Format::Text)),
        Command::Verify(a) => cmd_verify(a, fmt.unwrap_or(Format::Json)),
        Command::Witness(a) => cmd_witness(a, fmt.unwrap_or(Format::Json)),
        Command::Rewrite(a) => cmd_rewrite(a, fmt.unwrap_or(Format::Json)),
        Command::Factor(a) => cmd_factor(a, fmt.unwrap_or(Format::Json)),
        Command::Diameter(a) => cmd_diameter(a, fmt.unwrap_or(Format::Csv)),
    }
}

fn system(sel: &str) -> Result<RootSystem> {
    RootSystem::from_selector(sel).with_context(|| format!("root system `{sel}`"))
}

fn group(sys: &RootSystem) -> Result<Chevalley> {
    Ok(Chevalley::new(sys)?)
}

pub fn load_ring(args: &RingArgs) -> Result<Ring> {
    if let Some(m) = args.modulus {
        return Ok(Ring::modular(m)?);
    }
    match &args.ring {
        None => Ok(Ring::integers()),
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(RingConfig::from_json(&text)?.build()?)
        }
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn unsupported(cmd: &str, f: Format) -> anyhow::Error {
    anyhow::anyhow!("`{cmd}` does not support {f:?} output")
}

// ---------------------------------------------------------------- roots

#[derive(Serialize)]
struct RootEntry {
    root: String,
    norm2: i64,
    long: bool,
}

#[derive(Serialize)]
struct RootsReport {
    system: String,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    roots: Vec<RootEntry>,
}

pub fn cmd_roots(a: &RootsArgs, f: Format) -> Result<Outcome> {
    let sys = system(&a.system)?;
    let report = RootsReport {
        system: sys.label().to_string(),
        rank: sys.rank(),
        cartan: sys.cartan_matrix().to_vec(),
        roots: sys
            .roots()
            .iter()
            .map(|r| RootEntry {
                root: r.to_string(),
                norm2: sys.norm2(r),
                long: sys.is_long(r),
            })
            .collect(),
    };
    let text = match f {
        Format::Json => json(&report)?,
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "system {}  rank {}  roots {}", report.system, report.rank, report.roots.len())?;
            writeln!(s, "cartan")?;
            for row in &report.cartan {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:3}")).collect();
                writeln!(s, "{}", cells.join(""))?;
            }
            writeln!(s, "{:<16}{:>6}  class", "root", "norm2")?;
            for r in &report.roots {
                writeln!(s, "{:<16}{:>6}  {}", r.root, r.norm2, if r.long { "long" } else { "short" })?;
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("root,norm2,class\n");
            for r in &report.roots {
                writeln!(s, "{},{},{}", r.root, r.norm2, if r.long { "long" } else { "short" })?;
            }
            s
        }
    };
    Ok(Outcome { text, ok: true })
}

// ---------------------------------------------------------------- verify

#[derive(Serialize, Default)]
struct CheckSummary {
    checks: usize,
    failures: usize,
    counterexamples: Vec<String>,
}

impl CheckSummary {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < 10 {
                self.counterexamples.push(what());
            }
        }
    }
}

#[derive(Serialize)]
struct PairingCounts {
    printed_t_i_s_j: usize,
    swapped_s_i_t_j: usize,
    symmetric: usize,
}

#[derive(Serialize)]
struct VerifyReport {
    system: String,
    ring: String,
    seed: u64,
    trials: usize,
    ordered_pairs: usize,
    constants_in_range: bool,
    pairing: PairingCounts,
    commutator: CheckSummary,
    torus: CheckSummary,
    additivity: CheckSummary,
    passed: bool,
}

/// Random element with coordinates in `[-bound, bound]`; localized rings also
/// get a denominator exponent in `0..=2`.
pub fn random_elem(ring: &Ring, rng: &mut ChaCha8Rng, bound: i64) -> Elem {
    let coords: Vec<BigInt> = (0..ring.width()).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    let k = if ring.localization().is_some() { rng.gen_range(0..=2) } else { 0 };
    ring.element(&coords, k).expect("width matches")
}

/// Random unit: a random small element if one of a few draws is a unit,
/// otherwise a signed power of the localizing element (or `+-1`).
pub fn random_unit(ring: &Ring, rng: &mut ChaCha8Rng) -> Elem {
    if let RingSpec::Localized(loc) = ring.spec() {
        let u = ring.from_base(&loc.u());
        let e = ring.pow(&u, rng.gen_range(-3..=3)).expect("u is a unit");
        return if rng.gen_bool(0.5) { e } else { ring.neg(&e) };
    }
    for _ in 0..20 {
        let a = random_elem(ring, rng, 9);
        if ring.is_unit(&a) {
            return a;
        }
    }
    if rng.gen_bool(0.5) {
        ring.one()
    } else {
        ring.from_int(-1)
    }
}

pub fn cmd_verify(a: &VerifyArgs, f: Format) -> Result<Outcome> {
    if f != Format::Json {
        return Err(unsupported("verify", f));
    }
    let sys = system(&a.system)?;
    let chev = group(&sys)?;
    let ring = load_ring(&a.ring)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let roots = sys.roots();
    let show = |e: &Elem| ring.format(e);

    let mut commutator = CheckSummary::default();
    let mut torus = CheckSummary::default();
    let mut additivity = CheckSummary::default();
    let mut pairing = PairingCounts {
        printed_t_i_s_j: 0,
        swapped_s_i_t_j: 0,
        symmetric: 0,
    };
    let mut in_range = true;
    let mut ordered_pairs = 0;
    for al in roots {
        for be in roots {
            if al == be || *al == be.neg() {
                continue;
            }
            ordered_pairs += 1;
            let table = chev.derive_cij(al, be)?;
            in_range &= table.terms.iter().all(|t| (1..=3).contains(&t.c.abs()));
            match table.pairing {
                Pairing::Printed => pairing.printed_t_i_s_j += 1,
                Pairing::Swapped => pairing.swapped_s_i_t_j += 1,
                Pairing::Indistinguishable => pairing.symmetric += 1,
            }
            for _ in 0..a.trials {
                let s = random_elem(&ring, &mut rng, 9);
                let t = random_elem(&ring, &mut rng, 9);
                let ok = chev.verify_commutator(&ring, &table, &s, &t)?;
                commutator.record(ok, || format!("[x_{al}({}), x_{be}({})]", show(&s), show(&t)));
            }
        }
    }
    for al in roots {
        for be in roots {
            for _ in 0..a.trials.min(5) {
                let t = random_unit(&ring, &mut rng);
                let u = random_elem(&ring, &mut rng, 9);
                let w = Word(vec![Letter::Conjugate {
                    prefix: Word(vec![Letter::Torus { root: al.clone(), t: t.clone() }]),
                    inner: Word::root(be, u.clone()),
                }]);
                let lhs = chev.evaluate(&ring, &w)?;
                let e = sys.cartan_int(be, al) as i64;
                let rhs = chev.x(&ring, be, &ring.mul(&ring.pow(&t, e)?, &u))?;
                torus.record(lhs == rhs, || format!("h_{al}({}) x_{be}({})", show(&t), show(&u)));
            }
        }
        for _ in 0..a.trials.min(10) {
            let s = random_elem(&ring, &mut rng, 9);
            let t = random_elem(&ring, &mut rng, 9);
            let lhs = chev.x(&ring, al, &s)?.mul(&chev.x(&ring, al, &t)?);
            let ok = lhs == chev.x(&ring, al, &ring.add(&s, &t))?;
            additivity.record(ok, || format!("x_{al}({}) x_{al}({})", show(&s), show(&t)));
        }
    }
    let passed = in_range && commutator.failures == 0 && torus.failures == 0 && additivity.failures == 0;
    let report = VerifyReport {
        system: sys.label().to_string(),
        ring: ring.describe(),
        seed: a.seed,
        trials: a.trials,
        ordered_pairs,
        constants_in_range: in_range,
        pairing,
        commutator,
        torus,
        additivity,
        passed,
    };
    Ok(Outcome {
        text: json(&report)?,
        ok: passed,
    })
}

// ---------------------------------------------------------------- witness

/// SHA-256 of the matrix entries in text form, rows separated by `;`.
pub fn matrix_hash(g: &GroupElement) -> String {
    let d = g.dim();
    let mut s = String::new();
    for i in 0..d {
        if i > 0 {
            s.push(';');
        }
        let row: Vec<String> = (0..d).map(|j| g.ring().format(g.at(i, j))).collect();
        s.push_str(&row.join(" "));
    }
    hex::encode(Sha256::digest(s.as_bytes()))
}

/// `x_alpha(base)^e` by repeated squaring.
pub fn root_power(chev: &Chevalley, ring: &Ring, alpha: &Root, base: &Elem, e: &BigInt) -> Result<GroupElement> {
    let (b, e) = if e.sign() == num_bigint::Sign::Minus {
        (ring.neg(base), -e.clone())
    } else {
        (base.clone(), e.clone())
    };
    Ok(chev.x(ring, alpha, &b)?.pow(&e))
}

#[derive(Serialize)]
struct WitnessEntry {
    case: String,
    xi: usize,
    n: String,
    letters: usize,
    verified: bool,
    target_hash: String,
    word: String,
}

#[derive(Serialize)]
struct WitnessReportOut {
    system: String,
    ring: String,
    case: String,
    alpha: String,
    beta: String,
    gamma: String,
    p: String,
    length_bound: usize,
    constant_length: bool,
    witnesses: Vec<WitnessEntry>,
    passed: bool,
}

pub fn cmd_witness(a: &WitnessArgs, f: Format) -> Result<Outcome> {
    let sys = system(&a.system)?;
    let chev = group(&sys)?;
    let ring = load_ring(&a.ring)?;
    let case: WitnessCase = a.case.parse()?;
    let emb = match &a.root {
        Some(r) => {
            let root = sys.parse_root(r)?;
            let emb = sys.find_witness_pair(&root)?;
            if emb.case != case {
                return Err(witness::WitnessError::CaseMismatch {
                    expected: case,
                    found: emb.case,
                }
                .into());
            }
            emb
        }
        None => sys
            .roots()
            .iter()
            .filter_map(|r| sys.find_witness_pair(r).ok())
            .find(|e| e.case == case)
            .ok_or_else(|| {
                anyhow::Error::from(witness::WitnessError::CaseMismatch {
                    expected: case,
                    found: sys
                        .roots()
                        .iter()
                        .find_map(|r| sys.find_witness_pair(r).ok())
                        .map(|e| e.case)
                        .unwrap_or(WitnessCase::Long),
                })
                .context(format!("{} has no root of case {case}", sys.label()))
            })?,
    };
    let xis: Vec<usize> = if a.xi.is_empty() { (0..ring.width()).collect() } else { a.xi.clone() };
    if let Some(&bad) = xis.iter().find(|&&l| l >= ring.width()) {
        bail!("basis index {bad} out of range for {}", ring.describe());
    }
    let mut entries = Vec::new();
    for &l in &xis {
        let xi = ring.basis(l);
        for n in &a.n {
            let w = match case {
                WitnessCase::Long => witness::witness_long(&chev, &ring, &emb, &a.p, &xi, n)?,
                WitnessCase::B2Short => witness::witness_short_b2(&chev, &ring, &emb, &a.p, &xi, n)?,
                WitnessCase::G2Short => witness::witness_short_g2(&chev, &ring, &emb, &a.p, &xi, n)?,
            };
            let target = root_power(&chev, &ring, &w.alpha, &w.base, &w.exponent)?;
            let verified = chev.evaluate(&ring, &w.word)? == target;
            entries.push(WitnessEntry {
                case: case.to_string(),
                xi: l,
                n: n.to_string(),
                letters: w.letters(),
                verified,
                target_hash: matrix_hash(&target),
                word: w.word.format(&ring),
            });
        }
    }
    let constant_length = entries.windows(2).all(|p| p[0].letters == p[1].letters);
    let passed = constant_length && entries.iter().all(|e| e.verified);
    let report = WitnessReportOut {
        system: sys.label().to_string(),
        ring: ring.describe(),
        case: case.to_string(),
        alpha: emb.alpha.to_string(),
        beta: emb.beta.to_string(),
        gamma: emb.gamma.to_string(),
        p: a.p.to_string(),
        length_bound: witness::length_bound(case),
        constant_length,
        witnesses: entries,
        passed,
    };
    let text = match f {
        Format::Json => json(&report)?,
        Format::Text => report.witnesses.iter().map(|e| e.word.clone() + "\n").collect(),
        Format::Csv => {
            let mut s = String::from("case,xi,n,letters,verified,target_hash\n");
            for e in &report.witnesses {
                writeln!(s, "{},{},{},{},{},{}", e.case, e.xi, e.n, e.letters, e.verified, e.target_hash)?;
            }
            s
        }
    };
    Ok(Outcome { text, ok: passed })
}

// ---------------------------------------------------------------- rewrite

#[derive(Serialize)]
struct RewriteReport {
    system: String,
    ring: String,
    level: String,
    input_letters: usize,
    conjugated: String,
    tail: String,
    conjugates_in_h: bool,
    tail_from_representatives: bool,
    reconstructed: bool,
    passed: bool,
}

fn read_word(path: &PathBuf, sys: &RootSystem, ring: &Ring) -> Result<Word> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Word::parse(&text, sys, ring)?)
}

pub fn cmd_rewrite(a: &RewriteArgs, f: Format) -> Result<Outcome> {
    let sys = system(&a.system)?;
    let chev = group(&sys)?;
    let ring = load_ring(&a.ring)?;
    let input = read_word(&a.input, &sys, &ring)?;
    let h = CongruenceSubgroup::new(&ring, a.level.clone())?;
    let table = CosetTable::new(&h);
    let out = witness::coset_rewrite(&chev, &ring, &input, &h, &table)?;

    let mut conjugates_in_h = true;
    for l in &out.conjugated.0 {
        conjugates_in_h &= h.contains(&chev.evaluate(&ring, &Word(vec![l.clone()]))?);
    }
    let tail_from_representatives = out
        .tail
        .0
        .iter()
        .all(|l| matches!(l, Letter::Root { t, .. } if table.is_representative(t)));
    let mut whole = out.conjugated.clone();
    whole.extend(out.tail.clone());
    let reconstructed = chev.evaluate(&ring, &whole)? == chev.evaluate(&ring, &input)?;
    let passed = conjugates_in_h && tail_from_representatives && reconstructed;
    let report = RewriteReport {
        system: sys.label().to_string(),
        ring: ring.describe(),
        level: a.level.to_string(),
        input_letters: input.letter_count(),
        conjugated: out.conjugated.format(&ring),
        tail: out.tail.format(&ring),
        conjugates_in_h,
        tail_from_representatives,
        reconstructed,
        passed,
    };
    let text = match f {
        Format::Json => json(&report)?,
        Format::Text => format!("{}\n{}\n", report.conjugated, report.tail),
        Format::Csv => return Err(unsupported("rewrite", f)),
    };
    Ok(Outcome { text, ok: passed })
}

// ---------------------------------------------------------------- factor

#[derive(Serialize)]
struct FactorReport {
    system: String,
    ring: String,
    input_letters: usize,
    letters: usize,
    word: String,
    verified: bool,
}

pub fn cmd_factor(a: &FactorArgs, f: Format) -> Result<Outcome> {
    let sys = system(&a.system)?;
    let chev = group(&sys)?;
    let ring = load_ring(&a.ring)?;
    let input = read_word(&a.input, &sys, &ring)?;
    let g = chev.evaluate(&ring, &input)?;
    let w = witness::factor_elementary(&chev, &ring, &g)?;
    let verified = chev.evaluate(&ring, &w)? == g;
    let report = FactorReport {
        system: sys.label().to_string(),
        ring: ring.describe(),
        input_letters: input.letter_count(),
        letters: w.letter_count(),
        word: w.format(&ring),
        verified,
    };
    let text = match f {
        Format::Json => json(&report)?,
        Format::Text => report.word.clone() + "\n",
        Format::Csv => return Err(unsupported("factor", f)),
    };
    Ok(Outcome { text, ok: verified })
}

// ---------------------------------------------------------------- diameter

#[derive(Serialize)]
pub struct DiameterRow {
    pub m: u64,
    pub group_order: usize,
    pub generating_class: String,
    pub closure_size: usize,
    pub diameter: u32,
    pub seconds: Option<f64>,
}

/// One row of the diameter table: enumerate `E(Phi, Z/m)`, close the seed
/// words under conjugation and run the word-norm search.
pub fn diameter_row(chev: &Chevalley, m: u64, class: &str, mem_cap: usize) -> Result<DiameterRow> {
    let ring = Ring::modular(m)?;
    let q = norm::enumerate_quotient(chev, m, &norm::root_generators(chev), mem_cap)?;
    let seeds: Vec<usize> = Word::parse(class, chev.system(), &ring)?
        .0
        .into_iter()
        .map(|l| norm::element_of(chev, &q, &Word(vec![l])))
        .collect::<Result<_, _>>()?;
    let s = norm::conj_closure(&q, &seeds);
    let t = norm::word_norm_bfs(&q, &s)?;
    Ok(DiameterRow {
        m,
        group_order: q.order(),
        generating_class: class.to_string(),
        closure_size: s.len(),
        diameter: norm::diameter(&t),
        seconds: None,
    })
}

pub fn cmd_diameter(a: &DiameterArgs, f: Format) -> Result<Outcome> {
    let sys = system(&a.system)?;
    let chev = group(&sys)?;
    let class = a.class.clone().unwrap_or_else(|| format!("x[{}](1)", sys.roots()[0]));
    let mut rows = Vec::new();
    for &m in &a.moduli {
        let start = Instant::now();
        let mut row = diameter_row(&chev, m, &class, a.mem_cap)?;
        if a.timing {
            row.seconds = Some(start.elapsed().as_secs_f64());
        }
        rows.push(row);
    }
    let text = match f {
        Format::Json => json(&rows)?,
        Format::Csv | Format::Text => {
            let mut s = String::from("m,group_order,generating_class,closure_size,diameter,seconds\n");
            for r in &rows {
                let secs = r.seconds.map(|x| format!("{x:.3}")).unwrap_or_default();
                writeln!(s, "{},{},\"{}\",{},{},{}", r.m, r.group_order, r.generating_class, r.closure_size, r.diameter, secs)?;
            }
            s
        }
    };
    Ok(Outcome { text, ok: true })
}
