//! The `idemlift` command line: `list`, `count`, `primitive`, `lift`,
//! `verify` and `oracle` over a ring expression.

use crate::catalog::{
    brute_force_idempotents, enumerate_idempotents, BaseProvider, CatalogOptions, IdempotentCatalog,
    IdempotentFamily, DEFAULT_BRUTE_FORCE_CAP,
};
use crate::error::{Error, Result};
use crate::expr::{parse_element, RingExpression};
use crate::lifting::{binomial_lift, chain_for_prime_power, chain_lift, ChainStep, CncChain};
use crate::ring::{Cardinality, ElementJson, NamedGenerators, ZmAlgebra};
use crate::with_ring;
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;

/// Exit code for a `--golden` mismatch.
pub const EXIT_GOLDEN_MISMATCH: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "idemlift", version, about = "Idempotents of finite commutative rings")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Override the enumeration caps (brute-force cardinality and the size
    /// of a listed idempotent set).
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every idempotent.
    List {
        ring: String,
        /// Compare against a stored family JSON file.
        #[arg(long, value_name = "PATH")]
        golden: Option<PathBuf>,
    },
    /// Print |E(R)| and the number of primitive idempotents.
    Count { ring: String },
    /// List the primitive orthogonal idempotents.
    Primitive { ring: String },
    /// Lift an element that is idempotent modulo the nilradical chain.
    Lift {
        ring: String,
        element: String,
        /// Chain characteristics `s1,s2,...` (each link with t = 2) instead of
        /// the prime-power chain of the base modulus.
        #[arg(long, value_name = "S1,S2,...")]
        chain: Option<String>,
    },
    /// Re-verify the catalog and run randomized lifting checks.
    Verify {
        ring: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: u32,
    },
    /// List every idempotent by exhaustive search.
    Oracle {
        ring: String,
        #[arg(long, value_name = "PATH")]
        golden: Option<PathBuf>,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(out) => out,
        Err(e) => Outcome::error(&e),
    }
}

fn options(cli: &Cli) -> CatalogOptions {
    match cli.cap {
        Some(n) => CatalogOptions {
            brute_force_cap: n as u128,
            materialize_cap: n as u128,
        },
        None => CatalogOptions::default(),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let opts = options(cli);
    let ring_text = match &cli.command {
        Command::List { ring, .. }
        | Command::Count { ring }
        | Command::Primitive { ring }
        | Command::Lift { ring, .. }
        | Command::Verify { ring, .. }
        | Command::Oracle { ring, .. } => ring,
    };
    let any = RingExpression::parse(ring_text)?.build()?;
    with_ring!(&any, r => run_on(r, cli, &opts))
}

fn run_on<R: BaseProvider + NamedGenerators>(r: &R, cli: &Cli, opts: &CatalogOptions) -> Result<Outcome> {
    match &cli.command {
        Command::List { golden, .. } => {
            let cat = enumerate_idempotents(r, opts)?;
            let Some(all) = &cat.complete else {
                return Err(Error::size(
                    format!("E({})", r.describe()),
                    cat.count(),
                    opts.materialize_cap,
                ));
            };
            let out = Outcome::ok(render_family(r, all, &cat.to_json(), cli.json));
            finish_with_golden(r, all, out, golden.as_ref())
        }
        Command::Oracle { golden, .. } => {
            let cap = cli.cap.map_or(DEFAULT_BRUTE_FORCE_CAP, |n| n as u128);
            let all = brute_force_idempotents(r, cap)?;
            let j = json!({
                "ring": r.describe(),
                "count": all.len(),
                "complete": true,
                "provenance": all.provenance().to_string(),
                "members": all.members_json(),
            });
            let out = Outcome::ok(render_family(r, &all, &j, cli.json));
            finish_with_golden(r, &all, out, golden.as_ref())
        }
        Command::Count { .. } => {
            let cat = enumerate_idempotents(r, opts)?;
            Ok(Outcome::ok(render_count(r, &cat, cli.json)))
        }
        Command::Primitive { .. } => {
            let cat = enumerate_idempotents(r, opts)?;
            let j = json!({
                "ring": r.describe(),
                "count": cat.primitive.len(),
                "complete": false,
                "provenance": cat.primitive.provenance().to_string(),
                "primitive": cat.primitive.members_json(),
            });
            Ok(Outcome::ok(render_family(r, &cat.primitive, &j, cli.json)))
        }
        Command::Lift { element, chain, .. } => {
            let f = parse_element(r, element)?;
            let chain = match chain {
                Some(spec) => parse_chain(spec)?,
                None => chain_for_prime_power(r)?,
            };
            let rep = chain_lift(r, &f, &chain)?;
            let out = if cli.json {
                format!("{}\n", rep.to_json(r))
            } else {
                let tower: Vec<String> = rep
                    .tower
                    .iter()
                    .map(|(s, c)| format!("{s}^{c}"))
                    .collect();
                format!(
                    "input:    {}\nexponent: {}\nlifted:   {}\nverified: {}\nmults:    {}\n",
                    r.format_element(&rep.input),
                    if tower.is_empty() { "1".to_string() } else { tower.join(" * ") },
                    r.format_element(&rep.lifted),
                    rep.verified(),
                    rep.mults
                )
            };
            Ok(Outcome::ok(out))
        }
        Command::Verify { seed, cases, .. } => verify(r, opts, *seed, *cases, cli.json),
    }
}

fn parse_chain<E: 'static>(spec: &str) -> Result<CncChain<E>> {
    let mut steps = Vec::new();
    for (i, part) in spec.split(',').enumerate() {
        let s = part.trim().parse::<u64>().map_err(|_| Error::Parse {
            pos: i,
            message: format!("chain entry '{part}' is not a positive integer"),
        })?;
        steps.push(ChainStep {
            nilpotency: 2,
            characteristic: s,
        });
    }
    CncChain::trusted(steps)
}

fn render_family<R: ZmAlgebra>(r: &R, fam: &IdempotentFamily<R>, j: &Value, as_json: bool) -> String {
    if as_json {
        return format!("{j}\n");
    }
    let mut out = String::new();
    let kind = if fam.is_complete() { "idempotents" } else { "primitive idempotents" };
    let _ = writeln!(out, "{}: {} {} ({})", r.describe(), fam.len(), kind, fam.provenance());
    let width = fam.len().to_string().len();
    for (i, x) in fam.members().iter().enumerate() {
        let _ = writeln!(out, "{:>width$}  {}", i + 1, r.format_element(x));
    }
    out
}

fn render_count<R: ZmAlgebra>(r: &R, cat: &IdempotentCatalog<R>, as_json: bool) -> String {
    let count = cat.count();
    let n = cat.primitive.len();
    if as_json {
        let c = match count {
            Cardinality::Finite(v) if v <= u64::MAX as u128 => json!(v as u64),
            c => json!(c.to_string()),
        };
        return format!(
            "{}\n",
            json!({"ring": r.describe(), "count": c, "log2": n, "primitive": n})
        );
    }
    format!(
        "ring:      {}\nidempotents: {} = 2^{}\nprimitive: {}\n",
        r.describe(),
        count,
        n,
        n
    )
}

fn finish_with_golden<R: ZmAlgebra>(
    r: &R,
    fam: &IdempotentFamily<R>,
    mut out: Outcome,
    golden: Option<&PathBuf>,
) -> Result<Outcome> {
    let Some(path) = golden else {
        return Ok(out);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        pos: e.column(),
        message: format!("{}: {e}", path.display()),
    })?;
    let stored: Vec<ElementJson> = serde_json::from_value(v["members"].clone())
        .map_err(|e| Error::domain(format!("{}: bad members list: {e}", path.display())))?;
    let mut want = stored
        .iter()
        .map(|j| r.element_from_json(j))
        .collect::<Result<Vec<_>>>()?;
    want.sort();
    let got = fam.members();
    let missing: Vec<String> = want.iter().filter(|x| !got.contains(x)).map(|x| r.format_element(x)).collect();
    let extra: Vec<String> = got.iter().filter(|x| !want.contains(x)).map(|x| r.format_element(x)).collect();
    if missing.is_empty() && extra.is_empty() {
        let _ = writeln!(out.stderr, "golden: {} members match {}", want.len(), path.display());
        return Ok(out);
    }
    let _ = writeln!(out.stderr, "golden: mismatch against {}", path.display());
    for x in missing {
        let _ = writeln!(out.stderr, "  missing {x}");
    }
    for x in extra {
        let _ = writeln!(out.stderr, "  extra   {x}");
    }
    out.code = EXIT_GOLDEN_MISMATCH;
    Ok(out)
}

fn random_element<R: ZmAlgebra>(r: &R, rng: &mut ChaCha8Rng) -> R::Element {
    let m = r.base_modulus();
    let c: Vec<u64> = (0..r.dimension()).map(|_| rng.gen_range(0..m)).collect();
    r.from_coefficients(&c).expect("dimension-sized vector")
}

/// Catalog re-verification plus `cases` randomized checks: ring axioms on
/// random triples, and recovery of a random idempotent `e` from `e + n` for
/// a random `n` in the nilpotent ideal `rad(m) R` (by both the binomial and
/// the chain lift).
fn verify<R: BaseProvider>(r: &R, opts: &CatalogOptions, seed: u64, cases: u32, as_json: bool) -> Result<Outcome> {
    let cat = enumerate_idempotents(r, opts)?;
    let mut checks: Vec<(String, bool)> = Vec::new();
    let prim = cat.primitive.check(Some(cat.primitive.len()));
    checks.push(("primitive family orthogonal".into(), prim.orthogonal));
    checks.push(("primitive family sums to one".into(), prim.sums_to_one));
    checks.push(("primitive family idempotent".into(), prim.all_idempotent));
    if let Some(all) = &cat.complete {
        checks.push(("complete family size is a power of two".into(), all.len().is_power_of_two()));
        checks.push((
            "complete family idempotent".into(),
            all.members().iter().all(|x| r.is_idempotent(x)),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = r.base_modulus();
    let rad = if m > 1 { crate::arith::factorize(m)?.radical() } else { 1 };
    let chain = chain_for_prime_power(r)?;
    let mut axioms = true;
    let mut binomial = true;
    let mut chained = true;
    for _ in 0..cases {
        let (a, b, c) = (random_element(r, &mut rng), random_element(r, &mut rng), random_element(r, &mut rng));
        axioms &= r.mul(&r.mul(&a, &b), &c) == r.mul(&a, &r.mul(&b, &c))
            && r.mul(&a, &r.add(&b, &c)) == r.add(&r.mul(&a, &b), &r.mul(&a, &c))
            && r.mul(&a, &b) == r.mul(&b, &a);
        let e = cat
            .primitive
            .members()
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .fold(r.zero(), |acc, x| r.add(&acc, x));
        let n = r.scale_int(&random_element(r, &mut rng), rad as i128);
        let f = r.add(&e, &n);
        binomial &= binomial_lift(r, &f, None).is_ok_and(|x| x == e);
        chained &= chain_lift(r, &f, &chain).is_ok_and(|rep| rep.lifted == e);
    }
    checks.push((format!("ring axioms on {cases} random triples"), axioms));
    checks.push((format!("binomial lift recovers e from e + n ({cases} cases)"), binomial));
    checks.push((format!("chain lift recovers e from e + n ({cases} cases)"), chained));

    let ok = checks.iter().all(|(_, b)| *b);
    let stdout = if as_json {
        let list: Vec<Value> = checks.iter().map(|(n, b)| json!({"check": n, "pass": b})).collect();
        format!("{}\n", json!({"ring": r.describe(), "seed": seed, "checks": list, "pass": ok}))
    } else {
        let mut s = String::new();
        for (name, pass) in &checks {
            let _ = writeln!(s, "{} {name}", if *pass { "PASS" } else { "FAIL" });
        }
        s
    };
    if ok {
        Ok(Outcome::ok(stdout))
    } else {
        Ok(Outcome {
            stdout,
            stderr: "error: verification failed\n".into(),
            code: Error::Verification(String::new()).exit_code(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("idemlift").chain(args.iter().copied()))
    }

    #[test]
    fn list_z200_c3() {
        let out = run_args(&["list", "Z(200){C3}"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("Z(200){C3}: 16 idempotents"));
        assert!(out.stdout.contains("184*e + 8*g + 8*g^2"));
        assert_eq!(out.stdout.lines().count(), 17);
    }

    #[test]
    fn count_z936() {
        let out = run_args(&["--json", "count", "Z(936){C5xC5}"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["count"], json!(1u64 << 21));
        assert_eq!(v["primitive"], json!(21));
    }

    #[test]
    fn lift_z125_c7() {
        let out = run_args(&["--json", "lift", "Z(125){C7}", "3+3g+3g^2+3g^3+3g^4+3g^5+3g^6"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["lifted"]["coeffs"], json!([18, 18, 18, 18, 18, 18, 18]));
        assert_eq!(v["tower"], json!([5, 2]));
        assert_eq!(v["verified"], json!(true));
    }

    #[test]
    fn lift_with_explicit_chain() {
        let out = run_args(&["lift", "Z(8){C3}", "g+g^2", "--chain", "2,2"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("lifted:   6*e + 5*g + 5*g^2"));
        let out = run_args(&["lift", "Z(8){C3}", "g+g^2", "--chain", "2"]);
        assert_eq!(out.code, 5);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["list", "Z(0)"]).code, 2);
        assert_eq!(run_args(&["list", "Z(5){C3"]).code, 2);
        assert_eq!(run_args(&["lift", "Z(5){C3}", "3q"]).code, 2);
        assert_eq!(run_args(&["oracle", "Z(7){C8}"]).code, 3);
        assert_eq!(run_args(&["list", "Z(936){C5xC5}"]).code, 3);
        assert_eq!(run_args(&["lift", "Z(8){C3}", "g"]).code, 4);
        assert_eq!(run_args(&["bogus"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn verify_and_oracle_agree() {
        let out = run_args(&["verify", "Z(72){C2}", "--seed", "7", "--cases", "30"]);
        assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
        let a = run_args(&["--json", "list", "Z(12){C3}"]);
        let b = run_args(&["--json", "oracle", "Z(12){C3}"]);
        let va: Value = serde_json::from_str(&a.stdout).unwrap();
        let vb: Value = serde_json::from_str(&b.stdout).unwrap();
        assert_eq!(va["members"], vb["members"]);
    }
}
