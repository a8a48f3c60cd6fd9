use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use smallgen::abelian::{
    character_group, defining_polynomial, field_conductor, splits_completely_abelian,
};
use smallgen::cli::{Cache, FieldSpec, FieldSpecDocument, Report, VERSION};
use smallgen::heights::height_algebraic;
use smallgen::northcott::{delta, EnumerationBudget};
use smallgen::numfield::{field_discriminant, splits_completely, NumberField};
use smallgen::pipelines::{
    exponent_table, silverman_lower_bound, verify_family, verify_thm12_steps,
};
use smallgen::primes::{check_pi_psi_sandwich, is_prime_u64, linnik_exponent_scan, APSpec};
use smallgen::{Error, Result};

#[derive(Parser)]
#[command(
    name = "smallgen",
    version,
    about = "Weil heights, small generators and splitting primes"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1800.0)]
    budget_seconds: f64,
    #[arg(long, global = true, default_value_t = 20_000_000)]
    budget_candidates: u64,
    /// Precision of printed enclosures.
    #[arg(long, global = true, default_value_t = 64)]
    precision_bits: u32,
    #[arg(long, global = true, default_value = ".smallgen-cache")]
    cache_dir: PathBuf,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Recorded in the report; every computation is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SpecArg {
    /// JSON field specification.
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Height of the root of the spec's defining polynomial.
    Height(SpecArg),
    /// Minimal generator height of the field.
    Delta(SpecArg),
    /// Least prime above a bound that splits completely.
    SplitPrime {
        #[command(flatten)]
        spec: SpecArg,
        /// Defaults to the square root of the discriminant.
        #[arg(long)]
        above: Option<u64>,
    },
    /// Conductor, characters and discriminant of an abelian field.
    AbelianDisc(SpecArg),
    /// Splitting-prime argument for an abelian field, step by step.
    Thm12 {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        with_delta: bool,
    },
    /// Radical family check for a `radical-family` spec.
    Family(SpecArg),
    /// Least primes `≡ 1 mod q` for `3 ≤ q ≤ qmax`, as CSV.
    LinnikScan {
        #[arg(long)]
        qmax: u64,
    },
    /// Discriminant exponents for degree `d`.
    Exponents {
        #[arg(long)]
        d: usize,
    },
    /// The π–ψ sandwich at `x` for one or all residues mod `q`.
    Sandwich {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: Option<u64>,
    },
}

struct Context {
    global: Global,
    cache: Cache,
}

impl Context {
    fn budget(&self) -> EnumerationBudget {
        EnumerationBudget {
            max_candidates: self.global.budget_candidates,
            max_seconds: self.global.budget_seconds,
            ..EnumerationBudget::default()
        }
    }

    /// Runs `compute` unless the cache holds a result for the same key.
    fn cached(
        &self,
        key: &Value,
        op: &str,
        compute: impl FnOnce() -> Result<Value>,
    ) -> Result<Value> {
        let hash = hex::encode(Sha256::digest(key.to_string().as_bytes()));
        if let Some(e) = self.cache.lookup(&hash, op) {
            log::info!("cache hit for {op}");
            return Ok(e.result);
        }
        let v = compute()?;
        self.cache.store(&hash, op, &v);
        Ok(v)
    }
}

fn load_spec(path: &PathBuf) -> Result<(FieldSpecDocument, FieldSpec, String)> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let doc = FieldSpecDocument::parse(&text)?;
    let spec = doc.validate()?;
    let hash = doc.canonical_hash()?;
    Ok((doc, spec, hash))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn require_abelian(spec: &FieldSpec) -> Result<smallgen::abelian::AbelianSpec> {
    match spec {
        FieldSpec::Abelian(s) => Ok(s.clone()),
        _ => Err(Error::InvalidArgument(
            "this command needs an abelian spec".into(),
        )),
    }
}

fn field_of(spec: &FieldSpec) -> Result<std::sync::Arc<NumberField>> {
    NumberField::new(&spec.polynomial()?)
}

fn run_height(ctx: &Context, path: &PathBuf) -> Result<(Value, Value)> {
    let (doc, spec, hash) = load_spec(path)?;
    let bits = ctx.global.precision_bits;
    let key = json!({"spec": hash, "bits": bits});
    let result = ctx.cached(&key, "height", || {
        let f = spec.polynomial()?;
        let h = height_algebraic(&f)?.refined(bits)?;
        let digits = (bits as f64 * std::f64::consts::LOG10_2) as usize;
        Ok(json!({
            "polynomial": to_value(&f),
            "height": h.to_decimal(digits),
            "enclosure": h.value(bits),
            "log_height": h.log_value,
            "exact": h.to_string(),
            "minpoly": to_value(&h.minpoly),
        }))
    })?;
    Ok((to_value(&doc), result))
}

fn run_delta(ctx: &Context, path: &PathBuf) -> Result<(Value, Value)> {
    let (doc, spec, hash) = load_spec(path)?;
    let budget = ctx.budget();
    let key =
        json!({"spec": hash, "candidates": budget.max_candidates, "seconds": budget.max_seconds});
    let bits = ctx.global.precision_bits;
    let result = ctx.cached(&key, "delta", || {
        let k = field_of(&spec)?;
        let cert = delta(&k, &budget)?;
        let disc = field_discriminant(&k);
        let lower = if k.degree() >= 2 {
            Some(silverman_lower_bound(k.degree(), &disc.value, None)?.to_f64())
        } else {
            None
        };
        Ok(json!({
            "delta": cert.height.to_decimal((bits as f64 * std::f64::consts::LOG10_2) as usize),
            "exact": cert.height.to_string(),
            "exhaustive": cert.exhaustive,
            "certificate": to_value(&cert),
            "discriminant": to_value(&disc),
            "silverman_lower_bound": lower,
        }))
    })?;
    Ok((to_value(&doc), result))
}

fn run_split_prime(ctx: &Context, path: &PathBuf, above: Option<u64>) -> Result<(Value, Value)> {
    let (doc, spec, hash) = load_spec(path)?;
    let key = json!({"spec": hash, "above": above});
    let result = ctx.cached(&key, "split-prime", || {
        let (disc, splits): (BigInt, Box<dyn Fn(u64) -> Result<bool>>) = match &spec {
            FieldSpec::Abelian(s) => {
                let s = s.clone();
                (
                    field_conductor(&s).discriminant_abs,
                    Box::new(move |p| splits_completely_abelian(&s, p)),
                )
            }
            _ => {
                let k = field_of(&spec)?;
                let d = field_discriminant(&k).value.abs();
                (d, Box::new(move |p| splits_completely(&k, p)))
            }
        };
        let start = match above {
            Some(a) => a,
            None => u64::try_from(disc.sqrt())
                .map_err(|_| Error::InvalidArgument("discriminant too large".into()))?,
        };
        let mut p = start + 1;
        loop {
            if is_prime_u64(p) && splits(p)? {
                break;
            }
            p += 1;
        }
        let within_five = BigInt::from(p) * p <= &disc * 25u32;
        Ok(json!({
            "above": start,
            "prime": p,
            "discriminant_abs": disc.to_string(),
            "at_most_five_sqrt_disc": within_five,
            "probable": false,
        }))
    })?;
    Ok((to_value(&doc), result))
}

fn run_abelian_disc(ctx: &Context, path: &PathBuf) -> Result<(Value, Value)> {
    let (doc, spec, hash) = load_spec(path)?;
    let s = require_abelian(&spec)?;
    let result = ctx.cached(&json!({"spec": hash}), "abelian-disc", || {
        let report = field_conductor(&s);
        let table = character_group(&s);
        let g = defining_polynomial(&s)?;
        let disc = field_discriminant(&NumberField::new(&g)?);
        let agrees = disc.is_exact() && disc.value.abs() == report.discriminant_abs;
        Ok(json!({
            "conductor": to_value(&report),
            "characters": to_value(&table),
            "period_polynomial": to_value(&g),
            "period_field_discriminant": to_value(&disc),
            "discriminants_agree": agrees,
        }))
    })?;
    Ok((to_value(&doc), result))
}

fn run_thm12(ctx: &Context, path: &PathBuf, with_delta: bool) -> Result<(Value, Value)> {
    let (doc, spec, hash) = load_spec(path)?;
    let s = require_abelian(&spec)?;
    let budget = ctx.budget();
    let key = json!({"spec": hash, "with_delta": with_delta, "candidates": budget.max_candidates, "seconds": budget.max_seconds});
    let result = ctx.cached(&key, "thm12", || {
        Ok(to_value(&verify_thm12_steps(&s, with_delta, &budget)?))
    })?;
    Ok((to_value(&doc), result))
}

fn run_family(ctx: &Context, path: &PathBuf) -> Result<(Value, Value)> {
    let (doc, spec, hash) = load_spec(path)?;
    let FieldSpec::RadicalFamily { m, n, p, q } = spec else {
        return Err(Error::InvalidArgument(
            "family needs a radical-family spec".into(),
        ));
    };
    let result = ctx.cached(&json!({"spec": hash}), "family", || {
        Ok(to_value(&verify_family(m, n, p, q)?))
    })?;
    Ok((to_value(&doc), result))
}

fn run_sandwich(ctx: &Context, x: u64, q: u64, a: Option<u64>) -> Result<(Value, Value)> {
    let specs = match a {
        Some(a) => vec![APSpec::new(q, a)?],
        None => {
            if q == 0 {
                return Err(Error::InvalidArgument("modulus must be positive".into()));
            }
            APSpec::all(q)
        }
    };
    let input = json!({"x": x, "q": q, "a": a});
    let result = ctx.cached(&input, "sandwich", || {
        let rows = specs
            .iter()
            .map(|s| check_pi_psi_sandwich(x, s))
            .collect::<Result<Vec<_>>>()?;
        let passes = rows.iter().all(|r| r.passes);
        Ok(json!({"passes": passes, "rows": to_value(&rows)}))
    })?;
    Ok((input, result))
}

fn emit(ctx: &Context, text: &str) -> Result<()> {
    match &ctx.global.out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let cache = if cli.global.no_cache {
        Cache::disabled()
    } else {
        Cache::open(&cli.global.cache_dir, VERSION)
    };
    let ctx = Context {
        global: cli.global,
        cache,
    };
    let started = Instant::now();
    let (name, (input, result)) = match &cli.command {
        Command::Height(s) => ("height", run_height(&ctx, &s.spec)?),
        Command::Delta(s) => ("delta", run_delta(&ctx, &s.spec)?),
        Command::SplitPrime { spec, above } => {
            ("split-prime", run_split_prime(&ctx, &spec.spec, *above)?)
        }
        Command::AbelianDisc(s) => ("abelian-disc", run_abelian_disc(&ctx, &s.spec)?),
        Command::Thm12 { spec, with_delta } => ("thm12", run_thm12(&ctx, &spec.spec, *with_delta)?),
        Command::Family(s) => ("family", run_family(&ctx, &s.spec)?),
        Command::Exponents { d } => (
            "exponents",
            (json!({"d": d}), to_value(&exponent_table(*d)?)),
        ),
        Command::Sandwich { x, q, a } => ("sandwich", run_sandwich(&ctx, *x, *q, *a)?),
        Command::LinnikScan { qmax } => {
            let scan = linnik_exponent_scan(*qmax)?;
            log::info!("max ratio {:.6} at q = {}", scan.max_ratio, scan.argmax_q);
            return emit(&ctx, &scan.to_csv());
        }
    };
    let report = Report::new(
        name,
        ctx.global.seed,
        input,
        result,
        started.elapsed().as_millis(),
    );
    emit(&ctx, &report.to_json())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
