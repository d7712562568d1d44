use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use ringfunc::canonical;
use ringfunc::funcspace;
use ringfunc::groups::{self, GroupLaw};
use ringfunc::verify::{self, Suite};
use ringfunc::{Error, Limits, Poly, Ring, RingDescriptor};

const EXIT_INPUT: u8 = 1;
const EXIT_SIZE_CAP: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ringfunc",
    version,
    about = "Polynomial functions and permutations over finite rings"
)]
struct Cli {
    /// Lift the ring-size and enumeration caps.
    #[arg(long, global = true)]
    allow_large: bool,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of a polynomial over a ring.
    Test {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum)]
        prop: Prop,
        /// Cross-check against brute force.
        #[arg(long)]
        oracle: bool,
    },
    /// Closed-form counts, optionally checked by enumeration.
    Count {
        #[arg(long, value_enum)]
        what: CountWhat,
        #[command(flatten)]
        modulus: Modulus,
        #[arg(long)]
        brute_force: bool,
    },
    /// Canonical form of a polynomial function mod p^n.
    Canonical {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        modulus: Modulus,
        /// Unit-valued form: Lagrange part plus kernel layers.
        #[arg(long)]
        uv: bool,
    },
    /// List the elements of a group or family.
    Enumerate(Listing),
    /// Like enumerate, with the multiplication table.
    Export(Listing),
    /// Run verification suites; exits 4 when a check fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Largest dual ring order the suites may enumerate.
        #[arg(long, default_value_t = verify::DEFAULT_MAX_SIZE)]
        max_size: u64,
    },
}

#[derive(Args)]
struct Modulus {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    /// `zpn:p,n` as an alternative to --p/--n.
    #[arg(long)]
    ring: Option<String>,
}

#[derive(Args)]
struct Listing {
    #[arg(long, value_enum)]
    what: ListWhat,
    #[arg(long)]
    ring: Option<String>,
    /// For `group`: permutations of the dual ring induced over the base.
    #[arg(long)]
    dual: bool,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prop {
    Null,
    UnitValued,
    Perm,
    PermDual,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountWhat {
    Polyfun,
    Uvpf,
    Kernel,
    Beta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ListWhat {
    Group,
    Semidirect,
    Stabilizer,
    UvpfForms,
    Kernel,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Dual,
    Groups,
    Canonical,
    Counting,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Dual => Suite::Dual,
            SuiteArg::Groups => Suite::Groups,
            SuiteArg::Canonical => Suite::Canonical,
            SuiteArg::Counting => Suite::Counting,
        }
    }
}

enum Failure {
    Lib(Error),
    Input(String),
    Io(std::io::Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e @ Error::SizeCap { .. })) => {
            eprintln!(
                "error: {e} (pass --allow-large or raise {})",
                ringfunc::limits::CAP_ENV_VAR
            );
            ExitCode::from(EXIT_SIZE_CAP)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    let limits = if cli.allow_large {
        Limits::unlimited()
    } else {
        Limits::from_env()?
    };
    match cli.command {
        Command::Test {
            ring,
            poly,
            prop,
            oracle,
        } => cmd_test(&ring, &poly, prop, oracle, &limits),
        Command::Count {
            what,
            modulus,
            brute_force,
        } => cmd_count(what, &modulus, brute_force, &limits),
        Command::Canonical { poly, modulus, uv } => cmd_canonical(&poly, &modulus, uv, &limits),
        Command::Enumerate(listing) => cmd_list(&listing, false, &limits),
        Command::Export(listing) => cmd_list(&listing, true, &limits),
        Command::Verify { suite, max_size } => cmd_verify(suite.into(), max_size, &limits),
    }
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn ring_arg(text: &str, limits: &Limits) -> Outcome<Ring> {
    let descriptor: RingDescriptor = text.parse()?;
    Ok(Ring::new(&descriptor, limits)?)
}

fn poly_arg(text: &str) -> Outcome<Poly> {
    Ok(ringfunc::poly::parse(text)?)
}

fn big_json(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(small) => json!(small),
        Err(_) => json!(n.to_string()),
    }
}

fn prime_power(
    p: Option<u64>,
    n: Option<u32>,
    ring: Option<&str>,
    limits: &Limits,
) -> Outcome<(u64, u32)> {
    match (p, n, ring) {
        (Some(p), Some(n), None) => {
            if !ringfunc::is_prime(p) {
                return Err(Error::NotPrime(p).into());
            }
            if n < 1 {
                return Err(Error::ExponentTooSmall(n).into());
            }
            Ok((p, n))
        }
        (None, None, Some(text)) => {
            let ring = ring_arg(text, limits)?;
            ring.prime_power()
                .filter(|_| ring.is_residue_ring())
                .ok_or_else(|| Failure::Input(format!("{ring} is not Z_p^n")))
        }
        _ => Err(Failure::Input(
            "give either --p and --n, or --ring zpn:p,n".into(),
        )),
    }
}

fn cmd_test(ring: &str, poly: &str, prop: Prop, oracle: bool, limits: &Limits) -> Outcome {
    let ring = ring_arg(ring, limits)?;
    let f = poly_arg(poly)?;
    let (result, check) = match prop {
        Prop::Null => {
            let result = funcspace::is_null(&f, &ring)?;
            let check = if ring.is_residue_ring() {
                let m = num_bigint::BigInt::from(ring.size());
                ring.elements()
                    .all(|x| (f.eval_int(&x.into()) % &m) == 0.into())
            } else {
                funcspace::induce(&f, &ring)?.is_zero()
            };
            (result, check)
        }
        Prop::UnitValued => {
            let result = funcspace::is_unit_valued(&f, &ring)?;
            let table = funcspace::induce(&f, &ring)?;
            let check = table
                .values()
                .iter()
                .all(|&v| ring.inverse_by_search(v).is_some());
            (result, check)
        }
        Prop::Perm => {
            let brute = funcspace::is_perm_bruteforce(&f, &ring)?;
            let result = match ring.prime_power().filter(|_| ring.is_residue_ring()) {
                Some((p, n)) => funcspace::perm_criterion_local(&f, p, n)?,
                None => brute,
            };
            (result, brute)
        }
        Prop::PermDual => {
            let base = ring.base().cloned().unwrap_or_else(|| ring.clone());
            let result = funcspace::perm_criterion_dual(&f, &base)?;
            let brute = if oracle {
                funcspace::is_perm_bruteforce(&f, &base.dual()?)?
            } else {
                result
            };
            (result, brute)
        }
    };
    let mut out = json!({ "result": result });
    if oracle {
        out["oracle_agrees"] = json!(result == check);
    }
    print_json(&out);
    Ok(())
}

fn factorial_threshold(p: u64, n: u32) -> u64 {
    // smallest k with p^n | k!, by multiplying out the factorial
    let target = BigUint::from(p).pow(n);
    let mut fact = BigUint::from(1u32);
    let mut k = 0u64;
    while &fact % &target != BigUint::from(0u32) {
        k += 1;
        fact *= k;
    }
    k
}

fn cmd_count(what: CountWhat, modulus: &Modulus, brute_force: bool, limits: &Limits) -> Outcome {
    let (p, n) = prime_power(modulus.p, modulus.n, modulus.ring.as_deref(), limits)?;
    let (name, value) = match what {
        CountWhat::Polyfun => ("polyfun", canonical::count_polyfun(p, n)),
        CountWhat::Uvpf => ("uvpf", canonical::count_uvpf(p, n)),
        CountWhat::Kernel => {
            if n < 2 {
                return Err(Error::ExponentTooSmall(n).into());
            }
            ("kernel", BigUint::from(p).pow(canonical::beta(p, n) as u32))
        }
        CountWhat::Beta => ("beta", BigUint::from(canonical::beta(p, n))),
    };
    let mut out = json!({ "what": name, "p": p, "n": n, "value": big_json(&value) });
    if brute_force {
        let enumerated = match what {
            CountWhat::Polyfun => canonical::count_polyfun_bruteforce(p, n, limits)?,
            CountWhat::Uvpf => canonical::count_uvpf_bruteforce(p, n, limits)?,
            CountWhat::Kernel => {
                let ring = Ring::new(&RingDescriptor::PrimePower { p, n }, limits)?;
                let mut tables = std::collections::HashSet::new();
                for f in canonical::enumerate_kernel(p, n, limits)? {
                    tables.insert(funcspace::induce(&f, &ring)?);
                }
                tables.len() as u64
            }
            CountWhat::Beta => factorial_threshold(p, n),
        };
        out["brute_force"] = json!(enumerated);
        out["agrees"] = json!(value == BigUint::from(enumerated));
    }
    print_json(&out);
    Ok(())
}

fn cmd_canonical(poly: &str, modulus: &Modulus, uv: bool, limits: &Limits) -> Outcome {
    let (p, n) = prime_power(modulus.p, modulus.n, modulus.ring.as_deref(), limits)?;
    let f = poly_arg(poly)?;
    let out = if uv {
        canonical::uvpf_canonicalize(&f, p, n)?.to_json()
    } else {
        canonical::canonicalize(&f, p, n)?.to_json()
    };
    print_json(&out);
    Ok(())
}

fn emit(text: String, out: &Option<PathBuf>) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json_line(value: &Value) -> String {
    format!("{}\n", serde_json::to_string(value).expect("serializable"))
}

/// One CSV row per element, JSON arrays flattened to space-separated cells.
fn element_csv(elements: &[Value]) -> String {
    let cell = |v: &Value| match v {
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => plain(other),
    };
    let mut text = String::new();
    if let Some(Value::Object(first)) = elements.first() {
        text.push_str("index");
        for key in first.keys() {
            text.push(',');
            text.push_str(key);
        }
        text.push('\n');
    }
    for (i, e) in elements.iter().enumerate() {
        text.push_str(&i.to_string());
        if let Value::Object(fields) = e {
            for v in fields.values() {
                text.push(',');
                let c = cell(v);
                if c.contains(',') || c.contains('"') {
                    text.push_str(&format!("\"{}\"", c.replace('"', "\"\"")));
                } else {
                    text.push_str(&c);
                }
            }
        }
        text.push('\n');
    }
    text
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn group_output<T: GroupLaw + Sync>(
    kind: &str,
    base: &Ring,
    elements: &[T],
    with_table: bool,
    format: Format,
) -> Outcome<String> {
    Ok(match (format, with_table) {
        (Format::Json, _) => json_line(&groups::group_json(kind, base, elements, with_table)?),
        (Format::Csv, true) => groups::multiplication_csv(elements)?,
        (Format::Csv, false) => {
            element_csv(&elements.iter().map(GroupLaw::describe).collect::<Vec<_>>())
        }
    })
}

fn cmd_list(listing: &Listing, with_table: bool, limits: &Limits) -> Outcome {
    let needs_ring = || {
        listing
            .ring
            .as_deref()
            .ok_or_else(|| Failure::Input("--ring is required for this listing".into()))
            .and_then(|r| ring_arg(r, limits))
    };
    let text = match listing.what {
        ListWhat::Group if listing.dual => {
            let base = needs_ring()?;
            let perms = groups::enumerate_dual_perms(&base, limits)?;
            group_output(
                "dual-permutations",
                &base,
                &perms,
                with_table,
                listing.format,
            )?
        }
        ListWhat::Group => {
            let base = needs_ring()?;
            let perms = funcspace::polynomial_permutations(&base, limits)?;
            group_output("permutations", &base, &perms, with_table, listing.format)?
        }
        ListWhat::Semidirect => {
            let base = needs_ring()?;
            let h = groups::semidirect_group(&base, limits)?;
            group_output("semidirect", &base, &h, with_table, listing.format)?
        }
        ListWhat::Stabilizer => {
            let base = needs_ring()?;
            let st = groups::enumerate_stabilizer(&base, limits)?;
            group_output("stabilizer", &base, &st, with_table, listing.format)?
        }
        ListWhat::UvpfForms | ListWhat::Kernel => {
            if with_table {
                return Err(Failure::Input(
                    "multiplication tables exist only for groups".into(),
                ));
            }
            let (p, n) = prime_power(listing.p, listing.n, listing.ring.as_deref(), limits)?;
            let (kind, elements): (&str, Vec<Value>) = if listing.what == ListWhat::Kernel {
                let polys = canonical::enumerate_kernel(p, n, limits)?;
                (
                    "kernel",
                    polys.map(|f| json!({ "poly": f.to_string() })).collect(),
                )
            } else {
                let forms = canonical::enumerate_uvpf_forms(p, n, limits)?;
                ("uvpf-forms", forms.map(|f| f.to_json()).collect())
            };
            match listing.format {
                Format::Json => json_line(&json!({
                    "kind": kind,
                    "p": p,
                    "n": n,
                    "count": elements.len(),
                    "elements": elements,
                })),
                Format::Csv => element_csv(&elements),
            }
        }
    };
    emit(text, &listing.out)
}

fn cmd_verify(suite: Suite, max_size: u64, limits: &Limits) -> Outcome {
    let report = verify::run_suite(suite, max_size, limits);
    eprintln!("{report}");
    print_json(&report.to_json());
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
