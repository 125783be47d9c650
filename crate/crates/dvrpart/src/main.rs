//! Command-line surface: every subcommand prints a machine-readable payload
//! (JSON or CSV) on stdout and keeps human diagnostics on stderr.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! errors (bad flags, malformed partitions, non-prime p, unreadable files).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use dvrpart::arith::{cyclotomic_ramification, ensure_prime};
use dvrpart::enumerate::{
    divisibility_probe, f_e_count_jobs, f_e_table, probe_csv, table_csv, TableCache,
};
use dvrpart::invariants::extension_report;
use dvrpart::oracle::{
    abelian_invariants_oracle, cyclotomic_eisenstein, lcs_logorders, power_subgroup_check,
    EisensteinRing,
};
use dvrpart::restriction::{restrict, restrict_single, RestrictionParams};
use dvrpart::{Partition, PartitionStyle};

#[derive(Parser)]
#[command(
    name = "dvrpart",
    version,
    about = "Restriction of scalars over discrete valuation ring extensions: \
             partition maps, p-group invariants, counting tables, and brute-force verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Payload format on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for enumeration commands (sharded by largest part)
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the restriction of the module with partition LAMBDA
    Restrict {
        /// Partition text: `5,3,2,1` or `1^4 2^2`
        #[arg(long)]
        lambda: String,
        /// Ramification index
        #[arg(long)]
        e: u64,
        /// Residue degree
        #[arg(long, default_value_t = 1)]
        d: u64,
    },
    /// Single-part shortcut: decompose O/P^n over the small ring
    Single {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        e: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
    },
    /// Invariants of an extension of the module by a cyclic p-group
    GroupReport {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        p: u64,
        /// Cyclotomic level: the acting generator's p^(m-1) power splits
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Count the distinct restricted partitions over all partitions of n
    Count {
        #[arg(long)]
        e: u64,
        #[arg(long)]
        n: u64,
        /// Include the image partitions (JSON format only)
        #[arg(long)]
        images: bool,
    },
    /// Tabulate n, p(n), f_e(n) and the ratio for n = 1..n_max
    Table {
        #[arg(long)]
        e: u64,
        #[arg(long)]
        n_max: u64,
        /// Optional JSON cache keyed by (e, n); results are identical
        /// with the cache deleted
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Check the closed formulas against explicit quotient-ring computations
    Verify {
        /// Partition for a single inline case
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        /// Cyclotomic level (forces d = 1, e = (p-1)p^(m-1))
        #[arg(long)]
        m: Option<u32>,
        /// Residue degree for an X^e - p ring
        #[arg(long)]
        d: Option<u64>,
        /// Ramification index for an X^e - p ring
        #[arg(long)]
        e: Option<u64>,
        /// Truncation exponent; defaults to one guard digit above every
        /// exponent the checks can produce
        #[arg(long = "K")]
        precision: Option<u32>,
        /// JSON case list: [{"p":3,"m":1,"lambda":"5","K":4}, ...];
        /// power rings use "d" and "e" instead of "m"
        #[arg(long)]
        cases: Option<PathBuf>,
        /// Generate random cases from this seed instead
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random cases to generate with --seed
        #[arg(long, default_value_t = 12)]
        n: u64,
    },
    /// Compare the f_e and f_e' columns for e dividing e'
    Probe {
        #[arg(long)]
        e: u64,
        #[arg(long)]
        e_prime: u64,
        #[arg(long)]
        n_max: u64,
    },
    /// Exact coefficients of the Eisenstein polynomial behind the
    /// cyclotomic ring, ascending degree order
    Cyclopoly {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            eprintln!("run with --help for usage");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let format = cli.format;
    let jobs = cli.jobs.max(1);
    match cli.command {
        Command::Restrict { lambda, e, d } => {
            let lambda = Partition::parse(&lambda).map_err(stringify)?;
            let params = RestrictionParams::new(e, d).map_err(stringify)?;
            let decomposition = restrict(&lambda, params);
            eprintln!(
                "induced partition: {}",
                decomposition.to_partition().format(PartitionStyle::Exponent)
            );
            print_decomposition(&decomposition, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Single { n, e, d } => {
            let params = RestrictionParams::new(e, d).map_err(stringify)?;
            let decomposition = restrict_single(n, params).map_err(stringify)?;
            print_decomposition(&decomposition, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::GroupReport { lambda, p, m } => {
            let lambda = Partition::parse(&lambda).map_err(stringify)?;
            let report = extension_report(&lambda, p, m).map_err(stringify)?;
            match format {
                Format::Json => print_json(&report)?,
                Format::Csv => {
                    let mut out = String::from("field,value\n");
                    out.push_str(&format!("nilpotency_class,{}\n", report.nilpotency_class));
                    out.push_str(&format!("exponent_exp,{}\n", report.exponent_exp));
                    let ranks: Vec<String> =
                        report.lcs_ranks.iter().map(u64::to_string).collect();
                    out.push_str(&format!("lcs_ranks,{}\n", ranks.join(" ")));
                    out.push_str(&format!("top_rank,{}\n", report.top_rank));
                    out.push_str(&format!("min_generators,{}\n", report.min_generators));
                    let powers: Vec<String> = report
                        .power_to_gamma
                        .iter()
                        .map(|(n, j)| format!("{n}:{j}"))
                        .collect();
                    out.push_str(&format!("power_to_gamma,{}\n", powers.join(" ")));
                    out.push_str(&format!("fixed_rank,{}\n", report.fixed_rank));
                    out.push_str(&format!("h2_rank,{}\n", report.h2_rank));
                    print!("{out}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Count { e, n, images } => {
            if images && format == Format::Csv {
                return Err("--images requires --format json".into());
            }
            let result = f_e_count_jobs(e, n, images, jobs).map_err(stringify)?;
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct CountPayload {
                        e: u64,
                        n: u64,
                        count: u64,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        images: Option<Vec<String>>,
                    }
                    print_json(&CountPayload {
                        e,
                        n,
                        count: result.count,
                        images: result
                            .images
                            .map(|list| list.iter().map(Partition::to_string).collect()),
                    })?;
                }
                Format::Csv => {
                    print!("e,n,count\n{e},{n},{}\n", result.count);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { e, n_max, cache } => {
            let mut table_cache = match &cache {
                Some(path) if path.exists() => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|err| format!("cannot read cache {}: {err}", path.display()))?;
                    TableCache::from_json(&text).map_err(stringify)?
                }
                _ => TableCache::default(),
            };
            let rows =
                f_e_table(e, n_max, jobs, cache.as_ref().map(|_| &mut table_cache)).map_err(stringify)?;
            if let Some(path) = &cache {
                std::fs::write(path, table_cache.to_json())
                    .map_err(|err| format!("cannot write cache {}: {err}", path.display()))?;
            }
            match format {
                Format::Json => print_json(&rows)?,
                Format::Csv => print!("{}", table_csv(&rows)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            lambda,
            p,
            m,
            d,
            e,
            precision,
            cases,
            seed,
            n,
        } => run_verify(
            VerifyArgs {
                lambda,
                p,
                m,
                d,
                e,
                precision,
                cases,
                seed,
                random_count: n,
            },
            format,
        ),
        Command::Probe { e, e_prime, n_max } => {
            let rows = divisibility_probe(e, e_prime, n_max, jobs).map_err(stringify)?;
            match format {
                Format::Json => print_json(&rows)?,
                Format::Csv => print!("{}", probe_csv(&rows)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cyclopoly { p, m } => {
            let coeffs = cyclotomic_eisenstein(p, m).map_err(stringify)?;
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct PolyPayload {
                        p: u64,
                        m: u32,
                        degree: usize,
                        coefficients: Vec<String>,
                    }
                    print_json(&PolyPayload {
                        p,
                        m,
                        degree: coeffs.len() - 1,
                        coefficients: coeffs.iter().map(BigUint::to_string).collect(),
                    })?;
                }
                Format::Csv => {
                    let mut out = String::from("degree,coefficient\n");
                    for (degree, coefficient) in coeffs.iter().enumerate() {
                        out.push_str(&format!("{degree},{coefficient}\n"));
                    }
                    print!("{out}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn stringify(err: dvrpart::Error) -> String {
    err.to_string()
}

fn print_json<T: Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|err| err.to_string())?;
    println!("{text}");
    Ok(())
}

fn print_decomposition(
    decomposition: &dvrpart::InducedDecomposition,
    format: Format,
) -> Result<(), String> {
    match format {
        Format::Json => print_json(decomposition),
        Format::Csv => {
            let mut out = String::from("exponent,multiplicity\n");
            for (exponent, multiplicity) in decomposition.summands() {
                out.push_str(&format!("{exponent},{multiplicity}\n"));
            }
            print!("{out}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    lambda: Option<String>,
    p: Option<u64>,
    m: Option<u32>,
    d: Option<u64>,
    e: Option<u64>,
    precision: Option<u32>,
    cases: Option<PathBuf>,
    seed: Option<u64>,
    random_count: u64,
}

/// One verification target: a ring description plus a module partition.
#[derive(Debug, Clone, Deserialize)]
struct VerifyCase {
    p: u64,
    #[serde(default)]
    m: Option<u32>,
    #[serde(default)]
    d: Option<u64>,
    #[serde(default)]
    e: Option<u64>,
    lambda: String,
    #[serde(default, rename = "K")]
    precision: Option<u32>,
}

#[derive(Serialize)]
struct CheckOutcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct CaseOutcome {
    ring: String,
    lambda: String,
    #[serde(rename = "K")]
    precision: u32,
    checks: Vec<CheckOutcome>,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyPayload {
    cases: Vec<CaseOutcome>,
    passed: usize,
    failed: usize,
}

fn run_verify(args: VerifyArgs, format: Format) -> Result<ExitCode, String> {
    let cases = collect_cases(&args)?;
    if cases.is_empty() {
        return Err("verify needs --cases, --seed, or --lambda with a ring".into());
    }

    let outcomes: Vec<CaseOutcome> = cases.iter().map(run_case).collect();
    let failed = outcomes.iter().filter(|c| !c.pass).count();
    let passed = outcomes.len() - failed;

    for outcome in &outcomes {
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        eprintln!(
            "{status} ring={} lambda=({}) K={}",
            outcome.ring, outcome.lambda, outcome.precision
        );
        for check in &outcome.checks {
            if !check.pass {
                eprintln!("  failed {}: {}", check.name, check.detail);
            }
        }
    }
    eprintln!("verify: {passed} passed, {failed} failed");

    match format {
        Format::Json => print_json(&VerifyPayload {
            cases: outcomes,
            passed,
            failed,
        })?,
        Format::Csv => {
            let mut out = String::from("case,ring,lambda,check,pass\n");
            for (index, outcome) in outcomes.iter().enumerate() {
                for check in &outcome.checks {
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        index,
                        outcome.ring,
                        outcome.lambda.replace(',', " "),
                        check.name,
                        check.pass
                    ));
                }
            }
            print!("{out}");
        }
    }

    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn collect_cases(args: &VerifyArgs) -> Result<Vec<VerifyCase>, String> {
    if let Some(path) = &args.cases {
        let text = std::fs::read_to_string(path)
            .map_err(|err| format!("cannot read cases {}: {err}", path.display()))?;
        return serde_json::from_str(&text).map_err(|err| format!("malformed case list: {err}"));
    }
    if let Some(seed) = args.seed {
        return Ok(random_cases(seed, args.random_count));
    }
    let (Some(lambda), Some(p)) = (&args.lambda, args.p) else {
        return Ok(Vec::new());
    };
    // flag-level validation so bad inline parameters exit with usage errors
    ensure_prime(p).map_err(stringify)?;
    Partition::parse(lambda).map_err(stringify)?;
    if args.m.is_some() && (args.d.is_some() || args.e.is_some()) {
        return Err("give either --m or the pair --d/--e, not both".into());
    }
    if args.m.is_none() && args.e.is_none() {
        return Err("a ring needs --m, or --e (with optional --d)".into());
    }
    Ok(vec![VerifyCase {
        p,
        m: args.m,
        d: args.d,
        e: args.e,
        lambda: lambda.clone(),
        precision: args.precision,
    }])
}

/// (p, cyclotomic level, residue degree, ramification); the level and the
/// degree/ramification pair are mutually exclusive.
type RingPoolEntry = (u64, Option<u32>, Option<u64>, Option<u64>);

/// Small random partitions over a fixed pool of rings; reproducible from
/// the seed.
fn random_cases(seed: u64, count: u64) -> Vec<VerifyCase> {
    const RINGS: &[RingPoolEntry] = &[
        (2, Some(1), None, None),
        (3, Some(1), None, None),
        (5, Some(1), None, None),
        (3, Some(2), None, None),
        (2, Some(2), None, None),
        (3, None, Some(1), Some(2)),
        (3, None, Some(2), Some(2)),
        (3, None, Some(1), Some(3)),
        (3, None, Some(2), Some(3)),
        (5, None, Some(1), Some(2)),
        (5, None, Some(2), Some(2)),
        (5, None, Some(1), Some(3)),
        (5, None, Some(2), Some(3)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (p, m, d, e) = RINGS[rng.random_range(0..RINGS.len())];
            let mut parts: Vec<u64> = Vec::new();
            let mut budget = 8u64;
            for _ in 0..rng.random_range(0..=3u32) {
                if budget == 0 {
                    break;
                }
                let part = rng.random_range(1..=budget);
                parts.push(part);
                budget -= part;
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lambda = parts
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",");
            VerifyCase {
                p,
                m,
                d,
                e,
                lambda,
                precision: None,
            }
        })
        .collect()
}

fn run_case(case: &VerifyCase) -> CaseOutcome {
    match prepare_case(case) {
        Ok(outcome) => outcome,
        Err(message) => CaseOutcome {
            ring: format!("p{}", case.p),
            lambda: case.lambda.clone(),
            precision: case.precision.unwrap_or(0),
            checks: vec![CheckOutcome {
                name: "setup",
                pass: false,
                detail: message,
            }],
            pass: false,
        },
    }
}

fn prepare_case(case: &VerifyCase) -> Result<CaseOutcome, String> {
    let lambda = Partition::parse(&case.lambda).map_err(stringify)?;
    let (ring_e, ring_d) = match (case.m, case.e) {
        (Some(m), None) => (cyclotomic_ramification(case.p, m).map_err(stringify)?, 1),
        (None, Some(e)) => (e, case.d.unwrap_or(1)),
        (Some(_), Some(_)) => return Err("case has both m and e".into()),
        (None, None) => return Err("case needs m, or e with optional d".into()),
    };
    if ring_e < 1 || ring_d < 1 {
        return Err("d and e must be >= 1".into());
    }

    // one guard digit above every exponent the checks can produce
    // (abelian invariants plus power checks up to n = 2)
    let default_k = (lambda.largest_part().div_ceil(ring_e) + 3).max(2);
    let precision = case
        .precision
        .unwrap_or(u32::try_from(default_k).map_err(|_| "partition too large".to_string())?);

    let ring = match case.m {
        Some(m) => EisensteinRing::cyclotomic(case.p, precision, m),
        None => EisensteinRing::power_minus_p(case.p, precision, ring_d, ring_e),
    }
    .map_err(stringify)?;

    let mut checks = Vec::new();
    checks.push(check_abelian_invariants(&ring, &lambda, ring_e, ring_d));
    checks.push(check_lcs_ranks(&ring, &lambda, ring_d));
    for n in 1..=2u64 {
        checks.push(check_power_subgroup(&ring, &lambda, n));
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(CaseOutcome {
        ring: ring.descriptor(),
        lambda: case.lambda.clone(),
        precision,
        checks,
        pass,
    })
}

fn check_abelian_invariants(
    ring: &EisensteinRing,
    lambda: &Partition,
    e: u64,
    d: u64,
) -> CheckOutcome {
    let name = "abelian_invariants";
    let params = match RestrictionParams::new(e, d) {
        Ok(params) => params,
        Err(err) => return failed(name, err.to_string()),
    };
    let expected = restrict(lambda, params).to_partition();
    match abelian_invariants_oracle(ring, lambda) {
        Ok(actual) if actual == expected => CheckOutcome {
            name,
            pass: true,
            detail: format!("({expected})"),
        },
        Ok(actual) => failed(name, format!("oracle ({actual}) != formula ({expected})")),
        Err(err) => failed(name, err.to_string()),
    }
}

fn check_lcs_ranks(ring: &EisensteinRing, lambda: &Partition, d: u64) -> CheckOutcome {
    let name = "lcs_ranks";
    if lambda.is_empty() {
        return CheckOutcome {
            name,
            pass: true,
            detail: "empty module".into(),
        };
    }
    let class = lambda.largest_part();
    let expected: Vec<u64> = lambda.conjugate().parts().iter().map(|&c| c * d).collect();
    match lcs_logorders(ring, lambda, class) {
        Ok(logs) => {
            let ranks: Vec<u64> = logs.windows(2).map(|w| w[0] - w[1]).collect();
            if ranks == expected && *logs.last().unwrap() == 0 {
                CheckOutcome {
                    name,
                    pass: true,
                    detail: format!("ranks {ranks:?}"),
                }
            } else {
                failed(name, format!("oracle {ranks:?} != expected {expected:?}"))
            }
        }
        Err(err) => failed(name, err.to_string()),
    }
}

fn check_power_subgroup(ring: &EisensteinRing, lambda: &Partition, n: u64) -> CheckOutcome {
    let name = if n == 1 { "power_subgroup_1" } else { "power_subgroup_2" };
    match power_subgroup_check(ring, lambda, n) {
        Ok(true) => CheckOutcome {
            name,
            pass: true,
            detail: format!("p^{n}A = A·P^{}", n * ring.ramification()),
        },
        Ok(false) => failed(name, format!("span mismatch at n = {n}")),
        Err(dvrpart::Error::Precision { required, actual }) => CheckOutcome {
            name,
            pass: true,
            detail: format!("skipped: needs K >= {required}, have {actual}"),
        },
        Err(err) => failed(name, err.to_string()),
    }
}

fn failed(name: &'static str, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        pass: false,
        detail,
    }
}
