use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use z2z4::code::{AdditiveCode, Word, DEFAULT_MAX_LOG2};
use z2z4::cyclic::{CyclicSpec, TypeFilter};
use z2z4::verify::{self, SearchOptions, SweepOptions};
use z2z4::{gf2, z4, Error};

/// Environment variable overriding the worker count.
const WORKERS_ENV: &str = "Z2Z4_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "z2z4", version, about = "Kernel and rank of Z2Z4-additive cyclic codes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Enumeration limit as log2 of the number of codewords.
    #[arg(long, default_value_t = DEFAULT_MAX_LOG2, global = true)]
    max_size: u32,
    /// Worker threads for search and sweep.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Ring {
    Gf2,
    Z4,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Irreducible factors of x^n - 1 with their cyclotomic cosets.
    Factor {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Ring::Z4)]
        ring: Ring,
    },
    /// Type, linearity, kernel and rank of a cyclic code.
    Analyze {
        #[command(flatten)]
        spec: SpecArgs,
        /// Cross-check every closed form against the oracles.
        #[arg(long)]
        verify: bool,
    },
    /// List codewords and their Gray images.
    Enumerate {
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        beta: Option<usize>,
        /// Generator word such as 10|213; repeatable.
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        ell: Option<String>,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        g: Option<String>,
    },
    /// All cyclic specs for (alpha, beta), optionally filtered by type.
    Search {
        #[arg(long)]
        alpha: usize,
        #[arg(long, value_parser = odd_beta)]
        beta: usize,
        /// Type filter alpha,beta:gamma,delta[:kappa].
        #[arg(long = "type")]
        type_filter: Option<TypeFilter>,
        /// One row per distinct code.
        #[arg(long)]
        dedupe: bool,
        #[arg(long)]
        verify: bool,
    },
    /// Cross-check every spec in a parameter range.
    Sweep {
        #[arg(long, default_value_t = verify::DEFAULT_ALPHA_MAX)]
        alpha_max: usize,
        /// Comma-separated odd lengths.
        #[arg(long, value_delimiter = ',', value_parser = odd_beta, default_values_t = verify::DEFAULT_BETAS)]
        betas: Vec<usize>,
    },
    /// Worked-example fixtures F1 to F9.
    PaperSuite {
        /// Assert the misprinted value in F9 instead of flagging it.
        #[arg(long)]
        strict_erratum: bool,
    },
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Whole spec as JSON: {"alpha":..,"beta":..,"b":"..","ell":"..","f":"..","h":"..","g":".."}.
    #[arg(long, conflicts_with_all = ["alpha", "beta", "b", "ell", "f", "h", "g"])]
    spec: Option<String>,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long, value_parser = odd_beta)]
    beta: Option<usize>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long, default_value = "0")]
    ell: String,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    g: Option<String>,
}

fn odd_beta(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n % 2 == 0 {
        return Err(format!("beta = {n} must be odd"));
    }
    Ok(n)
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            _ if e.is_resource_guard() => 3,
            Error::Consistency(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

impl SpecArgs {
    fn resolve(&self) -> Result<CyclicSpec, Failure> {
        if let Some(json) = &self.spec {
            let spec: CyclicSpec = serde_json::from_str(json).map_err(|e| invalid(format!("bad spec JSON: {e}")))?;
            return Ok(spec);
        }
        let need = |v: &Option<String>, name: &str| v.clone().ok_or_else(|| invalid(format!("missing --{name}")));
        let alpha = self.alpha.ok_or_else(|| invalid("missing --alpha"))?;
        let beta = self.beta.ok_or_else(|| invalid("missing --beta"))?;
        Ok(CyclicSpec::parse(
            alpha,
            beta,
            &need(&self.b, "b")?,
            &self.ell,
            &need(&self.f, "f")?,
            &need(&self.h, "h")?,
            &need(&self.g, "g")?,
        )?)
    }
}

#[derive(Serialize)]
struct FactorEntry {
    poly: String,
    coset: Vec<usize>,
}

#[derive(Serialize)]
struct FactorList {
    n: usize,
    ring: Ring,
    factors: Vec<FactorEntry>,
    product: String,
}

#[derive(Serialize)]
struct CodewordEntry {
    word: String,
    gray: String,
}

#[derive(Serialize)]
struct CodewordList {
    alpha: usize,
    beta: usize,
    log2_size: u32,
    codewords: Vec<CodewordEntry>,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn factor(n: usize, ring: Ring, format: Format) -> Result<String, Failure> {
    if n % 2 == 0 {
        return Err(Error::EvenLength(n).into());
    }
    let factors: Vec<FactorEntry> = match ring {
        Ring::Gf2 => gf2::factor_xn1_gf2(n)?
            .iter()
            .map(|(p, c)| FactorEntry { poly: p.to_string(), coset: c.exponents().to_vec() })
            .collect(),
        Ring::Z4 => z4::factor_xn1_z4(n)?
            .iter()
            .map(|(p, c)| FactorEntry { poly: p.to_string(), coset: c.exponents().to_vec() })
            .collect(),
    };
    let product = match ring {
        Ring::Gf2 => z2z4::BinPoly::x_n_minus_one(n).to_string(),
        Ring::Z4 => z2z4::QuatPoly::x_n_minus_one(n).to_string(),
    };
    let list = FactorList { n, ring, factors, product };
    Ok(match format {
        Format::Json => json(&list),
        Format::Csv => {
            let mut out = String::from("poly,coset\n");
            for f in &list.factors {
                let coset: Vec<String> = f.coset.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "{},{}", f.poly, coset.join(" "));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for f in &list.factors {
                let coset: Vec<String> = f.coset.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "{}\t{{{}}}", f.poly, coset.join(","));
            }
            out
        }
    })
}

fn enumerate(cli: &Cli, cmd: &Command) -> Result<String, Failure> {
    let Command::Enumerate { alpha, beta, gens, b, ell, f, h, g } = cmd else { unreachable!() };
    let code = if gens.is_empty() {
        let spec = SpecArgs {
            spec: None,
            alpha: *alpha,
            beta: *beta,
            b: b.clone(),
            ell: ell.clone().unwrap_or_else(|| "0".into()),
            f: f.clone(),
            h: h.clone(),
            g: g.clone(),
        }
        .resolve()?;
        spec.validate()?.materialize()?
    } else {
        let words = gens.iter().map(|s| s.parse()).collect::<Result<Vec<Word>, Error>>()?;
        let (a, bb) = match (alpha, beta) {
            (Some(a), Some(bb)) => (*a, *bb),
            _ => (words[0].alpha(), words[0].beta()),
        };
        AdditiveCode::from_generators(a, bb, &words)?
    };
    let words = code.enumerate(cli.max_size)?;
    let n = code.alpha() + 2 * code.beta();
    let entries: Vec<CodewordEntry> = words
        .iter()
        .map(|w| CodewordEntry {
            word: w.to_string(),
            gray: z2z4::code::bits_to_vec(w.gray(), n).iter().map(|b| char::from(b'0' + b)).collect(),
        })
        .collect();
    let list = CodewordList { alpha: code.alpha(), beta: code.beta(), log2_size: code.log2_size(), codewords: entries };
    Ok(match cli.format {
        Format::Json => json(&list),
        Format::Csv => {
            let mut out = String::from("word,gray\n");
            for e in &list.codewords {
                let _ = writeln!(out, "{},{}", e.word, e.gray);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for e in &list.codewords {
                let _ = writeln!(out, "{}\t{}", e.word, e.gray);
            }
            out
        }
    })
}

fn workers(cli: &Cli) -> Result<Option<usize>, Failure> {
    if cli.workers.is_some() {
        return Ok(cli.workers);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| invalid(format!("{WORKERS_ENV} = {v:?} is not a number"))),
        Err(_) => Ok(None),
    }
}

/// Output text plus whether a check failed.
fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    match &cli.command {
        Command::Factor { n, ring } => Ok((factor(*n, *ring, cli.format)?, true)),
        Command::Analyze { spec, verify: check } => {
            let report = verify::analyze(&spec.resolve()?, *check, cli.max_size)?;
            let out = match cli.format {
                Format::Json => json(&report),
                Format::Csv => {
                    let cr = verify::CheckReport {
                        id: report.spec.to_string(),
                        spec: Some(report.spec.clone()),
                        code_type: report.code_type,
                        kernel_dim: report.kernel.dim,
                        rank: report.rank.rank,
                        k_prime: Some(report.kernel.k_prime.clone()),
                        r: Some(report.rank.r.clone()),
                        rank_additive: None,
                        checks: report.checks.clone().unwrap_or_default(),
                    };
                    format!("{}{}", verify::CSV_HEADER, verify::csv_row(&cr))
                }
                Format::Text => report.to_text(),
            };
            Ok((out, report.passed()))
        }
        cmd @ Command::Enumerate { .. } => Ok((enumerate(cli, cmd)?, true)),
        Command::Search { alpha, beta, type_filter, dedupe, verify: check } => {
            let rows = verify::search(&SearchOptions {
                alpha: *alpha,
                beta: *beta,
                filter: *type_filter,
                dedupe: *dedupe,
                verify: *check,
                limit_log2: cli.max_size,
                workers: workers(cli)?,
            })?;
            let ok = rows.iter().all(|r| r.verified != Some(false));
            let out = match cli.format {
                Format::Json => json(&rows),
                Format::Csv => {
                    verify::SEARCH_CSV_HEADER.to_string() + &rows.iter().map(|r| r.to_csv()).collect::<String>()
                }
                Format::Text => {
                    let mut out: String = rows.iter().map(|r| r.to_text() + "\n").collect();
                    let _ = writeln!(out, "{} rows", rows.len());
                    out
                }
            };
            Ok((out, ok))
        }
        Command::Sweep { alpha_max, betas } => {
            let report = verify::sweep(&SweepOptions {
                alpha_max: *alpha_max,
                betas: betas.clone(),
                filter: None,
                limit_log2: cli.max_size,
                workers: workers(cli)?,
            })?;
            let out = match cli.format {
                Format::Json => json(&report),
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            Ok((out, report.passed()))
        }
        Command::PaperSuite { strict_erratum } => {
            let report = verify::reference_suite(*strict_erratum);
            let out = match cli.format {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut out = String::from("id,status,title\n");
                    for f in &report.fixtures {
                        let _ = writeln!(out, "{},{},\"{}\"", f.id, f.status, f.title);
                    }
                    out
                }
                Format::Text => report.to_text(),
            };
            let failed = report.failed_ids();
            if !failed.is_empty() {
                eprintln!("failed fixtures: {}", failed.join(", "));
            }
            Ok((out, report.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
