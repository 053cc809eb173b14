use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use torsig::analysis::{analyze, full_dimensional, AnalyzeOptions};
use torsig::chow::{monomial_sign_report, signature_via_l, ChowSignature};
use torsig::fan::{classify, normal_fan, Fan};
use torsig::generators::{associahedron_lifted, by_name, euclidean_realization, permutohedron_lifted};
use torsig::invariants::{bound_report, mirror_euler, sigma, TheoremCase};
use torsig::io::{parse_input, Input, PolytopeJson};
use torsig::polytope::Polytope;
use torsig::verify::{run_all, VerifyOptions};
use torsig::Error;

#[derive(Parser)]
#[command(name = "torsig", version, about = "Signatures, fan convexity and intersection numbers of simple rational polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named polytope as JSON
    Gen {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Keep the permutohedron or associahedron in its original coordinates
        #[arg(long)]
        lifted: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// f- and h-vectors, sigma, angle class, fan convexity and bounds
    Analyze {
        /// JSON file, `-` for stdin, or a generator name
        input: String,
        #[arg(long)]
        chow: bool,
        #[arg(long, value_parser = parse_case)]
        case: Option<TheoremCase>,
        #[arg(long)]
        pretty: bool,
    },
    /// The strongest lower bound on (-1)^{d/2} sigma the fan licenses
    Bounds {
        input: String,
        #[arg(long, value_parser = parse_case)]
        case: Option<TheoremCase>,
        #[arg(long)]
        pretty: bool,
    },
    /// Signature from intersection numbers of the toric divisors
    ChowSignature {
        /// polytope or fan JSON, `-`, or a generator name
        input: String,
        #[arg(long)]
        terms: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Euler characteristic of the mirror manifold
    Mirror {
        input: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Run the acceptance checks and print a pass/fail table
    CorpusVerify {
        /// Include the seven-letter permutohedron
        #[arg(long)]
        full: bool,
        #[arg(long)]
        json: bool,
    },
}

fn parse_case(s: &str) -> Result<TheoremCase, String> {
    match TheoremCase::parse(s) {
        Ok(TheoremCase::None) => Err("expected i, ii or iii".into()),
        Ok(c) => Ok(c),
        Err(e) => Err(e.to_string()),
    }
}

/// Exit status for a library error.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotSimple { .. } | Error::NotSimplicial(_) => 3,
        Error::OddDimension(_) => 4,
        _ => 2,
    }
}

fn read_input(input: &str) -> Result<Input, Error> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
        s
    } else if Path::new(input).exists() {
        std::fs::read_to_string(input).map_err(|e| Error::Parse(format!("{input}: {e}")))?
    } else {
        let p = match euclidean_realization(input)? {
            Some(p) => p,
            None => by_name(input, None, None)?,
        };
        return Ok(Input::Polytope(PolytopeJson::from_polytope(&p)));
    };
    parse_input(&text)
}

fn read_polytope(input: &str) -> Result<Polytope, Error> {
    match read_input(input)? {
        Input::Polytope(p) => p.to_polytope(),
        Input::Fan(_) => Err(Error::Parse("expected a polytope, found a fan".into())),
    }
}

fn emit<T: Serialize>(value: &T, pretty: bool) -> Result<(), Error> {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    println!("{}", text.map_err(|e| Error::Parse(e.to_string()))?);
    Ok(())
}

fn simple_fan(p: &Polytope) -> Result<(Polytope, Fan), Error> {
    let full = full_dimensional(p)?;
    let fan = normal_fan(&full)?;
    Ok((full, fan))
}

#[derive(Serialize)]
struct MirrorReport {
    chi: String,
    n: usize,
    d: usize,
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Gen { name, n, d, lifted, pretty } => {
            let p = match (lifted, name.split_once('-').map_or(name.as_str(), |(b, _)| b)) {
                (true, "permutohedron") => permutohedron_lifted(suffix(&name).or(n).unwrap_or(4))?,
                (true, "associahedron") => associahedron_lifted(suffix(&name).or(n).unwrap_or(6))?,
                (true, _) => euclidean_realization(&name)?.map_or_else(|| by_name(&name, n, d), Ok)?,
                _ => by_name(&name, n, d)?,
            };
            emit(&PolytopeJson::from_polytope(&p), pretty)?;
        }
        Command::Analyze { input, chow, case, pretty } => {
            let report = analyze(&read_polytope(&input)?, AnalyzeOptions { chow, case })?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            emit(&report, pretty)?;
            if !report.simple {
                eprintln!("error: polytope is not simple; fan fields omitted");
                return Ok(ExitCode::from(3));
            }
        }
        Command::Bounds { input, case, pretty } => {
            let p = read_polytope(&input)?;
            let d = p.intrinsic_dim();
            if d % 2 == 1 {
                return Err(Error::OddDimension(d));
            }
            let (full, fan) = simple_fan(&p)?;
            let class = classify(&fan)?.overall;
            emit(&bound_report(&full.f_vector(), &fan.m(), class, case)?, pretty)?;
        }
        Command::ChowSignature { input, terms, pretty } => {
            let fan = match read_input(&input)? {
                Input::Polytope(p) => simple_fan(&p.to_polytope()?)?.1,
                Input::Fan(f) => f.to_fan()?,
            };
            let sigma = signature_via_l(&fan)?;
            let terms = if terms { Some(monomial_sign_report(&fan)?) } else { None };
            emit(&ChowSignature { sigma, terms }, pretty)?;
        }
        Command::Mirror { input, pretty } => {
            let (full, _) = simple_fan(&read_polytope(&input)?)?;
            let f = full.f_vector();
            let d = f.dim();
            let n = full.num_facets();
            emit(&MirrorReport { chi: mirror_euler(&sigma(&f), n, d).to_string(), n, d }, pretty)?;
        }
        Command::CorpusVerify { full, json } => {
            let results = run_all(VerifyOptions { full });
            if json {
                emit(&results, true)?;
            } else {
                for r in &results {
                    println!("{:>2}  {}  {:<46} {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.title, r.detail);
                }
            }
            if results.iter().any(|r| !r.passed) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn suffix(name: &str) -> Option<usize> {
    name.rsplit_once('-').and_then(|(_, s)| s.parse().ok())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
