use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use schubert_core::order::IntervalSpec;
use schubert_core::partition::Partition;
use schubert_core::perm::Permutation;
use schubert_core::poly::MultiPolynomial;
use schubert_core::poset::LabeledPoset;
use schubert_core::schubert::{
    chain_table, expand_double, expand_in_schubert, pieri_e, pieri_h, schubert_poly, skew_schubert, skew_schubert_checked,
};
use schubert_core::stanley::{stanley_function, theta, theta_domain};
use schubert_core::suite::{run_suite, Scale, SuiteConfig, DEFAULT_SEED};
use schubert_core::Execution;

#[derive(Parser)]
#[command(name = "schubert", version, about = "Schubert polynomials, labeled posets and reduced-word combinatorics")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Size of the verification families.
    #[arg(long, global = true, default_value = "small", value_parser = parse_scale)]
    scale: Scale,
    /// Report wall-clock time.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

fn parse_scale(s: &str) -> std::result::Result<Scale, String> {
    s.parse().map_err(|e: schubert_core::Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Print the Schubert polynomial of a permutation.
    Schubert { perm: Permutation },
    /// Expand a polynomial in x (and y) in Schubert polynomials.
    Expand { poly: String },
    /// Multiply 𝔖_u by h_m(x_1..x_k), or e_m with --elementary.
    Pieri {
        perm: Permutation,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        elementary: bool,
    },
    /// Skew Schubert function S_ζ in the Schur basis.
    Skew {
        zeta: Permutation,
        /// Also compute it from structure constants and compare.
        #[arg(long)]
        check: bool,
    },
    /// Chains giving the monomials of 𝔖_w.
    Monomials {
        perm: Permutation,
        /// Ambient S_n (defaults to the smallest one containing the permutation).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Stanley symmetric function F_w in the Schur basis.
    Stanley { perm: Permutation },
    /// Orbits of the involution θ on ⊔_π {π} × H_{λ_π}(w).
    ThetaTrace {
        #[arg(long)]
        w: Permutation,
        #[arg(long)]
        lambda: Partition,
    },
    /// Summarize a labeled poset given as JSON (a file, or - for stdin).
    Poset { input: String },
    /// Build an interval from a JSON spec such as
    /// {"kind":"kBruhat","k":2,"bottom":"13542","top":"25431"}.
    Interval { spec: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(code) => {
            if cli.timing {
                eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: String, value: Value) -> Result<()> {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("{text}");
    }
    Ok(())
}

fn poly_terms(f: &MultiPolynomial) -> Value {
    Value::Array(f.terms().map(|(m, c)| json!({ "exponents": m, "coeff": c })).collect())
}

fn read_input(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else if src.trim_start().starts_with('{') {
        Ok(src.to_string())
    } else {
        std::fs::read_to_string(src).with_context(|| format!("reading {src}"))
    }
}

fn poset_summary(p: &LabeledPoset) -> Result<(String, Value)> {
    let symmetric = p.is_symmetric();
    let f = if symmetric { Some(p.symfunc()?) } else { None };
    let text = format!(
        "elements: {}\nrank: {}\nmaximal chains: {}\nsymmetric: {}\nsymmetric function: {}",
        p.len(),
        p.rank(),
        p.chain_count(),
        symmetric,
        f.as_ref().map_or("-".to_string(), |f| f.to_string())
    );
    let value = json!({
        "elements": p.len(),
        "rank": p.rank(),
        "maximal_chains": p.chain_count(),
        "symmetric": symmetric,
        "symfunc": f,
    });
    Ok((text, value))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Schubert { perm } => {
            let f = schubert_poly(perm);
            emit(cli, f.to_string(), json!({ "perm": perm, "polynomial": f.to_string(), "terms": poly_terms(&f) }))?;
        }
        Command::Expand { poly } => {
            let f: MultiPolynomial = poly.parse()?;
            if f.uses_y() {
                let e = expand_double(&f)?;
                let text = e.iter().map(|((w, z), c)| format!("{c}*S[{w}](x)S[{z}](y)")).collect::<Vec<_>>().join(" + ");
                let value: Vec<Value> = e.iter().map(|((w, z), c)| json!({ "x": w, "y": z, "coeff": c })).collect();
                emit(cli, if text.is_empty() { "0".into() } else { text }, Value::Array(value))?;
            } else {
                let e = expand_in_schubert(&f)?;
                emit(cli, e.to_string(), serde_json::to_value(&e)?)?;
            }
        }
        Command::Pieri { perm, k, m, elementary } => {
            let e = if *elementary { pieri_e(perm, *m, *k)? } else { pieri_h(perm, *m, *k)? };
            emit(cli, e.to_string(), serde_json::to_value(&e)?)?;
        }
        Command::Skew { zeta, check } => {
            let f = if *check { skew_schubert_checked(zeta)? } else { skew_schubert(zeta)? };
            emit(cli, f.to_string(), json!({ "zeta": zeta, "symfunc": f }))?;
        }
        Command::Monomials { perm, n } => {
            let n = n.unwrap_or(perm.n().max(1));
            let chains = chain_table(perm, n)?;
            let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
            for c in &chains {
                *counts.entry(c.alpha.clone()).or_default() += 1;
            }
            let mut lines = Vec::new();
            for (alpha, c) in &counts {
                let exps: Vec<String> = (0..n).map(|i| (n - 1 - i - alpha.get(i).copied().unwrap_or(0)).to_string()).collect();
                lines.push(format!("{c} x^({})  α={alpha:?}", exps.join(",")));
            }
            lines.push(format!("𝔖_{perm} = {}", schubert_poly(perm)));
            emit(cli, lines.join("\n"), json!({ "perm": perm, "n": n, "chains": chains }))?;
        }
        Command::Verify { suite, sequential } => {
            let cfg =
                SuiteConfig { scale: cli.scale, seed: cli.seed, execution: if *sequential { Execution::Sequential } else { Execution::Parallel } };
            let mut report = run_suite(suite, &cfg)?;
            if !cli.timing {
                report.wall_ms = None;
            }
            emit(cli, report.to_string(), serde_json::to_value(&report)?)?;
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Stanley { perm } => {
            let f = stanley_function(perm);
            emit(cli, f.to_string(), json!({ "perm": perm, "symfunc": f }))?;
        }
        Command::ThetaTrace { w, lambda } => {
            if lambda.size() != w.length() {
                bail!("{lambda} is not a partition of ℓ({w}) = {}", w.length());
            }
            let mut lines = Vec::new();
            let mut records = Vec::new();
            let mut fixed = 0;
            for (sign, pi, rho) in theta_domain(w, lambda) {
                let step = theta(&pi, &rho, lambda)?;
                let alpha = schubert_core::poset::lambda_pi(lambda, &pi, lambda.len())?;
                let from = rho.format_blocks(&alpha);
                let to = step.word.format_blocks(&step.composition);
                match step.r {
                    None => {
                        fixed += 1;
                        lines.push(format!("fixed  π={pi}  {from}"));
                    }
                    Some(r) => lines.push(format!("{:+}  π={pi}  {from}  --r={r}-->  π'={}  {to}", sign, step.pi)),
                }
                records.push(json!({ "sign": sign, "pi": pi, "word": from, "image_pi": step.pi, "image_word": to, "r": step.r }));
            }
            lines.push(format!("fixed points: {fixed}"));
            emit(cli, lines.join("\n"), json!({ "w": w, "lambda": lambda, "fixed_points": fixed, "orbits": records }))?;
        }
        Command::Poset { input } => {
            let p: LabeledPoset = serde_json::from_str(&read_input(input)?).context("parsing poset JSON")?;
            let (text, value) = poset_summary(&p)?;
            emit(cli, text, value)?;
        }
        Command::Interval { spec } => {
            let spec: IntervalSpec = serde_json::from_str(&read_input(spec)?).context("parsing interval spec")?;
            let p = spec.build()?;
            let (text, mut value) = poset_summary(&p)?;
            value["poset"] = serde_json::to_value(&p)?;
            emit(cli, text, value)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
