mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sockmatch_core::closedform::{a_binomial_form, a_bounded, bounded_walk_count};
use sockmatch_core::numeric::{fraction_to_decimal, fraction_to_f64, Count, Fraction};
use sockmatch_core::oracle::{count_bounded_walks_oracle, physical_hit_probability};
use sockmatch_core::recurrences::a_recurrence;
use sockmatch_core::sampler::estimate_hit_probability;
use sockmatch_core::table::{b_table, b_value};
use sockmatch_core::trigsum::{a_trig, a_trig_split, convergence_series, uniform_hit_probability};
use sockmatch_core::{Error, Execution, Method, Model, WalkSpec};

use render::{markdown_grid, render_record, render_records, Field, OutputFormat, Record};

#[derive(Parser, Debug)]
#[command(
    name = "sockmatch",
    version,
    about = "Exact counts and probabilities for height-restricted Dyck paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Explicit,
    Alt,
    Rec1,
    Rec2,
    Complement,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Explicit => Method::Explicit,
            MethodArg::Alt => Method::Alt,
            MethodArg::Rec1 => Method::Rec1,
            MethodArg::Rec2 => Method::Rec2,
            MethodArg::Complement => Method::Complement,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Uniform,
    Physical,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Uniform => Model::Uniform,
            ModelArg::Physical => Model::Physical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Paths reaching height k.
    #[value(name = "B")]
    B,
    /// Paths staying at or below height t.
    #[value(name = "A")]
    A,
    /// Walks confined to the band [-lower, upper].
    #[value(name = "W")]
    W,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of B(n,k) for 1 <= n <= nmax, 1 <= k <= kmax.
    Table {
        #[arg(long = "nmax", default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        #[arg(long = "kmax", default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..))]
        k_max: u32,
        #[arg(long, value_enum, default_value = "explicit")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "markdown")]
        format: OutputFormat,
    },
    /// A single exact count.
    Count {
        #[arg(long, value_enum, ignore_case = true)]
        family: Family,
        #[arg(long)]
        n: u32,
        /// Height threshold for family B.
        #[arg(long)]
        k: Option<u32>,
        /// Height bound for family A (alias of --upper).
        #[arg(long)]
        t: Option<u32>,
        /// Lower barrier depth for family W.
        #[arg(long)]
        lower: Option<u32>,
        /// Upper barrier height for families W and A.
        #[arg(long)]
        upper: Option<u32>,
        /// B: explicit|alt|rec1|rec2|complement; A: binomial|reflection|recurrence|trig|trig-split;
        /// W: reflection|oracle.
        #[arg(long)]
        method: Option<String>,
        #[arg(long, value_enum, default_value = "markdown")]
        format: OutputFormat,
    },
    /// Exact probability that a trajectory reaches height k.
    Prob {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_enum, default_value = "uniform")]
        model: ModelArg,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        digits: u32,
        #[arg(long, value_enum, default_value = "markdown")]
        format: OutputFormat,
    },
    /// Monte Carlo estimate of the hit probability with a 99% Wilson interval.
    Simulate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_enum, default_value = "uniform")]
        model: ModelArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "markdown")]
        format: OutputFormat,
    },
    /// Exact P(n,k) for n = k..nmax next to its asymptotic estimate.
    Asym {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long = "nmax", value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
        digits: u32,
        #[arg(long, value_enum, default_value = "markdown")]
        format: OutputFormat,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precision { .. } => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn exact(c: &Count) -> Field {
    Field::Exact(c.to_string())
}

fn fraction_text(f: &Fraction) -> String {
    format!("{}/{}", f.numer(), f.denom())
}

fn cmd_table(
    n_max: u32,
    k_max: u32,
    method: Method,
    format: OutputFormat,
) -> Result<String, Failure> {
    let rows = b_table(n_max, k_max, method, Execution::default())?;
    Ok(match format {
        OutputFormat::Markdown => {
            let text: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.iter().map(Count::to_string).collect())
                .collect();
            markdown_grid(&text)
        }
        _ => {
            let cells: Vec<Record> = rows
                .iter()
                .enumerate()
                .flat_map(|(i, r)| {
                    r.iter().enumerate().map(move |(j, b)| {
                        vec![
                            ("n", Field::Int(i as u64 + 1)),
                            ("k", Field::Int(j as u64 + 1)),
                            ("B", exact(b)),
                        ]
                    })
                })
                .collect();
            let meta: Record = vec![
                ("method", Field::Text(method.name().into())),
                ("n_max", Field::Int(n_max.into())),
                ("k_max", Field::Int(k_max.into())),
            ];
            render_records(&meta, "cells", &cells, format)
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_count(
    family: Family,
    n: u32,
    k: Option<u32>,
    t: Option<u32>,
    lower: Option<u32>,
    upper: Option<u32>,
    method: Option<String>,
    format: OutputFormat,
) -> Result<String, Failure> {
    let mut record: Record = Vec::new();
    let (value, used) = match family {
        Family::B => {
            if t.is_some() || lower.is_some() || upper.is_some() {
                return Err(usage("family B takes --n and --k only"));
            }
            let k = k.ok_or_else(|| usage("family B needs --k"))?;
            if k == 0 {
                return Err(usage("--k must be at least 1"));
            }
            let method: Method = method.as_deref().unwrap_or("explicit").parse()?;
            record.push(("family", Field::Text("B".into())));
            record.push(("n", Field::Int(n.into())));
            record.push(("k", Field::Int(k.into())));
            (b_value(n, k, method), method.name().to_string())
        }
        Family::A => {
            if k.is_some() || lower.is_some() {
                return Err(usage("family A takes --n and --t only"));
            }
            let t = match (t, upper) {
                (Some(a), Some(b)) if a != b => return Err(usage("--t and --upper disagree")),
                (Some(v), _) | (None, Some(v)) => v,
                (None, None) => return Err(usage("family A needs --t")),
            };
            record.push(("family", Field::Text("A".into())));
            record.push(("n", Field::Int(n.into())));
            record.push(("t", Field::Int(t.into())));
            match method.as_deref().unwrap_or("binomial") {
                "binomial" => match a_binomial_form(n, t) {
                    Ok(v) => (v, "binomial".to_string()),
                    Err(Error::Domain(_)) => (a_bounded(n, t), "reflection".to_string()),
                    Err(e) => return Err(e.into()),
                },
                "reflection" => (a_bounded(n, t), "reflection".to_string()),
                "recurrence" => {
                    let table = a_recurrence(n as usize, t as usize);
                    (
                        table.get(n as usize, t as usize).clone(),
                        "recurrence".to_string(),
                    )
                }
                "trig" => (a_trig(n, t)?.rounded, "trig".to_string()),
                "trig-split" => (a_trig_split(n, t)?.rounded, "trig-split".to_string()),
                other => return Err(usage(format!("unknown method {other:?} for family A"))),
            }
        }
        Family::W => {
            if k.is_some() || t.is_some() {
                return Err(usage("family W takes --n, --lower and --upper only"));
            }
            let lower = lower.ok_or_else(|| usage("family W needs --lower"))?;
            let upper = upper.ok_or_else(|| usage("family W needs --upper"))?;
            let spec = WalkSpec::new(n, lower, upper);
            record.push(("family", Field::Text("W".into())));
            record.push(("n", Field::Int(n.into())));
            record.push(("lower", Field::Int(lower.into())));
            record.push(("upper", Field::Int(upper.into())));
            match method.as_deref().unwrap_or("reflection") {
                "reflection" => (bounded_walk_count(spec), "reflection".to_string()),
                "oracle" => (count_bounded_walks_oracle(spec)?, "oracle".to_string()),
                other => return Err(usage(format!("unknown method {other:?} for family W"))),
            }
        }
    };
    record.push(("method", Field::Text(used)));
    record.push(("count", exact(&value)));
    Ok(render_record(&record, format))
}

fn cmd_prob(n: u32, k: u32, model: Model, digits: u32, format: OutputFormat) -> String {
    let p = match model {
        Model::Uniform => uniform_hit_probability(n, k),
        Model::Physical => physical_hit_probability(n, k),
    };
    let record: Record = vec![
        ("model", Field::Text(model.to_string())),
        ("n", Field::Int(n.into())),
        ("k", Field::Int(k.into())),
        ("numerator", exact(p.numer())),
        ("denominator", exact(p.denom())),
        ("fraction", Field::Exact(fraction_text(&p))),
        (
            "decimal",
            Field::Exact(fraction_to_decimal(&p, digits as usize)),
        ),
        ("float", Field::Float(fraction_to_f64(&p))),
    ];
    render_record(&record, format)
}

fn cmd_simulate(
    model: Model,
    n: u32,
    k: u32,
    trials: u64,
    seed: u64,
    format: OutputFormat,
) -> Result<String, Failure> {
    let r = estimate_hit_probability(model, n, k, trials, seed)?;
    let record: Record = vec![
        ("model", Field::Text(r.model.to_string())),
        ("n", Field::Int(r.n.into())),
        ("k", Field::Int(r.k.into())),
        ("trials", Field::Int(r.trials)),
        ("hits", Field::Int(r.hits)),
        ("p_hat", Field::Float(r.p_hat)),
        ("ci_low", Field::Float(r.ci_low)),
        ("ci_high", Field::Float(r.ci_high)),
        ("seed", Field::Int(r.seed)),
    ];
    Ok(render_record(&record, format))
}

fn cmd_asym(k: u32, n_max: u32, digits: u32, format: OutputFormat) -> Result<String, Failure> {
    let rows = convergence_series(k, n_max)?;
    let records: Vec<Record> = rows
        .iter()
        .map(|row| {
            vec![
                ("n", Field::Int(row.n.into())),
                ("p_exact", Field::Exact(fraction_text(&row.p_exact))),
                (
                    "p_decimal",
                    Field::Exact(fraction_to_decimal(&row.p_exact, digits as usize)),
                ),
                ("p_float", Field::Float(row.p_float)),
                ("one_minus_p_estimate", Field::Float(row.bound)),
            ]
        })
        .collect();
    let meta: Record = vec![
        ("k", Field::Int(k.into())),
        ("n_max", Field::Int(n_max.into())),
    ];
    Ok(render_records(&meta, "rows", &records, format))
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Table {
            n_max,
            k_max,
            method,
            format,
        } => cmd_table(n_max, k_max, method.into(), format),
        Command::Count {
            family,
            n,
            k,
            t,
            lower,
            upper,
            method,
            format,
        } => cmd_count(family, n, k, t, lower, upper, method, format),
        Command::Prob {
            n,
            k,
            model,
            digits,
            format,
        } => Ok(cmd_prob(n, k, model.into(), digits, format)),
        Command::Simulate {
            n,
            k,
            model,
            trials,
            seed,
            format,
        } => cmd_simulate(model.into(), n, k, trials, seed, format),
        Command::Asym {
            k,
            n_max,
            digits,
            format,
        } => {
            if n_max < k {
                return Err(usage(format!(
                    "--nmax ({n_max}) must be at least --k ({k})"
                )));
            }
            cmd_asym(k, n_max, digits, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Err(Failure::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_failures_are_internal() {
        let e = Error::Precision {
            n: 25,
            t: 12,
            residual: 0.3,
            limit: 0.25,
        };
        assert!(matches!(Failure::from(e), Failure::Internal(_)));
        assert!(matches!(
            Failure::from(Error::Domain("x".into())),
            Failure::Usage(_)
        ));
        assert!(matches!(
            Failure::from(Error::Budget { n: 16, limit: 15 }),
            Failure::Usage(_)
        ));
    }
}
