use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use chirality::{parse_declaration, Declarations};
use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use eta::SearchOptions;
use etalink::{expr_report, load, read_list, run_link, table_row, LinkCommand, Options, Report, Role, TableReport};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Eta functions, Cochran invariants and chirality obstructions of links.
#[derive(Parser)]
#[command(name = "etalink", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagram summary: crossings, writhe, linking numbers, canonical PD.
    Parse(Common),
    /// Conway and Alexander polynomials, linking numbers, component knots.
    Invariants(Common),
    /// Eta functions of a two-component link with linking number zero.
    Eta(Common),
    /// Cochran invariants beta_1..beta_N from the w-expansion of eta.
    Betas(Common),
    /// Chirality obstructions of a diagram, or epsilon-types of a satellite
    /// expression.
    Chirality {
        #[command(flatten)]
        common: Common,
        /// Satellite expression, e.g. "Bing(r=0, Hopf)".
        #[arg(long)]
        expr: Option<String>,
        /// Atom declaration for --expr, e.g. "T: achiral=none". Repeatable.
        #[arg(long = "declare")]
        declare: Vec<String>,
    },
    /// Eta and its positive part for every link of a list file, checked
    /// against the `# expect eta_plus:` line of each file.
    Table(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Link file (PD, braid or presentation). Repeatable.
    #[arg(long = "link")]
    links: Vec<PathBuf>,
    /// File listing link files, one per line, relative to its directory.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Order of the w-expansion.
    #[arg(long, default_value_t = 8)]
    order: usize,
    /// Largest number of crossing sets tried in the unknotting search.
    #[arg(long)]
    budget: Option<usize>,
    /// Role order: 1 lifts the first component, 2 the second.
    #[arg(long, default_value = "both")]
    role: Role,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl Common {
    fn options(&self) -> Options {
        let mut search = SearchOptions {
            order: self.order,
            ..SearchOptions::default()
        };
        if let Some(b) = self.budget {
            search.max_candidates = b;
        }
        Options {
            search,
            role: self.role,
        }
    }

    fn validate(&self, need_links: bool) {
        if self.order == 0 {
            usage(ErrorKind::ValueValidation, "--order must be at least 1");
        }
        if self.budget == Some(0) {
            usage(ErrorKind::ValueValidation, "--budget must be at least 1");
        }
        if need_links && self.links.is_empty() && self.file.is_none() {
            usage(ErrorKind::MissingRequiredArgument, "give --link or --file");
        }
    }

    fn paths(&self) -> anyhow::Result<Vec<PathBuf>> {
        let mut paths = self.links.clone();
        if let Some(f) = &self.file {
            paths.extend(read_list(f).with_context(|| "reading the list file")?);
        }
        Ok(paths)
    }
}

fn usage(kind: ErrorKind, msg: &str) -> ! {
    Cli::command().error(kind, msg).exit()
}

/// Results in input order; failures as messages.
type Outcome = Vec<Result<Report, (String, String)>>;

fn run_links(cmd: LinkCommand, common: &Common) -> anyhow::Result<Outcome> {
    let opts = common.options();
    let paths = common.paths()?;
    Ok(paths
        .par_iter()
        .map(|p| {
            load(p)
                .and_then(|input| run_link(cmd, &input, &opts))
                .map_err(|e| (p.display().to_string(), e.to_string()))
        })
        .collect())
}

fn run_table(common: &Common) -> anyhow::Result<Outcome> {
    let opts = common.options();
    let paths = common.paths()?;
    let rows: Vec<_> = paths
        .par_iter()
        .map(|p| {
            load(p)
                .and_then(|input| table_row(&input, &opts))
                .map_err(|e| (p.display().to_string(), e.to_string()))
        })
        .collect();
    let (ok, failed): (Vec<_>, Vec<_>) = rows.into_iter().partition(Result::is_ok);
    let file = common
        .file
        .as_ref()
        .map_or_else(|| "(command line)".into(), |f| f.display().to_string());
    let mut out = vec![Ok(Report::Table(TableReport::new(
        file,
        ok.into_iter().flatten().collect(),
    )))];
    out.extend(failed.into_iter().map(|r| Err(r.unwrap_err())));
    Ok(out)
}

fn run_expr(expr: &str, declare: &[String]) -> anyhow::Result<Outcome> {
    let mut decls = Declarations::new();
    for d in declare {
        let (name, decl) = parse_declaration(d).with_context(|| format!("parsing declaration {d:?}"))?;
        if decls.insert(name.clone(), decl).is_some() {
            bail!("atom {name} declared twice");
        }
    }
    Ok(vec![expr_report(expr, &decls)
        .map(Report::Expr)
        .map_err(|e| (expr.to_string(), e.to_string()))])
}

fn emit(command: &str, format: Format, outcome: &Outcome) -> ExitCode {
    let mut failed = false;
    for r in outcome {
        if let Err((what, msg)) = r {
            eprintln!("etalink: {command} failed for {what}: {msg}");
            failed = true;
        }
    }
    match format {
        Format::Text => {
            let texts: Vec<String> = outcome.iter().flatten().map(Report::text).collect();
            print!("{}", texts.join("\n"));
        }
        Format::Json => {
            let results: Vec<Value> = outcome
                .iter()
                .map(|r| match r {
                    Ok(rep) => serde_json::to_value(rep).expect("reports serialize"),
                    Err((what, msg)) => json!({ "input": what, "error": msg }),
                })
                .collect();
            let doc = json!({ "command": command, "results": results });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json renders"));
        }
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, format, outcome) = match &cli.command {
        Command::Chirality { common, expr, declare } => {
            if let Some(expr) = expr {
                common.validate(false);
                if !common.links.is_empty() || common.file.is_some() {
                    usage(
                        ErrorKind::ArgumentConflict,
                        "--expr cannot be combined with --link or --file",
                    );
                }
                ("chirality", common.format, run_expr(expr, declare))
            } else {
                if !declare.is_empty() {
                    usage(ErrorKind::ArgumentConflict, "--declare needs --expr");
                }
                common.validate(true);
                ("chirality", common.format, run_links(LinkCommand::Chirality, common))
            }
        }
        Command::Table(common) => {
            common.validate(true);
            ("table", common.format, run_table(common))
        }
        Command::Parse(c) | Command::Invariants(c) | Command::Eta(c) | Command::Betas(c) => {
            let cmd = match &cli.command {
                Command::Parse(_) => LinkCommand::Parse,
                Command::Invariants(_) => LinkCommand::Invariants,
                Command::Eta(_) => LinkCommand::Eta,
                _ => LinkCommand::Betas,
            };
            c.validate(true);
            (cmd.name(), c.format, run_links(cmd, c))
        }
    };
    match outcome {
        Ok(o) => emit(name, format, &o),
        Err(e) => {
            eprintln!("etalink: {name}: {e:#}");
            ExitCode::from(1)
        }
    }
}
