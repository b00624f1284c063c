use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jacdecomp::scenario::{render_text, run_command, Ambient, Command, Request};

#[derive(Parser)]
#[command(name = "jacdecomp", version, about = "Isogeny decompositions of Jacobians with group actions")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Schur index override `label=s` for a 1-based rational class label
    #[arg(long, value_parser = parse_schur, global = true)]
    schur: Vec<(usize, u64)>,
    /// refuse groups larger than this
    #[arg(long, global = true)]
    max_order: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AmbientArg {
    Acting,
    Join,
}

#[derive(Subcommand)]
enum Sub {
    /// Decompose the Jacobian and analyse the scenario's collections
    Analyze {
        /// preset such as `d2q?q=3` or a JSON scenario file
        scenario: String,
        /// comma-separated collection names (default: all)
        #[arg(long, value_delimiter = ',')]
        collections: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = AmbientArg::Acting)]
        ambient: AmbientArg,
    },
    /// Enumerate admissible collections of subgroups
    Search {
        scenario: String,
        #[arg(long, default_value_t = 3)]
        max_t: usize,
        #[arg(long)]
        require_full: bool,
        #[arg(long)]
        dedupe_conjugates: bool,
    },
    /// Fiber products of hyperelliptic curves
    Fiber {
        /// comma-separated genera of the factors
        #[arg(long, value_delimiter = ',', conflicts_with = "elliptic", required_unless_present = "elliptic")]
        genera: Option<Vec<u64>>,
        /// carry this many elliptic curves in one fiber product
        #[arg(long)]
        elliptic: Option<usize>,
    },
    /// Character table and rational classes of a group
    Chartable { scenario: String },
    /// Partition identities for collections partitioning the group
    #[command(name = "theorem-b")]
    TheoremB {
        scenario: String,
        #[arg(long, value_delimiter = ',')]
        collections: Option<Vec<String>>,
    },
}

fn parse_schur(s: &str) -> Result<(usize, u64), String> {
    let (l, v) = s.split_once('=').ok_or("expected label=s")?;
    let l = l.trim().parse().map_err(|_| format!("bad label `{l}`"))?;
    let v = v.trim().parse().map_err(|_| format!("bad Schur index `{v}`"))?;
    Ok((l, v))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut request = match cli.command {
        Sub::Analyze { scenario, collections, ambient } => {
            let mut r = Request::new(Command::Analyze, Some(&scenario));
            r.collections = collections;
            r.ambient = match ambient {
                AmbientArg::Acting => Ambient::Acting,
                AmbientArg::Join => Ambient::Join,
            };
            r
        }
        Sub::Search { scenario, max_t, require_full, dedupe_conjugates } => {
            let mut r = Request::new(Command::Search, Some(&scenario));
            r.max_t = max_t;
            r.require_full = require_full;
            r.dedupe_conjugates = dedupe_conjugates;
            r
        }
        Sub::Fiber { genera, elliptic } => {
            let mut r = Request::new(Command::Fiber, None);
            r.genera = genera;
            r.elliptic = elliptic;
            r
        }
        Sub::Chartable { scenario } => Request::new(Command::Chartable, Some(&scenario)),
        Sub::TheoremB { scenario, collections } => {
            let mut r = Request::new(Command::TheoremB, Some(&scenario));
            r.collections = collections;
            r
        }
    };
    request.schur = cli.schur;
    request.max_order = cli.max_order;

    let outcome = run_command(&request);
    if let Some(doc) = &outcome.document {
        match cli.format {
            Format::Text => print!("{}", render_text(doc)),
            Format::Json => println!("{}", doc.to_json()),
        }
    }
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
