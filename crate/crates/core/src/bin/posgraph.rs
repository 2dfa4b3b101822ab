use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use posgraph::graph::parse_graph6;
use posgraph::pipeline::{self, InputSource, PipelineConfig};
use posgraph::structure::wl_partition;
use posgraph::witness::{self, MinimizerConfig, WitnessCertificate, DEFAULT_ENTRY_RANGE};
use posgraph::Error;

#[derive(Parser)]
#[command(name = "posgraph", version, about = "Positivity checks for small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one graph and print its ledger record.
    Check {
        graph6: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Classify a stream of graphs into a ledger, resuming if it exists.
    Pipeline {
        /// A graph6 file, `builtin:nN` or `builtin:treesN`.
        #[arg(long)]
        input: String,
        #[arg(long)]
        ledger: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Summarise a ledger.
    Report {
        #[arg(long)]
        ledger: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-check every record of a ledger exactly.
    Verify {
        #[arg(long)]
        ledger: PathBuf,
    },
    /// Search for a negative weighted target.
    Witness {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = Method::Enum)]
        method: Method,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count homomorphisms from the 9-vertex rook's graph into its
    /// hand-made target.
    PaperG1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Enum,
    Minimize,
    Restricted,
}

fn load_config(path: Option<&PathBuf>, workers: Option<usize>, seed: Option<u64>) -> posgraph::Result<PipelineConfig> {
    let mut cfg = match path {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    if let Some(w) = workers {
        cfg.workers = w;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn print_certificate(c: &Option<WitnessCertificate>) {
    match c {
        Some(c) => println!("{}", serde_json::to_string_pretty(c).expect("certificate serializes")),
        None => println!("no witness found"),
    }
}

fn run(cli: Cli) -> posgraph::Result<ExitCode> {
    match cli.command {
        Command::Check { graph6, config, seed } => {
            let g = parse_graph6(graph6.trim())?;
            let cfg = load_config(config.as_ref(), None, seed)?;
            let r = pipeline::classify(&g, &cfg)?;
            println!("{}", r.to_json_line());
        }
        Command::Pipeline {
            input,
            ledger,
            config,
            workers,
            seed,
        } => {
            let source: InputSource = input.parse()?;
            let cfg = load_config(config.as_ref(), workers, seed)?;
            let s = pipeline::run_pipeline(&source, &cfg, &ledger)?;
            println!(
                "input {} skipped {} classified {}",
                s.input_graphs, s.skipped, s.classified
            );
            for (v, c) in &s.by_verdict {
                println!("  {v:<20} {c}");
            }
            for (stage, c) in &s.by_stage {
                println!("  stage {stage:<16} {c}");
            }
            for m in &s.malformed {
                eprintln!("malformed input line {}: {}", m.line, m.message);
            }
        }
        Command::Report { ledger, format } => {
            if !ledger.exists() {
                return Err(Error::InvalidArgument(format!("ledger {} not found", ledger.display())));
            }
            let r = pipeline::report(&ledger)?;
            match format {
                Format::Text => print!("{}", r.to_text()),
                Format::JsonLines => print!("{}", r.to_json_lines()),
            }
        }
        Command::Verify { ledger } => {
            let check = pipeline::verify_ledger(&ledger)?;
            for f in &check.failures {
                println!("line {}: {}", f.line, f.message);
            }
            println!(
                "{} records, {} failures: {}",
                check.records,
                check.failures.len(),
                if check.passed() { "PASS" } else { "FAIL" }
            );
            if !check.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Witness { graph, method, seed } => {
            let g = parse_graph6(graph.trim())?;
            let cfg = MinimizerConfig {
                seed,
                ..MinimizerConfig::default()
            };
            let c = match method {
                Method::Enum => witness::enumerate_matrix_witness(&g, &[1, 2, 3], DEFAULT_ENTRY_RANGE)?,
                Method::Minimize => witness::full_polynomial_search(&g, 3, &cfg)?,
                Method::Restricted => witness::restricted_witness_search(&g, &wl_partition(&g), 3, &cfg)?,
            };
            if let Some(c) = &c {
                c.verify(&g)?;
            }
            print_certificate(&c);
        }
        Command::PaperG1 => {
            let r = witness::g1_report()?;
            println!("hom(G1, H) by elimination:   {}", r.elimination);
            println!("hom(G1, H) by row transfer:  {}", r.row_transfer);
            if !r.is_negative() {
                println!("not a negative witness");
                return Ok(ExitCode::from(1));
            }
            println!("negative witness confirmed");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification(_) => 1,
        Error::TooLarge { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
