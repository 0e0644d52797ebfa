use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use cubelab::{parse_instance, run, Failure, Options, COMMANDS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Verify cubical Sperner-type lemmas, count parities and extract witnesses.
#[derive(Parser, Debug)]
#[command(name = "cubelab", version)]
struct Cli {
    /// One of: kuhn-check, kuhn-strong-count, kyfan-count, kyfan-equivalence,
    /// products-verify, lebesgue-witness, fuse, tiling-nerve, tiling-check,
    /// hurewicz-path, hurewicz-parity, sphere-ls, sphere-power, freudenthal,
    /// duality-check, selftest.
    command: String,
    /// Instance file (JSON).
    #[arg(long, conflicts_with = "inline")]
    input: Option<String>,
    /// Instance as a JSON string.
    #[arg(long)]
    inline: Option<String>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: i64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    cases: usize,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Skip optional internal cross-checks. Witnesses are still re-verified.
    #[arg(long)]
    fast: bool,
}

fn threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("CUBELAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::malformed("CUBELAB_THREADS", format!("{v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn execute(cli: &Cli) -> Result<cubelab::Record, Failure> {
    threads()?;
    if !COMMANDS.contains(&cli.command.as_str()) {
        return Err(Failure::malformed("command", format!("unknown command {:?}", cli.command)));
    }
    let text = match (&cli.input, &cli.inline) {
        (Some(path), _) => {
            Some(std::fs::read_to_string(path).map_err(|e| Failure::malformed("--input", format!("{path}: {e}")))?)
        }
        (None, Some(s)) => Some(s.clone()),
        (None, None) => None,
    };
    let instance = text.as_deref().map(parse_instance).transpose()?;
    let opts = Options { n: cli.n, k: cli.k, seed: cli.seed, cases: cli.cases, mode: cli.mode.clone(), fast: cli.fast };
    let start = Instant::now();
    let mut rec = run(&cli.command, instance, &opts)?;
    rec.timing_ms = start.elapsed().as_millis() as u64;
    Ok(rec)
}

/// Writes to stdout; a closed pipe is not an error worth a panic.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(rec) => {
            match cli.format {
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&rec).expect("plain data"))),
                Format::Text => emit(&rec.to_text()),
            }
            if rec.verdict == "ok" {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            match cli.format {
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&f.to_json(&cli.command)).expect("plain data"))),
                Format::Text => emit(&format!("{f}\n")),
            }
            eprintln!("cubelab: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
