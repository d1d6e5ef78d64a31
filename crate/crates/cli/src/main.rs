use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use superopt_cli::{run_file, CliError, Command, RunOptions, EXIT_INPUT};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Nehari,
    Superopt,
    Factorize,
    Verify,
    WhIndices,
    Classify,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Nehari => Command::Nehari,
            Cmd::Superopt => Command::Superopt,
            Cmd::Factorize => Command::Factorize,
            Cmd::Verify => Command::Verify,
            Cmd::WhIndices => Command::WhIndices,
            Cmd::Classify => Command::Classify,
        }
    }
}

/// Superoptimal approximation and canonical factorization of matrix functions.
#[derive(Parser, Debug)]
#[command(name = "superopt", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Problem file (JSON). Omit when using --batch.
    input: Option<PathBuf>,
    /// Minimum evaluation grid size.
    #[arg(long)]
    grid: Option<usize>,
    /// Relative tolerance for grouping the top singular value.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for randomized internal bases.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout (a directory in batch mode).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Process every *.json file in a directory.
    #[arg(long)]
    batch: Option<PathBuf>,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

fn emit(path: &Path, cmd: Command, opts: &RunOptions, out: Option<&Path>) -> i32 {
    let (code, res) = run_file(path, cmd, opts);
    match res {
        Ok(report) => {
            let text = report.to_json();
            match out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text + "\n") {
                        eprintln!("{}: {e}", p.display());
                        return EXIT_INPUT;
                    }
                }
                None => println!("{text}"),
            }
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("{}: check failed: {} (defect {:e}, tol {:e})", path.display(), c.name, c.defect.0, c.tol.0);
            }
        }
        Err(e) => eprintln!("{}: {e}", path.display()),
    }
    code
}

fn batch(dir: &Path, cmd: Command, opts: &RunOptions, out: Option<&Path>) -> Result<i32, CliError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json") && !p.to_string_lossy().ends_with(".report.json"))
        .collect();
    files.sort();
    let out_dir = out.unwrap_or(dir);
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::Input(format!("{}: {e}", out_dir.display())))?;
    let codes: Vec<i32> = std::thread::scope(|s| {
        let handles: Vec<_> = files
            .iter()
            .map(|f| {
                let stem = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                let target = out_dir.join(format!("{stem}.report.json"));
                s.spawn(move || emit(f, cmd, opts, Some(&target)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or(EXIT_INPUT)).collect()
    });
    Ok(codes.into_iter().max().unwrap_or(0))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cmd: Command = args.command.into();
    let opts = RunOptions { grid: args.grid, tol: args.tol, seed: args.seed, timings: args.timings };
    let code = match (&args.batch, &args.input) {
        (Some(dir), _) => batch(dir, cmd, &opts, args.report.as_deref()).unwrap_or_else(|e| {
            eprintln!("{e}");
            e.exit_code()
        }),
        (None, Some(input)) => emit(input, cmd, &opts, args.report.as_deref()),
        (None, None) => {
            eprintln!("an input file or --batch DIR is required");
            EXIT_INPUT
        }
    };
    ExitCode::from(code as u8)
}
