use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};

use galbim_cli::fixture::parse;
use galbim_cli::run::{run, Options, Report};

#[derive(Parser)]
#[command(name = "galbim", version, about = "Runs fixture files against the galbim engine")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and run one fixture file.
    Analyze {
        file: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = Options::default().max_degree)]
        max_degree: u32,
        #[arg(long, default_value_t = Options::default().group_bound)]
        group_bound: usize,
        /// Only parse and resolve names.
        #[arg(long)]
        verify_only: bool,
    },
    /// Work with the shipped fixture directory.
    Fixtures {
        #[command(subcommand)]
        action: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Run every `*.fix` file in the fixture directory.
    RunAll {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Defaults to $GALBIM_FIXTURES, then the fixtures shipped with this crate.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

const FAIL: u8 = 1;
const USAGE: u8 = 2;

fn load(path: &Path) -> Result<galbim_cli::fixture::FixtureFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn analyze(file: &Path, json: Option<&Path>, opts: Options, verify_only: bool) -> ExitCode {
    let fixture = match load(file) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(USAGE);
        }
    };
    if verify_only {
        println!(
            "{}: {} declarations, {} commands",
            file.display(),
            fixture.declarations().count(),
            fixture.commands().count()
        );
        return ExitCode::SUCCESS;
    }
    let report = run(&fixture, &file.display().to_string(), opts);
    let text = report.to_json();
    match json {
        Some(out) => {
            if let Err(e) = std::fs::write(out, text + "\n") {
                eprintln!("{}: {e}", out.display());
                return ExitCode::from(USAGE);
            }
        }
        None => println!("{text}"),
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAIL)
    }
}

fn fixture_dir(dir: Option<PathBuf>) -> PathBuf {
    dir.or_else(|| std::env::var_os("GALBIM_FIXTURES").map(PathBuf::from))
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

fn run_all(dir: &Path, jobs: usize) -> ExitCode {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "fix"))
            .collect(),
        Err(e) => {
            eprintln!("{}: {e}", dir.display());
            return ExitCode::from(USAGE);
        }
    };
    files.sort();
    if files.is_empty() {
        eprintln!("{}: no fixtures", dir.display());
        return ExitCode::from(USAGE);
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Result<Report, String>)>> = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, files.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(path) = files.get(i) else { break };
                let name = path.file_name().unwrap_or_default().to_string_lossy().to_string();
                let r = load(path).map(|f| run(&f, &name, Options::default()));
                results.lock().unwrap().push((i, r));
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|r| r.0);
    let mut code = ExitCode::SUCCESS;
    for (i, r) in results {
        let name = files[i].file_name().unwrap_or_default().to_string_lossy();
        match r {
            Ok(rep) => {
                let passed = rep.entries.iter().filter(|e| e.pass).count();
                let verdict = if rep.pass { "PASS" } else { "FAIL" };
                println!("{verdict}  {name}  {passed}/{}", rep.entries.len());
                for e in rep.entries.iter().filter(|e| !e.pass) {
                    let why = match &e.error {
                        Some(err) => format!("{}: {}", err.kind, err.message),
                        None => e
                            .expectations
                            .iter()
                            .filter(|x| !x.pass)
                            .map(|x| format!("{}: want {} got {}", x.key, x.expected, x.actual.as_deref().unwrap_or("nothing")))
                            .collect::<Vec<_>>()
                            .join("; "),
                    };
                    println!("      line {} {}: {why}", e.line, e.command);
                }
                if !rep.pass && code == ExitCode::SUCCESS {
                    code = ExitCode::from(FAIL);
                }
            }
            Err(e) => {
                println!("ERROR {name}  {e}");
                code = ExitCode::from(USAGE);
            }
        }
    }
    code
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Cmd::Analyze {
            file,
            json,
            max_degree,
            group_bound,
            verify_only,
        } => analyze(&file, json.as_deref(), Options { max_degree, group_bound }, verify_only),
        Cmd::Fixtures {
            action: FixturesCmd::RunAll { jobs, dir },
        } => run_all(&fixture_dir(dir), jobs),
    }
}
