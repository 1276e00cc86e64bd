use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use nonarch_lab::cli::{Cli, Command};
use nonarch_lab::parallel::{build_pool, resolve_threads};
use nonarch_lab::{corpus, dispatch, exit, LabError, LabResult};

fn write_to(path: &Path, text: &str) -> LabResult<()> {
    fs::write(path, text).map_err(|source| LabError::Io { path: path.display().to_string(), source })
}

fn run(cli: &Cli) -> LabResult<i32> {
    if let Command::Corpus(args) = &cli.command {
        let summary = corpus::run(&args.dir, args.bless)?;
        if summary.cases == 0 {
            eprintln!("warning: no cases in {}", args.dir.display());
        }
        for name in &summary.failed {
            eprintln!("FAIL {name}");
        }
        for name in &summary.missing {
            eprintln!("MISSING {name}: no expected report");
        }
        let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
        text.push('\n');
        match &cli.out {
            Some(p) => write_to(p, &text)?,
            None => print!("{text}"),
        }
        return Ok(if summary.ok() { exit::OK } else { exit::ASSERTION });
    }
    let started = Instant::now();
    let outcome = dispatch(cli, Path::new("."))?;
    let text = outcome.report.render();
    match &cli.out {
        Some(p) => write_to(p, &text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| LabError::Io { path: "<stdout>".into(), source })?;
        }
    }
    if let (Some(path), Some(csv)) = (&cli.csv, &outcome.csv) {
        write_to(path, csv)?;
    }
    // Timing goes to stderr so reports stay reproducible.
    eprintln!("elapsed: {:.3} s", started.elapsed().as_secs_f64());
    for c in outcome.report.checks.iter().filter(|c| !c.holds) {
        eprintln!("check failed: {}", c.name);
    }
    Ok(if outcome.report.passed { exit::OK } else { exit::ASSERTION })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::CONFIG } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = resolve_threads(cli.threads).and_then(|n| build_pool(n)).and_then(|pool| pool.install(|| run(&cli)));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
