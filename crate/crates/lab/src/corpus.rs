//! Golden-report regression runner.
//!
//! A corpus directory holds `NAME.case.json` files of the form
//! `{"args": ["count-ff", "varieties/yx3.json", "--q", "2,3", "--r", "1..4"]}`
//! next to `NAME.expected.json`, the exact report bytes. Input paths in the
//! arguments are relative to the corpus directory. A case whose run fails is
//! compared through its error record, so expected failures can be pinned too.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cli::{Cli, Command};
use crate::commands::dispatch;
use crate::error::{LabError, LabResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseFile {
    args: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub cases: usize,
    pub passed: Vec<String>,
    pub failed: Vec<String>,
    /// Cases without an expected report.
    pub missing: Vec<String>,
    pub blessed: Vec<String>,
}

impl CorpusSummary {
    pub fn ok(&self) -> bool {
        self.failed.is_empty() && self.missing.is_empty()
    }
}

const CASE_SUFFIX: &str = ".case.json";
const EXPECTED_SUFFIX: &str = ".expected.json";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> LabError + '_ {
    move |source| LabError::Io { path: path.display().to_string(), source }
}

/// Case names in lexicographic order.
pub fn case_names(dir: &Path) -> LabResult<Vec<String>> {
    let mut names = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err(dir))? {
        let entry = entry.map_err(io_err(dir))?;
        let file = entry.file_name();
        if let Some(name) = file.to_str().and_then(|f| f.strip_suffix(CASE_SUFFIX)) {
            names.push(name.to_string());
        }
    }
    names.sort();
    Ok(names)
}

/// The report text a case produces now.
pub fn render_case(dir: &Path, name: &str) -> LabResult<String> {
    let path = dir.join(format!("{name}{CASE_SUFFIX}"));
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    let case: CaseFile = serde_json::from_str(&text)
        .map_err(|source| LabError::Parse { path: path.display().to_string(), source })?;
    let cli = Cli::try_parse_from(std::iter::once("nonarch-lab".to_string()).chain(case.args))
        .map_err(|e| LabError::config(format!("{name}: {e}")))?;
    if matches!(cli.command, Command::Corpus(_)) {
        return Err(LabError::config(format!("{name}: a case cannot run the corpus")));
    }
    Ok(match dispatch(&cli, dir) {
        Ok(out) => out.report.render(),
        Err(e) => {
            let mut s = serde_json::to_string_pretty(&json!({"error": e.to_string(), "exit_code": e.exit_code()}))
                .expect("error record serializes");
            s.push('\n');
            s
        }
    })
}

/// Reruns every case and compares byte for byte; with `bless`, rewrites the
/// expected reports instead.
pub fn run(dir: &Path, bless: bool) -> LabResult<CorpusSummary> {
    let mut summary = CorpusSummary::default();
    for name in case_names(dir)? {
        summary.cases += 1;
        let actual = render_case(dir, &name)?;
        let expected_path: PathBuf = dir.join(format!("{name}{EXPECTED_SUFFIX}"));
        if bless {
            fs::write(&expected_path, &actual).map_err(io_err(&expected_path))?;
            summary.blessed.push(name);
            continue;
        }
        match fs::read(&expected_path) {
            Ok(bytes) if bytes == actual.as_bytes() => summary.passed.push(name),
            Ok(_) => summary.failed.push(name),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => summary.missing.push(name),
            Err(e) => return Err(io_err(&expected_path)(e)),
        }
    }
    Ok(summary)
}
