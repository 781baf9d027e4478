//! Corpus runner: analyze every `.ode` file in a directory on a small
//! worker pool and assemble the reports plus a summary in filename order.
//!
//! Output is byte-identical for any worker count: workers claim files from
//! a shared cursor and write results into preallocated slots, and rendering
//! happens only after all workers finish. Per-file failures (unreadable
//! entries, parse errors, unanalyzable equations) are recorded in place and
//! do not abort the run.

use crate::report::{build_report, render_text, Report};
use crate::strip_comments;
use painleve_core::{full_verdict, AnalysisOptions};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Serialize)]
pub struct CorpusReport {
    pub version: String,
    pub files: Vec<FileEntry>,
    pub summary: Summary,
}

#[derive(Serialize)]
pub struct FileEntry {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct Summary {
    pub analyzed: usize,
    pub errors: usize,
    pub verdicts: BTreeMap<String, usize>,
    pub failing_checks: BTreeMap<String, usize>,
}

fn analyze_file(path: &Path, version: &str) -> Result<Report, String> {
    let raw = std::fs::read_to_string(path).map_err(|e| format!("cannot read: {e}"))?;
    let text = strip_comments(&raw);
    let ode = painleve_core::parse_equation(&text).map_err(|e| format!("parse error: {e}"))?;
    let options = AnalysisOptions::default();
    let analysis = full_verdict(&ode, &options).map_err(|e| format!("analysis error: {e}"))?;
    let input = painleve_core::render_canonical(&ode);
    Ok(build_report(&analysis, &input, version, options.precision_bits))
}

pub fn run_corpus(dir: &Path, jobs: usize, version: &str) -> Result<CorpusReport, String> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| format!("cannot read directory {}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().and_then(|x| x.to_str()) == Some("ode"))
        .collect();
    paths.sort();

    let slots: Mutex<Vec<Option<Result<Report, String>>>> = Mutex::new((0..paths.len()).map(|_| None).collect());
    let cursor = AtomicUsize::new(0);
    let workers = jobs.max(1).min(paths.len());
    if workers > 0 {
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let idx = cursor.fetch_add(1, Ordering::Relaxed);
                    if idx >= paths.len() {
                        break;
                    }
                    let outcome = analyze_file(&paths[idx], version);
                    slots.lock().unwrap()[idx] = Some(outcome);
                });
            }
        });
    }

    let mut files = Vec::with_capacity(paths.len());
    let mut verdicts = BTreeMap::new();
    let mut failing_checks = BTreeMap::new();
    let mut analyzed = 0usize;
    let mut errors = 0usize;
    for (path, outcome) in paths.iter().zip(slots.into_inner().unwrap()) {
        let file = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        match outcome.expect("every slot is filled before the pool joins") {
            Ok(report) => {
                analyzed += 1;
                *verdicts.entry(report.verdict.clone()).or_insert(0) += 1;
                for check in &report.checks {
                    if check.outcome == "fail" {
                        *failing_checks.entry(check.id.clone()).or_insert(0) += 1;
                    }
                }
                files.push(FileEntry { file, report: Some(report), error: None });
            }
            Err(message) => {
                errors += 1;
                files.push(FileEntry { file, report: None, error: Some(message) });
            }
        }
    }
    Ok(CorpusReport {
        version: version.to_string(),
        files,
        summary: Summary { analyzed, errors, verdicts, failing_checks },
    })
}

pub fn render_corpus_text(corpus: &CorpusReport) -> String {
    let mut out = String::new();
    for entry in &corpus.files {
        out.push_str(&format!("== {}\n", entry.file));
        match (&entry.report, &entry.error) {
            (Some(report), _) => {
                out.push_str(&render_text(report));
            }
            (None, Some(error)) => {
                out.push_str(&format!("error: {error}\n"));
            }
            (None, None) => unreachable!("an entry is a report or an error"),
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "summary: {} analyzed, {} errors\n",
        corpus.summary.analyzed, corpus.summary.errors
    ));
    if !corpus.summary.verdicts.is_empty() {
        out.push_str("verdicts:\n");
        for (verdict, count) in &corpus.summary.verdicts {
            out.push_str(&format!("  {verdict}: {count}\n"));
        }
    }
    if !corpus.summary.failing_checks.is_empty() {
        out.push_str("failing checks:\n");
        for (id, count) in &corpus.summary.failing_checks {
            out.push_str(&format!("  {id}: {count}\n"));
        }
    }
    out
}
