//! Scenario-driven front end for `swmix-core`.
//!
//! A scenario names a system, a switching language, a task and a budget;
//! [`tasks::run`] dispatches it and [`write_outputs`] puts report.json and
//! the task's artifacts (certificates, CSV tables) in the output directory.
//! Every certificate file embeds its system, so [`verify_file`] can
//! re-check it without the scenario.

pub mod codec;
pub mod demo;
pub mod error;
pub mod num;
pub mod scenario;
pub mod tasks;

use std::fs;
use std::path::{Path, PathBuf};

use codec::CertificateFile;
use error::CliError;
use tasks::{pretty, RunOutput};

/// Writes report.json and the artifacts, returning the paths written.
pub fn write_outputs(dir: &Path, out: &RunOutput) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let report = std::iter::once(("report.json".to_string(), pretty(&out.report)));
    for (name, body) in report.chain(out.files.iter().cloned()) {
        let path = dir.join(name);
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

/// Loads a certificate file and re-runs the owning verifier.
pub fn verify_file(path: &Path) -> Result<(String, bool), CliError> {
    let text = fs::read_to_string(path)?;
    let file: CertificateFile = serde_json::from_str(&text)?;
    Ok((file.certificate.kind().to_string(), file.verify()?))
}
