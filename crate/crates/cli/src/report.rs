use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;
use srkit_core::{io, Error};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    VerifiedFalse,
    Error,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerifiedFalse => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum FileKind {
    Matrix,
    Dense,
}

/// File produced by a subcommand; written only after the command succeeds.
#[derive(Clone, Debug)]
pub struct OutputFile {
    pub path: PathBuf,
    pub text: String,
    pub kind: FileKind,
}

impl OutputFile {
    pub fn matrix(path: PathBuf, text: String) -> Self {
        OutputFile { path, text, kind: FileKind::Matrix }
    }

    pub fn dense(path: PathBuf, text: String) -> Self {
        OutputFile { path, text, kind: FileKind::Dense }
    }

    /// The text re-parses and re-serializes to itself.
    pub fn round_trips(&self) -> Result<(), Error> {
        let again = match self.kind {
            FileKind::Matrix => io::write_srm(&io::read_srm(&self.text)?),
            FileKind::Dense => {
                let (gf, m) = io::read_dense(&self.text)?;
                io::write_dense(&gf, &m)
            }
        };
        if again == self.text {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("output for {} does not round-trip", self.path.display())))
        }
    }
}

/// What a subcommand produced.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    /// Short machine label, e.g. `superregular` or `not-found`.
    pub label: String,
    pub text: String,
    pub result: Value,
    pub nodes_visited: Option<u64>,
    pub files: Vec<OutputFile>,
}

impl Outcome {
    pub fn new(status: Status, label: &str, text: String, result: Value) -> Self {
        Outcome { status, label: label.into(), text, result, nodes_visited: None, files: Vec::new() }
    }

    pub fn nodes(mut self, n: u64) -> Self {
        self.nodes_visited = Some(n);
        self
    }

    pub fn file(mut self, f: Option<OutputFile>) -> Self {
        self.files.extend(f);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub subcommand: String,
    pub inputs: Value,
    pub outcome: String,
    pub status: Status,
    pub result: Value,
    pub outputs: Vec<String>,
    pub nodes_visited: Option<u64>,
    pub wall_seconds: f64,
    pub tool_version: String,
    /// Every algorithm is deterministic; no seed affects the result.
    pub deterministic: bool,
}
