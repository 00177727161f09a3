use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use cubelab::algebra::AlgebraError;
use cubelab::budget::BudgetExceeded;
use cubelab::gowers::GowersError;
use cubelab::groups::GroupError;
use cubelab::structures::StructureError;

pub const TOOL: &str = "cubelab";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Budget(_) => 2,
        }
    }
}

impl From<BudgetExceeded> for CliError {
    fn from(e: BudgetExceeded) -> Self {
        CliError::Budget(format!("{e}; raise --budget or CUBELAB_BUDGET"))
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Budget(b) => b.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Budget(b) => b.into(),
            AlgebraError::Structure(s) => s.into(),
            e @ (AlgebraError::NotStep { .. }
            | AlgebraError::NotErgodic { .. }
            | AlgebraError::NotTransitive { .. }
            | AlgebraError::Verification(_)) => CliError::Verification(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<GowersError> for CliError {
    fn from(e: GowersError) -> Self {
        match e {
            GowersError::Budget(b) => CliError::Budget(format!("{b}; use `gowers mc` for a Monte-Carlo estimate")),
            e @ GowersError::NotNonnegative { .. } => CliError::Verification(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerificationFailed,
    /// Some check was skipped for lack of budget.
    Incomplete,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::VerificationFailed => "verification_failed",
            Status::Incomplete => "incomplete",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::Incomplete => 2,
        }
    }
}

/// What a command produced, before it is wrapped in a [`Report`].
pub struct Outcome {
    pub status: Status,
    pub result: serde_json::Value,
    pub text: Vec<String>,
}

impl Outcome {
    pub fn new(result: impl Serialize, text: Vec<String>) -> Self {
        Outcome { status: Status::Ok, result: serde_json::to_value(result).expect("serializable"), text }
    }

    pub fn verified(mut self, ok: bool) -> Self {
        if !ok {
            self.status = Status::VerificationFailed;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

/// The echoed configuration. `args` re-runs the command as-is: a drawn
/// seed and the effective budget are appended to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub args: Vec<String>,
    pub budget: u64,
    pub seed: Option<u64>,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub inputs: Vec<Input>,
    pub status: Status,
    pub result: serde_json::Value,
}

/// Shared state of one run.
pub struct Context {
    pub budget: u64,
    pub tolerance: f64,
    pub seed: Option<u64>,
    /// Output files are only written when set; replays leave them alone.
    pub write: bool,
    inputs: Vec<Input>,
}

impl Context {
    pub fn new(budget: u64, tolerance: f64, seed: Option<u64>, write: bool) -> Self {
        Context { budget, tolerance, seed, write, inputs: Vec::new() }
    }

    pub fn record(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let input = Input { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) };
        if !self.inputs.contains(&input) {
            self.inputs.push(input);
        }
        Ok(bytes)
    }

    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        String::from_utf8(self.record(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn record_all(&mut self, paths: &[PathBuf]) -> Result<(), CliError> {
        paths.iter().try_for_each(|p| self.record(p).map(drop))
    }

    pub fn write_file(&self, path: &Path, contents: &str) -> Result<(), CliError> {
        if self.write {
            std::fs::write(path, contents).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }

    /// The seed of a randomized command; drawn and announced when absent.
    pub fn seed(&mut self) -> u64 {
        *self.seed.get_or_insert_with(|| {
            let s = rand::random::<u64>();
            eprintln!("seed: {s}");
            s
        })
    }

    pub fn finish(self, args: Vec<String>, outcome: &Outcome) -> Report {
        let mut args = args;
        if !args.iter().any(|a| a == "--budget" || a.starts_with("--budget=")) {
            args.extend(["--budget".into(), self.budget.to_string()]);
        }
        if let Some(s) = self.seed {
            if !args.iter().any(|a| a == "--seed" || a.starts_with("--seed=")) {
                args.extend(["--seed".into(), s.to_string()]);
            }
        }
        Report {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: RunConfig { args, budget: self.budget, seed: self.seed, tolerance: self.tolerance },
            inputs: self.inputs,
            status: outcome.status,
            result: outcome.result.clone(),
        }
    }
}
