//! `contactcheck`: run the verification suites and emit a JSON report.

use std::fmt;

use clap::{Parser, ValueEnum};
use contact_core::contact::{ContactChart, ContactError, Model};
use contact_core::report::IdentityReport;
use contact_core::rootsys::{CartanMatrix, RootSystem};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

mod suites;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SEED_ENV: &str = "CONTACTCHECK_SEED";

/// Types exercised by `all`.
pub const SUITE_TYPES: [&str; 8] = CartanMatrix::SHIPPED_TYPES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Roots,
    Algebra,
    VerifyContact,
    VerifyLemma21,
    VerifyLemma22,
    Cocycle,
    Quotient,
    Immersion,
    Adjoint,
    All,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Roots => "roots",
            Command::Algebra => "algebra",
            Command::VerifyContact => "verify-contact",
            Command::VerifyLemma21 => "verify-lemma21",
            Command::VerifyLemma22 => "verify-lemma22",
            Command::Cocycle => "cocycle",
            Command::Quotient => "quotient",
            Command::Immersion => "immersion",
            Command::Adjoint => "adjoint",
            Command::All => "all",
        }
    }

    fn needs_type(self) -> bool {
        matches!(self, Command::Roots | Command::Algebra | Command::Adjoint)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelArg {
    Hopf,
    Fibered,
}

/// Exact verification of graded Lie algebra and contact-bundle identities.
#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "contactcheck", version)]
pub struct RunConfig {
    /// Suite to run.
    #[arg(value_enum)]
    pub command: Command,
    /// Root system type for roots, algebra and adjoint (A1, A2, A3, B2, C2, B3, C3, G2).
    #[arg(value_name = "TYPE")]
    pub type_name: Option<String>,
    #[arg(long, value_enum, default_value = "hopf")]
    pub model: ModelArg,
    /// Half the base dimension minus one: the chart has 2n+2 coordinates.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Degree of the contact bundle; the Hopf model always has δ = 2.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<i64>,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    /// Number of random samples; each suite has its own default.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Fix the degree of f in verify-lemma21.
    #[arg(long, allow_negative_numbers = true)]
    pub fdeg: Option<i64>,
    /// Fix the degree of g in verify-lemma21.
    #[arg(long, allow_negative_numbers = true)]
    pub gdeg: Option<i64>,
    /// Write the report here instead of standard output.
    #[arg(long, default_value = "-")]
    pub output: String,
    /// Include forms, fields and structure constants in the report data.
    #[arg(long)]
    pub dump_forms: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool_version: String,
    pub config: RunConfig,
    pub results: Vec<CheckResult>,
    pub data: Value,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failures().next().is_some() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("`{0}` needs a root system TYPE argument\n\n{1}")]
    MissingType(&'static str, String),
    #[error("unknown root system type `{0}`; shipped types: {types}\n\n{1}", types = SUITE_TYPES.join(", "))]
    UnknownType(String, String),
    #[error("{0}")]
    Contact(#[from] ContactError),
    #[error("the Hopf model has degree 2, got --delta {0}")]
    HopfDelta(i64),
    #[error("{0}")]
    Unsupported(String),
}

impl ConfigError {
    pub const EXIT_CODE: i32 = 2;
}

/// Accumulates results under a common prefix, keeping ids unique.
#[derive(Debug, Default)]
pub(crate) struct Results {
    items: Vec<CheckResult>,
}

impl Results {
    pub(crate) fn push(&mut self, id: String, status: Status, witness: Option<String>) {
        let mut id = id;
        if self.items.iter().any(|r| r.check_id == id) {
            let mut k = 2;
            while self.items.iter().any(|r| r.check_id == format!("{id}#{k}")) {
                k += 1;
            }
            id = format!("{id}#{k}");
        }
        self.items.push(CheckResult { check_id: id, status, witness });
    }

    pub(crate) fn check(&mut self, id: String, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.push(id, Status::Pass, None);
        } else {
            self.push(id, Status::Fail, Some(witness()));
        }
    }

    pub(crate) fn skip(&mut self, id: String, why: &str) {
        self.push(id, Status::Skipped, Some(why.to_string()));
    }

    pub(crate) fn report(&mut self, prefix: &str, r: &IdentityReport) {
        for c in &r.checks {
            let id = format!("{prefix}.{}", slug(&c.name));
            self.push(id, if c.passed { Status::Pass } else { Status::Fail }, c.witness.clone());
        }
    }

    /// An unexpected library error inside a suite is a failed check.
    pub(crate) fn error(&mut self, prefix: &str, e: impl fmt::Display) {
        self.push(format!("{prefix}.error"), Status::Fail, Some(e.to_string()));
    }
}

/// Lowercase ASCII identifier for a check name.
pub fn slug(name: &str) -> String {
    let mut out = String::new();
    for ch in name.chars() {
        let c = match ch {
            'θ' => "theta",
            'ρ' => "rho",
            'δ' => "delta",
            'χ' => "chi",
            'ℓ' => "l",
            _ if ch.is_ascii_alphanumeric() => {
                out.push(ch.to_ascii_lowercase());
                continue;
            }
            _ => "_",
        };
        if c == "_" {
            if !out.is_empty() && !out.ends_with('_') {
                out.push('_');
            }
        } else {
            out.push_str(c);
        }
    }
    out.trim_end_matches('_').to_string()
}

pub(crate) fn usage() -> String {
    use clap::CommandFactory;
    RunConfig::command().render_usage().to_string()
}

/// Root system for the command, or a config error.
pub(crate) fn root_system(config: &RunConfig) -> Result<RootSystem, ConfigError> {
    let name = config
        .type_name
        .as_deref()
        .ok_or_else(|| ConfigError::MissingType(config.command.name(), usage()))?;
    RootSystem::of_type(name).map_err(|_| ConfigError::UnknownType(name.to_string(), usage()))
}

/// Contact chart for the command, or a config error.
pub(crate) fn contact_chart(config: &RunConfig) -> Result<ContactChart, ConfigError> {
    if config.n > 3 {
        return Err(ConfigError::Unsupported(format!("--n {} is larger than the supported 3", config.n)));
    }
    match config.model {
        ModelArg::Hopf => match config.delta {
            Some(d) if d != 2 => Err(ConfigError::HopfDelta(d)),
            _ => Ok(ContactChart::hopf(config.n)?),
        },
        ModelArg::Fibered => Ok(ContactChart::fibered(config.n, config.delta.unwrap_or(2))?),
    }
}

pub(crate) fn model_name(m: Model) -> &'static str {
    match m {
        Model::Hopf => "hopf",
        Model::Fibered => "fibered",
    }
}

/// Runs the selected suite. Config errors are returned before any check
/// runs; mathematical failures are recorded in the report.
pub fn run(config: &RunConfig) -> Result<Report, ConfigError> {
    let mut results = Results::default();
    let data = match config.command {
        Command::Roots => suites::roots(config, &mut results)?,
        Command::Algebra => suites::algebra(config, &mut results)?,
        Command::VerifyContact => suites::verify_contact(config, &mut results)?,
        Command::VerifyLemma21 => suites::lemma21(config, &mut results)?,
        Command::VerifyLemma22 => suites::lemma22(config, &mut results)?,
        Command::Cocycle => suites::cocycle(config, &mut results)?,
        Command::Quotient => suites::quotient(config, &mut results)?,
        Command::Immersion => suites::immersion(config, &mut results)?,
        Command::Adjoint => suites::adjoint(config, &mut results)?,
        Command::All => suites::all(config, &mut results)?,
    };
    debug_assert!(!config.command.needs_type() || config.type_name.is_some());
    let mut items = results.items;
    items.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(Report {
        schema: 1,
        tool_version: TOOL_VERSION.to_string(),
        config: config.clone(),
        results: items,
        data,
    })
}

/// Parses, runs and writes the report; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ConfigError::EXIT_CODE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ConfigError::EXIT_CODE;
        }
    };
    let json = report.to_json();
    if config.output == "-" {
        print!("{json}");
    } else if let Err(e) = std::fs::write(&config.output, &json) {
        eprintln!("error: cannot write {}: {e}", config.output);
        return ConfigError::EXIT_CODE;
    }
    for f in report.failures() {
        eprintln!("FAIL {}", f.check_id);
    }
    report.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs() {
        assert_eq!(slug("theta(X_f) = (l/delta) f"), "theta_x_f_l_delta_f");
        assert_eq!(slug("vertical annihilation"), "vertical_annihilation");
        assert_eq!(slug("B(e_ρ, H_ρ) = 0"), "b_e_rho_h_rho_0");
    }

    #[test]
    fn duplicate_ids_are_disambiguated() {
        let mut r = Results::default();
        r.check("a".into(), true, String::new);
        r.check("a".into(), true, String::new);
        r.check("a".into(), true, String::new);
        let ids: Vec<_> = r.items.iter().map(|c| c.check_id.as_str()).collect();
        assert_eq!(ids, ["a", "a#2", "a#3"]);
    }
}
