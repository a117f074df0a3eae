//! Command implementations behind the `multiconc` binary.
//!
//! Each command takes already-read input text plus typed flags and returns a
//! [`CommandOutput`] (stdout, stderr, exit code), so the binary only parses
//! arguments and does I/O.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bounds::{analyze, AnalysisOptions, BoundsReport, Verdict, SCHEMA_VERSION};
use crate::error::Error;
use crate::states::{make_state_with, threshold_scan, StateKind, StateSpec};
use crate::verify::{run_verification, VerifyConfig};

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const PARSE_ERROR: i32 = 1;
    pub const INVALID_STATE: i32 = 2;
    pub const NO_CROSSING: i32 = 3;
    pub const VERIFICATION_FAILED: i32 = 4;
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            exit_code: exit::SUCCESS,
        }
    }

    fn failure(exit_code: i32, kind: &str, message: String, magnitude: Option<f64>) -> Self {
        let diag = json!({
            "schema_version": SCHEMA_VERSION,
            "error": kind,
            "message": message,
            "magnitude": magnitude,
        });
        Self {
            stdout: String::new(),
            stderr: to_json(&diag),
            exit_code,
        }
    }

    fn from_error(exit_code: i32, err: &Error) -> Self {
        Self::failure(exit_code, err.kind(), err.to_string(), err.magnitude())
    }

    fn parse(message: String) -> Self {
        Self::failure(exit::PARSE_ERROR, "parse", message, None)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// A state plus analysis options.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisRequest {
    pub state: StateSpec,
    #[serde(default)]
    pub options: AnalysisOptions,
}

/// Accepts either a full [`AnalysisRequest`] or a bare [`StateSpec`].
pub fn parse_request(input: &str) -> Result<AnalysisRequest, String> {
    let value: serde_json::Value = serde_json::from_str(input).map_err(|e| format!("malformed JSON: {e}"))?;
    if value.get("state").is_some() {
        serde_json::from_value(value).map_err(|e| format!("invalid request: {e}"))
    } else {
        let state = serde_json::from_value(value).map_err(|e| format!("invalid state spec: {e}"))?;
        Ok(AnalysisRequest {
            state,
            options: AnalysisOptions::default(),
        })
    }
}

/// Command-line overrides applied on top of the request.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AnalyzeFlags {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub emit_tensors: bool,
}

pub fn cmd_analyze(input: &str, flags: &AnalyzeFlags) -> CommandOutput {
    let mut request = match parse_request(input) {
        Ok(r) => r,
        Err(msg) => return CommandOutput::parse(msg),
    };
    if let Some(seed) = flags.seed {
        request.state.seed = Some(seed);
        request.options.seed = seed;
    }
    if let Some(samples) = flags.samples {
        request.options.samples_for_roof = samples;
    }
    request.options.emit_tensors |= flags.emit_tensors;
    if let Err(e) = request.options.tolerances.validate() {
        return CommandOutput::from_error(exit::PARSE_ERROR, &e);
    }
    match analyze_request(&request) {
        Ok(report) => CommandOutput::ok(to_json(&report)),
        Err(e) => CommandOutput::from_error(exit::INVALID_STATE, &e),
    }
}

pub fn analyze_request(request: &AnalysisRequest) -> Result<BoundsReport, Error> {
    let rho = make_state_with(&request.state, &request.options.tolerances)?;
    analyze(&rho, &request.options)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanPredicate {
    /// Verdict is genuine multipartite entanglement.
    Gme,
    /// Clamped concurrence bound is positive.
    Entangled,
}

impl ScanPredicate {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "gme" => Some(Self::Gme),
            "entangled" => Some(Self::Entangled),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Gme => "gme",
            Self::Entangled => "entangled",
        }
    }

    pub fn holds(&self, report: &BoundsReport) -> bool {
        match self {
            Self::Gme => report.verdict == Verdict::GenuineMultipartiteEntangled,
            Self::Entangled => report.concurrence_lower > 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub crossing_x: f64,
    pub predicate: String,
    pub tol: f64,
    pub iterations: usize,
    pub family: StateKind,
    pub n_parties: usize,
    pub local_dim: usize,
}

/// Bisects the noise weight `x` of a GHZ-noise family for `predicate`.
/// With no input the three-qubit family is used.
pub fn cmd_scan(input: Option<&str>, predicate: &str, tol: f64) -> CommandOutput {
    let Some(pred) = ScanPredicate::parse(predicate) else {
        return CommandOutput::parse(format!("unknown predicate {predicate:?}; expected gme or entangled"));
    };
    if !(tol > 0.0 && tol < 1.0) {
        return CommandOutput::parse(format!("tolerance {tol} must lie in (0, 1)"));
    }
    let family = match input {
        None => StateSpec::new(StateKind::GhzNoise, 3, 2),
        Some(text) => match parse_request(text) {
            Ok(r) => r.state,
            Err(msg) => return CommandOutput::parse(msg),
        },
    };
    if !matches!(family.kind, StateKind::GhzNoise | StateKind::GhzNoiseGeneral) {
        let err = Error::InvalidParameter(format!(
            "scan needs a ghz_noise or ghz_noise_general family, got {:?}",
            family.kind
        ));
        return CommandOutput::from_error(exit::INVALID_STATE, &err);
    }
    let opts = AnalysisOptions::default();
    let outcome = threshold_scan(
        |x| {
            let rho = make_state_with(&family.clone().with_x(x), &opts.tolerances)?;
            Ok(pred.holds(&analyze(&rho, &opts)?))
        },
        tol,
    );
    match outcome {
        Ok(r) if r.bracketed => CommandOutput::ok(to_json(&ScanReport {
            schema_version: SCHEMA_VERSION,
            crossing_x: r.crossing_x,
            predicate: pred.name().to_string(),
            tol,
            iterations: r.iterations,
            family: family.kind,
            n_parties: family.n_parties,
            local_dim: family.local_dim,
        })),
        Ok(_) => CommandOutput::failure(
            exit::NO_CROSSING,
            "no-crossing",
            format!("predicate {} holds on all of [0, 1]", pred.name()),
            Some(1.0),
        ),
        Err(e @ Error::NoCrossing(_)) => CommandOutput::from_error(exit::NO_CROSSING, &e),
        Err(e) => CommandOutput::from_error(exit::INVALID_STATE, &e),
    }
}

pub fn cmd_verify(cfg: &VerifyConfig) -> CommandOutput {
    match run_verification(cfg) {
        Ok(summary) if summary.passed => CommandOutput::ok(to_json(&summary)),
        Ok(summary) => {
            let failing: Vec<_> = summary
                .suites
                .iter()
                .filter(|s| !s.passed)
                .map(|s| json!({"property": s.name, "max_residual": s.max_residual, "failure": s.failure}))
                .collect();
            CommandOutput {
                stdout: to_json(&summary),
                stderr: to_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "error": "verification-failed",
                    "failing": failing,
                })),
                exit_code: exit::VERIFICATION_FAILED,
            }
        }
        Err(e) => CommandOutput::from_error(exit::PARSE_ERROR, &e),
    }
}

/// Resolves a spec into an explicit `dense` spec that `analyze` accepts back.
pub fn cmd_gen_state(input: &str, seed: Option<u64>) -> CommandOutput {
    let mut request = match parse_request(input) {
        Ok(r) => r,
        Err(msg) => return CommandOutput::parse(msg),
    };
    if let Some(seed) = seed {
        request.state.seed = Some(seed);
    }
    match make_state_with(&request.state, &request.options.tolerances) {
        Ok(rho) => CommandOutput::ok(to_json(&StateSpec::dense(&rho))),
        Err(e) => CommandOutput::from_error(exit::INVALID_STATE, &e),
    }
}
