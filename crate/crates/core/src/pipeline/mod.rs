//! The full verification chain as nine stages, each producing anchored
//! claims, assembled into one deterministic report.

mod context;
mod stages;

pub use context::Context;

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::exec::Execution;
use crate::scalars::rational::to_text;
use crate::scalars::Rational;

pub const STAGES: [&str; 9] =
    ["config", "cremona", "quotient", "fibrations", "lattice", "heights", "canonical", "dynamics", "nonfg"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("unknown stage {0:?}; expected one of {STAGES:?}")]
    UnknownStage(String),
    #[error("invalid pairing override {0:?}; expected LABEL,LABEL,VALUE")]
    BadOverride(String),
}

/// Replace one intersection number before verification (fault injection).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingOverride {
    pub a: String,
    pub b: String,
    pub value: Rational,
}

impl std::str::FromStr for PairingOverride {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PipelineError::BadOverride(s.to_string());
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, b, v] = parts.as_slice() else { return Err(bad()) };
        let value = crate::scalars::rational::from_text(v).map_err(|_| bad())?;
        Ok(PairingOverride { a: a.to_string(), b: b.to_string(), value })
    }
}

impl fmt::Display for PairingOverride {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{} = {}", self.a, self.b, to_text(&self.value))
    }
}

impl Serialize for PairingOverride {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Options {
    pub max_gens: u32,
    pub seed: u64,
    pub specializations: usize,
    pub overrides: Vec<PairingOverride>,
    /// Does not affect results, so it is not echoed.
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_gens: 5, seed: 0, specializations: 3, overrides: Vec::new(), execution: Execution::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ExternalInput,
    Annotation,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ExternalInput => "external-input",
            Status::Annotation => "annotation",
        })
    }
}

/// One checked (or explicitly unchecked) statement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub statement: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<String>,
    /// For external inputs: what the claim is taken from.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl Claim {
    /// Passes iff the rendered values agree exactly.
    pub fn equals(statement: &str, expected: impl fmt::Display, observed: impl fmt::Display) -> Self {
        let (e, o) = (expected.to_string(), observed.to_string());
        let status = if e == o { Status::Pass } else { Status::Fail };
        Claim { statement: statement.into(), status, expected: Some(e), observed: Some(o), source: None }
    }

    pub fn holds(statement: &str, ok: bool, observed: impl fmt::Display) -> Self {
        Claim {
            statement: statement.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: None,
            observed: Some(observed.to_string()),
            source: None,
        }
    }

    pub fn external(statement: &str, source: &str) -> Self {
        Claim { statement: statement.into(), status: Status::ExternalInput, expected: None, observed: None, source: Some(source.into()) }
    }

    pub fn annotation(statement: &str) -> Self {
        Claim { statement: statement.into(), status: Status::Annotation, expected: None, observed: None, source: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evidence {
    pub claims: Vec<Claim>,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageResult {
    pub name: String,
    pub status: Status,
    pub anchor: String,
    pub evidence: Evidence,
}

impl StageResult {
    fn new(name: &str, anchor: &str, claims: Vec<Claim>, data: Value) -> Self {
        let failed = claims.iter().any(|c| c.status == Status::Fail);
        StageResult {
            name: name.into(),
            status: if failed { Status::Fail } else { Status::Pass },
            anchor: anchor.into(),
            evidence: Evidence { claims, data: stringify_numbers(data) },
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn failures(&self) -> Vec<&Claim> {
        self.evidence.claims.iter().filter(|c| c.status == Status::Fail).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub version: String,
    pub options: Options,
    pub stages: Vec<StageResult>,
    pub verdict: Status,
}

impl CertificateReport {
    /// Any failing stage fails the verdict.
    pub fn new(options: &Options, stages: Vec<StageResult>) -> Self {
        let verdict = if stages.iter().all(StageResult::passed) { Status::Pass } else { Status::Fail };
        CertificateReport { version: env!("CARGO_PKG_VERSION").into(), options: options.clone(), stages, verdict }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let v = stringify_numbers(serde_json::to_value(self).expect("serializable"));
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }
}

/// Every JSON number becomes its decimal string.
fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

fn dispatch(name: &str, ctx: &Context) -> Result<StageResult, PipelineError> {
    Ok(match name {
        "config" => stages::config(ctx),
        "cremona" => stages::cremona(ctx),
        "quotient" => stages::quotient(ctx),
        "fibrations" => stages::fibrations(ctx),
        "lattice" => stages::lattice(ctx),
        "heights" => stages::heights(ctx),
        "canonical" => stages::canonical(ctx),
        "dynamics" => stages::dynamics(ctx),
        "nonfg" => stages::nonfg(ctx),
        _ => return Err(PipelineError::UnknownStage(name.to_string())),
    })
}

/// A single stage; the configurations it depends on are built on demand.
pub fn run_stage(name: &str, options: &Options) -> Result<StageResult, PipelineError> {
    if !STAGES.contains(&name) {
        return Err(PipelineError::UnknownStage(name.to_string()));
    }
    dispatch(name, &Context::new(options))
}

/// All stages in order. The Cremona and non-finite-generation stages do
/// not depend on the surface configurations and run alongside them.
pub fn run_all(options: &Options) -> CertificateReport {
    let exec = options.execution;
    let ctx = Context::new(options);
    let surface = ["config", "quotient", "fibrations", "lattice", "heights", "canonical", "dynamics"];
    let (cremona, (nonfg, rest)) = exec.join(
        || stages::cremona(&ctx),
        || {
            exec.join(
                || stages::nonfg(&ctx),
                || exec.map(&surface, |s| dispatch(s, &ctx).expect("known stage")),
            )
        },
    );
    let mut rest = rest.into_iter();
    let mut stages = Vec::new();
    for name in STAGES {
        stages.push(match name {
            "cremona" => cremona.clone(),
            "nonfg" => nonfg.clone(),
            _ => rest.next().expect("one result per surface stage"),
        });
    }
    CertificateReport::new(options, stages)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn failing(r: &CertificateReport) -> Vec<String> {
        r.stages
            .iter()
            .flat_map(|s| s.failures().into_iter().map(move |c| format!("{}: {} ({:?} vs {:?})", s.name, c.statement, c.expected, c.observed)))
            .collect()
    }

    #[test]
    fn default_run_passes() {
        let r = run_all(&Options::default());
        assert_eq!(failing(&r), Vec::<String>::new());
        assert!(r.passed());
        assert_eq!(r.stages.iter().map(|s| s.name.as_str()).collect::<Vec<_>>(), STAGES);
        for s in &r.stages {
            assert!(!s.anchor.is_empty());
            for c in &s.evidence.claims {
                if c.status == Status::ExternalInput {
                    assert!(c.source.is_some(), "{}", c.statement);
                }
            }
        }
    }

    #[test]
    fn corrupted_pairing_fails_config() {
        let o = Options { overrides: vec!["E2,C32,0".parse().unwrap()], ..Options::default() };
        let s = run_stage("config", &o).unwrap();
        assert_eq!(s.status, Status::Fail);
        let text = s.failures().iter().map(|c| c.observed.clone().unwrap_or_default()).collect::<String>();
        assert!(text.contains("E2") && text.contains("C32"), "{text}");
        assert!(!run_all(&o).passed());
    }

    #[test]
    fn unknown_override_label_fails() {
        let o = Options { overrides: vec!["E9,C32,0".parse().unwrap()], ..Options::default() };
        assert_eq!(run_stage("config", &o).unwrap().status, Status::Fail);
        assert!("E2,C32".parse::<PairingOverride>().is_err());
        assert!("E2,C32,x".parse::<PairingOverride>().is_err());
    }

    #[test]
    fn max_gens_ten() {
        let o = Options { max_gens: 10, ..Options::default() };
        let s = run_stage("nonfg", &o).unwrap();
        assert!(s.passed());
        let esc = s.evidence.claims.iter().find(|c| c.statement.starts_with("escape exponents")).unwrap();
        assert_eq!(esc.observed.as_deref(), Some("1, 2, 3, 4, 5, 6, 7, 8, 9, 10"));
    }

    #[test]
    fn deterministic_and_stage_independent() {
        let o = Options::default();
        let a = run_all(&o);
        let seq = run_all(&Options { execution: Execution::Sequential, ..o.clone() });
        assert_eq!(a.to_json(), seq.to_json());
        for (name, s) in STAGES.iter().zip(&a.stages) {
            assert_eq!(&run_stage(name, &o).unwrap(), s);
        }
        assert!(matches!(run_stage("bogus", &o), Err(PipelineError::UnknownStage(_))));
    }

    #[test]
    fn numbers_are_strings() {
        let json = run_stage("lattice", &Options::default()).unwrap();
        let v = serde_json::to_value(&json).unwrap();
        fn no_numbers(v: &Value) -> bool {
            match v {
                Value::Number(_) => false,
                Value::Array(a) => a.iter().all(no_numbers),
                Value::Object(o) => o.values().all(no_numbers),
                _ => true,
            }
        }
        assert!(no_numbers(&v));
    }
}
