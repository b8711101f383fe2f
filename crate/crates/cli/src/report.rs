use std::path::Path;

use pointlike::complex::ComplexJson;
use pointlike::flowcert::{Certificate, Checks};
use pointlike::prodexp::{AutomatonDump, UpdatemultReport};
use pointlike::zeiger::EmbeddingReport;
use serde::{Deserialize, Serialize};

/// Everything a command produced; serialised as the `--json` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub input: Option<String>,
    pub passed: bool,
    pub exit_code: i32,
    /// Wall time in microseconds; omitted under `--stable`.
    pub timing_us: Option<u64>,
    pub deviations: Vec<String>,
    pub error: Option<String>,
    pub result: Option<Body>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Info {
        size: usize,
        j_classes: usize,
        regular_j_classes: usize,
        idempotents: Vec<usize>,
        eggbox: String,
    },
    Pointlikes {
        variety: String,
        complex_size: usize,
        maximal: Vec<Vec<usize>>,
        certificate: Option<Certificate>,
        embeddings: Option<Vec<EmbeddingReport>>,
    },
    Construct {
        modulus: String,
        complex: ComplexJson,
    },
    Expand {
        variety: String,
        coordinates: usize,
        states: usize,
        updatemult: UpdatemultReport,
        automaton: AutomatonDump,
    },
    Kernel {
        variety: String,
        group_order: usize,
        kernel: Vec<usize>,
        closed_form: Vec<usize>,
        quotient_order: usize,
    },
    Suite {
        runs: Vec<SuiteRun>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRun {
    pub fixture: String,
    pub variety: String,
    pub certified: bool,
    pub resource_limited: bool,
    pub checks: Option<Checks>,
    pub maximal: Vec<Vec<usize>>,
    pub states: usize,
    pub transition_semigroup_size: usize,
    pub zeiger: Option<bool>,
    pub error: Option<String>,
}

/// Writes `text` to standard output and the JSON report to `json` if given.
pub fn emit_report(report: &Report, text: &str, json: Option<&Path>) -> std::io::Result<()> {
    print!("{text}");
    if let Some(path) = json {
        let mut out = serde_json::to_string_pretty(report).map_err(std::io::Error::other)?;
        out.push('\n');
        std::fs::write(path, out)?;
    }
    Ok(())
}
