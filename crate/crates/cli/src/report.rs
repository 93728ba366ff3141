//! Machine-readable command reports.

use std::collections::BTreeMap;

use serde::Serialize;
use trimat_core::cotorsion::{HereditaryReport, NamedClass, Outcome, PairReport, TheoremReport};
use trimat_core::quiverrep::{Catalog, FinModule};
use trimat_core::trimat::{FormulaReport, Workspace};

use crate::cache::CacheStatus;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const UNDECIDED: i32 = 2;
    pub const RED_ALERT: i32 = 3;
    pub const ERROR: i32 = 4;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
    RedAlert,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => exit::PASS,
            Verdict::Fail => exit::FAIL,
            Verdict::Undecided => exit::UNDECIDED,
            Verdict::RedAlert => exit::RED_ALERT,
        }
    }

    /// Red alert beats undecided beats fail beats pass.
    pub fn worst(self, other: Verdict) -> Verdict {
        fn rank(v: Verdict) -> u8 {
            match v {
                Verdict::Pass => 0,
                Verdict::Fail => 1,
                Verdict::Undecided => 2,
                Verdict::RedAlert => 3,
            }
        }
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }

    pub fn from_outcome(o: Outcome) -> Verdict {
        match o {
            Outcome::Pass | Outcome::HypothesisFailed => Verdict::Pass,
            Outcome::Fail => Verdict::Fail,
            Outcome::Undecided => Verdict::Undecided,
            Outcome::RedAlert => Verdict::RedAlert,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Undecided => "undecided",
            Verdict::RedAlert => "red alert",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandEcho {
    pub name: String,
    /// Options that influence the result, in a fixed order.
    pub options: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntrySummary {
    pub name: String,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogSummary {
    pub complete: bool,
    pub entries: Vec<CatalogEntrySummary>,
}

impl CatalogSummary {
    pub fn of<M: FinModule>(cat: &Catalog<M>) -> Self {
        CatalogSummary {
            complete: cat.complete,
            entries: cat
                .entries
                .iter()
                .map(|e| CatalogEntrySummary { name: e.name.clone(), dims: e.dim_vector.clone() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Catalogs {
    pub a: CatalogSummary,
    pub b: CatalogSummary,
    pub lambda: CatalogSummary,
}

impl Catalogs {
    pub fn of(ws: &Workspace) -> Self {
        Catalogs { a: CatalogSummary::of(&ws.a), b: CatalogSummary::of(&ws.b), lambda: CatalogSummary::of(&ws.triples) }
    }
}

/// Run-dependent facts, only written with `--timings` so that reports stay
/// byte-identical otherwise.
#[derive(Clone, Debug, Serialize)]
pub struct Runtime {
    pub cache: CacheStatus,
    pub milliseconds: BTreeMap<String, u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: CommandEcho,
    pub config_hash: String,
    pub seed: u64,
    pub catalogs: Option<Catalogs>,
    pub classes: Vec<NamedClass>,
    pub pairs: Vec<PairReport>,
    pub hereditary: Vec<HereditaryReport>,
    pub theorems: Vec<TheoremReport>,
    pub formulas: Vec<FormulaReport>,
    pub undecided: Vec<String>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime: Option<Runtime>,
}

impl Report {
    pub fn new(command: CommandEcho, config_hash: String, seed: u64) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command,
            config_hash,
            seed,
            catalogs: None,
            classes: Vec::new(),
            pairs: Vec::new(),
            hereditary: Vec::new(),
            theorems: Vec::new(),
            formulas: Vec::new(),
            undecided: Vec::new(),
            notes: Vec::new(),
            verdict: Verdict::Pass,
            exit_code: exit::PASS,
            runtime: None,
        }
    }

    pub fn settle(&mut self, v: Verdict) {
        self.verdict = self.verdict.worst(v);
        self.exit_code = self.verdict.exit_code();
    }

    pub fn undecided(&mut self, why: impl Into<String>) {
        self.undecided.push(why.into());
        self.settle(Verdict::Undecided);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
