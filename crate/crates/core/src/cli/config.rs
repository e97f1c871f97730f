use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reps::FinModule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Setup,
    Walg,
    VerifyGr,
    Chars,
    IdealDagger,
    Skryabin,
    StarCheck,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Setup => "setup",
            CommandKind::Walg => "walg",
            CommandKind::VerifyGr => "verify-gr",
            CommandKind::Chars => "chars",
            CommandKind::IdealDagger => "ideal-dagger",
            CommandKind::Skryabin => "skryabin",
            CommandKind::StarCheck => "star-check",
        }
    }

    /// The statement an artifact of this command checks.
    pub fn statement(self) -> &'static str {
        match self {
            CommandKind::Setup => "sl2-triple, good grading, m and the Slodowy slice of a nilpotent element",
            CommandKind::Walg => "truncated presentation of U(g,e) by slice generators",
            CommandKind::VerifyGr => "dim F_k U(g,e) = dim K[S]_{<=k}",
            CommandKind::Chars => "one-dimensional U(g,e)-modules",
            CommandKind::IdealDagger => "restriction of gr J to the slice and its variety",
            CommandKind::Skryabin => "Whittaker vectors of Q (x)_W M recover M",
            CommandKind::StarCheck => "Moyal star product axioms and the quantum comoment identities",
        }
    }
}

fn default_type() -> String {
    "A".into()
}

fn default_rank() -> usize {
    1
}

fn default_truncation() -> i64 {
    8
}

/// Everything a run depends on; echoed into every artifact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(rename = "type", default = "default_type")]
    pub type_tag: String,
    #[serde(default = "default_rank")]
    pub rank: usize,
    /// Jordan type of the nilpotent in `sl_n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
    /// Explicit nilpotent as `label=coef,...` or a coordinate list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotent: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_prime: Option<String>,
    #[serde(rename = "N", default = "default_truncation")]
    pub truncation: i64,
    #[serde(default)]
    pub seed: u64,
    /// Degree bound of the Skryabin truncation or of random star polynomials.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    /// Window of the growth fit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    /// Generators of a two-sided ideal of `U(g)` in frame labels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    /// Standard degree bound for `gr J`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<FinModule>,
    /// Darboux pairs of the star-product suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        RunConfig {
            command,
            type_tag: default_type(),
            rank: default_rank(),
            partition: None,
            nilpotent: None,
            h_prime: None,
            truncation: default_truncation(),
            seed: 0,
            degree: None,
            window: None,
            generators: None,
            bound: None,
            module: None,
            pairs: None,
            trials: None,
        }
    }

    /// Parses a JSON config; syntax errors carry line and column.
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.truncation < 1 {
            return Err(Error::usage("N must be at least 1"));
        }
        if self.partition.is_some() && self.nilpotent.is_some() {
            return Err(Error::usage("give either a partition or an explicit nilpotent, not both"));
        }
        for (name, v) in [("degree", self.degree), ("window", self.window), ("bound", self.bound)] {
            if v.is_some_and(|v| v < 0) {
                return Err(Error::usage(format!("{name} must be nonnegative")));
            }
        }
        Ok(())
    }

    /// Lowers every degree bound to `cap`; returns the names of the
    /// fields that changed.
    pub fn apply_cap(&mut self, cap: i64) -> Vec<String> {
        let mut changed = Vec::new();
        if self.truncation > cap {
            self.truncation = cap;
            changed.push("N".to_string());
        }
        for (name, v) in [("degree", &mut self.degree), ("window", &mut self.window), ("bound", &mut self.bound)] {
            if let Some(x) = v {
                if *x > cap {
                    *x = cap;
                    changed.push(name.to_string());
                }
            }
        }
        changed
    }
}

/// The degree cap from `WALG_MAX_DEGREE`, if set.
pub fn degree_cap_from(value: Option<&str>) -> Result<Option<i64>> {
    match value {
        None => Ok(None),
        Some(v) => v
            .trim()
            .parse::<i64>()
            .ok()
            .filter(|&c| c >= 1)
            .map(Some)
            .ok_or_else(|| Error::usage(format!("WALG_MAX_DEGREE must be a positive integer, found `{v}`"))),
    }
}
