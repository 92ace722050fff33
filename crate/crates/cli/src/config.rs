use std::str::FromStr;

use anyhow::{bail, ensure, Context};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use salpeter_wigner::field::{Definition, FormChoice};
use salpeter_wigner::grid::PhaseSpaceGrid;
use salpeter_wigner::packets::PacketKind;
use salpeter_wigner::params::PhysicsParams;
use salpeter_wigner::verify::Suite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Eval,
    Verify,
    Figures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DefArg {
    Zm,
    Std,
    Nonrel,
}

impl From<DefArg> for Definition {
    fn from(d: DefArg) -> Self {
        match d {
            DefArg::Zm => Definition::Zm,
            DefArg::Std => Definition::Std,
            DefArg::Nonrel => Definition::Nonrel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum FormArg {
    #[default]
    Auto,
    Rapidity,
    Kform,
    Closed,
    Quadrature,
}

impl From<FormArg> for FormChoice {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Auto => FormChoice::Auto,
            FormArg::Rapidity => FormChoice::Rapidity,
            FormArg::Kform => FormChoice::Kform,
            FormArg::Closed => FormChoice::Closed,
            FormArg::Quadrature => FormChoice::Quadrature,
        }
    }
}

/// `lo:hi:n` on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl FromStr for Range {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            bail!("expected lo:hi:n, got `{s}`");
        };
        Ok(Range {
            lo: lo.trim().parse().with_context(|| format!("bad lower bound in `{s}`"))?,
            hi: hi.trim().parse().with_context(|| format!("bad upper bound in `{s}`"))?,
            n: n.trim().parse().with_context(|| format!("bad node count in `{s}`"))?,
        })
    }
}

/// Everything needed to reproduce one run; echoed into JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definition: Option<Definition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub packet: Option<PacketKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<PhysicsParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<PhaseSpaceGrid>,
    #[serde(default)]
    pub times: Vec<f64>,
    #[serde(default)]
    pub form: FormChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    /// Free-form notes, e.g. how a figure window was chosen.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub output_path: String,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        if matches!(self.command, Command::Eval | Command::Figures) {
            ensure!(!self.times.is_empty(), "at least one time is required");
            ensure!(self.times.iter().all(|t| t.is_finite()), "times must be finite");
            ensure!(self.grid.is_some(), "a grid is required");
            ensure!(
                self.definition.is_some() && self.packet.is_some() && self.params.is_some(),
                "incomplete field description"
            );
        }
        Ok(())
    }
}
