use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use spweil::grp::DEFAULT_BUDGET;

#[derive(Parser, Debug)]
#[command(name = "spweil", version, about = "Restrictions of Weil characters of Sp2n(q), q even")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Ordinary character table of Sp2n(q) or of a subgroup
    Table,
    /// Weil formulas, constituents and orbit profiles on P_n
    Weil,
    /// Class fusion of a subgroup: exact, audited, and by search
    Fusion,
    /// Symbolic identity suite over the polynomial catalog
    Identities,
    /// Verdicts for every (character, subgroup, l)
    Classify,
    /// Check a published classification theorem at this q
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Table => "table",
            Command::Weil => "weil",
            Command::Fusion => "fusion",
            Command::Identities => "identities",
            Command::Classify => "classify",
            Command::Verify => "verify",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// Field size, a power of 2
    #[arg(long, global = true, default_value_t = 2)]
    pub q: u32,
    /// Rank: the group is Sp_{2n}(q)
    #[arg(long, global = true, default_value_t = 3)]
    pub n: usize,
    /// Characteristics, comma separated; 0 is ordinary
    #[arg(long, global = true, value_delimiter = ',')]
    pub ell: Vec<u64>,
    /// Subgroup name, or a generator file (JSON)
    #[arg(long, global = true)]
    pub subgroup: Option<String>,
    /// Output directory, or a .json path for the main artifact
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Recorded in every report; all searches are deterministic
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest group the closure may enumerate
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads (default: all cores); output does not depend on it
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Group family; only `sp`
    #[arg(long, global = true, default_value = "sp")]
    pub group: String,
    /// Theorem id for `verify` (1.2, 1.3, 1.4, 1.5)
    #[arg(long, global = true)]
    pub thm: Option<String>,
    /// Leaf limit for the fusion search
    #[arg(long, global = true, default_value_t = 100_000)]
    pub max_leaves: u64,
}

/// Validated configuration. Thread count is left out on purpose: it must not
/// change any artifact.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub group: String,
    pub n: usize,
    pub q: u32,
    pub ell: Vec<u64>,
    pub subgroup: Option<String>,
    pub thm: Option<String>,
    pub seed: u64,
    pub budget: u64,
    pub max_leaves: u64,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig> {
        let f = &cli.flags;
        if f.group != "sp" {
            bail!("--group {}: only `sp` is supported", f.group);
        }
        if !(1..=3).contains(&f.n) {
            bail!("--n {}: expected 1, 2 or 3", f.n);
        }
        if f.q < 2 || !f.q.is_power_of_two() {
            bail!("--q {}: expected a power of 2", f.q);
        }
        if let Some(&e) = f.ell.iter().find(|&&e| e != 0 && e % 2 == 0) {
            bail!("--ell {e}: only 0 and odd characteristics are meaningful");
        }
        if f.threads == Some(0) {
            bail!("--threads must be positive");
        }
        if f.budget == 0 {
            bail!("--budget must be positive");
        }
        match cli.command {
            Command::Fusion if f.subgroup.is_none() => bail!("fusion needs --subgroup"),
            Command::Verify if f.thm.is_none() => bail!("verify needs --thm"),
            _ => {}
        }
        let mut ell = f.ell.clone();
        ell.sort_unstable();
        ell.dedup();
        Ok(RunConfig {
            command: cli.command.name(),
            group: f.group.clone(),
            n: f.n,
            q: f.q,
            ell,
            subgroup: f.subgroup.clone(),
            thm: f.thm.clone(),
            seed: f.seed,
            budget: f.budget,
            max_leaves: f.max_leaves,
            out: f.out.clone(),
        })
    }

    /// ℓ values with the command default applied.
    pub fn ells_or(&self, default: &[u64]) -> Vec<u64> {
        if self.ell.is_empty() {
            default.to_vec()
        } else {
            self.ell.clone()
        }
    }

    /// (main JSON, text) paths, or None when nothing is written.
    pub fn artifact_paths(&self) -> Option<(PathBuf, PathBuf)> {
        let out = self.out.as_ref()?;
        if out.extension().is_some_and(|e| e == "json") {
            Some((out.clone(), out.with_extension("txt")))
        } else {
            Some((out.join(format!("{}.json", self.command)), out.join(format!("{}.txt", self.command))))
        }
    }
}

/// A subgroup selector is a file when it names an existing path.
pub fn is_file_selector(s: &str) -> bool {
    Path::new(s).is_file()
}
