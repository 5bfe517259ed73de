use std::path::PathBuf;
use std::process::ExitCode;

use bethe_cli::acceptance;
use bethe_cli::checks::{self, Check};
use bethe_cli::config::{CampaignConfig, ConfigError};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bethe", version, about = "Verify analytic Bethe ansatz identities for sl(r+1|s+1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks listed in the config file.
    Run(Common),
    VerifyJt(Common),
    VerifyHirota(Common),
    VerifyReductions(Common),
    VerifyVanishing(Common),
    VerifyPolefree(Common),
    VerifyLattice(Common),
    VerifyCrossing(Common),
    VerifyMixed(Common),
    VerifyAb(Common),
    VerifyTopterm(Common),
    SolveBae(Common),
    /// Run the full acceptance suite.
    VerifyAll {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Default)]
struct Common {
    /// TOML campaign file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    r: Option<i32>,
    #[arg(long)]
    s: Option<i32>,
    /// Exact rational, e.g. 3/2.
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Explicit shapes such as "3,2/1"; repeat the flag for more.
    #[arg(long)]
    shapes: Vec<String>,
    #[arg(long)]
    n_sites: Option<usize>,
    /// Root counts per color, comma separated.
    #[arg(long, value_delimiter = ',')]
    sector: Option<Vec<usize>>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    grid_max: Option<usize>,
    /// Leave the Bethe equations unenforced in the pole audit.
    #[arg(long)]
    corrupt_root: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn merge(self, check: Option<Check>) -> Result<CampaignConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(p) => CampaignConfig::load(p)?,
            None => CampaignConfig::default(),
        };
        if let Some(v) = self.preset {
            cfg.preset = v;
        }
        if let Some(v) = self.r {
            cfg.r = v;
        }
        if let Some(v) = self.s {
            cfg.s = v;
        }
        if let Some(v) = self.q {
            cfg.q = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if !self.shapes.is_empty() {
            cfg.shapes.list = self.shapes;
            cfg.shapes.random = 0;
        }
        if let Some(v) = self.n_sites {
            cfg.n_sites = v;
        }
        if let Some(v) = self.sector {
            cfg.sector = v;
        }
        if let Some(v) = self.tol {
            cfg.tol = v;
        }
        if let Some(v) = self.grid_max {
            cfg.grid_max = v;
        }
        cfg.corrupt_root |= self.corrupt_root;
        if self.out.is_some() {
            cfg.out = self.out;
        }
        if let Some(c) = check {
            cfg.checks = vec![c.name().to_string()];
        }
        Ok(cfg)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, check) = match cli.command {
        Command::VerifyAll { out } => {
            let outcomes = acceptance::run_all();
            let text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            if let Err(e) = emit(&text, out.as_ref()) {
                eprintln!("{e}");
                return ExitCode::from(2);
            }
            return if outcomes.iter().all(|o| o.pass) { ExitCode::SUCCESS } else { ExitCode::FAILURE };
        }
        Command::Run(c) => (c, None),
        Command::VerifyJt(c) => (c, Some(Check::Jt)),
        Command::VerifyHirota(c) => (c, Some(Check::Hirota)),
        Command::VerifyReductions(c) => (c, Some(Check::Reductions)),
        Command::VerifyVanishing(c) => (c, Some(Check::Vanishing)),
        Command::VerifyPolefree(c) => (c, Some(Check::PoleAudit)),
        Command::VerifyLattice(c) => (c, Some(Check::Lattice)),
        Command::VerifyCrossing(c) => (c, Some(Check::Crossing)),
        Command::VerifyMixed(c) => (c, Some(Check::Mixed)),
        Command::VerifyAb(c) => (c, Some(Check::Ab)),
        Command::VerifyTopterm(c) => (c, Some(Check::TopTerm)),
        Command::SolveBae(c) => (c, Some(Check::SolveBae)),
    };
    let campaign = match common.merge(check).and_then(|cfg| Ok((cfg.validate()?, cfg.out))) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = checks::run(&campaign.0);
    if let Err(e) = emit(&report.render(), campaign.1.as_ref()) {
        eprintln!("{e}");
        return ExitCode::from(2);
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
