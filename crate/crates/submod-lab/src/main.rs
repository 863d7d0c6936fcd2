//! Command-line front end for the submodule workbench: enumerate lattices,
//! classify submodules against psi-function families, and run the theorem
//! verifiers over the built-in catalog.
//!
//! Exit codes: 0 clean, 1 violation or method disagreement found, 2 input
//! error.

mod parser;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use submod_core::classify::{psi_profile, ModuleLattice, ProfileRow, PsiFunction};
use submod_core::harness::{
    default_catalog, render_report_text, verify, verify_all, Status, TheoremReport, THEOREM_IDS,
};
use submod_core::module::Submodule;
use submod_core::ring::{minimal_ideal_gens, PhiFunction};
use submod_core::{Caps, Error};

#[derive(Parser)]
#[command(name = "submod-lab", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Workbench definition file (ring / module / sub lines)
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Comma-separated psi tags: empty,zero,identity,fullM,psi:<i>,sigma
    #[arg(long, global = true)]
    psi: Option<String>,
    /// Comma-separated phi tags: empty,zero,identity,pow:<i>,omega
    #[arg(long, global = true)]
    phi: Option<String>,
    /// Theorem id from the registry, or `all`
    #[arg(long, global = true)]
    theorem: Option<String>,
    /// Cap on module order (shrinks the default catalog)
    #[arg(long, global = true)]
    max_module_order: Option<usize>,
    /// Output format
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    emit: String,
    /// Reserved for randomized catalog extensions; all defaults are
    /// deterministic and ignore it
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List all ideals and submodules with canonical generators and sizes
    Enumerate,
    /// Classify every nonzero submodule against the selected psi functions
    Classify,
    /// Run theorem verifiers over the default catalog
    Verify,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct ItemInfo {
    label: String,
    size: usize,
    gens: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct EnumerateReport {
    ring: String,
    ring_order: usize,
    module_order: usize,
    ideals: Vec<ItemInfo>,
    submodules: Vec<ItemInfo>,
    declared: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct ClassifyReport {
    module_order: usize,
    rows: Vec<ProfileRow>,
    disagreements: u64,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct VerifyOutput {
    reports: Vec<TheoremReport>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn caps(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(n) = cli.max_module_order {
        caps.max_module_order = n;
    }
    caps
}

fn parse_psi_list(cli: &Cli) -> Result<Vec<PsiFunction>, Error> {
    match &cli.psi {
        None => Ok(submod_core::harness::default_psi_family()),
        Some(s) => s.split(',').map(|t| PsiFunction::from_tag(t.trim())).collect(),
    }
}

fn parse_phi_list(cli: &Cli) -> Result<Vec<PhiFunction>, Error> {
    match &cli.phi {
        None => Ok(submod_core::harness::default_phi_family()),
        Some(s) => s.split(',').map(|t| PhiFunction::from_tag(t.trim())).collect(),
    }
}

fn load_input(cli: &Cli) -> Result<parser::WorkbenchInput, Error> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Error::input("this command needs --input FILE"))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parser::parse_input(&text)
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Enumerate => cmd_enumerate(cli),
        Cmd::Classify => cmd_classify(cli),
        Cmd::Verify => cmd_verify(cli),
    }
}

fn ring_label(ring: &submod_core::ring::RingSpec) -> String {
    let parts: Vec<String> = ring.moduli().iter().map(|n| format!("Z/{n}")).collect();
    parts.join(" x ")
}

fn cmd_enumerate(cli: &Cli) -> Result<u8, Error> {
    let inp = load_input(cli)?;
    let lat = ModuleLattice::new(inp.module, &caps(cli))?;
    let m = &lat.module;
    let report = EnumerateReport {
        ring: ring_label(m.ring()),
        ring_order: m.ring().order(),
        module_order: m.order(),
        ideals: lat
            .ideals
            .iter()
            .map(|i| ItemInfo {
                label: i.label(m.ring()),
                size: i.len(),
                gens: minimal_ideal_gens(m.ring(), i)
                    .iter()
                    .map(|&g| m.ring().label(g))
                    .collect(),
            })
            .collect(),
        submodules: lat
            .subs
            .iter()
            .map(|n| ItemInfo {
                label: m.sub_label(n),
                size: n.len(),
                gens: m.minimal_sub_gens(n).iter().map(|&g| m.label(g).to_string()).collect(),
            })
            .collect(),
        declared: inp.subs.iter().map(|s| m.sub_label(s)).collect(),
    };
    if cli.emit == "json" {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("ring {} (order {})", report.ring, report.ring_order);
        println!("module order {}", report.module_order);
        println!("ideals ({}):", report.ideals.len());
        for i in &report.ideals {
            println!("  {:<24} size {:<4} gens {}", i.label, i.size, i.gens.join(" "));
        }
        println!("submodules ({}):", report.submodules.len());
        for s in &report.submodules {
            println!("  {:<24} size {:<4} gens {}", s.label, s.size, s.gens.join(" "));
        }
        if !report.declared.is_empty() {
            println!("declared submodules: {}", report.declared.join(", "));
        }
    }
    Ok(0)
}

fn cmd_classify(cli: &Cli) -> Result<u8, Error> {
    let inp = load_input(cli)?;
    let psis = parse_psi_list(cli)?;
    let lat = ModuleLattice::new(inp.module, &caps(cli))?;
    let mut rows = psi_profile(&lat, &psis)?;
    if !inp.subs.is_empty() {
        let keep: Vec<String> = inp.subs.iter().map(|s: &Submodule| lat.module.sub_label(s)).collect();
        rows.retain(|r| keep.contains(&r.submodule));
    }
    let disagreements = rows.iter().filter(|r| !r.core_methods_agree).count() as u64;
    let report = ClassifyReport {
        module_order: lat.module.order(),
        rows,
        disagreements,
    };
    if cli.emit == "json" {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for r in &report.rows {
            let verdicts: Vec<String> = r
                .method_verdicts
                .iter()
                .map(|(m, v)| format!("{m}={}", if *v { "yes" } else { "no" }))
                .collect();
            let mut line = format!(
                "{:<20} psi={:<8} psi(N)={:<20} second={} weak_second={} {}",
                r.submodule,
                r.psi,
                r.psi_value,
                if r.second { "yes" } else { "no" },
                if r.weak_second { "yes" } else { "no" },
                verdicts.join(" ")
            );
            if let Some(w) = &r.witness {
                line.push_str(&format!(" witness[{w}]"));
            }
            if !r.core_methods_agree {
                line.push_str(" CORE-METHOD-DISAGREEMENT");
            }
            println!("{line}");
        }
        println!(
            "{} rows, {} core-method disagreements",
            report.rows.len(),
            report.disagreements
        );
    }
    Ok(if report.disagreements > 0 { 1 } else { 0 })
}

fn cmd_verify(cli: &Cli) -> Result<u8, Error> {
    let caps = caps(cli);
    let mut catalog = default_catalog(&caps)?;
    catalog.psi_family = parse_psi_list(cli)?;
    catalog.phi_family = parse_phi_list(cli)?;
    let theorem = cli.theorem.as_deref().unwrap_or("all");
    let reports = if theorem == "all" {
        verify_all(&catalog)?
    } else {
        if !THEOREM_IDS.contains(&theorem) {
            return Err(Error::input(format!(
                "unknown theorem id {theorem:?}; known: {} or all",
                THEOREM_IDS.join(", ")
            )));
        }
        vec![verify(&catalog, theorem)?]
    };
    let out = VerifyOutput { reports };
    if cli.emit == "json" {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("catalog: {} entries", catalog.entries.len());
        for r in &out.reports {
            println!("{}", render_report_text(r));
        }
    }
    let dirty = out.reports.iter().any(|r| r.status == Status::Violated);
    Ok(if dirty { 1 } else { 0 })
}
