use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dpzoo::catalog::{self, Catalog, Report, Status, Summary, TableEntry};
use dpzoo::lattice::blowup_of_p2;
use dpzoo::par::{self, Parallelism};
use dpzoo::surface::{enumerate_configs, Fingerprint};

#[derive(Parser)]
#[command(
    name = "dpzoo",
    version,
    about = "Verify the table of Du Val del Pezzo surfaces with infinite automorphism groups"
)]
struct Cli {
    /// Data directory.
    #[arg(long, global = true, env = "DPZOO_DATA")]
    data: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Machine-readable JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone, Copy)]
struct Jobs {
    /// Worker threads; 1 runs sequentially.
    #[arg(long, short = 'j', default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on the table.
    Table {
        #[command(subcommand)]
        command: TableCommand,
    },
    /// Recomputed invariants of one row, as JSON.
    Info { id: String },
    /// Dual graph of one row.
    Graph {
        id: String,
        /// Graphviz output (the default).
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Configurations on the blow-up of the plane up to the Weyl group.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=9))]
        degree: i64,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Consistency checks across the table and its side tables.
    Corollaries {
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Equations, lines and group actions of one row.
    PolyCheck {
        id: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum TableCommand {
    /// Recompute and compare every invariant.
    Verify {
        #[arg(long)]
        entry: Option<String>,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        jobs: Jobs,
    },
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<std::io::Error>())
        .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    let dir = cli.data.unwrap_or_else(catalog::data_dir);
    if !dir.is_dir() {
        bail!("data directory {} does not exist", dir.display());
    }
    let cat = Catalog::load(&dir).with_context(|| format!("loading {}", dir.display()))?;
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Table {
            command:
                TableCommand::Verify {
                    entry,
                    out: o,
                    jobs,
                },
        } => table_verify(&cat, entry.as_deref(), o, jobs, &mut out),
        Command::Info { id } => {
            let e = find(&cat, &id)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&info(e))?)?;
            Ok(Verdict::Pass)
        }
        Command::Graph { id, json, .. } => {
            let g = find(&cat, &id)?.config.dual_graph();
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&g.to_json())?)?;
            } else {
                write!(out, "{}", g.to_dot(&id))?;
            }
            Ok(Verdict::Pass)
        }
        Command::Enumerate {
            degree,
            out: o,
            jobs,
        } => enumerate(&cat, degree, o, jobs, &mut out),
        Command::Corollaries { out: o, jobs } => {
            let reports = par::with_threads(jobs.jobs.into(), |mode| {
                vec![
                    catalog::check_corollaries(&cat, mode),
                    catalog::check_thm36(&cat),
                    catalog::check_plane_curves(&cat),
                    catalog::check_appendix_b(&cat),
                    catalog::certify_errata(&cat),
                ]
            });
            print_reports(&reports, o, &mut out)?;
            Ok(verdict(reports.iter().all(Report::passed)))
        }
        Command::PolyCheck { id, out: o } => {
            let r = catalog::verify_polynomials(find(&cat, &id)?);
            print_reports(std::slice::from_ref(&r), o, &mut out)?;
            Ok(verdict(r.passed()))
        }
    }
}

fn find<'a>(cat: &'a Catalog, id: &str) -> anyhow::Result<&'a TableEntry> {
    cat.entry(id)
        .with_context(|| format!("unknown entry `{id}`"))
}

fn print_reports(reports: &[Report], o: Output, out: &mut impl Write) -> anyhow::Result<()> {
    if o.json {
        writeln!(out, "{}", serde_json::to_string_pretty(reports)?)?;
    } else {
        for r in reports {
            write!(out, "{r}")?;
        }
    }
    Ok(())
}

fn table_verify(
    cat: &Catalog,
    entry: Option<&str>,
    o: Output,
    jobs: Jobs,
    out: &mut impl Write,
) -> anyhow::Result<Verdict> {
    let reports = match entry {
        Some(id) => vec![catalog::verify_entry(find(cat, id)?)],
        None => par::with_threads(jobs.jobs.into(), |mode| catalog::verify_all(cat, mode)),
    };
    let summary = Summary::of(&reports);
    if o.json {
        let v = json!({ "summary": summary, "entries": reports });
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    } else if entry.is_some() {
        write!(out, "{}", reports[0].report)?;
    } else {
        for r in &reports {
            let status = if !r.passed() {
                Status::Fail
            } else if r.report.checks.iter().any(|c| c.status == Status::Erratum) {
                Status::Erratum
            } else {
                Status::Pass
            };
            writeln!(out, "{:<7} {}", status.to_string(), r.id)?;
            for c in &r.report.checks {
                if matches!(c.status, Status::Fail | Status::Erratum) {
                    writeln!(out, "        {}: {}", c.name, c.detail)?;
                }
            }
        }
    }
    if !o.json {
        writeln!(
            out,
            "{}/{} entries pass ({} through recorded errata)",
            summary.passed, summary.entries, summary.errata
        )?;
    }
    Ok(verdict(summary.failed == 0))
}

fn info(e: &TableEntry) -> serde_json::Value {
    let cfg = &e.config;
    let cl = cfg.class_group();
    let roots: Vec<&[i64]> = cfg.simple_roots().iter().map(|r| r.coords()).collect();
    let lines: Vec<&[i64]> = cfg.lines().iter().map(|r| r.coords()).collect();
    let surface = e.surface.as_ref().map(|s| {
        json!({
            "ambient": s.ambient.name,
            "equations": s.equations.iter().map(|f| format!("{f} = 0")).collect::<Vec<_>>(),
        })
    });
    json!({
        "id": e.id,
        "label": e.label,
        "degree": cfg.degree(),
        "type": cfg.singularity_type().to_string(),
        "rho": cfg.picard_rank(),
        "lines": cfg.num_lines(),
        "index": cfg.fano_weil_index(),
        "weakly_minimal": cfg.is_weakly_minimal(),
        "conic_bundle": cfg.has_conic_bundle(),
        "free_rank": cl.free_rank(),
        "torsion": cl.torsion(),
        "aut0": e.aut0.to_string(),
        "blowup_of": e.blowup_of,
        "lattice": cfg.lattice().kind(),
        "simple_roots": roots,
        "line_classes": lines,
        "surface": surface,
    })
}

fn enumerate(
    cat: &Catalog,
    degree: i64,
    o: Output,
    jobs: Jobs,
    out: &mut impl Write,
) -> anyhow::Result<Verdict> {
    if (5..=7).contains(&degree) {
        let r = par::with_threads(jobs.jobs.into(), |mode| {
            catalog::enumerate_and_match(cat, degree, mode)
        })?;
        if o.json {
            writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?;
        } else {
            for m in &r.orbits {
                writeln!(
                    out,
                    "{:<8} rho={} lines={} index={} {}",
                    m.ty.to_string(),
                    m.rho,
                    m.lines,
                    m.index,
                    m.entry.as_deref().unwrap_or("-")
                )?;
            }
            for id in &r.unmatched_entries {
                writeln!(out, "unmatched row {id}")?;
            }
            for m in &r.missing {
                writeln!(out, "orbit without a row: {m}")?;
            }
        }
        return Ok(verdict(r.passed));
    }
    if degree < 5 {
        eprintln!("warning: degree {degree} is below 5, orbits are listed without matching and the search can be slow");
    }
    let lat = blowup_of_p2((9 - degree) as usize)?;
    let configs = par::with_threads(jobs.jobs.into(), |mode: Parallelism| {
        enumerate_configs(&lat, lat.rank().saturating_sub(1), mode)
    });
    let fps: Vec<Fingerprint> = configs.iter().map(Fingerprint::of).collect();
    if o.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&fps)?)?;
    } else {
        for (cfg, fp) in configs.iter().zip(&fps) {
            writeln!(
                out,
                "{:<8} rho={} lines={} index={}",
                fp.ade,
                cfg.picard_rank(),
                fp.lines,
                fp.index
            )?;
        }
    }
    Ok(Verdict::Pass)
}
