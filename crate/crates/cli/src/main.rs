//! `gerst`: command-line front end over JSON files for shape validation,
//! gluing checks, floor-plan canonicalization and reduction, the right-free
//! search, the exact oracle, and verification campaigns.

mod pretty;
mod schema;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use gerst_core::{
    bottom_config, check_minimal_config_lemmas, enumerate_monomial_isos, gluings_from_ideals,
    reduce_to_fixpoint, run_campaign, search_small_intersection, verify_gq, Point, Realization,
    SearchBounds, DEFAULT_PRIME,
};

use schema::{read_json, BoundsArg, IsosFile, ModuleFile, PlanFile, ShapeFile, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "gerst", version, about = "Combinatorial-module toolbox")]
struct Cli {
    /// Worker threads for search and campaigns (default: GERST_JOBS or all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Additionally render shapes as ASCII layers on stderr.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shape operations on {"schema":1,"n":..,"cells":[..]} files.
    Shapes {
        #[command(subcommand)]
        op: ShapesOp,
    },
    /// Gluing-data operations.
    Glue {
        #[command(subcommand)]
        op: GlueOp,
    },
    /// Floor-plan operations.
    Plan {
        #[command(subcommand)]
        op: PlanOp,
    },
    /// Exhaustive searches.
    Search {
        #[command(subcommand)]
        op: SearchOp,
    },
    /// Exact linear-algebra oracle.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
    /// Theorem-verification campaigns.
    Campaign {
        #[command(subcommand)]
        op: CampaignOp,
    },
}

#[derive(Subcommand)]
enum ShapesOp {
    /// Check skew validity, connectivity and normalization of a cell set.
    Validate { file: PathBuf },
    /// Translate a shape so its meet is at the origin.
    Normalize { file: PathBuf },
    /// Split a shape into connected components with their anchors.
    Components { file: PathBuf },
}

#[derive(Subcommand)]
enum GlueOp {
    /// Enumerate monomial module isomorphisms between two skew shapes, or
    /// between K/I and L/J given ideal generators.
    Isos { file: PathBuf },
    /// Validate gluing data and report dimensions.
    Check { file: PathBuf },
    /// Shrink lambda and mu to the closures of the placed pieces.
    Scaffold { file: PathBuf },
}

#[derive(Subcommand)]
enum PlanOp {
    /// Canonical (minimum) realization offsets of a floor plan.
    Canonical { file: PathBuf },
    /// Validate a floor plan, and a realization when offsets are present.
    Check { file: PathBuf },
    /// Emit the full bottom-slice reduction chain.
    Reduce { file: PathBuf },
    /// Right-freeness report, with the bottom configuration when right-free.
    Rightfree { file: PathBuf },
}

#[derive(Subcommand)]
enum SearchOp {
    /// Search for right-free configurations of small intersection.
    Rightfree(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    max_components: usize,
    #[arg(long, default_value_t = 7)]
    max_cells: usize,
    /// Placement box as WxH.
    #[arg(long, default_value = "7x7")]
    r#box: String,
    #[arg(long, default_value_t = 1)]
    shards: usize,
    #[arg(long, default_value_t = 0)]
    shard: usize,
}

#[derive(Subcommand)]
enum OracleOp {
    /// Module and generated-algebra dimensions of a gluing datum.
    Dim {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        /// Include the multiplication matrices in the output.
        #[arg(long)]
        matrices: bool,
    },
}

#[derive(Subcommand)]
enum CampaignOp {
    /// Run a named campaign with bounds given inline as JSON or as a path.
    Run {
        name: String,
        #[arg(long)]
        bounds: BoundsArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.or_else(|| {
        std::env::var("GERST_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(j) = jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    match dispatch(cli) {
        Ok(violations) => {
            if violations {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            let obj = json!({ "error": { "message": format!("{err:#}") } });
            println!("{obj}");
            ExitCode::from(2)
        }
    }
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

/// Returns whether the command found violations or witnesses.
fn dispatch(cli: Cli) -> Result<bool> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Shapes { op } => shapes(op, pretty),
        Command::Glue { op } => glue(op, pretty),
        Command::Plan { op } => plan(op, pretty),
        Command::Search { op } => search(op),
        Command::Oracle { op } => oracle(op),
        Command::Campaign { op } => campaign(op),
    }
}

fn shapes(op: ShapesOp, pretty: bool) -> Result<bool> {
    match op {
        ShapesOp::Validate { file } => {
            let raw: ShapeFile = read_json(&file)?;
            let report = raw.validate_report();
            let ok = report["skew"].as_bool().unwrap_or(false);
            emit(&report)?;
            Ok(!ok)
        }
        ShapesOp::Normalize { file } => {
            let shape = read_json::<ShapeFile>(&file)?.into_skew()?;
            let normalized = shape.normalized()?;
            if pretty {
                pretty::render_cells(normalized.dim(), normalized.cells());
            }
            emit(&json!({ "schema": SCHEMA_VERSION, "n": normalized.dim(),
                          "cells": normalized.cells() }))?;
            Ok(false)
        }
        ShapesOp::Components { file } => {
            let shape = read_json::<ShapeFile>(&file)?.into_skew()?;
            let comps: Vec<_> = shape
                .components()
                .into_iter()
                .map(|c| {
                    let anchor = c.meet().expect("components are nonempty");
                    let normalized = c.normalized().expect("components are nonempty");
                    if pretty {
                        pretty::render_cells(c.dim(), c.cells());
                    }
                    json!({ "anchor": anchor, "cells": normalized.cells() })
                })
                .collect();
            emit(&json!({ "schema": SCHEMA_VERSION, "n": shape.dim(), "components": comps }))?;
            Ok(false)
        }
    }
}

fn glue(op: GlueOp, pretty: bool) -> Result<bool> {
    match op {
        GlueOp::Isos { file } => {
            let input: IsosFile = read_json(&file)?;
            let out = match input.into_parts()? {
                schema::IsosInput::Shapes(zeta, xi) => {
                    let matchings = enumerate_monomial_isos(&zeta, &xi);
                    json!({ "count": matchings.len(), "matchings": matchings })
                }
                schema::IsosInput::Ideals { n, i, j, k, l } => {
                    let modules = gluings_from_ideals(n, &i, &j, &k, &l)?;
                    let c_anchors: Vec<Vec<Point>> =
                        modules.iter().map(|g| g.c.clone()).collect();
                    json!({
                        "count": modules.len(),
                        "b_anchors": modules.first().map(|g| g.b.clone()),
                        "c_anchors": c_anchors,
                    })
                }
            };
            emit(&out)?;
            Ok(false)
        }
        GlueOp::Check { file } => {
            let g = read_json::<ModuleFile>(&file)?.into_gluing();
            match g.validate() {
                Ok(()) => {
                    emit(&json!({
                        "valid": true,
                        "dimension": g.dimension(),
                        "nu_cells": g.nu_len(),
                        "intersection": g.lambda.intersect(&g.mu).len(),
                        "counterexample": g.is_counterexample(),
                    }))?;
                    Ok(false)
                }
                Err(e) => {
                    emit(&json!({ "valid": false, "violation": e.to_string() }))?;
                    Ok(true)
                }
            }
        }
        GlueOp::Scaffold { file } => {
            let g = read_json::<ModuleFile>(&file)?.into_gluing();
            g.validate()?;
            let s = g.scaffolded();
            if pretty {
                pretty::render_cells(s.lambda.dim(), s.lambda.cells());
                pretty::render_cells(s.mu.dim(), s.mu.cells());
            }
            emit(&ModuleFile::from_gluing(&s))?;
            Ok(false)
        }
    }
}

fn plan(op: PlanOp, pretty: bool) -> Result<bool> {
    match op {
        PlanOp::Canonical { file } => {
            let (plan, _, _) = read_json::<PlanFile>(&file)?.into_plan();
            plan.validate()?;
            let real = plan.canonical_realization()?;
            emit(&json!({ "schema": SCHEMA_VERSION, "bz": real.bz, "cz": real.cz }))?;
            Ok(false)
        }
        PlanOp::Check { file } => {
            let (plan, bz, cz) = read_json::<PlanFile>(&file)?.into_plan();
            if let Err(e) = plan.validate() {
                emit(&json!({ "valid": false, "violation": e.to_string() }))?;
                return Ok(true);
            }
            match (bz, cz) {
                (Some(bz), Some(cz)) => {
                    let real = Realization { plan, bz, cz };
                    let ok = real.is_valid()?;
                    emit(&json!({ "valid": ok, "realization": true }))?;
                    Ok(!ok)
                }
                (None, None) => {
                    emit(&json!({ "valid": true, "realization": false }))?;
                    Ok(false)
                }
                _ => bail!("provide both bz and cz or neither"),
            }
        }
        PlanOp::Reduce { file } => {
            let (plan, _, _) = read_json::<PlanFile>(&file)?.into_plan();
            plan.validate()?;
            let chain = reduce_to_fixpoint(&plan)?;
            if pretty {
                for p in &chain {
                    pretty::render_plan(p);
                }
            }
            let chain_files: Vec<PlanFile> = chain.iter().map(PlanFile::from_plan).collect();
            emit(&json!({ "schema": SCHEMA_VERSION, "chain": chain_files }))?;
            Ok(false)
        }
        PlanOp::Rightfree { file } => {
            let (plan, _, _) = read_json::<PlanFile>(&file)?.into_plan();
            plan.validate()?;
            let hb = plan.h_all_on(gerst_core::Side::B)?;
            let right_free = hb.iter().all(|&v| v == 0);
            let config = if right_free {
                let cfg = bottom_config(&plan)?;
                let lemmas = check_minimal_config_lemmas(&cfg).ok();
                Some(json!({
                    "nu0": cfg.nu0, "b": cfg.b, "c": cfg.c,
                    "small_intersection": cfg.has_small_intersection(),
                    "lemmas": lemmas,
                }))
            } else {
                None
            };
            emit(&json!({ "right_free": right_free, "hb": hb, "bottom_config": config }))?;
            Ok(false)
        }
    }
}

fn search(op: SearchOp) -> Result<bool> {
    match op {
        SearchOp::Rightfree(args) => {
            let (w, h) = parse_box(&args.r#box)?;
            if args.shard >= args.shards {
                bail!(
                    "shard index {} out of range for {} shards",
                    args.shard,
                    args.shards
                );
            }
            let out = search_small_intersection(
                args.max_components,
                args.max_cells,
                (w, h),
                args.shards,
                args.shard,
            );
            let found = !out.witnesses.is_empty();
            emit(&json!({
                "bounds": {
                    "max_components": out.max_components,
                    "max_cells": out.max_cells,
                    "box": [out.box_w, out.box_h],
                    "shards": args.shards,
                    "shard": args.shard,
                },
                "candidates_examined": out.examined,
                "pruned_subtrees": out.pruned,
                "witnesses": out.witnesses,
            }))?;
            Ok(found)
        }
    }
}

fn oracle(op: OracleOp) -> Result<bool> {
    match op {
        OracleOp::Dim {
            file,
            prime,
            matrices,
        } => {
            let g = read_json::<ModuleFile>(&file)?.into_gluing();
            let verdict = verify_gq(&g, prime)?;
            let mut out = json!({
                "dimN": verdict.dim_module,
                "dimAlg": verdict.dim_algebra,
                "holds": verdict.holds,
                "prime": verdict.prime,
            });
            if matrices {
                out["matrices"] =
                    serde_json::to_value(gerst_core::module_to_matrices(&g, prime)?)?;
            }
            emit(&out)?;
            Ok(false)
        }
    }
}

fn campaign(op: CampaignOp) -> Result<bool> {
    match op {
        CampaignOp::Run { name, bounds } => {
            let bounds: SearchBounds = bounds.resolve()?;
            let report = run_campaign(&name, &bounds)?;
            let failed = !report.passed();
            emit(&report)?;
            Ok(failed)
        }
    }
}

fn parse_box(s: &str) -> Result<(u32, u32)> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| anyhow!("box must look like 7x7"))?;
    Ok((
        w.parse().context("box width")?,
        h.parse().context("box height")?,
    ))
}
