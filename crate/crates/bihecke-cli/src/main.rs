//! `bihecke` — batch command-line surface for the biHecke monoid toolkit.
//!
//! Every subcommand reads a group descriptor (and where applicable an
//! element), computes one artifact, and writes it to stdout or `--out`.
//! Identical invocations produce byte-identical output.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or parse error,
//! 3 resource budget exhausted, 4 invariant violation.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use bihecke::blocks::{all_blocks, CuttingPoset};
use bihecke::borel::{borel_closure, cartan_matrix, minimal_generators};
use bihecke::check::{count, run_all, text_report, CheckOptions, CheckStatus};
use bihecke::coxeter::{create_group, subset_text, CoxeterGroup, Elem, Subset};
use bihecke::error::Error;
use bihecke::heckeops::{analyze, bihecke_monoid, ClosureOptions};
use bihecke::reptheory::decomposition_matrix;
use bihecke::transmod::{
    codescent_graph, simple_dims, translation_module, whecke_dim_closure, whecke_dim_count,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const DEFAULT_CLOSURE_BUDGET: usize = 1_000_000;
const DEFAULT_DIMENSION_BOUND: usize = 64;

#[derive(Parser)]
#[command(
    name = "bihecke",
    version,
    about = "Blocks, cutting posets, translation modules and representation \
             data of biHecke monoids over finite Coxeter groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Dot,
}

#[derive(Args)]
struct Common {
    /// Group descriptor: A<n> or I2(<m>), e.g. A3, I2(5).
    #[arg(long)]
    group: String,

    /// Output format (dot only where a graph rendering exists).
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Resource budget: closure size cap (default 1000000), or module
    /// dimension cap for `whecke` (default 64).
    #[arg(long)]
    budget: Option<usize>,

    /// Worker threads; output is identical for any value.
    #[arg(long, default_value_t = 1)]
    threads: usize,

    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WithElement {
    #[command(flatten)]
    common: Common,

    /// Element, written in one-line notation (e.g. 4312).
    #[arg(long)]
    w: String,
}

#[derive(Subcommand)]
enum Command {
    /// Order, longest element and descent tables of the group.
    Group(Common),
    /// The full biHecke monoid closure: size and element tables, or its
    /// right Cayley graph as DOT.
    Monoid(Common),
    /// The Borel submonoid of identity fixers: size, minimal generators
    /// and Cartan matrix.
    Borel(Common),
    /// Blocks, left partners and cutting points of an element.
    Blocks(WithElement),
    /// The cutting poset with its Möbius function, or its Hasse diagram
    /// as DOT.
    CuttingPoset(Common),
    /// The translation module of an element: basis and operator matrices,
    /// or its codescent graph as DOT.
    Transmod(WithElement),
    /// The w-biHecke algebra dimension by both methods, plus the dimensions
    /// of the simple modules attached to the blocks of w.
    Whecke(WithElement),
    /// Decomposition matrix of the monoid algebra over its Borel subalgebra.
    Decomposition(Common),
    /// Run the whole invariant registry on a group (plain-text report;
    /// exits 4 if any check fails).
    Check(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            match error {
                Error::Resource { .. } => ExitCode::from(3),
                Error::InvariantViolation(_) => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    let (output, common, code) = match command {
        Command::Group(args) => {
            let group = create_group(&args.group)?;
            (group_report(&group, args.format)?, args, ExitCode::SUCCESS)
        }
        Command::Monoid(args) => {
            let group = create_group(&args.group)?;
            (
                monoid_report(&group, args.format, closure_options(&args))?,
                args,
                ExitCode::SUCCESS,
            )
        }
        Command::Borel(args) => {
            let group = create_group(&args.group)?;
            (
                borel_report(&group, args.format, closure_options(&args))?,
                args,
                ExitCode::SUCCESS,
            )
        }
        Command::Blocks(args) => {
            let group = create_group(&args.common.group)?;
            let w = group.parse_elem(&args.w)?;
            (
                blocks_report(&group, w, args.common.format)?,
                args.common,
                ExitCode::SUCCESS,
            )
        }
        Command::CuttingPoset(args) => {
            let group = create_group(&args.group)?;
            (
                cutting_report(&group, args.format)?,
                args,
                ExitCode::SUCCESS,
            )
        }
        Command::Transmod(args) => {
            let group = create_group(&args.common.group)?;
            let w = group.parse_elem(&args.w)?;
            (
                transmod_report(&group, w, args.common.format)?,
                args.common,
                ExitCode::SUCCESS,
            )
        }
        Command::Whecke(args) => {
            let group = create_group(&args.common.group)?;
            let w = group.parse_elem(&args.w)?;
            let bound = args.common.budget.unwrap_or(DEFAULT_DIMENSION_BOUND);
            (
                whecke_report(&group, w, bound, args.common.format)?,
                args.common,
                ExitCode::SUCCESS,
            )
        }
        Command::Decomposition(args) => {
            let group = create_group(&args.group)?;
            let table = decomposition_matrix(&group)?;
            let output = match args.format {
                Format::Json => table.json(),
                Format::Tsv => table.tsv(),
                Format::Dot => return Err(no_dot("decomposition")),
            };
            (output, args, ExitCode::SUCCESS)
        }
        Command::Check(args) => {
            let group = create_group(&args.group)?;
            let options = CheckOptions {
                closure_budget: args.budget.unwrap_or(DEFAULT_CLOSURE_BUDGET),
                module_dim_bound: DEFAULT_DIMENSION_BOUND,
                threads: args.threads,
            };
            let results = run_all(&group, &options);
            let failed = count(&results, CheckStatus::Failed);
            let mut output = text_report(&results);
            output.push_str(&format!(
                "# {} passed, {} failed, {} skipped\n",
                count(&results, CheckStatus::Passed),
                failed,
                count(&results, CheckStatus::Skipped),
            ));
            let code = if failed > 0 {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            };
            (output, args, code)
        }
    };

    match &common.out {
        Some(path) => {
            if let Err(io) = std::fs::write(path, output) {
                eprintln!("error: cannot write {}: {io}", path.display());
                return Ok(ExitCode::from(1));
            }
        }
        None => print!("{output}"),
    }
    Ok(code)
}

fn closure_options(args: &Common) -> ClosureOptions {
    ClosureOptions {
        budget: args.budget.unwrap_or(DEFAULT_CLOSURE_BUDGET),
        threads: args.threads,
    }
}

fn no_dot(subcommand: &str) -> Error {
    Error::Domain(format!("`{subcommand}` has no DOT rendering"))
}

fn subset_labels(j: Subset) -> Vec<u32> {
    (1..=32).filter(|i| j & (1 << (i - 1)) != 0).collect()
}

fn group_report(group: &Arc<CoxeterGroup>, format: Format) -> Result<String, Error> {
    match format {
        Format::Tsv => {
            let mut out = format!(
                "# group\t{}\n# order\t{}\n# w0\t{}\n",
                group.descriptor(),
                group.order(),
                group.format_elem(group.w0())
            );
            out.push_str("index\telement\tlength\tleft_descents\tright_descents\n");
            for e in group.elements() {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    e,
                    group.format_elem(e),
                    group.length(e),
                    subset_text(group.left_descents(e)),
                    subset_text(group.right_descents(e)),
                ));
            }
            Ok(out)
        }
        Format::Json => {
            let elements: Vec<Value> = group
                .elements()
                .map(|e| {
                    json!({
                        "index": e,
                        "element": group.format_elem(e),
                        "length": group.length(e),
                        "left_descents": subset_labels(group.left_descents(e)),
                        "right_descents": subset_labels(group.right_descents(e)),
                    })
                })
                .collect();
            Ok(pretty(json!({
                "group": group.descriptor().to_string(),
                "order": group.order(),
                "w0": group.format_elem(group.w0()),
                "elements": elements,
            })))
        }
        Format::Dot => Err(no_dot("group")),
    }
}

fn monoid_report(
    group: &Arc<CoxeterGroup>,
    format: Format,
    options: ClosureOptions,
) -> Result<String, Error> {
    let monoid = bihecke_monoid(group, options)?;
    match format {
        Format::Tsv => Ok(format!(
            "# group\t{}\n# size\t{}\n{}",
            group.descriptor().to_string(),
            monoid.size(),
            monoid.tsv()
        )),
        Format::Json => {
            let elements: Vec<Value> = (0..monoid.size() as u32)
                .map(|i| {
                    let table = monoid.element(i);
                    let analysis = analyze(table);
                    json!({
                        "index": i,
                        "images": table.images(),
                        "rank": analysis.rank,
                        "type": group.format_elem(analysis.type_elem),
                        "fixes_one": monoid.fixes_one(i),
                    })
                })
                .collect();
            Ok(pretty(json!({
                "group": group.descriptor().to_string(),
                "size": monoid.size(),
                "idempotents": monoid.idempotents().len(),
                "elements": elements,
            })))
        }
        Format::Dot => Ok(monoid.cayley_dot()),
    }
}

fn borel_report(
    group: &Arc<CoxeterGroup>,
    format: Format,
    options: ClosureOptions,
) -> Result<String, Error> {
    let borel = borel_closure(group, options)?;
    let generators = minimal_generators(&borel);
    // Every minimal generator is some e_w; report it through the maximal
    // element of its image interval.
    let generator_elements: Vec<String> = generators
        .indices
        .iter()
        .map(|&i| {
            let image = analyze(borel.monoid().element(i)).image;
            let top = image
                .iter()
                .copied()
                .max_by_key(|&u| (group.length(u), u))
                .expect("non-empty image");
            group.format_elem(top)
        })
        .collect();
    let cartan = cartan_matrix(&borel)?;
    match format {
        Format::Tsv => Ok(format!(
            "# group\t{}\n# size\t{}\n# minimal_generators\t{}\n# generator_elements\t{}\n{}",
            group.descriptor().to_string(),
            borel.size(),
            generators.with_identity,
            generator_elements.join(","),
            cartan.tsv()
        )),
        Format::Json => Ok(pretty(json!({
            "group": group.descriptor().to_string(),
            "size": borel.size(),
            "minimal_generators": generators.with_identity,
            "generator_elements": generator_elements,
            "cartan": serde_json::from_str::<Value>(&cartan.json()).expect("table json"),
        }))),
        Format::Dot => Err(no_dot("borel")),
    }
}

fn blocks_report(group: &Arc<CoxeterGroup>, w: Elem, format: Format) -> Result<String, Error> {
    let records = all_blocks(group, w);
    match format {
        Format::Tsv => {
            let mut out = format!(
                "# group\t{}\n# w\t{}\nblock\tleft_partner\tcutting_point\tnontrivial\treduced\n",
                group.descriptor().to_string(),
                group.format_elem(w)
            );
            for r in &records {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    subset_text(r.k),
                    subset_text(r.j),
                    group.format_elem(r.cutting_point),
                    r.nontrivial,
                    r.reduced,
                ));
            }
            Ok(out)
        }
        Format::Json => {
            let blocks: Vec<Value> = records
                .iter()
                .map(|r| {
                    json!({
                        "block": subset_labels(r.k),
                        "left_partner": subset_labels(r.j),
                        "cutting_point": group.format_elem(r.cutting_point),
                        "nontrivial": r.nontrivial,
                        "reduced": r.reduced,
                    })
                })
                .collect();
            Ok(pretty(json!({
                "group": group.descriptor().to_string(),
                "w": group.format_elem(w),
                "blocks": blocks,
            })))
        }
        Format::Dot => Err(no_dot("blocks")),
    }
}

fn cutting_report(group: &Arc<CoxeterGroup>, format: Format) -> Result<String, Error> {
    let cutting = CuttingPoset::new(group)?;
    match format {
        Format::Dot => Ok(cutting.dot()),
        Format::Tsv => {
            let mut out = format!(
                "# group\t{}\nlower\tupper\tmobius\n",
                group.descriptor().to_string()
            );
            for v in group.elements() {
                for w in group.elements() {
                    if cutting.leq(v, w) {
                        out.push_str(&format!(
                            "{}\t{}\t{}\n",
                            group.format_elem(v),
                            group.format_elem(w),
                            cutting.mobius(v, w)?,
                        ));
                    }
                }
            }
            Ok(out)
        }
        Format::Json => {
            let mut relations = Vec::new();
            for v in group.elements() {
                for w in group.elements() {
                    if cutting.leq(v, w) {
                        relations.push(json!({
                            "lower": group.format_elem(v),
                            "upper": group.format_elem(w),
                            "mobius": cutting.mobius(v, w)?,
                        }));
                    }
                }
            }
            Ok(pretty(json!({
                "group": group.descriptor().to_string(),
                "relations": relations,
            })))
        }
    }
}

fn transmod_report(group: &Arc<CoxeterGroup>, w: Elem, format: Format) -> Result<String, Error> {
    let module = translation_module(group, w);
    let basis: Vec<String> = module
        .basis()
        .iter()
        .map(|&u| group.format_elem(u))
        .collect();
    match format {
        Format::Dot => Ok(codescent_graph(group, w)?.dot(group)),
        Format::Tsv => {
            let mut out = format!(
                "# group\t{}\n# w\t{}\n# dim\t{}\n# basis\t{}\n",
                group.descriptor().to_string(),
                group.format_elem(w),
                module.dim(),
                basis.join(",")
            );
            for i in 1..=group.rank() as u32 {
                for (name, matrix) in [("pi", module.pi(i)?), ("pibar", module.pibar(i)?)] {
                    out.push_str(&format!("# operator\t{name}_{i}\n"));
                    for r in 0..matrix.rows() {
                        let row: Vec<String> =
                            matrix.row(r).iter().map(|v| v.to_string()).collect();
                        out.push_str(&row.join("\t"));
                        out.push('\n');
                    }
                }
            }
            Ok(out)
        }
        Format::Json => {
            let dump_family = |name: &str| -> Result<Vec<Value>, Error> {
                (1..=group.rank() as u32)
                    .map(|i| {
                        let matrix = module.op(
                            if name == "pi" {
                                bihecke::heckeops::OpKind::Antisort
                            } else {
                                bihecke::heckeops::OpKind::Sort
                            },
                            i,
                        )?;
                        let rows: Vec<Vec<i64>> =
                            (0..matrix.rows()).map(|r| matrix.row(r).to_vec()).collect();
                        Ok(json!({ "generator": i, "matrix": rows }))
                    })
                    .collect()
            };
            Ok(pretty(json!({
                "group": group.descriptor().to_string(),
                "w": group.format_elem(w),
                "dim": module.dim(),
                "basis": basis,
                "pi": dump_family("pi")?,
                "pibar": dump_family("pibar")?,
            })))
        }
    }
}

fn whecke_report(
    group: &Arc<CoxeterGroup>,
    w: Elem,
    bound: usize,
    format: Format,
) -> Result<String, Error> {
    let by_count = whecke_dim_count(group, w)?;
    let by_closure = whecke_dim_closure(group, w, bound)?;
    let dims = simple_dims(group, w)?;
    let simple: Vec<(String, usize)> = dims
        .classes()
        .iter()
        .map(|&(j, ref members)| (subset_text(j), members.len()))
        .collect();
    match format {
        Format::Tsv => {
            let mut out = format!(
                "# group\t{}\n# w\t{}\ndim_count\t{}\ndim_closure\t{}\nagree\t{}\n",
                group.descriptor().to_string(),
                group.format_elem(w),
                by_count,
                by_closure,
                by_count == by_closure,
            );
            for (j, dim) in &simple {
                out.push_str(&format!("simple\t{j}\t{dim}\n"));
            }
            out.push_str(&format!("top_simple_dim\t{}\n", dims.top()));
            Ok(out)
        }
        Format::Json => {
            let simple: Vec<Value> = simple
                .iter()
                .map(|(j, dim)| json!({ "block": j, "dim": dim }))
                .collect();
            Ok(pretty(json!({
                "group": group.descriptor().to_string(),
                "w": group.format_elem(w),
                "dim_count": by_count,
                "dim_closure": by_closure,
                "agree": by_count == by_closure,
                "simple": simple,
                "top_simple_dim": dims.top(),
            })))
        }
        Format::Dot => Err(no_dot("whecke")),
    }
}

fn pretty(value: Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("serializable value");
    text.push('\n');
    text
}
