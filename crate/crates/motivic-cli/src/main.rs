//! `motivic` — command-line interface to the R-motivic Steenrod algebra
//! library: Adem reduction, the 128-structure family on `A^R(1)`, cofiber
//! splittings, realization functors, the Smith construction, obstruction
//! scans, and end-to-end theorem verification.
//!
//! Exit codes: 0 on success, 1 on mathematical failure, 2 on usage errors
//! (malformed expressions, vectors, or JSON).

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use motivic::a1cls::{verify_all, verify_theorem, Report, TheoremTag};
use motivic::fmodule::{
    a1_module, enumerate_structures, freeness_certificate, ses_split, structure_vector, FModule,
    Freeness, StructureVector,
};
use motivic::ground::monomial_string;
use motivic::obstruction::{brute_force_scan, instance, window_scan, ScanMode, ScanResult};
use motivic::realize::{geometric_fixed_points, underlying};
use motivic::smith::{build_a2, build_btilde2, check_lemma57, check_rmk59, iota_actions};
use motivic::steenrod::Subalgebra;
use motivic::text::{parse_expression, parse_vector};

#[derive(Parser)]
#[command(name = "motivic", version, about = "Exact R-motivic Steenrod algebra computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Adem-reduce an expression to admissible normal form.
    Adem {
        #[command(subcommand)]
        command: AdemCommand,
    },
    /// The family of A^R-module structures on A^R(1).
    A1 {
        #[command(subcommand)]
        command: A1Command,
    },
    /// Underlying (C-motivic/classical) and geometric-fixed-point functors.
    Realize {
        #[command(subcommand)]
        command: RealizeCommand,
    },
    /// The Smith construction of A₂^R and B̃^R(2).
    Smith {
        #[command(subcommand)]
        command: SmithCommand,
    },
    /// May-E₁ vanishing-window obstruction scans.
    Obstruction {
        #[command(subcommand)]
        command: ObstructionCommand,
    },
    /// End-to-end verification of the named results.
    Verify {
        /// THM_1_1, THM_1_3, THM_1_6, THM_4_2, THM_4_4, JOKER,
        /// THM_1_10_PRECONDITION, or `all`.
        #[arg(long)]
        theorem: String,
    },
    /// Module JSON utilities.
    Module {
        #[command(subcommand)]
        command: ModuleCommand,
    },
}

#[derive(Subcommand)]
enum AdemCommand {
    /// Reduce an expression such as "Sq2 Sq2" or "t Sq4 Sq2 + Sq1".
    Reduce { expr: String },
}

#[derive(Args)]
struct VectorArg {
    /// Structure vector a03,b03,b14,b06,b25,b26,g36 as seven bits.
    #[arg(long)]
    vector: String,
}

#[derive(Subcommand)]
enum A1Command {
    /// Enumerate all Adem-consistent structures.
    Enumerate {
        /// Write the full family as JSON to this path.
        #[arg(long)]
        json: Option<String>,
    },
    /// Show the module for one structure vector.
    Show {
        #[command(flatten)]
        vector: VectorArg,
        /// Emit a DOT cell diagram instead of text.
        #[arg(long)]
        dot: bool,
        /// Write the module JSON to this path (`-` for stdout).
        #[arg(long)]
        json: Option<String>,
    },
    /// Split the module into its two question-mark pieces.
    Cofiber {
        #[command(flatten)]
        vector: VectorArg,
    },
}

#[derive(Subcommand)]
enum RealizeCommand {
    /// The underlying classical A(1)-module A₁[a,b].
    Underlying {
        #[command(flatten)]
        vector: VectorArg,
    },
    /// The geometric-fixed-points module Φ.
    Phi {
        #[command(flatten)]
        vector: VectorArg,
    },
}

#[derive(Subcommand)]
enum SmithCommand {
    /// Build A₂^R = Σ^{−5,−1} ē(K^⊗6) and report its shape.
    BuildA2 {
        /// Also certify A^R(2)-freeness and the §5 closure identities.
        #[arg(long)]
        verify: bool,
    },
    /// Print the ι-action table (Sq¹ι, Sq²ι, Sq⁴ι, Q̃₂ι, Q₂ι).
    IotaTable,
}

#[derive(Subcommand)]
enum ObstructionCommand {
    /// Scan a vanishing window.
    Scan {
        /// Instance: a1, b1, or z.
        #[arg(long)]
        instance: String,
        /// Mode: existence or uniqueness.
        #[arg(long)]
        mode: String,
        /// Cross-check against the bounded brute-force oracle.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Validate a module JSON file against the Adem relations.
    Validate { file: String },
}

const USAGE: u8 = 2;
const MATH: u8 = 1;

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn vector(arg: &VectorArg) -> Result<StructureVector, ExitCode> {
    parse_vector(&arg.vector).map_err(|e| fail(USAGE, format!("--vector: {e}")))
}

/// DOT cell diagram: Sq¹ black, Sq² blue, Sq⁴ red, higher squares gray;
/// τ-twisted targets dashed.
fn to_dot(m: &FModule) -> String {
    let mut out = String::from("digraph module {\n  rankdir=BT;\n  node [shape=circle];\n");
    for g in &m.generators {
        out.push_str(&format!("  {} [label=\"{} {}\"];\n", g.name, g.name, g.deg));
    }
    for (&g, table) in &m.tables {
        let color = match g {
            1 => "black",
            2 => "blue",
            4 => "red",
            _ => "gray",
        };
        for (i, row) in table.iter().enumerate() {
            for (j, c) in row.comps() {
                for (a, b) in c.monomials() {
                    let style = if a > 0 { "dashed" } else { "solid" };
                    let label = match monomial_string(a, b).as_str() {
                        "1" => String::new(),
                        s => format!(", label=\"{s}\""),
                    };
                    out.push_str(&format!(
                        "  {} -> {} [color={color}, style={style}{label}];\n",
                        m.generators[i].name, m.generators[j].name
                    ));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

fn print_module_text(m: &FModule) {
    for g in &m.generators {
        println!("{} {}", g.name, g.deg);
    }
    for (&g, table) in &m.tables {
        for (i, row) in table.iter().enumerate() {
            if !row.is_zero() {
                println!("Sq{g} {} = {}", m.generators[i].name, m.display_element(row));
            }
        }
    }
}

fn write_json(path: &str, value: &serde_json::Value) -> Result<(), ExitCode> {
    let text = format!("{}\n", serde_json::to_string_pretty(value).expect("serializable"));
    if path == "-" {
        print!("{text}");
        std::io::stdout().flush().ok();
        Ok(())
    } else {
        std::fs::write(path, text).map_err(|e| fail(USAGE, format!("cannot write {path}: {e}")))
    }
}

fn print_report(r: &Report) {
    println!("{}", serde_json::to_string_pretty(&r).expect("serializable report"));
}

fn run() -> Result<(), ExitCode> {
    match Cli::parse().command {
        Command::Adem { command: AdemCommand::Reduce { expr } } => {
            let reduced = parse_expression(&expr).map_err(|e| fail(USAGE, e))?;
            println!("{reduced}");
        }
        Command::A1 { command } => match command {
            A1Command::Enumerate { json } => {
                let family = enumerate_structures();
                if let Some(path) = json {
                    let items: Result<Vec<serde_json::Value>, ExitCode> = family
                        .iter()
                        .map(|m| {
                            let v = structure_vector(m).map_err(|e| fail(MATH, e))?;
                            Ok(serde_json::json!({ "vector": v.to_vec(), "module": m.to_json() }))
                        })
                        .collect();
                    write_json(&path, &serde_json::Value::Array(items?))?;
                }
                println!("{} structures", family.len());
                if family.len() != 128 {
                    return Err(fail(MATH, "expected 128 structures"));
                }
            }
            A1Command::Show { vector: v, dot, json } => {
                let m = a1_module(vector(&v)?);
                m.validate(9).map_err(|e| fail(MATH, e))?;
                if let Some(path) = json {
                    write_json(&path, &m.to_json())?;
                } else if dot {
                    print!("{}", to_dot(&m));
                } else {
                    print_module_text(&m);
                }
            }
            A1Command::Cofiber { vector: v } => {
                let m = a1_module(vector(&v)?);
                let split = ses_split(&m).map_err(|e| fail(MATH, e))?;
                println!("attaching types: epsilon={}, delta={}", split.epsilon, split.delta);
                println!("sub:");
                print_module_text(&split.sub);
                println!("quotient:");
                print_module_text(&split.quotient);
            }
        },
        Command::Realize { command } => {
            let (m, label) = match &command {
                RealizeCommand::Underlying { vector: v } => {
                    (underlying(&a1_module(vector(v)?)), "underlying")
                }
                RealizeCommand::Phi { vector: v } => {
                    (geometric_fixed_points(&a1_module(vector(v)?)), "phi")
                }
            };
            m.validate().map_err(|e| fail(MATH, e))?;
            println!("{label}:");
            println!("{}", serde_json::to_string_pretty(&m.to_json()).expect("serializable"));
        }
        Command::Smith { command } => match command {
            SmithCommand::BuildA2 { verify } => {
                let a2 = build_a2().map_err(|e| fail(MATH, e))?;
                let first = a2.module.generators.first().expect("nonempty");
                let last = a2.module.generators.last().expect("nonempty");
                println!(
                    "A2^R: {} M-generators, degrees {} .. {}",
                    a2.module.generators.len(),
                    first.deg,
                    last.deg
                );
                println!("iota image unique: {}", a2.iota_image_unique);
                if verify {
                    let sub = Subalgebra::span(2, 23);
                    match freeness_certificate(&a2.module, &sub) {
                        Freeness::Free { rank, .. } => println!("A^R(2)-free of rank {rank}"),
                        Freeness::NotFree { reason } => {
                            return Err(fail(MATH, format!("not A^R(2)-free: {reason}")))
                        }
                    }
                    check_lemma57().map_err(|e| fail(MATH, e))?;
                    println!("closure identities: ok");
                    check_rmk59(&sub).map_err(|e| fail(MATH, e))?;
                    println!("degree-(8,4) non-membership: ok");
                    let b = build_btilde2(&sub).map_err(|e| fail(MATH, e))?;
                    println!("Btilde^R(2): {} M-generators", b.module.generators.len());
                }
            }
            SmithCommand::IotaTable => {
                let mut ok = true;
                for action in iota_actions() {
                    println!("{} = {}", action.label, action.computed.display());
                    if action.computed != action.golden {
                        ok = false;
                        eprintln!("  MISMATCH with the displayed formula");
                    }
                }
                if !ok {
                    return Err(fail(MATH, "iota table differs from the displayed formulas"));
                }
            }
        },
        Command::Obstruction { command: ObstructionCommand::Scan { instance: name, mode, check } } => {
            let (e1, d) =
                instance(&name).ok_or_else(|| fail(USAGE, format!("unknown instance `{name}`")))?;
            let mode = match mode.as_str() {
                "existence" => ScanMode::Existence,
                "uniqueness" => ScanMode::Uniqueness,
                other => return Err(fail(USAGE, format!("unknown mode `{other}`"))),
            };
            let result = window_scan(&e1, &d, mode);
            if check {
                let oracle = brute_force_scan(&e1, &d, mode, 6, 12);
                if result != oracle {
                    return Err(fail(MATH, "window_scan disagrees with the brute-force oracle"));
                }
            }
            match result {
                ScanResult::Empty => println!("EMPTY (Toda condition satisfied)"),
                ScanResult::Witness(w) => println!("WITNESS {}", w.display()),
            }
        }
        Command::Verify { theorem } => {
            let reports: Vec<Report> = if theorem.eq_ignore_ascii_case("all") {
                verify_all()
            } else {
                let tag = TheoremTag::parse(&theorem)
                    .ok_or_else(|| fail(USAGE, format!("unknown theorem tag `{theorem}`")))?;
                vec![verify_theorem(tag)]
            };
            let mut all_pass = true;
            for r in &reports {
                print_report(r);
                all_pass &= r.passed();
            }
            if !all_pass {
                return Err(ExitCode::from(MATH));
            }
        }
        Command::Module { command: ModuleCommand::Validate { file } } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| fail(USAGE, format!("cannot read {file}: {e}")))?;
            let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
                fail(USAGE, format!("{file}: malformed JSON at line {} column {}", e.line(), e.column()))
            })?;
            let m = FModule::from_json(&value).map_err(|e| fail(USAGE, format!("{file}: {e}")))?;
            m.validate(9).map_err(|e| fail(MATH, format!("{file}: {e}")))?;
            println!("ok: {} generators, {} action tables", m.generators.len(), m.tables.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
