//! Command-line surface: group info, graph building and folding,
//! realizability verdicts, the toric resolution and the full cyclic
//! McKay verification.
//!
//! Exit codes: 0 success / 1 verification failure or not realizable /
//! 2 unknown verdict / 64 usage error.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mckay::galois::{FieldSpec, FormKind, GaloisForm};
use mckay::graphs::{self, EmitFormat, McKayGraph};
use mckay::groups::{character_table, verify_table, GroupId};
use mckay::realize::{realizable, Verdict, WitnessMatrices};
use mckay::selftest;
use mckay::toric;

const EXIT_USAGE: u8 = 64;
const EXIT_FAIL: u8 = 1;

#[derive(Parser)]
#[command(
    name = "mckay",
    version,
    about = "McKay correspondence for finite subgroup schemes of SL(2,K), in exact arithmetic",
    long_about = None,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the character table of a group (cyclic:n | bd:n | bt | bo | bi)
    Info { group: String },
    /// Build the split representation graph over C
    Graph {
        group: String,
        /// Drop the trivial vertex
        #[arg(long)]
        non_extended: bool,
        /// Output format: text | dot | json
        #[arg(long, default_value = "text")]
        output: String,
    },
    /// Fold the representation graph over a field K
    Fold {
        group: String,
        /// Field as m=<m>,H=<k1,k2,...> (m=1,H= is Q; empty H is Q(zeta_m))
        #[arg(long)]
        field: String,
        /// Form kind: constant | mu | twisted
        #[arg(long, default_value = "constant")]
        form: String,
        #[arg(long)]
        non_extended: bool,
        #[arg(long, default_value = "text")]
        output: String,
    },
    /// Decide realizability of the group inside SL(2, K)
    Realizable {
        group: String,
        #[arg(long)]
        field: String,
        /// Height bound for the conic search over K
        #[arg(long, default_value_t = 50)]
        bound: u64,
    },
    /// Toric resolution data of the A_{n-1} singularity
    ResolveCyclic {
        n: u64,
        /// Cyclic form kind: constant | mu
        #[arg(long, default_value = "constant")]
        form: String,
        #[arg(long, default_value = "text")]
        output: String,
    },
    /// Full cyclic McKay cross-check for one form
    VerifyMckay {
        n: u64,
        #[arg(long, default_value = "constant")]
        form: String,
    },
    /// Run the acceptance suite
    Selftest,
}

fn parse_output(s: &str) -> mckay::Result<Option<EmitFormat>> {
    match s {
        "text" => Ok(None),
        "dot" => Ok(Some(EmitFormat::Dot)),
        "json" => Ok(Some(EmitFormat::Json)),
        other => Err(mckay::Error::Parse(format!(
            "unknown output format '{other}' (expected text|dot|json)"
        ))),
    }
}

fn graph_text(g: &McKayGraph) -> String {
    let mut out = String::new();
    if let Some(label) = &g.label {
        out.push_str(&format!("label: {label}\n"));
    }
    out.push_str(&format!(
        "{} graph, {} vertices\n",
        if g.extended { "extended" } else { "non-extended" },
        g.num_vertices()
    ));
    for (i, v) in g.vertices.iter().enumerate() {
        out.push_str(&format!(
            "  [{i}] {}  mult={} degree={} loops={}{}\n",
            v.label,
            v.mult,
            v.degree,
            g.loops(i),
            if v.trivial { " (trivial)" } else { "" }
        ));
    }
    for i in 0..g.num_vertices() {
        for j in (i + 1)..g.num_vertices() {
            if g.adjacency[i][j] > 0 {
                out.push_str(&format!("  [{i}] -- [{j}]  x{}\n", g.adjacency[i][j]));
            }
        }
    }
    out
}

fn print_graph(mut g: McKayGraph, output: Option<EmitFormat>) -> mckay::Result<()> {
    let label = graphs::classify(&g)
        .map(|l| format!("{} / Dynkin {}", l.name(), l.dynkin()))
        .ok();
    g.label = label;
    match output {
        None => print!("{}", graph_text(&g)),
        Some(f) => println!("{}", graphs::emit(&g, f)),
    }
    Ok(())
}

fn cyclic_form(n: u64, form: &str) -> mckay::Result<GaloisForm> {
    let kind = FormKind::parse(form)?;
    if kind == FormKind::TwistedBD {
        return Err(mckay::Error::Parse(
            "twisted form is binary dihedral, not cyclic".into(),
        ));
    }
    GaloisForm::new(GroupId::Cyclic(n), FieldSpec::real_subfield(n), kind)
}

fn run(cli: Cli) -> mckay::Result<u8> {
    match cli.command {
        Command::Info { group } => {
            let id = GroupId::parse(&group)?;
            let table = character_table(id)?;
            println!("group: {id}  order {}", id.order());
            print!("{}", table.layout());
            let report = verify_table(&table);
            print!("{report}");
            Ok(if report.pass() { 0 } else { EXIT_FAIL })
        }
        Command::Graph {
            group,
            non_extended,
            output,
        } => {
            let id = GroupId::parse(&group)?;
            let table = character_table(id)?;
            let g = graphs::build_graph(&table, None, !non_extended)?;
            print_graph(g, parse_output(&output)?)?;
            Ok(0)
        }
        Command::Fold {
            group,
            field,
            form,
            non_extended,
            output,
        } => {
            let id = GroupId::parse(&group)?;
            let field = FieldSpec::parse(&field)?;
            let kind = FormKind::parse(&form)?;
            let form = GaloisForm::new(id, field, kind)?;
            let ctx = mckay::galois::FoldContext::new(form)?;
            let g = graphs::build_from_context(&ctx, !non_extended)?;
            print_graph(g, parse_output(&output)?)?;
            Ok(0)
        }
        Command::Realizable {
            group,
            field,
            bound,
        } => {
            let id = GroupId::parse(&group)?;
            let field = FieldSpec::parse(&field)?;
            let verdict = realizable(id, &field, bound)?;
            println!("group: {id}");
            println!("field: {}", field.describe());
            match &verdict {
                Verdict::Realizable { witness } => {
                    println!("verdict: Realizable");
                    match witness {
                        Some(WitnessMatrices::Single(m)) => {
                            println!("witness: {}", m.minimized());
                        }
                        Some(WitnessMatrices::Pair(a, b)) => {
                            println!("witness 1: {}", a.minimized());
                            println!("witness 2: {}", b.minimized());
                        }
                        None => println!("witness: none found within the bound"),
                    }
                }
                Verdict::NotRealizable { obstruction } => {
                    println!("verdict: NotRealizable");
                    println!("certificate: {obstruction}");
                }
                Verdict::Unknown { height_bound } => {
                    println!("verdict: Unknown (search exhausted at height {height_bound})");
                }
            }
            Ok(verdict.exit_code() as u8)
        }
        Command::ResolveCyclic { n, form, output } => {
            let form = cyclic_form(n, &form)?;
            let fan = toric::build_fan(n)?;
            println!("fan rays (ambient), N'-coordinates:");
            for (i, (v, w)) in fan.rays.iter().zip(&fan.rays_nprime).enumerate() {
                println!("  v_{i} = ({}, {})   N' ({}, {})", v.0, v.1, w.0, w.1);
            }
            println!("charts (exponents of s_i, t_i in M):");
            for (i, (s, t)) in fan.charts.iter().enumerate() {
                println!(
                    "  U_{i}: s = x1^{} x2^{}, t = x1^{} x2^{}",
                    s.0, s.1, t.0, t.1
                );
            }
            println!("exceptional curves:");
            for c in fan.curves()? {
                println!(
                    "  E_{} in charts U_{}, U_{}  E.E = {}",
                    c.index, c.charts.0, c.charts.1, c.self_intersection
                );
            }
            println!(
                "self-intersections: {:?}",
                toric::self_intersections(&fan)?
            );
            let constant_action = |i: u64| n - i;
            let action: Option<&dyn Fn(u64) -> u64> = match form.kind {
                FormKind::MuCyclic => None,
                _ => Some(&constant_action),
            };
            let g = toric::intersection_graph(&fan, action)?;
            println!("intersection graph:");
            print_graph(g, parse_output(&output)?)?;
            println!("tautological degree matrix:");
            for row in toric::tautological_degrees(n)? {
                println!("  {row:?}");
            }
            let report = toric::verify_mckay_cyclic(n, &form)?;
            print!("{report}");
            Ok(if report.pass() { 0 } else { EXIT_FAIL })
        }
        Command::VerifyMckay { n, form } => {
            let form = cyclic_form(n, &form)?;
            let report = toric::verify_mckay_cyclic(n, &form)?;
            print!("{report}");
            Ok(if report.pass() { 0 } else { EXIT_FAIL })
        }
        Command::Selftest => {
            let mut all_pass = true;
            for report in selftest::run_all()? {
                let pass = report.pass();
                all_pass &= pass;
                println!(
                    "{}: {}",
                    report.title,
                    if pass { "PASS" } else { "FAIL" }
                );
                if !pass {
                    print!("{report}");
                }
            }
            Ok(if all_pass { 0 } else { EXIT_FAIL })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep clap's help/version on stdout with success, but map
            // genuine usage errors to exit code 64
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(
            e @ (mckay::Error::Parse(_)
            | mckay::Error::InvalidGroup(_)
            | mckay::Error::InvalidField(_)
            | mckay::Error::InvalidForm(_)),
        ) => {
            eprintln!("usage error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
