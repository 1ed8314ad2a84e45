use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use specials::classify::{resolve_dual, ClassificationReport};
use specials::fixtures::{fixtures_dir, load_dir, verify};
use specials::group::enumerate_family;
use specials::hj::parse_fraction;
use specials::ladder::{free_cover_rank, syzygy_of};
use specials::resolution::ResolutionGraph;
use specials::{
    batch, build_ar_quiver, classify_with, dual_graph, ext1_profile, free_expansion,
    fundamental_cycle, hj_expand, CountVector, Error, Family, GroupParams, Strategy,
    TranslationQuiver,
};

#[derive(Parser)]
#[command(name = "specials", version, about = "Special CM modules of quotient surface singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Ascii,
}

#[derive(Subcommand)]
enum Command {
    /// Hirzebruch–Jung expansion of r/a
    Hj { fraction: String },
    /// Dual graph of the minimal resolution
    Dualgraph {
        group: GroupParams,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Fundamental cycle by Laufer's algorithm
    Fundcycle { group: GroupParams },
    /// The AR quiver
    Quiver {
        group: GroupParams,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// dim Ext¹(−, R) at every vertex
    Ext1 {
        group: GroupParams,
        #[arg(long)]
        json: bool,
    },
    /// Ω of a vertex: id, name, node@h; a trailing `*` applies the duality
    Syzygy { group: GroupParams, vertex: String },
    /// Unkilled ladder from τ⁻R (or --start)
    Freeexp {
        group: GroupParams,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        start: Option<String>,
    },
    /// Classify the specials and run every cross-check
    Classify {
        group: GroupParams,
        #[arg(long)]
        json: bool,
    },
    /// Classify a whole family into a JSON-lines database
    Batch {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        max_n: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        sequential: bool,
    },
    /// Replay the fixture corpus
    VerifyFixtures {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Check(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn graph_json(g: &ResolutionGraph) -> Result<Value, Failure> {
    let zf = fundamental_cycle(g)?;
    Ok(json!({ "curves": g.curves, "edges": g.edges, "zf": zf }))
}

fn counts_json(q: &TranslationQuiver, v: &CountVector) -> Value {
    json!({
        "counts": v,
        "labels": v.entries().iter().map(|&(x, c)| json!([q.position_label(x), c])).collect::<Vec<_>>(),
    })
}

fn resolve_ref(q: &TranslationQuiver, s: &str) -> Result<usize, Failure> {
    match s.strip_suffix('*') {
        Some(base) => {
            let v = q.resolve(base)?;
            let dual = resolve_dual(q, Strategy::default())?;
            Ok(dual[v])
        }
        None => Ok(q.resolve(s)?),
    }
}

fn report_text(r: &ClassificationReport) -> String {
    let mut s = format!("{}: {} vertices, {} specials\n", r.group, r.vertex_count, r.specials_by_counting.len());
    for (v, pos) in &r.special_positions {
        s.push_str(&format!("  {v:>4}  {pos:<10} rank {}\n", r.ranks[v]));
    }
    s.push_str(&format!("  closed form: {}\n", r.closed_form_labels.join(" ")));
    s.push_str(&format!("  Z_f: {:?}\n", r.zf));
    let mut line = |name: &str, c: &specials::classify::Check| {
        s.push_str(&format!("  {name}: {}", if c.pass { "pass" } else { "FAIL" }));
        if let Some(d) = &c.detail {
            s.push_str(&format!(" ({d})"));
        }
        s.push('\n');
    };
    line("oracle equivalence", &r.checks.oracle_equivalence);
    line("wunram", &r.checks.wunram);
    line("omega duality", &r.checks.omega_duality);
    if let Some(c) = &r.checks.nu_consistency {
        line("nu consistency", c);
    }
    s
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Hj { fraction } => {
            let (r, a) = parse_fraction(&fraction)?;
            let hj = hj_expand(r, a)?;
            println!("{}", json!({ "alphas": hj.alphas, "iseries": hj.iseries }));
        }
        Command::Dualgraph { group, format } => {
            let g = dual_graph(&group);
            match format {
                Format::Dot => print!("{}", g.to_dot(Some(&fundamental_cycle(&g)?))),
                _ => print_json(&graph_json(&g)?),
            }
        }
        Command::Fundcycle { group } => print_json(&graph_json(&dual_graph(&group))?),
        Command::Quiver { group, format } => {
            let q = build_ar_quiver(&group)?;
            match format {
                Format::Json => {
                    let dual = resolve_dual(&q, Strategy::default()).ok();
                    print_json(&serde_json::to_value(q.to_json(dual.as_deref())).expect("serializable"));
                }
                Format::Dot => print!("{}", q.to_dot()),
                Format::Ascii => print!("{}", q.ascii()),
            }
        }
        Command::Ext1 { group, json } => {
            let q = build_ar_quiver(&group)?;
            let p = ext1_profile(&q)?;
            if json {
                let by_id: serde_json::Map<String, Value> =
                    p.iter().enumerate().map(|(v, &c)| (v.to_string(), json!(c))).collect();
                print_json(&Value::Object(by_id));
            } else {
                print!("{}", q.ascii_with(|v| if v == q.r { "R".into() } else { p[v].to_string() }));
            }
        }
        Command::Syzygy { group, vertex } => {
            let q = build_ar_quiver(&group)?;
            let v = resolve_ref(&q, &vertex)?;
            let start = CountVector::unit(v);
            let omega = syzygy_of(&q, &start)?;
            print_json(&json!({
                "vertex": v,
                "position": q.position_label(v),
                "syzygy": counts_json(&q, &omega),
                "cover_rank": free_cover_rank(&q, &start)?,
            }));
        }
        Command::Freeexp { group, steps, start } => {
            let q = build_ar_quiver(&group)?;
            let v = match start {
                Some(s) => resolve_ref(&q, &s)?,
                None => q.tau_inv[q.r],
            };
            let fe = free_expansion(&q, v, steps)?;
            print_json(&json!({ "start": v, "steps": fe.ys }));
        }
        Command::Classify { group, json } => {
            let r = classify_with(&group, Strategy::default())?;
            if json {
                print_json(&serde_json::to_value(&r).expect("serializable"));
            } else {
                print!("{}", report_text(&r));
            }
            if !r.pass {
                return Err(Failure::Check(format!("{group}: cross-checks failed")));
            }
        }
        Command::Batch { family, max_n, out, sequential } => {
            let groups = enumerate_family(family, max_n);
            let strategy = if sequential { Strategy::Sequential } else { Strategy::Parallel };
            let reports = batch(&groups, strategy);
            let mut file = std::fs::File::create(&out)
                .map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
            let mut failed = 0;
            for (g, r) in groups.iter().zip(reports) {
                let line = match r {
                    Ok(rep) if rep.pass => serde_json::to_string(&rep).expect("serializable"),
                    Ok(rep) => {
                        failed += 1;
                        json!({ "group": g, "error": "cross-check failed", "checks": rep.checks }).to_string()
                    }
                    Err(e) => {
                        failed += 1;
                        json!({ "group": g, "error": e.to_string() }).to_string()
                    }
                };
                writeln!(file, "{line}").map_err(|e| Failure::Input(e.to_string()))?;
            }
            eprintln!("{} groups written to {}, {failed} failed", groups.len(), out.display());
            if failed > 0 {
                return Err(Failure::Check(format!("{failed} groups failed")));
            }
        }
        Command::VerifyFixtures { dir } => {
            let dir = dir.unwrap_or_else(fixtures_dir);
            let all = load_dir(&dir)?;
            let mut failed = 0;
            for f in &all {
                match verify(f) {
                    Ok(o) if o.pass => println!("ok    {}", o.id),
                    Ok(o) => {
                        failed += 1;
                        println!("FAIL  {}", o.id);
                        for d in &o.diffs {
                            println!("      {d}");
                        }
                    }
                    Err(e) => {
                        failed += 1;
                        println!("ERROR {}: {e}", f.id);
                    }
                }
            }
            println!("{} fixtures, {failed} failed", all.len());
            if failed > 0 {
                return Err(Failure::Check(format!("{failed} fixtures failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(2)
        }
    }
}
