use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use iccdec::descriptor::{load_descriptor, Construction, DescriptorFile, Subject};
use iccdec::manifold::{poincare_variety, seifert_group, PrimePiece, SeifertInvariants};
use iccdec::oracle::{commutes_with_generators, conjugacy_class_ball, strong_icc_witness, DEFAULT_WINDOW};
use iccdec::{Error, Group, GroupElement, Status, Verdict};

/// Conjugate lists longer than this are summarized by their count.
const LIST_LIMIT: usize = 50;

#[derive(Parser)]
#[command(
    name = "iccdec",
    version,
    about = "Decide whether 3-manifold groups have infinite conjugacy classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the verdict, witness and cited reasons.
    Decide(Common),
    /// The verdict together with the normalized input and group data.
    Explain(Common),
    /// Conjugacy-class growth of one element over Cayley balls.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Word such as "a b' a^2"; defaults to the distinguished element or the first generator.
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value_t = 6)]
        radius: usize,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
    },
    /// Search for a sequence with pairwise distinct conjugates.
    Witness {
        #[command(flatten)]
        common: Common,
        /// Comma-separated nontrivial words; defaults to the verdict's witness element.
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
        #[arg(long, default_value_t = 5)]
        length: usize,
        #[arg(long, default_value_t = 10)]
        radius: usize,
    },
}

#[derive(Args)]
struct Common {
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Decide(c) => {
            let d = load_descriptor(&c.file)?;
            let v = d.decide()?;
            if c.json {
                emit(&verdict_json(&d, &v));
            } else {
                print_verdict(&d, &c.file, &v);
            }
            Ok(exit_for(v.status))
        }
        Command::Explain(c) => {
            let d = load_descriptor(&c.file)?;
            let v = d.decide()?;
            let details = explain(&d);
            if c.json {
                let mut out = verdict_json(&d, &v);
                out["explanation"] = details;
                emit(&out);
            } else {
                print_verdict(&d, &c.file, &v);
                println!("explanation:");
                println!("{}", indent(&serde_json::to_string_pretty(&details).expect("json")));
            }
            Ok(exit_for(v.status))
        }
        Command::Enumerate {
            common,
            element,
            radius,
            window,
        } => {
            let d = load_descriptor(&common.file)?;
            let s = d.subject()?;
            let g = pick_element(&s, element.as_deref())?;
            let report = conjugacy_class_ball(&s.group, &g, radius, window)?;
            let central = commutes_with_generators(&s.group, &g)?;
            let conjugates: Option<Vec<String>> = (report.conjugates.len() <= LIST_LIMIT)
                .then(|| report.conjugates.iter().map(|c| s.group.render(c)).collect());
            if common.json {
                emit(&json!({
                    "element": s.group.render(&g),
                    "radius": radius,
                    "window": window,
                    "counts_by_radius": report.counts_by_radius,
                    "stabilized": report.stabilized,
                    "conjugates": conjugates,
                    "central": central,
                }));
            } else {
                println!("element: {}", s.group.render(&g));
                println!("generators: {}", s.group.generator_names().join(", "));
                println!("counts_by_radius: {:?}", report.counts_by_radius);
                println!(
                    "stabilized: {} (window {window})",
                    if report.stabilized { "yes" } else { "no" }
                );
                match conjugates {
                    Some(list) => println!("conjugates: {}", list.join(", ")),
                    None => println!("conjugates: {} found (list omitted)", report.conjugates.len()),
                }
                if central {
                    println!("note: central (symbolically verified)");
                }
            }
            Ok(0)
        }
        Command::Witness {
            common,
            set,
            length,
            radius,
        } => {
            let d = load_descriptor(&common.file)?;
            let s = d.subject()?;
            let targets = if set.is_empty() {
                vec![default_target(&d, &s)?]
            } else {
                set.iter()
                    .map(|w| s.group.parse_element(w))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let w = strong_icc_witness(&s.group, &targets, length, radius)?;
            let gammas: Vec<String> = w.gammas.iter().map(|x| s.group.render(x)).collect();
            let set_text: Vec<String> = targets.iter().map(|x| s.group.render(x)).collect();
            if common.json {
                emit(&json!({
                    "set": set_text,
                    "requested": length,
                    "verified": w.verified,
                    "radius": w.radius,
                    "sequence": gammas,
                }));
            } else {
                println!("set: {}", set_text.join(", "));
                if w.verified {
                    println!("sequence: {}", gammas.join(", "));
                    println!("verified: {length} elements within radius {}", w.radius);
                } else {
                    println!(
                        "exhausted: only {} of {length} found within radius {}: {}",
                        gammas.len(),
                        w.radius,
                        gammas.join(", ")
                    );
                }
            }
            Ok(0)
        }
    }
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::Icc | Status::NotIcc => 0,
        Status::Unknown => 2,
    }
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}")).collect::<Vec<_>>().join("\n")
}

fn verdict_json(d: &DescriptorFile, v: &Verdict) -> Value {
    json!({
        "name": d.name(),
        "type": d.kind(),
        "status": v.status,
        "witness": v.witness,
        "reasons": v.reasons,
    })
}

fn print_verdict(d: &DescriptorFile, path: &Path, v: &Verdict) {
    let title = d
        .name()
        .map(str::to_string)
        .unwrap_or_else(|| path.display().to_string());
    println!("{title} ({}): {}", d.kind(), v.status);
    if let Some(w) = &v.witness {
        println!("witness: {}", w.description);
        println!("  {}", w.finite_class);
    }
    println!("reasons:");
    for (i, c) in v.reasons.0.iter().enumerate() {
        println!("  {}. {c}", i + 1);
    }
}

fn pick_element(s: &Subject, word: Option<&str>) -> Result<GroupElement, Error> {
    match (word, &s.distinguished) {
        (Some(w), _) => s.group.parse_element(w),
        (None, Some(x)) if !s.group.is_identity(x) => Ok(x.clone()),
        _ => (0..s.group.generators().len())
            .map(|i| s.group.generator(i))
            .find(|g| !matches!(g, Ok(x) if s.group.is_identity(x)))
            .unwrap_or_else(|| Err(Error::Usage("the group is trivial; give a nontrivial element".into()))),
    }
}

/// The verdict's witness element when it lives in this group, so that a
/// NotICC verdict is probed at its finite class.
fn default_target(d: &DescriptorFile, s: &Subject) -> Result<GroupElement, Error> {
    if let Some((g, x)) = d.decide()?.witness_element() {
        if let Ok(y) = s.group.parse_element(&g.render(x)) {
            if !s.group.is_identity(&y) {
                return Ok(y);
            }
        }
    }
    pick_element(s, None)
}

fn seifert_json(s: &SeifertInvariants) -> Value {
    match seifert_group(s) {
        Ok(sg) => json!({
            "generators": sg.generators,
            "relations": sg.relations,
            "fiber": sg.fiber_word,
            "fiber_central": sg.fiber_central,
            "order": sg.order,
            "realized": sg.realization.is_some(),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn group_json(g: &Group, distinguished: Option<&GroupElement>) -> Value {
    json!({
        "generators": g.generator_names(),
        "order": g.order(),
        "distinguished": distinguished.map(|x| g.render(x)),
    })
}

fn explain(d: &DescriptorFile) -> Value {
    let mut out = json!({});
    match d {
        DescriptorFile::Manifold(f) => {
            let p = poincare_variety(&f.descriptor());
            out["poincare_variety"] = serde_json::to_value(&p.pieces).expect("json");
            let seifert: Vec<Value> = p
                .pieces
                .iter()
                .filter_map(|piece| match piece {
                    PrimePiece::Seifert(s) => Some(seifert_json(s)),
                    _ => None,
                })
                .collect();
            if !seifert.is_empty() {
                out["seifert_pieces"] = Value::Array(seifert);
            }
        }
        DescriptorFile::Group(f) => {
            if let Construction::Seifert(s) = &f.construction {
                out["seifert"] = seifert_json(s);
            }
        }
        _ => {}
    }
    out["group"] = match d.subject() {
        Ok(s) => group_json(&s.group, s.distinguished.as_ref()),
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    out
}
