//! Command-line front end. The binary is a thin wrapper over [`run`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::engine::{run_layers, Consultation, KnowledgeBase};
use crate::error::Error;
use crate::explain::{
    certainty_view, diagnose_imprecision, explain_mainly, explain_negative, explain_positive, sensitivity,
    surprise_degree, trace_how, WhyAnswer,
};
use crate::fuzzy::{Degree, FuzzySubset};
use crate::ruleio::{parse_facts, parse_kb, render_diagnostics, ParseOptions};

#[derive(Debug, Parser)]
#[command(name = "possibilist", version, about = "Possibilistic rule-based inference with explanations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Debug, Args)]
struct Inputs {
    /// Knowledge base file.
    #[arg(long, requires = "facts", conflicts_with = "replay")]
    kb: Option<PathBuf>,
    /// Facts file.
    #[arg(long, requires = "kb")]
    facts: Option<PathBuf>,
    /// Accept subnormal facts.
    #[arg(long)]
    permissive: bool,
    /// Consultation trace written by `consult --trace`, instead of --kb/--facts.
    #[arg(long)]
    replay: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a consultation and print the derived distributions.
    Consult {
        #[command(flatten)]
        inputs: Inputs,
        /// Also print the atom table and rule matrix of each group.
        #[arg(long)]
        atoms: bool,
        /// Write the full consultation trace as JSON, for --replay.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Explain a result.
    Explain {
        #[arg(value_enum)]
        query: Query,
        /// `attribute` or `attribute=element`.
        target: String,
        /// Degree for why-at-least / why-at-most.
        degree: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
        /// Degree for why-* queries, or display threshold for `how`.
        #[arg(long)]
        threshold: Option<String>,
        /// Belief for `surprise`, as `elem[:degree], ...`.
        #[arg(long)]
        belief: Option<String>,
        /// Include rule-uncertainty contributors.
        #[arg(long)]
        rules: bool,
        /// Write conditions as λ_i / ρ_i instead of the rules' phrasings.
        #[arg(long)]
        symbolic: bool,
    },
    /// How one degree varies with each rule input.
    Sensitivity {
        /// `attribute=element`.
        target: String,
        /// Single input column, e.g. `R2.holds` or `R1.fails`.
        #[arg(long)]
        input: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Query {
    How,
    Mainly,
    WhyAtLeast,
    WhyAtMost,
    Certainty,
    Surprise,
    Imprecision,
}

/// Failure that ends the command: exit 1 for input problems, 2 for usage.
struct Fail {
    code: i32,
    message: String,
}

fn input_error(message: impl Into<String>) -> Fail {
    Fail {
        code: 1,
        message: message.into(),
    }
}

fn usage(message: impl Into<String>) -> Fail {
    Fail {
        code: 2,
        message: message.into(),
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        input_error(format!("error: {e}"))
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: error: {}", path.display(), e)))
}

fn load_kb(path: &Path) -> Result<KnowledgeBase, Fail> {
    parse_kb(&read(path)?).map_err(|d| input_error(render_diagnostics(&path.display().to_string(), &d)))
}

fn consult(inputs: &Inputs) -> Result<Consultation, Fail> {
    if let Some(p) = &inputs.replay {
        return Consultation::from_json(&read(p)?).map_err(|e| input_error(format!("{}: error: {}", p.display(), e)));
    }
    let (Some(kb_path), Some(facts_path)) = (&inputs.kb, &inputs.facts) else {
        return Err(usage("error: give --kb and --facts, or --replay"));
    };
    let kb = load_kb(kb_path)?;
    let options = ParseOptions {
        permissive: inputs.permissive,
    };
    let facts = parse_facts(&read(facts_path)?, &kb, options)
        .map_err(|d| input_error(render_diagnostics(&facts_path.display().to_string(), &d)))?;
    Ok(run_layers(&kb, &facts)?)
}

fn split_target(target: &str) -> (&str, Option<&str>) {
    match target.split_once('=') {
        Some((a, e)) => (a.trim(), Some(e.trim())),
        None => (target.trim(), None),
    }
}

fn need_element(target: &str) -> Result<(&str, &str), Fail> {
    match split_target(target) {
        (a, Some(e)) if !a.is_empty() && !e.is_empty() => Ok((a, e)),
        _ => Err(usage(format!("error: expected `attribute=element`, got `{target}`"))),
    }
}

fn parse_degree(s: &str) -> Result<Degree, Fail> {
    s.parse::<Degree>()
        .map_err(|e| usage(format!("error: invalid degree `{s}`: {e}")))
}

fn structured(v: &impl serde::Serialize) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    serde_json::to_string_pretty(&value).expect("serializable") + "\n"
}

fn degree_map<'a>(it: impl Iterator<Item = (&'a str, Degree)>) -> Value {
    let mut m = Map::new();
    for (e, d) in it {
        m.insert(e.to_string(), json!(d));
    }
    Value::Object(m)
}

fn render_consult(c: &Consultation, atoms: bool, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut derived = Map::new();
            for g in &c.groups {
                let atom_rows: Vec<Value> = g
                    .atoms
                    .iter()
                    .enumerate()
                    .map(|(k, a)| json!({"members": a.members, "degree": g.output.0[k], "row": g.matrix.matrix.row(k)}))
                    .collect();
                let columns: Vec<String> = g.matrix.columns().map(|col| g.matrix.column_label(col)).collect();
                derived.insert(
                    g.attribute.clone(),
                    json!({
                        "layer": g.layer,
                        "distribution": degree_map(g.distribution.iter()),
                        "subnormality": g.distribution.subnormality(),
                        "atoms": atom_rows,
                        "columns": columns,
                        "input": g.input.0,
                    }),
                );
            }
            let mut facts = Map::new();
            for f in &c.facts {
                facts.insert(
                    f.attribute.clone(),
                    json!({"given": f.given, "distribution": degree_map(f.distribution.iter())}),
                );
            }
            structured(&json!({"derived": derived, "facts": facts}))
        }
        Format::Human => {
            let mut out = String::new();
            if c.groups.is_empty() {
                out.push_str("no rules: nothing derived\n");
            }
            for g in &c.groups {
                let _ = writeln!(out, "{}", g.attribute);
                let width = g.distribution.domain().elements().iter().map(|e| e.chars().count()).max().unwrap_or(0);
                for (e, d) in g.distribution.iter() {
                    let _ = writeln!(out, "  {e:<width$}  {d}");
                }
                let sub = g.distribution.subnormality();
                if !sub.is_zero() {
                    let _ = writeln!(out, "  (subnormal by {sub})");
                }
                if atoms {
                    let columns: Vec<String> = g.matrix.columns().map(|col| g.matrix.column_label(col)).collect();
                    let _ = writeln!(out, "  atoms over [{}]:", columns.join(", "));
                    let inputs: Vec<String> = g.input.0.iter().map(ToString::to_string).collect();
                    let _ = writeln!(out, "    input [{}]", inputs.join(" "));
                    for (k, a) in g.atoms.iter().enumerate() {
                        let row: Vec<String> = g.matrix.matrix.row(k).iter().map(ToString::to_string).collect();
                        let _ = writeln!(out, "    {} [{}] -> {}", a.label(), row.join(" "), g.output.0[k]);
                    }
                }
            }
            out
        }
    }
}

fn explain(
    c: &Consultation,
    query: Query,
    target: &str,
    degree: Option<&str>,
    threshold: Option<&str>,
    belief: Option<&str>,
    include_rules: bool,
    symbolic: bool,
    format: Format,
) -> Result<String, Fail> {
    let human = format == Format::Human;
    match query {
        Query::How => {
            let (attribute, _) = split_target(target);
            let t = threshold.map(parse_degree).transpose()?.unwrap_or(Degree::ZERO);
            let h = trace_how(c, attribute, t)?;
            Ok(if human { h.render() } else { structured(&h) })
        }
        Query::Mainly => {
            let (attribute, element) = need_element(target)?;
            let b = explain_mainly(c, attribute, element)?;
            Ok(if human { b.render(c, include_rules) } else { structured(&b) })
        }
        Query::WhyAtLeast | Query::WhyAtMost => {
            let (attribute, element) = need_element(target)?;
            let raw = degree
                .or(threshold)
                .ok_or_else(|| usage("error: why-at-least / why-at-most need a degree"))?;
            let t = parse_degree(raw)?;
            let a: WhyAnswer = if query == Query::WhyAtLeast {
                explain_positive(c, attribute, element, t)?
            } else {
                explain_negative(c, attribute, element, t)?
            };
            Ok(if human { a.render(c, !symbolic) } else { structured(&a) })
        }
        Query::Certainty => {
            let (attribute, element) = need_element(target)?;
            let v = certainty_view(c, attribute, element)?;
            Ok(if human { v.render(c, include_rules) } else { structured(&v) })
        }
        Query::Surprise => {
            let (attribute, _) = split_target(target);
            let dist = c.distribution(attribute)?;
            let b = match belief {
                Some(spec) => parse_belief(spec, dist.domain())?,
                None => c
                    .belief(attribute)
                    .cloned()
                    .ok_or_else(|| input_error(format!("error: no belief for `{attribute}`; give --belief")))?,
            };
            let s = surprise_degree(dist, &b)?;
            Ok(if human {
                format!(
                    "surprise {s}: the conclusion on {attribute} agrees with the belief at most at the degree {}\n",
                    s.complement()
                )
            } else {
                structured(&json!({"attribute": attribute, "surprise": s, "consistency": s.complement()}))
            })
        }
        Query::Imprecision => {
            let (attribute, _) = split_target(target);
            let d = diagnose_imprecision(c, attribute)?;
            Ok(if human { d.render(c) } else { structured(&d) })
        }
    }
}

fn parse_belief(spec: &str, domain: &std::sync::Arc<crate::fuzzy::Domain>) -> Result<FuzzySubset, Fail> {
    let mut pairs: Vec<(&str, Degree)> = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (e, d) = match item.split_once(':') {
            Some((e, d)) => (e.trim(), parse_degree(d)?),
            None => (item, Degree::ONE),
        };
        pairs.push((e, d));
    }
    let set = FuzzySubset::from_pairs(domain.clone(), &pairs)?;
    if !set.is_normalized() {
        return Err(input_error("error: the belief must contain an element at degree 1"));
    }
    Ok(set)
}

fn dispatch(cli: Cli) -> Result<String, Fail> {
    match cli.command {
        Command::Consult { inputs, atoms, trace } => {
            let c = consult(&inputs)?;
            if let Some(p) = trace {
                std::fs::write(&p, c.to_json() + "\n")
                    .map_err(|e| input_error(format!("{}: error: {}", p.display(), e)))?;
            }
            Ok(render_consult(&c, atoms, inputs.format))
        }
        Command::Explain {
            query,
            target,
            degree,
            inputs,
            threshold,
            belief,
            rules,
            symbolic,
        } => {
            let c = consult(&inputs)?;
            explain(
                &c,
                query,
                &target,
                degree.as_deref(),
                threshold.as_deref(),
                belief.as_deref(),
                rules,
                symbolic,
                inputs.format,
            )
        }
        Command::Sensitivity { target, input, inputs } => {
            let (attribute, element) = need_element(&target)?;
            let c = consult(&inputs)?;
            let curves = sensitivity(&c, attribute, element, input.as_deref())?;
            if inputs.format == Format::Structured {
                return Ok(structured(&curves));
            }
            let mut out = format!("{attribute} = {element} against each rule input:\n");
            for s in curves {
                let k = s.curve;
                if k.is_constant() {
                    let _ = writeln!(out, "  {} (now {}): no effect, stays {}", s.input, s.current, k.cap);
                } else {
                    let _ = writeln!(
                        out,
                        "  {} (now {}): {} while the input is at most {}, then follows it up to {}",
                        s.input, s.current, k.floor, k.floor, k.cap
                    );
                }
            }
            Ok(out)
        }
    }
}

/// Runs the command line `args` (program name first). Returns the exit
/// code: 0 on success, 1 on bad input files or unknown names, 2 on usage
/// errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            let mut m = f.message;
            if !m.ends_with('\n') {
                m.push('\n');
            }
            let _ = err.write_all(m.as_bytes());
            f.code
        }
    }
}
