//! The `boundquiver` command line.

use std::ffi::OsString;
use std::path::PathBuf;

use boundquiver_core::algebra::DEFAULT_SUBEXPRESSION_CAP;
use boundquiver_core::automorphism::decreasing_normal_form;
use boundquiver_core::gamma::certify_universal;
use boundquiver_core::{
    AdmissibleIdeal, ArrowSubstitution, DecreasingProduct, GammaGraph, GammaOptions,
    HomotopyRelation, PathOrder, PathVector, Quiver, Scalar, SeedSearch, TransvectionWord, Vertex,
};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::format::{self, Workspace};

pub const SUBEXPRESSION_CAP_VAR: &str = "BOUNDQUIVER_SUBEXPR_CAP";
pub const REPRESENTATIVE_CAP_VAR: &str = "BOUNDQUIVER_REP_CAP";
pub const NODE_CAP_VAR: &str = "BOUNDQUIVER_NODE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "boundquiver",
    version,
    about = "Presentations of bound quiver algebras"
)]
pub struct Cli {
    /// Emit a machine-readable report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the quiver: acyclicity, multiple arrows, connectedness.
    Validate { file: PathBuf },
    /// List the nontrivial paths of each hom-space in increasing order.
    Paths {
        file: PathBuf,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Arrow weights and bypasses.
    Bypasses { file: PathBuf },
    /// The sorted list of bypasses.
    Order { file: PathBuf },
    /// Decreasing normal form of a transvection word (a name or `T a (c e) 1 ; ...`).
    Normalform { file: PathBuf, word: String },
    /// Normal form of `left ∘ right`.
    Compose {
        file: PathBuf,
        left: String,
        right: String,
    },
    /// Image of an element or an ideal under a word.
    Apply {
        file: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
        element: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Reduced Gröbner basis of an ideal.
    Groebner {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Minimal relations: classes of an ideal, or the decomposition of one element.
    Minrels {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        element: Option<String>,
    },
    /// The canonical automorphism carrying a monomial ideal onto a target.
    Psi {
        file: PathBuf,
        #[arg(long)]
        i0: String,
        #[arg(long)]
        target: String,
        /// Any word mapping `i0` onto the target; searched for when absent.
        #[arg(long)]
        seed: Option<String>,
    },
    /// Fundamental group of a presentation.
    Pi1 {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        basepoint: Option<String>,
        /// Maximal number of generator eliminations.
        #[arg(long, default_value_t = 64)]
        budget: usize,
    },
    /// Homotopy relation of a presentation.
    Homotopy {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Explore the quiver of homotopy relations from a monomial ideal.
    Gamma {
        file: PathBuf,
        #[arg(long)]
        i0: String,
        #[arg(long = "extra-root")]
        extra_root: Vec<String>,
        /// Write DOT to a file, or to standard output when no file is given.
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        dot: Option<PathBuf>,
        /// Scalars tried for every bypass (default 1).
        #[arg(long)]
        probe: Vec<String>,
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Canonical automorphism, its path of homotopy relations and the group surjection.
    Certify {
        file: PathBuf,
        #[arg(long)]
        i0: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        seed: String,
    },
}

/// Text and JSON forms of the same report.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
}

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments: exit code 2.
    Usage(String),
    /// Unreadable input or a failed computation: exit code 1.
    Domain(String),
}

impl From<boundquiver_core::Error> for Failure {
    fn from(e: boundquiver_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Limits read from the environment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub subexpressions: usize,
    pub representatives: usize,
    pub nodes: usize,
}

impl Caps {
    pub fn from_env() -> Result<Caps, Failure> {
        let defaults = GammaOptions::default();
        let read = |var: &str, default: usize| -> Result<usize, Failure> {
            match std::env::var(var) {
                Ok(v) => v.trim().parse().map_err(|_| {
                    Failure::Usage(format!("{var} must be a positive integer, got `{v}`"))
                }),
                Err(_) => Ok(default),
            }
        };
        Ok(Caps {
            subexpressions: read(SUBEXPRESSION_CAP_VAR, DEFAULT_SUBEXPRESSION_CAP)?,
            representatives: read(REPRESENTATIVE_CAP_VAR, defaults.representative_cap)?,
            nodes: read(NODE_CAP_VAR, defaults.node_cap)?,
        })
    }
}

/// Exit code and captured output of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let result = Caps::from_env().and_then(|caps| execute(&cli.command, caps));
    match result {
        Ok(report) => Outcome {
            code: 0,
            stdout: if cli.json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.json).expect("serializable")
                )
            } else {
                report.text
            },
            stderr: String::new(),
        },
        Err(failure) => {
            let (code, kind, message) = match failure {
                Failure::Usage(m) => (2, "usage", m),
                Failure::Domain(m) => (1, "domain", m),
            };
            let stdout = if cli.json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(
                        &json!({ "error": { "kind": kind, "message": message } })
                    )
                    .expect("serializable")
                )
            } else {
                String::new()
            };
            Outcome {
                code,
                stdout,
                stderr: format!("error: {message}\n"),
            }
        }
    }
}

fn load(file: &PathBuf) -> Result<Workspace, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Domain(format!("{}: {e}", file.display())))?;
    format::parse(&text).map_err(|e| Failure::Domain(format!("{}: {e}", file.display())))
}

fn ideal<'w>(ws: &'w Workspace, name: &str) -> Result<&'w AdmissibleIdeal, Failure> {
    ws.ideal(name)
        .ok_or_else(|| Failure::Usage(format!("no ideal named `{name}`")))
}

/// A word given by name or literally.
fn word(ws: &Workspace, text: &str) -> Result<TransvectionWord, Failure> {
    if let Some(w) = ws.word(text) {
        return Ok(w.clone());
    }
    if text.trim().is_empty() || (text.trim_start().starts_with('T') && text.contains('(')) {
        return format::parse_word(&ws.quiver, text)
            .map_err(|e| Failure::Usage(format!("word: {e}")));
    }
    Err(Failure::Usage(format!("no word named `{text}`")))
}

fn element(q: &Quiver, text: &str) -> Result<PathVector, Failure> {
    format::parse_element(q, text).map_err(|e| Failure::Usage(format!("element: {e}")))
}

fn vertex(q: &Quiver, name: &str) -> Result<Vertex, Failure> {
    q.vertex(name)
        .map_err(|_| Failure::Usage(format!("no vertex named `{name}`")))
}

fn scalar(text: &str) -> Result<Scalar, Failure> {
    format::parse_scalar(text).ok_or_else(|| Failure::Usage(format!("invalid scalar `{text}`")))
}

fn lines(text: impl IntoIterator<Item = String>) -> String {
    let mut out: String = text.into_iter().map(|l| l + "\n").collect();
    if out.is_empty() {
        out.push('\n');
    }
    out
}

fn product_report(q: &Quiver, product: &DecreasingProduct) -> Report {
    let psi = product.evaluate(q);
    Report {
        text: lines([
            format!("product: {}", product.display(q)),
            format!("images: {}", psi.display(q)),
        ]),
        json: json!({
            "product": product_json(q, product),
            "images": images_json(q, &psi),
        }),
    }
}

fn product_json(q: &Quiver, product: &DecreasingProduct) -> Value {
    Value::Array(
        product
            .factors()
            .iter()
            .map(|t| {
                json!({
                    "arrow": q.label(t.bypass.arrow()),
                    "path": q.written(t.bypass.path()),
                    "scalar": t.scalar.to_string(),
                })
            })
            .collect(),
    )
}

fn images_json(q: &Quiver, psi: &ArrowSubstitution) -> Value {
    let map: serde_json::Map<String, Value> = q
        .arrows()
        .map(|a| {
            (
                q.label(a).to_string(),
                Value::String(q.written_vector(psi.image(a))),
            )
        })
        .collect();
    Value::Object(map)
}

fn ideal_json(q: &Quiver, ideal: &AdmissibleIdeal) -> Value {
    json!({
        "generators": ideal.generators().iter().map(|g| q.written_vector(g)).collect::<Vec<_>>(),
        "groebner": ideal.groebner_basis().map(|g| q.written_vector(g)).collect::<Vec<_>>(),
    })
}

fn classes_json(q: &Quiver, h: &HomotopyRelation) -> Value {
    Value::Array(
        h.classes()
            .iter()
            .map(|c| Value::Array(c.iter().map(|p| Value::String(q.written(p))).collect()))
            .collect(),
    )
}

fn execute(command: &Command, caps: Caps) -> Result<Report, Failure> {
    match command {
        Command::Validate { file } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let report = q.validate();
            let yes = |b: bool| if b { "yes" } else { "no" };
            let order: Vec<&str> = q.arrows().map(|a| q.label(a)).collect();
            if !report.acyclic {
                return Err(Failure::Domain("quiver has an oriented cycle".into()));
            }
            Ok(Report {
                text: lines([
                    format!("vertices: {}", q.vertex_count()),
                    format!("arrows: {}", q.arrow_count()),
                    format!("acyclic: {}", yes(report.acyclic)),
                    format!("multiple arrows: {}", yes(!report.no_multiple_arrows)),
                    format!("connected: {}", yes(q.is_connected())),
                    format!("arrow order: {}", order.join(" ")),
                ]),
                json: json!({
                    "vertices": q.vertex_count(),
                    "arrows": q.arrow_count(),
                    "acyclic": report.acyclic,
                    "multiple_arrows": !report.no_multiple_arrows,
                    "connected": q.is_connected(),
                    "arrow_order": order,
                }),
            })
        }
        Command::Paths { file, from, to } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let from = from.as_deref().map(|v| vertex(q, v)).transpose()?;
            let to = to.as_deref().map(|v| vertex(q, v)).transpose()?;
            let mut text = Vec::new();
            let mut spaces = Vec::new();
            for (x, y) in q.hom_keys()? {
                if from.is_some_and(|f| f != x) || to.is_some_and(|t| t != y) {
                    continue;
                }
                let mut paths = q.nontrivial_hom(x, y)?;
                paths.sort();
                let paths: Vec<String> = paths.iter().map(|p| q.written(p)).collect();
                if paths.is_empty() {
                    continue;
                }
                text.push(format!(
                    "{} -> {}: {}",
                    q.vertex_name(x),
                    q.vertex_name(y),
                    paths.join(" < ")
                ));
                spaces.push(
                    json!({ "from": q.vertex_name(x), "to": q.vertex_name(y), "paths": paths }),
                );
            }
            Ok(Report {
                text: lines(text),
                json: json!({ "spaces": spaces }),
            })
        }
        Command::Bypasses { file } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let mut text = Vec::new();
            let mut arrows = Vec::new();
            for a in q.arrows() {
                let paths: Vec<String> = q
                    .bypasses_of(a)?
                    .iter()
                    .map(|b| q.written(b.path()))
                    .collect();
                let shown: Vec<String> = paths
                    .iter()
                    .map(|p| format!("({},{p})", q.label(a)))
                    .collect();
                let mut line = format!("W({}) = {}", q.label(a), q.arrow_weight(a));
                if !shown.is_empty() {
                    line.push_str(&format!(": {}", shown.join(" ")));
                }
                text.push(line);
                arrows.push(
                    json!({ "arrow": q.label(a), "weight": q.arrow_weight(a), "bypasses": paths }),
                );
            }
            Ok(Report {
                text: lines(text),
                json: json!({ "arrows": arrows }),
            })
        }
        Command::Order { file } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            PathOrder::new(q)?;
            let list: Vec<String> = q
                .bypasses()?
                .iter()
                .map(|b| format!("({},{})", q.label(b.arrow()), q.written(b.path())))
                .collect();
            Ok(Report {
                text: lines([list.join("<")]),
                json: json!({ "bypasses": list }),
            })
        }
        Command::Normalform { file, word: w } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let psi = word(&ws, w)?.evaluate(q);
            Ok(product_report(q, &decreasing_normal_form(q, &psi)?))
        }
        Command::Compose { file, left, right } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let psi = word(&ws, left)?
                .evaluate(q)
                .compose(&word(&ws, right)?.evaluate(q));
            Ok(product_report(q, &decreasing_normal_form(q, &psi)?))
        }
        Command::Apply {
            file,
            word: w,
            element: e,
            ideal: i,
        } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let psi = word(&ws, w)?.evaluate(q);
            if let Some(text) = e {
                let r = element(q, text)?;
                let image = psi.apply(&r);
                Ok(Report {
                    text: lines([
                        format!("{} -> {}", q.written_vector(&r), q.written_vector(&image)),
                        format!("element: {}", format::format_element(q, &image)),
                    ]),
                    json: json!({
                        "element": q.written_vector(&r),
                        "image": q.written_vector(&image),
                        "image_element": format::format_element(q, &image),
                    }),
                })
            } else {
                let name = i
                    .as_deref()
                    .expect("clap requires one of element and ideal");
                let image = ideal(&ws, name)?.image(q, &psi)?;
                let gens: Vec<String> = image
                    .generators()
                    .iter()
                    .map(|g| format!("gen {}", format::format_element(q, g)))
                    .collect();
                let mut text = vec![format!("image: {}", image.display(q))];
                text.extend(gens);
                Ok(Report {
                    text: lines(text),
                    json: ideal_json(q, &image),
                })
            }
        }
        Command::Groebner { file, ideal: name } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let ideal = ideal(&ws, name)?;
            let mut text = Vec::new();
            let mut spaces = Vec::new();
            for (x, y) in ideal.support_keys().collect::<Vec<_>>() {
                let elements: Vec<String> = ideal
                    .component(x, y)
                    .iter()
                    .map(|g| q.written_vector(g))
                    .collect();
                text.push(format!(
                    "{} -> {}: {}",
                    q.vertex_name(x),
                    q.vertex_name(y),
                    elements.join(", ")
                ));
                spaces.push(
                    json!({ "from": q.vertex_name(x), "to": q.vertex_name(y), "basis": elements }),
                );
            }
            Ok(Report {
                text: lines(text),
                json: json!({ "spaces": spaces, "dimension": ideal.total_dimension() }),
            })
        }
        Command::Minrels {
            file,
            ideal: name,
            element: e,
        } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let ideal = ideal(&ws, name)?;
            match e {
                Some(text) => {
                    let r = element(q, text)?;
                    let parts = ideal.minimal_relations_with_cap(&r, caps.subexpressions)?;
                    let written: Vec<String> = parts
                        .iter()
                        .map(|m| q.written_vector(m.relation()))
                        .collect();
                    Ok(Report {
                        text: lines(written.clone()),
                        json: json!({ "element": q.written_vector(&r), "minimal_relations": written }),
                    })
                }
                None => {
                    let classes: Vec<Vec<String>> = ideal
                        .relation_classes()
                        .iter()
                        .map(|c| c.iter().map(|p| q.written(p)).collect())
                        .collect();
                    let text = classes
                        .iter()
                        .map(|c| format!("{{{}}}", c.join(",")))
                        .collect::<Vec<_>>();
                    Ok(Report {
                        text: lines(text),
                        json: json!({ "classes": classes }),
                    })
                }
            }
        }
        Command::Psi {
            file,
            i0,
            target,
            seed,
        } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let (i0, target) = (ideal(&ws, i0)?, ideal(&ws, target)?);
            let (seed, origin) = match seed {
                Some(s) => (word(&ws, s)?.evaluate(q), "given"),
                None => match i0.find_seed(q, target)? {
                    SeedSearch::Found(psi) => (psi, "found"),
                    SeedSearch::NotConjugate(reason) => {
                        return Err(Failure::Domain(format!(
                            "ideals are not conjugate: {reason}"
                        )))
                    }
                    SeedSearch::Inconclusive(reason) => {
                        return Err(Failure::Domain(format!(
                            "no seed found ({reason}); pass --seed"
                        )))
                    }
                },
            };
            let product = i0.canonical_automorphism(q, target, &seed)?;
            let mut report = product_report(q, &product);
            report.text.push_str(&format!("seed: {origin}\n"));
            report.json["seed"] = json!(origin);
            Ok(report)
        }
        Command::Pi1 {
            file,
            ideal: name,
            basepoint,
            budget,
        } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let ideal = ideal(&ws, name)?;
            let base = match basepoint {
                Some(v) => vertex(q, v)?,
                None => q
                    .vertices()
                    .next()
                    .ok_or_else(|| Failure::Domain("empty quiver".into()))?,
            };
            let h = HomotopyRelation::of_ideal(q, ideal)?;
            let group = h.fundamental_group(q, base)?;
            let simplified = group.simplify(*budget);
            let inv = group.abelian_invariants();
            let torsion: Vec<String> = inv.torsion.iter().map(|d| d.to_string()).collect();
            let verdict = if simplified.presentation.is_certified_trivial() {
                "trivial"
            } else if simplified.presentation.is_certified_free() {
                "free"
            } else {
                "undecided"
            };
            Ok(Report {
                text: lines([
                    format!("basepoint: {}", q.vertex_name(base)),
                    format!("presentation: {}", group.display()),
                    format!("simplified: {}", simplified.presentation.display()),
                    format!(
                        "abelianization: free rank {}, torsion [{}]",
                        inv.free_rank,
                        torsion.join(", ")
                    ),
                    format!(
                        "group: {verdict}{}",
                        if verdict == "free" {
                            format!(" of rank {}", simplified.presentation.rank())
                        } else {
                            String::new()
                        }
                    ),
                ]),
                json: json!({
                    "basepoint": q.vertex_name(base),
                    "generators": group.generators(),
                    "relators": group.relators().iter().map(|w| w.display(group.generators())).collect::<Vec<_>>(),
                    "simplified": {
                        "generators": simplified.presentation.generators(),
                        "relators": simplified.presentation.relators().iter()
                            .map(|w| w.display(simplified.presentation.generators())).collect::<Vec<_>>(),
                        "exhausted": simplified.exhausted,
                    },
                    "free_rank": inv.free_rank,
                    "torsion": torsion,
                    "verdict": verdict,
                }),
            })
        }
        Command::Homotopy { file, ideal: name } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let h = HomotopyRelation::of_ideal(q, ideal(&ws, name)?)?;
            let pairs: Vec<(String, String)> = h
                .pairs()
                .iter()
                .map(|(u, v)| (q.written(u), q.written(v)))
                .collect();
            let mut text = vec![format!("classes: {}", h.display(q))];
            text.extend(pairs.iter().map(|(u, v)| format!("{u} ~ {v}")));
            Ok(Report {
                text: lines(text),
                json: json!({ "classes": classes_json(q, &h), "pairs": pairs }),
            })
        }
        Command::Gamma {
            file,
            i0,
            extra_root,
            dot,
            probe,
            basepoint,
        } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let mut options = GammaOptions {
                representative_cap: caps.representatives,
                node_cap: caps.nodes,
                ..GammaOptions::default()
            };
            if !probe.is_empty() {
                options.probes = probe.iter().map(|p| scalar(p)).collect::<Result<_, _>>()?;
            }
            options.extra_roots = extra_root
                .iter()
                .map(|n| ideal(&ws, n).cloned())
                .collect::<Result<_, _>>()?;
            options.basepoint = basepoint.as_deref().map(|v| vertex(q, v)).transpose()?;
            let g = GammaGraph::build(q, ideal(&ws, i0)?, &options)?;
            if let Some(path) = dot {
                let text = g.export_dot(q);
                if path.as_os_str() == "-" {
                    return Ok(Report {
                        json: json!({ "dot": text }),
                        text,
                    });
                }
                std::fs::write(path, &text)
                    .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            }
            Ok(gamma_report(q, &g))
        }
        Command::Certify {
            file,
            i0,
            target,
            seed,
        } => {
            let ws = load(file)?;
            let q = &ws.quiver;
            let seed = word(&ws, seed)?.evaluate(q);
            let cert = certify_universal(q, ideal(&ws, i0)?, ideal(&ws, target)?, &seed)?;
            let relations: Vec<String> = cert.path.relations.iter().map(|h| h.display(q)).collect();
            let steps: Vec<String> = cert
                .path
                .steps
                .iter()
                .map(|s| format!("{s:?}").to_lowercase())
                .collect();
            let source = &cert.surjection.source;
            let target_group = &cert.surjection.target;
            let images: Vec<String> = cert
                .surjection
                .generator_images
                .iter()
                .map(|(a, b)| format!("{a} -> {b}"))
                .collect();
            let kernel: Vec<String> = cert
                .kernel_generators
                .iter()
                .map(|w| w.display(target_group.generators()))
                .collect();
            let (src_inv, tgt_inv) = (
                source.abelian_invariants(),
                target_group.abelian_invariants(),
            );
            let tgt_simplified = target_group.simplify(64).presentation;
            Ok(Report {
                text: lines([
                    format!("target: {}", cert.target.display(q)),
                    format!("psi: {}", cert.psi.display(q)),
                    format!("path: {}", relations.join(" -> ")),
                    format!(
                        "steps: {}",
                        if steps.is_empty() {
                            "none".into()
                        } else {
                            steps.join(", ")
                        }
                    ),
                    format!("length: {}", cert.path.length()),
                    format!(
                        "source group: {} (free rank {})",
                        source.display(),
                        src_inv.free_rank
                    ),
                    format!(
                        "target group: {} (simplified {}, free rank {})",
                        target_group.display(),
                        tgt_simplified.display(),
                        tgt_inv.free_rank
                    ),
                    format!(
                        "surjection: {}",
                        if images.is_empty() {
                            "trivial".into()
                        } else {
                            images.join(", ")
                        }
                    ),
                    format!(
                        "kernel generators: {}",
                        if kernel.is_empty() {
                            "none".into()
                        } else {
                            kernel.join(", ")
                        }
                    ),
                ]),
                json: json!({
                    "target": ideal_json(q, &cert.target),
                    "psi": product_json(q, &cert.psi),
                    "path": relations,
                    "steps": steps,
                    "length": cert.path.length(),
                    "source_group": { "presentation": source.display(), "free_rank": src_inv.free_rank },
                    "target_group": {
                        "presentation": target_group.display(),
                        "simplified": tgt_simplified.display(),
                        "free_rank": tgt_inv.free_rank,
                        "torsion": tgt_inv.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    },
                    "surjection": cert.surjection.generator_images,
                    "kernel_generators": kernel,
                }),
            })
        }
    }
}

fn gamma_report(q: &Quiver, g: &GammaGraph) -> Report {
    let join = |v: Vec<usize>| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let layers = g.layers().map(join);
    let mut text = vec![
        format!("nodes: {}", g.node_count()),
        format!("edges: {}", g.edge_count()),
        format!("sources: {}", join(g.sources())),
        format!("sinks: {}", join(g.sinks())),
        format!(
            "unique source: {}",
            if g.has_unique_source() { "yes" } else { "no" }
        ),
        format!(
            "layers: {}",
            layers.clone().unwrap_or_else(|| "unreachable nodes".into())
        ),
        format!(
            "scope: {}",
            if g.complete {
                "complete"
            } else {
                "reachable subgraph"
            }
        ),
    ];
    let mut nodes = Vec::new();
    for (i, n) in g.nodes.iter().enumerate() {
        let torsion: Vec<String> = n.invariants.torsion.iter().map(|d| d.to_string()).collect();
        let reps: Vec<String> = n.representatives.iter().map(|r| r.display(q)).collect();
        let depth = n.depth.map_or("-".into(), |d| d.to_string());
        text.push(format!(
            "node {i}: depth {depth}, free rank {}, torsion [{}], relation {}, ideals {}",
            n.invariants.free_rank,
            torsion.join(", "),
            n.relation.display(q),
            reps.join(" ")
        ));
        nodes.push(json!({
            "id": i,
            "depth": n.depth,
            "free_rank": n.invariants.free_rank,
            "torsion": torsion,
            "relation": classes_json(q, &n.relation),
            "ideals": reps,
        }));
    }
    let mut edges = Vec::new();
    for e in &g.edges {
        let via = format!(
            "({},{},{})",
            q.label(e.bypass.arrow()),
            q.written(e.bypass.path()),
            e.scalar
        );
        text.push(format!("edge {} -> {} via {via}", e.from, e.to));
        edges.push(json!({ "from": e.from, "to": e.to, "via": via }));
    }
    Report {
        text: lines(text),
        json: json!({
            "nodes": nodes,
            "edges": edges,
            "sources": g.sources(),
            "sinks": g.sinks(),
            "unique_source": g.has_unique_source(),
            "layers": g.layers(),
            "complete": g.complete,
        }),
    }
}
