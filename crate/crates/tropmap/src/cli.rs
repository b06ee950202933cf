//! Command dispatch. [`run`] is the whole program minus process I/O.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use tropmap_core::diag::{Diagnostic, Severity};
use tropmap_core::exactgeom::{parse_rat, Rat};
use tropmap_core::gallery;
use tropmap_core::maps::{combinatorial_type, star, validate_map, validate_type, DiscreteData};
use tropmap_core::moduli::{limit_of_family, metrics_of, moduli_cone, ConeMetrics, ModuliCone};
use tropmap_core::wellspaced::{
    build_figure1_family, figure1, hat_curve, is_well_spaced, realizability_verdict, Assumptions,
    VerdictKind, WellSpacedReport,
};
use tropmap_core::curves::{lint_curve, validate_curve};
use tropmap_core::exactgeom::fan_validate;

use crate::doc::{
    document_json, parse_document, rat_vec_json, render, render_value, Document, FanChoice, Issue,
    Loaded, MapDoc,
};
use crate::plot::{render_svg, PlotOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Environment variable overriding the sampling seed of `cone`.
pub const SEED_VAR: &str = "TROPMAP_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "tropmap", version, about = "Tropical stable maps to fans: validation, moduli cones, well-spacedness")]
pub struct Cli {
    /// Output layout.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Fan for documents that carry none: auto-rays, complete, or a fan file.
    #[arg(long, global = true, default_value = "auto-rays")]
    pub fan: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a fan, curve, map or type.
    Validate { input: Option<String> },
    /// Combinatorial type of a map.
    Type { input: Option<String> },
    /// Moduli cone of a map or type: dimensions, equations and an interior sample.
    Cone {
        input: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exit 0 iff the moduli cone is larger than expected.
    Superabundant { input: Option<String> },
    /// Well-spacedness of a genus one map.
    Wellspaced { input: Option<String> },
    /// Realizability verdict.
    Verdict {
        input: Option<String>,
        #[arg(long)]
        assume_star_realizable: bool,
        /// Family document whose limit at t = 1 is the map.
        #[arg(long)]
        family: Option<String>,
    },
    /// Member or limit of a family.
    Limit {
        input: Option<String>,
        #[arg(long, default_value = "1")]
        t: String,
    },
    /// Star of an inner vertex.
    Star {
        input: Option<String>,
        #[arg(long)]
        vertex: String,
    },
    /// Replace the genus one vertex by a contracted loop of length t.
    Hat {
        input: Option<String>,
        #[arg(long, default_value = "1")]
        t: String,
    },
    /// Builtin example.
    Example {
        name: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        t: String,
        /// Emit the family rather than one member (figure1 only).
        #[arg(long)]
        family: bool,
    },
    /// SVG projection onto two coordinates.
    Plot {
        input: Option<String>,
        #[arg(long, default_value = "0,1")]
        axes: String,
        #[arg(long, default_value = "3")]
        radius: f64,
        /// Write the SVG here and a report to stdout.
        #[arg(long)]
        output: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Type { .. } => "type",
            Command::Cone { .. } => "cone",
            Command::Superabundant { .. } => "superabundant",
            Command::Wellspaced { .. } => "wellspaced",
            Command::Verdict { .. } => "verdict",
            Command::Limit { .. } => "limit",
            Command::Star { .. } => "star",
            Command::Hat { .. } => "hat",
            Command::Example { .. } => "example",
            Command::Plot { .. } => "plot",
        }
    }
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Source of documents other than stdin and of the seed override.
pub trait Env {
    fn read_file(&self, path: &str) -> Result<String, String>;
    fn write_file(&self, path: &str, contents: &str) -> Result<(), String>;
    fn var(&self, name: &str) -> Option<String>;
}

pub struct ProcessEnv;

impl Env for ProcessEnv {
    fn read_file(&self, path: &str) -> Result<String, String> {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }

    fn write_file(&self, path: &str, contents: &str) -> Result<(), String> {
        std::fs::write(path, contents).map_err(|e| format!("{path}: {e}"))
    }

    fn var(&self, name: &str) -> Option<String> {
        std::env::var(name).ok()
    }
}

struct Input {
    source: String,
    kind: &'static str,
    sha256: String,
}

/// Accumulates one report.
struct Session<'e> {
    command: &'static str,
    stdin: &'e str,
    env: &'e dyn Env,
    fan: FanChoice,
    pretty: bool,
    inputs: Vec<Input>,
    diagnostics: Vec<Value>,
    stderr: String,
}

/// A failed run: exit 2 with these diagnostics.
struct Fail;

fn diag_json(d: &Diagnostic) -> Value {
    json!({
        "code": d.code.as_str(),
        "severity": match d.severity { Severity::Error => "error", Severity::Lint => "lint" },
        "subject": d.subject,
        "message": d.message,
    })
}

fn issue_json(i: &Issue, severity: &str) -> Value {
    json!({ "code": "input", "severity": severity, "pointer": i.pointer, "message": i.message })
}

impl Session<'_> {
    fn error(&mut self, code: &str, message: impl Into<String>) -> Fail {
        let message = message.into();
        let _ = writeln!(self.stderr, "error: {message}");
        self.diagnostics.push(json!({ "code": code, "severity": "error", "message": message }));
        Fail
    }

    fn note(&mut self, line: impl AsRef<str>) {
        let _ = writeln!(self.stderr, "{}", line.as_ref());
    }

    fn load(&mut self, path: Option<&str>) -> Result<Loaded, Fail> {
        let (source, text) = match path {
            None | Some("-") => ("stdin".to_string(), self.stdin.to_string()),
            Some(p) => match self.env.read_file(p) {
                Ok(t) => (p.to_string(), t),
                Err(e) => return Err(self.error("io", e)),
            },
        };
        match parse_document(&text, &self.fan) {
            Ok(l) => {
                for w in &l.warnings {
                    let _ = writeln!(self.stderr, "warning: {source}: {}: {}", w.pointer, w.message);
                    self.diagnostics.push(issue_json(w, "lint"));
                }
                self.inputs.push(Input { source, kind: l.doc.kind().as_str(), sha256: l.sha256.clone() });
                Ok(l)
            }
            Err(i) => {
                let _ = writeln!(self.stderr, "error: {source}: {}: {}", i.pointer, i.message);
                self.diagnostics.push(issue_json(&i, "error"));
                Err(Fail)
            }
        }
    }

    fn load_map(&mut self, path: Option<&str>) -> Result<MapDoc, Fail> {
        match self.load(path)?.doc {
            Document::Map(m) => Ok(m),
            other => Err(self.error("kind", format!("expected a map document, got {}", other.kind().as_str()))),
        }
    }

    fn report(&self, results: Value, code: i32) -> String {
        let inputs: Vec<Value> = self
            .inputs
            .iter()
            .map(|i| json!({ "source": i.source, "kind": i.kind, "sha256": i.sha256 }))
            .collect();
        let v = json!({
            "command": self.command,
            "inputs": inputs,
            "results": results,
            "diagnostics": self.diagnostics,
            "exit_code": code,
        });
        render_value(&v, self.pretty)
    }

    fn diagnostics(&mut self, ds: &[Diagnostic]) {
        for d in ds {
            let _ = writeln!(self.stderr, "{d}");
            self.diagnostics.push(diag_json(d));
        }
    }
}

fn rational_arg(s: &mut Session<'_>, flag: &str, text: &str) -> Result<Rat, Fail> {
    parse_rat(text).map(|r| r.0).map_err(|e| s.error("argument", format!("--{flag}: {e}")))
}

fn metrics_json(m: &ConeMetrics) -> Value {
    json!({
        "dim": m.dim,
        "expected_dim": m.expected_dim,
        "overvalence": m.overvalence,
        "b1": m.b1,
        "markings": m.markings,
        "superabundant": m.superabundant,
    })
}

fn cone_json(mc: &ModuliCone) -> Value {
    let mut v = metrics_json(&metrics_of(mc));
    v["rank"] = json!(mc.rank);
    v["variables"] = json!(mc.variables.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    v["equations"] = Value::Array(mc.equations.rows().iter().map(rat_vec_json).collect());
    v["forced_zero_lengths"] = json!(mc.forced_zero_lengths);
    v
}

pub fn wellspaced_json(r: &WellSpacedReport) -> Value {
    let flats: Vec<Value> = r
        .flats
        .iter()
        .map(|rec| {
            let zero: Vec<String> =
                rec.flat.zero_set.iter().map(|&i| r.arrangement.items[i].to_string()).collect();
            let boundary: Vec<Value> = rec
                .subcurve
                .boundary
                .iter()
                .map(|(v, d)| json!({ "vertex": v, "distance": d.to_string() }))
                .collect();
            json!({
                "normal": rat_vec_json(&rec.flat.normal),
                "rank": rec.flat.rank,
                "zero_set": zero,
                "boundary": boundary,
                "pass": rec.pass,
            })
        })
        .collect();
    let mut v = json!({
        "well_spaced": r.well_spaced,
        "codim": r.cycle.codim,
        "cycle": r.cycle.vertices,
        "flats": flats,
    });
    if let Some(w) = r.witness {
        v["witness"] = json!(w);
    }
    v
}

fn to_exit(r: Result<(Value, i32), Fail>, s: &Session<'_>) -> (i32, String) {
    match r {
        Ok((results, code)) => (code, s.report(results, code)),
        Err(Fail) => (EXIT_INPUT, s.report(Value::Object(Map::new()), EXIT_INPUT)),
    }
}

/// Emits a document, or a failure report.
fn emit_doc(s: &mut Session<'_>, r: Result<Document, Fail>) -> (i32, String) {
    match r {
        Ok(d) => (EXIT_OK, render(&d, s.pretty)),
        Err(Fail) => to_exit(Err(Fail), s),
    }
}

fn validate_cmd(s: &mut Session<'_>, input: Option<&str>) -> Result<(Value, i32), Fail> {
    let loaded = s.load(input)?;
    let found = match &loaded.doc {
        Document::Fan(f) => fan_validate(f),
        Document::Curve(c) => {
            let mut d = validate_curve(c);
            d.extend(lint_curve(c));
            d
        }
        Document::Map(m) => validate_map(&m.map, m.discrete.as_ref()),
        Document::Type(t) => validate_type(t, true),
        Document::Family(f) => match f.check() {
            Ok(_) => validate_type(&f.ctype, true),
            Err(e) => return Ok((json!({ "valid": false, "family_error": e.to_string() }), EXIT_FALSE)),
        },
    };
    let errors = found.iter().filter(|d| d.is_error()).count();
    s.diagnostics(&found);
    let valid = errors == 0;
    s.note(format!("{}: {}", loaded.doc.kind().as_str(), if valid { "valid" } else { "invalid" }));
    let results = json!({ "valid": valid, "errors": errors, "lints": found.len() - errors });
    Ok((results, if valid { EXIT_OK } else { EXIT_FALSE }))
}

fn type_of(s: &mut Session<'_>, input: Option<&str>) -> Result<tropmap_core::maps::CombinatorialType, Fail> {
    match s.load(input)?.doc {
        Document::Map(m) => combinatorial_type(&m.map).map_err(|e| s.error("map", e.to_string())),
        Document::Type(t) => Ok(t),
        other => Err(s.error("kind", format!("expected a map or type document, got {}", other.kind().as_str()))),
    }
}

fn cone_cmd(s: &mut Session<'_>, input: Option<&str>, seed: Option<u64>, predicate: bool) -> Result<(Value, i32), Fail> {
    let t = type_of(s, input)?;
    let mc = moduli_cone(&t);
    s.diagnostics(&mc.diagnostics.clone());
    let metrics = metrics_of(&mc);
    s.note(format!(
        "dim {} expected {} superabundant {}",
        metrics.dim, metrics.expected_dim, metrics.superabundant
    ));
    if predicate {
        let code = if metrics.superabundant { EXIT_OK } else { EXIT_FALSE };
        return Ok((metrics_json(&metrics), code));
    }
    let mut v = cone_json(&mc);
    let seed = match s.env.var(crate::cli::SEED_VAR) {
        Some(text) => text.trim().parse::<u64>().map_err(|_| s.error("environment", format!("{SEED_VAR} must be a natural number")))?,
        None => seed.unwrap_or(0),
    };
    v["seed"] = json!(seed);
    if let Ok(sample) = mc.sample_interior(seed) {
        v["sample"] = document_json(&Document::Map(MapDoc { map: sample, discrete: None }));
    }
    Ok((v, EXIT_OK))
}

fn wellspaced_cmd(s: &mut Session<'_>, input: Option<&str>) -> Result<(Value, i32), Fail> {
    let m = s.load_map(input)?.map;
    let r = is_well_spaced(&m).map_err(|e| s.error("wellspaced", e.to_string()))?;
    for rec in &r.flats {
        let ds: Vec<String> = rec.subcurve.boundary.iter().map(|(_, d)| d.to_string()).collect();
        s.note(format!("flat rank {}: {{{}}} {}", rec.flat.rank, ds.join(", "), if rec.pass { "pass" } else { "FAIL" }));
    }
    s.note(format!("well-spaced: {}", r.well_spaced));
    Ok((wellspaced_json(&r), if r.well_spaced { EXIT_OK } else { EXIT_FALSE }))
}

fn verdict_cmd(
    s: &mut Session<'_>,
    input: Option<&str>,
    star_realizable: bool,
    family: Option<&str>,
) -> Result<(Value, i32), Fail> {
    let m = s.load_map(input)?.map;
    let limit_certificate = match family {
        None => None,
        Some(p) => match s.load(Some(p))?.doc {
            Document::Family(f) => Some(f),
            other => return Err(s.error("kind", format!("--family expects a family document, got {}", other.kind().as_str()))),
        },
    };
    let v = realizability_verdict(&m, &Assumptions { star_realizable, limit_certificate })
        .map_err(|e| {
            if let tropmap_core::wellspaced::VerdictError::Invalid(ds) = &e {
                for d in ds {
                    s.diagnostics.push(diag_json(d));
                }
            }
            s.error("verdict", e.to_string())
        })?;
    s.note(format!("{} ({}): {}", v.kind.as_str(), v.rule.as_str(), v.reason));
    let code = if v.kind == VerdictKind::Realizable { EXIT_OK } else { EXIT_FALSE };
    Ok((json!({ "verdict": v.kind.as_str(), "rule": v.rule.as_str(), "reason": v.reason }), code))
}

fn limit_cmd(s: &mut Session<'_>, input: Option<&str>, t: &str) -> Result<Document, Fail> {
    let t = rational_arg(s, "t", t)?;
    let fam = match s.load(input)?.doc {
        Document::Family(f) => f,
        other => return Err(s.error("kind", format!("expected a family document, got {}", other.kind().as_str()))),
    };
    let lim = limit_of_family(&fam, &t).map_err(|e| s.error("family", e.to_string()))?;
    if !lim.contracted.is_empty() {
        s.note(format!("contracted: {}", lim.contracted.join(", ")));
    }
    for d in &lim.diagnostics {
        s.note(format!("lint: {d}"));
    }
    Ok(Document::Map(MapDoc { map: lim.map, discrete: None }))
}

fn star_cmd(s: &mut Session<'_>, input: Option<&str>, vertex: &str) -> Result<Document, Fail> {
    let m = s.load_map(input)?.map;
    let (st, lints) = star(&m, vertex).map_err(|e| s.error("star", e.to_string()))?;
    for d in &lints {
        s.note(format!("lint: {d}"));
    }
    Ok(Document::Map(MapDoc { map: st, discrete: None }))
}

fn hat_cmd(s: &mut Session<'_>, input: Option<&str>, t: &str) -> Result<Document, Fail> {
    let t = rational_arg(s, "t", t)?;
    let m = s.load_map(input)?.map;
    let h = hat_curve(&m, &t).map_err(|e| s.error("hat", e.to_string()))?;
    Ok(Document::Map(MapDoc { map: h, discrete: None }))
}

fn example_cmd(s: &mut Session<'_>, name: &str, n: usize, t: &str, family: bool) -> Result<Document, Fail> {
    if name == "figure1" {
        if family {
            return build_figure1_family(n).map(Document::Family).map_err(|e| s.error("example", e.to_string()));
        }
        let t = rational_arg(s, "t", t)?;
        let m = figure1(n, &t).map_err(|e| s.error("example", e.to_string()))?;
        let discrete = DiscreteData::of_map(&m);
        return Ok(Document::Map(MapDoc { map: m, discrete }));
    }
    if family {
        return Err(s.error("argument", "--family is only available for figure1"));
    }
    match gallery::by_name(name) {
        Some(m) => {
            let discrete = DiscreteData::of_map(&m);
            Ok(Document::Map(MapDoc { map: m, discrete }))
        }
        None => Err(s.error("example", format!("unknown example {name:?}; known: {}", gallery::NAMES.join(", ")))),
    }
}

fn plot_cmd(
    s: &mut Session<'_>,
    input: Option<&str>,
    axes: &str,
    radius: f64,
    output: Option<&str>,
) -> (i32, String) {
    let r = (|| {
        let parsed: Option<(usize, usize)> =
            axes.split_once(',').and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
        let Some(axes) = parsed else {
            return Err(s.error("argument", "--axes expects i,j"));
        };
        if !(radius.is_finite() && radius > 0.0) {
            return Err(s.error("argument", "--radius must be positive"));
        }
        let m = s.load_map(input)?.map;
        let svg = render_svg(&m, &PlotOptions { axes, radius }).map_err(|e| s.error("argument", e))?;
        Ok(svg)
    })();
    match (r, output) {
        (Ok(svg), None) => (EXIT_OK, svg),
        (Ok(svg), Some(path)) => {
            let res = match s.env.write_file(path, &svg) {
                Ok(()) => Ok((json!({ "svg": path, "bytes": svg.len() }), EXIT_OK)),
                Err(e) => Err(s.error("io", e)),
            };
            to_exit(res, s)
        }
        (Err(f), _) => to_exit(Err(f), s),
    }
}

/// Runs one command line (including the program name) against `stdin`.
pub fn run(args: &[String], stdin: &str, env: &dyn Env) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut s = Session {
        command: cli.command.name(),
        stdin,
        env,
        fan: FanChoice::AutoRays,
        pretty: cli.format == Format::Pretty,
        inputs: Vec::new(),
        diagnostics: Vec::new(),
        stderr: String::new(),
    };
    match cli.fan.as_str() {
        "auto-rays" => {}
        "complete" => s.fan = FanChoice::Complete,
        path => match s.load(Some(path)) {
            Ok(Loaded { doc: Document::Fan(f), .. }) => s.fan = FanChoice::Given(f),
            Ok(_) => {
                let _ = s.error("kind", "--fan expects a fan document");
                let (code, stdout) = to_exit(Err(Fail), &s);
                return Outcome { code, stdout, stderr: s.stderr };
            }
            Err(Fail) => {
                let (code, stdout) = to_exit(Err(Fail), &s);
                return Outcome { code, stdout, stderr: s.stderr };
            }
        },
    }
    let (code, stdout) = match &cli.command {
        Command::Validate { input } => {
            let r = validate_cmd(&mut s, input.as_deref());
            to_exit(r, &s)
        }
        Command::Type { input } => {
            let r = type_of(&mut s, input.as_deref()).map(Document::Type);
            emit_doc(&mut s, r)
        }
        Command::Cone { input, seed } => {
            let r = cone_cmd(&mut s, input.as_deref(), *seed, false);
            to_exit(r, &s)
        }
        Command::Superabundant { input } => {
            let r = cone_cmd(&mut s, input.as_deref(), None, true);
            to_exit(r, &s)
        }
        Command::Wellspaced { input } => {
            let r = wellspaced_cmd(&mut s, input.as_deref());
            to_exit(r, &s)
        }
        Command::Verdict { input, assume_star_realizable, family } => {
            let r = verdict_cmd(&mut s, input.as_deref(), *assume_star_realizable, family.as_deref());
            to_exit(r, &s)
        }
        Command::Limit { input, t } => {
            let r = limit_cmd(&mut s, input.as_deref(), t);
            emit_doc(&mut s, r)
        }
        Command::Star { input, vertex } => {
            let r = star_cmd(&mut s, input.as_deref(), vertex);
            emit_doc(&mut s, r)
        }
        Command::Hat { input, t } => {
            let r = hat_cmd(&mut s, input.as_deref(), t);
            emit_doc(&mut s, r)
        }
        Command::Example { name, n, t, family } => {
            let r = example_cmd(&mut s, name, *n, t, *family);
            emit_doc(&mut s, r)
        }
        Command::Plot { input, axes, radius, output } => {
            plot_cmd(&mut s, input.as_deref(), axes, *radius, output.as_deref())
        }
    };
    Outcome { code, stdout, stderr: s.stderr }
}
