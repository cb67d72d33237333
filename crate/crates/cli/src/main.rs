use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gautomata::automaton::{GAutomaton, PathWord};
use gautomata::constructions::export_dot;
use gautomata::cover::{cover_ball, neumann_select, verify_locator, CoverContext};
use gautomata::document::{Document, Loaded};
use gautomata::group::ChoiceOfGenerators;
use gautomata::hom::{audit_well_defined, extract, Schedule};
use gautomata::paths::{PathEngine, SearchMode, Verdict};
use gautomata::pipeline::{render, run_pipeline, PipelineConfig, VERSION};
use gautomata::pumpable::{enumerate_m, is_pumpable};
use gautomata::wqo::{minimal_accepting_paths_with, pump_constant, Completeness};
use gautomata::Error;

#[derive(Parser, Debug)]
#[command(name = "gautomata", version, about = "Automata with abelian registers and the groups whose word problems they accept")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Mode::Exact, global = true)]
    mode: Mode,
    /// Path length bound for bounded mode.
    #[arg(long, default_value_t = 12, global = true)]
    max_len: usize,
    /// Register norm bound for bounded mode.
    #[arg(long, default_value_t = 24, global = true)]
    max_counter: u64,
    #[arg(long, default_value_t = 4, global = true)]
    radius: usize,
    /// Longest loop explored when building H(μ, p).
    #[arg(long, default_value_t = 6, global = true)]
    explore_len: usize,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Loop pairs sampled by the well-definedness audit.
    #[arg(long, default_value_t = 500, global = true)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Bounded,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is WORD the label of an accepting path?
    Accepts { file: PathBuf, word: String },
    /// Does any accepting path exist?
    Empty { file: PathBuf },
    /// Minimal accepting paths and the pump constant.
    MinimalPaths { file: PathBuf },
    /// Is the closed path SIGMA pumpable in MU?
    Pumpable {
        file: PathBuf,
        sigma: String,
        #[arg(long, default_value = "ε")]
        mu: String,
    },
    /// Members of M(μ, p) up to --explore-len.
    EnumerateM {
        file: PathBuf,
        p: String,
        #[arg(long, default_value = "ε")]
        mu: String,
    },
    /// Homomorphism G(μ, p) → H(μ, p) read off closed walks at P, with audit.
    ExtractHom {
        file: PathBuf,
        p: String,
        #[arg(long, default_value = "ε")]
        mu: String,
    },
    /// Coset of H(μ, p) containing the element spelled by WORD.
    LocateCoset { file: PathBuf, word: String },
    /// Locate every element of the ball of radius --radius in a coset.
    CoverBall { file: PathBuf },
    /// Full run: minimal paths, homomorphisms, cover, finite-index choice.
    Pipeline { file: PathBuf },
    /// Graphviz rendering of the automaton.
    ExportDot { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Accepts { .. } => "accepts",
            Command::Empty { .. } => "empty",
            Command::MinimalPaths { .. } => "minimal-paths",
            Command::Pumpable { .. } => "pumpable",
            Command::EnumerateM { .. } => "enumerate-m",
            Command::ExtractHom { .. } => "extract-hom",
            Command::LocateCoset { .. } => "locate-coset",
            Command::CoverBall { .. } => "cover-ball",
            Command::Pipeline { .. } => "pipeline",
            Command::ExportDot { .. } => "export-dot",
        }
    }
}

/// Exit status of a completed command.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Status {
    Yes,
    No,
    Unknown,
}

impl Status {
    fn of<W>(v: &Verdict<W>) -> Self {
        match v {
            Verdict::Yes(_) => Status::Yes,
            Verdict::No => Status::No,
            Verdict::Unknown(_) => Status::Unknown,
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Yes => 0,
            Status::No => 1,
            Status::Unknown => 2,
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::UnknownLetter(_) | Error::NotInSubgroup => 10,
        Error::InvalidAutomaton(_) | Error::InvalidGroup(_) | Error::NotInverseClosed(_) | Error::SpecMismatch(_) => 11,
        Error::ResourceGuard(_) => 12,
        Error::WellDefinedness(_) => 13,
        Error::LanguageContract(_) => 14,
        Error::Certification(_) => 15,
        Error::NotInjective(_) | Error::InfiniteIndex | Error::Unsupported(_) => 16,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((status, out)) => {
            print!("{out}");
            ExitCode::from(status.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn load(file: &Path) -> Result<Loaded, Error> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Usage(format!("cannot read {}: {e}", file.display())))?;
    Document::from_json(&text)?.load()
}

fn need_rho(l: &Loaded) -> Result<&ChoiceOfGenerators, Error> {
    l.rho.as_ref().ok_or_else(|| Error::Usage("document has no target_group/rho".into()))
}

fn path_arg(a: &GAutomaton, s: &str) -> Result<PathWord, Error> {
    a.parse_path(s)
}

fn vertex_arg(a: &GAutomaton, s: &str) -> Result<usize, Error> {
    a.vertex_id(s).ok_or_else(|| Error::Usage(format!("unknown vertex {s:?}")))
}

fn mode(cli: &Cli) -> SearchMode {
    match cli.mode {
        Mode::Exact => SearchMode::Exact,
        Mode::Bounded => SearchMode::Bounded { max_len: cli.max_len, max_counter: cli.max_counter },
    }
}

fn config(cli: &Cli) -> PipelineConfig {
    PipelineConfig {
        mode: mode(cli),
        radius: cli.radius,
        explore_len: cli.explore_len,
        seed: cli.seed,
        audit_samples: cli.samples,
        ..PipelineConfig::default()
    }
}

fn run(cli: &Cli) -> Result<(Status, String), Error> {
    if cli.max_len == 0 || cli.max_counter == 0 || cli.explore_len == 0 {
        return Err(Error::Usage("bounds must be positive".into()));
    }
    if let Command::ExportDot { file } = &cli.command {
        let l = load(file)?;
        return Ok((Status::Yes, export_dot(&l.automaton)));
    }
    if cli.format == Format::Dot {
        return Err(Error::Usage("--format dot is only available for export-dot".into()));
    }
    let engine = PathEngine::new(mode(cli));
    let (status, result, text) = match &cli.command {
        Command::Accepts { file, word } => {
            let l = load(file)?;
            let v = engine.accepts(&l.automaton, word)?;
            let text = verdict_text(&l.automaton, &v);
            (Status::of(&v), render::verdict(&l.automaton, &v), text)
        }
        Command::Empty { file } => {
            let l = load(file)?;
            let v = engine.is_empty(&l.automaton)?;
            let text = verdict_text(&l.automaton, &v);
            (Status::of(&v), render::verdict(&l.automaton, &v), text)
        }
        Command::MinimalPaths { file } => {
            let l = load(file)?;
            let a = &l.automaton;
            let m = minimal_accepting_paths_with(&engine, a)?;
            let n = pump_constant(&m);
            let mut text: String = m.paths.iter().map(|p| format!("{}\n", a.format_path(p))).collect();
            text.push_str(&match m.completeness {
                Completeness::Certified => "complete\n".to_string(),
                Completeness::UpTo(b) => format!("complete up to length {b}\n"),
            });
            let mut v = render::minimal(a, &m);
            v["pump_constant"] = json!({"n": n.n, "lower_bound_only": n.lower_bound_only});
            (Status::Yes, v, text)
        }
        Command::Pumpable { file, sigma, mu } => {
            let l = load(file)?;
            let a = &l.automaton;
            let v = is_pumpable(&engine, a, &path_arg(a, sigma)?, &path_arg(a, mu)?)?;
            let (json, text) = match &v {
                Verdict::Yes(w) => {
                    (json!({"verdict": "yes", "witness": render::pump_witness(a, w)}), format!("yes {}\n", a.format_path(&w.alpha)))
                }
                Verdict::No => (json!({"verdict": "no"}), "no\n".to_string()),
                Verdict::Unknown(r) => (json!({"verdict": "unknown", "reason": r}), format!("unknown: {r}\n")),
            };
            (Status::of(&v), json, text)
        }
        Command::EnumerateM { file, p, mu } => {
            let l = load(file)?;
            let a = &l.automaton;
            let view = enumerate_m(&engine, a, &path_arg(a, mu)?, vertex_arg(a, p)?, cli.explore_len)?;
            let text = view.loops().map(|s| format!("{}\n", a.format_path(s))).collect();
            let status = if view.undecided.is_empty() { Status::Yes } else { Status::Unknown };
            (status, render::monoid_view(a, &view), text)
        }
        Command::ExtractHom { file, p, mu } => {
            let l = load(file)?;
            let a = &l.automaton;
            let rho = need_rho(&l)?;
            let hom = extract(&engine, a, rho, &path_arg(a, mu)?, vertex_arg(a, p)?, &Schedule::up_to(cli.explore_len))?;
            let audit = audit_well_defined(a, rho, &hom, cli.samples, cli.seed)?;
            let mut v = render::hom(a, rho, &hom)?;
            v["audit"] = render::audit(&audit);
            let text = format!("index {}\n", v["index"]);
            (Status::Yes, v, text)
        }
        Command::LocateCoset { file, word } => {
            let l = load(file)?;
            let a = &l.automaton;
            let rho = need_rho(&l)?;
            let mut ctx = CoverContext::new(a, rho, mode(cli), Schedule::up_to(cli.explore_len), cli.samples, cli.seed)?;
            let h = rho.evaluate(word.chars())?;
            let loc = ctx.locate(&h, word)?;
            verify_locator(&mut ctx, &loc)?;
            let text = format!(
                "{} in {}⁻¹·H({}, {})·{}⁻¹\n",
                rho.group().display(&h),
                rho.group().display(&loc.h1),
                a.format_path(&loc.mu),
                a.vertices()[loc.p],
                rho.group().display(&loc.h2)
            );
            (Status::Yes, render::locator(a, rho, &loc), text)
        }
        Command::CoverBall { file } => {
            let l = load(file)?;
            let a = &l.automaton;
            let rho = need_rho(&l)?;
            let mut ctx = CoverContext::new(a, rho, mode(cli), Schedule::up_to(cli.explore_len), cli.samples, cli.seed)?;
            let cover = cover_ball(&mut ctx, cli.radius)?;
            let pick = neumann_select(&mut ctx, &cover)?;
            let mut v = render::cover(a, rho, &cover);
            v["selected"] = render::neumann(a, &pick);
            let text = format!("{} elements, {} cosets\n", cover.locators.len(), cover.cosets.len());
            (Status::Yes, v, text)
        }
        Command::Pipeline { file } => {
            let l = load(file)?;
            let a = &l.automaton;
            let rho = need_rho(&l)?;
            let report = run_pipeline(a, rho, &config(cli))?;
            let v = render::pipeline(a, rho, &report)?;
            let text = match &report.neumann {
                Some(n) => format!("H({}, {}) has index {}\n", a.format_path(&n.mu), a.vertices()[n.p], n.index),
                None => "no finite-index H(μ, p) among explored data\n".to_string(),
            };
            let status = if report.neumann.is_some() { Status::Yes } else { Status::Unknown };
            (status, v, text)
        }
        Command::ExportDot { .. } => unreachable!("handled above"),
    };
    let out = match cli.format {
        Format::Text => text,
        _ => {
            let mut config = json!({
                "radius": cli.radius,
                "explore_len": cli.explore_len,
                "seed": cli.seed,
                "samples": cli.samples,
            });
            if let (Value::Object(c), Value::Object(m)) = (&mut config, json!(mode(cli))) {
                c.extend(m);
            }
            let report = json!({
                "version": VERSION,
                "command": cli.command.name(),
                "config": config,
                "result": result,
            });
            format!("{}\n", serde_json::to_string_pretty(&report).expect("reports serialize"))
        }
    };
    Ok((status, out))
}

fn verdict_text(a: &GAutomaton, v: &Verdict) -> String {
    match v {
        Verdict::Yes(p) => format!("yes {}\n", a.format_path(p)),
        Verdict::No => "no\n".to_string(),
        Verdict::Unknown(r) => format!("unknown: {r}\n"),
    }
}
