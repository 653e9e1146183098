use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rba::concrete::DEFAULT_MATERIALIZE_POINTS;
use rba::duality::{model_to_mrba_with_cap, mrba_to_model, verify_prop1, verify_prop2, Battery, DEFAULT_DUAL_WORLDS};
use rba::filters::{enumerate, stone_embed, FilterKind};
use rba::frames::AwarenessModel;
use rba::io::{algebra_from_file, model_to_file, mrba_to_file, parse_algebra_file, parse_model, to_pretty_json};
use rba::modal::{evaluate, find_invalidating, Assignment, Mrba, DEFAULT_SWEEP_PROPS};
use rba::suites::{run_suite, SuiteConfig, SUITE_NAMES};
use rba::syntax::{parse, props_of, Formula, Prop};
use rba::{Algebra, AxiomReport, Error};

#[derive(Parser)]
#[command(name = "rba", version, about = "Relativized Boolean algebras, modal RBAs and awareness models")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Seed for every random corpus.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest algebra accepted from a file.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    max_elements: u64,
    /// Largest model turned into a concrete algebra; in suites, the world
    /// cap of random models.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=20))]
    max_worlds: Option<u64>,
    /// Connective budget of formula batteries.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Accept modal algebras that fail fD.
    #[arg(long = "no-fD", global = true)]
    no_fd: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Rba,
    Mrba,
    Model,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderKind {
    Hasse,
    Frame,
    Embedding,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    All,
    StronglyProper,
    Ultra,
    Frb,
}

#[derive(Args)]
struct Target {
    /// Algebra or modal algebra file; without `fk` the operator is the identity.
    #[arg(long, alias = "algebra", conflicts_with = "model", required_unless_present = "model")]
    mrba: Option<PathBuf>,
    /// Assignment such as `p=X_B,q=X_R`; omitted, every assignment is tried.
    #[arg(long, requires = "mrba")]
    assign: Option<String>,
    #[arg(long)]
    model: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the laws of an algebra, modal algebra or model.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        path: PathBuf,
    },
    /// Decide validity of a formula.
    Validity {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        formula: String,
        /// Proposition limit of the all-assignment sweep.
        #[arg(long, default_value_t = DEFAULT_SWEEP_PROPS)]
        max_props: usize,
    },
    /// Run a verification battery.
    Suite {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES))]
        name: String,
    },
    /// Graphviz rendering of an algebra, a model or an embedding.
    Render {
        #[arg(value_enum)]
        what: RenderKind,
        path: PathBuf,
    },
    /// Translate a model to its modal algebra, or a modal algebra to its model.
    Dualize {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a structure with its dual on a formula battery.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        prop: u8,
        #[command(flatten)]
        target: Target,
        /// `depth=2,budget=6`, or `@file` with one formula per line.
        #[arg(long)]
        battery: Option<String>,
    },
    /// List the filters of an algebra.
    Filters {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Frb)]
        kind: KindArg,
    },
    /// The embedding into pairs of `F^RB` points.
    Stone { path: PathBuf },
}

/// Exit 1: a check or suite failed. Exit 2: bad input.
enum Failure {
    Check(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Run = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn points_for(max_elements: u64) -> usize {
    (0..=DEFAULT_MATERIALIZE_POINTS).take_while(|&n| 3u64.saturating_pow(n as u32) <= max_elements).last().unwrap_or(0)
}

struct Loaded {
    mrba: Mrba,
    has_fk: bool,
}

fn load_algebra(path: &Path, opts: &Opts) -> Result<Loaded, Error> {
    let file = parse_algebra_file(&read(path)?)?;
    let algebra = algebra_from_file(&file, points_for(opts.max_elements))?;
    if algebra.size() as u64 > opts.max_elements {
        return Err(Error::CapExceeded { what: "algebra elements", needed: algebra.size(), cap: opts.max_elements as usize });
    }
    match file.fk() {
        Some(fk) => {
            let fk = fk.iter().map(|x| algebra.element(x)).collect::<Result<Vec<_>, _>>()?;
            Ok(Loaded { mrba: Mrba::new(algebra, fk)?, has_fk: true })
        }
        None => Ok(Loaded { mrba: Mrba::identity(algebra), has_fk: false }),
    }
}

fn load_model(path: &Path) -> Result<AwarenessModel, Error> {
    parse_model(&read(path)?)
}

fn print_report(what: &str, r: &AxiomReport, opts: &Opts) {
    match opts.format {
        Format::Json => println!("{}", to_pretty_json(&json!({ "checked": what, "passed": r.passed(), "report": r }))),
        _ => print!("{what}: {r}"),
    }
}

fn check_mrba(m: &Mrba, opts: &Opts) -> AxiomReport {
    m.check(!opts.no_fd)
}

fn cmd_check(kind: CheckKind, path: &Path, opts: &Opts) -> Run {
    let r = match kind {
        CheckKind::Rba => load_algebra(path, opts)?.mrba.algebra.check_rba(),
        CheckKind::Mrba => {
            let l = load_algebra(path, opts)?;
            if !l.has_fk {
                return Err(Error::Input("modal algebra file has no `fk` table".into()).into());
            }
            check_mrba(&l.mrba, opts)
        }
        CheckKind::Model => load_model(path)?.check(),
    };
    print_report(&path.display().to_string(), &r, opts);
    Ok(r.passed())
}

fn parse_formula(text: &str) -> Result<Formula, Error> {
    Ok(parse(text)?)
}

fn cmd_validity(t: &Target, text: &str, max_props: usize, opts: &Opts) -> Run {
    let f = parse_formula(text)?;
    if let Some(path) = &t.model {
        let m = load_model(path)?;
        let r = m.check();
        if !r.passed() {
            return Err(Failure::Check(format!("model: {r}")));
        }
        let known: Vec<Prop> = m.props().cloned().collect();
        if let Some(p) = props_of(&f).into_iter().find(|p| !known.contains(p)) {
            return Err(Error::UnboundProp(p.to_string()).into());
        }
        let ext = m.extension(&f);
        let failing = ext.domain & !ext.truth;
        let valid = failing == 0;
        let fr = &m.frame;
        match opts.format {
            Format::Json => println!(
                "{}",
                to_pretty_json(&json!({
                    "formula": f.to_string(), "valid": valid,
                    "defined": fr.format_set(ext.domain), "true": fr.format_set(ext.truth), "false": fr.format_set(failing),
                }))
            ),
            _ => {
                println!("{text}: {}", if valid { "valid" } else { "invalid" });
                println!("  defined at {}, true at {}", fr.format_set(ext.domain), fr.format_set(ext.truth));
                if !valid {
                    println!("  false at {}", fr.format_set(failing));
                }
            }
        }
        return Ok(valid);
    }
    let l = load_algebra(t.mrba.as_deref().expect("clap requires a target"), opts)?;
    if !l.has_fk && !f.is_modal_free() {
        return Err(Error::Input("modal formula on an algebra without `fk`".into()).into());
    }
    let r = if l.has_fk { check_mrba(&l.mrba, opts) } else { l.mrba.algebra.check_rba() };
    if !r.passed() {
        return Err(Failure::Check(format!("algebra: {r}")));
    }
    let alg = &l.mrba.algebra;
    let (valid, witness) = match &t.assign {
        Some(s) => {
            let h = Assignment::parse(alg, s)?;
            let x = evaluate(&l.mrba, &h, &f)?;
            let top = alg.relative_top(x);
            (x == top, json!({ "assignment": h.display(alg).to_string(), "value": alg.label(x), "relative_top": alg.label(top) }))
        }
        None => match find_invalidating(&l.mrba, &f, max_props)? {
            None => (true, json!(null)),
            Some(h) => {
                let x = evaluate(&l.mrba, &h, &f)?;
                (false, json!({ "assignment": h.display(alg).to_string(), "value": alg.label(x), "relative_top": alg.label(alg.relative_top(x)) }))
            }
        },
    };
    match opts.format {
        Format::Json => println!("{}", to_pretty_json(&json!({ "formula": f.to_string(), "valid": valid, "witness": witness }))),
        _ => {
            println!("{text}: {}", if valid { "valid" } else { "invalid" });
            if !witness.is_null() {
                println!(
                    "  under {}: value {}, relative top {}",
                    witness["assignment"].as_str().unwrap_or(""),
                    witness["value"].as_str().unwrap_or(""),
                    witness["relative_top"].as_str().unwrap_or("")
                );
            }
        }
    }
    Ok(valid)
}

fn cmd_suite(name: &str, opts: &Opts) -> Run {
    let mut cfg = SuiteConfig { seed: opts.seed, ..SuiteConfig::default() };
    if let Some(b) = opts.budget {
        cfg.soundness_budget = b as usize;
        cfg.duality_budget = b as usize;
        cfg.classical_budget = b as usize;
    }
    if let Some(w) = opts.max_worlds {
        cfg.max_worlds = w as usize;
    }
    let out = run_suite(name, &cfg)?.expect("clap restricts suite names");
    match opts.format {
        Format::Json => println!("{}", to_pretty_json(&json!({ "suite": name, "passed": out.passed(), "lines": out.lines }))),
        _ => {
            print!("{out}");
            let failed = out.lines.iter().filter(|l| !l.passed).count();
            println!("{name}: {} checks, {failed} failed", out.lines.len());
        }
    }
    Ok(out.passed())
}

fn cmd_render(what: RenderKind, path: &Path, opts: &Opts) -> Run {
    let text = match what {
        RenderKind::Hasse | RenderKind::Embedding => {
            let alg: Algebra = load_algebra(path, opts)?.mrba.algebra;
            let r = alg.check_rba();
            if !r.passed() {
                return Err(Failure::Check(format!("algebra: {r}")));
            }
            match what {
                RenderKind::Hasse => rba::dot::hasse(&alg)?,
                _ => rba::dot::embedding(&alg)?,
            }
        }
        RenderKind::Frame => rba::dot::frame(&load_model(path)?),
    };
    print!("{text}");
    Ok(true)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Input(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn model_cap(opts: &Opts) -> usize {
    opts.max_worlds.map_or(DEFAULT_DUAL_WORLDS.max(DEFAULT_MATERIALIZE_POINTS), |w| w as usize)
}

fn require_assignment(t: &Target, alg: &Algebra) -> Result<Assignment, Error> {
    let s = t.assign.as_deref().ok_or_else(|| Error::Input("`--assign` is required with `--mrba`".into()))?;
    Assignment::parse(alg, s)
}

fn cmd_dualize(t: &Target, out: Option<&Path>, opts: &Opts) -> Run {
    if let Some(path) = &t.model {
        let d = model_to_mrba_with_cap(&load_model(path)?, model_cap(opts))?;
        write_out(out, &to_pretty_json(&mrba_to_file(&d.mrba)))?;
        eprintln!("h^M: {}", d.assignment.display(&d.mrba.algebra));
        return Ok(true);
    }
    let l = load_algebra(t.mrba.as_deref().expect("clap requires a target"), opts)?;
    let h = require_assignment(t, &l.mrba.algebra)?;
    let d = mrba_to_model(&l.mrba, &h)?;
    write_out(out, &to_pretty_json(&model_to_file(&d.model)))?;
    Ok(true)
}

fn battery(spec: Option<&str>, props: &[Prop], opts: &Opts) -> Result<Battery, Error> {
    let budget = opts.budget.unwrap_or(6);
    match spec {
        None => Ok(Battery::closure(props, budget as usize, 2)),
        Some(s) if s.starts_with('@') => {
            let text = read(Path::new(&s[1..]))?;
            Ok(Battery::Formulas(rba::syntax::parse_formula_file(&text)?))
        }
        Some(s) => Battery::parse_spec(s, props),
    }
}

fn cmd_verify(prop: u8, t: &Target, spec: Option<&str>, opts: &Opts) -> Run {
    let report = match (prop, &t.model, &t.mrba) {
        (1, Some(path), _) => {
            let m = load_model(path)?;
            let props: Vec<Prop> = m.props().cloned().collect();
            verify_prop1(&m, &battery(spec, &props, opts)?)?
        }
        (2, _, Some(path)) => {
            let l = load_algebra(path, opts)?;
            let h = require_assignment(t, &l.mrba.algebra)?;
            let props: Vec<Prop> = h.0.keys().cloned().collect();
            verify_prop2(&l.mrba, &h, &battery(spec, &props, opts)?)?
        }
        (1, None, _) => return Err(Error::Input("`--prop 1` takes `--model`".into()).into()),
        _ => return Err(Error::Input("`--prop 2` takes `--mrba` and `--assign`".into()).into()),
    };
    match opts.format {
        Format::Json => println!(
            "{}",
            to_pretty_json(&json!({
                "passed": report.passed(), "checked": report.checked,
                "mismatches": report.mismatches.iter().map(|m| json!({ "formula": m.formula, "algebra": m.algebra, "model": m.model })).collect::<Vec<_>>(),
            }))
        ),
        _ => print!("{report}"),
    }
    Ok(report.passed())
}

fn cmd_filters(path: &Path, kind: KindArg, opts: &Opts) -> Run {
    let alg = load_algebra(path, opts)?.mrba.algebra;
    let kind = match kind {
        KindArg::All => FilterKind::All,
        KindArg::StronglyProper => FilterKind::StronglyProper,
        KindArg::Ultra => FilterKind::Ultra,
        KindArg::Frb => FilterKind::Frb,
    };
    let fam = enumerate(&alg, kind)?;
    match opts.format {
        Format::Json => println!("{}", to_pretty_json(&json!({ "kind": kind, "filters": fam.to_names(&alg) }))),
        _ => {
            for u in &fam.filters {
                println!("{}", u.display(&alg));
            }
            println!("{} filters", fam.len());
        }
    }
    Ok(true)
}

fn cmd_stone(path: &Path, opts: &Opts) -> Run {
    let alg = load_algebra(path, opts)?.mrba.algebra;
    let e = stone_embed(&alg)?;
    let names: Vec<String> = e.points.iter().map(|u| u.display(&alg).to_string()).collect();
    let set = |bits: u128| -> Vec<usize> { (0..names.len()).filter(|&i| bits >> i & 1 == 1).collect() };
    match opts.format {
        Format::Json => println!(
            "{}",
            to_pretty_json(&json!({
                "points": names,
                "image": alg.elements().map(|x| { let p = e.image[x.index()]; json!({ "element": alg.label(x), "truth": set(p.truth), "domain": set(p.domain) }) }).collect::<Vec<_>>(),
                "passed": e.report.passed(),
            }))
        ),
        _ => {
            for (i, n) in names.iter().enumerate() {
                println!("u{i} = {n}");
            }
            for x in alg.elements() {
                let p = e.image[x.index()];
                let show = |s: Vec<usize>| s.iter().map(|i| format!("u{i}")).collect::<Vec<_>>().join(",");
                println!("{} ↦ ({{{}}}, {{{}}})", alg.label(x), show(set(p.truth)), show(set(p.domain)));
            }
            println!(
                "injective: {}, homomorphic: {}",
                e.report.injective,
                e.report.neg_failures.is_empty() && e.report.meet_failures.is_empty() && e.report.join_failures.is_empty()
            );
        }
    }
    Ok(e.report.passed())
}

fn run(cli: &Cli) -> Run {
    let o = &cli.opts;
    if let Some(j) = o.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j as usize)
            .build_global()
            .map_err(|e| Error::Input(format!("--jobs: {e}")))?;
    }
    if o.format == Format::Dot && !matches!(cli.command, Command::Render { .. }) {
        return Err(Error::Input("`--format dot` applies to `render` only".into()).into());
    }
    match &cli.command {
        Command::Check { kind, path } => cmd_check(*kind, path, o),
        Command::Validity { target, formula, max_props } => cmd_validity(target, formula, *max_props, o),
        Command::Suite { name } => cmd_suite(name, o),
        Command::Render { what, path } => cmd_render(*what, path, o),
        Command::Dualize { target, out } => cmd_dualize(target, out.as_deref(), o),
        Command::Verify { prop, target, battery } => cmd_verify(*prop, target, battery.as_deref(), o),
        Command::Filters { path, kind } => cmd_filters(path, *kind, o),
        Command::Stone { path } => cmd_stone(path, o),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprint!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
