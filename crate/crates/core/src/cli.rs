//! Command-line front end. `run` parses arguments, executes one command and
//! returns the process exit code: 0 for success or a true verdict, 1 for a
//! false verdict, 2 for input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{is_good_action, quotient_at_level, restrict_to_subgroup};
use crate::chart::{
    charts_equivalent, classify_codim2, classify_kind, common_dominating_chart, conical_restriction, dominates,
    lift_chart, local_characteristic, quotient_chart, reduce_chart, stratify, validate_chart, Chart,
};
use crate::cone::{
    angle_of_model, cone_distance, local_holonomy_order, model_of_angle, rational_conifold_verdict, ConeAngle,
    ConeParams, RadiusBound,
};
use crate::covering::{
    compose, connected_pullback, extract_cocycle, fox_complete, is_regular, minimal_regularization, pullback, rh_check,
    CoveringMap,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::io::{
    read_json, to_json, ActionFile, AnglesFile, ChartFile, ComplexFile, CoveringFile, GeneratorEntry, IdentFile,
    InstanceFile, MonodromyFile,
};
use crate::perm::{PermGroup, Permutation};
use crate::pi1::branchfold_pi1;
use crate::simplicial::{is_good_subcomplex, is_good_subcomplex_star, is_pseudo_manifold};
use crate::workspace::Workspace;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Parser)]
#[command(name = "branchfold", version, about = "Branched coverings, simplicial group actions and branchfold charts")]
pub struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Resolve inputs and write outputs inside this workspace directory.
    #[arg(long, global = true)]
    pub workspace: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Goodness and pseudo-manifold checks.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Branched coverings.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Simplicial group actions.
    #[command(subcommand)]
    Action(ActionCmd),
    /// Branchfold charts.
    #[command(subcommand)]
    Chart(ChartCmd),
    /// Global branchfold data.
    #[command(subcommand)]
    Branchfold(BranchfoldCmd),
    /// Cone metrics and cone angles.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Fixture corpus.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Debug, Subcommand)]
pub enum CheckCmd {
    /// Is `sub` a good subcomplex of `complex`?
    Good {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        sub: String,
    },
    /// Is the complex a pseudo-manifold?
    Pm {
        #[arg(long)]
        complex: String,
        /// Accept codimension-1 faces with a single coface.
        #[arg(long)]
        allow_boundary: bool,
    },
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Where to write the result.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum CoverCmd {
    /// Fox completion of a monodromy file.
    Build {
        #[arg(long)]
        monodromy: String,
        #[command(flatten)]
        out: OutArg,
    },
    Analyze {
        covering: String,
    },
    /// Canonical cocycle of a covering.
    Extract {
        covering: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// `g ∘ f`.
    Compose {
        f: String,
        g: String,
        #[command(flatten)]
        out: OutArg,
    },
    Pullback {
        f1: String,
        f2: String,
        /// Keep only the component through the base sheet.
        #[arg(long)]
        connected: bool,
        #[command(flatten)]
        out: OutArg,
    },
    Regularize {
        covering: String,
        #[command(flatten)]
        out: OutArg,
    },
    Components {
        covering: String,
    },
    /// Seeded random cocycle on the octahedron.
    Random {
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum ActionCmd {
    Validate {
        action: String,
    },
    Quotient {
        action: String,
        #[arg(long, default_value_t = 2)]
        level: usize,
        #[command(flatten)]
        out: OutArg,
    },
    Good {
        action: String,
    },
    Restrict {
        action: String,
        /// Generators of the subgroup, in cycle notation.
        #[arg(long, num_args = 0..)]
        subgroup: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChartCmd {
    Validate {
        chart: String,
    },
    Index {
        chart: String,
    },
    Restrict {
        chart: String,
        #[arg(long)]
        vertex: u32,
        #[command(flatten)]
        out: OutArg,
    },
    Reduce {
        chart: String,
        #[command(flatten)]
        out: OutArg,
    },
    Dominates {
        c1: String,
        c2: String,
    },
    Equiv {
        c1: String,
        c2: String,
    },
    Common {
        c1: String,
        c2: String,
        #[command(flatten)]
        out: OutArg,
    },
    Lift {
        #[arg(long)]
        covering: String,
        #[arg(long)]
        chart: String,
        /// Identification of the covering's base with U.
        #[arg(long)]
        ident: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    Quotient {
        chart: String,
        /// Generators of L acting on U, in cycle notation.
        #[arg(long = "by", num_args = 1..)]
        by: Vec<String>,
        #[command(flatten)]
        out: OutArg,
    },
    LocalChar {
        chart: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum BranchfoldCmd {
    Stratify {
        chart: String,
    },
    /// Codimension-2 model of each chart and the kind of the collection.
    Classify {
        #[arg(required = true)]
        charts: Vec<String>,
    },
    Pi1 {
        instance: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BoundArg {
    Conventional,
    Literal,
}

#[derive(Debug, Subcommand)]
pub enum ConeCmd {
    Dist {
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        t2: f64,
        /// Angle at the apex; capped at π.
        #[arg(long, alias = "link-distance")]
        theta: f64,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, value_enum, default_value = "conventional")]
        bound: BoundArg,
    },
    /// Cone angle `2πk/h` of a model.
    Angle {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
    },
    Model {
        angle: String,
    },
    Holonomy {
        angle: String,
    },
    Rational {
        angles: Vec<String>,
        #[arg(long)]
        file: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FixturesCmd {
    /// Writes the fixture corpus into a workspace.
    Install {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Checks manifest hashes.
    Verify {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Result of one command.
pub struct Outcome {
    pub verdict: Option<bool>,
    pub text: String,
    pub data: Value,
}

impl Outcome {
    fn new(verdict: Option<bool>, text: impl Into<String>, data: Value) -> Self {
        Outcome { verdict, text: text.into(), data }
    }
}

struct Ctx {
    workspace: Option<Workspace>,
    seed: u64,
}

impl Ctx {
    fn path(&self, arg: &str) -> PathBuf {
        match &self.workspace {
            Some(ws) if !Path::new(arg).is_absolute() => ws.resolve(arg),
            _ => PathBuf::from(arg),
        }
    }

    fn load<T: for<'de> serde::Deserialize<'de>>(&self, arg: &str) -> Result<T> {
        read_json(&self.path(arg))
    }

    fn chart(&self, arg: &str) -> Result<Chart> {
        self.load::<ChartFile>(arg)?.to_chart()
    }

    fn covering(&self, arg: &str) -> Result<CoveringMap> {
        self.load::<CoveringFile>(arg)?.to_covering()
    }

    /// Writes `value`; inside a workspace the object is registered under its name.
    fn save<T: Serialize>(&mut self, out: &OutArg, kind: &str, value: &T) -> Result<Option<String>> {
        let Some(target) = &out.out else { return Ok(None) };
        let text = to_json(value)?;
        match &mut self.workspace {
            Some(ws) => {
                let name = target.trim_end_matches(".json").trim_end_matches(&format!(".{kind}"));
                let path = ws.put(name, kind, &text)?;
                Ok(Some(path.display().to_string()))
            }
            None => {
                std::fs::write(target, text)?;
                Ok(Some(target.clone()))
            }
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Check(x) => format!("check {}", variant(x)),
        Command::Cover(x) => format!("cover {}", variant(x)),
        Command::Action(x) => format!("action {}", variant(x)),
        Command::Chart(x) => format!("chart {}", variant(x)),
        Command::Branchfold(x) => format!("branchfold {}", variant(x)),
        Command::Cone(x) => format!("cone {}", variant(x)),
        Command::Fixtures(x) => format!("fixtures {}", variant(x)),
    }
}

fn variant<T: std::fmt::Debug>(x: &T) -> String {
    let dbg = format!("{x:?}");
    let head: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
    let mut out = String::new();
    for (i, ch) in head.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(ch.to_ascii_lowercase());
    }
    out
}

/// Parses `args` (including the program name), runs the command and writes the report.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let name = command_name(&cli.command);
    let result = (|| {
        let workspace = cli.workspace.as_deref().map(Workspace::open).transpose()?;
        let mut ctx = Ctx { workspace, seed: cli.seed };
        execute(&cli.command, &mut ctx)
    })();
    match result {
        Ok(o) => {
            if cli.json {
                let doc = json!({"command": name, "seed": cli.seed, "verdict": o.verdict, "result": o.data});
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
            } else {
                let _ = writeln!(out, "{}", o.text.trim_end());
            }
            match o.verdict {
                Some(false) => 1,
                _ => 0,
            }
        }
        Err(e) => {
            if cli.json {
                let doc = json!({"command": name, "seed": cli.seed, "verdict": null, "error": e.to_string()});
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cmd: &Command, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        Command::Check(c) => check(c, ctx),
        Command::Cover(c) => cover(c, ctx),
        Command::Action(c) => action(c, ctx),
        Command::Chart(c) => chart(c, ctx),
        Command::Branchfold(c) => branchfold(c, ctx),
        Command::Cone(c) => cone(c),
        Command::Fixtures(c) => fixtures_cmd(c, ctx),
    }
}

fn check(cmd: &CheckCmd, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        CheckCmd::Good { complex, sub } => {
            let c = ctx.load::<ComplexFile>(complex)?.to_complex()?;
            let s = ctx.load::<ComplexFile>(sub)?.to_complex()?;
            c.check_subcomplex(&s)?;
            let link = is_good_subcomplex(&c, &s);
            let star = is_good_subcomplex_star(&c, &s);
            Ok(Outcome::new(
                Some(link),
                format!("good: {link}\nstar test: {star}"),
                json!({"good": link, "star_test": star}),
            ))
        }
        CheckCmd::Pm { complex, allow_boundary } => {
            let c = ctx.load::<ComplexFile>(complex)?.to_complex()?;
            let r = is_pseudo_manifold(&c);
            let ok = if *allow_boundary { r.holds_with_boundary() } else { r.holds() };
            Ok(Outcome::new(
                Some(ok),
                format!("pseudo-manifold: {ok}\n{r:?}"),
                json!({"pseudo_manifold": ok, "details": r}),
            ))
        }
    }
}

fn covering_summary(f: &CoveringMap) -> Result<(String, Value)> {
    let rep = f.analyze();
    let regular = is_regular(f)?.regular;
    let rh = if f.base.dim() == 2 && rep.components == 1 { rh_check(f).ok() } else { None };
    let text = format!(
        "degree: {}\nchi total: {}\nchi base: {}\ncomponents: {}\nbranched covering: {}\nregular: {}\nsingular vertices: {}\npseudo-singular vertices: {}\nbranch vertices: {}",
        rep.degree,
        rep.euler_total,
        rep.euler_base,
        rep.components,
        rep.is_branched_covering,
        regular,
        f.singular.vertices().len(),
        f.pseudo_singular.vertices().len(),
        f.branch.vertices().len(),
    );
    let mut data = serde_json::to_value(&rep)?;
    data["regular"] = json!(regular);
    data["riemann_hurwitz"] = json!(rh);
    Ok((text, data))
}

fn with_written(mut text: String, mut data: Value, written: Option<String>) -> (String, Value) {
    if let Some(p) = written {
        text.push_str(&format!("\nwritten: {p}"));
        data["written"] = json!(p);
    }
    (text, data)
}

fn cover(cmd: &CoverCmd, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        CoverCmd::Build { monodromy, out } => {
            let mc = ctx.load::<MonodromyFile>(monodromy)?.to_cocycle()?;
            let f = fox_complete(&mc)?;
            let written = ctx.save(out, "cover", &CoveringFile::from_covering(&f))?;
            let (text, data) = covering_summary(&f)?;
            let (text, data) = with_written(text, data, written);
            Ok(Outcome::new(None, text, data))
        }
        CoverCmd::Analyze { covering } => {
            let f = ctx.covering(covering)?;
            let (text, data) = covering_summary(&f)?;
            Ok(Outcome::new(Some(f.is_branched_covering()), text, data))
        }
        CoverCmd::Extract { covering, out } => {
            let mc = extract_cocycle(&ctx.covering(covering)?)?;
            let file = MonodromyFile::from_cocycle(&mc);
            let written = ctx.save(out, "monodromy", &file)?;
            let data = serde_json::to_value(&file)?;
            let (text, data) = with_written(
                format!("sheets: {}\nnon-identity transitions: {}", file.sheets, file.transitions.len()),
                data,
                written,
            );
            Ok(Outcome::new(None, text, data))
        }
        CoverCmd::Compose { f, g, out } => {
            let h = compose(&ctx.covering(f)?, &ctx.covering(g)?)?;
            let written = ctx.save(out, "cover", &CoveringFile::from_covering(&h))?;
            let (text, data) = covering_summary(&h)?;
            let (text, data) = with_written(text, data, written);
            Ok(Outcome::new(Some(h.is_branched_covering()), text, data))
        }
        CoverCmd::Pullback { f1, f2, connected, out } => {
            let (a, b) = (ctx.covering(f1)?, ctx.covering(f2)?);
            let pb = if *connected { connected_pullback(&a, &b)? } else { pullback(&a, &b)? };
            let written = ctx.save(out, "cover", &CoveringFile::from_covering(&pb.f))?;
            let (text, data) = covering_summary(&pb.f)?;
            let (text, data) = with_written(text, data, written);
            Ok(Outcome::new(None, text, data))
        }
        CoverCmd::Regularize { covering, out } => {
            let f = ctx.covering(covering)?;
            let reg = minimal_regularization(&f)?;
            let written = ctx.save(out, "cover", &CoveringFile::from_covering(&reg.r))?;
            let text = format!(
                "degree: {}\ndeck group order: {}\ncore order: {}\nalready regular: {}",
                reg.r.degree,
                reg.deck.order(),
                reg.core_order,
                reg.r.degree == f.degree
            );
            let data = json!({"degree": reg.r.degree, "deck_order": reg.deck.order(), "core_order": reg.core_order});
            let (text, data) = with_written(text, data, written);
            Ok(Outcome::new(None, text, data))
        }
        CoverCmd::Components { covering } => {
            let parts = ctx.covering(covering)?.components()?;
            let degrees: Vec<usize> = parts.iter().map(|p| p.degree).collect();
            Ok(Outcome::new(
                None,
                format!("components: {}\ndegrees: {degrees:?}", parts.len()),
                json!({"components": parts.len(), "degrees": degrees}),
            ))
        }
        CoverCmd::Random { out } => {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let mc = fixtures::random_octahedron_cocycle(&mut rng);
            let file = MonodromyFile::from_cocycle(&mc);
            let written = ctx.save(out, "monodromy", &file)?;
            let (text, data) = with_written(
                format!("sheets: {}\nseed: {}", mc.sheets, ctx.seed),
                json!({"sheets": mc.sheets, "monodromy": file}),
                written,
            );
            Ok(Outcome::new(None, text, data))
        }
    }
}

fn parse_gens(gens: &[String], n: usize) -> Result<Vec<Permutation>> {
    gens.iter().map(|g| Permutation::parse(g, n)).collect()
}

fn action(cmd: &ActionCmd, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        ActionCmd::Validate { action } => {
            let file = ctx.load::<ActionFile>(action)?;
            match file.to_action().and_then(|a| a.validate().map(|_| a)) {
                Ok(a) => Ok(Outcome::new(
                    Some(true),
                    format!("valid: true\ngroup order: {}", a.group.order()),
                    json!({"valid": true, "order": a.group.order()}),
                )),
                Err(e @ (Error::NotSimplicial(_) | Error::NotEffective(_) | Error::ActionInvalid(_))) => {
                    Ok(Outcome::new(
                        Some(false),
                        format!("valid: false\nreason: {e}"),
                        json!({"valid": false, "reason": e.to_string()}),
                    ))
                }
                Err(e) => Err(e),
            }
        }
        ActionCmd::Quotient { action, level, out } => {
            let a = ctx.load::<ActionFile>(action)?.to_action()?;
            let q = quotient_at_level(&a, *level)?;
            let written = ctx.save(out, "complex", &ComplexFile::from_complex(&q.quotient))?;
            let chi = q.quotient.euler_characteristic();
            let branch_points = q.branch.vertices().len();
            let (text, data) = with_written(
                format!(
                    "chi: {chi}\nbranch dimension: {}\nbranch vertices: {branch_points}\nquotient vertices: {}",
                    q.branch.dim(),
                    q.quotient.vertices().len()
                ),
                json!({"chi": chi, "branch_dim": q.branch.dim(), "branch_vertices": branch_points, "level": q.level}),
                written,
            );
            Ok(Outcome::new(None, text, data))
        }
        ActionCmd::Good { action } => {
            let a = ctx.load::<ActionFile>(action)?.to_action()?;
            let r = is_good_action(&a)?;
            Ok(Outcome::new(
                Some(r.good),
                format!("good: {}\nsingular dimension: {}", r.good, r.singular_dim),
                serde_json::to_value(&r)?,
            ))
        }
        ActionCmd::Restrict { action, subgroup } => {
            let a = ctx.load::<ActionFile>(action)?.to_action()?;
            let h = PermGroup::generate(a.group.degree(), &parse_gens(subgroup, a.group.degree())?)?;
            let r = restrict_to_subgroup(&a, &h)?;
            Ok(Outcome::new(
                None,
                format!(
                    "subgroup order: {}\nnormal: {}\nintermediate degree: {}\nintermediate regular: {}",
                    h.order(),
                    r.normal,
                    r.intermediate.degree,
                    r.regular
                ),
                json!({"order": h.order(), "normal": r.normal, "degree": r.intermediate.degree, "regular": r.regular}),
            ))
        }
    }
}

fn chart_summary(c: &Chart) -> Value {
    json!({
        "G": c.g.order(),
        "H": c.h.order(),
        "K": c.k.order(),
        "apex": c.apex,
        "level": c.level,
        "index": c.index().ok(),
        "top_simplices": c.p.top_simplices().len(),
    })
}

fn chart_text(c: &Chart) -> String {
    let index = c.index().map(|i| i.to_string()).unwrap_or_else(|_| "-".into());
    format!("|G| = {}, |H| = {}, |K| = {}, index {index}, level {}", c.g.order(), c.h.order(), c.k.order(), c.level)
}

fn chart(cmd: &ChartCmd, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        ChartCmd::Validate { chart } => {
            let c = ctx.chart(chart)?;
            let r = validate_chart(&c);
            let ok = r.passed();
            Ok(Outcome::new(Some(ok), format!("valid: {ok}\n{r}"), json!({"valid": ok, "report": r})))
        }
        ChartCmd::Index { chart } => {
            let i = ctx.chart(chart)?.index()?;
            Ok(Outcome::new(None, i.to_string(), serde_json::to_value(i)?))
        }
        ChartCmd::Restrict { chart, vertex, out } => {
            let c = ctx.chart(chart)?;
            let r = conical_restriction(&c, *vertex)?;
            let written = ctx.save(out, "chart", &ChartFile::from_chart(&r.chart))?;
            let mut data = chart_summary(&r.chart);
            data["stabilizer"] = json!(r.stabilizer.order());
            let (text, data) = with_written(
                format!("{}\nstabilizer order: {}", chart_text(&r.chart), r.stabilizer.order()),
                data,
                written,
            );
            Ok(Outcome::new(None, text, data))
        }
        ChartCmd::Reduce { chart, out } => {
            let c = ctx.chart(chart)?;
            let r = reduce_chart(&c)?;
            let written = ctx.save(out, "chart", &ChartFile::from_chart(&r.chart))?;
            let mut data = chart_summary(&r.chart);
            data["N"] = json!(r.n.order());
            let (text, data) = with_written(format!("|N| = {}\n{}", r.n.order(), chart_text(&r.chart)), data, written);
            Ok(Outcome::new(None, text, data))
        }
        ChartCmd::Dominates { c1, c2 } => {
            let w = dominates(&ctx.chart(c1)?, &ctx.chart(c2)?)?;
            let n = w.as_ref().map(|w| w.quotient.n.order());
            let text = match n {
                Some(n) => format!("dominates: true\n|N| = {n}"),
                None => "dominates: false".into(),
            };
            Ok(Outcome::new(Some(w.is_some()), text, json!({"dominates": w.is_some(), "N": n})))
        }
        ChartCmd::Equiv { c1, c2 } => {
            let eq = charts_equivalent(&ctx.chart(c1)?, &ctx.chart(c2)?)?;
            Ok(Outcome::new(Some(eq), format!("equivalent: {eq}"), json!({"equivalent": eq})))
        }
        ChartCmd::Common { c1, c2, out } => {
            let cc = common_dominating_chart(&ctx.chart(c1)?, &ctx.chart(c2)?)?;
            let written = ctx.save(out, "chart", &ChartFile::from_chart(&cc.chart))?;
            let mut data = chart_summary(&cc.chart);
            data["N1"] = json!(cc.over_first.quotient.n.order());
            data["N2"] = json!(cc.over_second.quotient.n.order());
            let (text, data) = with_written(chart_text(&cc.chart), data, written);
            Ok(Outcome::new(None, text, data))
        }
        ChartCmd::Lift { covering, chart, ident, out } => {
            let f = ctx.covering(covering)?;
            let c = ctx.chart(chart)?;
            let ident = ident.as_deref().map(|p| ctx.load::<IdentFile>(p)).transpose()?.map(|i| i.to_map());
            let lifted = lift_chart(&f, &c, ident.as_ref())?;
            let written = ctx.save(out, "chart", &ChartFile::from_chart(&lifted.chart))?;
            let (text, data) = with_written(chart_text(&lifted.chart), chart_summary(&lifted.chart), written);
            Ok(Outcome::new(None, text, data))
        }
        ChartCmd::Quotient { chart, by, out } => {
            let c = ctx.chart(chart)?;
            let u = c.u()?;
            let gens = parse_gens(by, u.quotient.max_vertex() as usize)?;
            let q = quotient_chart(&c, &gens)?;
            let written = ctx.save(out, "chart", &ChartFile::from_chart(&q.chart))?;
            let mut data = chart_summary(&q.chart);
            data["pi_L_degree"] = json!(q.pi_l.degree);
            let (text, data) =
                with_written(format!("{}\nprojection degree: {}", chart_text(&q.chart), q.pi_l.degree), data, written);
            Ok(Outcome::new(None, text, data))
        }
        ChartCmd::LocalChar { chart } => {
            let lc = local_characteristic(&ctx.chart(chart)?)?;
            Ok(Outcome::new(
                None,
                format!(
                    "image order: {}\n|H| = {}, |H ∩ K| = {}\nmeridian order: {}",
                    lc.image_order,
                    lc.h_order,
                    lc.h_cap_k_order,
                    lc.meridian_order.map(|m| m.to_string()).unwrap_or_else(|| "-".into())
                ),
                serde_json::to_value(&lc)?,
            ))
        }
    }
}

fn branchfold(cmd: &BranchfoldCmd, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        BranchfoldCmd::Stratify { chart } => {
            let st = stratify(&ctx.chart(chart)?)?;
            let mut text = format!("components: {}", st.components.len());
            for c in &st.components {
                text.push_str(&format!(
                    "\n  dim {} label {} (|G|, |H|, |K|) = ({}, {}, {}) simplices {}",
                    c.dim,
                    c.label,
                    c.model.g,
                    c.model.h,
                    c.model.k,
                    c.simplices.len()
                ));
            }
            Ok(Outcome::new(None, text, serde_json::to_value(&st)?))
        }
        BranchfoldCmd::Classify { charts } => {
            let cs = charts.iter().map(|c| ctx.chart(c)).collect::<Result<Vec<_>>>()?;
            let mut lines = Vec::new();
            let mut models = Vec::new();
            for (name, c) in charts.iter().zip(&cs) {
                match classify_codim2(c) {
                    Ok(m) => {
                        lines.push(format!("{name}: ({}, {})", m.h, m.k));
                        models.push(json!({"chart": name, "h": m.h, "k": m.k}));
                    }
                    Err(e @ Error::NotCodimTwo(_)) => {
                        lines.push(format!("{name}: {e}"));
                        models.push(json!({"chart": name, "error": e.to_string()}));
                    }
                    Err(e) => return Err(e),
                }
            }
            let reduced = cs.iter().map(|c| reduce_chart(c).map(|r| r.chart)).collect::<Result<Vec<_>>>()?;
            let kind = classify_kind(&reduced);
            lines.push(format!("kind: {}", serde_json::to_value(kind)?.as_str().unwrap_or("")));
            Ok(Outcome::new(None, lines.join("\n"), json!({"models": models, "kind": kind})))
        }
        BranchfoldCmd::Pi1 { instance } => {
            let inst = ctx.load::<InstanceFile>(instance)?.to_instance()?;
            let r = branchfold_pi1(&inst)?;
            Ok(Outcome::new(
                None,
                format!(
                    "presentation: {}\nsimplified: {}\nabelianization: {}",
                    r.presentation, r.simplified, r.abelianization
                ),
                serde_json::to_value(&r)?,
            ))
        }
    }
}

fn cone(cmd: &ConeCmd) -> Result<Outcome> {
    match cmd {
        ConeCmd::Dist { k, t1, t2, theta, r, bound } => {
            let bound = match bound {
                BoundArg::Conventional => RadiusBound::Conventional,
                BoundArg::Literal => RadiusBound::Literal,
            };
            let mut p = ConeParams::new(*k, *theta, *t1, *t2, bound);
            if let Some(r) = r {
                p.r = *r;
            }
            let warnings = p.validate(bound)?;
            let d = cone_distance(&p, bound)?;
            let mut text = format!("{d:.4}");
            for w in &warnings {
                text.push_str(&format!("\nwarning: {w}"));
            }
            Ok(Outcome::new(None, text, json!({"distance": d, "warnings": warnings, "params": p})))
        }
        ConeCmd::Angle { h, k } => {
            let m = crate::chart::CodimTwoModel::new(*h, *k)?;
            let a = angle_of_model(m);
            Ok(Outcome::new(None, format!("{a} = {:.6} rad", a.radians()), json!({"angle": a, "radians": a.radians()})))
        }
        ConeCmd::Model { angle } => {
            let a: ConeAngle = angle.parse()?;
            let m = model_of_angle(&a);
            let text = match m {
                Some(m) => format!("({}, {})", m.h, m.k),
                None => "irrational".into(),
            };
            Ok(Outcome::new(Some(m.is_some()), text, json!({"model": m})))
        }
        ConeCmd::Holonomy { angle } => {
            let a: ConeAngle = angle.parse()?;
            let o = local_holonomy_order(&a);
            let text = o.map(|o| o.to_string()).unwrap_or_else(|| "infinite".into());
            Ok(Outcome::new(Some(o.is_some()), text, json!({"order": o})))
        }
        ConeCmd::Rational { angles, file } => {
            let mut all = angles.clone();
            if let Some(f) = file {
                all.extend(read_json::<AnglesFile>(Path::new(f))?.angles);
            }
            let parsed = all.iter().map(|a| a.parse()).collect::<Result<Vec<ConeAngle>>>()?;
            let v = rational_conifold_verdict(&parsed);
            let mut text = format!("rational conifold: {}", v.rational);
            for a in &v.angles {
                let m = a.model.map(|m| format!("({}, {})", m.h, m.k)).unwrap_or_else(|| "irrational".into());
                text.push_str(&format!("\n  {} -> {m}", a.angle));
            }
            Ok(Outcome::new(Some(v.rational), text, serde_json::to_value(&v)?))
        }
    }
}

/// Writes the fixture corpus into `ws`; returns the object names.
pub fn install_fixtures(ws: &mut Workspace) -> Result<Vec<String>> {
    let mut names = Vec::new();
    let mut put = |name: &str, kind: &str, text: String| -> Result<()> {
        ws.put(name, kind, &text)?;
        names.push(name.to_string());
        Ok(())
    };
    let octa = fixtures::octahedron();
    put("octa", "complex", to_json(&ComplexFile::from_complex(&octa))?)?;
    put("poles", "complex", to_json(&ComplexFile { simplices: vec![vec![5], vec![6]] })?)?;
    put("octa-edge", "complex", to_json(&ComplexFile { simplices: vec![vec![1, 3]] })?)?;
    let action = |gens: &[(&str, &str)]| ActionFile {
        complex: ComplexFile::from_complex(&octa),
        generators: gens
            .iter()
            .map(|(name, p)| GeneratorEntry::Named { name: name.to_string(), vertex_perm: p.to_string() })
            .collect(),
    };
    put("octa-rot", "action", to_json(&action(&[("rotation", "(1 2)(3 4)")]))?)?;
    put("octa-antipodal", "action", to_json(&action(&[("antipodal", "(1 2)(3 4)(5 6)")]))?)?;
    put("octa-reflection", "action", to_json(&action(&[("reflection", "(1 2)")]))?)?;
    for (h, k) in [(2, 1), (3, 2), (5, 3)] {
        put(&format!("fig1-{h}-{k}"), "chart", to_json(&ChartFile::from_chart(&fixtures::disk_chart(h, k)))?)?;
    }
    put("fig2", "chart", to_json(&ChartFile::from_chart(&fixtures::fig2_chart()))?)?;
    put("fig3", "monodromy", to_json(&MonodromyFile::from_cocycle(&fixtures::fig3_cocycle()))?)?;
    put("pole-cover", "cover", to_json(&CoveringFile::from_covering(&fixtures::pole_cover()))?)?;
    let two_points = |h: u64, k: u64| InstanceFile {
        complex: ComplexFile::from_complex(&octa),
        components: vec![
            crate::io::ComponentFile { simplices: vec![vec![5]], h, k },
            crate::io::ComponentFile { simplices: vec![vec![6]], h, k },
        ],
    };
    put("sphere-2-1", "instance", to_json(&two_points(2, 1))?)?;
    put("sphere-3-2", "instance", to_json(&two_points(3, 2))?)?;
    let angles =
        AnglesFile { angles: ["1/3 tau", "2/3 tau", "1/1 tau", "1/7 tau"].iter().map(|s| s.to_string()).collect() };
    put("angles", "angles", to_json(&angles)?)?;
    Ok(names)
}

fn fixtures_cmd(cmd: &FixturesCmd, ctx: &mut Ctx) -> Result<Outcome> {
    let dir = |d: &Option<PathBuf>, ctx: &Ctx| -> Result<PathBuf> {
        d.clone()
            .or_else(|| ctx.workspace.as_ref().map(|w| w.root.clone()))
            .ok_or_else(|| Error::Input("give --dir or --workspace".into()))
    };
    match cmd {
        FixturesCmd::Install { dir: d } => {
            let mut ws = Workspace::open(&dir(d, ctx)?)?;
            let names = install_fixtures(&mut ws)?;
            Ok(Outcome::new(
                None,
                format!("installed {} objects in {}", names.len(), ws.root.display()),
                json!({"installed": names, "root": ws.root}),
            ))
        }
        FixturesCmd::Verify { dir: d } => {
            let ws = Workspace::open(&dir(d, ctx)?)?;
            let bad = ws.verify()?;
            Ok(Outcome::new(
                Some(bad.is_empty()),
                if bad.is_empty() { "manifest: ok".to_string() } else { format!("hash mismatch: {}", bad.join(", ")) },
                json!({"ok": bad.is_empty(), "mismatched": bad}),
            ))
        }
    }
}
