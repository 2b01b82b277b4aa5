use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crn_immune::catalog::{self, CatalogEntry, NamedNetwork};
use crn_immune::dynamics::{default_initial_state, default_t_end, integrate, ConvergenceCriterion, IntegratorOptions};
use crn_immune::fixed_points::{enumerate_fixed_points_with, solve_support, SupportPattern};
use crn_immune::robustness::{sweep, SweepSpec};
use crn_immune::stability::{self, analyze, BranchCycleBranch};
use crn_immune::{CrNetwork, CrnModel, Error, Execution, ModelParameters, SystemState};

const EXIT_HELP: &str = "\
Exit codes:
  0  success
  2  invalid command line
  3  input file missing or unparsable
  4  invalid network, parameters or state
  5  requested object absent or outside supported limits
  6  numerical failure (integration, Jacobian, eigensolver)
  7  output could not be written

Errors are printed to stderr as one JSON object: {\"error\": {\"kind\", \"message\", \"exit_code\"}}.";

/// Antigen/antibody dynamics on cross-immunoreactivity networks.
#[derive(Parser)]
#[command(name = "crn-immune", version, after_help = EXIT_HELP)]
struct Cli {
    /// Output file. Without it, results go to $CRN_IMMUNE_OUT_DIR/<default name>
    /// when that variable is set, and to stdout otherwise.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Evaluate independent work items sequentially.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct ModelArgs {
    /// Named network or path to a network JSON file.
    #[arg(long)]
    network: String,
    /// Parameter JSON file: {"f": [...], "p", "c", "b", "alpha", "beta"}.
    #[arg(long)]
    params: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the dynamics and write the trajectory (CSV by default).
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        /// Initial state JSON {"x": [...], "r": [...]}; every component 0.1 when absent.
        #[arg(long)]
        initial: Option<PathBuf>,
        /// Horizon; 1000/b when absent.
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long, default_value_t = 1e-8)]
        rtol: f64,
        #[arg(long, default_value_t = 1e-10)]
        atol: f64,
        #[arg(long)]
        max_step: Option<f64>,
        /// Stop once ||rhs|| stays below this for `--window` time units.
        #[arg(long)]
        stop_tol: Option<f64>,
        #[arg(long, default_value_t = 10.0)]
        window: f64,
        /// Keep every k-th accepted step in the output.
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Enumerate fixed points over all support patterns, with stability.
    FixedPoints {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = crn_immune::fixed_points::DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Jacobian, spectrum and verdict at a support's fixed point or at a given state.
    Stability {
        #[command(flatten)]
        model: ModelArgs,
        /// Support as `I=1,3 J=2,3` (one or two arguments, 1-based).
        #[arg(long, num_args = 1..=2, conflicts_with = "state", required_unless_present = "state")]
        support: Vec<String>,
        /// State JSON {"x": [...], "r": [...]}.
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Sample a relative box around the parameters and track one fixed point.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, num_args = 1..=2, required = true)]
        support: Vec<String>,
        #[arg(long, default_value_t = 0.01)]
        radius: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Named networks and their closed-form fixed points.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the named networks.
    List,
    /// Network and entries of one named network.
    Show {
        name: String,
        /// Emit only the network JSON.
        #[arg(long)]
        network_only: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Model(Error),
    Output(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Output(_) => "output",
            CliError::Model(e) => match e {
                Error::InvalidNetwork(_)
                | Error::InvalidParameters(_)
                | Error::DimensionMismatch { .. }
                | Error::InvalidState(_) => "invalid_model",
                Error::Precondition(_)
                | Error::UnknownNetwork(_)
                | Error::FixedPointAbsent(_)
                | Error::CombinatorialLimit { .. } => "unavailable",
                Error::Integration(_) | Error::JacobianUndefined(_) | Error::EigenNoConvergence(_) => "numerical",
                Error::Json(_) => "input",
            },
        }
    }

    fn code(&self) -> u8 {
        match self.kind() {
            "input" => 3,
            "invalid_model" => 4,
            "unavailable" => 5,
            "numerical" => 6,
            _ => 7,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Input(m) | CliError::Output(m) => m.clone(),
            CliError::Model(e) => e.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Model(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_network(source: &str) -> CliResult<CrNetwork> {
    if let Ok(named) = source.parse::<NamedNetwork>() {
        return Ok(named.network());
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(CliError::Model(Error::UnknownNetwork(source.to_string())));
    }
    CrNetwork::from_json(&read(path)?).map_err(|e| match e {
        Error::Json(j) => CliError::Input(format!("{source}: {j}")),
        other => other.into(),
    })
}

fn load_params(path: &Path) -> CliResult<ModelParameters> {
    ModelParameters::from_json(&read(path)?).map_err(|e| match e {
        Error::Json(j) => CliError::Input(format!("{}: {j}", path.display())),
        other => other.into(),
    })
}

fn load_state(path: &Path) -> CliResult<SystemState> {
    let st: SystemState =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    st.validate()?;
    Ok(st)
}

fn load_model(args: &ModelArgs) -> CliResult<CrnModel> {
    Ok(CrnModel::new(load_network(&args.network)?, load_params(&args.params)?)?)
}

/// Parses `I=1,3 J=2,3`, given as one or two arguments.
fn parse_support(parts: &[String]) -> CliResult<SupportPattern> {
    let mut set_i = None;
    let mut set_j = None;
    for token in parts.iter().flat_map(|p| p.split_whitespace()) {
        let (key, list) = token
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("support token `{token}` is not of the form I=.. or J=..")))?;
        let nodes = list
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Input(format!("support `{token}`: {e}")))?;
        match key.trim() {
            "I" | "i" => set_i = Some(nodes),
            "J" | "j" => set_j = Some(nodes),
            other => return Err(CliError::Input(format!("unknown support set `{other}`"))),
        }
    }
    let (Some(i), Some(j)) = (set_i, set_j) else {
        return Err(CliError::Input("support needs both I=.. and J=..".into()));
    };
    Ok(SupportPattern::from_one_based(&i, &j)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// Writes to `path` through a temporary file in the same directory.
fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let fail = |e: std::io::Error| CliError::Output(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).map_err(fail)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(fail)?;
    tmp.write_all(contents.as_bytes()).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

fn emit(cli: &Cli, default_name: &str, contents: &str) -> CliResult<()> {
    let target = cli
        .output
        .clone()
        .or_else(|| std::env::var_os("CRN_IMMUNE_OUT_DIR").map(|d| PathBuf::from(d).join(default_name)));
    match target {
        Some(path) => write_atomic(&path, contents),
        None => std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::Output(format!("stdout: {e}"))),
    }
}

fn execution(cli: &Cli) -> Execution {
    if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn simulate(cli: &Cli, args: &Command) -> CliResult<()> {
    let Command::Simulate { model, initial, t_end, rtol, atol, max_step, stop_tol, window, stride } = args else {
        unreachable!()
    };
    let m = load_model(model)?;
    let init = match initial {
        Some(p) => load_state(p)?,
        None => default_initial_state(m.n()),
    };
    let options = IntegratorOptions {
        rtol: *rtol,
        atol: *atol,
        max_step: *max_step,
        stop_on_convergence: stop_tol.map(|tol| ConvergenceCriterion { window: *window, tol }),
        ..IntegratorOptions::default()
    };
    let traj = integrate(&m, &init, t_end.unwrap_or_else(|| default_t_end(m.params().b)), &options)?;
    match cli.format.unwrap_or(Format::Csv) {
        Format::Json => emit(cli, "trajectory.json", &to_json(&traj)),
        _ => emit(cli, "trajectory.csv", &traj.to_csv(*stride)),
    }
}

#[derive(Serialize)]
struct AnnotatedSolution {
    #[serde(flatten)]
    solution: crn_immune::fixed_points::FixedPointSolution,
    stability: serde_json::Value,
}

fn stability_summary(m: &CrnModel, state: &SystemState) -> serde_json::Value {
    match analyze(m, state) {
        Ok(rep) => json!({
            "verdict": rep.verdict.verdict,
            "epsilon": rep.verdict.epsilon,
            "eigenvalues": rep.eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn fixed_points(cli: &Cli, model: &ModelArgs, max_n: usize) -> CliResult<()> {
    let m = load_model(model)?;
    let sols = enumerate_fixed_points_with(&m, max_n, execution(cli))?;
    let annotated: Vec<_> = sols
        .into_iter()
        .map(|s| {
            let stability = stability_summary(&m, &s.state);
            AnnotatedSolution { solution: s, stability }
        })
        .collect();
    let out = json!({
        "network": m.network().to_file(),
        "parameters": m.params(),
        "count": annotated.len(),
        "solutions": annotated,
    });
    emit(cli, "fixed_points.json", &to_json(&out))
}

/// Closed-form factor checks that apply to this network, parameters and support.
fn factor_checks(m: &CrnModel, support: &SupportPattern) -> Vec<stability::FactorCheck> {
    let q = m.params();
    let mut checks = Vec::new();
    if *m.network() == NamedNetwork::BranchCycle3.network() {
        if let Ok(branch) = BranchCycleBranch::of(&q.f) {
            if branch.support() == *support {
                checks.extend(stability::check_branch_cycle_polynomial(q).ok());
            }
        }
    }
    if *m.network() == NamedNetwork::Composed5.network() && stability::five_node_support() == *support {
        checks.extend(stability::check_five_node_polynomial(q).ok());
    }
    checks
}

fn stability_cmd(cli: &Cli, model: &ModelArgs, support: &[String], state: &Option<PathBuf>) -> CliResult<()> {
    let m = load_model(model)?;
    let (st, sup) = match state {
        Some(p) => {
            let st = load_state(p)?;
            if st.n() != m.n() {
                return Err(Error::DimensionMismatch { what: "state size vs network size", expected: m.n(), actual: st.n() }
                    .into());
            }
            let sup = SupportPattern::of_state(&st, 0.0);
            (st, sup)
        }
        None => {
            let sup = parse_support(support)?;
            let sol = solve_support(&m, &sup).map_err(|e| Error::FixedPointAbsent(format!("{sup}: {e}")))?;
            (sol.state, sup)
        }
    };
    let mut report = analyze(&m, &st)?;
    report.factor_checks = factor_checks(&m, &sup);
    let out = json!({ "support": sup, "state": st, "report": report });
    emit(cli, "stability.json", &to_json(&out))
}

fn sweep_cmd(cli: &Cli, args: &Command) -> CliResult<()> {
    let Command::Sweep { model, support, radius, samples, seed } = args else { unreachable!() };
    let m = load_model(model)?;
    let spec = SweepSpec {
        nominal: m.params().clone(),
        relative_radius: *radius,
        samples: *samples,
        seed: *seed,
        support: parse_support(support)?,
    };
    let result = sweep(&spec, m.network(), execution(cli))?;
    match cli.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut csv = String::from("index,found,li_preserved,verdict,max_real,rejected_draws\n");
            for r in &result.records {
                let verdict = r.verdict.map(|v| serde_json::to_value(v).unwrap().as_str().unwrap().to_string());
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.index,
                    r.fixed_point_found,
                    r.li_preserved,
                    verdict.unwrap_or_default(),
                    r.max_real.map(|v| format!("{v:?}")).unwrap_or_default(),
                    r.rejected_draws
                ));
            }
            emit(cli, "sweep.csv", &csv)
        }
        _ => emit(cli, "sweep.json", &to_json(&result)),
    }
}

/// Reference values used only to render conditions with `β` recognisable.
fn reference_params(n: usize) -> ModelParameters {
    ModelParameters { f: vec![1.0; n], p: 1.0, c: 1.0, b: 1.0, alpha: 0.6, beta: 0.3 }
}

fn entry_json(e: &CatalogEntry, reference: &ModelParameters) -> serde_json::Value {
    json!({
        "number": e.number,
        "origin": e.origin,
        "support": e.support_pattern(),
        "formula": e.formula,
        "conditions": e.conditions_at(reference).iter().map(|c| c.render(reference.beta)).collect::<Vec<_>>(),
        "free": e.free.iter().map(|v| v.name).collect::<Vec<_>>(),
    })
}

fn catalog_cmd(cli: &Cli, action: &CatalogAction) -> CliResult<()> {
    match action {
        CatalogAction::List => {
            let rows: Vec<_> = NamedNetwork::ALL
                .iter()
                .map(|&net| {
                    let g = net.network();
                    json!({
                        "name": net.name(),
                        "n": g.n(),
                        "edges": g.edges().len(),
                        "entries": catalog::entries(net).len(),
                        "complete": catalog::is_complete(net),
                    })
                })
                .collect();
            if cli.format == Some(Format::Text) {
                let text: String = rows
                    .iter()
                    .map(|r| format!("{}\tn={}\tedges={}\tentries={}\n", r["name"].as_str().unwrap(), r["n"], r["edges"], r["entries"]))
                    .collect();
                emit(cli, "catalog.txt", &text)
            } else {
                emit(cli, "catalog.json", &to_json(&rows))
            }
        }
        CatalogAction::Show { name, network_only } => {
            let net: NamedNetwork = name.parse()?;
            let g = net.network();
            if *network_only {
                return emit(cli, &format!("{name}.network.json"), &format!("{}\n", g.to_json()));
            }
            let reference = reference_params(g.n());
            let entries = catalog::entries(net);
            if cli.format == Some(Format::Text) {
                let mut text = format!("{name}: n = {}, edges = {:?}\n", g.n(), g.to_file().edges);
                for e in &entries {
                    let conds: Vec<String> =
                        e.conditions_at(&reference).iter().map(|c| c.render(reference.beta)).collect();
                    text.push_str(&format!("{:>2}. {}  {}", e.number, e.support_pattern(), e.formula));
                    if !conds.is_empty() {
                        text.push_str(&format!("  [{}]", conds.join("; ")));
                    }
                    text.push('\n');
                }
                return emit(cli, &format!("{name}.txt"), &text);
            }
            let out = json!({
                "name": net.name(),
                "network": g.to_file(),
                "complete": catalog::is_complete(net),
                "conditions_rendered_at": { "alpha": reference.alpha, "beta": reference.beta },
                "entries": entries.iter().map(|e| entry_json(e, &reference)).collect::<Vec<_>>(),
            });
            emit(cli, &format!("{name}.json"), &to_json(&out))
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        c @ Command::Simulate { .. } => simulate(cli, c),
        Command::FixedPoints { model, max_n } => fixed_points(cli, model, *max_n),
        Command::Stability { model, support, state } => stability_cmd(cli, model, support, state),
        c @ Command::Sweep { .. } => sweep_cmd(cli, c),
        Command::Catalog { action } => catalog_cmd(cli, action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let record = json!({ "error": { "kind": e.kind(), "message": e.message(), "exit_code": e.code() } });
            eprintln!("{record}");
            ExitCode::from(e.code())
        }
    }
}
