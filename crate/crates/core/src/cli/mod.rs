//! `twinscope` command line: parse a state, run one analysis, print a report.
//!
//! Reports go to standard output (see [`report`]); error messages go to
//! standard error. Exit codes: 0 success, 1 input or validation error,
//! 2 internal consistency failure.

pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{hs_inner, max_abs, pauli_basis, tensor, Matrix, RANK_TOL};
use crate::mds::{
    self, build_T, classify, is_state, MdsClass, MdsKind, TVector, CANONICAL_RESIDUAL_TOL,
};
use crate::schmidt::{
    bell_diagonal_expansion, correlation_operator, operator_schmidt, pure_schmidt,
    round_trip_residual, OperatorSchmidt,
};
use crate::twins::{
    analytic_edge_twins, distant_correlation, is_twin_pair, pauli_coords, ppt_separable,
    twin_space, ObservablePair, TwinSpace, HERMITIAN_TOL, TWIN_TOL,
};
use crate::verify::{self, PropertyResult, Status};
use input::{parse_observable, parse_state_file, parse_t, parse_weights, StateSpec, INPUT_TOL};
use report::{matrix, num, nums, obj, vector, Report};

/// Seed used by `verify` when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(name = "twinscope", version, about = "Twin observables of two-qubit states")]
struct Cli {
    /// Rank tolerance for the twin solver and boundary tolerance for classification.
    #[arg(long, global = true, default_value_t = RANK_TOL)]
    tol: f64,
    /// Seed for the random draws made by `verify`.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct StateArgs {
    /// Bell-diagonal coordinates `t1,t2,t3`.
    #[arg(long = "t", value_name = "T1,T2,T3", allow_hyphen_values = true)]
    t: Option<String>,
    /// Bell weights `w0,w1,w2,w3` (singlet first), summing to 1.
    #[arg(long, value_name = "W0,W1,W2,W3", allow_hyphen_values = true)]
    weights: Option<String>,
    /// File holding `matrix 4 4` or `pure 4` data.
    #[arg(long, value_name = "PATH")]
    input: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertex / edge / interior class and Bell weights.
    Classify(StateArgs),
    /// Operator Schmidt decomposition; pure Schmidt data for pure input.
    Schmidt(StateArgs),
    /// Twin space from the brute-force solver, with the closed form on edges.
    Twins(StateArgs),
    /// Run the property suite for the input and report each verdict.
    Verify(StateArgs),
    /// Partial-transpose test.
    Separability(StateArgs),
    /// Joint outcome statistics of an observable pair.
    Correlate {
        #[command(flatten)]
        state: StateArgs,
        /// Pauli coefficients `a,b1,b2,b3` of the observable on qubit 1.
        #[arg(long, value_name = "A,B1,B2,B3", allow_hyphen_values = true)]
        a1: String,
        /// Pauli coefficients of the observable on qubit 2.
        #[arg(long, value_name = "A,B1,B2,B3", allow_hyphen_values = true)]
        a2: String,
    },
    /// Local unitaries bringing a maximally disordered state to `T(t)`.
    Canonicalize(StateArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Schmidt(_) => "schmidt",
            Command::Twins(_) => "twins",
            Command::Verify(_) => "verify",
            Command::Separability(_) => "separability",
            Command::Correlate { .. } => "correlate",
            Command::Canonicalize(_) => "canonicalize",
        }
    }

    fn state(&self) -> &StateArgs {
        match self {
            Command::Classify(s)
            | Command::Schmidt(s)
            | Command::Twins(s)
            | Command::Verify(s)
            | Command::Separability(s)
            | Command::Canonicalize(s) => s,
            Command::Correlate { state, .. } => state,
        }
    }
}

fn load_state(args: &StateArgs) -> Result<(StateSpec, Option<String>)> {
    if let Some(t) = &args.t {
        return Ok((StateSpec::T(parse_t(t)?), None));
    }
    if let Some(w) = &args.weights {
        return Ok((StateSpec::Weights(parse_weights(w)?), None));
    }
    let path = args.input.as_ref().ok_or(Error::EmptyInput)?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let spec = parse_state_file(&text)?;
    Ok((spec, Some(path.display().to_string())))
}

fn echo(spec: &StateSpec, source: Option<&str>) -> Value {
    let mut pairs = vec![("kind", Value::String(spec.kind().into()))];
    match spec {
        StateSpec::T(t) => pairs.push(("t", nums(&t.0))),
        StateSpec::Weights(w) => pairs.push(("weights", nums(&w.0))),
        StateSpec::Matrix(m) => pairs.push(("matrix", matrix(m))),
        StateSpec::Pure(v) => pairs.push(("pure", vector(v))),
    }
    if let Some(s) = source {
        pairs.push(("source", Value::String(s.into())));
    }
    obj(pairs)
}

/// Bell-diagonal coordinates of the input, if it has any.
fn bell_coordinates(spec: &StateSpec) -> Option<TVector> {
    if let Some(t) = spec.t_vector() {
        return Some(t);
    }
    let rho = spec.density();
    let p = pauli_basis();
    let t = TVector(std::array::from_fn(|i| {
        hs_inner(&tensor(&p[i + 1], &p[i + 1]), &rho).expect("4x4").re
    }));
    (max_abs(&(&rho - build_T(&t))) <= INPUT_TOL).then_some(t)
}

/// Validated density matrix; t-vectors and weights must lie in the tetrahedron.
fn require_density(spec: &StateSpec, tol: f64) -> Result<Matrix> {
    if let Some(t) = spec.t_vector() {
        let check = is_state(&t, tol)?;
        if !check.is_state {
            return Err(Error::NotState(format!(
                "{t} lies outside the tetrahedron (w{} = {})",
                check.min_weight_index, check.min_weight
            )));
        }
    }
    Ok(spec.density())
}

fn class_value(class: &MdsClass) -> Value {
    let mut pairs = vec![];
    match class.kind {
        MdsKind::BellVertex(k) => {
            pairs.push(("kind", Value::String("BellVertex".into())));
            pairs.push(("bell_index", Value::from(k)));
        }
        MdsKind::BinaryEdge { index, case, parameter } => {
            pairs.push(("kind", Value::String("BinaryEdge".into())));
            pairs.push(("edge_index", Value::from(index)));
            pairs.push(("case", Value::String(case.to_string())));
            pairs.push(("parameter", num(parameter)));
            let mix = class.edge_mixture().expect("edge");
            pairs.push((
                "mixture",
                Value::Array(
                    mix.iter()
                        .map(|&(k, w)| obj([("bell_index", Value::from(k)), ("weight", num(w))]))
                        .collect(),
                ),
            ));
        }
        MdsKind::GenericInterior => pairs.push(("kind", Value::String("GenericInterior".into()))),
        MdsKind::NonState => pairs.push(("kind", Value::String("NonState".into()))),
    }
    pairs.push(("weights", nums(&class.weights.0)));
    pairs.push(("detail", Value::String(class.detail.clone())));
    obj(pairs)
}

fn pair_value(pair: &ObservablePair) -> Value {
    obj([
        ("a1_pauli", nums(&pauli_coords(&pair.a1))),
        ("a2_pauli", nums(&pauli_coords(&pair.a2))),
    ])
}

fn space_value(space: &TwinSpace) -> Value {
    obj([
        ("dimension", Value::from(space.dimension)),
        ("has_nontrivial", Value::Bool(space.has_nontrivial)),
        ("basis", Value::Array(space.basis.iter().map(pair_value).collect())),
    ])
}

fn operator_schmidt_value(os: &OperatorSchmidt) -> Value {
    let ops = |v: &[Matrix]| Value::Array(v.iter().map(|m| nums(&pauli_coords(m))).collect());
    obj([
        ("coefficients", nums(&os.coefficients)),
        ("schmidt_rank", Value::from(os.schmidt_rank)),
        ("multiplicities", Value::Array(os.multiplicities.iter().map(|&m| Value::from(m)).collect())),
        ("norm", num(os.norm)),
        ("left_ops_pauli", ops(&os.left_ops)),
        ("right_ops_pauli", ops(&os.right_ops)),
    ])
}

/// Collected while a command runs; becomes the `diagnostics` object.
struct Diagnostics {
    tolerances: Vec<(&'static str, Value)>,
    residuals: Vec<(&'static str, Value)>,
    rank_gaps: Vec<(&'static str, Value)>,
}

impl Diagnostics {
    fn new(tol: f64) -> Self {
        Diagnostics {
            tolerances: vec![("rank_tol", num(tol)), ("input_tol", num(INPUT_TOL))],
            residuals: vec![],
            rank_gaps: vec![],
        }
    }

    fn tol(&mut self, name: &'static str, x: f64) {
        self.tolerances.push((name, num(x)));
    }

    fn residual(&mut self, name: &'static str, x: f64) {
        self.residuals.push((name, num(x)));
    }

    fn gap(&mut self, name: &'static str, space: &TwinSpace) {
        if let Some(g) = space.singular_value_gap {
            self.rank_gaps.push((name, num(g)));
        }
    }

    fn into_value(self) -> Value {
        obj([
            ("tolerances", obj(self.tolerances)),
            ("residuals", obj(self.residuals)),
            ("rank_gaps", obj(self.rank_gaps)),
        ])
    }
}

/// Report plus whether it records an internal consistency failure.
struct Outcome {
    result: Value,
    internal_failure: bool,
}

fn ok(result: Value) -> Result<Outcome> {
    Ok(Outcome { result, internal_failure: false })
}

fn cmd_classify(spec: &StateSpec, tol: f64, d: &mut Diagnostics) -> Result<Outcome> {
    let t = bell_coordinates(spec).ok_or_else(|| {
        Error::NotState("classify needs a Bell-diagonal state; run canonicalize first".into())
    })?;
    d.tol("boundary_tol", tol);
    let check = is_state(&t, tol)?;
    d.residual("weight_eigenvalue_disagreement", (check.min_weight - check.min_eigenvalue).abs());
    let class = classify(&t, tol)?;
    ok(obj([("t", nums(&t.0)), ("class", class_value(&class))]))
}

fn cmd_schmidt(spec: &StateSpec, tol: f64, d: &mut Diagnostics) -> Result<Outcome> {
    let rho = require_density(spec, tol)?;
    let os = operator_schmidt(&rho)?;
    d.residual("operator_schmidt_round_trip", round_trip_residual(&rho)?);
    let mut pairs = vec![("operator_schmidt", operator_schmidt_value(&os))];
    if let Some(t) = bell_coordinates(spec) {
        let closed = bell_diagonal_expansion(t.0);
        let mut got = os.coefficients.clone();
        let mut want = closed.coefficients.clone();
        got.resize(4, 0.0);
        want.resize(4, 0.0);
        let r = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        d.residual("closed_form_coefficients", r);
        pairs.push(("closed_form_coefficients", nums(&closed.coefficients)));
    }
    if let StateSpec::Pure(phi) = spec {
        let ps = pure_schmidt(phi)?;
        let mut pure = vec![
            ("coefficients", nums(&ps.coefficients)),
            ("schmidt_rank", Value::from(ps.schmidt_rank)),
            ("left_vectors", Value::Array(ps.left_vectors.iter().map(vector).collect())),
            ("right_vectors", Value::Array(ps.right_vectors.iter().map(vector).collect())),
        ];
        d.residual("pure_schmidt_reconstruction", (ps.reconstruct() - phi).norm());
        match correlation_operator(&ps) {
            Ok(ua) => {
                d.residual("correlation_operator_unitarity", crate::linalg::unitarity_deviation(&ua.unitary_part));
                pure.push(("correlation_operator", matrix(&ua.unitary_part)));
            }
            Err(Error::RankDeficient { .. }) => pure.push(("correlation_operator", Value::Null)),
            Err(e) => return Err(e),
        }
        pairs.push(("pure_schmidt", obj(pure)));
    }
    ok(obj(pairs))
}

fn cmd_twins(spec: &StateSpec, tol: f64, d: &mut Diagnostics) -> Result<Outcome> {
    let rho = require_density(spec, tol)?;
    let space = twin_space(&rho, tol)?;
    d.gap("oracle", &space);
    d.tol("twin_tol", TWIN_TOL);
    let worst = space
        .basis
        .iter()
        .map(|p| crate::twins::twin_residual(p, &rho))
        .fold(0.0, f64::max);
    d.residual("oracle_twin_condition", worst);
    let mut pairs = vec![("oracle", space_value(&space))];
    let mut internal_failure = false;
    if let Some(t) = bell_coordinates(spec) {
        let class = classify(&t, tol)?;
        pairs.push(("class", class_value(&class)));
        if matches!(class.kind, MdsKind::BinaryEdge { .. }) {
            let analytic = analytic_edge_twins(&class)?;
            let dist = analytic.distance(&space);
            d.residual("analytic_vs_oracle", dist);
            internal_failure = dist > TWIN_TOL;
            pairs.push(("analytic", space_value(&analytic)));
        }
    }
    Ok(Outcome { result: obj(pairs), internal_failure })
}

fn property_value(p: &PropertyResult) -> Value {
    let status = match p.status {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::NotApplicable => "not_applicable",
    };
    obj([
        ("name", Value::String(p.name.into())),
        ("status", Value::String(status.into())),
        ("residual", p.residual.map_or(Value::Null, num)),
        ("detail", Value::String(p.detail.clone())),
    ])
}

fn cmd_verify(spec: &StateSpec, tol: f64, seed: u64, d: &mut Diagnostics) -> Result<Outcome> {
    let rho = require_density(spec, tol)?;
    d.tol("twin_tol", TWIN_TOL);
    d.tol("exact_tol", verify::EXACT_TOL);
    d.tol("min_rank_gap", verify::MIN_RANK_GAP);
    let (suite, props) = match spec {
        StateSpec::T(_) | StateSpec::Weights(_) => {
            ("bell_diagonal", verify::verify_t(&spec.t_vector().expect("t"), seed, tol)?)
        }
        StateSpec::Pure(phi) => ("pure", verify::verify_pure(phi, seed, tol)?),
        StateSpec::Matrix(_) => ("density", verify::verify_density(&rho, seed, tol)?),
    };
    let failed: Vec<Value> = props
        .iter()
        .filter(|p| p.failed())
        .map(|p| Value::String(p.name.into()))
        .collect();
    let passed = props.iter().filter(|p| p.status == Status::Pass).count();
    Ok(Outcome {
        internal_failure: !failed.is_empty(),
        result: obj([
            ("suite", Value::String(suite.into())),
            ("seed", Value::from(seed)),
            ("all_passed", Value::Bool(failed.is_empty())),
            ("passed", Value::from(passed)),
            ("failed", Value::Array(failed)),
            ("properties", Value::Array(props.iter().map(property_value).collect())),
        ]),
    })
}

fn cmd_separability(spec: &StateSpec, tol: f64, d: &mut Diagnostics) -> Result<Outcome> {
    let rho = require_density(spec, tol)?;
    d.tol("ppt_tol", tol);
    let verdict = ppt_separable(&rho, tol)?;
    let mut pairs = vec![
        ("separable", Value::Bool(verdict.separable)),
        ("min_partial_transpose_eigenvalue", num(verdict.min_eigenvalue)),
    ];
    let mut internal_failure = false;
    if let Some(w) = spec.weights().or_else(|| bell_coordinates(spec).map(|t| mds::weights_from_t(&t))) {
        // Independent criterion for Bell-diagonal states.
        let max_w = w.0.iter().copied().fold(f64::MIN, f64::max);
        let by_weight = max_w <= 0.5 + tol;
        internal_failure = by_weight != verdict.separable;
        pairs.push(("max_bell_weight", num(max_w)));
        pairs.push(("weight_criterion_separable", Value::Bool(by_weight)));
    }
    Ok(Outcome { result: obj(pairs), internal_failure })
}

fn cmd_correlate(spec: &StateSpec, tol: f64, a1: &str, a2: &str, d: &mut Diagnostics) -> Result<Outcome> {
    let rho = require_density(spec, tol)?;
    let x = parse_observable(a1, "--a1")?;
    let y = parse_observable(a2, "--a2")?;
    let pair = ObservablePair::from_pauli(x, y);
    d.tol("twin_tol", TWIN_TOL);
    d.tol("hermitian_tol", HERMITIAN_TOL);
    let check = is_twin_pair(&pair, &rho, TWIN_TOL)?;
    d.residual("twin_condition", check.residual);
    let r = distant_correlation(&pair, &rho)?;
    ok(obj([
        ("a1_pauli", nums(&x)),
        ("a2_pauli", nums(&y)),
        ("is_twin", Value::Bool(check.is_twin)),
        ("a1_eigenvalues", nums(&r.a1_eigenvalues)),
        ("a2_eigenvalues", nums(&r.a2_eigenvalues)),
        (
            "joint_distribution",
            serde_json::Value::Array(r.joint_distribution.iter().map(|row| nums(row)).collect()),
        ),
        ("mismatch_probability", num(r.mismatch_probability)),
        ("expectation_gap", num(r.expectation_gap)),
    ]))
}

fn cmd_canonicalize(spec: &StateSpec, tol: f64, d: &mut Diagnostics) -> Result<Outcome> {
    let rho = require_density(spec, tol)?;
    d.tol("mds_tol", INPUT_TOL);
    d.tol("canonical_residual_tol", CANONICAL_RESIDUAL_TOL);
    let form = mds::canonicalize(&rho, INPUT_TOL)?;
    d.residual("canonical_form", form.residual);
    let class = classify(&form.t, tol)?;
    Ok(Outcome {
        internal_failure: form.residual > CANONICAL_RESIDUAL_TOL,
        result: obj([
            ("t", nums(&form.t.0)),
            ("u1", matrix(&form.u1)),
            ("u2", matrix(&form.u2)),
            ("residual", num(form.residual)),
            ("class", class_value(&class)),
        ]),
    })
}

fn execute(cli: &Cli) -> Result<(Report, bool)> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(Error::Parse(format!("--tol must be positive, got {}", cli.tol)));
    }
    let (spec, source) = load_state(cli.command.state())?;
    let mut d = Diagnostics::new(cli.tol);
    let tol = cli.tol;
    let outcome = match &cli.command {
        Command::Classify(_) => cmd_classify(&spec, tol, &mut d),
        Command::Schmidt(_) => cmd_schmidt(&spec, tol, &mut d),
        Command::Twins(_) => cmd_twins(&spec, tol, &mut d),
        Command::Verify(_) => cmd_verify(&spec, tol, cli.seed, &mut d),
        Command::Separability(_) => cmd_separability(&spec, tol, &mut d),
        Command::Correlate { a1, a2, .. } => cmd_correlate(&spec, tol, a1, a2, &mut d),
        Command::Canonicalize(_) => cmd_canonicalize(&spec, tol, &mut d),
    }?;
    let report = Report {
        command: cli.command.name().into(),
        input: echo(&spec, source.as_deref()),
        result: outcome.result,
        diagnostics: d.into_value(),
    };
    Ok((report, outcome.internal_failure))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, internal_failure)) => {
            let _ = out.write_all(report.render().as_bytes());
            if internal_failure {
                let _ = writeln!(err, "error: internal consistency check failed; see report");
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}
