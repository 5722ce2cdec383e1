use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use qcorr::canonical::schmidt_two_qubit;
use qcorr::io::{self, State};
use qcorr::measures::{
    geometric_discord_closed, geometric_discord_oracle, horodecki, min_hs_closed, min_hs_oracle, min_trace_norm_oracle,
    negativity, quantum_discord,
};
use qcorr::monogamy::{
    self, counterexample, evaluate_counterexample, CheckOptions, Counterexample, CounterexampleReport,
};
use qcorr::sampling::{Family, SampleSpec};
use qcorr::{Direction, MeasureKind, MeasureValue, MonogamyReport, Relation, SearchOptions};

use crate::args::{
    CounterexampleArgs, Format, MeasureArgs, MethodChoice, MonogamyArgs, SearchArgs, SweepArgs, TimestampMode,
};
use crate::failure::Failure;

const FIXED_TIMESTAMP: &str = "1970-01-01T00:00:00Z";

/// Whether every requested check was satisfied.
pub type Outcome = Result<bool, Failure>;

impl SearchArgs {
    fn options(&self) -> Result<SearchOptions, Failure> {
        if self.grid_points < 8 {
            return Err(Failure::InvalidArgument(format!(
                "--grid-points must be at least 8, got {}",
                self.grid_points
            )));
        }
        Ok(SearchOptions { grid_points: self.grid_points, refine_iters: self.refine_iters, ..SearchOptions::default() })
    }
}

fn parse<T: std::str::FromStr<Err = qcorr::Error>>(text: &str) -> Result<T, Failure> {
    text.parse().map_err(|e: qcorr::Error| Failure::InvalidArgument(e.to_string()))
}

fn check_tolerance(tolerance: Option<f64>) -> Result<(), Failure> {
    match tolerance {
        Some(t) if !(t.is_finite() && t >= 0.0) => Err(Failure::InvalidArgument(format!("bad tolerance {t}"))),
        _ => Ok(()),
    }
}

fn load(path: &Path) -> Result<State, Failure> {
    io::read_state(path).map_err(|e| Failure::reading(path, e))
}

fn state_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("report serializes");
    bytes.push(b'\n');
    bytes
}

fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| Failure::Io(e.to_string()))
}

// measure

#[derive(Serialize)]
struct MeasureOutput<'a> {
    state_id: &'a str,
    measures: &'a [MeasureValue],
}

fn evaluate_measure(
    kind: MeasureKind,
    state: &State,
    measured: usize,
    method: MethodChoice,
    search: &SearchOptions,
) -> Result<Vec<MeasureValue>, Failure> {
    let rho = state.density();
    let two_qubit = rho.qubits() == 2;
    let direction = if measured == 0 { Direction::AToB } else { Direction::BToA };
    rho.check_qubit(measured)?;
    let (closed, oracle) = match method {
        MethodChoice::Auto => (two_qubit, !two_qubit),
        MethodChoice::ClosedForm => (true, false),
        MethodChoice::Oracle => (false, true),
        MethodChoice::Both => (true, true),
    };
    let mut out = Vec::new();
    match kind {
        MeasureKind::MinHs | MeasureKind::GeomDiscord => {
            if closed {
                rho.expect_qubits(2)?;
                out.push(match kind {
                    MeasureKind::MinHs => min_hs_closed(&rho, direction)?,
                    _ => geometric_discord_closed(&rho, direction)?,
                });
            }
            if oracle {
                out.push(match kind {
                    MeasureKind::MinHs => min_hs_oracle(&rho, measured, search)?,
                    _ => geometric_discord_oracle(&rho, measured, search)?,
                });
            }
        }
        MeasureKind::MinTrace => out.push(min_trace_norm_oracle(&rho, measured, search)?),
        MeasureKind::Discord => out.push(quantum_discord(&rho, measured, search)?),
        MeasureKind::Negativity => out.push(negativity(&rho, &[measured])?),
        MeasureKind::Horodecki => out.push(match state {
            _ if two_qubit => horodecki(&rho)?.value,
            State::Pure(psi) => horodecki(&schmidt_two_qubit(psi, measured)?.density())?.value,
            State::Density(_) => return Err(qcorr::Error::QubitCount { expected: 2, got: rho.qubits() }.into()),
        }),
    }
    Ok(out)
}

fn axis_text(value: &MeasureValue) -> String {
    value.axis.map(|a| format!("{:?} {:?} {:?}", a[0], a[1], a[2])).unwrap_or_default()
}

pub fn measure(args: &MeasureArgs) -> Outcome {
    let search = args.search.options()?;
    let all = args.measures.trim().eq_ignore_ascii_case("all");
    let mut kinds: Vec<MeasureKind> =
        if all { MeasureKind::ALL.to_vec() } else { args.measures.split(',').map(parse).collect::<Result<_, _>>()? };
    let state = load(&args.state)?;
    // HORODECKI needs two qubits or a pure state; `all` skips it otherwise
    if all && state.qubits() > 2 && state.as_pure().is_none() {
        kinds.retain(|&k| k != MeasureKind::Horodecki);
    }
    let id = state_id(&args.state);
    let mut values = Vec::new();
    for kind in kinds {
        values.extend(evaluate_measure(kind, &state, args.measured, args.method, &search)?);
    }
    let bytes = match args.output.format.unwrap_or(Format::Csv) {
        Format::Json => json_bytes(&MeasureOutput { state_id: &id, measures: &values }),
        Format::Csv => csv_bytes(
            &["state_id", "measure", "term", "value", "method", "residual", "satisfied", "axis"],
            values.iter().map(|v| {
                vec![
                    id.clone(),
                    v.kind.as_str().into(),
                    v.direction.as_str().into(),
                    format!("{:?}", v.value),
                    v.method.as_str().into(),
                    String::new(),
                    String::new(),
                    axis_text(v),
                ]
            }),
        )?,
    };
    emit(args.output.out.as_deref(), &bytes)?;
    Ok(true)
}

// monogamy

const REPORT_HEADER: [&str; 7] = ["state_id", "relation", "term", "value", "method", "residual", "satisfied"];

fn report_rows(report: &MonogamyReport) -> impl Iterator<Item = Vec<String>> + '_ {
    report.terms.iter().map(move |t| {
        vec![
            report.state_id.clone(),
            report.relation.as_str().into(),
            t.name.clone(),
            format!("{:?}", t.value),
            t.method.as_str().into(),
            format!("{:?}", report.residual),
            report.satisfied.to_string(),
        ]
    })
}

/// The sweep CSV keeps one row per sample; JSON keeps every term.
fn sweep_row(report: &MonogamyReport) -> Vec<String> {
    let oracle = report.terms.iter().any(|t| t.method == qcorr::Method::Oracle);
    vec![
        report.state_id.clone(),
        report.relation.as_str().into(),
        "residual".into(),
        format!("{:?}", report.residual),
        if oracle { "oracle" } else { "closed_form" }.into(),
        format!("{:?}", report.residual),
        report.satisfied.to_string(),
    ]
}

pub fn monogamy(args: &MonogamyArgs) -> Outcome {
    let relation: Relation = parse(&args.relation)?;
    let search = args.search.options()?;
    check_tolerance(args.tolerance)?;
    let state = load(&args.state)?;
    let opts = CheckOptions { tolerance: args.tolerance, search };
    let report = monogamy::check(relation, &state.density(), state.as_pure(), args.pivot, &opts)?
        .with_state_id(state_id(&args.state));
    let satisfied = report.satisfied;
    let bytes = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => json_bytes(&report),
        Format::Csv => csv_bytes(&REPORT_HEADER, report_rows(&report))?,
    };
    emit(args.output.out.as_deref(), &bytes)?;
    Ok(satisfied)
}

// sweep

#[derive(Serialize)]
struct SweepSummary {
    relation: Relation,
    spec: SampleSpec,
    pivot: usize,
    tolerance: f64,
    grid_points: usize,
    refine_iters: usize,
    count: usize,
    max_residual: f64,
    violations: usize,
    wall_time_s: f64,
    timestamp: String,
}

fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

/// Rejects relation/family combinations before any sampling happens.
fn check_arity(relation: Relation, spec: &SampleSpec) -> Result<(), Failure> {
    let n = spec.qubit_count;
    let pure_family = matches!(spec.family, Family::HaarPure | Family::CanonicalParams | Family::GenGhz);
    let ok = match relation {
        Relation::MinPure => n == 3 && pure_family,
        Relation::BellPair | Relation::ChainMixed => n == 3,
        Relation::MultiBell | Relation::NoSignaling | Relation::Averages => n >= 3,
    };
    if ok {
        Ok(())
    } else {
        Err(Failure::Arity(format!("{relation} cannot run on {n}-qubit {} samples", spec.family.as_str())))
    }
}

pub fn sweep(args: &SweepArgs) -> Outcome {
    let relation: Relation = parse(&args.relation)?;
    let family: Family = parse(&args.family)?;
    let search = args.search.options()?;
    check_tolerance(args.tolerance)?;
    let spec = SampleSpec { family, qubit_count: args.qubits, rank: args.rank, seed: args.seed, count: args.samples };
    spec.validate()?;
    check_arity(relation, &spec)?;
    if args.pivot >= args.qubits {
        return Err(Failure::Arity(format!("pivot {} out of range for {} qubits", args.pivot, args.qubits)));
    }
    let opts = CheckOptions { tolerance: args.tolerance, search };

    let start = Instant::now();
    let reports: Vec<MonogamyReport> = (0..spec.count)
        .into_par_iter()
        .map(|i| {
            let sample = spec.sample(i)?;
            let report = monogamy::check(relation, &sample.state.density(), sample.state.as_pure(), args.pivot, &opts)?;
            Ok(report.with_state_id(format!("{}-{}-{i}", family.as_str(), spec.seed)))
        })
        .collect::<Result<_, qcorr::Error>>()?;
    let elapsed = start.elapsed().as_secs_f64();

    let violations = reports.iter().filter(|r| !r.satisfied).count();
    let max_residual = reports.iter().map(|r| r.residual).fold(f64::NEG_INFINITY, f64::max);
    let (wall_time_s, timestamp) = match args.timestamp {
        TimestampMode::Fixed => (0.0, FIXED_TIMESTAMP.to_string()),
        TimestampMode::Now => (elapsed, chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
    };
    let summary = SweepSummary {
        relation,
        spec,
        pivot: args.pivot,
        tolerance: opts.tolerance.unwrap_or_else(|| relation.default_tolerance()),
        grid_points: search.grid_points,
        refine_iters: search.refine_iters,
        count: reports.len(),
        max_residual,
        violations,
        wall_time_s,
        timestamp,
    };
    let rows = match args.format {
        Format::Json => json_bytes(&reports),
        Format::Csv => csv_bytes(&REPORT_HEADER, reports.iter().map(sweep_row))?,
    };
    emit(Some(&args.out), &rows)?;
    emit(Some(&summary_path(&args.out)), &json_bytes(&summary))?;
    Ok(violations == 0)
}

// counterexample

#[derive(Serialize)]
struct CounterexampleOutput<'a> {
    #[serde(flatten)]
    report: &'a CounterexampleReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    monogamy: Option<&'a MonogamyReport>,
}

pub fn counterexample_cmd(args: &CounterexampleArgs) -> Outcome {
    let which: Counterexample = parse(&args.name)?;
    let relation: Option<Relation> = args.relation.as_deref().map(parse).transpose()?;
    let search = args.search.options()?;
    check_tolerance(args.tolerance)?;
    let case = counterexample(which)?;
    let report = evaluate_counterexample(&case, &search)?;
    let monogamy_report = match relation {
        Some(r) => {
            let opts = CheckOptions { tolerance: args.tolerance, search };
            Some(monogamy::check(r, &case.state, case.pure.as_ref(), 0, &opts)?.with_state_id(case.name.clone()))
        }
        None => None,
    };
    if let Some(path) = &args.write_state {
        let state = match &case.pure {
            Some(psi) => State::Pure(psi.clone()),
            None => State::Density(case.state.clone()),
        };
        io::write_state(path, &state).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }

    let bytes = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => json_bytes(&CounterexampleOutput { report: &report, monogamy: monogamy_report.as_ref() }),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        report.name.clone(),
                        "COUNTEREXAMPLE".into(),
                        r.term.clone(),
                        format!("{:?}", r.computed),
                        r.method.as_str().into(),
                        format!("{:?}", r.deviation),
                        r.ok.to_string(),
                    ]
                })
                .collect();
            if let Some(m) = &monogamy_report {
                rows.extend(report_rows(m));
            }
            csv_bytes(&REPORT_HEADER, rows)?
        }
    };
    emit(args.output.out.as_deref(), &bytes)?;
    Ok(report.satisfied && monogamy_report.is_none_or(|m| m.satisfied))
}
