use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde_json::Value;

use qthreat_core::attack::{
    ecdlp_profile, effective_hash_rate, estimate_mining, network_rate_from_difficulty,
    optimistic_hash_rate, pool_attack_fraction, race_success_probability, signature_crack_estimate,
    HashRateForm, MiningAttackParams, RaceMethod, SignatureAttackParams,
};
use qthreat_core::forecast::{
    CrossoverReport, FigureId, ForecastOptions, Forecaster, Scenario, ScenarioName, YearGrid,
};
use qthreat_core::pow::{
    classical_cost_model, difficulty_to_target, hashcash_mine, hashcash_mine_parallel,
    hashcash_verify, momentum_header_hash, momentum_mine, momentum_mine_headers,
    momentum_mine_parallel, momentum_verify, BlockHeader, HeaderSearch, MineOutcome,
    MomentumParams, MomentumRun, NonceSearch, SolutionRecord, Target,
};
use qthreat_core::qec::{DistanceMode, PhysicalGateModel, QubitFormula};

use crate::config::{load_tables, RunConfig, TablePaths};
use crate::output::{num, Output, Table};
use crate::{
    pqsig, Command, EstimateCmd, Failure, ForecastArgs, HeaderInput, MiningArgs, ModelFlags,
    PowCmd, PqsigArgs, RaceArgs, SignatureArgs, TargetInput,
};

type Outcome = Result<Output, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Outcome {
    match cmd {
        Command::Estimate(EstimateCmd::Mining(a)) => mining(a, cfg),
        Command::Estimate(EstimateCmd::Signature(a)) => signature(a, cfg),
        Command::Forecast(a) => forecast(a, cfg),
        Command::Pow(p) => pow(p),
        Command::Pqsig(a) => pqsig_table(a),
        Command::Race(a) => race(a, cfg),
    }
}

struct Model {
    mode: DistanceMode,
    formula: QubitFormula,
    form: HashRateForm,
}

fn model(flags: &ModelFlags, cfg: &RunConfig) -> Result<Model, Failure> {
    fn pick<T>(flag: Option<T>, cfg: &Option<String>) -> Result<T, Failure>
    where
        T: std::str::FromStr + Default,
        T::Err: std::fmt::Display,
    {
        match (flag, cfg) {
            (Some(v), _) => Ok(v),
            (None, Some(s)) => s.parse().map_err(usage),
            (None, None) => Ok(T::default()),
        }
    }
    Ok(Model {
        mode: pick(flags.distance_mode, &cfg.distance_mode)?,
        formula: pick(flags.qubit_formula, &cfg.qubit_formula)?,
        form: pick(flags.hash_form, &cfg.hash_rate_form)?,
    })
}

fn distances(d: &[f64]) -> String {
    d.iter()
        .map(|x| format!("{x:.3}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn mining(a: &MiningArgs, cfg: &RunConfig) -> Outcome {
    let m = model(&a.model, cfg)?;
    let mut out = Output::new("estimate mining");
    out.number("difficulty", a.difficulty, "")
        .number("clock", a.clock, "Hz")
        .field("machines", a.machines, "");
    if !a.optimistic {
        let p = a.gate_error.expect("required unless optimistic");
        let gate = PhysicalGateModel::new(p).map_err(usage)?;
        let params =
            MiningAttackParams::new(a.difficulty, a.clock, gate, a.machines).map_err(usage)?;
        let (oh, rate) = estimate_mining(&params, m.mode, m.formula, m.form).map_err(usage)?;
        let rate_of = |form| {
            effective_hash_rate(&params, &oh, form)
                .map(|r| r.h_qc)
                .map_err(usage)
        };
        out.number("gate_error", p, "")
            .number("oracle_calls", rate.oracle_calls, "")
            .number("cycles_per_oracle", rate.cycles_per_oracle, "cycles")
            .field("distillation_layers", oh.schedule.layers(), "")
            .field("layer_distances", distances(&oh.schedule.distances), "")
            .number("c_tau", oh.c_tau, "cycles/T")
            .number("d_c", oh.d_c, "")
            .number("c_nq", oh.c_nq, "qubits/logical")
            .number("n_q", oh.n_q, "qubits")
            .number("tau", rate.tau, "s")
            .number(
                "h_qc_first_principles",
                rate_of(HashRateForm::FirstPrinciples)?,
                "H/s",
            )
            .number(
                "h_qc_closed_form",
                rate_of(HashRateForm::ClosedForm)?,
                "H/s",
            )
            .field("hash_form", m.form.name(), "")
            .number("h_qc", rate.h_qc, "H/s")
            .number("tau_parallel", rate.tau_parallel, "s")
            .number("h_parallel", rate.h_parallel, "H/s");
    }
    out.number(
        "optimistic_h_qc",
        optimistic_hash_rate(a.clock, a.difficulty),
        "H/s",
    )
    .number(
        "pool_fraction",
        pool_attack_fraction(a.machines, a.clock, a.difficulty).map_err(usage)?,
        "",
    )
    .number(
        "network_rate",
        network_rate_from_difficulty(a.difficulty),
        "H/s",
    );
    Ok(out)
}

fn signature(a: &SignatureArgs, cfg: &RunConfig) -> Outcome {
    let m = model(&a.model, cfg)?;
    let gate = PhysicalGateModel::new(a.gate_error).map_err(usage)?;
    let params = SignatureAttackParams::new(a.key_bits, a.clock, gate).map_err(usage)?;
    let e = signature_crack_estimate(&params, m.mode, m.formula).map_err(usage)?;
    let p = ecdlp_profile(a.key_bits).map_err(usage)?;
    let mut out = Output::new("estimate signature");
    out.field("key_bits", a.key_bits, "")
        .number("clock", a.clock, "Hz")
        .number("gate_error", a.gate_error, "")
        .field("logical_qubits", p.logical_qubits, "")
        .number("toffoli_count", p.toffoli_count, "")
        .number("toffoli_depth", p.toffoli_depth, "")
        .field("distillation_layers", e.overheads.schedule.layers(), "")
        .field(
            "layer_distances",
            distances(&e.overheads.schedule.distances),
            "",
        )
        .number("c_tau", e.overheads.c_tau, "cycles/T")
        .number("d_c", e.overheads.d_c, "")
        .number("c_nq", e.overheads.c_nq, "qubits/logical")
        .number("n_q", e.n_q, "qubits")
        .number("crack_time", e.tau, "s")
        .number("crack_time_minutes", e.tau / 60.0, "min")
        .number("crack_time_days", e.tau / 86_400.0, "d");
    Ok(out)
}

fn scenarios(flag: Option<&str>, cfg: &RunConfig) -> Result<Vec<Scenario>, Failure> {
    match flag.or(cfg.scenario.as_deref()).unwrap_or("both") {
        "both" => Ok(Scenario::both().to_vec()),
        s => Ok(vec![Scenario::named(
            s.parse::<ScenarioName>().map_err(usage)?,
        )]),
    }
}

fn year_value(y: Option<f64>) -> Value {
    y.map_or_else(|| Value::from("beyond horizon"), num)
}

fn forecast(a: &ForecastArgs, cfg: &RunConfig) -> Outcome {
    let m = model(&a.model, cfg)?;
    let sc = scenarios(a.scenario.as_deref(), cfg)?;
    let grid = YearGrid::new(a.from, a.to, a.step).map_err(usage)?;
    let figure = a
        .figure
        .as_deref()
        .map(str::parse::<FigureId>)
        .transpose()
        .map_err(usage)?;
    let defaults = ForecastOptions::default();
    let options = ForecastOptions {
        distance_mode: m.mode,
        qubit_formula: m.formula,
        hash_rate_form: m.form,
        overhead_on_qubits: a
            .overhead_on_qubits
            .or(cfg.overhead_on_qubits)
            .unwrap_or(defaults.overhead_on_qubits),
        break_requires_qubits: a
            .break_requires_qubits
            .or(cfg.break_requires_qubits)
            .unwrap_or(defaults.break_requires_qubits),
    };
    let from_cfg = |p: &Option<std::path::PathBuf>| p.as_ref().map(|p| cfg.resolve(p));
    let (q, g, f, n) = (
        from_cfg(&cfg.data.qubits),
        from_cfg(&cfg.data.gate_times),
        from_cfg(&cfg.data.fidelities),
        from_cfg(&cfg.data.network_history),
    );
    let tables = load_tables(&TablePaths {
        qubits: a.qubit_table.as_deref().or(q.as_deref()),
        gate_times: a.gate_time_table.as_deref().or(g.as_deref()),
        fidelities: a.fidelity_table.as_deref().or(f.as_deref()),
        network_history: a.network_history.as_deref().or(n.as_deref()),
        network_fit_start: a.network_fit_start.or(cfg.data.network_fit_start),
    })
    .map_err(Failure::Usage)?;
    let fc = Forecaster::new(tables, options).map_err(usage)?;

    let mut out = Output::new("forecast");
    out.number("from", grid.start, "year")
        .number("to", grid.end, "year")
        .number("step", grid.step, "year");
    for s in &sc {
        let CrossoverReport {
            qubit_sufficiency_year,
            signature_break_year,
            hash_dominance_year,
            ..
        } = fc.crossovers(s, &grid).map_err(usage)?;
        let name = s.name.as_str();
        out.field(
            format!("{name}.qubit_sufficiency_year"),
            year_value(qubit_sufficiency_year),
            "year",
        )
        .field(
            format!("{name}.signature_break_year"),
            year_value(signature_break_year),
            "year",
        )
        .field(
            format!("{name}.hash_dominance_year"),
            year_value(hash_dominance_year),
            "year",
        );
    }
    if let Some(fig) = figure {
        let series = fc.figure_series(fig, &sc, &grid).map_err(usage)?;
        out.field("figure", fig.as_str(), "");
        out.table = Some(Table {
            columns: series.columns,
            rows: series
                .rows
                .into_iter()
                .map(|r| r.into_iter().map(num).collect())
                .collect(),
        });
    }
    Ok(out)
}

fn read_header(input: &HeaderInput) -> Result<Vec<u8>, Failure> {
    match (&input.header, &input.header_hex) {
        (Some(path), _) => fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display()))),
        (None, Some(h)) => hex::decode(h.trim()).map_err(|e| usage(format!("header hex: {e}"))),
        (None, None) => Err(usage("a header is required")),
    }
}

fn resolve_target(t: &TargetInput, header: &BlockHeader) -> Result<Target, Failure> {
    if let Some(target) = t.target {
        Ok(target)
    } else if let Some(bits) = t.bits {
        Target::from_compact(bits).map_err(usage)
    } else if let Some(d) = t.difficulty {
        difficulty_to_target(d).map_err(usage)
    } else if let Some(x) = t.target_log2 {
        Target::from_log2(x).map_err(usage)
    } else {
        Target::from_compact(header.bits).map_err(usage)
    }
}

fn write_file(path: &Path, bytes: &[u8], append: bool) -> Result<(), Failure> {
    let mut f = fs::OpenOptions::new()
        .create(true)
        .write(true)
        .append(append)
        .truncate(!append)
        .open(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    f.write_all(bytes)
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn momentum_fields(out: &mut Output, run: &MomentumRun) {
    out.field("headers_tried", run.headers_tried, "")
        .field("h2_evaluations", run.h2_evaluations, "hashes")
        .field("h1_evaluations", run.h1_evaluations, "hashes");
}

fn pow(cmd: &PowCmd) -> Outcome {
    match cmd {
        PowCmd::HashcashMine {
            header,
            target,
            nonce_start,
            nonce_count,
            timestamp_bits,
            parallel_batch,
            out: out_path,
        } => {
            let template = BlockHeader::from_bytes(&read_header(header)?).map_err(usage)?;
            let target = resolve_target(target, &template)?;
            if *timestamp_bits > 32 {
                return Err(usage("timestamp bits must be at most 32"));
            }
            let search = NonceSearch {
                nonce_start: *nonce_start,
                nonce_count: *nonce_count,
                timestamp_bits: *timestamp_bits,
            };
            let outcome = match parallel_batch {
                Some(b) => hashcash_mine_parallel(&template, &target, &search, *b),
                None => hashcash_mine(&template, &target, &search),
            };
            let mut out = Output::new("pow hashcash-mine");
            out.field("target", target.to_string(), "")
                .field("found", outcome.header().is_some(), "")
                .field("attempts", outcome.attempts(), "hashes");
            match outcome {
                MineOutcome::Found { header, .. } => {
                    out.field("nonce", header.nonce, "")
                        .field("timestamp", header.timestamp, "")
                        .field("hash", hex::encode(header.hash()), "")
                        .field("header_hex", hex::encode(header.to_bytes()), "");
                    if let Some(p) = out_path {
                        write_file(p, &header.to_bytes(), false)?;
                    }
                    Ok(out)
                }
                MineOutcome::Exhausted { .. } => Err(Failure::Rejected(out)),
            }
        }
        PowCmd::HashcashVerify { header, target } => {
            let h = BlockHeader::from_bytes(&read_header(header)?).map_err(usage)?;
            let target = resolve_target(target, &h)?;
            let valid = hashcash_verify(&h, &target);
            let mut out = Output::new("pow hashcash-verify");
            out.field("valid", valid, "")
                .field("hash", hex::encode(h.hash()), "")
                .field("target", target.to_string(), "");
            if valid {
                Ok(out)
            } else {
                Err(Failure::Rejected(out))
            }
        }
        PowCmd::MomentumMine {
            header_hash,
            header,
            header_hex,
            headers,
            n,
            ell,
            t,
            subset_bits,
            parallel_chunk,
            out: out_path,
        } => {
            let params = MomentumParams::new(*n, *ell, *t, *subset_bits).map_err(usage)?;
            let run = if let Some(h) = header_hash {
                let h = u64::from_str_radix(h.trim().trim_start_matches("0x"), 16)
                    .map_err(|e| usage(format!("header hash: {e}")))?;
                match parallel_chunk {
                    Some(c) => momentum_mine_parallel(h, &params, *c),
                    None => momentum_mine(h, &params),
                }
            } else {
                let bytes = read_header(&HeaderInput {
                    header: header.clone(),
                    header_hex: header_hex.clone(),
                })?;
                match headers {
                    Some(count) => momentum_mine_headers(
                        &HeaderSearch {
                            base: bytes,
                            start: 0,
                            count: *count,
                        },
                        &params,
                    ),
                    None => {
                        let h = momentum_header_hash(&bytes, params.n);
                        match parallel_chunk {
                            Some(c) => momentum_mine_parallel(h, &params, *c),
                            None => momentum_mine(h, &params),
                        }
                    }
                }
            };
            let mut out = Output::new("pow momentum-mine");
            out.field("found", run.solution.is_some(), "");
            match run.solution {
                Some(solution) => {
                    let record = SolutionRecord { solution, params }.to_string();
                    out.field("record", record.clone(), "")
                        .field("header_hash", format!("{:016x}", solution.header_hash), "")
                        .field("a", solution.a, "")
                        .field("b", solution.b, "");
                    if let Some(i) = run.header_index {
                        out.field("header_index", i, "");
                    }
                    momentum_fields(&mut out, &run);
                    if let Some(p) = out_path {
                        write_file(p, format!("{record}\n").as_bytes(), true)?;
                    }
                    Ok(out)
                }
                None => {
                    momentum_fields(&mut out, &run);
                    Err(Failure::Rejected(out))
                }
            }
        }
        PowCmd::MomentumVerify {
            record,
            record_file,
        } => {
            let line = match (record, record_file) {
                (Some(r), _) => r.clone(),
                (None, Some(p)) => fs::read_to_string(p)
                    .map_err(|e| usage(format!("{}: {e}", p.display())))?
                    .lines()
                    .find(|l| !l.trim().is_empty())
                    .ok_or_else(|| usage("record file is empty"))?
                    .to_owned(),
                (None, None) => return Err(usage("a record is required")),
            };
            let rec: SolutionRecord = line.parse().map_err(usage)?;
            let valid = momentum_verify(&rec.solution, &rec.params);
            let mut out = Output::new("pow momentum-verify");
            out.field("valid", valid, "")
                .field("record", rec.to_string(), "");
            if valid {
                Ok(out)
            } else {
                Err(Failure::Rejected(out))
            }
        }
        PowCmd::CostModel {
            n,
            ell,
            t,
            subset_bits,
        } => {
            let bits = match subset_bits {
                Some(b) => *b,
                None => {
                    let probe = MomentumParams::new(*n, *ell, *t, 0).map_err(usage)?;
                    let ideal = (0.5 * probe.work_ratio().log2()).round().max(0.0) as u32;
                    ideal.min(*ell).min(32)
                }
            };
            let params = MomentumParams::new(*n, *ell, *t, bits).map_err(usage)?;
            let r = classical_cost_model(&params);
            let mut out = Output::new("pow cost-model");
            out.field("subset_bits", bits, "")
                .number("subset_size", r.subset_size, "")
                .number("m", r.m, "headers")
                .number("classical_time", r.classical_time, "hashes")
                .number("optimal_subset", r.optimal_subset, "")
                .number("optimal_time", r.optimal_time, "hashes")
                .field(
                    "memory_limited_time",
                    r.memory_limited_time.map_or(Value::Null, num),
                    "hashes",
                )
                .number("quantum_lower_bound", r.quantum_lower_bound, "queries")
                .number("quantum_optimal_bound", r.quantum_optimal_bound, "queries")
                .number(
                    "optimal_speedup",
                    r.optimal_time / r.quantum_optimal_bound,
                    "",
                );
            Ok(out)
        }
    }
}

fn pqsig_table(a: &PqsigArgs) -> Outcome {
    let rows = pqsig::sorted(a.sort, a.descending);
    let mut out = Output::new("pqsig");
    out.table = Some(Table {
        columns: [
            "type",
            "name",
            "security_bits",
            "pk_kb",
            "sig_kb",
            "total_kb",
        ]
        .map(String::from)
        .to_vec(),
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.type_code.into(),
                    r.name.into(),
                    r.security_bits.into(),
                    num(r.pk_kb),
                    num(r.sig_kb),
                    num(r.total_kb),
                ]
            })
            .collect(),
    });
    Ok(out)
}

fn race(a: &RaceArgs, cfg: &RunConfig) -> Outcome {
    let method = if a.monte_carlo {
        RaceMethod::MonteCarlo {
            seed: a.seed.or(cfg.seed).unwrap_or(0),
            trials: a.trials,
            workers: a.workers,
        }
    } else {
        RaceMethod::Analytic
    };
    let est = race_success_probability(a.q, a.k, method).map_err(usage)?;
    let mut out = Output::new("race");
    out.number("q", a.q, "").field("k", a.k, "");
    match method {
        RaceMethod::Analytic => {
            out.field("method", "analytic", "");
        }
        RaceMethod::MonteCarlo { seed, workers, .. } => {
            out.field("method", "monte-carlo", "")
                .field("seed", seed, "")
                .field("workers", workers, "")
                .field("trials", est.trials, "")
                .field("successes", est.successes, "");
        }
    }
    out.number("probability", est.probability, "");
    if let Some(se) = est.std_error {
        out.number("std_error", se, "");
    }
    Ok(out)
}
