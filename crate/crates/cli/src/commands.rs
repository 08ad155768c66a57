use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::Value;
use wagegdp_core::indicators::{
    figure_series, load_series, ratios, real_series, AnnualObservation, Figure, IndicatorError, IngestError,
};
use wagegdp_core::simulator::{history_table, presets, Simulation};
use wagegdp_core::{ScenarioConfig, SimError, Table};
use wagegdp_service::SessionStore;

pub enum Failure {
    /// Bad flags or invalid input data: exit 2.
    Usage(String),
    /// Everything else: exit 1.
    Runtime(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Runtime(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Runtime(m) => m,
        }
    }
}

impl From<IndicatorError> for Failure {
    fn from(e: IndicatorError) -> Self {
        match e {
            IndicatorError::MissingColumn(_)
            | IndicatorError::MissingBaseYear(_)
            | IndicatorError::MissingDeflator(_)
            | IndicatorError::DuplicateYears(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Path) -> Result<Vec<AnnualObservation>, Failure> {
    load_series(path).map_err(|e| match e {
        IngestError::Io { .. } => Failure::Runtime(e.to_string()),
        IngestError::Csv(_) => Failure::Usage(e.to_string()),
        IngestError::Invalid(violations) => {
            for v in &violations {
                eprintln!("{}: {v}", path.display());
            }
            Failure::Usage(format!("{}: {} violation(s)", path.display(), violations.len()))
        }
    })
}

fn write_table(out: &str, table: &Table) -> Outcome {
    let result = if out == "-" {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        table.write_csv(&mut lock).and_then(|_| lock.flush())
    } else {
        File::create(out).and_then(|f| {
            let mut w = BufWriter::new(f);
            table.write_csv(&mut w)?;
            w.flush()
        })
    };
    result.map_err(|e| Failure::Runtime(format!("cannot write {out}: {e}")))
}

pub fn validate(input: &Path) -> Outcome {
    let series = read_input(input)?;
    eprintln!("{}: {} rows, no violations", input.display(), series.len());
    Ok(())
}

const SERIES: [&str; 6] = ["wmin", "wmean", "kaitz", "minmean", "nonsup", "real"];

pub fn indicators(input: &Path, series: &[String], base_year: Option<i32>, out: &str) -> Outcome {
    let mut wanted: Vec<&str> = Vec::new();
    for name in series.iter().map(|s| s.trim()) {
        if !SERIES.contains(&name) {
            return Err(Failure::Usage(format!(
                "unknown series `{name}`; valid names: {}",
                SERIES.join(", ")
            )));
        }
        if !wanted.contains(&name) {
            wanted.push(name);
        }
    }
    let real_base = match (wanted.contains(&"real"), base_year) {
        (true, None) => return Err(Failure::Usage("series `real` needs --base-year".into())),
        (true, Some(y)) => Some(y),
        (false, _) => None,
    };

    let data = read_input(input)?;
    let rows = ratios(&data)?;
    if wanted.contains(&"kaitz") && rows.iter().all(|r| r.kaitz.is_none()) {
        return Err(IndicatorError::MissingColumn("median_wage_hourly").into());
    }
    if wanted.contains(&"nonsup") && rows.iter().all(|r| r.min_to_nonsupervisory.is_none()) {
        return Err(IndicatorError::MissingColumn("nonsupervisory_wage_hourly").into());
    }
    let real = real_base.map(|y| real_series(&data, y)).transpose()?;

    let mut columns = vec!["year"];
    for name in &wanted {
        match *name {
            "wmin" => columns.push("w_min"),
            "wmean" => columns.push("w_mean"),
            "kaitz" => columns.push("kaitz"),
            "minmean" => columns.push("min_to_mean"),
            "nonsup" => columns.push("min_to_nonsupervisory"),
            _ => columns.extend(["real_annual_min_wage", "real_annual_mean_wage"]),
        }
    }
    let mut table = Table::new(columns);
    for (i, r) in rows.iter().enumerate() {
        let mut row = vec![Some(r.year as f64)];
        for name in &wanted {
            match *name {
                "wmin" => row.push(Some(r.w_min.get())),
                "wmean" => row.push(Some(r.w_mean.get())),
                "kaitz" => row.push(r.kaitz.map(|k| k.get())),
                "minmean" => row.push(Some(r.min_to_mean.get())),
                "nonsup" => row.push(r.min_to_nonsupervisory.map(|k| k.get())),
                _ => {
                    let real = &real.as_ref().expect("base year checked")[i];
                    row.push(Some(real.real_annual_min_wage));
                    row.push(Some(real.real_annual_mean_wage));
                }
            }
        }
        table.push(row);
    }
    write_table(out, &table)
}

pub fn figures(input: &Path, fig: &str, out: &str) -> Outcome {
    let which: Figure = fig.parse().map_err(Failure::Usage)?;
    let data = read_input(input)?;
    let table = figure_series(&data, which)?;
    write_table(out, &table)
}

/// Reads a scenario file: either a bare scenario or a session-creation
/// payload with exactly one of `preset` or `config`.
fn load_scenario(path: &Path) -> Result<ScenarioConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Runtime(format!("cannot read {}: {e}", path.display())))?;
    let parse_error = |e: serde_json::Error| Failure::Runtime(format!("{}: {e}", path.display()));
    let value: Value = serde_json::from_str(&text).map_err(parse_error)?;
    let payload_keys = value
        .as_object()
        .is_some_and(|o| !o.is_empty() && o.keys().all(|k| k == "preset" || k == "config"));
    if !payload_keys {
        return serde_json::from_value(value).map_err(parse_error);
    }
    match (value.get("preset"), value.get("config")) {
        (Some(Value::String(name)), None) => preset(name),
        (None, Some(config)) => serde_json::from_value(config.clone()).map_err(parse_error),
        _ => Err(Failure::Runtime(format!(
            "{}: provide exactly one of `preset` or `config`",
            path.display()
        ))),
    }
}

fn preset(name: &str) -> Result<ScenarioConfig, Failure> {
    presets::preset(name).ok_or_else(|| {
        Failure::Usage(format!("unknown preset `{name}`; valid names: {}", presets::NAMES.join(", ")))
    })
}

pub fn simulate(scenario: Option<&Path>, preset_name: Option<&str>, steps: Option<u32>, out: &str) -> Outcome {
    let mut config = match (scenario, preset_name) {
        (Some(path), None) => load_scenario(path)?,
        (None, Some(name)) => preset(name)?,
        _ => return Err(Failure::Usage("give exactly one of --scenario or --preset".into())),
    };
    if let Some(n) = steps {
        config.steps = n;
    }
    let sim = Simulation::run_to_end(config).map_err(|e| match e {
        SimError::Step { step, source } => Failure::Runtime(format!("simulation failed at step {step}: {source}")),
        other => Failure::Runtime(other.to_string()),
    })?;
    write_table(out, &history_table(sim.history()))?;
    let last = sim.latest();
    eprintln!(
        "t={} w_min={} w_mean={} gini_proxy={}",
        last.t,
        last.w_min.get(),
        last.w_mean.get(),
        last.gini_proxy
    );
    Ok(())
}

pub fn serve(bind: &str, data_dir: PathBuf) -> Outcome {
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure::Runtime(format!("cannot start runtime: {e}")))?;
    runtime.block_on(async {
        let store = SessionStore::open(&data_dir)
            .map_err(|e| Failure::Runtime(format!("cannot open data directory {}: {e}", data_dir.display())))?;
        let listener = tokio::net::TcpListener::bind(bind)
            .await
            .map_err(|e| Failure::Runtime(format!("cannot bind {bind}: {e}")))?;
        log::info!("{} session(s) recovered", store.len());
        wagegdp_service::serve(listener, Arc::new(store), shutdown_signal())
            .await
            .map_err(|e| Failure::Runtime(format!("server error: {e}")))?;
        log::info!("shut down cleanly");
        Ok(())
    })
}

async fn shutdown_signal() {
    let interrupt = tokio::signal::ctrl_c();
    #[cfg(unix)]
    {
        let mut term = tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate())
            .expect("installing a SIGTERM handler");
        tokio::select! {
            _ = interrupt => {}
            _ = term.recv() => {}
        }
    }
    #[cfg(not(unix))]
    {
        let _ = interrupt.await;
    }
}
