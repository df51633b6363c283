//! Benchmark battery: random instances solved in improved and/or baseline
//! mode, one record per (instance, mode).

use std::io::Write;
use std::time::Instant;

use omega_core::omega::{omega_global, Counts, Mode, OmegaConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::generate::generate_instance;

pub const CSV_HEADER: [&str; 10] = [
    "instance_id",
    "p",
    "gens",
    "mode",
    "omega",
    "ubound_scans",
    "ps_solved",
    "ek_solved",
    "ms",
    "seed",
];

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub p: usize,
    pub count: usize,
    pub min: i64,
    pub max: i64,
    /// Instance `i` is generated from `seed + i`.
    pub seed: u64,
    pub modes: Vec<Mode>,
    pub jobs: usize,
    pub omega: OmegaConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            p: 5,
            count: 10,
            min: 100,
            max: 2000,
            seed: 42,
            modes: vec![Mode::Improved, Mode::Baseline],
            jobs: 1,
            omega: OmegaConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub instance_id: usize,
    pub p: usize,
    pub generators: Vec<i64>,
    pub mode: Mode,
    /// ω(S, n_j) per generator.
    pub values: Vec<i64>,
    pub omega: Option<i64>,
    pub counts: Counts,
    pub ms: f64,
    pub seed: u64,
    pub error: Option<BenchError>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchError {
    pub message: String,
    pub resource_limit: bool,
}

impl BenchRecord {
    fn failed(instance_id: usize, p: usize, generators: Vec<i64>, mode: Mode, seed: u64, error: BenchError) -> Self {
        Self {
            instance_id,
            p,
            generators,
            mode,
            values: Vec::new(),
            omega: None,
            counts: Counts::default(),
            ms: 0.0,
            seed,
            error: Some(error),
        }
    }

    /// Fields in [`CSV_HEADER`] order.
    pub fn csv_row(&self) -> [String; 10] {
        let gens = self
            .generators
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        let mode = mode_name(self.mode).to_string();
        match &self.error {
            None => [
                self.instance_id.to_string(),
                self.p.to_string(),
                gens,
                mode,
                self.omega.map(|w| w.to_string()).unwrap_or_default(),
                self.counts.ubound_scans.to_string(),
                self.counts.ps_solved.to_string(),
                self.counts.ek_solved.to_string(),
                format!("{:.3}", self.ms),
                self.seed.to_string(),
            ],
            Some(err) => [
                self.instance_id.to_string(),
                self.p.to_string(),
                gens,
                mode,
                format!("error: {}", err.message),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                self.seed.to_string(),
            ],
        }
    }
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Improved => "improved",
        Mode::Baseline => "baseline",
    }
}

fn run_instance(config: &BenchConfig, instance_id: usize) -> Vec<BenchRecord> {
    let seed = config.seed.wrapping_add(instance_id as u64);
    let semigroup = match generate_instance(config.p, config.min, config.max, seed) {
        Ok(s) => s,
        Err(e) => {
            let error = BenchError {
                message: e.to_string(),
                resource_limit: false,
            };
            return config
                .modes
                .iter()
                .map(|&mode| BenchRecord::failed(instance_id, config.p, Vec::new(), mode, seed, error.clone()))
                .collect();
        }
    };
    let generators = semigroup.generators().to_vec();
    config
        .modes
        .iter()
        .map(|&mode| {
            let omega_config = OmegaConfig { mode, ..config.omega };
            let start = Instant::now();
            match omega_global(&semigroup, &omega_config, 1) {
                Ok(result) => BenchRecord {
                    instance_id,
                    p: config.p,
                    generators: generators.clone(),
                    mode,
                    counts: result.counts(),
                    values: result.values,
                    omega: Some(result.omega),
                    ms: start.elapsed().as_secs_f64() * 1e3,
                    seed,
                    error: None,
                },
                Err(e) => BenchRecord::failed(
                    instance_id,
                    config.p,
                    generators.clone(),
                    mode,
                    seed,
                    BenchError {
                        message: e.to_string(),
                        resource_limit: e.is_resource_limit(),
                    },
                ),
            }
        })
        .collect()
}

/// Runs the battery, handing each instance's records to `sink` in instance
/// order as soon as they (and all earlier instances) are done.
pub fn run_bench_with(config: &BenchConfig, mut sink: impl FnMut(&BenchRecord)) -> Vec<BenchRecord> {
    let mut records = Vec::with_capacity(config.count * config.modes.len());
    let chunk = config.jobs.max(1);
    let pool = (chunk > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(chunk)
            .build()
            .expect("thread pool")
    });
    let mut next = 0;
    while next < config.count {
        let ids: Vec<usize> = (next..(next + chunk).min(config.count)).collect();
        let batch: Vec<Vec<BenchRecord>> = match &pool {
            Some(pool) => pool.install(|| ids.par_iter().map(|&i| run_instance(config, i)).collect()),
            None => ids.iter().map(|&i| run_instance(config, i)).collect(),
        };
        for record in batch.into_iter().flatten() {
            sink(&record);
            records.push(record);
        }
        next += chunk;
    }
    records
}

pub fn run_bench(config: &BenchConfig) -> Vec<BenchRecord> {
    run_bench_with(config, |_| {})
}

/// Writes the header and `records`; the writer is flushed per record.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(inner: W) -> csv::Result<Self> {
        let mut writer = csv::Writer::from_writer(inner);
        writer.write_record(CSV_HEADER)?;
        writer.flush()?;
        Ok(Self { writer })
    }

    pub fn write(&mut self, record: &BenchRecord) -> csv::Result<()> {
        self.writer.write_record(record.csv_row())?;
        self.writer.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> W {
        self.writer.into_inner().map_err(|e| e.into_error()).expect("flushed writer")
    }
}

/// Min, median and max over the successful records of one mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeSummary {
    pub runs: usize,
    pub median_ms: f64,
    pub min_ms: f64,
    pub max_ms: f64,
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

pub fn summarize(records: &[BenchRecord], mode: Mode) -> Option<TimeSummary> {
    let mut times: Vec<f64> = records
        .iter()
        .filter(|r| r.mode == mode && r.error.is_none())
        .map(|r| r.ms)
        .collect();
    let median_ms = median(&mut times)?;
    Some(TimeSummary {
        runs: times.len(),
        median_ms,
        min_ms: times[0],
        max_ms: times[times.len() - 1],
    })
}

/// Summary lines, one per mode present in `modes`.
pub fn summary_lines(records: &[BenchRecord], modes: &[Mode]) -> Vec<String> {
    modes
        .iter()
        .map(|&mode| match summarize(records, mode) {
            Some(t) => format!(
                "{}: runs={} median_ms={:.3} min_ms={:.3} max_ms={:.3}",
                mode_name(mode),
                t.runs,
                t.median_ms,
                t.min_ms,
                t.max_ms
            ),
            None => format!("{}: runs=0", mode_name(mode)),
        })
        .collect()
}

/// Instances whose improved and baseline records disagree on some ω value.
pub fn mode_disagreements(records: &[BenchRecord]) -> Vec<usize> {
    let mut bad = Vec::new();
    for improved in records.iter().filter(|r| r.mode == Mode::Improved && r.error.is_none()) {
        let disagrees = records
            .iter()
            .filter(|r| r.instance_id == improved.instance_id && r.mode == Mode::Baseline && r.error.is_none())
            .any(|r| r.values != improved.values);
        if disagrees {
            bad.push(improved.instance_id);
        }
    }
    bad
}
