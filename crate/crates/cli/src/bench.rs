use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use deltakp::linalg::delta;
use deltakp::oracle::{brute_force_knapsack, brute_force_standard};
use deltakp::ratlp::Rational;
use deltakp::{Instance, Mode};
use rayon::prelude::*;
use serde::Serialize;

use crate::file::InstanceFile;
use crate::solve::{solve, SolveOptions};
use crate::CliError;

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub modes: Vec<Mode>,
    /// Used for fptas rows only; one row per epsilon.
    pub epsilons: Vec<Rational>,
    pub cap: u128,
    pub binarized: bool,
}

pub const COLUMNS: [&str; 11] = ["id", "mode", "epsilon", "n", "m", "delta", "radius", "value", "oracle", "states", "micros"];

/// One CSV row. A failed run has `value = "error: ..."`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub id: String,
    pub mode: String,
    pub epsilon: String,
    pub n: usize,
    pub m: usize,
    pub delta: String,
    pub radius: Option<u64>,
    pub value: String,
    pub oracle: Option<i64>,
    pub states: Option<u64>,
    pub micros: u128,
}

/// Instance files of `dir` in name order.
pub fn corpus(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let rd = std::fs::read_dir(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut out: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    Ok(out)
}

struct Loaded {
    id: String,
    file: Result<InstanceFile, CliError>,
    oracle: Option<i64>,
}

fn oracle_value(f: &InstanceFile, cap: u128) -> Option<i64> {
    if let Some(v) = f.meta.known_opt {
        return Some(v);
    }
    let r = match &f.instance {
        Instance::Knapsack(k) => brute_force_knapsack(k, cap),
        Instance::Standard(s) => brute_force_standard(s, cap),
    };
    r.ok().filter(|r| !r.is_infeasible()).map(|r| r.value)
}

/// Runs every (instance, mode, epsilon) combination. Rows come back in corpus
/// order, then mode order, then epsilon order, whatever the thread schedule.
pub fn bench(files: &[PathBuf], opts: &BenchOptions) -> Vec<BenchRecord> {
    let loaded: Vec<Loaded> = files
        .par_iter()
        .map(|p| {
            let id = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let file = InstanceFile::read(p);
            let oracle = file.as_ref().ok().and_then(|f| oracle_value(f, opts.cap));
            Loaded { id, file, oracle }
        })
        .collect();

    let mut jobs: Vec<(usize, Mode, Option<&Rational>)> = Vec::new();
    for i in 0..loaded.len() {
        for &mode in &opts.modes {
            if mode == Mode::Fptas {
                jobs.extend(opts.epsilons.iter().map(|e| (i, mode, Some(e))));
            } else {
                jobs.push((i, mode, None));
            }
        }
    }
    jobs.par_iter().map(|&(i, mode, eps)| run(&loaded[i], mode, eps, opts)).collect()
}

fn run(l: &Loaded, mode: Mode, eps: Option<&Rational>, opts: &BenchOptions) -> BenchRecord {
    let mut rec = BenchRecord {
        id: l.id.clone(),
        mode: mode.to_string(),
        epsilon: eps.map(|e| e.to_string()).unwrap_or_default(),
        n: 0,
        m: 0,
        delta: String::new(),
        radius: None,
        value: String::new(),
        oracle: l.oracle,
        states: None,
        micros: 0,
    };
    let f = match &l.file {
        Ok(f) => f,
        Err(e) => {
            rec.value = format!("error: {e}");
            return rec;
        }
    };
    let a = f.instance.a();
    rec.m = a.rows();
    rec.n = a.cols();
    rec.delta = match f.meta.delta {
        Some(d) => d.to_string(),
        None => delta(a).map(|d| d.to_string()).unwrap_or_default(),
    };
    let so = SolveOptions { epsilon: eps.cloned(), cap: opts.cap, binarized: opts.binarized, ..SolveOptions::new(mode) };
    let start = Instant::now();
    let result = solve(&f.instance, &so);
    rec.micros = start.elapsed().as_micros();
    match result {
        Ok(r) if r.is_infeasible() => rec.value = "infeasible".into(),
        Ok(r) => {
            rec.value = r.value.to_string();
            rec.states = r.stats.get("states").copied();
            rec.radius = r.stats.get("radius").copied();
        }
        Err(e) => rec.value = format!("error: {e}"),
    }
    rec
}

pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(COLUMNS).map_err(|e| CliError::Io(e.to_string()))?;
    for r in records {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}
