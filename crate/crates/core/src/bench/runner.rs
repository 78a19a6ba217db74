use std::fmt::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::ebo::build_ebo;
use super::random::{gen_random_diagram, RandomSpec};
use crate::model::{normalize_utilities, ModelError, Strategy};
use crate::solver::{gap_percent, solve_meu, spu, SolveOptions, SolveStatus, SpuInit, WARM_START_SWEEPS};

/// One benchmark instance: a random diagram solved exactly (or up to the
/// limits) and by policy updating.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub spec: RandomSpec,
    /// Seconds, 0 when timing is disabled.
    pub cr_time: f64,
    pub cr_nodes_evaluated: usize,
    pub cr_gap_percent: f64,
    pub cr_eu: f64,
    pub cr_upper_bound: f64,
    pub cr_status: Option<SolveStatus>,
    pub spu_time: f64,
    pub spu_eu: f64,
    /// Gap of the policy-updating result against the final upper bound, on
    /// the normalized scale.
    pub spu_gap_percent_vs_ub: f64,
    /// Gap against the best strategy found by branch and bound, on the
    /// normalized scale.
    pub spu_gap_percent_vs_best: f64,
    /// Failure of this instance; the numeric fields are then NaN or zero.
    pub error: Option<String>,
}

/// Arithmetic means over the successful rows of one spec.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecSummary {
    pub total_nodes: usize,
    pub decision_nodes: usize,
    pub utility_nodes: usize,
    pub trials: usize,
    pub failures: usize,
    pub proven: usize,
    pub cr_time: f64,
    pub cr_nodes_evaluated: f64,
    pub cr_gap_percent: f64,
    pub spu_time: f64,
    pub spu_gap_percent_vs_ub: f64,
    pub spu_gap_percent_vs_best: f64,
}

/// Policy updating on the built-in planning model from the first alternative
/// everywhere (no action taken).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EboSpuRecord {
    pub init: SpuInit,
    pub eu: f64,
    pub sweeps: usize,
    pub updates: usize,
    /// Alternative per decision, in decision order.
    pub strategy: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub summaries: Vec<SpecSummary>,
    pub ebo_spu: EboSpuRecord,
}

/// Runs every spec for `trials` consecutive seeds starting at the spec's own
/// seed. Instance failures are recorded in their row.
pub fn run_benchmark(specs: &[RandomSpec], trials: usize, options: &SolveOptions) -> BenchReport {
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for spec in specs {
        let first = rows.len();
        for t in 0..trials {
            rows.push(run_instance(&spec.with_seed(spec.seed.wrapping_add(t as u64)), options));
        }
        summaries.push(summarize(spec, &rows[first..]));
    }
    BenchReport { rows, summaries, ebo_spu: ebo_spu_record() }
}

fn failed(spec: &RandomSpec, error: String) -> BenchRow {
    BenchRow {
        spec: spec.clone(),
        cr_time: 0.0,
        cr_nodes_evaluated: 0,
        cr_gap_percent: f64::NAN,
        cr_eu: f64::NAN,
        cr_upper_bound: f64::NAN,
        cr_status: None,
        spu_time: 0.0,
        spu_eu: f64::NAN,
        spu_gap_percent_vs_ub: f64::NAN,
        spu_gap_percent_vs_best: f64::NAN,
        error: Some(error),
    }
}

fn run_instance(spec: &RandomSpec, options: &SolveOptions) -> BenchRow {
    let diagram = match gen_random_diagram::<f64>(spec) {
        Ok(d) => d,
        Err(e) => return failed(spec, e.to_string()),
    };
    let clock = |start: Instant| if options.timing { start.elapsed().as_secs_f64() } else { 0.0 };

    let start = Instant::now();
    let cr = match solve_meu(&diagram, options) {
        Ok(r) => r,
        Err(e) => return failed(spec, e.to_string()),
    };
    let cr_time = clock(start);

    let start = Instant::now();
    let local = match spu(&diagram, &SpuInit::FirstAlternative.strategy(&diagram), WARM_START_SWEEPS) {
        Ok(r) => r,
        Err(e) => return failed(spec, e.to_string()),
    };
    let spu_time = clock(start);

    let (vs_ub, vs_best) = match normalize_utilities(&diagram) {
        Ok((_, info)) => {
            let ub = info.normalize(cr.upper_bound);
            let best = info.normalize(cr.eu);
            let own = info.normalize(local.eu);
            (gap_percent(ub, own), gap_percent(best, own))
        }
        Err(ModelError::TrivialDiagram { .. }) => (0.0, 0.0),
        Err(e) => return failed(spec, e.to_string()),
    };
    BenchRow {
        spec: spec.clone(),
        cr_time,
        cr_nodes_evaluated: cr.nodes_evaluated,
        cr_gap_percent: cr.gap_percent,
        cr_eu: cr.eu,
        cr_upper_bound: cr.upper_bound,
        cr_status: Some(cr.status),
        spu_time,
        spu_eu: local.eu,
        spu_gap_percent_vs_ub: vs_ub,
        spu_gap_percent_vs_best: vs_best,
        error: None,
    }
}

fn summarize(spec: &RandomSpec, rows: &[BenchRow]) -> SpecSummary {
    let ok: Vec<&BenchRow> = rows.iter().filter(|r| r.error.is_none()).collect();
    let mean = |f: &dyn Fn(&BenchRow) -> f64| {
        if ok.is_empty() {
            f64::NAN
        } else {
            ok.iter().map(|r| f(r)).sum::<f64>() / ok.len() as f64
        }
    };
    SpecSummary {
        total_nodes: spec.total_nodes,
        decision_nodes: spec.decision_nodes,
        utility_nodes: spec.utility_nodes,
        trials: rows.len(),
        failures: rows.len() - ok.len(),
        proven: ok.iter().filter(|r| r.cr_status == Some(SolveStatus::Proven)).count(),
        cr_time: mean(&|r| r.cr_time),
        cr_nodes_evaluated: mean(&|r| r.cr_nodes_evaluated as f64),
        cr_gap_percent: mean(&|r| r.cr_gap_percent),
        spu_time: mean(&|r| r.spu_time),
        spu_gap_percent_vs_ub: mean(&|r| r.spu_gap_percent_vs_ub),
        spu_gap_percent_vs_best: mean(&|r| r.spu_gap_percent_vs_best),
    }
}

/// Policy updating on the default planning model from the no-action strategy.
pub fn ebo_spu_record() -> EboSpuRecord {
    let diagram = build_ebo::<f64>();
    let init = SpuInit::FirstAlternative;
    let r = spu(&diagram, &init.strategy(&diagram), WARM_START_SWEEPS).expect("pure initial strategy");
    EboSpuRecord { init, eu: r.eu, sweeps: r.sweeps, updates: r.updates, strategy: strategy_choices(&r.strategy) }
}

fn strategy_choices(s: &Strategy<f64>) -> Vec<usize> {
    s.encoding().unwrap_or_default()
}

pub const BENCH_ROW_HEADER: &str = "total\tdecisions\tutilities\tseed\tcr_status\tcr_time\tcr_nodes\tcr_eu\tcr_upper_bound\tcr_gap_percent\tspu_time\tspu_eu\tspu_gap_percent_vs_ub\tspu_gap_percent_vs_best\terror";
pub const BENCH_MEAN_HEADER: &str = "total\tdecisions\tutilities\ttrials\tfailures\tproven\tcr_time\tcr_nodes\tcr_gap_percent\tspu_time\tspu_gap_percent_vs_ub\tspu_gap_percent_vs_best";

impl BenchReport {
    /// Tab-separated report: per-instance rows, then the per-spec means, then
    /// the planning-model policy-updating line. Sections start with `#`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# rows\n");
        out.push_str(BENCH_ROW_HEADER);
        out.push('\n');
        for r in &self.rows {
            let status = match r.cr_status {
                Some(SolveStatus::Proven) => "proven",
                Some(SolveStatus::Stopped) => "stopped",
                None => "failed",
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{status}\t{:.6}\t{}\t{:.9}\t{:.9}\t{:.6}\t{:.6}\t{:.9}\t{:.6}\t{:.6}\t{}",
                r.spec.total_nodes,
                r.spec.decision_nodes,
                r.spec.utility_nodes,
                r.spec.seed,
                r.cr_time,
                r.cr_nodes_evaluated,
                r.cr_eu,
                r.cr_upper_bound,
                r.cr_gap_percent,
                r.spu_time,
                r.spu_eu,
                r.spu_gap_percent_vs_ub,
                r.spu_gap_percent_vs_best,
                r.error.as_deref().unwrap_or("").replace(['\t', '\n'], " "),
            );
        }
        out.push_str("# means\n");
        out.push_str(BENCH_MEAN_HEADER);
        out.push('\n');
        for s in &self.summaries {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{:.6}\t{:.3}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
                s.total_nodes,
                s.decision_nodes,
                s.utility_nodes,
                s.trials,
                s.failures,
                s.proven,
                s.cr_time,
                s.cr_nodes_evaluated,
                s.cr_gap_percent,
                s.spu_time,
                s.spu_gap_percent_vs_ub,
                s.spu_gap_percent_vs_best,
            );
        }
        out.push_str("# ebo_spu\ninit\teu\tsweeps\tupdates\tstrategy\n");
        let e = &self.ebo_spu;
        let init = serde_json::to_value(e.init).ok().map(|v| v.to_string()).unwrap_or_default();
        let strategy: Vec<String> = e.strategy.iter().map(usize::to_string).collect();
        let _ = writeln!(
            out,
            "{}\t{:.9}\t{}\t{}\t{}",
            init.trim_matches('"'),
            e.eu,
            e.sweeps,
            e.updates,
            strategy.join(",")
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// File stem naming every spec (sizes and first seed) and the trial count.
    pub fn file_stem(&self, trials: usize) -> String {
        let mut stem = String::from("bench");
        for s in &self.summaries {
            let seed = self
                .rows
                .iter()
                .find(|r| r.spec.total_nodes == s.total_nodes && r.spec.decision_nodes == s.decision_nodes)
                .map_or(0, |r| r.spec.seed);
            let _ = write!(stem, "_t{}d{}u{}s{seed}", s.total_nodes, s.decision_nodes, s.utility_nodes);
        }
        let _ = write!(stem, "_n{trials}");
        stem
    }
}
