use std::fmt::Write;

use serde::{Deserialize, Serialize};

/// One branch-and-bound event, all bounds on the normalized scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogEvent {
    /// Seconds since the solve started (0 when timing is disabled).
    pub elapsed: f64,
    pub node: usize,
    /// LP bound of the node, `None` when its relaxation is infeasible.
    pub lp_bound: Option<f64>,
    pub lower: f64,
    pub upper: f64,
    pub gap_percent: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunLog {
    pub events: Vec<LogEvent>,
}

pub const RUN_LOG_HEADER: &str = "elapsed\tnode\tlp_bound\tlower\tupper\tgap_percent";

impl RunLog {
    /// Tab-separated table with a header line.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(RUN_LOG_HEADER);
        out.push('\n');
        for e in &self.events {
            let bound = e.lp_bound.map_or_else(|| "infeasible".to_string(), |b| format!("{b:.12}"));
            let _ = writeln!(
                out,
                "{:.6}\t{}\t{bound}\t{:.12}\t{:.12}\t{:.9}",
                e.elapsed, e.node, e.lower, e.upper, e.gap_percent
            );
        }
        out
    }

    /// Parses the output of [`RunLog::to_tsv`].
    pub fn from_tsv(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        if lines.next() != Some(RUN_LOG_HEADER) {
            return Err("missing run-log header".into());
        }
        let mut events = Vec::new();
        for (k, line) in lines.enumerate() {
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 6 {
                return Err(format!("line {}: expected 6 fields", k + 2));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| format!("line {}: {e}", k + 2));
            events.push(LogEvent {
                elapsed: num(f[0])?,
                node: f[1].parse().map_err(|e| format!("line {}: {e}", k + 2))?,
                lp_bound: if f[2] == "infeasible" { None } else { Some(num(f[2])?) },
                lower: num(f[3])?,
                upper: num(f[4])?,
                gap_percent: num(f[5])?,
            });
        }
        Ok(Self { events })
    }

    /// Whether the lower bound never decreases, the upper bound never
    /// increases and lower ≤ upper at every event, all within `tol`.
    pub fn is_monotone(&self, tol: f64) -> bool {
        self.events.iter().all(|e| e.lower <= e.upper + tol)
            && self.events.windows(2).all(|w| w[1].lower >= w[0].lower - tol && w[1].upper <= w[0].upper + tol)
    }
}

/// Relative gap in percent between an upper and a lower bound.
pub fn gap_percent(upper: f64, lower: f64) -> f64 {
    if upper == f64::INFINITY || lower == f64::NEG_INFINITY {
        return f64::INFINITY;
    }
    (100.0 * (upper - lower) / upper.abs().max(1e-12)).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_round_trip() {
        let log = RunLog {
            events: vec![
                LogEvent { elapsed: 0.0, node: 1, lp_bound: Some(2.5), lower: 1.0, upper: 2.5, gap_percent: 60.0 },
                LogEvent { elapsed: 0.0, node: 2, lp_bound: None, lower: 2.0, upper: 2.0, gap_percent: 0.0 },
            ],
        };
        let parsed = RunLog::from_tsv(&log.to_tsv()).unwrap();
        assert_eq!(parsed, log);
        assert!(log.is_monotone(0.0));
        assert!(RunLog::from_tsv("nope").is_err());
    }

    #[test]
    fn gap_definition() {
        assert_eq!(gap_percent(2.0, 1.0), 50.0);
        assert_eq!(gap_percent(1.0, 1.0), 0.0);
        assert_eq!(gap_percent(f64::INFINITY, 1.0), f64::INFINITY);
    }
}
