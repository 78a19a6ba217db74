use super::bnb::{branch_and_bound, Incumbent, SolveOptions, SolveStatus, WarmStart};
use super::log::RunLog;
use super::spu::{spu, SpuInit};
use super::SolverError;
use crate::credal::limid_to_credal;
use crate::model::{normalize_utilities, EuEngine, InfluenceDiagram, ModelError, Strategy};
use crate::reform::{generate_bilinear_auto, linearize};
use crate::scalar::Scalar;

/// Sweep cap of the warm-start policy-updating run.
pub const WARM_START_SWEEPS: usize = 100;

/// Outcome of [`solve_meu`] on the original utility scale.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult<T> {
    pub strategy: Strategy<T>,
    pub eu: T,
    pub upper_bound: T,
    /// Relative gap in percent, measured on the normalized scale.
    pub gap_percent: f64,
    pub nodes_evaluated: usize,
    pub status: SolveStatus,
    /// Bounds in the log are on the normalized scale.
    pub log: RunLog,
}

/// Maximum-expected-utility strategy through the credal reformulation.
pub fn solve_meu<T: Scalar>(
    diagram: &InfluenceDiagram<T>,
    options: &SolveOptions,
) -> Result<SolveResult<T>, SolverError> {
    let (normalized, info) = match normalize_utilities(diagram) {
        Ok(pair) => pair,
        Err(ModelError::TrivialDiagram { eu }) => {
            let eu = T::of(eu);
            return Ok(SolveResult {
                strategy: Strategy::first_alternative(diagram),
                eu,
                upper_bound: eu,
                gap_percent: 0.0,
                nodes_evaluated: 0,
                status: SolveStatus::Proven,
                log: RunLog::default(),
            });
        }
        Err(e) => return Err(e.into()),
    };
    let net = limid_to_credal(&normalized)?;
    let milp = linearize(&generate_bilinear_auto(&net))?;
    let engine = EuEngine::new(&normalized);
    let incumbent0 = match options.warm_start {
        WarmStart::Spu => {
            let r = spu(&normalized, &SpuInit::FirstAlternative.strategy(&normalized), WARM_START_SWEEPS)?;
            Some(Incumbent { strategy: r.strategy, value: r.eu })
        }
        WarmStart::None => None,
    };
    let oracle = |s: &Strategy<T>| engine.evaluate(s);
    let outcome = branch_and_bound(&milp, options, incumbent0, Some(&oracle))?;
    Ok(SolveResult {
        strategy: outcome.strategy,
        eu: info.denormalize(outcome.lower),
        upper_bound: info.denormalize(outcome.upper),
        gap_percent: outcome.gap_percent,
        nodes_evaluated: outcome.nodes_evaluated,
        status: outcome.status,
        log: outcome.log,
    })
}
