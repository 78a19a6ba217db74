use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::log::{gap_percent, LogEvent, RunLog};
use super::lp::{LpProblem, LpStatus, Simplex};
use super::SolverError;
use crate::model::Strategy;
use crate::reform::{extract_strategy, MilpProblem, Rounding, VariableKind};
use crate::scalar::Scalar;

/// Bound slack below which open nodes are discarded.
pub const PRUNE_TOLERANCE: f64 = 1e-9;
const INTEGRALITY: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchOrder {
    /// Open node with the largest LP bound first.
    BestBound,
    DepthFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WarmStart {
    Spu,
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<usize>,
    /// Relative gap in percent at which the search stops; 0 solves exactly.
    pub gap_tolerance: f64,
    pub search: SearchOrder,
    pub warm_start: WarmStart,
    /// Record wall-clock times in the run log; disable for reproducible logs.
    pub timing: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            time_limit: None,
            node_limit: None,
            gap_tolerance: 0.0,
            search: SearchOrder::BestBound,
            warm_start: WarmStart::Spu,
            timing: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    /// Search finished or the gap tolerance was met.
    Proven,
    /// A time or node limit interrupted the search.
    Stopped,
}

/// A strategy together with its objective value on the normalized scale.
#[derive(Clone, Debug, PartialEq)]
pub struct Incumbent<T> {
    pub strategy: Strategy<T>,
    pub value: T,
}

/// Branch-and-bound result on the normalized scale.
#[derive(Clone, Debug, PartialEq)]
pub struct BnbOutcome<T> {
    pub strategy: Strategy<T>,
    pub lower: T,
    pub upper: T,
    pub gap_percent: f64,
    pub nodes_evaluated: usize,
    pub status: SolveStatus,
    pub log: RunLog,
}

#[derive(Clone, Debug)]
struct Node {
    id: usize,
    bound: f64,
    depth: usize,
    fixings: Vec<(usize, bool)>,
}

/// Heap order for best-bound search: larger bound, then deeper, then older.
struct Ranked(Node);

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Ranked {}
impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.bound.total_cmp(&other.0.bound).then(self.0.depth.cmp(&other.0.depth)).then(other.0.id.cmp(&self.0.id))
    }
}

enum Pool {
    Best(BinaryHeap<Ranked>),
    Depth(Vec<Node>),
}

impl Pool {
    fn push(&mut self, node: Node) {
        match self {
            Pool::Best(h) => h.push(Ranked(node)),
            Pool::Depth(s) => s.push(node),
        }
    }

    fn pop(&mut self) -> Option<Node> {
        match self {
            Pool::Best(h) => h.pop().map(|r| r.0),
            Pool::Depth(s) => s.pop(),
        }
    }

    fn max_bound(&self) -> Option<f64> {
        match self {
            Pool::Best(h) => h.peek().map(|r| r.0.bound),
            Pool::Depth(s) => s.iter().map(|n| n.bound).reduce(f64::max),
        }
    }
}

/// Exact objective of a pure strategy, used to score rounded points.
pub type Oracle<'a, T> = &'a dyn Fn(&Strategy<T>) -> T;

struct Search<'a, T: Scalar> {
    milp: &'a MilpProblem<T>,
    oracle: Option<Oracle<'a, T>>,
    evaluator: Option<Simplex<T>>,
    seen: HashSet<Vec<usize>>,
    best: Option<Incumbent<T>>,
}

impl<T: Scalar> Search<'_, T> {
    fn lower(&self) -> f64 {
        self.best.as_ref().map_or(f64::NEG_INFINITY, |b| b.value.as_f64())
    }

    fn offer(&mut self, strategy: Strategy<T>, value: T) {
        if self.best.as_ref().is_none_or(|b| value > b.value) {
            self.best = Some(Incumbent { strategy, value });
        }
    }

    /// Rounds every group to its largest member and evaluates the result.
    fn repair(&mut self, values: &[T]) -> Result<(), SolverError> {
        let picks: Vec<usize> = self
            .milp
            .groups
            .iter()
            .map(|g| {
                let mut best = 0;
                for (k, &m) in g.members.iter().enumerate() {
                    if values[m] > values[g.members[best]] {
                        best = k;
                    }
                }
                best
            })
            .collect();
        if !self.seen.insert(picks.clone()) {
            return Ok(());
        }
        let strategy = extract_strategy(self.milp, values, Rounding::Argmax)?;
        let value = match self.oracle {
            Some(f) => f(&strategy),
            None => {
                let simplex = match &mut self.evaluator {
                    Some(s) => s,
                    None => self.evaluator.insert(Simplex::new(&LpProblem::relaxation(self.milp))?),
                };
                for (g, &pick) in self.milp.groups.iter().zip(&picks) {
                    for (k, &m) in g.members.iter().enumerate() {
                        let v = if k == pick { T::one() } else { T::zero() };
                        simplex.set_bounds(m, v, v);
                    }
                }
                let sol = simplex.solve()?;
                if sol.status != LpStatus::Optimal {
                    return Ok(());
                }
                sol.objective
            }
        };
        self.offer(strategy, value);
        Ok(())
    }
}

/// Bounds implied by binary fixings: a member fixed to one zeroes the rest
/// of its simplex group, and a binary at zero zeroes its products.
struct Implications {
    group_of: Vec<Option<usize>>,
    groups: Vec<Vec<usize>>,
    products: Vec<Vec<usize>>,
}

impl Implications {
    fn new<T: Scalar>(milp: &MilpProblem<T>) -> Self {
        let n = milp.variables.len();
        let mut group_of = vec![None; n];
        for (g, group) in milp.groups.iter().enumerate() {
            for &m in &group.members {
                group_of[m] = Some(g);
            }
        }
        let mut products = vec![Vec::new(); n];
        for v in &milp.variables {
            if let VariableKind::Product { binary, .. } = v.kind {
                products[binary].push(v.index);
            }
        }
        Self { group_of, groups: milp.groups.iter().map(|g| g.members.clone()).collect(), products }
    }

    fn bounds<T: Scalar>(&self, fixings: &[(usize, bool)], out: &mut [(T, T)]) {
        out.iter_mut().for_each(|b| *b = (T::zero(), T::one()));
        let zero = (T::zero(), T::zero());
        let mut zeroed = Vec::new();
        for &(j, v) in fixings {
            if v {
                out[j] = (T::one(), T::one());
                if let Some(g) = self.group_of[j] {
                    zeroed.extend(self.groups[g].iter().copied().filter(|&m| m != j));
                }
            } else {
                zeroed.push(j);
            }
        }
        for j in zeroed {
            if out[j].0 == T::one() {
                // contradictory fixings; the LP reports infeasibility
                out[j] = (T::one(), T::one());
                continue;
            }
            out[j] = zero;
            for &y in &self.products[j] {
                out[y] = zero;
            }
        }
    }
}

/// Maximizes `milp` by LP-based branch-and-bound over its binaries.
///
/// `incumbent0` seeds the lower bound. `oracle`, when given, evaluates the
/// normalized objective of a pure strategy for the rounding heuristic;
/// otherwise rounded points are evaluated by an LP with all binaries fixed.
pub fn branch_and_bound<T: Scalar>(
    milp: &MilpProblem<T>,
    options: &SolveOptions,
    incumbent0: Option<Incumbent<T>>,
    oracle: Option<Oracle<'_, T>>,
) -> Result<BnbOutcome<T>, SolverError> {
    if options.gap_tolerance.is_nan() || options.gap_tolerance < 0.0 {
        return Err(SolverError::InvalidProblem("gap tolerance must be non-negative".into()));
    }
    let start = Instant::now();
    let elapsed = || if options.timing { start.elapsed().as_secs_f64() } else { 0.0 };
    let binaries = milp.binaries();
    let mut simplex = Simplex::new(&LpProblem::relaxation(milp))?;
    let implied = Implications::new(milp);
    let mut applied: Vec<(T, T)> = vec![(T::zero(), T::one()); milp.variables.len()];
    let mut wanted = applied.clone();
    let mut search = Search { milp, oracle, evaluator: None, seen: HashSet::new(), best: incumbent0 };

    let mut pool = match options.search {
        SearchOrder::BestBound => Pool::Best(BinaryHeap::new()),
        SearchOrder::DepthFirst => Pool::Depth(Vec::new()),
    };
    pool.push(Node { id: 0, bound: f64::INFINITY, depth: 0, fixings: vec![] });
    let mut next_id = 1;
    let mut upper = f64::INFINITY;
    let mut nodes_evaluated = 0usize;
    let mut log = RunLog::default();
    let mut status = SolveStatus::Proven;

    loop {
        let lower = search.lower();
        let open_max = pool.max_bound();
        upper = upper.min(open_max.map_or(lower, |b| b.max(lower)));
        if open_max.is_none() {
            upper = lower;
            break;
        }
        if nodes_evaluated > 0 && lower.is_finite() && gap_percent(upper, lower) <= options.gap_tolerance {
            break;
        }
        let out_of_nodes = options.node_limit.is_some_and(|l| nodes_evaluated >= l);
        let out_of_time = options.time_limit.is_some_and(|l| start.elapsed() >= l);
        if out_of_nodes || out_of_time {
            status = SolveStatus::Stopped;
            break;
        }

        let node = pool.pop().expect("pool is not empty");
        if node.bound <= lower + PRUNE_TOLERANCE {
            continue;
        }

        implied.bounds(&node.fixings, &mut wanted);
        for j in 0..wanted.len() {
            if wanted[j] != applied[j] {
                simplex.set_bounds(j, wanted[j].0, wanted[j].1);
                applied[j] = wanted[j];
            }
        }
        let solution = simplex.solve()?;
        nodes_evaluated += 1;

        let lp_bound = (solution.status == LpStatus::Optimal).then(|| solution.objective.as_f64().min(node.bound));
        if let Some(bound) = lp_bound {
            let values = &solution.values;
            let mut branch: Option<(usize, T)> = None;
            for &j in &binaries {
                let frac = values[j].min(T::one() - values[j]);
                if frac > T::of(INTEGRALITY) && branch.is_none_or(|(_, f)| frac > f) {
                    branch = Some((j, frac));
                }
            }
            match branch {
                None => {
                    let strategy = extract_strategy(milp, values, Rounding::Strict)
                        .or_else(|_| extract_strategy(milp, values, Rounding::Argmax))?;
                    let value = oracle.map_or(solution.objective, |f| f(&strategy));
                    search.offer(strategy, value);
                }
                Some((j, _)) => {
                    search.repair(values)?;
                    if bound > search.lower() + PRUNE_TOLERANCE {
                        let prefer_one = values[j] >= T::of(0.5);
                        let mut children = [false, true].map(|v| {
                            let mut fixings = node.fixings.clone();
                            fixings.push((j, v));
                            let child = Node { id: next_id, bound, depth: node.depth + 1, fixings };
                            next_id += 1;
                            child
                        });
                        if matches!(options.search, SearchOrder::DepthFirst) && !prefer_one {
                            children.reverse();
                        }
                        for c in children {
                            pool.push(c);
                        }
                    }
                }
            }
        }

        let lower = search.lower();
        upper = upper.min(pool.max_bound().map_or(lower, |b| b.max(lower))).max(lower);
        log.events.push(LogEvent {
            elapsed: elapsed(),
            node: node.id,
            lp_bound,
            lower,
            upper,
            gap_percent: gap_percent(upper, lower),
        });
    }

    let best = search.best.ok_or(SolverError::Infeasible)?;
    let lower = best.value.as_f64();
    let upper = upper.max(lower);
    let gap = gap_percent(upper, lower);
    Ok(BnbOutcome {
        strategy: best.strategy,
        lower: best.value,
        upper: T::of(upper),
        gap_percent: gap,
        nodes_evaluated,
        status,
        log,
    })
}
