//! Randomized delete-and-refill improvement.
//!
//! One step takes a complete grid of scope `s`, empties the cells of a
//! randomly drawn template, and refills them with one of the ways of doing
//! so using values no greater than `s`. Scope therefore never increases,
//! and it drops whenever the cell holding the maximum is emptied and
//! refilled lower.
//!
//! Three template families are provided: single cells ([`TemplateFamily::Single`],
//! heuristic H1), whole rows ([`TemplateFamily::Row`], H2) and one cell per
//! row ([`TemplateFamily::Transversal`], H3). Column 0 is never emptied.
//!
//! Refill choices are drawn uniformly from the completions found by a
//! backtracking search whose value order is shuffled. When more than `cap`
//! completions exist only the first `cap` found are sampled from.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dts::TriangleSet;
use crate::error::{DtsError, Result};
use crate::grid::{CellGrid, GridError};

pub const DEFAULT_CAP: usize = 100_000;

/// A set of `(row, col)` cells to empty; rows are 0-based, columns `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Template {
    cells: BTreeSet<(usize, usize)>,
}

impl Template {
    pub fn new(cells: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let cells: BTreeSet<_> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(DtsError::precondition("a template needs at least one cell"));
        }
        if cells.iter().any(|&(_, c)| c == 0) {
            return Err(DtsError::precondition("templates never include column 0"));
        }
        Ok(Template { cells })
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TemplateFamily {
    /// T1: every single cell.
    Single,
    /// T2: every whole row.
    Row,
    /// T3: one cell from each row.
    Transversal,
}

impl TemplateFamily {
    /// Number of templates in the family for an `(n, k)` grid, if it fits.
    pub fn size(self, n: usize, k: usize) -> Option<u128> {
        match self {
            TemplateFamily::Single => Some((n * k) as u128),
            TemplateFamily::Row => Some(n as u128),
            TemplateFamily::Transversal => (k as u128).checked_pow(n as u32),
        }
    }

    /// Draw one template uniformly.
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R, n: usize, k: usize) -> Template {
        let cells: Vec<(usize, usize)> = match self {
            TemplateFamily::Single => {
                let idx = rng.random_range(0..n * k);
                vec![(idx / k, idx % k + 1)]
            }
            TemplateFamily::Row => {
                let r = rng.random_range(0..n);
                (1..=k).map(|c| (r, c)).collect()
            }
            TemplateFamily::Transversal => (0..n).map(|r| (r, rng.random_range(1..=k))).collect(),
        };
        Template::new(cells).expect("sampled templates are well formed")
    }

    pub fn label(self) -> &'static str {
        match self {
            TemplateFamily::Single => "h1",
            TemplateFamily::Row => "h2",
            TemplateFamily::Transversal => "h3",
        }
    }
}

impl fmt::Display for TemplateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TemplateFamily {
    type Err = DtsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h1" | "t1" | "single" => Ok(TemplateFamily::Single),
            "h2" | "t2" | "row" => Ok(TemplateFamily::Row),
            "h3" | "t3" | "transversal" => Ok(TemplateFamily::Transversal),
            other => Err(DtsError::precondition(format!(
                "unknown template family {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeuristicConfig {
    pub iterations: u64,
    pub seed: u64,
    pub cap: usize,
    pub family: TemplateFamily,
    /// Stop as soon as the scope is at most this.
    pub target: Option<u32>,
}

impl HeuristicConfig {
    pub fn new(family: TemplateFamily, iterations: u64, seed: u64) -> Self {
        HeuristicConfig {
            iterations,
            seed,
            cap: DEFAULT_CAP,
            family,
            target: None,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_target(mut self, target: Option<u32>) -> Self {
        self.target = target;
        self
    }
}

/// Copy of `grid` with the template's cells emptied.
pub fn delete_template(grid: &CellGrid, template: &Template) -> Result<CellGrid, GridError> {
    for (r, c) in template.cells() {
        grid.check_cell(r, c)?;
    }
    let mut out = grid.clone();
    for (r, c) in template.cells() {
        if out.get(r, c).is_some() {
            out.clear(r, c)?;
        }
    }
    Ok(out)
}

enum Flow {
    Continue,
    Stop,
}

/// Backtracking over the empty cells in row-major order. `visit` sees each
/// complete grid.
fn complete<R, F>(
    grid: &mut CellGrid,
    empty: &[(usize, usize)],
    scope: u32,
    rng: &mut Option<&mut R>,
    visit: &mut F,
) -> Flow
where
    R: Rng + ?Sized,
    F: FnMut(&CellGrid) -> Flow,
{
    let Some((&(row, col), rest)) = empty.split_first() else {
        return visit(grid);
    };
    let (lo, hi) = grid.neighbours(row, col);
    // empty cells between this one and the next filled cell (or row end)
    let trailing = grid.row(row)[col + 1..]
        .iter()
        .take_while(|c| c.is_none())
        .count() as u32;
    let ceiling = match hi {
        Some(h) => h.saturating_sub(1 + trailing),
        None => scope.saturating_sub(trailing),
    };
    if ceiling <= lo {
        return Flow::Continue;
    }
    let mut values: Vec<u32> = (lo + 1..=ceiling)
        .filter(|&v| grid.can_place(row, col, v))
        .collect();
    if let Some(rng) = rng.as_deref_mut() {
        values.shuffle(rng);
    }
    for v in values {
        grid.place(row, col, v).expect("value was admissible");
        let flow = complete(grid, rest, scope, rng, visit);
        grid.clear(row, col).expect("value was just placed");
        if let Flow::Stop = flow {
            return Flow::Stop;
        }
    }
    Flow::Continue
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completions {
    pub grids: Vec<CellGrid>,
    /// More completions exist beyond the `cap` returned.
    pub truncated: bool,
}

/// All ways to fill the empty cells with values at most `scope`, in
/// ascending value order, stopping after `cap`.
pub fn enumerate_completions(grid: &CellGrid, scope: u32, cap: usize) -> Completions {
    let mut work = grid.clone();
    let empty = work.empty_cells();
    let mut grids = Vec::new();
    let mut truncated = false;
    let mut none: Option<&mut ChaCha8Rng> = None;
    complete(&mut work, &empty, scope, &mut none, &mut |g: &CellGrid| {
        if grids.len() == cap {
            truncated = true;
            return Flow::Stop;
        }
        grids.push(g.clone());
        Flow::Continue
    });
    Completions { grids, truncated }
}

/// Number of completions found, up to `cap`, and whether the count is exact.
pub fn count_completions(grid: &CellGrid, scope: u32, cap: usize) -> (usize, bool) {
    let mut work = grid.clone();
    let empty = work.empty_cells();
    let mut count = 0;
    let mut exact = true;
    let mut none: Option<&mut ChaCha8Rng> = None;
    complete(&mut work, &empty, scope, &mut none, &mut |_: &CellGrid| {
        if count == cap {
            exact = false;
            return Flow::Stop;
        }
        count += 1;
        Flow::Continue
    });
    (count, exact)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Refilled {
        template: Template,
        /// Completions sampled from (at most `cap`).
        completions: usize,
        truncated: bool,
    },
    /// No completion existed; the grid is unchanged.
    RolledBack { template: Template },
}

/// One delete-and-refill step on a complete grid.
pub fn heuristic_step<R: Rng + ?Sized>(
    grid: &mut CellGrid,
    family: TemplateFamily,
    rng: &mut R,
    cap: usize,
) -> StepOutcome {
    debug_assert!(grid.is_complete());
    let scope = grid.scope();
    let template = family.sample(rng, grid.rows(), grid.k());
    let mut work = delete_template(grid, &template).expect("sampled template fits the grid");
    let empty = work.empty_cells();

    // Value order and reservoir draws use separate streams so the search
    // can hold one while the visitor holds the other.
    let mut order_rng = ChaCha8Rng::seed_from_u64(rng.random());
    let mut chosen: Option<Vec<u32>> = None;
    let mut seen = 0usize;
    let mut truncated = false;
    {
        let mut order = Some(&mut order_rng);
        complete(&mut work, &empty, scope, &mut order, &mut |g: &CellGrid| {
            if seen == cap {
                truncated = true;
                return Flow::Stop;
            }
            seen += 1;
            if rng.random_range(0..seen) == 0 {
                chosen = Some(
                    empty
                        .iter()
                        .map(|&(r, c)| g.get(r, c).expect("filled"))
                        .collect(),
                );
            }
            Flow::Continue
        });
    }
    let Some(values) = chosen else {
        return StepOutcome::RolledBack { template };
    };
    for (&(r, c), v) in empty.iter().zip(values) {
        work.place(r, c, v)
            .expect("completion values are admissible");
    }
    *grid = work;
    StepOutcome::Refilled {
        template,
        completions: seen,
        truncated,
    }
}

/// One recorded improvement of the best scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Improvement {
    pub stage: usize,
    pub iteration: u64,
    pub seed: u64,
    pub scope: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicRun {
    pub best: TriangleSet,
    /// Starts with the initial scope at iteration 0.
    pub trace: Vec<Improvement>,
    pub iterations: u64,
}

pub fn run_heuristic(initial: &TriangleSet, config: &HeuristicConfig) -> Result<HeuristicRun> {
    run_stage(initial, config, 0)
}

fn run_stage(
    initial: &TriangleSet,
    config: &HeuristicConfig,
    stage: usize,
) -> Result<HeuristicRun> {
    if config.iterations == 0 {
        return Err(DtsError::precondition(
            "a heuristic run needs N >= 1 iterations",
        ));
    }
    if config.cap == 0 {
        return Err(DtsError::precondition("completion cap must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut grid = CellGrid::from_set(initial);
    let mut best = grid.scope();
    let mut trace = vec![Improvement {
        stage,
        iteration: 0,
        seed: config.seed,
        scope: best,
    }];
    let mut iterations = 0;
    for it in 1..=config.iterations {
        if config.target.is_some_and(|t| best <= t) {
            break;
        }
        heuristic_step(&mut grid, config.family, &mut rng, config.cap);
        iterations = it;
        let scope = grid.scope();
        if scope < best {
            best = scope;
            trace.push(Improvement {
                stage,
                iteration: it,
                seed: config.seed,
                scope,
            });
        }
    }
    Ok(HeuristicRun {
        best: grid
            .to_triangle_set()
            .expect("steps keep the grid complete"),
        trace,
        iterations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineRun {
    pub best: TriangleSet,
    /// Initial scope, then every improvement tagged with its stage.
    pub improvements: Vec<Improvement>,
}

/// Feed each stage's result into the next.
pub fn run_pipeline(initial: &TriangleSet, stages: &[HeuristicConfig]) -> Result<PipelineRun> {
    if stages.is_empty() {
        return Err(DtsError::precondition(
            "a pipeline needs at least one stage",
        ));
    }
    let mut current = initial.clone();
    let mut improvements = Vec::new();
    for (stage, config) in stages.iter().enumerate() {
        let run = run_stage(&current, config, stage)?;
        let skip = usize::from(stage > 0);
        improvements.extend(run.trace.into_iter().skip(skip));
        current = run.best;
        if config.target.is_some_and(|t| current.scope() <= t) {
            break;
        }
    }
    Ok(PipelineRun {
        best: current,
        improvements,
    })
}
