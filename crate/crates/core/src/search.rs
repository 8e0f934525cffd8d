//! Exhaustive backtracking for triangle sets of bounded scope.
//!
//! Only canonical sets are generated: blocks appear in strictly increasing
//! order of their first nonzero element (these are distinct differences, so
//! the order is total), and every block has its first gap no larger than
//! its last gap (reflecting a block preserves its differences). Every
//! triangle set can be brought into this form without changing its scope,
//! so exhausting the canonical tree proves nonexistence.
//!
//! Cells are filled block by block, left to right. A block with `r`
//! elements still to place after value `a` needs at least `a` plus the sum
//! of the `r` smallest free differences, since its remaining gaps are
//! distinct unused differences.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bounds::{best_lower_bound, klove_lower_bound, trivial_lower_bound};
use crate::dts::TriangleSet;
use crate::error::{DtsError, Result};
use crate::greedy::transversal_greedy;
use crate::ledger::DiffLedger;

/// Bumped whenever the canonical form or fill order changes, so logged
/// nonexistence certificates can be matched to the code that produced them.
pub const CANONICAL_FORM_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shard {
    /// Number of placed cells that makes up a prefix.
    pub depth: usize,
    pub index: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pruning {
    /// Canonical form plus the free-difference sum bound.
    Full,
    /// Canonical form only.
    CanonicalOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchProblem {
    pub n: usize,
    pub k: usize,
    pub max_scope: u32,
    pub shard: Option<Shard>,
    pub node_budget: Option<u64>,
    pub pruning: Pruning,
}

impl SearchProblem {
    pub fn new(n: usize, k: usize, max_scope: u32) -> Self {
        SearchProblem {
            n,
            k,
            max_scope,
            shard: None,
            node_budget: None,
            pruning: Pruning::Full,
        }
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn with_shard(mut self, shard: Shard) -> Self {
        self.shard = Some(shard);
        self
    }

    pub fn with_pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    /// Below a proven lower bound no set can exist.
    pub fn trivially_unsatisfiable(&self) -> bool {
        (self.max_scope as u64) < best_lower_bound(self.n as u64, self.k as u64).best
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 {
            return Err(DtsError::precondition("search needs n, k >= 1"));
        }
        if let Some(s) = self.shard {
            if s.count == 0 || s.index >= s.count {
                return Err(DtsError::precondition(format!(
                    "shard index {} out of range for {} shards",
                    s.index, s.count
                )));
            }
            if s.depth == 0 {
                return Err(DtsError::precondition("shard prefix depth must be >= 1"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchStatus {
    Found(TriangleSet),
    /// The canonical tree (or this shard's part of it) holds no solution.
    Exhausted,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub nodes: u64,
    /// `nodes_by_depth[d]` counts placements that left `d` cells filled.
    pub nodes_by_depth: Vec<u64>,
    pub elapsed: Duration,
}

impl SearchOutcome {
    /// Combine outcomes of disjoint parts of one tree. Associative and
    /// order independent up to which witness is kept (the smaller one).
    pub fn merge(self, other: SearchOutcome) -> SearchOutcome {
        use SearchStatus::*;
        let status = match (self.status, other.status) {
            (Found(a), Found(b)) => Found(if (a.scope(), a.rows()) <= (b.scope(), b.rows()) {
                a
            } else {
                b
            }),
            (Found(a), _) | (_, Found(a)) => Found(a),
            (BudgetExceeded, _) | (_, BudgetExceeded) => BudgetExceeded,
            (Exhausted, Exhausted) => Exhausted,
        };
        let len = self.nodes_by_depth.len().max(other.nodes_by_depth.len());
        let mut nodes_by_depth = vec![0; len];
        for v in [&self.nodes_by_depth, &other.nodes_by_depth] {
            for (i, c) in v.iter().enumerate() {
                nodes_by_depth[i] += c;
            }
        }
        SearchOutcome {
            status,
            nodes: self.nodes + other.nodes,
            nodes_by_depth,
            elapsed: self.elapsed.max(other.elapsed),
        }
    }
}

enum Control {
    Continue,
    Found,
    OutOfBudget,
}

struct Searcher {
    n: usize,
    k: usize,
    m: u32,
    prune: bool,
    shard: Option<Shard>,
    budget: Option<u64>,
    rows: Vec<Vec<u32>>,
    ledger: DiffLedger,
    nodes: u64,
    by_depth: Vec<u64>,
    prefixes_seen: u64,
    scratch: Vec<Vec<u32>>,
}

impl Searcher {
    fn new(p: &SearchProblem) -> Self {
        let cells = p.n * p.k;
        Searcher {
            n: p.n,
            k: p.k,
            m: p.max_scope,
            prune: p.pruning == Pruning::Full,
            shard: p.shard,
            budget: p.node_budget,
            rows: (0..p.n).map(|_| vec![0]).collect(),
            ledger: DiffLedger::with_capacity(p.max_scope),
            nodes: 0,
            by_depth: vec![0; cells + 1],
            prefixes_seen: 0,
            scratch: vec![Vec::with_capacity(p.k); cells + 1],
        }
    }

    fn dfs(&mut self, depth: usize) -> Control {
        if let Some(shard) = self.shard {
            if depth == shard.depth {
                let idx = self.prefixes_seen;
                self.prefixes_seen += 1;
                if idx % shard.count as u64 != shard.index as u64 {
                    return Control::Continue;
                }
            }
        }
        if depth == self.n * self.k {
            return Control::Found;
        }
        let block = depth / self.k;
        let col = depth % self.k + 1;
        let remaining = (self.k - col) as u32;
        let prev = self.rows[block][col - 1];

        let mut lo = prev + 1;
        if col == 1 && block > 0 {
            lo = lo.max(self.rows[block - 1][1] + 1);
        }
        if col == self.k && self.k >= 2 {
            // last gap must be at least the first gap
            lo = lo.max(prev + self.rows[block][1]);
        }
        let mut hi = self.m;
        if self.prune {
            match self.ledger.smallest_free_sum(remaining as usize) {
                Some(s) if s <= self.m as u64 => hi = self.m - s as u32,
                _ => return Control::Continue,
            }
        } else {
            hi = hi.saturating_sub(remaining);
        }

        let mut diffs = std::mem::take(&mut self.scratch[depth]);
        for v in lo..=hi {
            diffs.clear();
            diffs.extend(self.rows[block].iter().map(|&x| v - x));
            if diffs.iter().any(|&d| self.ledger.contains(d)) {
                continue;
            }
            self.ledger
                .insert_all(&diffs)
                .expect("differences were free");
            self.rows[block].push(v);
            self.nodes += 1;
            self.by_depth[depth + 1] += 1;

            let flow = if self.budget.is_some_and(|b| self.nodes > b) {
                Control::OutOfBudget
            } else {
                self.dfs(depth + 1)
            };
            match flow {
                Control::Continue => {
                    self.rows[block].pop();
                    self.ledger
                        .remove_all(&diffs)
                        .expect("differences were inserted");
                }
                other => {
                    self.scratch[depth] = diffs;
                    return other;
                }
            }
        }
        self.scratch[depth] = diffs;
        Control::Continue
    }
}

/// Decide whether an `(n, k)` set of scope at most `max_scope` exists.
pub fn exists_dts(problem: &SearchProblem) -> Result<SearchOutcome> {
    problem.validate()?;
    let start = Instant::now();
    let mut s = Searcher::new(problem);
    let status = match s.dfs(0) {
        Control::Found => SearchStatus::Found(
            TriangleSet::new(s.rows.clone()).expect("search only builds valid sets"),
        ),
        Control::Continue => SearchStatus::Exhausted,
        Control::OutOfBudget => SearchStatus::BudgetExceeded,
    };
    Ok(SearchOutcome {
        status,
        nodes: s.nodes,
        nodes_by_depth: s.by_depth,
        elapsed: start.elapsed(),
    })
}

/// Search only the subtrees below the prefixes assigned to `shard`.
pub fn shard_search(problem: &SearchProblem, shard: Shard) -> Result<SearchOutcome> {
    exists_dts(&problem.with_shard(shard))
}

/// Run all `count` shards on up to `jobs` threads and merge the results.
pub fn search_sharded(
    problem: &SearchProblem,
    depth: usize,
    count: usize,
    jobs: usize,
) -> Result<SearchOutcome> {
    let shards: Vec<Shard> = (0..count)
        .map(|index| Shard {
            depth,
            index,
            count,
        })
        .collect();
    let jobs = jobs.clamp(1, count.max(1));
    let results: Vec<Result<SearchOutcome>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|worker| {
                let shards = &shards;
                scope.spawn(move || {
                    shards
                        .iter()
                        .skip(worker)
                        .step_by(jobs)
                        .map(|&sh| shard_search(problem, sh))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("shard worker panicked"))
            .collect()
    });
    let mut merged: Option<SearchOutcome> = None;
    for r in results {
        let r = r?;
        merged = Some(match merged {
            None => r,
            Some(acc) => acc.merge(r),
        });
    }
    merged.ok_or_else(|| DtsError::precondition("at least one shard is required"))
}

/// Where the upward scan over `m` starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StartBound {
    /// Every bound the crate knows, including closed-form exact values.
    Best,
    /// Counting and Kløve bounds only, so the search itself must rule out
    /// every smaller scope.
    CountingOnly,
    /// A caller-supplied bound, trusted as proven.
    Given(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MValue {
    Exact {
        value: u64,
        witness: TriangleSet,
    },
    /// Budget ran out: `lower <= m(n, k) <= upper`.
    Interval {
        lower: u64,
        upper: u64,
        witness: TriangleSet,
    },
}

impl MValue {
    pub fn exact(&self) -> Option<u64> {
        match self {
            MValue::Exact { value, .. } => Some(*value),
            MValue::Interval { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputeReport {
    pub value: MValue,
    /// `(m, nodes)` for every scope proven impossible.
    pub exhausted: Vec<(u64, u64)>,
    pub nodes: u64,
}

pub fn compute_m(n: usize, k: usize, budget: Option<u64>) -> Result<ComputeReport> {
    compute_m_with(n, k, budget, StartBound::Best, Pruning::Full)
}

/// Scan `m` upward from the chosen lower bound; the first satisfiable `m`
/// is `m(n, k)`. Total nodes across all scans are limited by `budget`.
pub fn compute_m_with(
    n: usize,
    k: usize,
    budget: Option<u64>,
    start: StartBound,
    pruning: Pruning,
) -> Result<ComputeReport> {
    if n == 0 || k == 0 {
        return Err(DtsError::precondition("n and k must be positive"));
    }
    let (nu, ku) = (n as u64, k as u64);
    let lower = match start {
        StartBound::Best => best_lower_bound(nu, ku).best,
        StartBound::CountingOnly => trivial_lower_bound(nu, ku).max(klove_lower_bound(nu, ku)),
        StartBound::Given(b) => b,
    };
    let greedy = transversal_greedy(n, k);
    let upper = u64::from(greedy.scope());
    let mut exhausted = Vec::new();
    let mut used = 0u64;
    for m in lower..upper {
        let remaining = budget.map(|b| b.saturating_sub(used));
        let m32 = u32::try_from(m).map_err(|_| DtsError::Arithmetic("scope exceeds u32".into()))?;
        let problem = SearchProblem::new(n, k, m32)
            .with_budget(remaining)
            .with_pruning(pruning);
        let outcome = exists_dts(&problem)?;
        used += outcome.nodes;
        match outcome.status {
            SearchStatus::Found(witness) => {
                return Ok(ComputeReport {
                    value: MValue::Exact { value: m, witness },
                    exhausted,
                    nodes: used,
                })
            }
            SearchStatus::Exhausted => exhausted.push((m, outcome.nodes)),
            SearchStatus::BudgetExceeded => {
                return Ok(ComputeReport {
                    value: MValue::Interval {
                        lower: m,
                        upper,
                        witness: greedy,
                    },
                    exhausted,
                    nodes: used,
                })
            }
        }
    }
    Ok(ComputeReport {
        value: MValue::Exact {
            value: upper.max(lower),
            witness: greedy,
        },
        exhausted,
        nodes: used,
    })
}
