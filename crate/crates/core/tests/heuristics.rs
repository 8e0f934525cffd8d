use std::collections::{BTreeMap, BTreeSet};

use dts::dts::TriangleSet;
use dts::format::emit_text;
use dts::greedy::{set_greedy, transversal_greedy};
use dts::grid::{CellGrid, GridError};
use dts::heuristics::{
    delete_template, enumerate_completions, heuristic_step, run_heuristic, run_pipeline,
    HeuristicConfig, StepOutcome, Template, TemplateFamily,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid(rows: &[&[u32]]) -> CellGrid {
    CellGrid::from_set(&TriangleSet::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap())
}

fn template(cells: &[(usize, usize)]) -> Template {
    Template::new(cells.iter().copied()).unwrap()
}

#[test]
fn deleting_single_cell() {
    let g = grid(&[&[0, 1, 4], &[0, 2, 7]]);
    let d = delete_template(&g, &template(&[(0, 2)])).unwrap();
    assert_eq!(d.get(0, 2), None);
    assert!(!d.ledger().contains(4) && !d.ledger().contains(3));
    assert!(d.is_consistent());
}

#[test]
fn deleting_row_and_transversal() {
    let g = grid(&[&[0, 1, 4], &[0, 2, 7]]);
    let d = delete_template(&g, &template(&[(0, 1), (0, 2)])).unwrap();
    assert_eq!(d.row(0), &[Some(0), None, None]);
    let d = delete_template(&g, &template(&[(0, 2), (1, 1)])).unwrap();
    assert_eq!(d.empty_cells(), vec![(0, 2), (1, 1)]);
    assert!(d.is_consistent());
}

#[test]
fn deletion_errors() {
    let g = grid(&[&[0, 1, 4], &[0, 2, 7]]);
    assert!(Template::new([(0, 0)]).is_err());
    assert!(Template::new([]).is_err());
    assert!(matches!(
        delete_template(&g, &template(&[(2, 1)])),
        Err(GridError::OutOfBounds { .. })
    ));
}

#[test]
fn completion_examples() {
    let mut g = CellGrid::new(1, 2);
    g.place(0, 1, 1).unwrap();
    let c = enumerate_completions(&g, 3, 100);
    assert_eq!(c.grids.len(), 1);
    assert_eq!(c.grids[0].get(0, 2), Some(3));
    assert!(!c.truncated);

    let mut g = grid(&[&[0, 1, 4], &[0, 2, 7]]);
    g.clear(1, 2).unwrap();
    let c = enumerate_completions(&g, 7, 100);
    assert_eq!(c.grids.len(), 1);
    assert_eq!(c.grids[0].get(1, 2), Some(7));

    let full = grid(&[&[0, 1, 4], &[0, 2, 7]]);
    let c = enumerate_completions(&full, 7, 100);
    assert_eq!(c.grids, vec![full]);
}

#[test]
fn completion_cap_truncates() {
    let g = CellGrid::new(1, 2);
    let all = enumerate_completions(&g, 20, usize::MAX);
    assert!(all.grids.len() > 10);
    let capped = enumerate_completions(&g, 20, 10);
    assert_eq!(capped.grids.len(), 10);
    assert!(capped.truncated);
    assert_eq!(capped.grids[..], all.grids[..10]);
}

/// Try every value tuple for the empty cells and keep the valid ones.
fn generate_and_filter(g: &CellGrid, scope: u32) -> BTreeSet<Vec<u32>> {
    let empty = g.empty_cells();
    let mut out = BTreeSet::new();
    let mut values = vec![1u32; empty.len()];
    loop {
        let mut rows: Vec<Vec<i64>> = (0..g.rows())
            .map(|r| g.row(r).iter().map(|c| c.map_or(0, |v| v as i64)).collect())
            .collect();
        for (&(r, c), &v) in empty.iter().zip(&values) {
            rows[r][c] = v as i64;
        }
        if dts::verify_triangle_set(&rows).is_valid() {
            out.insert(values.clone());
        }
        let mut i = 0;
        loop {
            if i == values.len() {
                return out;
            }
            values[i] += 1;
            if values[i] <= scope {
                break;
            }
            values[i] = 1;
            i += 1;
        }
    }
}

fn small_sets() -> Vec<TriangleSet> {
    let mut v = Vec::new();
    for (n, k) in [
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 2),
        (2, 3),
        (3, 2),
        (4, 2),
        (1, 5),
    ] {
        v.push(transversal_greedy(n, k));
        v.push(set_greedy(n, k));
    }
    v.retain(|t| t.scope() <= 25);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn completions_match_generate_and_filter(
        which in 0usize..64,
        picks in proptest::collection::vec((0usize..8, 1usize..8), 1..=3),
        slack in 0u32..8,
    ) {
        let sets = small_sets();
        let set = &sets[which % sets.len()];
        let cells: BTreeSet<(usize, usize)> = picks
            .into_iter()
            .map(|(r, c)| (r % set.n(), (c - 1) % set.k() + 1))
            .collect();
        let g = delete_template(&CellGrid::from_set(set), &Template::new(cells).unwrap()).unwrap();
        let scope = (set.scope() + slack).min(25);
        let got: BTreeSet<Vec<u32>> = enumerate_completions(&g, scope, usize::MAX)
            .grids
            .iter()
            .map(|full| g.empty_cells().iter().map(|&(r, c)| full.get(r, c).unwrap()).collect())
            .collect();
        prop_assert_eq!(got, generate_and_filter(&g, scope));
    }

    #[test]
    fn steps_keep_grid_valid(seed in any::<u64>(), family in 0usize..3, n in 1usize..6, k in 1usize..6) {
        let family = [TemplateFamily::Single, TemplateFamily::Row, TemplateFamily::Transversal][family];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = CellGrid::from_set(&transversal_greedy(n, k));
        for _ in 0..20 {
            let before = g.scope();
            heuristic_step(&mut g, family, &mut rng, 2_000);
            prop_assert!(g.is_complete());
            prop_assert!(g.is_consistent());
            prop_assert!(g.to_triangle_set().unwrap().verify().is_valid());
            prop_assert!(g.scope() <= before);
        }
    }
}

#[test]
fn optimal_grid_stays_optimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut g = grid(&[&[0, 1, 4], &[0, 2, 7]]);
    for family in [
        TemplateFamily::Single,
        TemplateFamily::Row,
        TemplateFamily::Transversal,
    ] {
        for _ in 0..300 {
            let out = heuristic_step(&mut g, family, &mut rng, 1_000);
            assert!(matches!(out, StepOutcome::Refilled { .. }));
            assert_eq!(g.scope(), 7);
        }
    }
}

#[test]
fn padded_ruler_shrinks_to_optimum() {
    let start = TriangleSet::new(vec![vec![0, 2, 5]]).unwrap();
    let run = run_heuristic(
        &start,
        &HeuristicConfig::new(TemplateFamily::Single, 500, 11),
    )
    .unwrap();
    assert_eq!(run.best.scope(), 3);
    assert!([vec![vec![0, 1, 3]], vec![vec![0, 2, 3]]].contains(&run.best.rows()));
}

#[test]
fn optimum_is_a_fixed_point() {
    let start = transversal_greedy(2, 2);
    for family in [
        TemplateFamily::Single,
        TemplateFamily::Row,
        TemplateFamily::Transversal,
    ] {
        let run = run_heuristic(&start, &HeuristicConfig::new(family, 200, 5)).unwrap();
        assert_eq!(run.best.scope(), 7);
    }
}

#[test]
fn set_greedy_start_reaches_optimum() {
    let start = set_greedy(2, 2);
    assert_eq!(start.scope(), 9);
    let run = run_heuristic(
        &start,
        &HeuristicConfig::new(TemplateFamily::Single, 10_000, 2024),
    )
    .unwrap();
    assert_eq!(run.best.scope(), 7);
}

#[test]
fn iteration_count_edge_cases() {
    let start = set_greedy(2, 2);
    assert!(run_heuristic(&start, &HeuristicConfig::new(TemplateFamily::Single, 0, 1)).is_err());
    let run = run_heuristic(&start, &HeuristicConfig::new(TemplateFamily::Single, 1, 1)).unwrap();
    assert!(run.best.verify().is_valid());
    assert!(run.best.scope() <= start.scope());
    assert_eq!(run.iterations, 1);
}

#[test]
fn target_stops_early() {
    let start = transversal_greedy(4, 4);
    let cfg = HeuristicConfig::new(TemplateFamily::Transversal, 100_000, 9)
        .with_target(Some(start.scope() - 1));
    let run = run_heuristic(&start, &cfg).unwrap();
    assert!(run.best.scope() < start.scope());
    assert!(run.iterations < 100_000);
}

#[test]
fn runs_are_reproducible() {
    let start = transversal_greedy(4, 4);
    let stages = [
        HeuristicConfig::new(TemplateFamily::Single, 300, 1),
        HeuristicConfig::new(TemplateFamily::Transversal, 100, 2),
        HeuristicConfig::new(TemplateFamily::Row, 50, 3),
    ];
    let a = run_pipeline(&start, &stages).unwrap();
    let b = run_pipeline(&start, &stages).unwrap();
    assert_eq!(emit_text(&a.best), emit_text(&b.best));
    assert_eq!(a.improvements, b.improvements);
}

#[test]
fn pipeline_trace_is_monotone_and_tagged() {
    let start = transversal_greedy(5, 4);
    let stages = [
        HeuristicConfig::new(TemplateFamily::Single, 400, 7),
        HeuristicConfig::new(TemplateFamily::Transversal, 200, 8),
        HeuristicConfig::new(TemplateFamily::Row, 100, 9),
    ];
    let run = run_pipeline(&start, &stages).unwrap();
    assert_eq!(run.improvements[0].scope, start.scope());
    assert!(run.improvements.windows(2).all(|w| w[1].scope < w[0].scope));
    for imp in &run.improvements {
        assert_eq!(imp.seed, stages[imp.stage].seed);
    }
    assert_eq!(run.best.scope(), run.improvements.last().unwrap().scope);
    assert!(run_pipeline(&start, &[]).is_err());
}

#[test]
fn single_stage_pipeline_matches_run() {
    let start = transversal_greedy(3, 4);
    let cfg = HeuristicConfig::new(TemplateFamily::Single, 500, 42);
    let p = run_pipeline(&start, &[cfg]).unwrap();
    let r = run_heuristic(&start, &cfg).unwrap();
    assert_eq!(p.best, r.best);
    assert_eq!(p.improvements, r.trace);
}

#[test]
fn stage_order_changes_trace_not_validity() {
    let start = transversal_greedy(4, 3);
    let h1 = HeuristicConfig::new(TemplateFamily::Single, 200, 1);
    let h2 = HeuristicConfig::new(TemplateFamily::Row, 50, 2);
    let h3 = HeuristicConfig::new(TemplateFamily::Transversal, 50, 3);
    for stages in [[h1, h2, h3], [h1, h3, h2], [h3, h2, h1]] {
        let run = run_pipeline(&start, &stages).unwrap();
        assert!(run.best.verify().is_valid());
        assert!(run.best.scope() <= start.scope());
    }
}

#[test]
fn single_cell_templates_are_uniform() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let draws = 100_000u32;
    let mut counts: BTreeMap<Template, u32> = BTreeMap::new();
    for _ in 0..draws {
        *counts
            .entry(TemplateFamily::Single.sample(&mut rng, 3, 3))
            .or_default() += 1;
    }
    assert_eq!(counts.len(), 9);
    let p = 1.0 / 9.0;
    let mean = draws as f64 * p;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    for (t, &c) in &counts {
        assert!((c as f64 - mean).abs() <= 5.0 * sigma, "{t:?}: {c}");
    }
}

#[test]
fn transversal_templates_touch_every_row() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let t = TemplateFamily::Transversal.sample(&mut rng, 4, 3);
        let rows: BTreeSet<usize> = t.cells().map(|(r, _)| r).collect();
        assert_eq!(rows.len(), 4);
        assert!(t.cells().all(|(_, c)| (1..=3).contains(&c)));
    }
    assert_eq!(TemplateFamily::Single.size(4, 3), Some(12));
    assert_eq!(TemplateFamily::Row.size(4, 3), Some(4));
    assert_eq!(TemplateFamily::Transversal.size(4, 3), Some(81));
}
