//! Run an H1/H3/H2 pipeline from the transversal-greedy start and report
//! the scope reached, e.g. `cargo run --release --example pipeline_probe -- 5 5 1 20000`.

use std::time::Instant;

use dts::greedy::transversal_greedy;
use dts::heuristics::{run_pipeline, HeuristicConfig, TemplateFamily};

fn main() {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer"))
        .collect();
    let (n, k, seed, iters) = match args[..] {
        [n, k, seed, iters] => (n, k, seed, iters),
        _ => (5, 5, 1, 20_000),
    };
    let start = transversal_greedy(n as usize, k as usize);
    let stages = [
        HeuristicConfig::new(TemplateFamily::Single, iters, seed),
        HeuristicConfig::new(TemplateFamily::Transversal, iters, seed + 1),
        HeuristicConfig::new(TemplateFamily::Row, iters, seed + 2),
    ];
    let t = Instant::now();
    let run = run_pipeline(&start, &stages).expect("valid pipeline");
    println!(
        "({n},{k}) seed {seed}: {} -> {} in {:.1?}",
        start.scope(),
        run.best.scope(),
        t.elapsed()
    );
    print!("{}", dts::format::emit_text(&run.best));
    for imp in &run.improvements {
        println!(
            "  stage {} iter {} scope {}",
            imp.stage, imp.iteration, imp.scope
        );
    }
}
