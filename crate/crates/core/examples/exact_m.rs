//! Determine `m(n, k)` by exhaustive search from the counting bounds,
//! e.g. `cargo run --release --example exact_m -- 3 3`.

use dts::search::{compute_m_with, MValue, Pruning, StartBound};

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer"))
        .collect();
    let (n, k) = (args[0], args[1]);
    let budget = args.get(2).map(|&b| b as u64);
    let r =
        compute_m_with(n, k, budget, StartBound::CountingOnly, Pruning::Full).expect("n, k >= 1");
    for (m, nodes) in &r.exhausted {
        println!("m = {m}: none ({nodes} nodes)");
    }
    match r.value {
        MValue::Exact { value, witness } => println!("m({n},{k}) = {value}: {witness}"),
        MValue::Interval { lower, upper, .. } => println!("{lower} <= m({n},{k}) <= {upper}"),
    }
    println!("total nodes {}", r.nodes);
}
