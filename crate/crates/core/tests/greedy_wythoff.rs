use dts::greedy::{set_greedy, transversal_greedy};
use dts::wythoff::{
    theorem6_check, transversal_greedy_k2_scope, wythoff_connell, wythoff_pairs,
    wythoff_winning_positions_bruteforce,
};

#[test]
fn greedy_outputs_are_valid_across_grid() {
    for n in 1..=50 {
        for k in 1..=8 {
            for t in [set_greedy(n, k), transversal_greedy(n, k)] {
                assert!(t.verify().is_valid(), "n={n} k={k}");
                assert_eq!((t.n(), t.k()), (n, k));
            }
        }
    }
}

#[test]
fn order_one_greedy_is_optimal() {
    for n in 1..=40 {
        assert_eq!(transversal_greedy(n, 1).scope() as usize, n);
        assert_eq!(set_greedy(n, 1).scope() as usize, n);
    }
}

#[test]
fn recursion_matches_closed_form() {
    for p in wythoff_pairs(20_000) {
        assert_eq!(p, wythoff_connell(p.index));
    }
}

#[test]
fn recursion_matches_game_for_small_piles() {
    let safe = wythoff_winning_positions_bruteforce(300);
    let mut expect: std::collections::BTreeSet<(u64, u64)> = wythoff_pairs(300)
        .into_iter()
        .filter(|p| p.v <= 300)
        .map(|p| (p.u, p.v))
        .collect();
    expect.insert((0, 0));
    assert_eq!(safe, expect);
}

#[test]
fn column_two_identity_and_scope() {
    for n in 1..=200usize {
        assert!(theorem6_check(n).passed(), "n={n}");
        assert_eq!(
            u64::from(transversal_greedy(n, 2).scope()),
            transversal_greedy_k2_scope(n as u64)
        );
    }
}

#[test]
fn set_greedy_is_worse_than_transversal_for_order_two() {
    let mut worse = 0;
    for n in 2..=30 {
        if set_greedy(n, 2).scope() > transversal_greedy(n, 2).scope() {
            worse += 1;
        }
    }
    assert!(worse > 20);
}
