mod common;

use coordgame::dynamics::RunParams;
use coordgame::experiments::{estimate_basin, OutcomeClass};
use coordgame::graph::{complete, path};

use common::exact_basin;

fn within(est: f64, exact: f64, trials: usize, k: f64) -> bool {
    let se = (exact * (1.0 - exact) / trials as f64).sqrt().max(1e-12);
    (est - exact).abs() <= k * se
}

#[test]
fn k2_exact() {
    let (consensus, other, rest) = exact_basin(&path(2).unwrap(), 2);
    assert!((consensus - 0.5).abs() < 1e-15);
    assert_eq!(other, 0.0);
    assert!((rest - 0.5).abs() < 1e-15);
}

/// Ten of the sixteen two-strategy profiles on K_4 reach consensus: the six
/// 2+2 splits swap sides forever.
#[test]
fn k4_exact() {
    let (consensus, other, rest) = exact_basin(&complete(4).unwrap(), 2);
    assert!((consensus - 0.625).abs() < 1e-12, "{consensus}");
    assert_eq!(other, 0.0);
    assert!((rest - 0.375).abs() < 1e-12);
    let est = estimate_basin(&complete(4).unwrap(), 10_000, 2, &RunParams::default(), 5).unwrap();
    assert!(within(est.consensus_fraction, consensus, 10_000, 3.0), "{}", est.consensus_fraction);
    let cycles = est
        .histogram
        .iter()
        .find(|b| b.outcome == OutcomeClass::Cycle { period: 2 })
        .map_or(0, |b| b.count);
    assert_eq!(cycles + est.histogram[0].count, 10_000);
    assert_eq!(est.statistical_cycles, 0);
}

/// Two disjoint triangles: consensus needs both components to settle on the
/// same label, probability 1/c for c strategies.
#[test]
fn disconnected_triangles() {
    let g = complete(3).unwrap().disjoint_union(&complete(3).unwrap());
    for c in [2usize, 3] {
        let (consensus, _, _) = exact_basin(&g, c);
        assert!((consensus - 1.0 / c as f64).abs() < 1e-9, "c={c}: {consensus}");
        let est = estimate_basin(&g, 10_000, c, &RunParams::default(), 17).unwrap();
        assert!(est.disconnected);
        assert!(within(est.consensus_fraction, consensus, 10_000, 3.0));
        assert!((est.independent_labels_prediction - consensus).abs() < 1e-9);
    }
}

#[test]
fn k2_monte_carlo() {
    let est = estimate_basin(&path(2).unwrap(), 10_000, 2, &RunParams::default(), 23).unwrap();
    assert!(within(est.consensus_fraction, 0.5, 10_000, 3.0));
    let cycle = est.histogram.iter().find(|b| b.outcome == OutcomeClass::Cycle { period: 2 }).unwrap();
    assert!(within(cycle.frequency, 0.5, 10_000, 3.0));
}

#[test]
fn small_graph_oracles_match_monte_carlo() {
    // cycle C5 and star K_{1,3} with three strategies
    let c5 = coordgame::graph::cycle(5).unwrap();
    let star = coordgame::graph::star(4).unwrap();
    for (g, seed) in [(c5, 1u64), (star, 2)] {
        let (consensus, other, _) = exact_basin(&g, 3);
        let est = estimate_basin(&g, 10_000, 3, &RunParams::default(), seed).unwrap();
        assert!(within(est.consensus_fraction, consensus, 10_000, 4.0), "{} vs {consensus}", est.consensus_fraction);
        let eq_other: f64 = est
            .histogram
            .iter()
            .filter(|b| matches!(b.outcome, OutcomeClass::Equilibrium { clusters } if clusters > 1))
            .map(|b| b.frequency)
            .sum();
        assert!(within(eq_other, other, 10_000, 4.0), "{eq_other} vs {other}");
    }
}
