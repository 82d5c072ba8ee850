use quadwalk::classify::{summarize, sweep, SweepConfig, FIGURE1_MODELS};
use quadwalk::geometry::figure1_models;
use quadwalk::group::GroupConfig;
use quadwalk::walks::Step;

#[test]
fn sweep_counts() {
    let records = sweep(&SweepConfig::default()).unwrap();
    let s = summarize(&records);
    assert_eq!(s.total, 255);
    assert_eq!(s.canonical, 79);
    assert_eq!(s.finite_group, 23);
    assert_eq!(s.infinite_group, 56);
    assert_eq!(s.figure1, FIGURE1_MODELS.to_vec());
    for r in &records {
        assert_eq!(r.smooth, r.steps.contains(Step::SW), "{}", r.steps);
        if r.canonical {
            let g = r.group.as_ref().unwrap();
            assert!(!g.degenerate, "{}", r.steps);
        } else {
            assert!(r.group.is_none());
        }
    }
}

#[test]
fn finite_orders_match_known_values() {
    let records = sweep(&SweepConfig::default()).unwrap();
    let mut orders: Vec<usize> = records
        .iter()
        .filter_map(|r| r.group.as_ref()?.order())
        .collect();
    orders.sort();
    let count = |o| orders.iter().filter(|&&x| x == o).count();
    assert_eq!((count(4), count(6), count(8)), (16, 5, 2));
}

#[test]
fn figure1_from_geometry() {
    assert_eq!(
        figure1_models(&GroupConfig::default()).unwrap(),
        FIGURE1_MODELS.to_vec()
    );
}

#[test]
fn sweep_is_deterministic() {
    let a = serde_json::to_string(&sweep(&SweepConfig::default()).unwrap()).unwrap();
    let b = serde_json::to_string(&sweep(&SweepConfig::default()).unwrap()).unwrap();
    assert_eq!(a, b);
}
