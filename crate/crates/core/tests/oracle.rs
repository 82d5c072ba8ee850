//! Brute-force checks: every step sequence is generated and tested against
//! the quadrant constraint, independently of the dynamic programme.

use std::collections::BTreeMap;

use quadwalk::kernel::divide;
use quadwalk::walks::enumerate;
use quadwalk::{Coefficient, StepSet};

/// `(i, j, n) ↦ number of quadrant walks`, by enumerating all `|S|^n`
/// sequences for each `n ≤ order`.
fn brute_force(steps: StepSet, order: usize) -> BTreeMap<(u32, u32, usize), i64> {
    let vectors: Vec<(i32, i32)> = steps.vectors().collect();
    let mut counts = BTreeMap::new();
    for n in 0..=order {
        let total = vectors.len().pow(n as u32);
        'seq: for mut code in 0..total {
            let (mut i, mut j) = (0i32, 0i32);
            for _ in 0..n {
                let (a, b) = vectors[code % vectors.len()];
                code /= vectors.len();
                i += a;
                j += b;
                if i < 0 || j < 0 {
                    continue 'seq;
                }
            }
            *counts.entry((i as u32, j as u32, n)).or_insert(0) += 1;
        }
    }
    counts
}

#[test]
fn enumeration_matches_brute_force_for_all_step_sets() {
    for s in StepSet::all_nonempty() {
        let order = if s.len() > 5 { 4 } else { 5 };
        let expected = brute_force(s, order);
        let q = enumerate(s, order);
        let got: BTreeMap<_, _> = q
            .terms()
            .map(|t| {
                (
                    (t.i, t.j, t.n),
                    t.coeff.to_integer().unwrap().try_into().unwrap(),
                )
            })
            .collect();
        assert_eq!(got, expected, "{s}");
    }
}

#[test]
fn quotient_matches_brute_force_for_e_n_ne_sw() {
    let s: StepSet = "E,N,NE,SW".parse().unwrap();
    let l = divide(s, 6).l;
    for ((i, j, n), c) in brute_force(s, 6) {
        assert_eq!(l.coeff(i, j, n).unwrap(), Coefficient::from(c));
    }
    // a_{0,0,2} = 1 and ten walks of length two
    assert_eq!(l.coeff(0, 0, 2).unwrap(), Coefficient::from(1));
    let two: i64 = brute_force(s, 2)
        .iter()
        .filter(|((_, _, n), _)| *n == 2)
        .map(|(_, c)| c)
        .sum();
    assert_eq!(two, 10);
}

#[test]
fn simple_walk_first_remainder() {
    let s: StepSet = "N,S,E,W".parse().unwrap();
    let r = divide(s, 1).r;
    let expected = quadwalk::TruncatedSeries::from_terms(
        1,
        [(1, 0, 1, Coefficient::one()), (0, 1, 1, Coefficient::one())],
    );
    assert_eq!(r, expected);
}
