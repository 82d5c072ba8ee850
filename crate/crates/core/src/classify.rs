//! Reduction of the 255 nonempty step sets to canonical models, and the
//! classification sweep.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{is_diagonally_symmetric, is_smooth};
use crate::group::{order_or_excluded, GroupConfig, GroupError, GroupReport};
use crate::guess::{guess_ode, sample, GuessError, GuessRecord};
use crate::series::Section;
use crate::walks::StepSet;

/// The seven canonical, smooth, diagonal-symmetric models with an infinite
/// group, in bitmask order.
pub const FIGURE1_MODELS: [StepSet; 7] = [
    StepSet::from_bits(0b0010_0111), // E, N, NE, SW
    StepSet::from_bits(0b0111_0010), // W, S, NE, SW
    StepSet::from_bits(0b0111_0101), // W, S, N, E, SW
    StepSet::from_bits(0b1010_1101), // NW, SE, N, E, SW
    StepSet::from_bits(0b1010_1111), // NW, SE, N, E, SW, NE
    StepSet::from_bits(0b1111_1010), // NW, SE, S, W, SW, NE
    StepSet::from_bits(0b1111_1101), // NW, SE, S, W, SW, N, E
];

/// Why a step set is not a canonical model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionReason {
    /// No step with `a = −1`: the constraint `i ≥ 0` never binds.
    NoWestwardStep,
    /// No step with `b = −1`.
    NoSouthwardStep,
    /// No step with `a = 1`: walks stay on the `y`-axis.
    NoEastwardStep,
    /// No step with `b = 1`.
    NoNorthwardStep,
    /// All steps lie on one line through the origin.
    Collinear,
    /// Every step has `a + b ≤ 0`, so only the empty walk survives.
    NonPositiveDrift,
    /// `b ≤ a` for every step (or `a ≤ b`), so one quadrant constraint is
    /// implied by the other.
    ImpliedConstraint,
    /// The diagonal mirror image has a smaller bitmask.
    MirrorOf(StepSet),
}

impl ReductionReason {
    /// Rule family: `R1` (a constraint never binds), `R2` (confined walks),
    /// `R3` (mirror duplicate).
    pub fn rule(self) -> &'static str {
        match self {
            ReductionReason::NoWestwardStep
            | ReductionReason::NoSouthwardStep
            | ReductionReason::ImpliedConstraint => "R1",
            ReductionReason::NoEastwardStep
            | ReductionReason::NoNorthwardStep
            | ReductionReason::Collinear
            | ReductionReason::NonPositiveDrift => "R2",
            ReductionReason::MirrorOf(_) => "R3",
        }
    }
}

impl fmt::Display for ReductionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            ReductionReason::NoWestwardStep => "no step with a = -1".to_string(),
            ReductionReason::NoSouthwardStep => "no step with b = -1".to_string(),
            ReductionReason::NoEastwardStep => "no step with a = 1".to_string(),
            ReductionReason::NoNorthwardStep => "no step with b = 1".to_string(),
            ReductionReason::Collinear => "steps are collinear".to_string(),
            ReductionReason::NonPositiveDrift => "every step has a + b <= 0".to_string(),
            ReductionReason::ImpliedConstraint => {
                "one quadrant constraint implies the other".to_string()
            }
            ReductionReason::MirrorOf(s) => format!("mirror image of {s}"),
        };
        write!(f, "{}: {text}", self.rule())
    }
}

fn collinear(vectors: &[(i32, i32)]) -> bool {
    let Some(&(a0, b0)) = vectors.first() else {
        return true;
    };
    vectors.iter().all(|&(a, b)| a * b0 - b * a0 == 0)
}

/// `Ok` for a canonical model, otherwise the first rule that discards it.
pub fn reduce(steps: StepSet) -> Result<(), ReductionReason> {
    let v: Vec<(i32, i32)> = steps.vectors().collect();
    if !v.iter().any(|&(a, _)| a == -1) {
        return Err(ReductionReason::NoWestwardStep);
    }
    if !v.iter().any(|&(_, b)| b == -1) {
        return Err(ReductionReason::NoSouthwardStep);
    }
    if !v.iter().any(|&(a, _)| a == 1) {
        return Err(ReductionReason::NoEastwardStep);
    }
    if !v.iter().any(|&(_, b)| b == 1) {
        return Err(ReductionReason::NoNorthwardStep);
    }
    if collinear(&v) {
        return Err(ReductionReason::Collinear);
    }
    if v.iter().all(|&(a, b)| a + b <= 0) {
        return Err(ReductionReason::NonPositiveDrift);
    }
    if v.iter().all(|&(a, b)| b <= a) || v.iter().all(|&(a, b)| a <= b) {
        return Err(ReductionReason::ImpliedConstraint);
    }
    let mirror = steps.mirrored();
    if mirror.bits() < steps.bits() {
        return Err(ReductionReason::MirrorOf(mirror));
    }
    Ok(())
}

pub fn canonical_models() -> Vec<StepSet> {
    StepSet::all_nonempty()
        .filter(|s| reduce(*s).is_ok())
        .collect()
}

/// Per-model ODE search run during a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessSettings {
    pub order: usize,
    pub sections: Vec<Section>,
    pub max_ode_order: usize,
    pub max_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SweepConfig {
    pub group: GroupConfig,
    /// Off unless set.
    pub guess: Option<GuessSettings>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationRecord {
    pub steps: StepSet,
    pub canonical: bool,
    pub reduction_reason: Option<ReductionReason>,
    pub smooth: bool,
    pub diagonal_symmetric: bool,
    /// Present for canonical models.
    pub group: Option<GroupReport>,
    pub guesses: Option<Vec<GuessRecord>>,
}

impl ClassificationRecord {
    pub fn infinite_group(&self) -> bool {
        self.group.as_ref().is_some_and(GroupReport::is_unbounded)
    }

    pub fn finite_group(&self) -> bool {
        self.group.as_ref().is_some_and(|g| g.order().is_some())
    }

    pub fn is_figure1(&self) -> bool {
        self.canonical && self.smooth && self.diagonal_symmetric && self.infinite_group()
    }

    pub fn to_record(&self) -> ClassificationJson {
        ClassificationJson {
            steps: self.steps.to_string(),
            bits: self.steps.bits(),
            tokens: self.steps.tokens(),
            canonical: self.canonical,
            reduction_rule: self.reduction_reason.map(|r| r.rule()),
            reduction_reason: self.reduction_reason.map(|r| r.to_string()),
            smooth: self.smooth,
            diagonal_symmetric: self.diagonal_symmetric,
            group: self.group.clone(),
            guesses: self.guesses.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationJson {
    pub steps: String,
    pub bits: u8,
    pub tokens: Vec<&'static str>,
    pub canonical: bool,
    pub reduction_rule: Option<&'static str>,
    pub reduction_reason: Option<String>,
    pub smooth: bool,
    pub diagonal_symmetric: bool,
    pub group: Option<GroupReport>,
    pub guesses: Option<Vec<GuessRecord>>,
}

impl Serialize for ClassificationRecord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(serializer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub canonical: usize,
    pub finite_group: usize,
    pub infinite_group: usize,
    pub figure1: Vec<StepSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Guess(#[from] GuessError),
}

pub fn classify(steps: StepSet, config: &SweepConfig) -> Result<ClassificationRecord, SweepError> {
    let reduction = reduce(steps);
    let canonical = reduction.is_ok();
    let group = if canonical {
        Some(order_or_excluded(steps, &config.group)?)
    } else {
        None
    };
    let guesses = match (&config.guess, canonical) {
        (Some(g), true) => Some(
            g.sections
                .iter()
                .map(|&section| {
                    let f = sample(steps, section, g.order);
                    guess_ode(&f, g.max_ode_order, g.max_degree).map(|r| r.to_record())
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
        _ => None,
    };
    Ok(ClassificationRecord {
        steps,
        canonical,
        reduction_reason: reduction.err(),
        smooth: is_smooth(steps),
        diagonal_symmetric: is_diagonally_symmetric(steps),
        group,
        guesses,
    })
}

/// One record per nonempty step set, in bitmask order.
pub fn sweep(config: &SweepConfig) -> Result<Vec<ClassificationRecord>, SweepError> {
    let all: Vec<StepSet> = StepSet::all_nonempty().collect();
    all.par_iter().map(|s| classify(*s, config)).collect()
}

pub fn summarize(records: &[ClassificationRecord]) -> Summary {
    Summary {
        total: records.len(),
        canonical: records.iter().filter(|r| r.canonical).count(),
        finite_group: records
            .iter()
            .filter(|r| r.canonical && r.finite_group())
            .count(),
        infinite_group: records
            .iter()
            .filter(|r| r.canonical && r.infinite_group())
            .count(),
        figure1: records
            .iter()
            .filter(|r| r.is_figure1())
            .map(|r| r.steps)
            .collect(),
    }
}

/// Fixed-width text table followed by the summary line.
pub fn to_table(records: &[ClassificationRecord]) -> String {
    let mut out = format!(
        "{:>4}  {:<24} {:<9} {:<6} {:<9} {:<10} {}\n",
        "bits", "steps", "canonical", "smooth", "symmetric", "group", "reason"
    );
    let yn = |b: bool| if b { "yes" } else { "no" };
    for r in records {
        let group = match &r.group {
            None => "-".to_string(),
            Some(g) => match g.order() {
                Some(o) => o.to_string(),
                None if g.is_unbounded() => format!(">{}", 2 * g.bound),
                None => "excluded".to_string(),
            },
        };
        let reason = r
            .reduction_reason
            .map(|x| x.to_string())
            .unwrap_or_default();
        out.push_str(&format!(
            "{:>4}  {:<24} {:<9} {:<6} {:<9} {:<10} {}\n",
            r.steps.bits(),
            r.steps.to_string(),
            yn(r.canonical),
            yn(r.smooth),
            yn(r.diagonal_symmetric),
            group,
            reason
        ));
    }
    let s = summarize(records);
    let figure1: Vec<String> = s.figure1.iter().map(|f| format!("{{{f}}}")).collect();
    out.push_str(&format!(
        "total {}  canonical {}  finite {}  infinite {}  figure1 {}\n",
        s.total,
        s.canonical,
        s.finite_group,
        s.infinite_group,
        figure1.join(" ")
    ));
    out.trim_end().to_string()
}
