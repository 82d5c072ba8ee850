//! One function per subcommand. Each returns the text rendering, the JSON
//! value and whether every checked flag held.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use quadwalk::classify::{self, GuessSettings, SweepConfig, FIGURE1_MODELS};
use quadwalk::geometry::{self, partials_at_origin};
use quadwalk::group::{order_or_excluded, GroupConfig, GroupReport};
use quadwalk::guess::{self, GuessResult, EVIDENCE_NOTE};
use quadwalk::kernel::{divide as kernel_divide, kernel, verify_functional_equation};
use quadwalk::series::SeriesRecord;
use quadwalk::walks::enumerate as walks_enumerate;
use quadwalk::{BivariatePolynomial, Coefficient, Section, StepSet, TruncatedSeries};

use crate::GuessKindArg;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    One(StepSet),
    All,
    Figure1,
}

impl Selection {
    fn sets(self) -> Vec<StepSet> {
        match self {
            Selection::One(s) => vec![s],
            Selection::All => StepSet::all_nonempty().collect(),
            Selection::Figure1 => FIGURE1_MODELS.to_vec(),
        }
    }
}

pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

struct Item {
    text: String,
    json: Value,
    ok: bool,
}

/// Runs `f` on every selected step set in parallel, keeping bitmask order.
/// A single step set gives a JSON object; `all` and `figure1` give an array.
fn per_set<F>(selection: Selection, f: F) -> Result<Report, String>
where
    F: Fn(StepSet) -> Result<Item, String> + Sync,
{
    let items: Vec<Item> = selection
        .sets()
        .into_par_iter()
        .map(&f)
        .collect::<Result<_, _>>()?;
    let ok = items.iter().all(|i| i.ok);
    let text = items
        .iter()
        .map(|i| i.text.as_str())
        .collect::<Vec<_>>()
        .join("\n");
    let json = match selection {
        Selection::One(_) => items.into_iter().next().expect("one item").json,
        _ => Value::Array(items.into_iter().map(|i| i.json).collect()),
    };
    Ok(Report { text, json, ok })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("records serialize")
}

fn series_terms(s: &TruncatedSeries) -> Value {
    to_value(&SeriesRecord::from(s).terms)
}

#[derive(Serialize)]
struct PolyTerm {
    i: u32,
    j: u32,
    num: String,
    den: String,
}

fn poly_terms(p: &BivariatePolynomial) -> Value {
    let terms: Vec<PolyTerm> = p
        .terms()
        .map(|(m, c)| PolyTerm {
            i: m.i,
            j: m.j,
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect();
    to_value(&terms)
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn enumerate(selection: Selection, order: usize) -> Result<Report, String> {
    per_set(selection, |s| {
        let q = walks_enumerate(s, order);
        Ok(Item {
            text: format!("{s}: {}", q.to_text()),
            json: json!({ "steps": s, "order": order, "terms": series_terms(&q) }),
            ok: true,
        })
    })
}

pub fn divide(selection: Selection, order: usize) -> Result<Report, String> {
    per_set(selection, |s| {
        let d = kernel_divide(s, order);
        Ok(Item {
            text: format!(
                "{s}\n  epsilon = {}\n  l = {}\n  r = {}\n  h = {}\n  g = {}",
                d.epsilon,
                d.l.to_text(),
                d.r.to_text(),
                d.h.to_text(),
                d.g.to_text()
            ),
            json: json!({
                "steps": s,
                "order": order,
                "epsilon": d.epsilon,
                "l": series_terms(&d.l),
                "r": series_terms(&d.r),
                "h": series_terms(&d.h),
                "g": series_terms(&d.g),
            }),
            ok: true,
        })
    })
}

pub fn verify(selection: Selection, order: usize) -> Result<Report, String> {
    per_set(selection, |s| {
        let r = verify_functional_equation(s, order);
        Ok(Item {
            text: format!(
                "{s}: order {order}  l = Q {}  r = boundary {}  identity {}",
                yn(r.l_matches_oracle),
                yn(r.r_matches_boundary),
                yn(r.identity_holds)
            ),
            json: to_value(&r),
            ok: r.passed(),
        })
    })
}

fn group_text(r: &GroupReport) -> String {
    match r.order() {
        _ if r.degenerate => format!("{}: excluded (degenerate model)", r.steps),
        Some(o) => {
            let how = match &r.certificate {
                Some(c) => format!(", identity certified on {} primes", c.primes.len()),
                None => String::new(),
            };
            format!("{}: order {o}{how}", r.steps)
        }
        None => format!(
            "{}: no order found, theta^m != id for all m <= {}",
            r.steps, r.bound
        ),
    }
}

pub fn group(selection: Selection, config: &GroupConfig) -> Result<Report, String> {
    per_set(selection, |s| {
        let r = order_or_excluded(s, config).map_err(|e| e.to_string())?;
        Ok(Item {
            text: group_text(&r),
            json: to_value(&r),
            ok: true,
        })
    })
}

pub fn bishop(selection: Selection, degree: u32) -> Result<Report, String> {
    per_set(selection, |s| {
        let b = geometry::bishop_expansion(s, degree).map_err(|e| e.to_string())?;
        let ok = b.quadratic_is_ww_bar()
            && b.tail_vanishes_to_order_three()
            && b.bishop_invariant.is_zero();
        let tail_order = b.tail_order();
        Ok(Item {
            text: format!(
                "{s}: degree {degree}\n  quadratic = {}\n  bishop invariant = {}\n  E = {}\n  lowest degree in E = {}",
                b.quadratic,
                b.bishop_invariant,
                b.tail,
                tail_order.map_or("none".to_string(), |d| d.to_string())
            ),
            json: json!({
                "steps": s,
                "degree": degree,
                "quadratic_is_ww_bar": b.quadratic_is_ww_bar(),
                "bishop_invariant": b.bishop_invariant,
                "tail_order": tail_order,
                "graph": poly_terms(&b.graph),
                "tail": poly_terms(&b.tail),
            }),
            ok,
        })
    })
}

pub fn symmetry(selection: Selection) -> Result<Report, String> {
    per_set(selection, |s| {
        let p = partials_at_origin(s);
        let smooth = geometry::is_smooth(s);
        let symmetric = geometry::is_diagonally_symmetric(s);
        let k = kernel(s).to_series(1);
        let swap_invariant = k.swap_xy() == k;
        Ok(Item {
            text: format!(
                "{s}: partials at origin ({}, {}, {})  smooth {}  diagonal-symmetric {}",
                p.d_w,
                p.d_wbar,
                p.d_z,
                yn(smooth),
                yn(symmetric)
            ),
            json: json!({
                "steps": s,
                "partials": p,
                "smooth": smooth,
                "diagonal_symmetric": symmetric,
                "kernel_swap_invariant": swap_invariant,
            }),
            ok: symmetric == swap_invariant,
        })
    })
}

pub fn figure1(config: &GroupConfig) -> Result<Report, String> {
    let models = geometry::figure1_models(config).map_err(|e| e.to_string())?;
    Ok(Report {
        text: models
            .iter()
            .map(StepSet::to_string)
            .collect::<Vec<_>>()
            .join("\n"),
        json: to_value(&models),
        ok: true,
    })
}

pub fn certify(selection: Selection, order: usize) -> Result<Report, String> {
    per_set(selection, |s| {
        let c = geometry::certify(s, order).map_err(|e| e.to_string())?;
        Ok(Item {
            text: format!(
                "{s}: order {order}  identity {}  l = Q {}  r symmetric {}  r nonnegative {}  h real rational {}\n  h = {}",
                yn(c.identity_holds),
                yn(c.l_matches_walks),
                yn(c.r_symmetric),
                yn(c.r_nonnegative),
                yn(c.h_real_rational),
                c.h.to_text()
            ),
            json: to_value(&c),
            ok: c.passed(),
        })
    })
}

pub fn classify(
    selection: Selection,
    group: GroupConfig,
    guess: Option<GuessSettings>,
) -> Result<Report, String> {
    let config = SweepConfig { group, guess };
    let sets = selection.sets();
    eprintln!(
        "classifying {} step sets (bound {})",
        sets.len(),
        group.bound
    );
    let records = if selection == Selection::All {
        classify::sweep(&config)
    } else {
        sets.into_par_iter()
            .map(|s| classify::classify(s, &config))
            .collect()
    }
    .map_err(|e| e.to_string())?;
    let summary = classify::summarize(&records);
    eprintln!(
        "done: {} canonical, {} finite, {} infinite",
        summary.canonical, summary.finite_group, summary.infinite_group
    );
    Ok(Report {
        text: classify::to_table(&records),
        json: json!({ "records": records, "summary": summary }),
        ok: true,
    })
}

fn poly_in_t(coeffs: &[Coefficient]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| match m {
            0 => c.to_string(),
            1 => format!("{c}*t"),
            _ => format!("{c}*t^{m}"),
        })
        .collect();
    format!("({})", terms.join(" + "))
}

fn guess_text(r: &GuessResult, s: StepSet, section: Section) -> String {
    let bounds = match r.bounds {
        guess::Bounds::Algebraic { deg_f, deg_t } => format!("deg_f <= {deg_f}, deg_t <= {deg_t}"),
        guess::Bounds::Ode { order, degree } => format!("order <= {order}, degree <= {degree}"),
    };
    let head = format!("{s} at {section}, N = {}, {bounds}", r.sample_order);
    match &r.candidate {
        None => format!("{head}\n  none: {EVIDENCE_NOTE}"),
        Some(c) => {
            let symbol = |k: usize| match r.kind {
                guess::GuessKind::Algebraic => format!("f^{k}"),
                guess::GuessKind::Ode => format!("D^{k} f"),
            };
            let body: Vec<String> = c
                .iter()
                .enumerate()
                .filter(|(_, p)| p.iter().any(|x| !x.is_zero()))
                .map(|(k, p)| format!("{}*{}", poly_in_t(p), symbol(k)))
                .collect();
            format!(
                "{head}\n  found: {} = 0 (verified through t^{})",
                body.join(" + "),
                r.verified_to
            )
        }
    }
}

pub fn guess(
    selection: Selection,
    section: Section,
    order: usize,
    kind: GuessKindArg,
    (deg_f, deg_t): (usize, usize),
    (max_ode_order, max_degree): (usize, usize),
) -> Result<Report, String> {
    per_set(selection, |s| {
        let f = guess::sample(s, section, order);
        let r = match kind {
            GuessKindArg::Algebraic => guess::guess_algebraic(&f, deg_f, deg_t),
            GuessKindArg::Ode => guess::guess_ode(&f, max_ode_order, max_degree),
        }
        .map_err(|e| e.to_string())?;
        Ok(Item {
            text: guess_text(&r, s, section),
            json: to_value(&r.to_record()),
            ok: true,
        })
    })
}
