//! The group of the walk.
//!
//! Writing the step polynomial as
//!
//! ```text
//! Σ_{(a,b)∈S} x^a y^b = A₋₁(y)/x + A₀(y) + A₁(y)·x = B₋₁(x)/y + B₀(x) + B₁(x)·y
//! ```
//!
//! the two involutions `Φ(x,y) = (A₋₁(y) / (x·A₁(y)), y)` and
//! `Ψ(x,y) = (x, B₋₁(x) / (y·B₁(x)))` preserve it, and generate a dihedral
//! group whose order is twice the order of `θ = Ψ∘Φ`.
//!
//! Orders are detected by iterating `θ` on random points of a prime field.
//! A return to the starting point at every sample flags a candidate order,
//! which is then certified: the unreduced numerator and denominator of
//! `θ^m` are evaluated at random points on three primes, with enough points
//! that a nonzero `N − x·D` of the tracked degree would be caught except
//! with probability below `2^-64` per prime.

mod field;

pub use field::{is_prime, PrimeField, DEFAULT_PRIMES};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{BivariatePolynomial, Coefficient};
use crate::walks::StepSet;
use field::ModPoly;

/// Largest group order that must be certified symbolically when found by
/// modular iteration.
pub const SYMBOLIC_CONFIRMATION_LIMIT: usize = 24;

/// Target failure probability exponent (per prime) for identity certificates.
const CERTIFICATE_SECURITY_BITS: f64 = 64.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degenerate model {steps}: section polynomial {which} vanishes")]
    Degenerate { steps: StepSet, which: &'static str },
    #[error("{0} is not a prime in [3, 2^63)")]
    NotPrime(u64),
    #[error("bound must be at least 2, got {0}")]
    BoundTooSmall(usize),
    #[error("trials must be positive")]
    NoTrials,
    #[error("degree bound {degree} too large to certify over F_{prime}")]
    DegreeTooLarge { degree: u128, prime: u64 },
    #[error("modular iteration found order {order} for {steps} but the symbolic check rejects it")]
    Unconfirmed { steps: StepSet, order: usize },
}

/// `A_k(y)` and `B_k(x)` for `k ∈ {−1, 0, 1}`, each multiplied by its
/// clearing factor (`y` for the `A`s, `x` for the `B`s) so that all exponents
/// lie in `{0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPolynomials {
    a: [BivariatePolynomial; 3],
    b: [BivariatePolynomial; 3],
}

impl SectionPolynomials {
    /// `y · A_k(y)`.
    pub fn a(&self, k: i32) -> &BivariatePolynomial {
        &self.a[(k + 1) as usize]
    }

    /// `x · B_k(x)`.
    pub fn b(&self, k: i32) -> &BivariatePolynomial {
        &self.b[(k + 1) as usize]
    }

    /// `Σ_k x^{k+1} · y·A_k(y)`, which is `xy` times the step polynomial.
    pub fn reassemble_by_x(&self) -> BivariatePolynomial {
        (-1..=1).fold(BivariatePolynomial::zero(), |acc, k| {
            acc.add(
                &self
                    .a(k)
                    .shift(i64::from(k) + 1, 0)
                    .expect("nonnegative shift"),
            )
        })
    }

    /// `Σ_k y^{k+1} · x·B_k(x)`.
    pub fn reassemble_by_y(&self) -> BivariatePolynomial {
        (-1..=1).fold(BivariatePolynomial::zero(), |acc, k| {
            acc.add(
                &self
                    .b(k)
                    .shift(0, i64::from(k) + 1)
                    .expect("nonnegative shift"),
            )
        })
    }

    /// Name of the first vanishing polynomial among `A₋₁, A₁, B₋₁, B₁`.
    pub fn degenerate_section(&self) -> Option<&'static str> {
        [
            ("A_-1", self.a(-1)),
            ("A_1", self.a(1)),
            ("B_-1", self.b(-1)),
            ("B_1", self.b(1)),
        ]
        .into_iter()
        .find(|(_, p)| p.is_zero())
        .map(|(name, _)| name)
    }
}

pub fn sections(steps: StepSet) -> SectionPolynomials {
    let mut a: [BivariatePolynomial; 3] = Default::default();
    let mut b: [BivariatePolynomial; 3] = Default::default();
    for (sa, sb) in steps.vectors() {
        let one = || Coefficient::one();
        a[(sa + 1) as usize] =
            a[(sa + 1) as usize].add(&BivariatePolynomial::monomial(0, (sb + 1) as u32, one()));
        b[(sb + 1) as usize] =
            b[(sb + 1) as usize].add(&BivariatePolynomial::monomial((sa + 1) as u32, 0, one()));
    }
    SectionPolynomials { a, b }
}

/// `num / den` with integer polynomial numerator and denominator, kept unreduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: BivariatePolynomial,
    pub den: BivariatePolynomial,
}

impl RationalFunction {
    pub fn new(num: BivariatePolynomial, den: BivariatePolynomial) -> Self {
        debug_assert!(!den.is_zero());
        RationalFunction { num, den }
    }

    pub fn polynomial(p: BivariatePolynomial) -> Self {
        RationalFunction::new(p, BivariatePolynomial::one())
    }

    fn x() -> Self {
        Self::polynomial(BivariatePolynomial::monomial(1, 0, Coefficient::one()))
    }

    fn y() -> Self {
        Self::polynomial(BivariatePolynomial::monomial(0, 1, Coefficient::one()))
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn same_function(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    fn bidegree(&self) -> (u32, u32) {
        let dx = self
            .num
            .terms()
            .chain(self.den.terms())
            .map(|(m, _)| m.i)
            .max()
            .unwrap_or(0);
        let dy = self
            .num
            .terms()
            .chain(self.den.terms())
            .map(|(m, _)| m.j)
            .max()
            .unwrap_or(0);
        (dx, dy)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// A rational self-map of the plane, `(x, y) ↦ (X(x,y), Y(x,y))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirationalMap {
    pub x: RationalFunction,
    pub y: RationalFunction,
}

impl BirationalMap {
    pub fn identity() -> Self {
        BirationalMap {
            x: RationalFunction::x(),
            y: RationalFunction::y(),
        }
    }

    /// `self ∘ inner`, unreduced.
    pub fn compose(&self, inner: &BirationalMap) -> BirationalMap {
        let mut cache = PowerCache::new(inner);
        let mut substitute = |f: &RationalFunction| {
            let (dx, dy) = f.bidegree();
            RationalFunction::new(
                cache.homogenize(&f.num, dx, dy),
                cache.homogenize(&f.den, dx, dy),
            )
        };
        BirationalMap {
            x: substitute(&self.x),
            y: substitute(&self.y),
        }
    }

    /// Equality as rational maps.
    pub fn same_map(&self, other: &Self) -> bool {
        self.x.same_function(&other.x) && self.y.same_function(&other.y)
    }

    pub fn is_identity(&self) -> bool {
        self.same_map(&Self::identity())
    }

    /// `σ∘self∘σ` for the swap `σ(x, y) = (y, x)`.
    pub fn conjugate_by_swap(&self) -> BirationalMap {
        let swap = |f: &RationalFunction| RationalFunction::new(f.num.swap_xy(), f.den.swap_xy());
        BirationalMap {
            x: swap(&self.y),
            y: swap(&self.x),
        }
    }
}

impl fmt::Display for BirationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x ↦ {}, y ↦ {}", self.x, self.y)
    }
}

struct PowerCache<'a> {
    inner: &'a BirationalMap,
    powers: HashMap<(u8, u32), BivariatePolynomial>,
}

impl<'a> PowerCache<'a> {
    fn new(inner: &'a BirationalMap) -> Self {
        PowerCache {
            inner,
            powers: HashMap::new(),
        }
    }

    /// Index: 0 = x.num, 1 = x.den, 2 = y.num, 3 = y.den.
    fn power(&mut self, which: u8, e: u32) -> BivariatePolynomial {
        if e == 0 {
            return BivariatePolynomial::one();
        }
        if let Some(p) = self.powers.get(&(which, e)) {
            return p.clone();
        }
        let base = match which {
            0 => &self.inner.x.num,
            1 => &self.inner.x.den,
            2 => &self.inner.y.num,
            _ => &self.inner.y.den,
        }
        .clone();
        let p = self.power(which, e - 1).mul(&base);
        self.powers.insert((which, e), p.clone());
        p
    }

    /// `Σ c · xn^i xd^{dx−i} yn^j yd^{dy−j}`.
    fn homogenize(&mut self, p: &BivariatePolynomial, dx: u32, dy: u32) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (m, c) in p.terms() {
            let term = self
                .power(0, m.i)
                .mul(&self.power(1, dx - m.i))
                .mul(&self.power(2, m.j))
                .mul(&self.power(3, dy - m.j))
                .scale(c);
            out = out.add(&term);
        }
        out
    }
}

/// The generators `(Φ, Ψ)`.
pub fn generators(steps: StepSet) -> Result<(BirationalMap, BirationalMap), GroupError> {
    let sec = sections(steps);
    if let Some(which) = sec.degenerate_section() {
        return Err(GroupError::Degenerate { steps, which });
    }
    let x = BivariatePolynomial::monomial(1, 0, Coefficient::one());
    let y = BivariatePolynomial::monomial(0, 1, Coefficient::one());
    let phi = BirationalMap {
        x: RationalFunction::new(sec.a(-1).clone(), x.mul(sec.a(1))),
        y: RationalFunction::y(),
    };
    let psi = BirationalMap {
        x: RationalFunction::x(),
        y: RationalFunction::new(sec.b(-1).clone(), y.mul(sec.b(1))),
    };
    Ok((phi, psi))
}

/// `θ = Ψ∘Φ`.
pub fn theta(steps: StepSet) -> Result<BirationalMap, GroupError> {
    let (phi, psi) = generators(steps)?;
    Ok(psi.compose(&phi))
}

/// One rational component reduced mod `p`, with its bihomogenising bidegree.
#[derive(Clone, Debug)]
struct ModComponent {
    num: ModPoly,
    den: ModPoly,
    dx: u32,
    dy: u32,
}

impl ModComponent {
    fn reduce(f: &RationalFunction, field: PrimeField) -> Self {
        let num = ModPoly::reduce(&f.num, field);
        let den = ModPoly::reduce(&f.den, field);
        let dx = num.deg_x().max(den.deg_x());
        let dy = num.deg_y().max(den.deg_y());
        ModComponent { num, den, dx, dy }
    }

    fn eval(&self, field: PrimeField, x: u64, y: u64) -> Option<u64> {
        let den = self.den.eval(field, x, y);
        Some(field.mul(self.num.eval(field, x, y), field.inv(den)?))
    }

    fn eval_homogeneous(&self, field: PrimeField, xp: (u64, u64), yp: (u64, u64)) -> (u64, u64) {
        (
            self.num.eval_homogeneous(field, xp, yp, self.dx, self.dy),
            self.den.eval_homogeneous(field, xp, yp, self.dx, self.dy),
        )
    }
}

#[derive(Clone, Debug)]
struct ModMap {
    x: ModComponent,
    y: ModComponent,
}

impl ModMap {
    fn reduce(map: &BirationalMap, field: PrimeField) -> Self {
        ModMap {
            x: ModComponent::reduce(&map.x, field),
            y: ModComponent::reduce(&map.y, field),
        }
    }

    fn eval(&self, field: PrimeField, (x, y): (u64, u64)) -> Option<(u64, u64)> {
        Some((self.x.eval(field, x, y)?, self.y.eval(field, x, y)?))
    }

    fn eval_homogeneous(&self, field: PrimeField, p: HomPoint) -> HomPoint {
        HomPoint {
            x: self.x.eval_homogeneous(field, p.x, p.y),
            y: self.y.eval_homogeneous(field, p.x, p.y),
        }
    }

    /// Total-degree bounds of the component polynomials after applying this
    /// map to components of degree `(dx, dy)`.
    fn degree_after(&self, (dx, dy): (u128, u128)) -> (u128, u128) {
        let step = |c: &ModComponent| {
            (c.dx as u128)
                .saturating_mul(dx)
                .saturating_add((c.dy as u128).saturating_mul(dy))
        };
        (step(&self.x), step(&self.y))
    }
}

/// A point `(xn/xd, yn/yd)` carried through unreduced compositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct HomPoint {
    x: (u64, u64),
    y: (u64, u64),
}

impl HomPoint {
    fn affine(x: u64, y: u64) -> Self {
        HomPoint {
            x: (x, 1),
            y: (y, 1),
        }
    }

    /// `xn = x0·xd`, `yn = y0·yd` with nonzero denominators.
    fn represents(&self, field: PrimeField, x0: u64, y0: u64) -> bool {
        self.x.1 != 0
            && self.y.1 != 0
            && self.x.0 == field.mul(x0, self.x.1)
            && self.y.0 == field.mul(y0, self.y.1)
    }
}

fn rng_for(seed: u64, prime: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ prime.rotate_left(29))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "symbolic")]
    Symbolic,
    #[serde(rename = "modular-evaluation")]
    ModularEvaluation,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Symbolic => "symbolic",
            Method::ModularEvaluation => "modular-evaluation",
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "symbolic" => Ok(Method::Symbolic),
            "modular" | "modular-evaluation" => Ok(Method::ModularEvaluation),
            _ => Err(format!(
                "unknown method `{s}` (expected symbolic or modular)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupConfig {
    pub bound: usize,
    pub method: Method,
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
}

impl Default for GroupConfig {
    fn default() -> Self {
        GroupConfig {
            bound: 200,
            method: Method::ModularEvaluation,
            prime: DEFAULT_PRIMES[0],
            seed: 0,
            trials: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupVerdict {
    /// `θ` has order `order / 2`.
    Finite { order: usize },
    /// No `m ≤ bound` with `θ^m = id`.
    Unbounded,
    /// Degenerate model, no verdict assigned.
    Excluded,
}

/// Evidence that `θ^m = id` as a rational map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCertificate {
    pub power: usize,
    pub degree_bound: String,
    pub primes: Vec<String>,
    pub points_per_prime: usize,
    /// `log2` of the Schwartz–Zippel failure bound on each prime.
    pub failure_log2: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupReport {
    pub steps: StepSet,
    pub degenerate: bool,
    pub verdict: GroupVerdict,
    pub bound: usize,
    pub method: Method,
    pub prime: u64,
    pub seed: u64,
    pub certificate: Option<IdentityCertificate>,
}

impl GroupReport {
    pub fn excluded(steps: StepSet, config: &GroupConfig) -> Self {
        GroupReport {
            steps,
            degenerate: true,
            verdict: GroupVerdict::Excluded,
            bound: config.bound,
            method: config.method,
            prime: config.prime,
            seed: config.seed,
            certificate: None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self.verdict {
            GroupVerdict::Finite { order } => Some(order),
            _ => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.verdict == GroupVerdict::Unbounded
    }

    pub fn to_record(&self) -> GroupReportRecord {
        GroupReportRecord {
            steps: self.steps.to_string(),
            degenerate: self.degenerate,
            verdict: match self.verdict {
                GroupVerdict::Finite { .. } => "finite",
                GroupVerdict::Unbounded => "unbounded",
                GroupVerdict::Excluded => "excluded",
            }
            .to_string(),
            order: self.order(),
            bound: self.bound,
            method: self.method.as_str().to_string(),
            prime: self.prime.to_string(),
            seed: self.seed,
            certificate: self.certificate.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupReportRecord {
    pub steps: String,
    pub degenerate: bool,
    pub verdict: String,
    pub order: Option<usize>,
    pub bound: usize,
    pub method: String,
    pub prime: String,
    pub seed: u64,
    pub certificate: Option<IdentityCertificate>,
}

impl Serialize for GroupReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(serializer)
    }
}

fn validate(config: &GroupConfig) -> Result<PrimeField, GroupError> {
    if config.bound < 2 {
        return Err(GroupError::BoundTooSmall(config.bound));
    }
    if config.trials == 0 {
        return Err(GroupError::NoTrials);
    }
    PrimeField::new(config.prime).ok_or(GroupError::NotPrime(config.prime))
}

/// Smallest `m ≤ bound` such that `θ^m` fixes every sample point, by plain
/// affine iteration over `F_p`. Starting points whose orbit hits a pole are
/// resampled.
fn modular_period(
    theta: &BirationalMap,
    field: PrimeField,
    seed: u64,
    trials: usize,
    bound: usize,
) -> Option<usize> {
    let map = ModMap::reduce(theta, field);
    let mut rng = rng_for(seed, field.modulus());
    let mut returns = vec![true; bound + 1];
    let mut done = 0;
    while done < trials {
        let start = (field.random(&mut rng), field.random(&mut rng));
        let mut point = start;
        let mut hits = vec![false; bound + 1];
        let mut pole = false;
        for hit in hits.iter_mut().skip(1) {
            match map.eval(field, point) {
                Some(next) => point = next,
                None => {
                    pole = true;
                    break;
                }
            }
            *hit = point == start;
        }
        if pole {
            continue;
        }
        for (acc, hit) in returns.iter_mut().zip(&hits) {
            *acc &= *hit;
        }
        done += 1;
    }
    (1..=bound).find(|&m| returns[m])
}

/// `passes[m]` is true when the unreduced `θ^m` satisfies `N − x·D = 0`
/// at every sample point with nonzero denominators. A failing point proves
/// `θ^m ≠ id`.
fn homogeneous_passes(
    theta: &BirationalMap,
    field: PrimeField,
    seed: u64,
    trials: usize,
    bound: usize,
) -> Vec<bool> {
    let map = ModMap::reduce(theta, field);
    let mut rng = rng_for(seed, field.modulus());
    let starts: Vec<(u64, u64)> = (0..trials)
        .map(|_| (field.random(&mut rng), field.random(&mut rng)))
        .collect();
    let mut points: Vec<HomPoint> = starts
        .iter()
        .map(|&(x, y)| HomPoint::affine(x, y))
        .collect();
    let mut passes = vec![false; bound + 1];
    for pass in passes.iter_mut().skip(1) {
        let mut all = true;
        for (p, &(x0, y0)) in points.iter_mut().zip(&starts) {
            *p = map.eval_homogeneous(field, *p);
            all &= p.represents(field, x0, y0);
        }
        *pass = all;
    }
    passes
}

/// Certifies `map^power = id` on each prime in `primes`.
///
/// Returns `Ok(None)` if some sample point refutes the identity (a proof
/// that `map^power ≠ id`).
fn certify_power(
    map: &BirationalMap,
    power: usize,
    primes: &[u64],
    seed: u64,
    min_points: usize,
) -> Result<Option<IdentityCertificate>, GroupError> {
    let mut degree = (1u128, 1u128);
    let mut points_per_prime = min_points;
    let mut failure_log2 = f64::NEG_INFINITY;
    for (k, &prime) in primes.iter().enumerate() {
        let field = PrimeField::new(prime).ok_or(GroupError::NotPrime(prime))?;
        let reduced = ModMap::reduce(map, field);
        if k == 0 {
            for _ in 0..power {
                degree = reduced.degree_after(degree);
            }
        }
        // N − x·D has degree at most max component degree + 1.
        let test_degree = degree.0.max(degree.1).saturating_add(1);
        let ratio = test_degree as f64 / prime as f64;
        if ratio >= 0.5 {
            return Err(GroupError::DegreeTooLarge {
                degree: test_degree,
                prime,
            });
        }
        let per_point = ratio.log2();
        let needed = (-CERTIFICATE_SECURITY_BITS / per_point).ceil() as usize;
        let points = needed.max(min_points);
        points_per_prime = points_per_prime.max(points);
        failure_log2 = failure_log2.max(per_point * points as f64);

        let mut rng = rng_for(seed.wrapping_add(0x5eed), prime);
        let mut accepted = 0;
        let mut attempts = 0;
        while accepted < points {
            attempts += 1;
            if attempts > 64 * points {
                return Ok(None);
            }
            let (x0, y0) = (field.random(&mut rng), field.random(&mut rng));
            let mut p = HomPoint::affine(x0, y0);
            for _ in 0..power {
                p = reduced.eval_homogeneous(field, p);
            }
            if p.x.1 == 0 || p.y.1 == 0 {
                // Denominator vanishes here: uninformative, resample.
                if p.x.0 != field.mul(x0, p.x.1) || p.y.0 != field.mul(y0, p.y.1) {
                    return Ok(None);
                }
                continue;
            }
            if !p.represents(field, x0, y0) {
                return Ok(None);
            }
            accepted += 1;
        }
    }
    Ok(Some(IdentityCertificate {
        power,
        degree_bound: degree.0.max(degree.1).saturating_add(1).to_string(),
        primes: primes.iter().map(u64::to_string).collect(),
        points_per_prime,
        failure_log2,
    }))
}

fn certification_primes(first: u64) -> Vec<u64> {
    let mut primes = vec![first];
    primes.extend(DEFAULT_PRIMES.iter().copied().filter(|&p| p != first));
    primes.truncate(3);
    primes
}

/// Checks `θ^power = id` symbolically (unreduced composition, cross-multiplied
/// identity certified at random points on three primes).
pub fn confirm_identity(
    steps: StepSet,
    power: usize,
    seed: u64,
) -> Result<Option<IdentityCertificate>, GroupError> {
    let theta = theta(steps)?;
    certify_power(&theta, power, &DEFAULT_PRIMES, seed, 1)
}

/// Order of the group of the walk: the smallest `m ≤ bound` with
/// `θ^m = id`, reported as group order `2m`.
pub fn order(steps: StepSet, config: &GroupConfig) -> Result<GroupReport, GroupError> {
    let field = validate(config)?;
    let theta = theta(steps)?;
    let primes = certification_primes(config.prime);
    let mut report = GroupReport {
        steps,
        degenerate: false,
        verdict: GroupVerdict::Unbounded,
        bound: config.bound,
        method: config.method,
        prime: config.prime,
        seed: config.seed,
        certificate: None,
    };
    match config.method {
        Method::ModularEvaluation => {
            if let Some(m) = modular_period(&theta, field, config.seed, config.trials, config.bound)
            {
                if 2 * m <= SYMBOLIC_CONFIRMATION_LIMIT {
                    let cert = certify_power(&theta, m, &primes, config.seed, config.trials)?
                        .ok_or(GroupError::Unconfirmed {
                            steps,
                            order: 2 * m,
                        })?;
                    report.certificate = Some(cert);
                }
                report.verdict = GroupVerdict::Finite { order: 2 * m };
            }
        }
        Method::Symbolic => {
            let passes =
                homogeneous_passes(&theta, field, config.seed, config.trials, config.bound);
            for m in (1..=config.bound).filter(|&m| passes[m]) {
                if let Some(cert) = certify_power(&theta, m, &primes, config.seed, config.trials)? {
                    report.verdict = GroupVerdict::Finite { order: 2 * m };
                    report.certificate = Some(cert);
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// Like [`order`] but degenerate models yield an `Excluded` report instead of
/// an error.
pub fn order_or_excluded(steps: StepSet, config: &GroupConfig) -> Result<GroupReport, GroupError> {
    match order(steps, config) {
        Err(GroupError::Degenerate { .. }) => Ok(GroupReport::excluded(steps, config)),
        other => other,
    }
}

/// Checks that `Φ` and `Ψ` preserve the step polynomial `Σ x^a y^b` at
/// `trials` random points of `F_p`.
pub fn invariance(
    steps: StepSet,
    prime: u64,
    seed: u64,
    trials: usize,
) -> Result<bool, GroupError> {
    let field = PrimeField::new(prime).ok_or(GroupError::NotPrime(prime))?;
    if trials == 0 {
        return Err(GroupError::NoTrials);
    }
    let (phi, psi) = generators(steps)?;
    let vectors: Vec<_> = steps.vectors().collect();
    let step_sum = |x: u64, y: u64| -> Option<u64> {
        let (xi, yi) = (field.inv(x)?, field.inv(y)?);
        let pow = |base: u64, inv: u64, e: i32| match e {
            -1 => inv,
            0 => 1,
            _ => base,
        };
        Some(vectors.iter().fold(0, |acc, &(a, b)| {
            field.add(acc, field.mul(pow(x, xi, a), pow(y, yi, b)))
        }))
    };
    let mut rng = rng_for(seed, prime);
    for map in [&phi, &psi] {
        let reduced = ModMap::reduce(map, field);
        let mut done = 0;
        while done < trials {
            let p = (field.random(&mut rng), field.random(&mut rng));
            let Some(before) = step_sum(p.0, p.1) else {
                continue;
            };
            let Some(image) = reduced.eval(field, p) else {
                continue;
            };
            let Some(after) = step_sum(image.0, image.1) else {
                continue;
            };
            if before != after {
                return Ok(false);
            }
            done += 1;
        }
    }
    Ok(true)
}
