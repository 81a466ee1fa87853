//! Closed-form asymptotic bounds on gaps and gap ratios, their log-scale
//! evaluation, and the data series behind the comparison figures.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{E, PI};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::combinat::{self, pivotal_half_counts};
use crate::family::Family;
use crate::numeric::{log10_big, log10_binomial, log10_gamma, log10_sum};
use crate::repr::{truncation_window, ReprError};

type Q = Ratio<i64>;

/// Tolerance, in log10, of the finite-n sandwich checks.
pub const SANDWICH_TOLERANCE: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AsymptoticsError {
    #[error("no {side} bound on {quantity} is stated for {family}")]
    NotStated {
        family: Family,
        quantity: Quantity,
        side: BoundSide,
    },
    #[error("bound has an unknown prefactor")]
    UnknownPrefactor,
    #[error("unknown quantity `{0}`")]
    UnknownQuantity(String),
    #[error("unknown side `{0}`")]
    UnknownSide(String),
    #[error(transparent)]
    Repr(#[from] ReprError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    Gap,
    SsGap,
    Ratio,
    SsRatio,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [Quantity::Gap, Quantity::SsGap, Quantity::Ratio, Quantity::SsRatio];
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::Gap => "gap",
            Quantity::SsGap => "ssgap",
            Quantity::Ratio => "ratio",
            Quantity::SsRatio => "ssratio",
        })
    }
}

impl FromStr for Quantity {
    type Err = AsymptoticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Quantity::ALL
            .into_iter()
            .find(|q| format!("{q}").eq_ignore_ascii_case(s))
            .ok_or_else(|| AsymptoticsError::UnknownQuantity(s.into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundSide {
    Lower,
    Upper,
}

impl fmt::Display for BoundSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundSide::Lower => "lower",
            BoundSide::Upper => "upper",
        })
    }
}

impl FromStr for BoundSide {
    type Err = AsymptoticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lower" => Ok(BoundSide::Lower),
            "upper" => Ok(BoundSide::Upper),
            _ => Err(AsymptoticsError::UnknownSide(s.into())),
        }
    }
}

/// `2^a 3^b 5^c π^d` with rational exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Monomial {
    pub two: Q,
    pub three: Q,
    pub five: Q,
    pub pi: Q,
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn qf(x: Q) -> f64 {
    x.to_f64().expect("small rational")
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        two: Q::new_raw(0, 1),
        three: Q::new_raw(0, 1),
        five: Q::new_raw(0, 1),
        pi: Q::new_raw(0, 1),
    };

    fn two(e: Q) -> Self {
        Monomial { two: e, ..Self::ONE }
    }

    fn with_pi(self, e: Q) -> Self {
        Monomial { pi: e, ..self }
    }

    pub fn log10(&self) -> f64 {
        qf(self.two) * libm::log10(2.0)
            + qf(self.three) * libm::log10(3.0)
            + qf(self.five) * libm::log10(5.0)
            + qf(self.pi) * libm::log10(PI)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    fn factors(&self) -> Vec<(&'static str, Q)> {
        [("2", self.two), ("3", self.three), ("5", self.five), ("pi", self.pi)]
            .into_iter()
            .filter(|(_, e)| !e.is_zero())
            .collect()
    }
}

fn power(base: &str, e: Q) -> String {
    if e == Q::from(1) {
        String::from(base)
    } else if e.is_integer() {
        format!("{base}^{e}")
    } else {
        format!("{base}^({e})")
    }
}

/// `coefficient · base^n · n^poly_power · e^{-a0 - a1/n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundExpr {
    pub coefficient: Monomial,
    pub base: Monomial,
    pub poly_power: Q,
    pub exp_correction: (Q, Q),
    /// `false` when the expression carries an unspecified factor of `n`.
    pub known: bool,
}

impl BoundExpr {
    fn new(coefficient: Monomial, base: Monomial, poly_power: Q) -> Self {
        BoundExpr {
            coefficient,
            base,
            poly_power,
            exp_correction: (Q::zero(), Q::zero()),
            known: true,
        }
    }

    fn damped(mut self, a0: Q, a1: Q) -> Self {
        self.exp_correction = (a0, a1);
        self
    }

    fn unknown(mut self) -> Self {
        self.known = false;
        self
    }

    /// `log10` of the per-`n` exponential base.
    pub fn log10_base(&self) -> f64 {
        self.base.log10()
    }

    pub fn eval_log10(&self, n: f64) -> Result<f64, AsymptoticsError> {
        if !self.known {
            return Err(AsymptoticsError::UnknownPrefactor);
        }
        let (a0, a1) = self.exp_correction;
        Ok(self.coefficient.log10() + n * self.base.log10() + qf(self.poly_power) * libm::log10(n)
            - (qf(a0) + qf(a1) / n) * libm::log10(E))
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .coefficient
            .factors()
            .into_iter()
            .map(|(b, e)| power(b, e))
            .collect();
        let (a0, a1) = self.exp_correction;
        if !a0.is_zero() || !a1.is_zero() {
            let mut s = String::from("e^(");
            if !a0.is_zero() {
                s += &format!("-{a0}");
            }
            if !a1.is_zero() {
                s += &format!("-{}/({}n)", a1.numer(), a1.denom());
            }
            s.push(')');
            parts.push(s);
        }
        if !self.known {
            parts.push(String::from("f(n)"));
        }
        if !self.poly_power.is_zero() {
            parts.push(power("n", self.poly_power));
        }
        let base = self.base.factors();
        if !base.is_empty() {
            let integral = base.iter().all(|(b, e)| *b != "pi" && e.is_integer() && *e.numer() > 0);
            if integral {
                let v: i64 = base
                    .iter()
                    .map(|(b, e)| b.parse::<i64>().expect("prime").pow(*e.numer() as u32))
                    .product();
                parts.push(format!("{v}^n"));
            } else {
                let inner: Vec<String> = base.into_iter().map(|(b, e)| power(b, e)).collect();
                parts.push(format!("({})^n", inner.join(" * ")));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

/// The stated bound on a gap or gap ratio of a truncated monoid.
///
/// Requests for the gap or ratio of `rMo` return the semisimple bounds,
/// which are the only ones known there.
pub fn bound(family: Family, quantity: Quantity, side: BoundSide) -> Result<BoundExpr, AsymptoticsError> {
    use BoundSide::{Lower, Upper};
    use Family::*;
    use Quantity::*;
    let one = Monomial::ONE;
    let four = Monomial::two(q(2, 1));
    let two = Monomial::two(q(1, 1));
    let not_stated = Err(AsymptoticsError::NotStated {
        family,
        quantity,
        side,
    });
    let quantity = match (family, quantity) {
        (RMo, Gap) => SsGap,
        (RMo, Ratio) => SsRatio,
        (RMo, _) => quantity,
        (_, SsGap) => Gap,
        (_, SsRatio) => Ratio,
        _ => quantity,
    };
    let e = match (family, quantity, side) {
        (Tl, Gap, Lower) => BoundExpr::new(Monomial::two(q(-5, 2)), four, q(-5, 2)),
        (Tl, Gap, Upper) => BoundExpr::new(Monomial::two(q(-5, 2)), four, q(-3, 2)),
        (Mo, Gap, Lower) => BoundExpr::new(
            one,
            Monomial {
                three: q(2, 1),
                ..one
            },
            Q::zero(),
        )
        .unknown(),
        (Mo, Gap, Upper) => BoundExpr::new(Monomial::two(q(-3, 2)), four, q(-3, 2)),
        (PRo, Gap, Lower) => BoundExpr::new(one.with_pi(q(-1, 2)), four, q(-1, 2)).damped(q(2, 1), q(1, 3)),
        (PRo, Gap, Upper) => BoundExpr::new(one.with_pi(q(-1, 2)), four, q(-1, 2)),
        (Tl, Ratio, Lower) => BoundExpr::new(Monomial::two(q(-7, 4)).with_pi(q(3, 4)), one, q(-7, 4)),
        (Tl, Ratio, Upper) => BoundExpr::new(Monomial::two(q(-3, 4)).with_pi(q(3, 4)), one, q(-3, 4)),
        (Mo, Ratio, Lower) => BoundExpr::new(
            Monomial {
                two: q(-2, 1),
                three: q(-3, 4),
                pi: q(1, 4),
                ..one
            },
            one,
            q(3, 4),
        )
        .unknown(),
        (Mo, Ratio, Upper) => BoundExpr::new(
            Monomial {
                two: q(1, 2),
                three: q(-3, 4),
                pi: q(1, 4),
                ..one
            },
            one,
            q(-3, 4),
        ),
        (PRo, Ratio, Lower) => {
            BoundExpr::new(Monomial::two(q(1, 4)).with_pi(q(-1, 4)), one, q(-1, 4)).damped(q(2, 1), q(1, 3))
        }
        (PRo, Ratio, Upper) => BoundExpr::new(Monomial::two(q(1, 4)).with_pi(q(-1, 4)), one, q(-1, 4)),
        (RTl, Gap, Lower) => {
            BoundExpr::new(Monomial::two(q(-1, 2)).with_pi(q(-1, 2)), two, q(-1, 2)).damped(q(1, 1), q(1, 3))
        }
        (RTl, Gap, Upper) => BoundExpr::new(Monomial::two(q(-1, 2)).with_pi(q(-1, 2)), two, q(-1, 2)),
        (RMo, SsGap, Lower) => BoundExpr::new(one.with_pi(q(-1, 2)), four, q(-3, 2)).damped(Q::zero(), q(1, 1)),
        (RMo, SsGap, Upper) => {
            BoundExpr::new(Monomial::two(q(5, 2)).with_pi(q(-1, 2)), four, q(-1, 1)).damped(Q::zero(), q(1, 1))
        }
        (RpRo, Gap, Lower) => {
            BoundExpr::new(Monomial::two(q(1, 2)).with_pi(q(-1, 2)), two, q(-1, 2)).damped(q(4, 1), q(16, 3))
        }
        (RpRo, Gap, Upper) => BoundExpr::new(Monomial::two(q(1, 2)).with_pi(q(-1, 2)), two, q(-1, 2)),
        (RTl, Ratio, Lower) => {
            BoundExpr::new(Monomial::two(q(1, 4)).with_pi(q(-1, 4)), one, q(-1, 4)).damped(q(1, 1), q(1, 3))
        }
        (RTl, Ratio, Upper) => BoundExpr::new(Monomial::two(q(1, 4)).with_pi(q(-1, 4)), one, q(-1, 4)),
        (RMo, SsRatio, Lower) => BoundExpr::new(one.with_pi(q(-1, 2)), one, q(-3, 2)).damped(Q::zero(), q(1, 1)),
        (RMo, SsRatio, Upper) => BoundExpr::new(Monomial::two(q(5, 2)).with_pi(q(-1, 2)), one, q(-1, 1)),
        (RpRo, Ratio, Upper) => BoundExpr::new(
            one,
            Monomial {
                two: q(3, 2),
                three: q(3, 4),
                five: q(-5, 4),
                ..one
            },
            Q::zero(),
        ),
        _ => return not_stated,
    };
    Ok(e)
}

/// Gap quantity with stated bounds for a family: plain gap, or the
/// semisimple one for `rMo`.
pub fn gap_quantity(family: Family) -> Quantity {
    if family == Family::RMo {
        Quantity::SsGap
    } else {
        Quantity::Gap
    }
}

pub fn ratio_quantity(family: Family) -> Quantity {
    if family == Family::RMo {
        Quantity::SsRatio
    } else {
        Quantity::Ratio
    }
}

/// `log10` of the right-cell size of a rigid family at `(k, j)`, through
/// log-Gamma; negative infinity for empty cells.
pub fn log10_right_cell(family: Family, n: usize, k: usize, j: usize) -> f64 {
    let (nf, kf, jf) = (n as f64, k as f64, j as f64);
    match family {
        Family::RTl => {
            if k % 2 == 1 || k < 2 || k > 2 * n {
                return f64::NEG_INFINITY;
            }
            log10_binomial(nf - 1.0, (2 * n - k) as f64 / 2.0)
        }
        Family::RpRo => log10_binomial(nf + jf, kf),
        Family::RMo => {
            if 1 + j + n <= k {
                return f64::NEG_INFINITY;
            }
            libm::log10(1.0 - jf + 2.0 * kf) + log10_gamma(1.0 + jf + 2.0 * nf)
                - log10_gamma(1.0 + jf - kf + nf)
                - log10_gamma(2.0 + kf + nf)
        }
        _ => f64::NEG_INFINITY,
    }
}

/// `log10` of the left-cell size of a rigid family at `(k, j)`.
pub fn log10_left_cell(family: Family, n: usize, k: usize, j: usize) -> f64 {
    let (nf, kf, jf) = (n as f64, k as f64, j as f64);
    match family {
        Family::RTl => {
            if k % 2 == 1 || k < 2 || k > 2 * n {
                return f64::NEG_INFINITY;
            }
            log10_binomial(nf, (2 * n - k) as f64 / 2.0)
        }
        Family::RpRo => log10_binomial(nf + jf, kf),
        Family::RMo => {
            if 1 + j + n <= k {
                return f64::NEG_INFINITY;
            }
            libm::log10(2.0 - jf + 2.0 * kf) + log10_gamma(2.0 + jf + 2.0 * nf)
                - log10_gamma(1.0 + jf - kf + nf)
                - log10_gamma(3.0 + kf + nf)
        }
        _ => f64::NEG_INFINITY,
    }
}

/// `log10` of the total size of the cells labelled `(k, j)`.
pub fn log10_layer(family: Family, n: usize, k: usize, j: usize) -> f64 {
    let seqs = match family {
        Family::RTl => 0.0,
        _ => log10_binomial(k as f64 + 1.0, 2.0 * j as f64 + 1.0),
    };
    seqs + log10_right_cell(family, n, k, j) + log10_left_cell(family, n, k, j)
}

fn rigid_labels(family: Family, k: usize) -> core::ops::RangeInclusive<usize> {
    match family {
        Family::RTl => k / 2..=k / 2,
        _ => 0..=k / 2,
    }
}

/// `log10` of the monoid size, summing layers in log space.
pub fn log10_monoid_size(family: Family, n: usize) -> f64 {
    if !family.is_rigid() {
        return log10_big(&combinat::monoid_size_formula(family, n));
    }
    log10_sum((0..=2 * n).filter(|&k| family.k_feasible(n, k)).flat_map(|k| {
        rigid_labels(family, k).map(move |j| log10_layer(family, n, k, j))
    }))
}

/// `log10` of the semisimple gap of the truncated rigid monoid, minimizing
/// over every retained apex.
pub fn log10_truncated_ss_gap(family: Family, n: usize) -> Result<f64, AsymptoticsError> {
    let w = truncation_window(family, n)?;
    let best = (w.lo..=w.hi)
        .filter(|&k| family.k_feasible(n, k))
        .flat_map(|k| rigid_labels(family, k).map(move |j| log10_right_cell(family, n, k, j)))
        .filter(|v| v.is_finite())
        .reduce(f64::min);
    best.ok_or(AsymptoticsError::Repr(ReprError::NoApex { family, n }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FigureId {
    IntroGap,
    IntroRatio,
    RtlTrunc,
    RmoTrunc,
    RmoBulk,
    RproTrunc,
    RproBulk,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::IntroGap,
        FigureId::IntroRatio,
        FigureId::RtlTrunc,
        FigureId::RmoTrunc,
        FigureId::RmoBulk,
        FigureId::RproTrunc,
        FigureId::RproBulk,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::IntroGap => "intro_gap",
            FigureId::IntroRatio => "intro_ratio",
            FigureId::RtlTrunc => "rtl_trunc",
            FigureId::RmoTrunc => "rmo_trunc",
            FigureId::RmoBulk => "rmo_bulk",
            FigureId::RproTrunc => "rpro_trunc",
            FigureId::RproBulk => "rpro_bulk",
        }
    }

    /// The size the per-`k` figures are drawn at.
    pub fn default_n(self) -> usize {
        match self {
            FigureId::RproTrunc | FigureId::RproBulk => 200,
            _ => 100,
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown figure `{s}`"))
    }
}

/// One point of a figure series; `x` is `n` or `k` depending on the figure.
#[derive(Clone, Debug, PartialEq)]
pub struct FigurePoint {
    pub figure: FigureId,
    pub series: String,
    pub x: usize,
    pub log10_value: f64,
}

/// Sizes used for the gap comparison figure.
pub fn intro_n_values() -> Vec<usize> {
    (10..=1000).step_by(10).collect()
}

/// Bound values on a list of sizes; unknown expressions are skipped.
pub fn bound_series(family: Family, quantity: Quantity, side: BoundSide, ns: &[usize]) -> Result<Vec<(usize, f64)>, AsymptoticsError> {
    let e = bound(family, quantity, side)?;
    ns.iter()
        .map(|&n| Ok((n, e.eval_log10(n as f64)?)))
        .collect()
}

/// Points of one figure, deterministic in order.
pub fn figure_points(id: FigureId, ns: &[usize]) -> Result<Vec<FigurePoint>, AsymptoticsError> {
    let mut out = Vec::new();
    let mut push = |series: String, x: usize, v: f64| {
        out.push(FigurePoint {
            figure: id,
            series,
            x,
            log10_value: v,
        })
    };
    match id {
        FigureId::IntroGap => {
            for family in Family::ALL {
                for side in [BoundSide::Lower, BoundSide::Upper] {
                    let e = bound(family, gap_quantity(family), side)?;
                    if !e.known {
                        continue;
                    }
                    for &n in ns {
                        push(format!("{}_{side}", family.tag()), n, e.eval_log10(n as f64)?);
                    }
                }
            }
            for family in [Family::RTl, Family::RMo, Family::RpRo] {
                for &n in ns {
                    push(format!("{}_exact", family.tag()), n, log10_truncated_ss_gap(family, n)?);
                }
            }
        }
        FigureId::IntroRatio => {
            let n = ns.first().copied().unwrap_or(100);
            for family in Family::ALL {
                let half = 0.5 * log10_monoid_size(family, n);
                let halves = if family.is_rigid() {
                    Vec::new()
                } else {
                    pivotal_half_counts(family, 2 * n)
                };
                for k in 0..=2 * n {
                    if !family.k_feasible(n, k) {
                        continue;
                    }
                    let dim = if family.is_rigid() {
                        log10_right_cell(family, n, k, 0)
                    } else {
                        log10_big(&halves[k])
                    };
                    if dim.is_finite() {
                        push(String::from(family.tag()), k, dim - half);
                    }
                }
            }
        }
        FigureId::RtlTrunc => {
            let n = ns.first().copied().unwrap_or(100);
            for k in (2..=2 * n).step_by(2) {
                push(String::from("dim"), k, log10_right_cell(Family::RTl, n, k, k / 2));
            }
            window_markers(Family::RTl, n, &mut push)?;
        }
        FigureId::RmoTrunc => {
            let n = ns.first().copied().unwrap_or(100);
            for k in 0..=n {
                push(String::from("right_cell_j0"), k, log10_right_cell(Family::RMo, n, k, 0));
            }
            window_markers(Family::RMo, n, &mut push)?;
        }
        FigureId::RmoBulk => {
            let n = ns.first().copied().unwrap_or(100);
            for k in 0..=2 * n {
                let v = log10_sum((0..=k / 2).map(|j| log10_layer(Family::RMo, n, k, j)));
                if v.is_finite() {
                    push(String::from("layer_size"), k, v);
                }
            }
            for k in 0..=n {
                push(String::from("right_cell_j0"), k, log10_right_cell(Family::RMo, n, k, 0));
            }
            window_markers(Family::RMo, n, &mut push)?;
        }
        FigureId::RproTrunc => {
            let n = ns.first().copied().unwrap_or(200);
            for k in 0..=n {
                push(String::from("right_cell_j0"), k, log10_binomial(n as f64, k as f64));
            }
            window_markers(Family::RpRo, n, &mut push)?;
        }
        FigureId::RproBulk => {
            let n = ns.first().copied().unwrap_or(200);
            for k in 0..=2 * n {
                let v = log10_sum((0..=k / 2).map(|j| log10_layer(Family::RpRo, n, k, j)));
                if v.is_finite() {
                    push(String::from("layer_size"), k, v);
                }
            }
            window_markers(Family::RpRo, n, &mut push)?;
        }
    }
    Ok(out)
}

/// Window edges as points at `log10 = 0`, so plots can draw them as rules.
fn window_markers(family: Family, n: usize, push: &mut impl FnMut(String, usize, f64)) -> Result<(), AsymptoticsError> {
    let w = truncation_window(family, n)?;
    push(String::from("window_lo"), w.lo, 0.0);
    push(String::from("window_hi"), w.hi, 0.0);
    Ok(())
}

/// Exact truncated semisimple gap of a rigid family at the window edges,
/// as a big integer; for checking the log-Gamma route.
pub fn exact_truncated_ss_gap(family: Family, n: usize) -> Result<BigInt, AsymptoticsError> {
    let opts = crate::repr::GapOptions {
        mode: crate::repr::GapMode::Semisimple,
        truncation: crate::repr::Truncation::Paper,
        denominator: crate::repr::Denominator::Truncated,
        ..Default::default()
    };
    Ok(crate::repr::repgap_semisimple(family, n, &opts)?.gap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rtl_gap_upper_at_100() {
        let up = bound(Family::RTl, Quantity::Gap, BoundSide::Upper).unwrap();
        let lo = bound(Family::RTl, Quantity::Gap, BoundSide::Lower).unwrap();
        let expect = 100.0 * libm::log10(2.0) - 1.0 - 0.5 * libm::log10(2.0 * PI);
        assert!((up.eval_log10(100.0).unwrap() - expect).abs() < 1e-9);
        assert!((up.eval_log10(100.0).unwrap() - 28.704).abs() < 5e-4);
        assert!((lo.eval_log10(100.0).unwrap() - 28.268).abs() < 5e-4);
    }

    #[test]
    fn unknown_and_missing() {
        let mo = bound(Family::Mo, Quantity::Gap, BoundSide::Lower).unwrap();
        assert!(!mo.known);
        assert!((mo.log10_base() - libm::log10(9.0)).abs() < 1e-12);
        assert_eq!(mo.eval_log10(10.0), Err(AsymptoticsError::UnknownPrefactor));
        assert!(matches!(
            bound(Family::RpRo, Quantity::Ratio, BoundSide::Lower),
            Err(AsymptoticsError::NotStated { .. })
        ));
    }

    #[test]
    fn trivial_expression() {
        let e = BoundExpr::new(Monomial::ONE, Monomial::ONE, Q::zero());
        assert_eq!(e.eval_log10(37.0).unwrap(), 0.0);
        assert_eq!(format!("{e}"), "1");
    }

    #[test]
    fn rpro_ratio_base() {
        let e = bound(Family::RpRo, Quantity::Ratio, BoundSide::Upper).unwrap();
        let b = libm::pow(10.0, e.log10_base());
        // 0.8618..., printed as roughly 0.87
        assert!(b < 1.0 && (b - 0.87).abs() < 0.01, "{b}");
    }

    #[test]
    fn display() {
        let e = bound(Family::RTl, Quantity::Gap, BoundSide::Lower).unwrap();
        assert_eq!(format!("{e}"), "2^(-1/2) * pi^(-1/2) * e^(-1-1/(3n)) * n^(-1/2) * 2^n");
        let e = bound(Family::RpRo, Quantity::Ratio, BoundSide::Upper).unwrap();
        assert_eq!(format!("{e}"), "(2^(3/2) * 3^(3/4) * 5^(-5/4))^n");
        let e = bound(Family::Mo, Quantity::Gap, BoundSide::Lower).unwrap();
        assert_eq!(format!("{e}"), "f(n) * 9^n");
    }

    #[test]
    fn log_route_matches_exact() {
        for family in [Family::RTl, Family::RMo, Family::RpRo] {
            for n in [1, 2, 5, 8, 13, 30, 64] {
                let exact = log10_big(&exact_truncated_ss_gap(family, n).unwrap());
                let approx = log10_truncated_ss_gap(family, n).unwrap();
                assert!((exact - approx).abs() < 1e-9, "{family} n={n}: {exact} vs {approx}");
            }
        }
    }

    #[test]
    fn log_size_matches_exact() {
        for family in Family::ALL {
            for n in 1..=6 {
                let exact = log10_big(&combinat::monoid_size_formula(family, n));
                assert!((log10_monoid_size(family, n) - exact).abs() < 1e-9);
            }
        }
    }
}
