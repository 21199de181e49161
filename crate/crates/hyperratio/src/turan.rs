//! Certified grid verification of function ratios built from confluent and
//! generalized hypergeometric series: monotonicity along a grid, Turán-type
//! lower bounds (`value >= 1`), and two-sided rational bounds — all decided
//! from rigorous enclosures, never from approximate comparisons.
//!
//! A comparison counts only when the enclosures separate. Overlapping
//! enclosures are re-evaluated at escalated precision (up to
//! [`MAX_ESCALATIONS`] rounds, each doubling the working bits and squaring
//! the truncation target); what remains inconclusive afterwards is reported
//! as such for monotonicity, and raises a precision error for the bound
//! checks, which have no honest third verdict.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{kummer_condition_clauses, pfq_condition_clauses, ConditionReport};
use crate::rat::{decimal_string, Rat};
use crate::sections::{interval_to_value, positive_triple_ratio, ratio_f, ratio_g};
use crate::series::{eval_1f1, eval_pfq, HyperParams, Precision, SeriesValue};
use num_traits::{One, Signed, Zero};

/// Precision-escalation rounds attempted on inconclusive comparisons.
pub const MAX_ESCALATIONS: u32 = 4;

/// Scalar parameter triple for the shifted-ratio target
/// `h(x) = F(a; b-c; x) F(a; b+c; x) / F(a; b; x)^2`.
///
/// Construction enforces the evaluation domain: `a > 0` and both shifted
/// lower parameters positive (`b - c > 0`, `b + c > 0`, which implies
/// `b > 0`). The shift `c` may be negative; `h` only depends on `c^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcParams {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl AbcParams {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::domain(format!("upper parameter a = {a} must be positive")));
        }
        if !(&b - &c).is_positive() {
            return Err(Error::domain(format!(
                "shifted lower parameter b - c = {} must be positive",
                &b - &c
            )));
        }
        if !(&b + &c).is_positive() {
            return Err(Error::domain(format!(
                "shifted lower parameter b + c = {} must be positive",
                &b + &c
            )));
        }
        Ok(AbcParams { a, b, c })
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }
}

/// Vector parameter triple for the generalized shifted-ratio target
/// `h(x) = F(a; b-c; x) F(a; b+c; x) / F(a; b; x)^2` with `p` upper and `q`
/// lower parameters, shifts applied coordinatewise.
///
/// Construction enforces `1 <= p <= q + 1`, equal shift/lower lengths, all
/// upper parameters positive, and both shifted lower families positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcVecParams {
    a: Vec<Rat>,
    b: Vec<Rat>,
    c: Vec<Rat>,
}

impl AbcVecParams {
    pub fn new(a: Vec<Rat>, b: Vec<Rat>, c: Vec<Rat>) -> Result<Self> {
        if b.len() != c.len() {
            return Err(Error::length_mismatch(b.len(), c.len()));
        }
        if a.is_empty() {
            return Err(Error::precondition("at least one upper parameter required"));
        }
        if a.len() > b.len() + 1 {
            return Err(Error::precondition("p <= q + 1 required for a convergent series"));
        }
        if let Some(bad) = a.iter().find(|v| !v.is_positive()) {
            return Err(Error::domain(format!("upper parameter {bad} must be positive")));
        }
        for (bj, cj) in b.iter().zip(&c) {
            if !(bj - cj).is_positive() {
                return Err(Error::domain(format!(
                    "shifted lower parameter {bj} - {cj} must be positive"
                )));
            }
            if !(bj + cj).is_positive() {
                return Err(Error::domain(format!(
                    "shifted lower parameter {bj} + {cj} must be positive"
                )));
            }
        }
        Ok(AbcVecParams { a, b, c })
    }

    pub fn a(&self) -> &[Rat] {
        &self.a
    }

    pub fn b(&self) -> &[Rat] {
        &self.b
    }

    pub fn c(&self) -> &[Rat] {
        &self.c
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    /// True when the series has unit radius of convergence (`p = q + 1`), so
    /// grids must stay inside `[0, 1)`.
    pub fn needs_unit_interval(&self) -> bool {
        self.a.len() == self.b.len() + 1
    }
}

/// Hypothesis report for the scalar target's monotonicity statement.
pub fn check_kummer_conditions(params: &AbcParams) -> ConditionReport {
    kummer_condition_clauses(&params.a, &params.b, &params.c)
}

/// Hypothesis report for the vector target's monotonicity statement.
pub fn check_pfq_conditions(params: &AbcVecParams) -> ConditionReport {
    pfq_condition_clauses(&params.a, &params.b, &params.c)
        .expect("shift/lower lengths are validated at construction")
}

/// Certified enclosure of the scalar shifted ratio
/// `F(a; b-c; x) F(a; b+c; x) / F(a; b; x)^2` at `x >= 0`.
///
/// A zero shift returns exactly 1 with zero radius — the three series
/// coincide, and evaluating them separately would make the constant case
/// needlessly inconclusive under certified comparison.
pub fn h_kummer(params: &AbcParams, x: &Rat, prec: &Precision) -> Result<SeriesValue> {
    if params.c.is_zero() {
        return Ok(SeriesValue::exact(Rat::one(), 1));
    }
    let minus = eval_1f1(&params.a, &(&params.b - &params.c), x, prec)?;
    let plus = eval_1f1(&params.a, &(&params.b + &params.c), x, prec)?;
    let den = eval_1f1(&params.a, &params.b, x, prec)?;
    let terms = minus.terms_used + plus.terms_used + den.terms_used;
    let (lo, hi) = positive_triple_ratio(&minus, &plus, &den)?;
    Ok(interval_to_value(lo, hi, terms))
}

/// Certified enclosure of the vector shifted ratio at `x >= 0` (and `x < 1`
/// when `p = q + 1`). Zero shift vectors return exactly 1, as in
/// [`h_kummer`].
pub fn h_pfq(params: &AbcVecParams, x: &Rat, prec: &Precision) -> Result<SeriesValue> {
    if params.c.iter().all(Zero::is_zero) {
        return Ok(SeriesValue::exact(Rat::one(), 1));
    }
    let lower_with = |sign: i64| -> Vec<Rat> {
        params
            .b
            .iter()
            .zip(&params.c)
            .map(|(bj, cj)| if sign < 0 { bj - cj } else { bj + cj })
            .collect()
    };
    let minus_params = HyperParams::new(params.a.clone(), lower_with(-1))?;
    let plus_params = HyperParams::new(params.a.clone(), lower_with(1))?;
    let mid_params = HyperParams::new(params.a.clone(), params.b.clone())?;
    let minus = eval_pfq(&minus_params, x, prec)?;
    let plus = eval_pfq(&plus_params, x, prec)?;
    let den = eval_pfq(&mid_params, x, prec)?;
    let terms = minus.terms_used + plus.terms_used + den.terms_used;
    let (lo, hi) = positive_triple_ratio(&minus, &plus, &den)?;
    Ok(interval_to_value(lo, hi, terms))
}

/// What a grid check evaluates at each point.
#[derive(Clone)]
pub enum CheckTarget {
    /// Adjacent-remainder ratio `f_n` of the exponential series.
    RatioF(u32),
    /// Kummer-quotient factor `g_n` of the exponential series.
    RatioG(u32),
    /// Scalar shifted ratio `h` for a parameter triple.
    HKummer(AbcParams),
    /// Vector shifted ratio `h` for parameter vectors.
    HPfq(AbcVecParams),
    /// Synthetic target for exercising the engine in tests.
    #[cfg(test)]
    Custom(std::sync::Arc<dyn Fn(&Rat, &Precision) -> Result<SeriesValue> + Send + Sync>),
}

impl std::fmt::Debug for CheckTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CheckTarget({})", self.describe())
    }
}

impl CheckTarget {
    /// Human-readable target label used in reports.
    pub fn describe(&self) -> String {
        let join = |v: &[Rat]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match self {
            CheckTarget::RatioF(n) => format!("f_{n}"),
            CheckTarget::RatioG(n) => format!("g_{n}"),
            CheckTarget::HKummer(p) => format!("h(a = {}, b = {}, c = {})", p.a, p.b, p.c),
            CheckTarget::HPfq(p) => format!(
                "h_pq(a = [{}], b = [{}], c = [{}])",
                join(&p.a),
                join(&p.b),
                join(&p.c)
            ),
            #[cfg(test)]
            CheckTarget::Custom(_) => "custom".to_string(),
        }
    }

    /// Certified enclosure of the target at `x`.
    pub fn eval(&self, x: &Rat, prec: &Precision) -> Result<SeriesValue> {
        match self {
            CheckTarget::RatioF(n) => ratio_f(*n, x, prec),
            CheckTarget::RatioG(n) => ratio_g(*n, x, prec),
            CheckTarget::HKummer(p) => h_kummer(p, x, prec),
            CheckTarget::HPfq(p) => h_pfq(p, x, prec),
            #[cfg(test)]
            CheckTarget::Custom(f) => f(x, prec),
        }
    }
}

/// Two-sided rational bound to verify along a grid. The lower comparison is
/// non-strict (`value >= lower`, attained e.g. at `x = 0`); the upper
/// comparison is strict (`value < upper`, a limit never attained).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsSpec {
    pub lower: Rat,
    pub upper: Rat,
}

/// Outcome of a [`BoundsSpec`] verification: certified margins and verdicts
/// for each side. Margins are the worst certified slack — `min(lo_i - lower)`
/// for the lower side and `min(upper - hi_i)` for the upper side, where
/// `[lo_i, hi_i]` are the point enclosures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsOutcome {
    pub lower: Rat,
    pub lower_holds: bool,
    pub worst_lower_margin: Rat,
    pub upper: Rat,
    pub upper_holds: bool,
    pub worst_upper_margin: Rat,
}

/// Monotonicity verdict over the grid, from certified pair comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every consecutive pair certified nondecreasing.
    CertifiedNondecreasing,
    /// No certified decrease, but at least one pair stayed inconclusive.
    NoCertifiedDecrease,
    /// At least one pair certified decreasing.
    CertifiedDecrease,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedNondecreasing => "certified-nondecreasing",
            Verdict::NoCertifiedDecrease => "no-certified-decrease",
            Verdict::CertifiedDecrease => "certified-decrease",
        }
    }
}

/// Which checks a grid run performs (and which inconclusive situations
/// trigger precision escalation).
#[derive(Clone, Debug, Default)]
pub struct CheckSet {
    pub monotone: bool,
    pub turan: bool,
    pub bounds: Option<BoundsSpec>,
}

/// Full result of a grid run.
///
/// `nondecreasing` holds exactly when no consecutive difference is certified
/// negative, i.e. every difference satisfies
/// `value[i+1] - value[i] >= -(error_radius[i] + error_radius[i+1])`.
/// `worst_margin` is the smallest certified lower bound `lo[i+1] - hi[i]` on
/// a consecutive difference (nonnegative iff the verdict is
/// certified-nondecreasing), and `worst_location` the grid pair attaining
/// it. `turan_min` is the worst certified slack `min(lo[i] - 1)` of the
/// Turán comparison, always reported; `turan_holds` is only set when the
/// Turán check was requested.
#[derive(Clone, Debug)]
pub struct MonotoneReport {
    pub target: String,
    pub grid: Vec<Rat>,
    pub values: Vec<SeriesValue>,
    pub nondecreasing: bool,
    pub verdict: Verdict,
    pub worst_margin: Option<Rat>,
    pub worst_location: Option<(Rat, Rat)>,
    pub turan_min: Rat,
    pub turan_holds: Option<bool>,
    pub bounds: Option<BoundsOutcome>,
    pub escalations_used: u32,
}

impl MonotoneReport {
    /// JSON rendering with `digits` significant digits for all numeric
    /// fields; key order is deterministic (alphabetical).
    pub fn to_json(&self, digits: usize) -> Value {
        let dec = |q: &Rat| decimal_string(q, digits);
        json!({
            "target": self.target,
            "points": self.grid.iter().zip(&self.values).map(|(x, v)| json!({
                "x": dec(x),
                "value": dec(&v.value),
                "error_radius": dec(&v.error_radius),
                "terms_used": v.terms_used,
            })).collect::<Vec<_>>(),
            "nondecreasing": self.nondecreasing,
            "verdict": self.verdict.as_str(),
            "worst_margin": self.worst_margin.as_ref().map(|q| dec(q)),
            "worst_location": self.worst_location.as_ref().map(|(from, to)| json!({
                "from": dec(from),
                "to": dec(to),
            })),
            "turan_min": dec(&self.turan_min),
            "turan_holds": self.turan_holds,
            "bounds": self.bounds.as_ref().map(|b| json!({
                "lower": dec(&b.lower),
                "lower_holds": b.lower_holds,
                "worst_lower_margin": dec(&b.worst_lower_margin),
                "upper": dec(&b.upper),
                "upper_holds": b.upper_holds,
                "worst_upper_margin": dec(&b.worst_upper_margin),
            })),
            "escalations_used": self.escalations_used,
        })
    }

    /// CSV rendering of the evaluated points: header `x,value,error_radius`
    /// and one row per grid point.
    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::from("x,value,error_radius\n");
        for (x, v) in self.grid.iter().zip(&self.values) {
            out.push_str(&decimal_string(x, digits));
            out.push(',');
            out.push_str(&decimal_string(&v.value, digits));
            out.push(',');
            out.push_str(&decimal_string(&v.error_radius, digits));
            out.push('\n');
        }
        out
    }
}

/// Point indices whose enclosures leave a requested comparison undecided.
fn undecided_points(values: &[SeriesValue], checks: &CheckSet) -> Vec<usize> {
    let one = Rat::one();
    let mut flagged = std::collections::BTreeSet::new();
    if checks.monotone {
        for i in 0..values.len().saturating_sub(1) {
            let certified_nondec = values[i + 1].lo() >= values[i].hi();
            let certified_dec = values[i + 1].hi() < values[i].lo();
            if !certified_nondec && !certified_dec {
                flagged.insert(i);
                flagged.insert(i + 1);
            }
        }
    }
    if checks.turan {
        for (i, v) in values.iter().enumerate() {
            if v.lo() < one && v.hi() >= one {
                flagged.insert(i);
            }
        }
    }
    if let Some(spec) = &checks.bounds {
        for (i, v) in values.iter().enumerate() {
            let lower_undecided = v.lo() < spec.lower && v.hi() >= spec.lower;
            let upper_undecided = v.hi() >= spec.upper && v.lo() < spec.upper;
            if lower_undecided || upper_undecided {
                flagged.insert(i);
            }
        }
    }
    flagged.into_iter().collect()
}

/// Runs the requested checks for `target` over `grid` (strictly increasing,
/// nonempty), starting at precision `prec` and escalating on inconclusive
/// comparisons.
///
/// Monotonicity that stays inconclusive is reported
/// ([`Verdict::NoCertifiedDecrease`]); a Turán or bounds comparison that
/// stays inconclusive raises a precision error unless some other point
/// already certifies a violation.
pub fn run_checks(
    target: &CheckTarget,
    grid: &[Rat],
    prec: &Precision,
    checks: &CheckSet,
) -> Result<MonotoneReport> {
    if grid.is_empty() {
        return Err(Error::precondition("grid must contain at least one point"));
    }
    for w in grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::precondition("grid points must be strictly increasing"));
        }
    }

    let mut values: Vec<SeriesValue> =
        grid.iter().map(|x| target.eval(x, prec)).collect::<Result<_>>()?;
    let mut level = prec.clone();
    let mut escalations_used = 0;
    for _ in 0..MAX_ESCALATIONS {
        let flagged = undecided_points(&values, checks);
        if flagged.is_empty() {
            break;
        }
        level = level.escalated();
        escalations_used += 1;
        for i in flagged {
            values[i] = target.eval(&grid[i], &level)?;
        }
    }

    let one = Rat::one();
    let mut all_nondec = true;
    let mut any_dec = false;
    let mut worst_margin: Option<Rat> = None;
    let mut worst_location = None;
    for i in 0..values.len().saturating_sub(1) {
        let margin = values[i + 1].lo() - values[i].hi();
        if margin.is_negative() {
            all_nondec = false;
        }
        if values[i + 1].hi() < values[i].lo() {
            any_dec = true;
        }
        if worst_margin.as_ref().map_or(true, |m| margin < *m) {
            worst_margin = Some(margin);
            worst_location = Some((grid[i].clone(), grid[i + 1].clone()));
        }
    }
    let verdict = if any_dec {
        Verdict::CertifiedDecrease
    } else if all_nondec {
        Verdict::CertifiedNondecreasing
    } else {
        Verdict::NoCertifiedDecrease
    };

    let turan_min = values
        .iter()
        .map(|v| v.lo() - &one)
        .min()
        .expect("grid is nonempty");
    let turan_holds = if checks.turan {
        let any_fail = values.iter().any(|v| v.hi() < one);
        if any_fail {
            Some(false)
        } else if let Some(i) = values.iter().position(|v| v.lo() < one) {
            return Err(Error::precision(format!(
                "Turán comparison for {} at x = {} still inconclusive after {MAX_ESCALATIONS} escalations",
                target.describe(),
                grid[i]
            )));
        } else {
            Some(true)
        }
    } else {
        None
    };

    let bounds = match &checks.bounds {
        None => None,
        Some(spec) => {
            let lower_fail = values.iter().any(|v| v.hi() < spec.lower);
            if !lower_fail {
                if let Some(i) = values.iter().position(|v| v.lo() < spec.lower) {
                    return Err(Error::precision(format!(
                        "lower-bound comparison for {} at x = {} still inconclusive after {MAX_ESCALATIONS} escalations",
                        target.describe(),
                        grid[i]
                    )));
                }
            }
            let upper_fail = values.iter().any(|v| v.lo() >= spec.upper);
            if !upper_fail {
                if let Some(i) = values.iter().position(|v| v.hi() >= spec.upper) {
                    return Err(Error::precision(format!(
                        "upper-bound comparison for {} at x = {} still inconclusive after {MAX_ESCALATIONS} escalations",
                        target.describe(),
                        grid[i]
                    )));
                }
            }
            let worst_lower_margin = values
                .iter()
                .map(|v| v.lo() - &spec.lower)
                .min()
                .expect("grid is nonempty");
            let worst_upper_margin = values
                .iter()
                .map(|v| &spec.upper - v.hi())
                .min()
                .expect("grid is nonempty");
            Some(BoundsOutcome {
                lower: spec.lower.clone(),
                lower_holds: !lower_fail,
                worst_lower_margin,
                upper: spec.upper.clone(),
                upper_holds: !upper_fail,
                worst_upper_margin,
            })
        }
    };

    Ok(MonotoneReport {
        target: target.describe(),
        grid: grid.to_vec(),
        values,
        nondecreasing: !any_dec,
        verdict,
        worst_margin,
        worst_location,
        turan_min,
        turan_holds,
        bounds,
        escalations_used,
    })
}

/// Monotonicity-only grid check.
pub fn grid_monotone_check(
    target: &CheckTarget,
    grid: &[Rat],
    prec: &Precision,
) -> Result<MonotoneReport> {
    run_checks(target, grid, prec, &CheckSet { monotone: true, ..CheckSet::default() })
}

/// Turán-only grid check (`value >= 1` at every point).
pub fn turan_check(target: &CheckTarget, grid: &[Rat], prec: &Precision) -> Result<MonotoneReport> {
    run_checks(target, grid, prec, &CheckSet { turan: true, ..CheckSet::default() })
}

/// Two-sided-bounds-only grid check.
pub fn bounds_check(
    target: &CheckTarget,
    grid: &[Rat],
    prec: &Precision,
    bounds: BoundsSpec,
) -> Result<MonotoneReport> {
    run_checks(target, grid, prec, &CheckSet { bounds: Some(bounds), ..CheckSet::default() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int, parse_rat, pow2};
    use std::sync::Arc;

    fn prec() -> Precision {
        Precision::default()
    }

    fn grid(points: &[(i64, i64)]) -> Vec<Rat> {
        points.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn abc_params_validation() {
        assert!(AbcParams::new(rat_int(1), rat_int(3), rat_int(1)).is_ok());
        assert!(AbcParams::new(rat_int(1), rat_int(3), rat_int(-2)).is_ok());
        assert!(matches!(
            AbcParams::new(rat_int(0), rat_int(3), rat_int(1)),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            AbcParams::new(rat_int(1), rat_int(2), rat_int(2)),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            AbcParams::new(rat_int(1), rat_int(2), rat_int(-2)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn abc_vec_params_validation() {
        assert!(AbcVecParams::new(
            vec![rat_int(1)],
            vec![rat_int(2), rat_int(3)],
            vec![rat_int(1), rat_int(1)]
        )
        .is_ok());
        assert!(matches!(
            AbcVecParams::new(vec![rat_int(1)], vec![rat_int(2)], vec![]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            AbcVecParams::new(vec![], vec![rat_int(2)], vec![rat_int(1)]),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            AbcVecParams::new(
                vec![rat_int(1), rat_int(1), rat_int(1)],
                vec![rat_int(2)],
                vec![rat_int(1)]
            ),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            AbcVecParams::new(vec![rat_int(-1)], vec![rat_int(2)], vec![rat_int(1)]),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            AbcVecParams::new(vec![rat_int(1)], vec![rat_int(2)], vec![rat_int(2)]),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn condition_wrappers_mirror_clause_checkers() {
        let good = AbcParams::new(rat_int(1), rat_int(3), rat_int(1)).unwrap();
        assert!(check_kummer_conditions(&good).all_satisfied);
        let boundary = AbcParams::new(rat_int(1), rat_int(2), rat_int(1)).unwrap();
        let report = check_kummer_conditions(&boundary);
        assert_eq!(report.failed_clauses(), vec!["a < b - c"]);

        let vec_good = AbcVecParams::new(
            vec![rat_int(1)],
            vec![rat_int(2), rat_int(3)],
            vec![rat_int(1), rat_int(1)],
        )
        .unwrap();
        assert!(check_pfq_conditions(&vec_good).all_satisfied);
    }

    #[test]
    fn zero_shift_targets_are_exactly_one() {
        let scalar = AbcParams::new(rat(3, 2), rat_int(2), Rat::zero()).unwrap();
        let v = h_kummer(&scalar, &rat_int(40), &prec()).unwrap();
        assert_eq!((v.value, v.error_radius), (Rat::one(), Rat::zero()));

        let vector = AbcVecParams::new(
            vec![rat_int(2)],
            vec![rat_int(2), rat_int(5)],
            vec![Rat::zero(), Rat::zero()],
        )
        .unwrap();
        let v = h_pfq(&vector, &rat(1, 3), &prec()).unwrap();
        assert_eq!((v.value, v.error_radius), (Rat::one(), Rat::zero()));
    }

    #[test]
    fn h_kummer_at_zero_is_exact_one() {
        let params = AbcParams::new(rat(5, 4), rat_int(3), rat(1, 2)).unwrap();
        let v = h_kummer(&params, &Rat::zero(), &prec()).unwrap();
        assert_eq!(v.value, Rat::one());
        assert_eq!(v.error_radius, Rat::zero());
    }

    #[test]
    fn h_kummer_agrees_with_ratio_g_code_path() {
        // g_n is exactly h with a = 1, b = n + 2, c = 1: same three series,
        // same interval combination, so the enclosures match bit for bit.
        for n in [1u32, 2, 5, 9] {
            for x in [Rat::zero(), Rat::one(), rat_int(5), rat_int(20)] {
                let params =
                    AbcParams::new(Rat::one(), rat_int(i64::from(n) + 2), Rat::one()).unwrap();
                let h = h_kummer(&params, &x, &prec()).unwrap();
                let g = ratio_g(n, &x, &prec()).unwrap();
                assert_eq!(h, g, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn h_is_symmetric_in_shift_sign() {
        for (b, c, x) in [
            (rat_int(3), Rat::one(), rat_int(7)),
            (rat(5, 2), rat(3, 4), rat(1, 2)),
        ] {
            let plus = AbcParams::new(Rat::one(), b.clone(), c.clone()).unwrap();
            let minus = AbcParams::new(Rat::one(), b, -c).unwrap();
            let hp = h_kummer(&plus, &x, &prec()).unwrap();
            let hm = h_kummer(&minus, &x, &prec()).unwrap();
            assert_eq!(hp, hm);
        }
    }

    #[test]
    fn h_pfq_reduces_to_h_kummer_for_single_parameters() {
        let scalar = AbcParams::new(rat(3, 2), rat_int(4), Rat::one()).unwrap();
        let vector =
            AbcVecParams::new(vec![rat(3, 2)], vec![rat_int(4)], vec![Rat::one()]).unwrap();
        for x in [Rat::zero(), rat(1, 2), rat_int(3)] {
            assert_eq!(
                h_kummer(&scalar, &x, &prec()).unwrap(),
                h_pfq(&vector, &x, &prec()).unwrap()
            );
        }
    }

    #[test]
    fn monotone_check_certifies_increasing_remainder_ratio() {
        let g = grid(&[(0, 1), (1, 2), (1, 1), (2, 1), (4, 1)]);
        let report = grid_monotone_check(&CheckTarget::RatioF(1), &g, &prec()).unwrap();
        assert!(report.nondecreasing);
        assert_eq!(report.verdict, Verdict::CertifiedNondecreasing);
        let margin = report.worst_margin.unwrap();
        assert!(margin.is_positive());
        assert_eq!(report.escalations_used, 0);
        assert_eq!(report.values[0].value, rat(2, 3));
        assert_eq!(report.values.len(), 5);
    }

    #[test]
    fn turan_check_on_shifted_ratio_holds_with_zero_min() {
        // h(0) = 1 exactly, so the worst certified Turán slack is exactly 0.
        let params = AbcParams::new(rat(3, 2), rat_int(3), Rat::one()).unwrap();
        let g = grid(&[(0, 1), (1, 2), (1, 1), (2, 1)]);
        let report = turan_check(&CheckTarget::HKummer(params), &g, &prec()).unwrap();
        assert_eq!(report.turan_holds, Some(true));
        assert_eq!(report.turan_min, Rat::zero());
        assert!(report.nondecreasing);
    }

    #[test]
    fn bounds_check_on_remainder_ratio() {
        let g = grid(&[(0, 1), (1, 1), (5, 1), (20, 1)]);
        let spec = BoundsSpec { lower: rat(2, 3), upper: Rat::one() };
        let report = bounds_check(&CheckTarget::RatioF(1), &g, &prec(), spec).unwrap();
        let b = report.bounds.unwrap();
        assert!(b.lower_holds && b.upper_holds);
        // f_1(0) = 2/3 exactly: the lower bound is attained, margin 0.
        assert_eq!(b.worst_lower_margin, Rat::zero());
        assert!(b.worst_upper_margin.is_positive());
    }

    #[test]
    fn bounds_check_detects_certified_violation() {
        // Against lower bound 1 the ratio f_1 fails certifiably (f_1 < 1).
        let g = grid(&[(0, 1), (1, 1)]);
        let spec = BoundsSpec { lower: Rat::one(), upper: rat_int(2) };
        let report = bounds_check(&CheckTarget::RatioF(1), &g, &prec(), spec).unwrap();
        let b = report.bounds.unwrap();
        assert!(!b.lower_holds);
        assert!(b.upper_holds);
        assert!(b.worst_lower_margin.is_negative());
    }

    #[test]
    fn engine_reports_certified_decrease() {
        let target = CheckTarget::Custom(Arc::new(|x: &Rat, _: &Precision| {
            Ok(SeriesValue::exact(Rat::one() - x, 1))
        }));
        let g = grid(&[(0, 1), (1, 1), (2, 1)]);
        let report = grid_monotone_check(&target, &g, &prec()).unwrap();
        assert!(!report.nondecreasing);
        assert_eq!(report.verdict, Verdict::CertifiedDecrease);
        assert!(report.worst_margin.unwrap().is_negative());
        // Both pairs tie at margin -1; the first minimizer is kept.
        assert_eq!(report.worst_location, Some((rat_int(0), rat_int(1))));
    }

    #[test]
    fn engine_escalates_until_pairs_separate() {
        // Radius 2^-(bits/8) exceeds the 2^-40 spacing until the working
        // bits have doubled twice (128 -> 256 -> 512 bits gives radius
        // 2^-16 -> 2^-32 -> 2^-64), so exactly two escalations are needed.
        let target = CheckTarget::Custom(Arc::new(|x: &Rat, prec: &Precision| {
            Ok(SeriesValue {
                value: x.clone(),
                error_radius: pow2(-i64::from(prec.working_bits()) / 8),
                terms_used: 1,
            })
        }));
        let step = pow2(-40);
        let g = vec![Rat::zero(), step.clone(), &step * rat_int(2)];
        let report = grid_monotone_check(&target, &g, &prec()).unwrap();
        assert_eq!(report.verdict, Verdict::CertifiedNondecreasing);
        assert_eq!(report.escalations_used, 2);
    }

    #[test]
    fn engine_reports_residual_inconclusive_pairs_without_error() {
        // Constant value with a radius that never shrinks: monotonicity stays
        // inconclusive, which is a reportable verdict, not an error.
        let target = CheckTarget::Custom(Arc::new(|_: &Rat, _: &Precision| {
            Ok(SeriesValue { value: Rat::one(), error_radius: rat(1, 100), terms_used: 1 })
        }));
        let g = grid(&[(0, 1), (1, 1)]);
        let report = grid_monotone_check(&target, &g, &prec()).unwrap();
        assert_eq!(report.verdict, Verdict::NoCertifiedDecrease);
        assert!(report.nondecreasing);
        assert_eq!(report.escalations_used, MAX_ESCALATIONS);
    }

    #[test]
    fn engine_errors_on_persistent_turan_straddle() {
        let target = CheckTarget::Custom(Arc::new(|_: &Rat, _: &Precision| {
            Ok(SeriesValue { value: Rat::one(), error_radius: rat(1, 10), terms_used: 1 })
        }));
        let g = grid(&[(0, 1), (1, 1)]);
        let err = turan_check(&target, &g, &prec()).unwrap_err();
        assert!(matches!(err, Error::Precision { .. }));
    }

    #[test]
    fn engine_errors_on_persistent_bounds_straddle() {
        let target = CheckTarget::Custom(Arc::new(|_: &Rat, _: &Precision| {
            Ok(SeriesValue { value: Rat::one(), error_radius: rat(1, 10), terms_used: 1 })
        }));
        let g = grid(&[(0, 1), (1, 1)]);
        let spec = BoundsSpec { lower: Rat::one(), upper: rat_int(2) };
        let err = bounds_check(&target, &g, &prec(), spec).unwrap_err();
        assert!(matches!(err, Error::Precision { .. }));
    }

    #[test]
    fn engine_rejects_bad_grids() {
        let t = CheckTarget::RatioF(1);
        assert!(matches!(
            run_checks(&t, &[], &prec(), &CheckSet::default()),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            run_checks(&t, &grid(&[(1, 1), (1, 1)]), &prec(), &CheckSet::default()),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn report_json_and_csv_shapes() {
        let g = grid(&[(0, 1), (1, 1)]);
        let report = grid_monotone_check(&CheckTarget::RatioG(2), &g, &prec()).unwrap();
        let json = report.to_json(12);
        assert_eq!(json["target"], "g_2");
        assert_eq!(json["verdict"], "certified-nondecreasing");
        assert_eq!(json["points"][0]["value"], "1");
        assert!(json["turan_holds"].is_null());
        assert_eq!(json["escalations_used"], 0);

        let csv = report.to_csv(12);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,value,error_radius");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("0,"));
    }

    #[test]
    fn h_pfq_near_unit_edge_stays_certified() {
        // p = q + 1 target close to the convergence edge still produces a
        // usable enclosure (many terms, but certified).
        let params = AbcVecParams::new(
            vec![Rat::one(), rat(5, 2)],
            vec![rat_int(2)],
            vec![rat(1, 2)],
        )
        .unwrap();
        let x = parse_rat("0.9").unwrap();
        let v = h_pfq(&params, &x, &prec()).unwrap();
        assert!(v.error_radius < rat(1, 10).pow(20));
        assert!(v.value.is_positive());
    }
}
