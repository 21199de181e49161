//! Generalized hypergeometric series: exact coefficient data and rigorously
//! enclosed evaluation.
//!
//! Provides:
//! - [`HyperParams`]: validated upper/lower parameter vectors `(a; b)`,
//! - [`pochhammer`]: the rising factorial, generic over the scalar type,
//! - [`coeff`] / [`term_ratio`]: exact rational series coefficients and
//!   consecutive term ratios,
//! - [`eval_pfq`] / [`eval_1f1`]: summation at a configurable binary working
//!   precision, returning a [`SeriesValue`] whose `error_radius` rigorously
//!   bounds both the truncation tail and every rounding step.
//!
//! The series is `sum_n coeff(n) x^n` with
//! `coeff(n) = prod_i (a_i)_n / (prod_j (b_j)_n * n!)`. For `p <= q` it is
//! entire; for `p = q + 1` it converges on `|x| < 1`. Evaluation is restricted
//! to the positive-parameter regime (`a_i > 0`, `b_j > 0`, `x >= 0`) where all
//! terms are positive; exact certificate routines elsewhere in the crate
//! handle sign-varying coefficient sequences.

use std::ops::{Add, Mul};

use num_traits::{One, Signed, Zero};

use crate::dyadic::{ceil_dyadic, Dyadic, Round};
use crate::error::{Error, Result};
use crate::rat::{ceil_u64, is_nonpositive_integer, pow2, rat_u32, Rat};

/// Working precision and stopping target for series evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Precision {
    working_bits: u32,
    target_rel_error: Rat,
}

impl Precision {
    pub const DEFAULT_BITS: u32 = 128;

    /// `working_bits >= 53` and `0 < target_rel_error < 1`.
    pub fn new(working_bits: u32, target_rel_error: Rat) -> Result<Self> {
        if working_bits < 53 {
            return Err(Error::precondition("working_bits must be at least 53"));
        }
        if !(target_rel_error > Rat::zero() && target_rel_error < Rat::one()) {
            return Err(Error::precondition("target_rel_error must lie in (0, 1)"));
        }
        Ok(Precision { working_bits, target_rel_error })
    }

    /// Default target of `1e-30` at the given bit count.
    pub fn with_bits(working_bits: u32) -> Result<Self> {
        Precision::new(working_bits, Precision::default_target())
    }

    /// `1e-30`, the default stopping target.
    pub fn default_target() -> Rat {
        Rat::new(1.into(), num_bigint::BigInt::from(10u8).pow(30))
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn target_rel_error(&self) -> &Rat {
        &self.target_rel_error
    }

    /// Doubled working precision with a squared stopping target. Escalation
    /// exists to shrink enclosures that are too coarse to separate; leaving
    /// the stopping target alone would leave the truncation part of the
    /// radius unchanged, so both knobs tighten together.
    pub fn escalated(&self) -> Precision {
        Precision {
            working_bits: self.working_bits.saturating_mul(2),
            target_rel_error: self.target_rel_error.clone() * &self.target_rel_error,
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::with_bits(Precision::DEFAULT_BITS).expect("default precision is valid")
    }
}

/// Parameter vectors of a generalized hypergeometric series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperParams {
    a: Vec<Rat>,
    b: Vec<Rat>,
}

impl HyperParams {
    /// Requires `1 <= p <= q + 1` and rejects lower parameters that are
    /// nonpositive integers (those annihilate a `(b_j)_n` factor).
    pub fn new(a: Vec<Rat>, b: Vec<Rat>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::precondition("at least one upper parameter required"));
        }
        if a.len() > b.len() + 1 {
            return Err(Error::precondition("p <= q + 1 required for a convergent series"));
        }
        if let Some(bad) = b.iter().find(|v| is_nonpositive_integer(v)) {
            return Err(Error::domain(format!(
                "lower parameter {bad} is a nonpositive integer (zero Pochhammer factor)"
            )));
        }
        Ok(HyperParams { a, b })
    }

    pub fn upper(&self) -> &[Rat] {
        &self.a
    }

    pub fn lower(&self) -> &[Rat] {
        &self.b
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }
}

/// Evaluation result with a rigorous error enclosure: the true value lies in
/// `[value - error_radius, value + error_radius]`. Both fields are exact
/// rationals (the computed value is a dyadic float, hence exactly
/// representable), so enclosure claims can be checked exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesValue {
    pub value: Rat,
    pub error_radius: Rat,
    pub terms_used: u32,
}

impl SeriesValue {
    pub fn exact(value: Rat, terms_used: u32) -> Self {
        SeriesValue { value, error_radius: Rat::zero(), terms_used }
    }

    /// Lower endpoint of the enclosure.
    pub fn lo(&self) -> Rat {
        &self.value - &self.error_radius
    }

    /// Upper endpoint of the enclosure.
    pub fn hi(&self) -> Rat {
        &self.value + &self.error_radius
    }
}

/// Rising factorial `(z)_n = z (z+1) ... (z+n-1)`, with `(z)_0 = 1`.
/// Generic over the scalar type; exact for rational `z`.
pub fn pochhammer<T>(z: &T, n: u32) -> T
where
    T: Clone + One + Add<Output = T> + Mul<Output = T>,
{
    let mut acc = T::one();
    let mut factor = z.clone();
    for i in 0..n {
        acc = acc * factor.clone();
        if i + 1 < n {
            factor = factor + T::one();
        }
    }
    acc
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> num_bigint::BigInt {
    (1..=u64::from(n)).map(num_bigint::BigInt::from).product()
}

/// Exact rational series coefficient
/// `prod_i (a_i)_n / (prod_j (b_j)_n * n!)`.
pub fn coeff(params: &HyperParams, n: u32) -> Rat {
    let mut num = Rat::one();
    for a in params.upper() {
        num = num * pochhammer(a, n);
    }
    let mut den = Rat::from_integer(factorial(n));
    for b in params.lower() {
        den = den * pochhammer(b, n);
    }
    num / den
}

/// Exact consecutive term ratio `t_{n+1} / t_n` at argument `x`:
/// `x * prod_i (a_i + n) / (prod_j (b_j + n) * (n + 1))`.
pub fn term_ratio(params: &HyperParams, x: &Rat, n: u32) -> Rat {
    let nn = rat_u32(n);
    let mut r = x.clone();
    for a in params.upper() {
        r = r * (a + &nn);
    }
    for b in params.lower() {
        r = r / (b + &nn);
    }
    r / rat_u32(n + 1)
}

/// Factor-wise pairing used by the tail bound: each upper parameter is paired
/// with one denominator shift (the lower parameters plus the implicit `n + 1`
/// slot), in descending order on both sides.
struct TailBounder {
    /// (a_i, d_i) pairs; the factor `(a_i + m)/(d_i + m)` is bounded over
    /// `m >= N` by 1 when `a_i <= d_i` and by its value at `m = N` otherwise.
    pairs: Vec<(Rat, Rat)>,
    /// Unpaired denominator shifts; each contributes `1/(d_j + N)`.
    leftover: Vec<Rat>,
    x: Rat,
}

impl TailBounder {
    fn new(params: &HyperParams, x: &Rat) -> Self {
        let mut a = params.upper().to_vec();
        let mut d = params.lower().to_vec();
        d.push(Rat::one()); // the (n+1)! shift
        a.sort_by(|u, v| v.cmp(u));
        d.sort_by(|u, v| v.cmp(u));
        let leftover = d.split_off(a.len());
        let pairs = a.into_iter().zip(d).collect();
        TailBounder { pairs, leftover, x: x.clone() }
    }

    /// Exact rational `r_sup(n)` with `term_ratio(m) <= r_sup(n)` for all
    /// `m >= n`: paired factors are monotone toward 1, so each is bounded by
    /// `max(1, (a_i + n)/(d_i + n))`; unpaired denominators are decreasing.
    fn ratio_sup(&self, n: u32) -> Rat {
        let nn = rat_u32(n);
        let mut r = self.x.clone();
        for (a, d) in &self.pairs {
            if a > d {
                r = r * (a + &nn) / (d + &nn);
            }
        }
        for d in &self.leftover {
            r = r / (d + &nn);
        }
        r
    }
}

/// Evaluates `pFq(a; b; x)` at working precision, returning a rigorous
/// enclosure.
///
/// Requires `x >= 0`, positive parameters, and `x < 1` when `p = q + 1`.
/// Summation stops once a proven geometric bound on the tail drops below
/// `target_rel_error` times a certified lower bound on the partial sum, so
/// the reported radius is a relative bound; every floating operation
/// contributes its half-ulp to `error_radius`. Fails with a precision error
/// if the tail criterion is not met within `10 * ceil(x) + 10000` terms.
pub fn eval_pfq(params: &HyperParams, x: &Rat, prec: &Precision) -> Result<SeriesValue> {
    if x.is_negative() {
        return Err(Error::domain("argument x must be nonnegative"));
    }
    if let Some(bad) = params.upper().iter().find(|v| !v.is_positive()) {
        return Err(Error::domain(format!(
            "upper parameter {bad} must be positive in evaluation"
        )));
    }
    if let Some(bad) = params.lower().iter().find(|v| !v.is_positive()) {
        return Err(Error::domain(format!(
            "lower parameter {bad} must be positive in evaluation"
        )));
    }
    if params.p() == params.q() + 1 && *x >= Rat::one() {
        return Err(Error::domain("argument x must satisfy x < 1 when p = q + 1"));
    }

    let bits = prec.working_bits();
    let target = prec.target_rel_error();
    let cap = 10 * ceil_u64(x) + 10_000;
    let bounder = TailBounder::new(params, x);

    // Invariants maintained per summed index n:
    //   t       ~ floating term t_n, with |t - true t_n| <= e_term
    //   s       ~ floating partial sum over 0..=n, drift bounded by err
    //   t_hat   >= true t_n and t_low <= true t_n (64-bit directed chains)
    //   s_low   <= true partial sum (64-bit downward chain)
    // The directed chains are independent of `bits`, so the stopping index
    // does not depend on the working precision.
    let mut t = Dyadic::one();
    let mut s = Dyadic::one();
    let mut t_hat = Dyadic::one();
    let mut t_low = Dyadic::one();
    let mut s_low = Dyadic::one();
    let mut e_term = Rat::zero();
    let mut err = Rat::zero();
    let mut n: u64 = 0;

    loop {
        if n >= u64::from(u32::MAX) {
            return Err(Error::precision("term index exceeded supported range"));
        }
        let r = term_ratio(params, x, n as u32);
        let t_hat_next = t_hat.mul_rat_round(&r, 64, Round::Ceil);
        let r_sup = bounder.ratio_sup(n as u32 + 1);
        if r_sup < Rat::one() {
            let tail = t_hat_next.to_rat() / (Rat::one() - &r_sup);
            if tail <= target * s_low.to_rat() {
                let radius = ceil_dyadic(&(err + tail), bits);
                return Ok(SeriesValue {
                    value: s.to_rat(),
                    error_radius: radius,
                    terms_used: (n + 1) as u32,
                });
            }
        }
        if n + 1 > cap {
            return Err(Error::precision(format!(
                "tail-bound criterion not met within {cap} terms (x = {x})"
            )));
        }
        t = t.mul_rat_round(&r, bits, Round::Nearest);
        e_term = ceil_dyadic(&(e_term * &r + t.half_ulp(bits)), 64);
        s = s.add_round(&t, bits, Round::Nearest);
        err = ceil_dyadic(&(err + &e_term + s.half_ulp(bits)), 64);
        t_low = t_low.mul_rat_round(&r, 64, Round::Floor);
        s_low = s_low.add_round(&t_low, 64, Round::Floor);
        t_hat = t_hat_next;
        n += 1;
    }
}

/// Kummer confluent function `1F1(a; b; x)` as a special case.
pub fn eval_1f1(a: &Rat, b: &Rat, x: &Rat, prec: &Precision) -> Result<SeriesValue> {
    eval_pfq(&HyperParams::new(vec![a.clone()], vec![b.clone()])?, x, prec)
}

/// Enclosure of `exp(x)` via the `a = b` degenerate series (all Pochhammer
/// factors cancel, leaving `sum x^n / n!`).
pub fn exp_enclosure(x: &Rat, prec: &Precision) -> Result<SeriesValue> {
    eval_1f1(&Rat::one(), &Rat::one(), x, prec)
}

/// Half-ulp of 1.0 at `bits`; handy scale for tests.
pub fn unit_roundoff(bits: u32) -> Rat {
    pow2(-(i64::from(bits)) - 1)
}
