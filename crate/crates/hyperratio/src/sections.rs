//! Sections and remainders of the exponential series, their adjacent-remainder
//! ratio, the Ramanujan theta sequence, and rational bounds on `e^n`.
//!
//! Provides:
//! - [`section`]: `S_n(x) = sum_{k=0}^n x^k/k!`, computed exactly,
//! - [`remainder`]: `R_n(x) = e^x - S_n(x)` through the cancellation-free
//!   Kummer route `x^{n+1}/(n+1)! * 1F1(1; n+2; x)`,
//! - [`ratio_f`] / [`ratio_g`]: the adjacent-remainder ratio
//!   `f_n = R_{n-1} R_{n+1} / R_n^2 = (n+1)/(n+2) * g_n` with
//!   `g_n = 1F1(1;n+1;x) 1F1(1;n+3;x) / 1F1(1;n+2;x)^2`, regular at `x = 0`
//!   where it returns exactly `(n+1)/(n+2)` (resp. 1),
//! - [`ramanujan_theta`]: `theta(n) = n! (e^n/2 - S_{n-1}(n)) / n^n`, expected
//!   in `(1/3, 1/2)`, plus the word-for-word variant
//!   [`ramanujan_theta_literal`] that subtracts the remainder `R_{n-1}(n)`
//!   instead of the section (which lands outside the bounds; kept behind an
//!   explicit call/flag for comparison),
//! - [`e_power_bounds`]: the exact rational bracket
//!   `2n^n/(3 n!) + 2 S_{n-1}(n) < e^n < n^n/n! + 2 S_{n-1}(n)`, verified
//!   against an `e^n` enclosure.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rat::{rat, rat_u32, Rat};
use crate::series::{eval_1f1, exp_enclosure, factorial, Precision, SeriesValue};

pub use crate::series::exp_enclosure as exp;

/// Exact exponential section `S_n(x) = sum_{k=0}^n x^k / k!`.
///
/// The sum is a finite rational expression and is computed exactly, so the
/// reported `error_radius` is zero.
pub fn section(n: u32, x: &Rat) -> SeriesValue {
    let mut term = Rat::one();
    let mut sum = Rat::one();
    for k in 1..=n {
        term = term * x / rat_u32(k);
        sum = sum + &term;
    }
    SeriesValue::exact(sum, n + 1)
}

/// Remainder `R_n(x) = e^x - S_n(x)`, computed without cancellation as
/// `x^{n+1}/(n+1)! * 1F1(1; n+2; x)`. Requires `x >= 0`.
pub fn remainder(n: u32, x: &Rat, prec: &Precision) -> Result<SeriesValue> {
    if x.is_negative() {
        return Err(Error::domain("argument x must be nonnegative"));
    }
    let kummer = eval_1f1(&Rat::one(), &rat_u32(n + 2), x, prec)?;
    let scale = x.pow((n + 1) as i32) / Rat::from_integer(factorial(n + 1));
    Ok(SeriesValue {
        value: &scale * &kummer.value,
        error_radius: scale * &kummer.error_radius,
        terms_used: kummer.terms_used,
    })
}

/// Rational interval endpoints of a positive enclosure product/quotient
/// `num1 * num2 / den^2`, fully in exact arithmetic.
pub(crate) fn positive_triple_ratio(
    num1: &SeriesValue,
    num2: &SeriesValue,
    den: &SeriesValue,
) -> Result<(Rat, Rat)> {
    let (n1l, n1h) = (num1.lo(), num1.hi());
    let (n2l, n2h) = (num2.lo(), num2.hi());
    let (dl, dh) = (den.lo(), den.hi());
    if !n1l.is_positive() || !n2l.is_positive() || !dl.is_positive() {
        return Err(Error::precision(
            "enclosure endpoints not certifiably positive; raise working_bits",
        ));
    }
    let lo = n1l * n2l / (&dh * &dh);
    let hi = n1h * n2h / (&dl * &dl);
    Ok((lo, hi))
}

pub(crate) fn interval_to_value(lo: Rat, hi: Rat, terms_used: u32) -> SeriesValue {
    let two = rat(2, 1);
    SeriesValue {
        value: (&lo + &hi) / &two,
        error_radius: (hi - lo) / two,
        terms_used,
    }
}

/// Adjacent-remainder ratio `f_n(x) = R_{n-1} R_{n+1} / R_n^2`, evaluated
/// through the Kummer route `(n+1)/(n+2) * g_n(x)` so that `x = 0` is regular
/// and returns exactly `(n+1)/(n+2)`. Requires `n >= 1`.
pub fn ratio_f(n: u32, x: &Rat, prec: &Precision) -> Result<SeriesValue> {
    let g = ratio_g(n, x, prec)?;
    let scale = rat(i64::from(n) + 1, i64::from(n) + 2);
    Ok(SeriesValue {
        value: &scale * &g.value,
        error_radius: scale * &g.error_radius,
        terms_used: g.terms_used,
    })
}

/// Kummer-quotient factor `g_n(x) = F(n+1) F(n+3) / F(n+2)^2` with
/// `F(m) = 1F1(1; m; x)`; `g_n(0) = 1` exactly. Requires `n >= 1`.
pub fn ratio_g(n: u32, x: &Rat, prec: &Precision) -> Result<SeriesValue> {
    if n < 1 {
        return Err(Error::precondition("ratio index n must be at least 1"));
    }
    if x.is_negative() {
        return Err(Error::domain("argument x must be nonnegative"));
    }
    let one = Rat::one();
    let f1 = eval_1f1(&one, &rat_u32(n + 1), x, prec)?;
    let f3 = eval_1f1(&one, &rat_u32(n + 3), x, prec)?;
    let f2 = eval_1f1(&one, &rat_u32(n + 2), x, prec)?;
    let terms = f1.terms_used + f2.terms_used + f3.terms_used;
    let (lo, hi) = positive_triple_ratio(&f1, &f3, &f2)?;
    Ok(interval_to_value(lo, hi, terms))
}

/// Enclosure of the Ramanujan theta value with its `(1/3, 1/2)` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaResult {
    pub n: u32,
    /// Midpoint of the enclosure.
    pub theta: Rat,
    pub error_radius: Rat,
    /// True iff the whole enclosure lies inside the open interval
    /// `(1/3, 1/2)`; false iff it lies entirely outside. A straddling
    /// enclosure raises a precision error instead.
    pub in_bounds: bool,
}

fn theta_verdict(n: u32, lo: Rat, hi: Rat) -> Result<ThetaResult> {
    let third = rat(1, 3);
    let half = rat(1, 2);
    let in_bounds = if lo > third && hi < half {
        true
    } else if hi <= third || lo >= half {
        false
    } else {
        return Err(Error::precision(format!(
            "theta({n}) enclosure straddles a bound; raise working_bits"
        )));
    };
    let two = rat(2, 1);
    Ok(ThetaResult {
        n,
        theta: (&lo + &hi) / &two,
        error_radius: (hi - lo) / two,
        in_bounds,
    })
}

/// `theta(n) = n! (e^n / 2 - S_{n-1}(n)) / n^n` for `n >= 1`, from an `e^n`
/// enclosure and the exact section value.
pub fn ramanujan_theta(n: u32, prec: &Precision) -> Result<ThetaResult> {
    if n < 1 {
        return Err(Error::precondition("theta index n must be at least 1"));
    }
    let nn = rat_u32(n);
    let e_n = exp_enclosure(&nn, prec)?;
    let s = section(n - 1, &nn).value;
    let factor = Rat::from_integer(factorial(n)) / Rat::from_integer(BigInt::from(n).pow(n));
    let two = rat(2, 1);
    let lo = &factor * (e_n.lo() / &two - &s);
    let hi = &factor * (e_n.hi() / &two - &s);
    theta_verdict(n, lo, hi)
}

/// Word-for-word variant subtracting the remainder `R_{n-1}(n)` instead of
/// the section `S_{n-1}(n)`. Since `R = e^n - S`, this equals `-theta(n)` and
/// falls outside `(1/3, 1/2)`; exposed so the two readings can be compared.
pub fn ramanujan_theta_literal(n: u32, prec: &Precision) -> Result<ThetaResult> {
    if n < 1 {
        return Err(Error::precondition("theta index n must be at least 1"));
    }
    let nn = rat_u32(n);
    let e_n = exp_enclosure(&nn, prec)?;
    let r = remainder(n - 1, &nn, prec)?;
    let factor = Rat::from_integer(factorial(n)) / Rat::from_integer(BigInt::from(n).pow(n));
    let two = rat(2, 1);
    let lo = &factor * (e_n.lo() / &two - r.hi());
    let hi = &factor * (e_n.hi() / &two - r.lo());
    theta_verdict(n, lo, hi)
}

/// Exact rational bracket for `e^n` together with its verification status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EPowerBounds {
    pub n: u32,
    /// `2 n^n / (3 n!) + 2 S_{n-1}(n)`, exact.
    pub lower: Rat,
    /// `n^n / n! + 2 S_{n-1}(n)`, exact.
    pub upper: Rat,
    /// The `e^n` enclosure the bracket was checked against.
    pub e_enclosure: SeriesValue,
    /// True iff `lower < e^n < upper` is certified by the enclosure.
    pub verified: bool,
}

/// Computes the rational bracket `lower < e^n < upper` for `n >= 1` and
/// verifies it against an `e^n` enclosure. A straddling enclosure raises a
/// precision error.
pub fn e_power_bounds(n: u32, prec: &Precision) -> Result<EPowerBounds> {
    if n < 1 {
        return Err(Error::precondition("bound index n must be at least 1"));
    }
    let nn = rat_u32(n);
    let pow = Rat::from_integer(BigInt::from(n).pow(n));
    let fact = Rat::from_integer(factorial(n));
    let s2 = rat(2, 1) * section(n - 1, &nn).value;
    let lower = rat(2, 3) * &pow / &fact + &s2;
    let upper = &pow / &fact + &s2;
    let e_n = exp_enclosure(&nn, prec)?;
    let verified = if e_n.lo() > lower && e_n.hi() < upper {
        true
    } else if e_n.hi() <= lower || e_n.lo() >= upper {
        false
    } else {
        return Err(Error::precision(format!(
            "e^{n} enclosure straddles a rational bound; raise working_bits"
        )));
    };
    Ok(EPowerBounds { n, lower, upper, e_enclosure: e_n, verified })
}
