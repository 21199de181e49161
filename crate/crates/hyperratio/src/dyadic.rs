//! Dyadic binary floating point with explicit, single-step rounding.
//!
//! A [`Dyadic`] stores `mantissa * 2^exp` exactly, so every value converts to
//! a [`Rat`] without loss; that exact bridge is what lets enclosure claims be
//! verified by rational comparison. Arithmetic either stays exact (`add`,
//! aligning shifts) or rounds once through [`Dyadic::round`] /
//! `round_quotient`, so the per-operation half-ulp error accounting used by
//! the series engine is rigorous: a nearest-rounded result differs from the
//! exact one by at most [`Dyadic::half_ulp`] of the target precision.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rat::{pow2, Rat};

/// Rounding mode for a single rounding step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Round to nearest, ties to even.
    Nearest,
    /// Round toward negative infinity.
    Floor,
    /// Round toward positive infinity.
    Ceil,
}

/// Exact dyadic rational `mant * 2^exp`, kept canonical (odd mantissa, or
/// zero with exponent zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }.canonical()
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::from(1), exp: 0 }
    }

    fn canonical(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// Exact conversion; never loses information.
    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as usize)
        } else {
            Rat::new(self.mant.clone(), BigInt::from(1) << (-self.exp) as usize)
        }
    }

    /// Position of the most significant bit: the value lies in
    /// `[2^(top-1), 2^top)` in magnitude.
    fn top_exp(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    /// Half of one unit in the last place of this value at precision `bits`:
    /// `2^(top - bits - 1)`. A nearest rounding to `bits` bits errs by at most
    /// this much. Zero for a zero value.
    pub fn half_ulp(&self, bits: u32) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        pow2(self.top_exp() - bits as i64 - 1)
    }

    /// Rounds to `bits` significant bits in one step.
    pub fn round(&self, bits: u32, mode: Round) -> Dyadic {
        let bl = self.mant.bits();
        if bl <= bits as u64 {
            return self.clone();
        }
        let s = (bl - bits as u64) as usize;
        let neg = self.mant.is_negative();
        let m = self.mant.abs();
        let q = &m >> s;
        let rem = m - (&q << s);
        let q = apply_rounding(q, rem, BigInt::from(1) << s, neg, mode);
        let signed = if neg { -q } else { q };
        Dyadic::new(signed, self.exp + s as i64)
    }

    /// Exact sum (no rounding).
    pub fn add(&self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &rhs.mant << (rhs.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    /// `self + rhs` rounded to `bits` bits in a single rounding step.
    pub fn add_round(&self, rhs: &Dyadic, bits: u32, mode: Round) -> Dyadic {
        self.add(rhs).round(bits, mode)
    }

    /// `self * r` for exact rational `r`, rounded to `bits` bits in a single
    /// rounding step.
    pub fn mul_rat_round(&self, r: &Rat, bits: u32, mode: Round) -> Dyadic {
        round_quotient(&self.mant * r.numer(), r.denom(), self.exp, bits, mode)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = sign_of(&self.mant);
        let sb = sign_of(&other.mant);
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare magnitudes via top bit, then aligned.
        let (ta, tb) = (self.top_exp(), other.top_exp());
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.mant.abs() << (self.exp - e) as usize;
            let b = other.mant.abs() << (other.exp - e) as usize;
            a.cmp(&b)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

fn sign_of(m: &BigInt) -> i8 {
    if m.is_zero() {
        0
    } else if m.is_negative() {
        -1
    } else {
        1
    }
}

/// Applies `mode` to a magnitude quotient `q` with remainder `rem` out of
/// `den` (`0 <= rem < den`); `neg` is the sign of the full value.
fn apply_rounding(mut q: BigInt, rem: BigInt, den: BigInt, neg: bool, mode: Round) -> BigInt {
    let bump = match mode {
        Round::Nearest => {
            let twice: BigInt = &rem << 1;
            match twice.cmp(&den) {
                Ordering::Greater => true,
                Ordering::Equal => num_integer::Integer::is_odd(&q),
                Ordering::Less => false,
            }
        }
        // Directed modes act on the signed value; on the magnitude this means
        // Ceil bumps positives and Floor bumps negatives.
        Round::Ceil => !neg && !rem.is_zero(),
        Round::Floor => neg && !rem.is_zero(),
    };
    if bump {
        q += 1;
    }
    q
}

/// Correctly rounds `num / den * 2^exp` (with `den > 0`) to `bits`
/// significant bits in one rounding step.
pub fn round_quotient(num: BigInt, den: &BigInt, exp: i64, bits: u32, mode: Round) -> Dyadic {
    debug_assert!(den.is_positive());
    if num.is_zero() {
        return Dyadic::zero();
    }
    let neg = num.is_negative();
    let n = num.abs();
    // Scale so the integer quotient carries at least `bits + 1` bits, then
    // fold surplus quotient bits into the remainder before rounding once.
    let k = n.bits() as i64 - den.bits() as i64;
    let t = bits as i64 + 1 - k;
    let (n, d) = if t >= 0 {
        (n << t as usize, den.clone())
    } else {
        (n, den << (-t) as usize)
    };
    let (q, r) = num_integer::Integer::div_rem(&n, &d);
    let qb = q.bits();
    let (qq, rem, full_den, s) = if qb <= bits as u64 {
        (q, r, d, 0usize)
    } else {
        let s = (qb - bits as u64) as usize;
        let qq = &q >> s;
        let low = q - (&qq << s);
        // Remainder of the s-bit fold is low + r/d out of 2^s.
        ((qq), (low * &d) + r, d << s, s)
    };
    let rounded = apply_rounding(qq, rem, full_den, neg, mode);
    let signed = if neg { -rounded } else { rounded };
    Dyadic::new(signed, exp - t + s as i64)
}

/// Smallest dyadic with a `bits`-bit mantissa that is `>= q`; an upper-bound
/// compactor for nonnegative error accumulators.
pub fn ceil_dyadic(q: &Rat, bits: u32) -> Rat {
    debug_assert!(!q.is_negative());
    if q.is_zero() {
        return Rat::zero();
    }
    round_quotient(q.numer().clone(), q.denom(), 0, bits, Round::Ceil).to_rat()
}

/// Dyadic from an exact rational, rounded to `bits` bits.
pub fn dyadic_from_rat(q: &Rat, bits: u32, mode: Round) -> Dyadic {
    round_quotient(q.numer().clone(), q.denom(), 0, bits, mode)
}
