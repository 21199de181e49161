//! Evaluation grids over an interval of the x-axis.
//!
//! A [`GridSpec`] is parsed from the compact form `min:max:points` with an
//! optional `@log` suffix and builds a strictly increasing sequence of exact
//! rational abscissae; [`parse_points`] additionally accepts an explicit
//! comma-separated point list. Linear grids are equispaced. Logarithmic grids place
//! points evenly in octave position (piecewise linearly between successive
//! doublings), which keeps every abscissa rational while concentrating points
//! near the low end of the range; a grid starting at 0 keeps the origin and
//! spreads the remaining points over `[max / 2^16, max]`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{parse_rat, rat_u32, Rat};

/// Number of octaves spanned below `max` when a logarithmic grid starts at 0.
const ZERO_ANCHOR_OCTAVES: u32 = 16;

/// A parsed grid description: endpoints, point count, and spacing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub min: Rat,
    pub max: Rat,
    pub points: usize,
    pub log: bool,
}

impl GridSpec {
    /// Validates `min < max` and `points >= 2`.
    pub fn new(min: Rat, max: Rat, points: usize, log: bool) -> Result<Self> {
        if min >= max {
            return Err(Error::precondition("grid requires min < max"));
        }
        if points < 2 {
            return Err(Error::precondition("grid requires points >= 2"));
        }
        if min.is_negative() {
            return Err(Error::precondition("grid minimum must be nonnegative"));
        }
        Ok(GridSpec { min, max, points, log })
    }

    /// Parses `"min:max:points"` or `"min:max:points@log"`, with rational or
    /// exact-decimal endpoints.
    pub fn parse(input: &str) -> Result<Self> {
        let (body, log) = match input.split_once('@') {
            None => (input, false),
            Some((body, "log")) => (body, true),
            Some((_, other)) => {
                return Err(Error::parse(
                    input,
                    format!("unknown grid spacing '@{other}' (only '@log' is recognized)"),
                ));
            }
        };
        let parts: Vec<&str> = body.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::parse(input, "expected min:max:points[@log]"));
        }
        let min = parse_rat(parts[0])?;
        let max = parse_rat(parts[1])?;
        let points: usize = parts[2]
            .parse()
            .map_err(|_| Error::parse(parts[2], "point count must be a positive integer"))?;
        GridSpec::new(min, max, points, log)
    }

    /// The strictly increasing abscissa sequence described by this spec.
    pub fn build(&self) -> Vec<Rat> {
        if self.log {
            if self.min.is_zero() {
                let mut grid = vec![Rat::zero()];
                let lo = &self.max / Rat::from_integer(num_bigint::BigInt::from(2u8).pow(ZERO_ANCHOR_OCTAVES));
                grid.extend(octave_grid(&lo, &self.max, self.points - 1));
                grid
            } else {
                octave_grid(&self.min, &self.max, self.points)
            }
        } else {
            let span = &self.max - &self.min;
            let denom = rat_u32((self.points - 1) as u32);
            (0..self.points)
                .map(|i| &self.min + &span * rat_u32(i as u32) / &denom)
                .collect()
        }
    }
}

/// Parses a grid argument in either form: the compact `min:max:points[@log]`
/// spec, or an explicit comma-separated list of strictly increasing
/// nonnegative rationals (at least two), e.g. `0,1,2,5,10`.
pub fn parse_points(input: &str) -> Result<Vec<Rat>> {
    if !input.contains(',') {
        return Ok(GridSpec::parse(input)?.build());
    }
    let points: Vec<Rat> =
        input.split(',').map(|part| parse_rat(part.trim())).collect::<Result<_>>()?;
    if points.len() < 2 {
        return Err(Error::precondition("explicit grid requires at least two points"));
    }
    if points[0].is_negative() {
        return Err(Error::precondition("grid minimum must be nonnegative"));
    }
    if points.windows(2).any(|pair| pair[0] >= pair[1]) {
        return Err(Error::precondition("explicit grid must be strictly increasing"));
    }
    Ok(points)
}

/// `points` abscissae from `lo` to `hi` (inclusive), evenly spaced in octave
/// position: anchors sit at `lo, 2 lo, 4 lo, ..., hi` and positions between
/// adjacent anchors interpolate linearly. Requires `0 < lo < hi`.
fn octave_grid(lo: &Rat, hi: &Rat, points: usize) -> Vec<Rat> {
    debug_assert!(lo.is_positive() && lo < hi);
    if points == 1 {
        return vec![hi.clone()];
    }
    let mut anchors = vec![lo.clone()];
    loop {
        let doubled = anchors.last().unwrap() * rat_u32(2);
        if doubled >= *hi {
            break;
        }
        anchors.push(doubled);
    }
    anchors.push(hi.clone());
    let segments = rat_u32((anchors.len() - 1) as u32);
    let steps = rat_u32((points - 1) as u32);
    (0..points)
        .map(|i| {
            // Position in anchor-index space, in [0, segments].
            let pos = &segments * rat_u32(i as u32) / &steps;
            let seg = (pos.to_integer().try_into().unwrap_or(usize::MAX)).min(anchors.len() - 2);
            let frac = &pos - rat_u32(seg as u32);
            &anchors[seg] + (&anchors[seg + 1] - &anchors[seg]) * frac
        })
        .collect()
}
