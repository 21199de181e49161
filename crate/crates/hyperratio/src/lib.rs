//! Exact-rational certificates and rigorously enclosed evaluation for ratios
//! of generalized hypergeometric series.
//!
//! The crate has two arithmetic regimes, deliberately kept separate:
//!
//! - **Exact certificates** ([`kernel`]): coefficient-level monotonicity
//!   statements (prefix-sum ratios, Cauchy-product coefficient ratios, and
//!   the `w`-weight comparisons behind them) proved by exact rational
//!   comparison. A certificate either holds, or reports the first violating
//!   comparison so it can be re-checked independently.
//! - **Rigorous enclosures** ([`series`], [`sections`], [`turan`]): floating
//!   summation at a configurable binary working precision where every
//!   rounding step and the truncation tail are charged to an `error_radius`.
//!   The reported value and radius are exact rationals, so "the truth lies in
//!   `[value - r, value + r]`" is an exactly checkable claim.
//!
//! Concrete scalar aliases live at the crate root: [`Rat`] for exact
//! rationals; the low-level coefficient kernels ([`series::pochhammer`],
//! [`kernel::cauchy_product`]) are generic over num-traits scalars.

pub mod dyadic;
pub mod error;
pub mod grid;
pub mod kernel;
pub mod rat;
pub mod sections;
pub mod series;
pub mod turan;

pub use error::{Error, Result};
pub use grid::GridSpec;
pub use kernel::{certify_coeff_monotone, CoeffMonotoneCertificate};
pub use rat::{decimal_string, parse_rat, rat_string, Rat};
pub use sections::{e_power_bounds, ramanujan_theta, ratio_f, ratio_g, remainder, section};
pub use series::{
    coeff, eval_1f1, eval_pfq, exp_enclosure, pochhammer, term_ratio, HyperParams, Precision,
    SeriesValue,
};
pub use turan::{
    bounds_check, grid_monotone_check, h_kummer, h_pfq, run_checks, turan_check, AbcParams,
    AbcVecParams, CheckSet, CheckTarget, MonotoneReport,
};
