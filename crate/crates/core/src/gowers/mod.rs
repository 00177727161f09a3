//! Uniformity norms of complex functions on finite groups.
//!
//! A function system assigns one function to each vertex of `{0,1}^n`.
//! Its cubic product averages `∏_v J^{h(v)} f_v(c(v))` over the cubes
//! `c(v) = a_0 a_1^{v_1} ⋯ a_n^{v_n}`, where `J` is complex conjugation and
//! `h(v)` the number of ones in `v`.

mod distribution;
mod exact;
mod function;
mod monte_carlo;
mod product;
#[cfg(test)]
mod tests;

use crate::budget::BudgetExceeded;

pub use distribution::{cube_distribution, CubeDistribution, Variant};
pub use exact::{cubic_product_exact, cubic_product_general_exact, GaussianRational};
pub use function::{FunctionFile, FunctionSystem, GroupFunction};
pub use monte_carlo::{gowers_norm_mc, McEstimate, MC_CHUNK};
pub use product::{
    cubic_product, gowers_norm, gowers_norm_with_tolerance, l2_norm, product_cost, star, NormValue,
    SELF_PRODUCT_TOLERANCE,
};

#[derive(Debug, thiserror::Error)]
pub enum GowersError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("functions are defined on different groups")]
    MismatchedGroups,
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("value at element {index} is not finite")]
    NonFinite { index: usize },
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("self cubic product {re} + {im}i is not a nonnegative real")]
    NotNonnegative { re: f64, im: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid function file: {0}")]
    Format(String),
}

/// `(a_1, …, a_len)` over `0..size`, first digit fastest.
pub(crate) fn odometer(digits: &mut [usize], size: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < size {
            return true;
        }
        *d = 0;
    }
    false
}
