//! Operation budgets for exhaustive computations.

/// Default cap on the number of elementary steps an exhaustive computation
/// may plan to perform.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("planned operation count {needed} exceeds the budget {budget}")]
pub struct BudgetExceeded {
    pub needed: u128,
    pub budget: u64,
}

pub fn check_budget(needed: u128, budget: u64) -> Result<(), BudgetExceeded> {
    if needed > u128::from(budget) {
        Err(BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
