use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 4096;
pub const DEFAULT_ENUMERATION_CAP: usize = 256;
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// Size and effort caps shared by every construction and search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest order any constructed rng may have.
    pub order_cap: usize,
    /// Largest ambient order for which ideal lattices are enumerated.
    pub enumeration_cap: usize,
    /// Maximum number of backtracking nodes per homomorphism search.
    pub search_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: DEFAULT_ORDER_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

impl Limits {
    pub fn check_order(&self, requested: u128) -> Result<usize> {
        if requested > self.order_cap as u128 {
            return Err(Error::OrderCapExceeded {
                requested,
                cap: self.order_cap,
            });
        }
        Ok(requested as usize)
    }

    pub fn check_enumeration(&self, order: usize) -> Result<()> {
        if order > self.enumeration_cap {
            return Err(Error::OrderCapExceeded {
                requested: order as u128,
                cap: self.enumeration_cap,
            });
        }
        Ok(())
    }
}
