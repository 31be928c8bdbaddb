//! Size limits applied to external input.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_dim: usize,
    pub max_group_order: usize,
    pub max_prime: u32,
    /// Enumeration cap for the von Neumann regularity search.
    pub vn_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: 256, max_group_order: 32, max_prime: 97, vn_cap: 1 << 16 }
    }
}

impl Limits {
    pub fn check(&self, p: u32, group_order: usize, dim: usize) -> Result<()> {
        if p > self.max_prime {
            return Err(Error::CapExceeded(format!("p = {p} exceeds {}", self.max_prime)));
        }
        if group_order > self.max_group_order {
            return Err(Error::CapExceeded(format!("|G| = {group_order} exceeds {}", self.max_group_order)));
        }
        if dim > self.max_dim {
            return Err(Error::CapExceeded(format!("dim = {dim} exceeds {}", self.max_dim)));
        }
        Ok(())
    }
}
