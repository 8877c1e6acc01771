use crate::{Error, Result};

/// Upper bound on the number of items any single exhaustive routine may
/// enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard(u64);

impl Guard {
    pub const DEFAULT_BOUND: u64 = 1_000_000;

    pub fn new(bound: u64) -> Self {
        Guard(bound)
    }

    pub fn bound(self) -> u64 {
        self.0
    }

    pub fn check(self, what: impl Into<String>, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            return Err(Error::GuardExceeded {
                what: what.into(),
                needed,
                bound: self.0,
            });
        }
        Ok(())
    }

    pub fn allows(self, needed: u128) -> bool {
        needed <= self.0 as u128
    }
}

impl Default for Guard {
    fn default() -> Self {
        Guard(Self::DEFAULT_BOUND)
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub fn checked_pow(base: u64, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(base as u128) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}
