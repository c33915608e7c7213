//! Fixed inputs shared by the kernel benchmarks.

use sgflop::{Ambient, Partition};

/// `(k, k-1, ..., 1)`.
pub fn staircase(k: u32) -> Partition {
    Partition::new((1..=k).rev().collect()).unwrap()
}

/// `k x k` square.
pub fn square(k: u32) -> Partition {
    Partition::new(vec![k; k as usize]).unwrap()
}

pub fn ambient(r: usize, n: usize) -> Ambient {
    Ambient::new(r, n).unwrap()
}
